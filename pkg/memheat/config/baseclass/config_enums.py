# -*- coding: utf-8 -*-
from enum import Enum

from memheat.utils.enums.custom_enum import CustomEnum


class ConfigSource(Enum, metaclass=CustomEnum):
    OS_ENVIRON = 1
    CONFIG_YAML = 2
    CONFIG_CLASS = 3
    CONFIG_INSTANCE = 4
