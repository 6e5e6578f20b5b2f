# -*- coding: utf-8 -*-
from memheat.config.baseclass.config_enums import ConfigSource
from memheat.config.baseclass.config_field import ConfigField
from memheat.config.baseclass.config_meta import ConfigMeta
from memheat.config.baseclass.config_value import ConfigValue

__all__ = ["ConfigField", "ConfigMeta", "ConfigSource", "ConfigValue"]
