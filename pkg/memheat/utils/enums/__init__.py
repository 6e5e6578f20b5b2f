# -*- coding: utf-8 -*-
from memheat.utils.enums.custom_enum import CustomEnum

__all__ = ["CustomEnum"]
