# -*- coding: utf-8 -*-
from memheat.utils import jsonn
from memheat.utils.enums import CustomEnum
from memheat.utils.os_sys import ensure_dir, get_abs_path
from memheat.utils.yaml import dump_yaml, load_yaml

__all__ = [
    "CustomEnum",
    "dump_yaml",
    "ensure_dir",
    "get_abs_path",
    "jsonn",
    "load_yaml",
]
