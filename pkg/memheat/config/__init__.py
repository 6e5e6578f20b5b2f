# -*- coding: utf-8 -*-
from memheat.config.baseclass import ConfigMeta
from memheat.config.run_config import (
    RunConfig,
    dump_run_config,
    load_run_config,
    parse_run_config,
)
from memheat.config.settings import Settings

__all__ = [
    "ConfigMeta",
    "RunConfig",
    "Settings",
    "dump_run_config",
    "load_run_config",
    "parse_run_config",
]
