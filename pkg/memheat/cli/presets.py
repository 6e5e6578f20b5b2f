# -*- coding: utf-8 -*-
"""Named run configs shipped with the package.

    example31   power-law kernel (1+t)^-3, optimal polynomial decay
    example32   stretched exponential kernel, exp(-lambda (1+t)^(1/2)) decay
    heat-check  no memory, m = 2: the plain heat equation oracle
"""
import logging

from memheat.config import RunConfig, load_run_config
from memheat.exceptions import InvalidParameter
from memheat.utils.os_sys import get_abs_path

logger = logging.getLogger(__name__)

_ERR_PFX = "Preset: "

PRESETS = ("example31", "example32", "heat-check")


class PresetError:
    """Message Literals used for Errors in presets."""

    UNKNOWN = _ERR_PFX + "unknown preset `{0}`; expected one of {1}."


def preset_path(name: str) -> str:
    if name not in PRESETS:
        raise InvalidParameter(
            PresetError.UNKNOWN.format(name, ", ".join(PRESETS))
        )
    return get_abs_path(f"presets/{name}.yaml", PresetError)


def load_preset(name: str) -> RunConfig:
    path = preset_path(name)
    logger.debug("preset %s from %s", name, path)
    return load_run_config(path)
