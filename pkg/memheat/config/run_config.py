# -*- coding: utf-8 -*-
"""Run configuration: the YAML file that describes one simulation.

A run file has the sections `kernel`, `mesh`, `field`, `memory`, `solver`,
`A`, `analysis` and `output` plus the top-level keys `preset` and `seed`.
The file is validated against `RUN_CONFIG_SCHEMA` (unknown keys are
rejected at every level) and parsed into frozen dataclasses. Omitted keys
take the dataclass defaults, and `dump_run_config` writes every key back,
so parse -> dump -> parse returns an equal object.
"""
import logging
from dataclasses import asdict, dataclass
from dataclasses import field as default_field
from dataclasses import fields
from typing import Optional, Tuple, Union

import jsonschema

from memheat.exceptions import ConfigInvalid
from memheat.utils import jsonn
from memheat.utils.yaml import dump_yaml, load_yaml

logger = logging.getLogger(__name__)

_ERR_PFX = "RunConfig: "

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_NULLABLE_NUMBER = {"type": ["number", "null"]}
_PER_AXIS = {
    "oneOf": [
        _POSITIVE,
        {"type": "array", "items": _POSITIVE, "minItems": 1, "maxItems": 2},
    ]
}
_PER_AXIS_INT = {
    "oneOf": [
        {"type": "integer", "minimum": 1},
        {
            "type": "array",
            "items": {"type": "integer", "minimum": 1},
            "minItems": 1,
            "maxItems": 2,
        },
    ]
}


def _section(properties, required=()):
    return {
        "type": "object",
        "additionalProperties": False,
        "properties": properties,
        "required": list(required),
    }


RUN_CONFIG_SCHEMA = _section(
    {
        "preset": {"type": ["string", "null"]},
        "seed": {"type": "integer", "minimum": 0},
        "kernel": _section(
            {
                "family": {
                    "enum": [
                        "power_law",
                        "stretched_exp",
                        "pure_exp",
                        "tabulated",
                        "memoryless",
                    ]
                },
                "a": _NULLABLE_NUMBER,
                "b": _NULLABLE_NUMBER,
                "alpha": _NULLABLE_NUMBER,
                "nu": _NULLABLE_NUMBER,
                "p": _NULLABLE_NUMBER,
                "samples": {
                    "oneOf": [
                        {"type": "null"},
                        _section(
                            {
                                "t": {"type": "array", "items": _NUMBER},
                                "g": {"type": "array", "items": _NUMBER},
                            },
                            required=("t", "g"),
                        ),
                    ]
                },
            },
            required=("family",),
        ),
        "mesh": _section(
            {
                "dim": {"enum": [1, 2]},
                "extent": _PER_AXIS,
                "cells": _PER_AXIS_INT,
            }
        ),
        "field": _section(
            {
                "components": {"type": ["integer", "null"], "minimum": 1},
                "initial": {
                    "type": "string",
                    "pattern": r"^(sine|bump|random(\(\s*\d+\s*\))?)$",
                },
            }
        ),
        "memory": _section(
            {
                "mode": {"enum": ["direct", "compressed"]},
                "modes": {"type": "integer"},
                "tol": _POSITIVE,
                "quadrature": {"enum": ["exact", "midpoint"]},
            }
        ),
        "solver": _section(
            {
                "m": _NUMBER,
                "dt": _POSITIVE,
                "t_final": {"type": "number", "minimum": 0},
                "newton_tol": _POSITIVE,
                "newton_max_iter": {"type": "integer", "minimum": 1},
                "epsilon": {"type": "number", "minimum": 0},
                "time_mesh": {
                    "type": "string",
                    "pattern": (
                        r"^(uniform|geometric\(\s*[0-9]*\.?[0-9]+"
                        r"([eE][-+]?[0-9]+)?\s*\))$"
                    ),
                },
            }
        ),
        "A": _section(
            {
                "mode": {"enum": ["identity", "constant", "time_varying"]},
                "c0": _POSITIVE,
                "matrix": {
                    "oneOf": [
                        {"type": "null"},
                        {
                            "type": "array",
                            "items": {"type": "array", "items": _NUMBER},
                        },
                    ]
                },
                "amplitude": _NUMBER,
                "frequency": _NUMBER,
            }
        ),
        "analysis": _section(
            {
                "window": {
                    "oneOf": [
                        {"type": "null"},
                        {
                            "type": "array",
                            "items": _NUMBER,
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    ]
                }
            }
        ),
        "output": _section(
            {
                "dir": {"type": ["string", "null"]},
                "format": {"enum": ["csv", "json", "both"]},
            }
        ),
    },
    required=("kernel",),
)


class RunConfigError:
    """Message Literals used for Errors in RunConfig."""

    SCHEMA = _ERR_PFX + "invalid value at `{0}`: {1}"
    NOT_A_MAPPING = _ERR_PFX + "expected a mapping at top level. Got {0}."
    MATRIX_SHAPE = (
        _ERR_PFX + "`A.matrix` must be {0}x{0} to match "
        "`field.components`. Got {1}."
    )
    MATRIX_REQUIRED = _ERR_PFX + "`A.mode = {0}` requires `A.matrix`."
    WINDOW_ORDER = _ERR_PFX + "`analysis.window` must satisfy t0 < t1."
    SAMPLES_REQUIRED = (
        _ERR_PFX + "`kernel.family = tabulated` requires `kernel.samples`."
    )
    SAMPLES_LENGTH = (
        _ERR_PFX + "`kernel.samples.t` and `kernel.samples.g` differ in "
        "length ({0} vs {1})."
    )


def _tuple(value):
    if isinstance(value, (list, tuple)):
        return tuple(_tuple(v) for v in value)
    return value


def _list(value):
    if isinstance(value, tuple):
        return [_list(v) for v in value]
    return value


@dataclass(frozen=True)
class KernelSection:
    family: str
    a: Optional[float] = None
    b: Optional[float] = None
    alpha: Optional[float] = None
    nu: Optional[float] = None
    p: Optional[float] = None
    samples: Optional[Tuple[Tuple[float, ...], Tuple[float, ...]]] = None

    @property
    def params(self) -> dict:
        """The family parameters that were given, by config key."""
        return {
            k: getattr(self, k)
            for k in ("a", "b", "alpha", "nu")
            if getattr(self, k) is not None
        }


@dataclass(frozen=True)
class MeshSection:
    dim: int = 1
    extent: Union[float, Tuple[float, ...]] = 1.0
    cells: Union[int, Tuple[int, ...]] = 64


@dataclass(frozen=True)
class FieldSection:
    # None ties the component count to `mesh.dim`
    components: Optional[int] = None
    initial: str = "sine"


@dataclass(frozen=True)
class MemorySection:
    mode: str = "direct"
    modes: int = 12
    tol: float = 1e-6
    quadrature: str = "exact"


@dataclass(frozen=True)
class SolverSection:
    m: float = 2.0
    dt: float = 1e-2
    t_final: float = 1.0
    newton_tol: float = 1e-10
    newton_max_iter: int = 50
    epsilon: float = 1e-8
    time_mesh: str = "uniform"


@dataclass(frozen=True)
class ASection:
    mode: str = "identity"
    c0: float = 1.0
    matrix: Optional[Tuple[Tuple[float, ...], ...]] = None
    amplitude: float = 0.0
    frequency: float = 1.0


@dataclass(frozen=True)
class AnalysisSection:
    window: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class OutputSection:
    dir: Optional[str] = None
    format: str = "both"


@dataclass(frozen=True)
class RunConfig:
    kernel: KernelSection
    mesh: MeshSection = default_field(default_factory=MeshSection)
    field: FieldSection = default_field(default_factory=FieldSection)
    memory: MemorySection = default_field(default_factory=MemorySection)
    solver: SolverSection = default_field(default_factory=SolverSection)
    matrix_a: ASection = default_field(default_factory=ASection)
    analysis: AnalysisSection = default_field(default_factory=AnalysisSection)
    output: OutputSection = default_field(default_factory=OutputSection)
    preset: Optional[str] = None
    seed: int = 0

    @property
    def components(self) -> int:
        return self.field.components or self.mesh.dim

    def to_dict(self) -> dict:
        data = {"preset": self.preset, "seed": self.seed}
        for f in fields(self):
            if f.name in _TOP_LEVEL:
                continue
            section = asdict(getattr(self, f.name))
            if f.name == "kernel" and self.kernel.samples is not None:
                t, g = self.kernel.samples
                section["samples"] = {"t": list(t), "g": list(g)}
            data[_SECTION_KEYS.get(f.name, f.name)] = {
                k: _list(v) for k, v in section.items()
            }
        return data


_TOP_LEVEL = ("preset", "seed")
# dataclass attribute -> config file key
_SECTION_KEYS = {"matrix_a": "A"}
_SECTION_TYPES = {
    "kernel": KernelSection,
    "mesh": MeshSection,
    "field": FieldSection,
    "memory": MemorySection,
    "solver": SolverSection,
    "matrix_a": ASection,
    "analysis": AnalysisSection,
    "output": OutputSection,
}


def parse_run_config(data: dict) -> RunConfig:
    """Validate a run config mapping and build the `RunConfig`."""
    if not isinstance(data, dict):
        raise ConfigInvalid(RunConfigError.NOT_A_MAPPING.format(type(data)))
    try:
        jsonn.validate_json(data, RUN_CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigInvalid(
            RunConfigError.SCHEMA.format(path, exc.message)
        ) from exc

    sections = {}
    for attr, klass in _SECTION_TYPES.items():
        raw = dict(data.get(_SECTION_KEYS.get(attr, attr)) or {})
        if attr == "kernel" and raw.get("samples") is not None:
            raw["samples"] = (raw["samples"]["t"], raw["samples"]["g"])
        sections[attr] = klass(**{k: _tuple(v) for k, v in raw.items()})
    config = RunConfig(
        preset=data.get("preset"), seed=data.get("seed", 0), **sections
    )
    _check_consistency(config)
    return config


def _check_consistency(config: RunConfig):
    kernel = config.kernel
    if kernel.family == "tabulated":
        if kernel.samples is None:
            raise ConfigInvalid(RunConfigError.SAMPLES_REQUIRED)
        t, g = kernel.samples
        if len(t) != len(g):
            raise ConfigInvalid(
                RunConfigError.SAMPLES_LENGTH.format(len(t), len(g))
            )

    a_section = config.matrix_a
    if a_section.mode != "identity":
        if a_section.matrix is None:
            raise ConfigInvalid(
                RunConfigError.MATRIX_REQUIRED.format(a_section.mode)
            )
        n_c = config.components
        shape = (len(a_section.matrix),) + tuple(
            {len(row) for row in a_section.matrix}
        )
        if shape != (n_c, n_c):
            raise ConfigInvalid(
                RunConfigError.MATRIX_SHAPE.format(n_c, shape)
            )

    window = config.analysis.window
    if window is not None and not window[0] < window[1]:
        raise ConfigInvalid(RunConfigError.WINDOW_ORDER)


def load_run_config(filename) -> RunConfig:
    logger.debug("loading run config %s", filename)
    return parse_run_config(load_yaml(filename))


def dump_run_config(config: RunConfig, filename=None) -> str:
    """Serialise `config` as YAML; every key is written out."""
    return dump_yaml(config.to_dict(), filename)
