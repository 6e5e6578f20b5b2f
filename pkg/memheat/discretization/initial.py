# -*- coding: utf-8 -*-
import re

import numpy as np

from memheat.discretization.mesh import Field, Mesh, zeros
from memheat.exceptions import InvalidParameter

_ERR_PFX = "Initial: "

_KIND = re.compile(r"^\s*(sine|bump|random)\s*(?:\(\s*(\d+)\s*\))?\s*$")
# random fields mix the first RANDOM_MODES sine modes per axis
RANDOM_MODES = 4


class InitialError:
    """Message Literals used for Errors in initial conditions."""

    UNKNOWN = (
        _ERR_PFX + "unknown initial condition `{0}`; expected sine, "
        "bump or random(<seed>)."
    )


def parse_initial(kind: str, seed: int = None):
    """'random(7)' -> ('random', 7); the inline seed wins over `seed`."""
    match = _KIND.match(str(kind))
    if not match or (match.group(2) and match.group(1) != "random"):
        raise InvalidParameter(InitialError.UNKNOWN.format(kind))
    inline = match.group(2)
    return match.group(1), int(inline) if inline else seed


def initial_field(
    mesh: Mesh, components: int = 1, kind: str = "sine", seed: int = None
) -> Field:
    kind, seed = parse_initial(kind, seed)
    coords = mesh.grid()
    if kind == "sine":
        shape = np.ones(mesh.interior_shape)
        for x, L in zip(coords, mesh.extent):
            shape = shape * np.sin(np.pi * x / L)
        values = np.repeat(shape[..., np.newaxis], components, axis=-1)
    elif kind == "bump":
        shape = np.ones(mesh.interior_shape)
        for x, L in zip(coords, mesh.extent):
            shape = shape * (4.0 * x * (L - x) / L**2) ** 2
        values = np.repeat(shape[..., np.newaxis], components, axis=-1)
    else:
        rng = np.random.default_rng(seed)
        values = zeros(mesh, components).values.copy()
        modes = np.arange(1, RANDOM_MODES + 1)
        for c in range(components):
            coefficients = rng.standard_normal((RANDOM_MODES,) * mesh.dim)
            for index in np.ndindex(coefficients.shape):
                mode = np.ones(mesh.interior_shape)
                for axis, k in enumerate(index):
                    mode = mode * np.sin(
                        modes[k] * np.pi * coords[axis] / mesh.extent[axis]
                    )
                # decaying amplitudes keep the field smooth
                weight = 1.0 / float(np.prod(modes[list(index)])) ** 2
                values[..., c] += weight * coefficients[index] * mode
    return Field(mesh, values)
