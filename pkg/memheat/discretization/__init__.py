# -*- coding: utf-8 -*-
from memheat.discretization.initial import initial_field
from memheat.discretization.mesh import (
    Field,
    Mesh,
    build_mesh,
    mesh_from_config,
    zeros,
)
from memheat.discretization.operators import (
    apply_laplacian,
    edge_gradients,
    grad_sq_norm,
    gradient_vector,
    inner,
    l2_norm_pow,
    laplacian_matrix,
    pointwise_norm,
)

__all__ = [
    "Field",
    "Mesh",
    "apply_laplacian",
    "build_mesh",
    "edge_gradients",
    "grad_sq_norm",
    "gradient_vector",
    "initial_field",
    "inner",
    "l2_norm_pow",
    "laplacian_matrix",
    "mesh_from_config",
    "pointwise_norm",
    "zeros",
]
