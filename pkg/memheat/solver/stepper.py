# -*- coding: utf-8 -*-
"""Time stepping.

Each step solves, for U = u^{k+1} and v = (U - u^k)/dt,

    A(t_{k+1}) Phi_eps(v) - lap_h U + M_k(t_{k+1}) = 0,
    Phi_eps(v) = (|v|^2 + eps^2)^{(m-2)/2} v,

where M_k is the memory convolution over the history t_0..t_k. The
memory term is lagged, so the Jacobian A Phi_eps'(v) - dt lap_h has the
sparsity of the memoryless problem.
"""
import logging
import time
from dataclasses import dataclass
from dataclasses import field as default_field
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy import sparse

from memheat.analysis.trace import EnergyTrace
from memheat.discretization import (
    Field,
    grad_sq_norm,
    initial_field,
    laplacian_matrix,
    mesh_from_config,
)
from memheat.exceptions import (
    CompressionFailed,
    HypothesisViolated,
    InvalidParameter,
    StepFailed,
)
from memheat.kernel import certify_g2, kernel_from_config
from memheat.memory import (
    CompressedHistory,
    DirectMemory,
    MemoryQuadrature,
    compress_kernel,
)
from memheat.solver.linalg import solve_linear
from memheat.solver.matrix_a import coercivity_times, matrix_a_from_config
from memheat.solver.newton import damped_newton
from memheat.solver.time_mesh import TimeMesh, parse_time_mesh, time_grid
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "Solver: "

G3 = "G3"


class MemoryMode(Enum, metaclass=CustomEnum):
    DIRECT = "direct"
    COMPRESSED = "compressed"


class SolverError:
    """Message Literals used for Errors in the solver."""

    BAD_M = _ERR_PFX + "(G3) needs m >= 2. Got m={0}."
    BAD_M_DIM = _ERR_PFX + "(G3) needs m <= 2d/(d-2) = {0:g} in d={1}."
    BAD_DT = _ERR_PFX + "dt must be positive. Got {0}."
    BAD_EPSILON = _ERR_PFX + "epsilon must be >= 0. Got {0}."
    HALVED_FAILED = (
        _ERR_PFX + "step to t={0:.10g} failed again after halving dt={1:g}."
    )
    WRONG_MESH = _ERR_PFX + "u0 has {0} components; the state expects {1}."


@dataclass(frozen=True)
class SolverConfig:
    m: float = 2.0
    dt: float = 1e-2
    t_final: float = 1.0
    newton_tol: float = 1e-10
    newton_max_iter: int = 50
    # relative to the velocity scale max |lap_h u0|
    epsilon: float = 1e-8
    time_mesh: TimeMesh = TimeMesh()
    memory_mode: MemoryMode = MemoryMode.DIRECT
    modes: int = 12
    memory_tol: float = 1e-6
    quadrature: MemoryQuadrature = MemoryQuadrature.EXACT
    keep_snapshots: bool = False

    def __post_init__(self):
        if not self.m >= 2.0:
            raise HypothesisViolated(SolverError.BAD_M.format(self.m), G3)
        if not self.dt > 0:
            raise InvalidParameter(SolverError.BAD_DT.format(self.dt))
        if not self.epsilon >= 0:
            raise InvalidParameter(
                SolverError.BAD_EPSILON.format(self.epsilon)
            )
        object.__setattr__(
            self, "time_mesh", parse_time_mesh(self.time_mesh)
        )
        object.__setattr__(
            self, "memory_mode", MemoryMode.parse(self.memory_mode)
        )
        object.__setattr__(
            self, "quadrature", MemoryQuadrature.parse(self.quadrature)
        )

    def stamps(self) -> np.ndarray:
        return time_grid(self.dt, self.t_final, self.time_mesh)


def solver_config_from_run(config, keep_snapshots=False) -> SolverConfig:
    """SolverConfig for the `solver` and `memory` sections of a RunConfig."""
    solver, memory = config.solver, config.memory
    return SolverConfig(
        m=solver.m,
        dt=solver.dt,
        t_final=solver.t_final,
        newton_tol=solver.newton_tol,
        newton_max_iter=solver.newton_max_iter,
        epsilon=solver.epsilon,
        time_mesh=solver.time_mesh,
        memory_mode=memory.mode,
        modes=memory.modes,
        memory_tol=memory.tol,
        quadrature=memory.quadrature,
        keep_snapshots=keep_snapshots,
    )


@dataclass
class RunState:
    """Current field, time and memory of one run.

    `records` holds one row per accepted stamp in the order of
    `EnergyTrace` series; `step` appends to it.
    """

    u: Field
    t: float
    memory: object
    epsilon: float = 0.0
    velocity: Optional[np.ndarray] = None
    records: List[tuple] = default_field(default_factory=list)
    snapshots: Optional[List[Field]] = None
    halvings: int = 0

    def __post_init__(self):
        self.laplacian = laplacian_matrix(self.u.mesh, self.u.components)

    @property
    def mesh(self):
        return self.u.mesh


def make_memory(kernel, mesh, components, config: SolverConfig):
    """History for one run; compressed when asked and the fit succeeds."""
    if config.memory_mode is MemoryMode.COMPRESSED:
        if config.quadrature is MemoryQuadrature.MIDPOINT:
            logger.info("compressed memory always uses exact weights")
        horizon = max(config.t_final, config.dt)
        try:
            compressed = compress_kernel(
                kernel, horizon, config.modes, config.memory_tol
            )
        except CompressionFailed as exc:
            logger.warning("%s Falling back to the direct history.", exc)
        else:
            return CompressedHistory(compressed, mesh, components)
    return DirectMemory(kernel, mesh, components, config.quadrature)


def phi_scale(nodal, m, epsilon):
    """(|v|^2 + eps^2)^{(m-2)/2} per node, and its derivative factor."""
    q = 0.5 * (m - 2.0)
    base = np.einsum("ni,ni->n", nodal, nodal) + epsilon**2
    if q == 0.0:
        return np.ones_like(base), np.zeros_like(base)
    scale = base**q
    safe = np.where(base > 0.0, base, 1.0)
    slope = np.where(base > 0.0, 2.0 * q * safe ** (q - 1.0), 0.0)
    return scale, slope


def initial_record(u0: Field, kernel) -> tuple:
    """E(0) = 1/2 ||grad u0||^2 with an empty memory."""
    grad_sq = grad_sq_norm(u0)
    return (0.0, 0.5 * grad_sq, 0.0, grad_sq, 0.0, 0.0, kernel.g0, 0.0, 0)


def step(
    state: RunState,
    config: SolverConfig,
    kernel,
    matrix_a,
    dt=None,
    t_next=None,
) -> RunState:
    """Advance `state` by one implicit step; the state is updated in place.

    The step ends at `t_next` when given, else at t + dt (config.dt by
    default). Raises StepFailed when Newton does not converge; the state
    is then unchanged.
    """
    if t_next is None:
        t_next = state.t + (config.dt if dt is None else dt)
    dt = t_next - state.t
    mesh, components = state.mesh, state.u.components
    nodes = mesh.node_count
    lap = state.laplacian
    a = matrix_a.at(t_next)
    u_flat = state.u.flat
    pull = lap @ u_flat
    memory_term = state.memory.convolution(t_next)
    eps = state.epsilon

    def flux(v):
        nodal = v.reshape(nodes, components)
        scale, _ = phi_scale(nodal, config.m, eps)
        return (scale[:, None] * nodal) @ a.T

    def residual(v):
        return flux(v).ravel() - (pull + dt * (lap @ v)) + memory_term

    def solve_jacobian(v, r):
        nodal = v.reshape(nodes, components)
        scale, slope = phi_scale(nodal, config.m, eps)
        outer = np.einsum("ni,nj->nij", nodal, nodal)
        inner = scale[:, None, None] * np.eye(components)
        inner = inner + slope[:, None, None] * outer
        blocks = np.einsum("ij,njk->nik", a, inner)
        damping = sparse.bsr_matrix(
            (blocks, np.arange(nodes), np.arange(nodes + 1)),
            shape=(nodes * components,) * 2,
        )
        jacobian = (damping - dt * lap).tocsr()
        return solve_linear(jacobian, r, mesh.dim, bandwidth=components)

    def check_coercivity(v):
        matrix_a.check_velocity(t_next, v.reshape(nodes, components), a)

    v0 = (
        state.velocity
        if state.velocity is not None
        else np.zeros_like(u_flat)
    )
    scale = max(
        float(np.max(np.abs(pull), initial=0.0)),
        float(np.max(np.abs(memory_term), initial=0.0)),
    )
    result = damped_newton(
        residual,
        solve_jacobian,
        v0,
        tol=config.newton_tol,
        max_iter=config.newton_max_iter,
        scale=scale,
        callback=check_coercivity,
    )
    v = result.x
    current = Field.from_flat(mesh, u_flat + dt * v, components)

    memory = state.memory
    g_circ = memory.g_circ_grad(t_next, current)
    g_prime_circ = memory.g_prime_circ_grad(t_next, current)
    int_g = memory.weight_sum(t_next)
    grad_sq = grad_sq_norm(current)
    energy = 0.5 * g_circ + 0.5 * (1.0 - int_g) * grad_sq
    dissipation = float(flux(v).ravel() @ v) * mesh.cell_volume
    state.records.append(
        (
            t_next,
            energy,
            g_circ,
            grad_sq,
            dissipation,
            int_g,
            kernel.value(t_next),
            g_prime_circ,
            result.iterations,
        )
    )
    memory.push(t_next, current)
    state.u, state.t, state.velocity = current, t_next, v
    if state.snapshots is not None:
        state.snapshots.append(current)
    return state


def validate_hypotheses(
    kernel, config: SolverConfig, matrix_a, dim=1, p=None
):
    """Certify (G1) and (G2), check (G3) and the coercivity of A on a
    grid over [0, T]. Returns the kernel certificate."""
    certificate = certify_g2(kernel, p=p)
    if dim >= 3:
        bound = 2.0 * dim / (dim - 2.0)
        if config.m > bound:
            raise HypothesisViolated(
                SolverError.BAD_M_DIM.format(bound, dim), G3
            )
    matrix_a.check_coercivity(coercivity_times(config.t_final))
    return certificate


def _advance(state, config, kernel, matrix_a, t_next):
    """One step to t_next; on failure two half steps, then give up."""
    try:
        return step(state, config, kernel, matrix_a, t_next=t_next)
    except StepFailed as exc:
        logger.warning(
            "step to t=%.10g failed (%s); retrying with two half steps",
            t_next,
            exc,
        )
    half = 0.5 * (t_next - state.t)
    try:
        step(state, config, kernel, matrix_a, t_next=state.t + half)
        step(state, config, kernel, matrix_a, t_next=t_next)
    except StepFailed as exc:
        raise StepFailed(
            SolverError.HALVED_FAILED.format(t_next, half),
            diagnostics=exc.diagnostics,
        ) from exc
    state.halvings += 1
    return state


def run(
    u0: Field,
    config: SolverConfig,
    kernel,
    matrix_a,
    certificate=None,
    validate=True,
) -> EnergyTrace:
    """Integrate from u0 over [0, T] and return the energy trace."""
    if u0.components != matrix_a.components:
        raise InvalidParameter(
            SolverError.WRONG_MESH.format(
                u0.components, matrix_a.components
            )
        )
    if validate and certificate is None:
        certificate = validate_hypotheses(
            kernel, config, matrix_a, u0.mesh.dim
        )
    started = time.perf_counter()
    stamps = config.stamps()
    memory = make_memory(kernel, u0.mesh, u0.components, config)
    velocity_scale = float(
        np.max(np.abs(laplacian_matrix(u0.mesh, u0.components) @ u0.flat))
    )
    state = RunState(
        u=u0,
        t=0.0,
        memory=memory,
        epsilon=config.epsilon * velocity_scale,
        records=[initial_record(u0, kernel)],
        snapshots=[u0] if config.keep_snapshots else None,
    )
    memory.push(0.0, u0)
    for t_next in stamps[1:]:
        _advance(state, config, kernel, matrix_a, float(t_next))

    columns = list(zip(*state.records))
    trace = EnergyTrace(
        *columns,
        kernel=kernel,
        certificate=certificate,
        snapshots=state.snapshots,
        m=config.m,
        epsilon=state.epsilon,
        matrix_a=matrix_a,
        memory_mode=memory.mode,
    )
    logger.info(
        "run finished: %d stamps to T=%g (%s memory, %d halvings) "
        "E0=%.6g E(T)=%.6g in %.2fs",
        len(trace),
        trace.t_final,
        memory.mode,
        state.halvings,
        trace.e0,
        trace.energy[-1],
        time.perf_counter() - started,
    )
    return trace


def run_from_config(config, keep_snapshots=False):
    """Build everything a RunConfig describes, validate it and run it.

    Returns (trace, certificate).
    """
    kernel = kernel_from_config(config.kernel)
    mesh = mesh_from_config(config.mesh)
    components = config.components
    matrix_a = matrix_a_from_config(config.matrix_a, components)
    solver_config = solver_config_from_run(config, keep_snapshots)
    certificate = validate_hypotheses(
        kernel, solver_config, matrix_a, mesh.dim, p=config.kernel.p
    )
    u0 = initial_field(mesh, components, config.field.initial, config.seed)
    trace = run(u0, solver_config, kernel, matrix_a, certificate)
    return trace, certificate
