"""Time stepping and steady solves for the resistance-capacitance network.

For element ``i`` with capacitance ``C_i`` the balance is

    C_i (T_i' - T_i) / dt = (1 - theta) Q_i(T) + theta Q_i(T')

where ``Q_i`` sums the fluxes ``(T_j - T_i) / R_ij`` arriving through the
element's interfaces plus whatever its boundary supplies.  Because ``Q`` is
affine in ``T`` the step is solved for the increment ``T' - T``, which keeps
an equilibrium state bit-for-bit unchanged.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from .discretize import Mesh
from .errors import DomainError, InstabilityError, NoSteadyStateError, UnderdeterminedError
from .tridiag import TridiagonalFactor


@dataclass(frozen=True)
class Dirichlet:
    """Temperature held at the tube face."""

    T_face: float


@dataclass(frozen=True)
class Flux:
    """Heat supplied through the face, positive into the tube."""

    q: float


@dataclass(frozen=True)
class Insulated:
    pass


BoundaryCondition = Union[Dirichlet, Flux, Insulated]
BoundaryPair = Tuple[BoundaryCondition, BoundaryCondition]


@dataclass(frozen=True)
class SolverConfig:
    """``theta`` selects the scheme: 0 explicit, 0.5 trapezoidal, 1 implicit."""

    dt: float
    theta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise DomainError(f"theta must lie in [0, 1], got {self.theta}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError(f"dt must be positive, got {self.dt}")


@dataclass(frozen=True, eq=False)
class ThermalState:
    time: float
    temperatures: np.ndarray

    def __post_init__(self):
        T = np.array(self.temperatures, dtype=float)
        if T.ndim != 1:
            raise DomainError("temperatures must be one-dimensional")
        if not np.all(np.isfinite(T)):
            raise DomainError("temperatures must be finite")
        T.setflags(write=False)
        object.__setattr__(self, "temperatures", T)


def _check_bc(bc: BoundaryPair) -> None:
    if len(bc) != 2:
        raise DomainError("need exactly two boundary conditions (left, right)")
    for side in bc:
        if isinstance(side, Dirichlet):
            value = side.T_face
        elif isinstance(side, Flux):
            value = side.q
        elif isinstance(side, Insulated):
            continue
        else:
            raise DomainError(f"unknown boundary condition {side!r}")
        if not math.isfinite(value):
            raise DomainError(f"boundary value must be finite, got {side!r}")


def _check_state(mesh: Mesh, state: ThermalState) -> None:
    if state.temperatures.size != len(mesh):
        raise DomainError(
            f"state has {state.temperatures.size} temperatures, mesh has {len(mesh)} elements"
        )


def flux(T_in: float, T_out: float, R: float) -> float:
    """Heat flow from ``in`` to ``out`` through resistance ``R``."""
    if not R > 0:
        raise DomainError(f"resistance must be positive, got {R}")
    return (T_in - T_out) / R


def net_flux(mesh: Mesh, T: np.ndarray, bc: BoundaryPair) -> np.ndarray:
    """Total heat flow into each element, ``Q_i(T)``."""
    T = np.asarray(T, dtype=float)
    through = (T[:-1] - T[1:]) / mesh.internal_resistances  # left-to-right, interface i|i+1
    Q = np.zeros_like(T)
    Q[:-1] -= through
    Q[1:] += through
    left, right = bc
    r_left, r_right = mesh.boundary_resistances
    if isinstance(left, Dirichlet):
        Q[0] += (left.T_face - T[0]) / r_left
    elif isinstance(left, Flux):
        Q[0] += left.q
    if isinstance(right, Dirichlet):
        Q[-1] += (right.T_face - T[-1]) / r_right
    elif isinstance(right, Flux):
        Q[-1] += right.q
    return Q


def interface_fluxes(mesh: Mesh, state: ThermalState, bc: BoundaryPair) -> np.ndarray:
    """Flux in the +x direction through every face, left boundary first.

    Returns ``len(mesh) + 1`` values: left face, each internal interface,
    right face.
    """
    _check_state(mesh, state)
    T = state.temperatures
    left, right = bc
    r_left, r_right = mesh.boundary_resistances
    out = np.empty(len(mesh) + 1)
    out[1:-1] = (T[:-1] - T[1:]) / mesh.internal_resistances
    if isinstance(left, Dirichlet):
        out[0] = flux(left.T_face, T[0], r_left)
    else:
        out[0] = left.q if isinstance(left, Flux) else 0.0
    if isinstance(right, Dirichlet):
        out[-1] = flux(T[-1], right.T_face, r_right)
    else:
        out[-1] = -right.q if isinstance(right, Flux) else 0.0
    return out


def _coupling(mesh: Mesh, bc: BoundaryPair):
    """Sub/super-diagonal conductances and the diagonal of ``-dQ/dT``."""
    g = 1.0 / mesh.internal_resistances
    diag = np.zeros(len(mesh))
    diag[:-1] += g
    diag[1:] += g
    if isinstance(bc[0], Dirichlet):
        diag[0] += 1.0 / mesh.boundary_resistances[0]
    if isinstance(bc[1], Dirichlet):
        diag[-1] += 1.0 / mesh.boundary_resistances[1]
    return g, diag


def _step_factor(mesh: Mesh, bc: BoundaryPair, theta: float, dt: float) -> TridiagonalFactor:
    g, diag = _coupling(mesh, bc)
    off = np.zeros(len(mesh))
    off[: g.size] = -theta * g
    lower = np.roll(off, 1)
    return TridiagonalFactor(lower, mesh.capacitances / dt + theta * diag, off)


def _advance(mesh, T, bc, theta, dt, factor):
    Q = net_flux(mesh, T, bc)
    if theta == 0.0:
        return T + dt * Q / mesh.capacitances
    return T + factor.solve(Q)


def theta_step(
    mesh: Mesh, state: ThermalState, bc: BoundaryPair, cfg: SolverConfig
) -> ThermalState:
    """Advance ``state`` by ``cfg.dt``.

    Stability is the caller's concern when ``theta < 0.5``; see
    :func:`stable_dt`.
    """
    _check_state(mesh, state)
    _check_bc(bc)
    factor = None if cfg.theta == 0.0 else _step_factor(mesh, bc, cfg.theta, cfg.dt)
    T = _advance(mesh, state.temperatures, bc, cfg.theta, cfg.dt, factor)
    return ThermalState(state.time + cfg.dt, T)


def stable_dt(mesh: Mesh, bc: BoundaryPair | None = None) -> float:
    """Largest explicit ``dt`` keeping every update coefficient nonnegative.

    This is ``min_i C_i / sum_j 1/R_ij``, the discrete maximum-principle
    bound.  It is sufficient for stability and at most a factor of two
    below the spectral limit.  Boundary resistances count unless ``bc``
    marks that end as non-Dirichlet; with ``bc=None`` both ends are assumed
    Dirichlet.  Returns ``inf`` when no element has a flux path.
    """
    if bc is None:
        bc = (Dirichlet(0.0), Dirichlet(0.0))
    _, diag = _coupling(mesh, bc)
    with np.errstate(divide="ignore"):
        bounds = np.where(diag > 0, mesh.capacitances / np.where(diag > 0, diag, 1.0), np.inf)
    return float(bounds.min())


def steady_solve(mesh: Mesh, bc: BoundaryPair) -> ThermalState:
    """Temperatures with zero net flux into every element.

    At least one end must be Dirichlet.  With both ends Dirichlet the
    nodal values coincide with the continuum steady solution, since both
    are linear in cumulative resistance.
    """
    _check_bc(bc)
    if not any(isinstance(side, Dirichlet) for side in bc):
        supplied = sum(side.q for side in bc if isinstance(side, Flux))
        if supplied != 0.0:
            raise NoSteadyStateError(f"boundary fluxes sum to {supplied}; no steady state exists")
        raise UnderdeterminedError("no Dirichlet end: steady temperature level is undetermined")
    g, diag = _coupling(mesh, bc)
    off = np.zeros(len(mesh))
    off[: g.size] = -g
    rhs = net_flux(mesh, np.zeros(len(mesh)), bc)
    T = TridiagonalFactor(np.roll(off, 1), diag, off).solve(rhs)
    return ThermalState(0.0, T)


def heat_content(mesh: Mesh, state: ThermalState) -> float:
    """Stored heat ``sum_i C_i T_i``."""
    _check_state(mesh, state)
    return math.fsum(mesh.capacitances * state.temperatures)


@dataclass
class TransientResult:
    """Snapshots from :func:`run_transient`.

    ``states`` holds the initial state, one state per record time and the
    final state (duplicates collapsed).  ``series`` holds ``(t, heat)`` after
    every step.
    """

    states: list
    series: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]


def run_transient(
    mesh: Mesh,
    initial: ThermalState,
    bc: BoundaryPair,
    cfg: SolverConfig,
    t_end: float,
    record_times: Sequence[float] = (),
    allow_unstable: bool = False,
) -> TransientResult:
    """Step from ``initial.time`` to ``t_end``, landing exactly on each record time.

    The step before a record time (or ``t_end``) is shortened so the
    snapshot is an actual scheme state, never an interpolation.

    Raises:
        InstabilityError: when ``theta < 0.5`` and ``(1 - theta) dt`` exceeds
            :func:`stable_dt`, unless ``allow_unstable`` is set; in that case
            a warning is recorded on the result instead.
    """
    _check_state(mesh, initial)
    _check_bc(bc)
    t0 = initial.time
    if t_end < t0:
        raise DomainError(f"t_end={t_end} precedes initial time {t0}")
    record = [float(t) for t in record_times]
    if any(t1 < t0_ for t0_, t1 in zip(record, record[1:])):
        raise DomainError("record_times must be sorted")
    if record and (record[0] < t0 or record[-1] > t_end):
        raise DomainError("record_times must lie within [initial.time, t_end]")

    result = TransientResult([initial], [(t0, heat_content(mesh, initial))])
    theta, dt = cfg.theta, cfg.dt
    if theta < 0.5:
        bound = stable_dt(mesh, bc)
        if (1.0 - theta) * dt > bound:
            limit = bound / (1.0 - theta)
            message = f"dt={dt} exceeds the stability bound {limit} for theta={theta}"
            if not allow_unstable:
                raise InstabilityError(message, limit)
            warnings.warn(message, RuntimeWarning, stacklevel=2)
            result.warnings.append(message)

    factors = {}

    def factor_for(h):
        if theta == 0.0:
            return None
        if h not in factors:
            factors[h] = _step_factor(mesh, bc, theta, h)
        return factors[h]

    T = initial.temperatures
    t = t0
    targets = sorted(set(v for v in record if v > t0) | ({t_end} if t_end > t0 else set()))
    for target in targets:
        while t < target:
            remaining = target - t
            # absorb a sliver rather than take a near-zero final step
            if remaining > dt * (1.0 + 1e-9):
                h, t_next = dt, t + dt
            else:
                h, t_next = remaining, target
            T = _advance(mesh, T, bc, theta, h, factor_for(h))
            t = t_next
            result.series.append((t, heat_content(mesh, ThermalState(t, T))))
        result.states.append(ThermalState(t, T))
    return result
