"""Refinement studies: oracle errors or Richardson self-convergence."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .discretize import Mesh, build_mesh
from .errors import DomainError
from .geometry import FlowTube
from .solver import BoundaryPair, SolverConfig, ThermalState, run_transient


@dataclass(frozen=True)
class RefinementStudy:
    """A transient problem to be solved on successively halved meshes.

    Level ``k`` uses ``2**k`` times the base element count and
    ``dt = dt0 / 2**(k * dt_power)``, so ``dt_power=1`` keeps ``dt``
    proportional to the element width and ``dt_power=2`` to its square.
    """

    tube: FlowTube
    bc: BoundaryPair
    initial: Callable[[np.ndarray], np.ndarray]
    theta: float
    dt0: float
    t_end: float
    breakpoints: Sequence[float] | int
    dt_power: int = 1
    oracle: Optional[Callable[[np.ndarray, float], np.ndarray]] = None


def refine(breakpoints: Sequence[float] | int) -> Sequence[float] | int:
    """Split every element in two at its midpoint."""
    if isinstance(breakpoints, (int, np.integer)):
        return 2 * int(breakpoints)
    xs = np.asarray(breakpoints, dtype=float)
    out = np.empty(2 * xs.size - 1)
    out[0::2] = xs
    out[1::2] = 0.5 * (xs[:-1] + xs[1:])
    return out


def restrict(fine: Mesh, T_fine: np.ndarray) -> np.ndarray:
    """Heat-conserving average of child pairs onto the parent elements."""
    C = fine.capacitances
    c0, c1 = C[0::2], C[1::2]
    t0, t1 = T_fine[0::2], T_fine[1::2]
    # offset form is exact when the two children agree
    return t0 + c1 * (t1 - t0) / (c0 + c1)


def solve_level(study: RefinementStudy, level: int):
    bp = study.breakpoints
    for _ in range(level):
        bp = refine(bp)
    mesh = build_mesh(study.tube, bp)
    dt = study.dt0 / 2.0 ** (level * study.dt_power)
    T0 = np.asarray(study.initial(mesh.nodes), dtype=float) * np.ones(len(mesh))
    run = run_transient(
        mesh, ThermalState(0.0, T0), study.bc, SolverConfig(dt, study.theta), study.t_end
    )
    return mesh, run.states[-1].temperatures


def observed_orders(errors: Sequence[float]) -> list:
    """``log2`` ratios of successive errors; ``None`` where undefined."""
    orders = [None]
    for e0, e1 in zip(errors, errors[1:]):
        orders.append(math.log2(e0 / e1) if e0 > 0 and e1 > 0 else None)
    return orders


def run_study(study: RefinementStudy, levels: int) -> list:
    """Return ``(n_elements, error, order)`` rows.

    With an oracle every level is compared to it at its nodes.  Without
    one, level ``k`` is compared to the heat-conserving restriction of level
    ``k+1``, so ``levels`` solves yield ``levels - 1`` rows.
    """
    if levels < 3:
        raise DomainError(f"need at least 3 levels to measure an order, got {levels}")
    solutions = [solve_level(study, k) for k in range(levels)]
    if study.oracle is not None:
        pairs = [
            (len(mesh), float(np.max(np.abs(T - study.oracle(mesh.nodes, study.t_end)))))
            for mesh, T in solutions
        ]
    else:
        pairs = [
            (len(coarse), float(np.max(np.abs(Tc - restrict(fine, Tf)))))
            for (coarse, Tc), (fine, Tf) in zip(solutions, solutions[1:])
        ]
    orders = observed_orders([e for _, e in pairs])
    return [(n, e, o) for (n, e), o in zip(pairs, orders)]
