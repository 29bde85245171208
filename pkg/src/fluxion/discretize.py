"""Turn a flow tube into a resistance-capacitance network.

Each element ``[x_left, x_right]`` stores heat with capacitance
``rho*c * volume`` and carries a single temperature, located at the node
``x_node`` where the element's steady isotherm equals its volume average.
Neighbouring nodes exchange heat through the exact resistance integral
between them; the end nodes connect to the tube faces the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError
from .geometry import (
    Cone,
    FlowTube,
    Prism,
    RadialCylinder,
    RadialSphere,
    resistance_integral,
    volume_integral,
)


@dataclass(frozen=True)
class Element:
    x_left: float
    x_right: float
    x_node: float
    capacitance: float


@dataclass(frozen=True, eq=False)
class Mesh:
    """Elements tiling a tube plus the resistances that couple them.

    ``internal_resistances[i]`` joins node ``i`` to node ``i+1``;
    ``boundary_resistances`` join the left face to the first node and the
    last node to the right face.
    """

    tube: FlowTube
    elements: tuple
    internal_resistances: np.ndarray
    boundary_resistances: tuple
    nodes: np.ndarray = field(init=False, repr=False)
    capacitances: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nodes = np.array([e.x_node for e in self.elements], dtype=float)
        caps = np.array([e.capacitance for e in self.elements], dtype=float)
        res = np.asarray(self.internal_resistances, dtype=float)
        for arr in (nodes, caps, res):
            arr.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "capacitances", caps)
        object.__setattr__(self, "internal_resistances", res)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.array([self.elements[0].x_left] + [e.x_right for e in self.elements])

    @property
    def total_resistance(self) -> float:
        left, right = self.boundary_resistances
        return math.fsum([left, *self.internal_resistances, right])

    @property
    def total_capacitance(self) -> float:
        return math.fsum(self.capacitances)


def _node_fraction_numeric(tube: FlowTube, a: float, b: float) -> float:
    """Geometry-only fraction ``f`` by quadrature of ``A(y) r(y)``."""
    p = tube.profile

    def weighted(y):
        return p.area_at(y) * p.inverse_area_integral(a, y) if y > a else 0.0

    # integrand has kinks at the sample points; integrate piecewise
    knots = [a, *(v for v in getattr(p, "x", ()) if a < v < b), b]
    total = math.fsum(
        integrate.quad(weighted, x0, x1, epsabs=0.0, epsrel=1e-13, limit=200)[0]
        for x0, x1 in zip(knots, knots[1:])
    )
    return total / (p.inverse_area_integral(a, b) * p.area_integral(a, b))


def nodal_position(tube: FlowTube, a: float, b: float) -> float:
    """Place the node of element ``[a, b]``.

    Under steady flow the temperature is linear in the cumulative resistance
    ``r(x) = int_a^x dy/(K A)``.  The node is where that profile equals its
    volume average, i.e. where ``r(x_M) = f r(b)`` with

        f = int_a^b A r dy / (r(b) int_a^b A dy),

    which depends on geometry alone because the end temperatures cancel.
    Closed forms are used for the analytic profiles; tabulated profiles
    fall back to quadrature and a bracketed root solve.
    """
    tube._check(a, b)
    if a >= b:
        raise DomainError(f"nodal_position needs a < b, got a={a}, b={b}")
    p = tube.profile
    if isinstance(p, Prism) or (isinstance(p, Cone) and p.slope == 0.0):
        return 0.5 * (a + b)
    if isinstance(p, RadialCylinder):
        log_ratio = math.log1p((b - a) / a)
        f = (b * b * log_ratio - 0.5 * (b - a) * (b + a)) / ((b - a) * (b + a) * log_ratio)
        return a * math.exp(f * log_ratio)
    if isinstance(p, (RadialSphere, Cone)):
        # both are 1/rho potentials in rho = x (sphere) or rho = r0 + s x (cone)
        ra, rb = (a, b) if isinstance(p, RadialSphere) else (p.radius(a), p.radius(b))
        f = rb * (ra + 2.0 * rb) / (2.0 * (ra * ra + ra * rb + rb * rb))
        rho_m = ra * rb / (rb - f * (rb - ra))
        x_m = rho_m if isinstance(p, RadialSphere) else (rho_m - p.r0) / p.slope
        return min(max(x_m, a), b)
    return _nodal_position_numeric(tube, a, b)


def _nodal_position_numeric(tube: FlowTube, a: float, b: float) -> float:
    p = tube.profile
    target = _node_fraction_numeric(tube, a, b) * p.inverse_area_integral(a, b)
    return optimize.brentq(
        lambda x: (p.inverse_area_integral(a, x) if x > a else 0.0) - target,
        a,
        b,
        xtol=1e-13 * (b - a),
        rtol=4 * np.finfo(float).eps,
    )


def build_mesh(tube: FlowTube, breakpoints: Sequence[float] | int) -> Mesh:
    """Discretize ``tube`` into elements.

    Args:
        tube: the flow tube.
        breakpoints: either an element count ``n >= 1`` (equal widths) or a
            strictly increasing sequence running from ``x_start`` to ``x_end``.
    """
    if isinstance(breakpoints, (int, np.integer)):
        n = int(breakpoints)
        if n < 1:
            raise DomainError(f"element count must be >= 1, got {n}")
        xs = np.linspace(tube.x_start, tube.x_end, n + 1)
        xs[0], xs[-1] = tube.x_start, tube.x_end
    else:
        xs = np.asarray(breakpoints, dtype=float)
        if xs.ndim != 1 or xs.size < 2:
            raise DomainError("breakpoints need at least two values")
        if np.any(np.diff(xs) <= 0):
            raise DomainError("breakpoints must be strictly increasing")
        if xs[0] != tube.x_start or xs[-1] != tube.x_end:
            raise DomainError("breakpoints must start at x_start and end at x_end")

    rho_c = tube.material.heat_capacity
    elements = []
    for a, b in zip(xs[:-1], xs[1:]):
        a, b = float(a), float(b)
        elements.append(Element(a, b, nodal_position(tube, a, b), rho_c * volume_integral(tube, a, b)))

    internal = np.array(
        [resistance_integral(tube, e0.x_node, e1.x_node) for e0, e1 in zip(elements, elements[1:])]
    )
    boundary = (
        resistance_integral(tube, tube.x_start, elements[0].x_node),
        resistance_integral(tube, elements[-1].x_node, tube.x_end),
    )
    return Mesh(tube, tuple(elements), internal, boundary)
