"""Closed-form continuum solutions used as independent references.

Nothing here touches the discrete network; the formulas are written out
directly so that agreement with the solver is a genuine check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class SlabSpec:
    """Slab ``0 <= x <= length`` with diffusivity ``K/(rho c)``.

    ``end_temperatures`` add the linear steady profile to the decaying mode,
    which stays an exact solution of the heat equation.
    """

    length: float
    diffusivity: float
    end_temperatures: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError(f"slab length must be positive, got {self.length}")
        if not self.diffusivity > 0:
            raise DomainError(f"diffusivity must be positive, got {self.diffusivity}")


def slab_mode_T(x: float, t: float, spec: SlabSpec) -> float:
    """Fundamental sine mode decaying under the heat equation.

    Initial data is ``sin(pi x / L)`` (plus the linear end-temperature
    profile); the mode decays as ``exp(-kappa pi^2 t / L^2)``.
    """
    L = spec.length
    if not 0.0 <= x <= L:
        raise DomainError(f"x={x} outside slab [0, {L}]")
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    T_left, T_right = spec.end_temperatures
    base = T_left + (T_right - T_left) * x / L
    return base + math.exp(-spec.diffusivity * math.pi**2 * t / L**2) * math.sin(math.pi * x / L)


def radial_steady_T(
    geometry: str, r: float, r_in: float, r_out: float, T_in: float, T_out: float
) -> float:
    """Steady temperature in a cylindrical or spherical shell."""
    if not 0 < r_in < r_out:
        raise DomainError(f"need 0 < r_in < r_out, got {r_in}, {r_out}")
    if not r_in <= r <= r_out:
        raise DomainError(f"r={r} outside annulus [{r_in}, {r_out}]")
    if geometry == "cylinder":
        frac = math.log(r / r_in) / math.log(r_out / r_in)
    elif geometry == "sphere":
        frac = (1.0 / r_in - 1.0 / r) / (1.0 / r_in - 1.0 / r_out)
    else:
        raise DomainError(f"radial geometry must be 'cylinder' or 'sphere', got {geometry!r}")
    return T_in - (T_in - T_out) * frac


def steady_flux(
    geometry: str,
    a: float,
    b: float,
    T_in: float,
    T_out: float,
    k: float = 1.0,
    *,
    area: float | None = None,
    height: float | None = None,
    r0: float | None = None,
    slope: float | None = None,
) -> float:
    """Steady heat flow through a tube segment ``[a, b]`` from its closed-form resistance.

    Args:
        geometry: one of ``prism``, ``cylinder``, ``sphere``, ``cone``.
        a, b: inlet and outlet positions.
        T_in, T_out: face temperatures.
        k: conductivity.
        area: prism cross-section.
        height: cylinder height.
        r0, slope: cone radius at the origin and its slope.
    """
    if not (a < b and k > 0):
        raise DomainError("need a < b and k > 0")
    if geometry == "prism":
        if area is None or area <= 0:
            raise DomainError("prism needs a positive area")
        R = (b - a) / (k * area)
    elif geometry == "cylinder":
        if height is None or height <= 0 or a <= 0:
            raise DomainError("cylinder needs a positive height and a > 0")
        R = math.log(b / a) / (2 * math.pi * k * height)
    elif geometry == "sphere":
        if a <= 0:
            raise DomainError("sphere needs a > 0")
        R = (1 / a - 1 / b) / (4 * math.pi * k)
    elif geometry == "cone":
        if r0 is None or slope is None:
            raise DomainError("cone needs r0 and slope")
        ra, rb = r0 + slope * a, r0 + slope * b
        if ra <= 0 or rb <= 0:
            raise DomainError("cone radius must be positive on [a, b]")
        if slope == 0:
            R = (b - a) / (k * math.pi * r0**2)
        else:
            R = (1 / ra - 1 / rb) / (math.pi * k * slope)
    else:
        raise DomainError(f"unknown geometry {geometry!r}")
    return (T_in - T_out) / R
