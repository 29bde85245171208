"""Flow-tube geometry and the integrals every discrete quantity is built from.

A flow tube is a one-dimensional conduction path whose cross-sectional area
``A(x)`` varies along its axis.  Three integrals over an axial interval
``[a, b]`` carry all the geometry the difference equations need:

* the area ``A(x)`` itself,
* the volume ``int_a^b A(y) dy`` (times ``rho*c`` this is a capacitance),
* the resistance ``int_a^b dy / (K A(y))``.

The four analytic profiles use closed forms written to avoid cancellation
for short intervals; tabulated profiles interpolate linearly in ``A`` and
integrate segment by segment in closed form.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DomainError


def _log_ratio_over_difference(a0: float, a1: float) -> float:
    """Return ``ln(a1/a0) / (a1 - a0)`` for positive ``a0``, ``a1``."""
    d = (a1 - a0) / a0
    if abs(d) < 1e-8:
        return (1.0 - d / 2.0 + d * d / 3.0) / a0
    return math.log1p(d) / (a1 - a0)


@dataclass(frozen=True)
class Prism:
    """Constant cross-section."""

    area: float

    def __post_init__(self):
        if not (self.area > 0 and math.isfinite(self.area)):
            raise DomainError(f"prism area must be positive, got {self.area}")

    def area_at(self, x: float) -> float:
        return self.area

    def area_integral(self, a: float, b: float) -> float:
        return self.area * (b - a)

    def inverse_area_integral(self, a: float, b: float) -> float:
        return (b - a) / self.area


@dataclass(frozen=True)
class RadialCylinder:
    """Radial flow through a cylindrical shell of height ``height``: A = 2 pi x H."""

    height: float

    def __post_init__(self):
        if not (self.height > 0 and math.isfinite(self.height)):
            raise DomainError(f"cylinder height must be positive, got {self.height}")

    def area_at(self, x: float) -> float:
        return 2.0 * math.pi * x * self.height

    def area_integral(self, a: float, b: float) -> float:
        return math.pi * self.height * (b - a) * (b + a)

    def inverse_area_integral(self, a: float, b: float) -> float:
        return math.log1p((b - a) / a) / (2.0 * math.pi * self.height)


@dataclass(frozen=True)
class RadialSphere:
    """Radial flow through a spherical shell: A = 4 pi x^2."""

    def area_at(self, x: float) -> float:
        return 4.0 * math.pi * x * x

    def area_integral(self, a: float, b: float) -> float:
        return 4.0 * math.pi * (b - a) * (a * a + a * b + b * b) / 3.0

    def inverse_area_integral(self, a: float, b: float) -> float:
        return (b - a) / (4.0 * math.pi * a * b)


@dataclass(frozen=True)
class Cone:
    """Truncated cone with radius ``r0 + slope*x``: A = pi (r0 + s x)^2.

    ``slope`` may be zero or negative as long as the radius stays positive
    over the tube.
    """

    r0: float
    slope: float

    def __post_init__(self):
        if not (math.isfinite(self.r0) and math.isfinite(self.slope)):
            raise DomainError("cone parameters must be finite")

    def radius(self, x: float) -> float:
        return self.r0 + self.slope * x

    def area_at(self, x: float) -> float:
        r = self.radius(x)
        return math.pi * r * r

    def area_integral(self, a: float, b: float) -> float:
        ra, rb = self.radius(a), self.radius(b)
        return math.pi * (b - a) * (ra * ra + ra * rb + rb * rb) / 3.0

    def inverse_area_integral(self, a: float, b: float) -> float:
        # (1/ra - 1/rb) / (pi s), rewritten so that s -> 0 is harmless
        return (b - a) / (math.pi * self.radius(a) * self.radius(b))


@dataclass(frozen=True)
class Tabulated:
    """Sampled cross-section, linearly interpolated between samples."""

    x: tuple
    area: tuple

    def __init__(self, x: Sequence[float], area: Sequence[float]):
        xs = tuple(float(v) for v in x)
        areas = tuple(float(v) for v in area)
        if len(xs) != len(areas):
            raise DomainError("tabulated x and area must have equal length")
        if len(xs) < 2:
            raise DomainError("tabulated profile needs at least 2 samples")
        if any(x1 <= x0 for x0, x1 in zip(xs, xs[1:])):
            raise DomainError("tabulated sample abscissae must be strictly increasing")
        if not all(v > 0 and math.isfinite(v) for v in areas):
            raise DomainError("tabulated areas must be positive and finite")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "area", areas)

    def area_at(self, x: float) -> float:
        xs, ys = self.x, self.area
        if x <= xs[0]:
            return ys[0]
        if x >= xs[-1]:
            return ys[-1]
        k = bisect.bisect_right(xs, x) - 1
        w = (x - xs[k]) / (xs[k + 1] - xs[k])
        return ys[k] + w * (ys[k + 1] - ys[k])

    def _pieces(self, a: float, b: float):
        """Yield ``(x0, x1, A0, A1)`` linear pieces covering ``[a, b]``."""
        inner = [v for v in self.x if a < v < b]
        knots = [a, *inner, b]
        for x0, x1 in zip(knots, knots[1:]):
            yield x0, x1, self.area_at(x0), self.area_at(x1)

    def area_integral(self, a: float, b: float) -> float:
        return math.fsum(0.5 * (x1 - x0) * (a0 + a1) for x0, x1, a0, a1 in self._pieces(a, b))

    def inverse_area_integral(self, a: float, b: float) -> float:
        return math.fsum(
            (x1 - x0) * _log_ratio_over_difference(a0, a1) for x0, x1, a0, a1 in self._pieces(a, b)
        )


CrossSectionProfile = Union[Prism, RadialCylinder, RadialSphere, Cone, Tabulated]


@dataclass(frozen=True)
class Material:
    """Uniform conductivity ``k``, density ``rho`` and specific heat ``c``."""

    k: float
    rho: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("k", "rho", "c"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"material {name} must be positive, got {v}")

    @property
    def heat_capacity(self) -> float:
        """Volumetric heat capacity ``rho*c``."""
        return self.rho * self.c

    @property
    def diffusivity(self) -> float:
        return self.k / (self.rho * self.c)


@dataclass(frozen=True)
class FlowTube:
    """A profile and a material over the axial interval ``[x_start, x_end]``."""

    profile: CrossSectionProfile
    material: Material
    x_start: float
    x_end: float

    def __post_init__(self):
        if not (math.isfinite(self.x_start) and math.isfinite(self.x_end)):
            raise DomainError("tube interval must be finite")
        if not self.x_start < self.x_end:
            raise DomainError(f"need x_start < x_end, got [{self.x_start}, {self.x_end}]")
        p = self.profile
        if isinstance(p, (RadialCylinder, RadialSphere)) and self.x_start <= 0:
            raise DomainError("radial tubes need x_start > 0 (axis singularity)")
        if isinstance(p, Cone) and not (p.radius(self.x_start) > 0 and p.radius(self.x_end) > 0):
            raise DomainError("cone radius must stay positive over the tube")
        if isinstance(p, Tabulated) and not (p.x[0] <= self.x_start and self.x_end <= p.x[-1]):
            raise DomainError("tube interval must lie within the tabulated samples")

    @property
    def length(self) -> float:
        return self.x_end - self.x_start

    def _check(self, *xs: float) -> None:
        for x in xs:
            if not (self.x_start <= x <= self.x_end):
                raise DomainError(f"x={x} outside tube [{self.x_start}, {self.x_end}]")


def area(tube: FlowTube, x: float) -> float:
    """Cross-sectional area at axial position ``x``."""
    tube._check(x)
    return tube.profile.area_at(x)


def volume_integral(tube: FlowTube, a: float, b: float) -> float:
    """Volume between ``a`` and ``b``; requires ``a < b``."""
    tube._check(a, b)
    if a >= b:
        raise DomainError(f"volume_integral needs a < b, got a={a}, b={b}")
    return tube.profile.area_integral(a, b)


def resistance_integral(tube: FlowTube, a: float, b: float) -> float:
    """Thermal resistance ``int_a^b dy / (K A(y))``; zero when ``a == b``."""
    tube._check(a, b)
    if a > b:
        raise DomainError(f"resistance_integral needs a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    return tube.profile.inverse_area_integral(a, b) / tube.material.k
