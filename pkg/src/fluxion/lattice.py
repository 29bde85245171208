"""Laplace's coefficient lattice, Bernoulli terms and the normal limit.

A :class:`LatticeField` holds the coefficients ``y[x]`` at one value of the
evolution index ``x'``.  Lattice arithmetic is exact (``Fraction``); the
continuum side (heat kernel, normal density) is plain floating point.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Mapping, Union

from .errors import DomainError

Rational = Union[int, Fraction, str]

# float inputs up to this many trials are evaluated exactly, then rounded once
_EXACT_FLOAT_LIMIT = 20000


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, float or ``"a/b"`` string."""
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    if isinstance(value, (numbers.Rational, float)):
        return Fraction(value)
    raise DomainError(f"not a rational number: {value!r}")


class LatticeField:
    """Finitely supported field ``x -> y[x]`` at evolution index ``x_prime``."""

    __slots__ = ("_values", "x_prime")

    def __init__(self, values: Mapping[int, Rational] | None = None, x_prime: int = 0):
        if int(x_prime) != x_prime or x_prime < 0:
            raise DomainError(f"x_prime must be a nonnegative integer, got {x_prime}")
        clean = {}
        for x, v in (values or {}).items():
            if int(x) != x:
                raise DomainError(f"lattice sites must be integers, got {x!r}")
            v = as_rational(v)
            if v:
                clean[int(x)] = v
        self._values = dict(sorted(clean.items()))
        self.x_prime = int(x_prime)

    @classmethod
    def delta(cls, at: int = 0, x_prime: int = 0) -> "LatticeField":
        return cls({at: 1}, x_prime)

    @property
    def values(self) -> dict:
        return dict(self._values)

    def __getitem__(self, x: int) -> Fraction:
        return self._values.get(x, Fraction(0))

    def __iter__(self):
        return iter(self._values.items())

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeField):
            return NotImplemented
        return self.x_prime == other.x_prime and self._values == other._values

    def __hash__(self):
        return hash((self.x_prime, tuple(self._values.items())))

    def __add__(self, other: "LatticeField") -> "LatticeField":
        if self.x_prime != other.x_prime:
            raise DomainError("cannot add fields at different x_prime")
        keys = self._values.keys() | other._values.keys()
        return LatticeField({x: self[x] + other[x] for x in keys}, self.x_prime)

    def scale(self, factor: Rational) -> "LatticeField":
        f = as_rational(factor)
        return LatticeField({x: f * v for x, v in self}, self.x_prime)

    def mass(self) -> Fraction:
        """Sum of all coefficients."""
        return sum(self._values.values(), Fraction(0))

    def support(self) -> tuple:
        return (min(self._values), max(self._values)) if self._values else ()

    def __repr__(self):
        return f"LatticeField({self.format()!r}, x_prime={self.x_prime})"

    def format(self) -> str:
        """``x:value`` pairs separated by spaces, e.g. ``-2:1 -1:-2 0:2``."""
        return " ".join(f"{x}:{v}" for x, v in self)


def binomial_term(m: int, n: int, p) -> Union[Fraction, float]:
    """Probability of ``m`` successes and ``n`` failures, ``mu!/(m! n!) p^m q^n``.

    Rational ``p`` (int, Fraction or ``"a/b"``) gives an exact Fraction.  A
    float ``p`` gives a float: for up to 20000 trials it is the exact value
    for that binary ``p``, correctly rounded; beyond that a log-gamma
    evaluation is used.
    """
    if int(m) != m or int(n) != n or m < 0 or n < 0:
        raise DomainError(f"m and n must be nonnegative integers, got {m}, {n}")
    m, n = int(m), int(n)
    mu = m + n
    if isinstance(p, float):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {p}")
        if mu <= _EXACT_FLOAT_LIMIT:
            return float(_exact_term(m, n, Fraction(p)))
        q = 1.0 - p
        if (p == 0.0 and m) or (q == 0.0 and n):
            return 0.0
        log_term = math.lgamma(mu + 1) - math.lgamma(m + 1) - math.lgamma(n + 1)
        if m:
            log_term += m * math.log(p)
        if n:
            log_term += n * math.log1p(-p)
        return math.exp(log_term)
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    return _exact_term(m, n, p)


def _exact_term(m: int, n: int, p: Fraction) -> Fraction:
    q = 1 - p
    return math.comb(m + n, m) * p**m * q**n


def delta2(field: LatticeField) -> LatticeField:
    """Forward second difference ``y[x+2] - 2 y[x+1] + y[x]``."""
    if not len(field):
        return LatticeField({}, field.x_prime)
    lo, hi = field.support()
    return LatticeField(
        {x: field[x + 2] - 2 * field[x + 1] + field[x] for x in range(lo - 2, hi + 1)},
        field.x_prime,
    )


def laplace_step(field: LatticeField) -> LatticeField:
    """Advance ``x'`` by one using ``y[x, x'+1] - y[x, x'] = delta2 y[x, x']``.

    This forward-offset recursion amplifies oscillations; it is a faithful
    transcription, not a convergent heat solver (see :func:`scaled_heat_step`).
    """
    d2 = delta2(field)
    keys = dict(field).keys() | dict(d2).keys()
    return LatticeField({x: field[x] + d2[x] for x in keys}, field.x_prime + 1)


def scaled_heat_step(field: LatticeField, lam: Rational = Fraction(1, 2)) -> LatticeField:
    """Centered explicit step ``y[x] + lam (y[x+1] - 2 y[x] + y[x-1])``.

    With ``lam = 1/2`` one step is one fair coin toss of a random walk.
    """
    lam = as_rational(lam)
    if not 0 < lam <= Fraction(1, 2):
        raise DomainError(f"lambda must lie in (0, 1/2], got {lam}")
    if not len(field):
        return LatticeField({}, field.x_prime + 1)
    lo, hi = field.support()
    return LatticeField(
        {
            x: field[x] + lam * (field[x + 1] - 2 * field[x] + field[x - 1])
            for x in range(lo - 1, hi + 2)
        },
        field.x_prime + 1,
    )


def heat_kernel(x: float, x_prime: float) -> float:
    """Normal density with variance ``2 x'``, solving ``y_xx = y_x'``."""
    if not x_prime > 0:
        raise DomainError(f"x_prime must be positive, got {x_prime}")
    return math.exp(-x * x / (4.0 * x_prime)) / math.sqrt(4.0 * math.pi * x_prime)


def pde_residual(x: float, x_prime: float, h: float) -> float:
    """Centered-difference estimate of ``y_xx - y_x'`` for the heat kernel."""
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    if not x_prime - h > 0:
        raise DomainError(f"need x_prime - h > 0, got x_prime={x_prime}, h={h}")
    k = heat_kernel
    d_xx = (k(x + h, x_prime) - 2.0 * k(x, x_prime) + k(x - h, x_prime)) / (h * h)
    d_t = (k(x, x_prime + h) - k(x, x_prime - h)) / (2.0 * h)
    return d_xx - d_t


def demoivre_compare(mu: int, p) -> float:
    """Largest gap between the binomial terms and the matching normal density.

    Compares ``binomial_term(m, mu - m, p)`` with the normal density of mean
    ``mu p`` and variance ``mu p q`` at every integer ``m`` in ``0..mu``.
    """
    if int(mu) != mu or mu < 1:
        raise DomainError(f"mu must be a positive integer, got {mu}")
    p_exact = as_rational(p)
    if not 0 < p_exact < 1:
        raise DomainError(f"p must lie strictly inside (0, 1), got {p}")
    mean = float(mu * p_exact)
    var = float(mu * p_exact * (1 - p_exact))
    norm = 1.0 / math.sqrt(2.0 * math.pi * var)
    worst = 0.0
    for m in range(int(mu) + 1):
        exact = float(_exact_term(m, int(mu) - m, p_exact))
        approx = norm * math.exp(-((m - mean) ** 2) / (2.0 * var))
        worst = max(worst, abs(exact - approx))
    return worst
