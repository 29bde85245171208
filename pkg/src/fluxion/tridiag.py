"""Thomas algorithm for tridiagonal systems.

The system is written row-wise as

    lower[i] u[i-1] + diag[i] u[i] + upper[i] u[i+1] = rhs[i]

with ``lower[0]`` and ``upper[-1]`` ignored.  No pivoting: callers pass
diagonally dominant matrices.
"""

from __future__ import annotations

import numpy as np


class TridiagonalFactor:
    """LU factorization of a tridiagonal matrix, reusable across right-hand sides."""

    def __init__(self, lower, diag, upper):
        lower = np.asarray(lower, dtype=float)
        diag = np.asarray(diag, dtype=float)
        upper = np.asarray(upper, dtype=float)
        n = diag.size
        if lower.size != n or upper.size != n:
            raise ValueError("lower, diag and upper must have equal length")
        # modified upper coefficients and pivots of the forward sweep
        cp = np.zeros(n)
        piv = np.empty(n)
        piv[0] = diag[0]
        for i in range(1, n):
            cp[i - 1] = upper[i - 1] / piv[i - 1]
            piv[i] = diag[i] - lower[i] * cp[i - 1]
        self._lower = lower.tolist()
        self._cp = cp.tolist()
        self._piv = piv.tolist()
        self.n = n

    def solve(self, rhs) -> np.ndarray:
        lower, cp, piv = self._lower, self._cp, self._piv
        d = [float(v) for v in rhs]
        n = self.n
        if len(d) != n:
            raise ValueError(f"rhs length {len(d)} does not match system size {n}")
        d[0] /= piv[0]
        for i in range(1, n):
            d[i] = (d[i] - lower[i] * d[i - 1]) / piv[i]
        for i in range(n - 2, -1, -1):
            d[i] -= cp[i] * d[i + 1]
        return np.array(d)


def solve(lower, diag, upper, rhs) -> np.ndarray:
    """Solve one tridiagonal system."""
    return TridiagonalFactor(lower, diag, upper).solve(rhs)
