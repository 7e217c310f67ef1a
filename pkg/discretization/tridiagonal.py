"""
Thomas algorithm for tridiagonal systems.
"""
from typing import Sequence
import numpy as np
from utils.exceptions import LengthMismatch, ZeroPivot

PIVOT_FLOOR = 1e-300


class TridiagonalFactor:
    """
    LU factors of a tridiagonal matrix, computed once and applied to many
    right-hand sides.

    Args:
        sub: Sub-diagonal, length n-1
        diag: Diagonal, length n
        sup: Super-diagonal, length n-1

    Raises:
        ZeroPivot: If a pivot magnitude falls below 1e-300
        LengthMismatch: If the diagonals have inconsistent lengths
    """

    def __init__(self, sub: Sequence[float], diag: Sequence[float], sup: Sequence[float]):
        diag = np.asarray(diag, dtype=float)
        sub = np.asarray(sub, dtype=float)
        sup = np.asarray(sup, dtype=float)
        n = diag.size
        if n < 1:
            raise LengthMismatch("diagonal must have at least one entry", expected=1, actual=0)
        for name, band in (("sub", sub), ("sup", sup)):
            if band.size != n - 1:
                raise LengthMismatch(f"{name}-diagonal length {band.size} != {n - 1}", expected=n - 1, actual=band.size)

        pivots = np.empty(n)
        upper = np.zeros(n)
        pivots[0] = diag[0]
        for i in range(n):
            if i > 0:
                pivots[i] = diag[i] - sub[i - 1] * upper[i - 1]
            if abs(pivots[i]) < PIVOT_FLOOR:
                raise ZeroPivot(f"pivot {pivots[i]!r} at row {i}", index=i)
            if i < n - 1:
                upper[i] = sup[i] / pivots[i]

        self.n = n
        self._sub = sub
        self._pivots = pivots
        self._upper = upper

    def solve(self, rhs: Sequence[float]) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        if rhs.size != self.n:
            raise LengthMismatch(f"rhs length {rhs.size} != {self.n}", expected=self.n, actual=rhs.size)
        sub, pivots, upper = self._sub, self._pivots, self._upper

        x = np.empty(self.n)
        x[0] = rhs[0] / pivots[0]
        for i in range(1, self.n):
            x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / pivots[i]
        for i in range(self.n - 2, -1, -1):
            x[i] -= upper[i] * x[i + 1]
        return x


def thomas_solve(sub: Sequence[float], diag: Sequence[float], sup: Sequence[float], rhs: Sequence[float]) -> np.ndarray:
    """
    Solve a tridiagonal system T x = rhs.

    Returns:
        Solution vector

    Raises:
        ZeroPivot: If elimination meets a pivot below 1e-300 in magnitude
    """
    return TridiagonalFactor(sub, diag, sup).solve(rhs)
