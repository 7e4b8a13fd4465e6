"""Integers of the cyclotomic field Q(zeta_N) as coefficient vectors modulo Phi_N."""

from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple

from sympy import Poly, cyclotomic_poly, symbols

_X = symbols("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(N: int) -> Tuple[int, ...]:
    """Coefficients of ``Phi_N``, lowest degree first (monic)."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(N, _X), _X).all_coeffs()))


def _reduce(N: int, coeffs: List[int]) -> Tuple[int, ...]:
    phi = cyclotomic_coeffs(N)
    d = len(phi) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            for i in range(d + 1):
                c[k - d + i] -= lead * phi[i]
    return tuple(c[:d])


class CycInt:
    """``sum c_k zeta_N^k`` with ``0 <= k < phi(N)``."""

    __slots__ = ("N", "c")

    def __init__(self, N: int, coeffs):
        self.N = N
        self.c = _reduce(N, list(coeffs))

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "CycInt":
        k %= N
        return cls(N, [0] * k + [1])

    @classmethod
    def integer(cls, N: int, n: int) -> "CycInt":
        return cls(N, [n])

    @property
    def degree(self) -> int:
        return len(self.c)

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.N != self.N:
                raise ValueError("conductor mismatch")
            return other
        return CycInt(self.N, [int(other)])

    def __add__(self, other) -> "CycInt":
        o = self._coerce(other)
        return CycInt(self.N, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.N, [-a for a in self.c])

    def __sub__(self, other) -> "CycInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycInt":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycInt":
        o = self._coerce(other)
        out = [0] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return CycInt(self.N, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycInt":
        if n < 0:
            raise ValueError("negative powers need a unit inverse; use conjugate powers of zeta")
        out = CycInt(self.N, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt(self.N, [other])
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.N == other.N and self.c == other.c

    def __hash__(self):
        return hash((self.N, self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def multiplication_matrix(self) -> List[List[int]]:
        """Matrix of ``x -> self * x`` on the basis ``1, zeta, ..., zeta^(phi-1)`` (columns = images)."""
        d = self.degree
        cols = [(self * CycInt.zeta(self.N, k)).c if k else self.c for k in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def __repr__(self) -> str:
        parts = []
        for k, a in enumerate(self.c):
            if a:
                parts.append(f"{a}" if k == 0 else f"{a}*z{self.N}^{k}")
        return " + ".join(parts) or "0"
