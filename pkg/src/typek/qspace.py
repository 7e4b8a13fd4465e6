"""Rational quadratic spaces: Hilbert symbols, Hasse invariants, Q-equivalence.

Two nondegenerate quadratic spaces over Q are isometric iff they agree in
rank, signature, discriminant modulo squares and the Hasse invariant at every
prime.  Away from the primes dividing ``2 * prod(a_i)`` of either
diagonalization all Hasse invariants are +1, so a finite check suffices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from sympy import factorint

from . import linalg
from .lattice import Lattice, disc, inertia

Place = Union[int, str]
REAL = "real"


def legendre_symbol(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _valuation(n: int, p: int) -> Tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _to_integer(a) -> int:
    """Integer in the same square class as the rational ``a``."""
    a = Fraction(a)
    return a.numerator * a.denominator


def squarefree_part(a) -> int:
    n = _to_integer(a)
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def hilbert_symbol(a, b, p: Place) -> int:
    """Hilbert symbol ``(a, b)_p`` for nonzero rationals at a prime or ``"real"``."""
    a, b = _to_integer(a), _to_integer(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if p == REAL:
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** ((alpha * beta * ((p - 1) // 2)) % 2)
    if beta % 2:
        s *= legendre_symbol(u % p, p)
    if alpha % 2:
        s *= legendre_symbol(v % p, p)
    return s


def hasse_invariant(diag: Iterable, p: Place) -> int:
    """``prod_{i<j} (a_i, a_j)_p``."""
    d = list(diag)
    out = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            out *= hilbert_symbol(d[i], d[j], p)
    return out


def bad_primes(diag: Iterable) -> set:
    out = {2}
    for a in diag:
        n = abs(_to_integer(a))
        out.update(factorint(n).keys())
    return out


@dataclass(frozen=True)
class QSpaceInvariants:
    rank: int
    signature: Tuple[int, int]
    disc_square_class: int
    hasse: Dict[int, int] = field(hash=False)
    real_symbol: int = 1

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "disc_square_class": self.disc_square_class,
            "hasse": {str(p): s for p, s in sorted(self.hasse.items())},
        }


def _diagonal(L: Lattice):
    _, d = linalg.congruent_diagonalize(L.gram)
    return d


def invariants(L: Lattice, primes: Iterable[int] | None = None) -> QSpaceInvariants:
    if disc(L) == 0:
        raise ValueError("quadratic space is degenerate")
    d = _diagonal(L)
    pos, neg, _ = inertia(L)
    ps = sorted(set(primes) if primes is not None else bad_primes(d))
    dsq = Fraction(1)
    for a in d:
        dsq *= a
    return QSpaceInvariants(
        rank=len(d),
        signature=(pos, neg),
        disc_square_class=squarefree_part(dsq),
        hasse={p: hasse_invariant(d, p) for p in ps},
        real_symbol=hasse_invariant(d, REAL),
    )


@dataclass(frozen=True)
class QEquivalence:
    equivalent: bool
    left: QSpaceInvariants
    right: QSpaceInvariants
    reason: str = ""


def q_equivalent(L1: Lattice, L2: Lattice) -> QEquivalence:
    """Decide ``L1 (x) Q ~= L2 (x) Q`` and return both invariant certificates."""
    if disc(L1) == 0 or disc(L2) == 0:
        raise ValueError("q_equivalent needs nondegenerate lattices")
    primes = bad_primes(_diagonal(L1)) | bad_primes(_diagonal(L2))
    i1, i2 = invariants(L1, primes), invariants(L2, primes)
    reason = ""
    if i1.rank != i2.rank:
        reason = "rank differs"
    elif i1.signature != i2.signature:
        reason = "signature differs"
    elif i1.disc_square_class != i2.disc_square_class:
        reason = "discriminant square class differs"
    else:
        bad = [p for p in sorted(primes) if i1.hasse[p] != i2.hasse[p]]
        if bad:
            reason = f"Hasse invariant differs at p = {bad[0]}"
    return QEquivalence(not reason, i1, i2, reason)
