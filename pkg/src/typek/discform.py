"""Discriminant groups A(L) = L^v / L with their Q/2Z-valued quadratic forms."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import List, Sequence, Tuple

from . import linalg
from .lattice import Lattice, disc, is_even

DISC_GUARD = 2**20
ENUM_GUARD = 2**14


class GuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DiscGroup:
    """``A(L) = (+) Z/d_i`` with generator lifts in ``L (x) Q`` (L-coordinates)."""

    orders: Tuple[int, ...]
    lifts: Tuple[Tuple[Fraction, ...], ...]
    lattice: Lattice

    @property
    def size(self) -> int:
        return prod(self.orders)

    def vector(self, element: Sequence[int]) -> List[Fraction]:
        n = self.lattice.rank
        v = [Fraction(0)] * n
        for c, lift in zip(element, self.lifts):
            if c:
                v = [a + c * b for a, b in zip(v, lift)]
        return v

    def elements(self):
        return itertools.product(*[range(d) for d in self.orders])

    def element_order(self, element: Sequence[int]) -> int:
        out = 1
        for c, d in zip(element, self.orders):
            k = d // gcd(c, d)
            out = out * k // gcd(out, k)
        return out

    def element_of(self, vec: Sequence) -> Tuple[int, ...]:
        """Coordinates of a dual-lattice vector ``vec`` (L-coordinates)."""
        G = self.lattice.gram
        y = linalg.matvec(G, vec)  # pairings with the basis, integral for vec in L^v
        if any(Fraction(v).denominator != 1 for v in y):
            raise ValueError("vector is not in the dual lattice")
        snf = _snf(self.lattice)
        # vec = V D^-1 w  =>  w = D V^-1 vec = U G vec
        w = linalg.matvec(snf.U, y)
        k = len(snf.divisors) - len(self.orders)
        return tuple(int(w[k + i]) % d for i, d in enumerate(self.orders))


def _snf(L: Lattice) -> linalg.SnfResult:
    return linalg.smith_normal_form(L.gram)


def discriminant_group(L: Lattice) -> DiscGroup:
    """Generators of ``A(L)`` from the Smith form ``U G V = D``: columns of V / d_i."""
    if not is_even(L):
        raise ValueError("discriminant form needs an even lattice")
    d = disc(L)
    if d == 0:
        raise ValueError("lattice is degenerate")
    if abs(d) > DISC_GUARD:
        raise GuardExceeded(f"|disc| = {abs(d)} exceeds guard {DISC_GUARD}")
    snf = _snf(L)
    Vt = linalg.transpose(snf.V)
    orders, lifts = [], []
    for i, di in enumerate(snf.divisors):
        if di > 1:
            orders.append(di)
            lifts.append(tuple(Fraction(v, di) for v in Vt[i]))
    return DiscGroup(tuple(orders), tuple(lifts), L)


def q_value(D: DiscGroup, element: Sequence[int]) -> Fraction:
    """``x^2 mod 2`` for a lift ``x`` of the element, as a fraction in [0, 2)."""
    v = D.vector(element)
    return Fraction(linalg.bilinear(D.lattice.gram, v, v)) % 2


def b_value(D: DiscGroup, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """``<x, y> mod 1``."""
    return Fraction(linalg.bilinear(D.lattice.gram, D.vector(x), D.vector(y))) % 1


@dataclass(frozen=True)
class FqfFingerprint:
    group_type: Tuple[int, ...]
    value_multiset: Tuple[Tuple[Tuple[int, Fraction], int], ...]

    def to_json(self) -> dict:
        return {
            "group_type": list(self.group_type),
            "values": [[o, str(q), n] for (o, q), n in self.value_multiset],
        }

    def negated(self) -> "FqfFingerprint":
        c = Counter()
        for (o, q), n in self.value_multiset:
            c[(o, (-q) % 2)] += n
        return FqfFingerprint(self.group_type, tuple(sorted(c.items())))


def _canonical_type(orders: Sequence[int]) -> Tuple[int, ...]:
    """Invariant factors rewritten as sorted prime-power (elementary) divisors."""
    out = []
    for d in orders:
        p = 2
        while d > 1:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                out.append(q)
            p += 1
    return tuple(sorted(out))


def fingerprint(L: Lattice) -> FqfFingerprint:
    """Group type plus the multiset of (element order, q-value) over all of A(L)."""
    D = discriminant_group(L)
    if D.size > ENUM_GUARD:
        raise GuardExceeded(f"|A(L)| = {D.size} exceeds enumeration guard {ENUM_GUARD}")
    k = len(D.orders)
    gram = [[linalg.bilinear(L.gram, D.lifts[i], D.lifts[j]) for j in range(k)] for i in range(k)]
    counts: Counter = Counter()
    for el in D.elements():
        q = sum(el[i] * el[j] * gram[i][j] for i in range(k) for j in range(k) if el[i] and el[j])
        counts[(D.element_order(el), Fraction(q) % 2)] += 1
    return FqfFingerprint(_canonical_type(D.orders), tuple(sorted(counts.items())))


def fingerprints_equal(L1: Lattice, L2: Lattice, negate: bool = False) -> bool:
    """Compare ``q(L1)`` with ``q(L2)`` (or ``-q(L2)``) by fingerprint.

    Equal fingerprints are a necessary condition for an isometry of
    discriminant forms, not a proof of one.
    """
    f1, f2 = fingerprint(L1), fingerprint(L2)
    return f1 == (f2.negated() if negate else f2)


class NotIsotropic(ValueError):
    def __init__(self, element, value):
        super().__init__(f"element {tuple(element)} is not isotropic (value {value})")
        self.element = tuple(element)
        self.value = value


def overlattice(L: Lattice, W_gens: Sequence[Sequence[int]]) -> Tuple[Lattice, list]:
    """Overlattice of ``L`` attached to the isotropic subgroup generated by ``W_gens``.

    Returns ``(M, basis)`` with ``basis`` rows the M-basis in L (x) Q coordinates.
    """
    D = discriminant_group(L)
    gens = [tuple(g) for g in W_gens]
    for g in gens:
        q = q_value(D, g)
        if q != 0:
            raise NotIsotropic(g, q)
    for g, h in itertools.combinations(gens, 2):
        b = b_value(D, g, h)
        if b != 0:
            raise NotIsotropic(g, f"pairing with {h} = {b} mod 1")
    n = L.rank
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)] + [D.vector(g) for g in gens]
    den = 1
    for row in rows:
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [[int(v * den) for v in row] for row in rows]
    basis = [[Fraction(v, den) for v in row] for row in linalg.row_basis(ints)]
    gram = linalg.congruence(basis, L.gram)
    gram = [[int(v) for v in row] for row in gram]
    M = Lattice(gram)
    if not is_even(M):  # pragma: no cover - excluded by the isotropy checks
        raise ValueError("overlattice is not even")
    return M, basis
