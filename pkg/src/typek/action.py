"""Finite groups acting on lattices by Gram-preserving integer matrices.

Matrices act on coordinate column vectors: ``x -> g @ x``.  Sublattice bases
are returned as rows in ambient coordinates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import List, Sequence, Tuple

from sympy import cyclotomic_poly, factorint

from . import linalg
from .lattice import Lattice, orthogonal_complement, parse_lattice, sublattice

CLOSURE_GUARD = 10**4


class VerificationFailure(AssertionError):
    """A computed quantity contradicts the statement it is checking."""


def _key(M) -> tuple:
    return tuple(tuple(r) for r in M)


@dataclass(frozen=True)
class LatticeAction:
    lattice: Lattice
    generators: Tuple[tuple, ...]

    def __post_init__(self):
        gens = tuple(_key(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        G = self.lattice.gram
        n = self.lattice.rank
        for g in gens:
            if linalg.shape(g) != (n, n):
                raise ValueError("generator has the wrong size")
            if _key(linalg.matmul(linalg.matmul(linalg.transpose(g), G), g)) != G:
                raise ValueError("generator does not preserve the Gram matrix")

    def elements(self, guard: int = CLOSURE_GUARD) -> List[tuple]:
        n = self.lattice.rank
        e = _key(linalg.identity(n))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    k = _key(linalg.matmul(g, h))
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
                        if len(seen) > guard:
                            raise ValueError(f"group closure exceeds {guard} elements")
            frontier = nxt
        return sorted(seen)

    @property
    def order(self) -> int:
        return len(self.elements())

    def to_json(self) -> dict:
        return {"lattice": self.lattice.to_json(), "generators": [[list(r) for r in g] for g in self.generators]}


def action_from_json(obj: dict) -> LatticeAction:
    from .lattice import lattice_from_json

    return LatticeAction(lattice_from_json(obj["lattice"]), tuple(obj["generators"]))


def invariant_basis(act: LatticeAction) -> list:
    n = act.lattice.rank
    stacked = []
    for g in act.generators:
        stacked += [[g[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    return linalg.saturated_kernel(stacked, n)


def invariant_lattice(act: LatticeAction) -> Tuple[Lattice, list]:
    """``L^G`` and its basis (rows)."""
    basis = invariant_basis(act)
    return sublattice(act.lattice, basis), basis


def coinvariant_lattice(act: LatticeAction) -> Tuple[Lattice, list]:
    """``L_G = (L^G)^perp`` and its basis (rows)."""
    inv = invariant_basis(act)
    if len(inv) == 0:
        n = act.lattice.rank
        return act.lattice, linalg.identity(n)
    return orthogonal_complement(act.lattice, inv)


def _swap_blocks(n: int, a: int, b: int, size: int) -> list:
    M = linalg.identity(n)
    for k in range(size):
        i, j = a + k, b + k
        M[i][i] = M[j][j] = 0
        M[i][j] = M[j][i] = 1
    return M


def enriques_model() -> LatticeAction:
    """The involution on ``U1+U2+U3+E8(-1)+E8(-1)``: -1 on U1, U2<->U3, E8<->E8."""
    K3 = parse_lattice("K3")
    g = _swap_blocks(22, 2, 4, 2)
    g = linalg.matmul(g, _swap_blocks(22, 6, 14, 8))
    g[0][0] = g[1][1] = -1
    return LatticeAction(K3, (g,))


def _check_involution(L: Lattice, iota) -> None:
    n = L.rank
    if _key(linalg.matmul(iota, iota)) != _key(linalg.identity(n)):
        raise ValueError("not an involution")
    if _key(iota) == _key(linalg.identity(n)):
        raise ValueError("involution must act non-trivially")
    LatticeAction(L, (iota,))


def glue_exponent(L: Lattice, iota) -> int:
    """``a`` with ``L / (L_iota + L^iota) = (Z/2)^a``, via Smith form of the joint basis."""
    _check_involution(L, iota)
    act = LatticeAction(L, (iota,))
    inv = invariant_basis(act)
    _, anti = coinvariant_lattice(act)
    joint = [list(r) for r in anti] + [list(r) for r in inv]
    divs = linalg.elementary_divisors(joint)
    if len(divs) != L.rank:
        raise VerificationFailure("invariant and anti-invariant parts do not span")
    if any(d not in (1, 2) for d in divs):
        raise VerificationFailure(f"glue group is not 2-elementary: {divs}")
    return divs.count(2)


def anti_invariant_torsion(L: Lattice, iota) -> Tuple[int, ...]:
    """Torsion of ``L^v / {x - iota x}`` as elementary divisors (all 2).

    The dual action in dual-basis coordinates is ``iota^T``.  The result is
    cross-checked against ``rank L_iota - a``.
    """
    _check_involution(L, iota)
    n = L.rank
    it = linalg.transpose(iota)
    gamma = [[int(i == j) - it[i][j] for j in range(n)] for i in range(n)]
    tors = tuple(d for d in linalg.elementary_divisors(gamma) if d > 1)
    if any(d != 2 for d in tors):
        raise VerificationFailure(f"torsion is not 2-elementary: {tors}")
    a = glue_exponent(L, iota)
    anti_rank = len(coinvariant_lattice(LatticeAction(L, (iota,)))[1])
    if len(tors) != anti_rank - a:
        raise VerificationFailure(f"torsion rank {len(tors)} != rank L_iota - a = {anti_rank} - {a}")
    return tors


# ---------------------------------------------------------------------------
# eigenvalue multisets for the coinvariant determinant


@dataclass(frozen=True)
class EigenvalueMultiset:
    """Eigenvalues ``exp(2 pi i r)`` given as turns ``r`` in [0, 1) with multiplicities."""

    entries: Tuple[Tuple[Fraction, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)


_EIG = re.compile(r"\(\s*(-?)\s*(1|z(?:eta)?_?(\d+)(?:\^(\d+))?)\s*\)\s*\^\s*(\d+)")


def parse_eigenvalues(text: str) -> EigenvalueMultiset:
    """Parse e.g. ``"(-1)^4 (z3)^4 (z3^2)^4 (-z3)^2 (-z3^2)^2"``."""
    text = text.replace("−", "-").replace("ζ", "z")
    entries = []
    pos = 0
    for m in _EIG.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse eigenvalues near {text[pos:m.start()]!r}")
        neg, body, d, k, mult = m.groups()
        r = Fraction(0) if body == "1" else Fraction(int(k or 1), int(d))
        if neg:
            r += Fraction(1, 2)
        entries.append((r % 1, int(mult)))
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"cannot parse eigenvalues near {text[pos:]!r}")
    return EigenvalueMultiset(tuple(entries))


def coinv_det(ev: EigenvalueMultiset) -> int:
    """``det(1 - h)`` on the coinvariant lattice: ``prod_d Phi_d(1)^(orbit multiplicity)``.

    Each Galois orbit of primitive d-th roots must appear with a common
    multiplicity (the characteristic polynomial is rational).
    """
    by_order: dict = {}
    for r, m in ev.entries:
        if r == 0:
            raise ValueError("eigenvalue 1 makes 1 - h singular")
        d = r.denominator
        by_order.setdefault(d, {})
        by_order[d][r] = by_order[d].get(r, 0) + m
    out = 1
    for d, mults in by_order.items():
        orbit = [Fraction(k, d) for k in range(1, d) if gcd(k, d) == 1]
        ms = {mults.get(r, 0) for r in orbit}
        if len(ms) != 1:
            raise ValueError(f"incomplete Galois orbit of order-{d} roots of unity")
        out *= _phi_at_one(d) ** ms.pop()
    return out


def _phi_at_one(d: int) -> int:
    """``Phi_d(1)``: p if d is a power of the prime p, else 1 (for d > 1)."""
    f = factorint(d)
    return next(iter(f)) if len(f) == 1 else 1


def phi_at_one_direct(d: int) -> int:
    return int(cyclotomic_poly(d, 1))
