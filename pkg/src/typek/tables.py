"""Classification data for the eight type-K groups and the drivers that check it.

The records are loaded from ``data/type_k.json`` and verified on load: every
stored discriminant, rank and proof-table entry is recomputed from the
lattice expressions and any mismatch aborts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import prod
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .action import EigenvalueMultiset, parse_eigenvalues
from .lattice import Lattice, direct_sum, disc, is_even, parse_lattice, signature
from .qspace import QEquivalence, q_equivalent

GROUP_TAGS = ("C2", "C2xC2", "C2xC2xC2", "D6", "D8", "D10", "D12", "C2xD8")
CYCLIC_H = {"C1", "C2", "C3", "C4", "C5", "C6"}


class FixtureError(RuntimeError):
    pass


def parse_power_product(text: str) -> int:
    """``"2^4*3^5"`` -> 3888."""
    out = 1
    for part in text.replace(" ", "").replace("·", "*").split("*"):
        base, _, exp = part.partition("^")
        out *= int(base) ** int(exp or 1)
    return out


@dataclass(frozen=True)
class ProofRow:
    disc_H_invariant: int
    disc_G: int
    disc_N: int
    a: int
    rank_N: int
    n: int


@dataclass(frozen=True)
class TypeKRecord:
    tag: str
    order: int
    H: str
    H_invariant: str
    M_expr: str
    N_expr: str
    disc_H_invariant: int
    h11: int
    expected_m: int
    proof_row: ProofRow

    @property
    def M(self) -> Lattice:
        return parse_lattice(self.M_expr)

    @property
    def N(self) -> Lattice:
        return parse_lattice(self.N_expr)

    @property
    def H_invariant_lattice(self) -> Lattice:
        return parse_lattice(self.H_invariant)


def _raw() -> dict:
    return json.loads(resources.files("typek").joinpath("data/type_k.json").read_text())


def _verify_record(r: TypeKRecord) -> None:
    LH = r.H_invariant_lattice
    if abs(disc(LH)) != r.disc_H_invariant:
        raise FixtureError(f"{r.tag}: |disc {r.H_invariant}| = {abs(disc(LH))} != {r.disc_H_invariant}")
    if r.proof_row.disc_H_invariant != r.disc_H_invariant:
        raise FixtureError(f"{r.tag}: proof table disagrees on |disc Lambda^H|")
    if abs(disc(r.M)) != r.proof_row.disc_G:
        raise FixtureError(f"{r.tag}: |disc M_G| = {abs(disc(r.M))} != {r.proof_row.disc_G}")
    if abs(disc(r.N)) != r.proof_row.disc_N:
        raise FixtureError(f"{r.tag}: |disc N_G| = {abs(disc(r.N))} != {r.proof_row.disc_N}")
    if r.N.rank != r.proof_row.rank_N:
        raise FixtureError(f"{r.tag}: rank N_G = {r.N.rank} != {r.proof_row.rank_N}")


@lru_cache(maxsize=None)
def records() -> Tuple[TypeKRecord, ...]:
    out = []
    for g in _raw()["groups"]:
        pr = g["proof_row"]
        rec = TypeKRecord(
            tag=g["tag"],
            order=g["order"],
            H=g["H"],
            H_invariant=g["H_invariant"],
            M_expr=g["M"],
            N_expr=g["N"],
            disc_H_invariant=g["disc_H_invariant"],
            h11=g["h11"],
            expected_m=g["m"],
            proof_row=ProofRow(
                disc_H_invariant=g["disc_H_invariant"],
                disc_G=parse_power_product(pr["disc_G"]),
                disc_N=parse_power_product(pr["disc_N"]),
                a=pr["a"],
                rank_N=pr["rank_N"],
                n=pr["n"],
            ),
        )
        _verify_record(rec)
        out.append(rec)
    if tuple(r.tag for r in out) != GROUP_TAGS:
        raise FixtureError("group list differs from the classification")
    return tuple(out)


def record(tag: str) -> TypeKRecord:
    tag = normalize_tag(tag)
    for r in records():
        if r.tag == tag:
            return r
    raise KeyError(f"unknown group tag {tag!r}; expected one of {', '.join(GROUP_TAGS)}")


def normalize_tag(tag: str) -> str:
    t = tag.replace("×", "x").replace("₂", "2").replace(" ", "")
    t = t.translate(str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789"))
    return t


def coinvariant_table() -> List[Tuple[str, EigenvalueMultiset, int]]:
    return [
        (row["H"], parse_eigenvalues(row["eigenvalues"]), parse_power_product(row["det"]))
        for row in _raw()["coinvariant_eigenvalues"]
    ]


def symplectic_invariant(H: str) -> Lattice:
    return parse_lattice(_raw()["symplectic_invariant"][H])


# ---------------------------------------------------------------------------
# drivers


def verify_duality(tag: str) -> QEquivalence:
    """Is ``U + M_G`` rationally isometric to ``N_G``?"""
    r = record(tag)
    return q_equivalent(direct_sum(parse_lattice("U"), r.M), r.N)


@dataclass(frozen=True)
class BrauerRow:
    tag: str
    disc_H_invariant: int
    disc_M: int
    disc_N: int
    a: int
    rank_N: int
    n: int
    m: int


def _log2_exact(x: Fraction) -> int:
    if x.denominator != 1 or x.numerator < 1 or x.numerator & (x.numerator - 1):
        raise ValueError(f"{x} is not a power of 2")
    return x.numerator.bit_length() - 1


def brauer_m(tag: str) -> BrauerRow:
    """``(a, n, m)`` with ``2^(2a) = |disc M||disc N| / |disc Lambda^H|``, ``n = rank N - a``, ``m = n - 1``."""
    r = record(tag)
    dM, dN = abs(disc(r.M)), abs(disc(r.N))
    ratio = Fraction(dM * dN, r.disc_H_invariant)
    try:
        e = _log2_exact(ratio)
    except ValueError:
        raise ValueError(f"{r.tag}: glue ratio {ratio} is not a power of 4") from None
    if e % 2:
        raise ValueError(f"{r.tag}: glue ratio {ratio} is not a power of 4")
    a = e // 2
    n = r.N.rank - a
    if n < 0:
        raise ValueError(f"{r.tag}: negative n")
    return BrauerRow(r.tag, r.disc_H_invariant, dM, dN, a, r.N.rank, n, n - 1)


# ---------------------------------------------------------------------------
# trilinear forms


@dataclass(frozen=True)
class TrilinearTypeL:
    """Symmetric trilinear form on ``L + Z n``: ``mu(alpha, beta, n) = n <alpha, beta>``."""

    gram: Tuple[Tuple, ...]

    @property
    def rank(self) -> int:
        return len(self.gram) + 1

    def evaluate(self, alpha: Sequence, beta: Sequence, n) -> Fraction:
        return n * linalg.bilinear(self.gram, alpha, beta)

    def __call__(self, x: Sequence, y: Sequence, z: Sequence):
        """Full vectors ``(l_1, ..., l_r, n)``."""
        G = self.gram
        ax, nx = x[:-1], x[-1]
        ay, ny = y[:-1], y[-1]
        az, nz = z[:-1], z[-1]
        return (
            nz * linalg.bilinear(G, ax, ay)
            + ny * linalg.bilinear(G, ax, az)
            + nx * linalg.bilinear(G, ay, az)
        )


def mu_typeL(L: Lattice) -> TrilinearTypeL:
    return TrilinearTypeL(L.gram)


def half_lattice_gram(tag: str) -> list:
    """Gram matrix of ``M_G(1/2)``."""
    return [[Fraction(v, 2) for v in row] for row in record(tag).M.gram]


def mu_X_eval(tag: str, gamma1: Sequence[int], gamma2: Sequence[int], n: int) -> Fraction:
    """``(n/2) <gamma1, gamma2>_{M_G}``."""
    return Fraction(n, 2) * record(tag).M.pair(gamma1, gamma2)


def typeL_integral(tag: str) -> bool:
    """Is ``M_G(1/2)`` an integral lattice (so the cup-product form is integral)?"""
    return all(v.denominator == 1 for row in half_lattice_gram(tag) for v in row)


def c2_coeff(tag: str) -> Fraction:
    return Fraction(24, record(tag).order)


# ---------------------------------------------------------------------------
# mirror maps


@dataclass(frozen=True)
class GaussQ:
    """Exact complex number ``re + i im`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o):
        o = _gq(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_gq(o))

    def __mul__(self, o):
        o = _gq(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


def _gq(x) -> GaussQ:
    return x if isinstance(x, GaussQ) else GaussQ(Fraction(x))


def _pair(G, x: Sequence[GaussQ], y: Sequence[GaussQ]) -> GaussQ:
    out = GaussQ(0)
    for i, row in enumerate(G):
        for j, g in enumerate(row):
            if g:
                out = out + x[i] * y[j] * g
    return out


@dataclass(frozen=True)
class PeriodVector:
    """Coordinates in ``U + M_G`` (first two: the standard basis e, f of U)."""

    coords: Tuple[GaussQ, ...]
    gram: Tuple[Tuple, ...]

    def square(self) -> GaussQ:
        return _pair(self.gram, self.coords, self.coords)

    def hermitian_norm(self) -> GaussQ:
        return _pair(self.gram, self.coords, [c.conjugate() for c in self.coords])


def tube_domain_period(tag: str, B: Sequence, kappa: Sequence) -> PeriodVector:
    """``e - (1/2)<B + i kappa, B + i kappa> f + B + i kappa``."""
    M = record(tag).M
    if len(B) != M.rank or len(kappa) != M.rank:
        raise ValueError(f"B and kappa need {M.rank} coordinates")
    k2 = M.pair([Fraction(v) for v in kappa], [Fraction(v) for v in kappa])
    if k2 <= 0:
        raise ValueError(f"kappa^2 = {k2} must be positive")
    z = [GaussQ(b, k) for b, k in zip(B, kappa)]
    zz = _pair(M.gram, z, z)
    coords = (GaussQ(1), zz * Fraction(-1, 2), *z)
    G = direct_sum(parse_lattice("U"), M).gram
    return PeriodVector(coords, G)


def elliptic_mirror(B, kappa) -> GaussQ:
    """``tau = B + i kappa``."""
    if Fraction(kappa) <= 0:
        raise ValueError("kappa must be positive")
    return GaussQ(B, kappa)


def table_lattice_checks(r: TypeKRecord) -> Dict[str, bool]:
    """Consistency of a record: parity, hyperbolic signatures, rank bookkeeping."""
    M, N = r.M, r.N
    return {
        "M even": is_even(M),
        "N even": is_even(N),
        "M signature (1, r-1)": signature(M) == (1, M.rank - 1),
        "N signature (2, r-2)": signature(N) == (2, N.rank - 2),
        "rank M + rank N = rank Lambda^H": M.rank + N.rank == r.H_invariant_lattice.rank,
    }
