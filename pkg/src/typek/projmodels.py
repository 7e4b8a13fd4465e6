"""Projective actions on P1 x P1 and their bidegree-(4,4) invariant polynomials.

Linear questions over Q(zeta_N) are answered over Q by expanding every
cyclotomic number in the basis ``1, zeta, ..., zeta^(phi(N)-1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .cyclotomic import CycInt
from .report import Report

Mat2 = Tuple[Tuple[CycInt, CycInt], Tuple[CycInt, CycInt]]
Word = Tuple[Tuple[str, int], ...]
Polynomial = Dict[Tuple[int, int], int]  # (deg_x, deg_z) -> coefficient; deg_y = 4 - deg_x, deg_w = 4 - deg_z

MONOMIALS = [(i, j) for i in range(4, -1, -1) for j in range(4, -1, -1)]
INDEX = {m: k for k, m in enumerate(MONOMIALS)}


def _m(N: int, rows) -> Mat2:
    return tuple(tuple(v if isinstance(v, CycInt) else CycInt.integer(N, v) for v in r) for r in rows)


def diag_zeta(N: int, a: int, b: int) -> Mat2:
    z = lambda k: CycInt.zeta(N, k)
    return _m(N, [[z(a), 0], [0, z(b)]])


def swap(N: int) -> Mat2:
    return _m(N, [[0, 1], [1, 0]])


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2))


def adjugate(A: Mat2) -> Mat2:
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def is_scalar(A: Mat2) -> bool:
    return A[0][1].is_zero() and A[1][0].is_zero() and A[0][0] == A[1][1] and not A[0][0].is_zero()


_LETTER = re.compile(r"([a-z])(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """``"aca^-1c^-1"`` -> ``(("a", 1), ("c", 1), ("a", -1), ("c", -1))``."""
    out, pos = [], 0
    for m in _LETTER.finditer(text.replace(" ", "")):
        if m.start() != pos:
            raise ValueError(f"bad word {text!r}")
        out.append((m.group(1), int(m.group(2) or 1)))
        pos = m.end()
    if pos != len(text.replace(" ", "")):
        raise ValueError(f"bad word {text!r}")
    return tuple(out)


@dataclass(frozen=True)
class ProjRep:
    """Generators ``g -> (rho_1(g), rho_2(g))`` in PGL(2) x PGL(2) over Q(zeta_N)."""

    name: str
    N: int
    generators: Dict[str, Tuple[Mat2, Mat2]] = field(hash=False)
    relations: Tuple[str, ...] = ()

    def identity(self) -> Mat2:
        return _m(self.N, [[1, 0], [0, 1]])

    def evaluate(self, word, factor: int) -> Mat2:
        """Matrix of ``word`` in ``rho_factor`` (inverse letters via the adjugate)."""
        w = parse_word(word) if isinstance(word, str) else word
        out = self.identity()
        for letter, e in w:
            g = self.generators[letter][factor]
            step = adjugate(g) if e < 0 else g
            for _ in range(abs(e)):
                out = mat_mul(out, step)
        return out


def relation_check(rep: ProjRep) -> Report:
    v = Report(f"{rep.name} relations")
    for word in rep.relations:
        for f in (0, 1):
            M = rep.evaluate(word, f)
            v.add(f"{word} scalar in rho_{f + 1}", is_scalar(M), "scalar", _fmt2(M))
    return v


def _fmt2(M: Mat2) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in M) + "]"


# ---------------------------------------------------------------------------
# action on bidegree (4, 4)


def _sym4(A: Mat2, N: int) -> List[List[CycInt]]:
    """Column ``4 - i``: image of ``x^i y^(4-i)`` under ``x -> a x + b y``, ``y -> c x + d y``."""
    (a, b), (c, d) = A
    zero = CycInt.integer(N, 0)
    M = [[zero] * 5 for _ in range(5)]
    for i in range(5):
        # (a x + b y)^i (c x + d y)^(4-i)
        for s in range(i + 1):
            for t in range(4 - i + 1):
                coef = comb(i, s) * comb(4 - i, t)
                val = (a**s) * (b ** (i - s)) * (c**t) * (d ** (4 - i - t)) * coef
                deg_x = s + t
                M[4 - deg_x][4 - i] = M[4 - deg_x][4 - i] + val
    return M


def monomial_action(rep: ProjRep, word) -> List[List[CycInt]]:
    """25 x 25 matrix of ``p -> p o (rho_1(g)^-1 x rho_2(g)^-1)`` up to a scalar."""
    A = _sym4(adjugate(rep.evaluate(word, 0)), rep.N)
    B = _sym4(adjugate(rep.evaluate(word, 1)), rep.N)
    out = []
    for i1 in range(5):
        for j1 in range(5):
            out.append([A[i1][i2] * B[j1][j2] for i2 in range(5) for j2 in range(5)])
    return out


def apply_matrix(M: List[List[CycInt]], vec: Sequence[CycInt]) -> List[CycInt]:
    N = vec[0].N
    out = []
    for row in M:
        acc = CycInt.integer(N, 0)
        for a, x in zip(row, vec):
            if x and a:
                acc = acc + a * x
        out.append(acc)
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:[xyzw](?:\^\d+)?)+)")


def parse_polynomial(text: str) -> Polynomial:
    """Bidegree-(4,4) polynomial such as ``"x^4zw^3 + y^4z^3w"``."""
    s = text.replace(" ", "").replace("*", "")
    out: Polynomial = {}
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = sign * int(m.group(2) or 1)
        deg = {"x": 0, "y": 0, "z": 0, "w": 0}
        for var, e in re.findall(r"([xyzw])(?:\^(\d+))?", m.group(3)):
            deg[var] += int(e or 1)
        if deg["x"] + deg["y"] != 4 or deg["z"] + deg["w"] != 4:
            raise ValueError(f"{m.group(0)!r} is not of bidegree (4, 4)")
        key = (deg["x"], deg["z"])
        out[key] = out.get(key, 0) + coef
        pos = m.end()
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    return {k: v for k, v in out.items() if v}


def poly_vector(p: Polynomial, N: int) -> List[CycInt]:
    v = [CycInt.integer(N, 0)] * 25
    for k, c in p.items():
        v[INDEX[k]] = CycInt.integer(N, c)
    return v


def _realify(vec: Sequence[CycInt]) -> List[int]:
    return [c for x in vec for c in x.c]


def _real_columns(vec: Sequence[CycInt]) -> List[List[int]]:
    """Q-basis ``zeta^k v`` of the line ``Q(zeta) v``, each realified."""
    N = vec[0].N
    d = vec[0].degree
    return [_realify([x * CycInt.zeta(N, k) for x in vec]) for k in range(d)]


def in_span(vec: Sequence[CycInt], basis: Sequence[Sequence[CycInt]]) -> bool:
    rows = [r for b in basis for r in _real_columns(b)]
    return linalg.rank(rows + [_realify(vec)]) == linalg.rank(rows)


def span_dimension(vectors: Sequence[Sequence[CycInt]]) -> int:
    rows = [r for b in vectors for r in _real_columns(b)]
    d = vectors[0][0].degree
    return linalg.rank(rows) // d


def _realify_matrix(M: List[List[CycInt]]) -> List[List[int]]:
    d = M[0][0].degree
    n = len(M)
    out = [[0] * (n * d) for _ in range(n * d)]
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            if a:
                block = a.multiplication_matrix()
                for r in range(d):
                    for c in range(d):
                        out[i * d + r][j * d + c] = block[r][c]
    return out


def eigen_character(M, vec) -> Tuple[int, CycInt] | None:
    """``(c, mu)`` with ``c M vec = mu vec`` (c a nonzero integer entry of vec), if vec is an eigenvector."""
    img = apply_matrix(M, vec)
    k = next(i for i, x in enumerate(vec) if x)
    c = vec[k].c[0]
    if any(any(x.c[1:]) for x in vec) or c == 0:
        raise ValueError("eigen_character expects an integer polynomial")
    mu = img[k]
    if all((y * c) == (x * mu) for x, y in zip(vec, img)):
        return c, mu
    return None


def common_eigenspace_dimension(rep: ProjRep, characters: Dict[str, Tuple[int, CycInt]]) -> int:
    """``dim {p : c_g M_g p = mu_g p for every generator g}`` over Q(zeta_N)."""
    stacked: List[List[int]] = []
    d = None
    for g, (c, mu) in characters.items():
        M = monomial_action(rep, g)
        n = len(M)
        A = [[M[i][j] * c - (mu if i == j else 0) for j in range(n)] for i in range(n)]
        R = _realify_matrix(A)
        d = A[0][0].degree
        stacked += R
    return (25 * d - linalg.rank(stacked)) // d


def invariant_span_check(rep: ProjRep, basis: Sequence[str], expected_dim: int | None = None) -> Report:
    """Span stability of the printed polynomials under every generator, and the invariant dimension."""
    v = Report(f"{rep.name} invariant span")
    vecs = [poly_vector(parse_polynomial(p), rep.N) for p in basis]
    dim = span_dimension(vecs)
    v.add("basis independent", dim == len(basis), len(basis), dim)
    chars: Dict[str, Tuple[int, CycInt]] = {}
    for g in sorted(rep.generators):
        M = monomial_action(rep, g)
        for p, vec in zip(basis, vecs):
            img = apply_matrix(M, vec)
            v.add(f"{g}.({p}) in span", in_span(img, vecs), "in span", "in span" if in_span(img, vecs) else "escapes")
        ch = eigen_character(M, vecs[0])
        same = ch is not None and all(eigen_character(M, w) is not None and _same_char(eigen_character(M, w), ch) for w in vecs)
        v.add(f"{g} acts by one scalar on the span", same)
        if ch is not None:
            chars[g] = ch
    if expected_dim is not None and len(chars) == len(rep.generators):
        got = common_eigenspace_dimension(rep, chars)
        v.add("invariant space dimension", got == expected_dim, expected_dim, got)
    return v


def _same_char(a: Tuple[int, CycInt], b: Tuple[int, CycInt]) -> bool:
    (c1, m1), (c2, m2) = a, b
    return m1 * c2 == m2 * c1


def invariance_check(rep: ProjRep, generators: Sequence[str], polys: Sequence[str], name: str) -> Report:
    """Every listed polynomial is an eigenvector of every listed generator."""
    v = Report(name)
    vecs = [poly_vector(parse_polynomial(p), rep.N) for p in polys]
    v.add("polynomials independent", span_dimension(vecs) == len(polys), len(polys), span_dimension(vecs))
    for g in generators:
        M = monomial_action(rep, g)
        for p, vec in zip(polys, vecs):
            v.add(f"{g}.({p}) proportional", eigen_character(M, vec) is not None)
    return v


# ---------------------------------------------------------------------------
# fixtures


def d12_rep() -> ProjRep:
    N = 12
    gens = {
        "a": (diag_zeta(N, 1, 11), diag_zeta(N, 2, 10)),
        "b": (swap(N), swap(N)),
    }
    return ProjRep("D12", N, gens, ("a^6", "b^2", "baba"))


def d8c2_rep() -> ProjRep:
    N = 8
    i_pow = lambda k: CycInt.zeta(N, 2 * k)  # sqrt(-1) = zeta_8^2
    gens = {
        "a": (diag_zeta(N, 1, 7), diag_zeta(N, 1, 7)),
        "b": (swap(N), swap(N)),
        "c": (_m(N, [[i_pow(0), 0], [0, i_pow(0)]]), _m(N, [[i_pow(1), 0], [0, i_pow(-1)]])),
    }
    return ProjRep("D8xC2", N, gens, ("a^4", "b^2", "baba", "aca^-1c^-1", "bcb^-1c^-1"))


def c4_rep() -> ProjRep:
    """A cyclic order-4 action compatible with the C4 branching list (chosen fixture)."""
    N = 8
    gens = {"a": (diag_zeta(N, 1, 7), diag_zeta(N, 2, 6))}
    return ProjRep("C4", N, gens, ("a^4",))


D12_BASIS = ("x^4z^4+y^4w^4", "x^4zw^3+y^4z^3w", "x^2y^2z^2w^2")
D8C2_BASIS = ("x^4z^4+y^4w^4", "x^4w^4+y^4z^4", "x^2y^2z^2w^2")
C4_BRANCH = ("x^4z^3w+y^4zw^3", "x^4zw^3+y^4z^3w", "x^2y^2z^4+x^2y^2w^4", "x^2y^2z^2w^2")
C6_BRANCH = ("x^4z^4+y^4w^4", "x^4zw^3+y^4z^3w", "x^2y^2z^2w^2")


def proj_models_suite() -> Report:
    v = Report("proj-models")
    d12, d8 = d12_rep(), d8c2_rep()
    parts = [
        relation_check(d12),
        relation_check(d8),
        invariant_span_check(d12, D12_BASIS, expected_dim=3),
        invariant_span_check(d8, D8C2_BASIS, expected_dim=3),
        invariance_check(d12, ["a"], C6_BRANCH, "C6 branching list"),
        invariance_check(c4_rep(), ["a"], C4_BRANCH, "C4 branching list"),
    ]
    for part in parts:
        v.extend(part, prefix=f"{part.suite}: ")
    return v
