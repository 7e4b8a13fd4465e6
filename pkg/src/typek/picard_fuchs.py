"""Picard-Fuchs operators in Euler derivatives and their Frobenius solutions.

An operator is a finite sum ``z^m P(Theta_1, ..., Theta_v)`` and acts on
series by ``Theta_i z^k = k_i z^k``.  Solutions of the form
``R + sum_j log(z_j) L_j`` are handled with the exact rule
``P(Theta)(f log z_j) = (P f) log z_j + (dP/dTheta_j) f``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .report import Report
from .series import (
    MultiSeries,
    PuiseuxSeries,
    _times_var,
    eta_quotient,
    from_power_series,
    monomials_of_degree,
    revert_map,
    theta,
)

Exps = Tuple[int, ...]
Poly = Dict[Exps, Fraction]


class SolveError(ArithmeticError):
    def __init__(self, kind: str, order: int, monomial: Exps):
        super().__init__(f"{kind} at order {order} (monomial {monomial})")
        self.kind = kind
        self.order = order
        self.monomial = monomial


# ---------------------------------------------------------------------------
# polynomials in Theta


def poly_const(nvars: int, c) -> Poly:
    return {(0,) * nvars: Fraction(c)} if c else {}


def poly_theta(nvars: int, i: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def poly_add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    return {k: v * c for k, v in p.items()} if c else {}


def poly_mul(*ps: Poly) -> Poly:
    out = ps[0]
    for p in ps[1:]:
        acc: Poly = {}
        for a, x in out.items():
            for b, y in p.items():
                k = tuple(i + j for i, j in zip(a, b))
                acc[k] = acc.get(k, 0) + x * y
        out = {k: v for k, v in acc.items() if v}
    return out


def poly_eval(p: Poly, k: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for ki, ei in zip(k, e):
            if ei:
                term *= ki**ei
        total += term
    return total


def poly_diff(p: Poly, j: int) -> Poly:
    out: Poly = {}
    for e, c in p.items():
        if e[j]:
            k = e[:j] + (e[j] - 1,) + e[j + 1:]
            out[k] = out.get(k, 0) + c * e[j]
    return out


# ---------------------------------------------------------------------------
# operators and Frobenius solutions


@dataclass(frozen=True)
class ThetaOperator:
    nvars: int
    terms: Tuple[Tuple[Exps, Tuple[Tuple[Exps, Fraction], ...]], ...]

    @classmethod
    def build(cls, nvars: int, terms: Sequence[Tuple[Sequence[int], Poly]]) -> "ThetaOperator":
        acc: Dict[Exps, Poly] = {}
        for m, p in terms:
            m = tuple(m)
            if len(m) != nvars or any(x < 0 for x in m):
                raise ValueError(f"bad z-exponent {m}")
            acc[m] = poly_add(acc.get(m, {}), p)
        return cls(nvars, tuple((m, tuple(sorted(p.items()))) for m, p in sorted(acc.items()) if p))

    def items(self):
        for m, p in self.terms:
            yield m, dict(p)

    def __add__(self, other: "ThetaOperator") -> "ThetaOperator":
        return ThetaOperator.build(self.nvars, list(self.items()) + list(other.items()))

    def scale(self, c) -> "ThetaOperator":
        return ThetaOperator.build(self.nvars, [(m, poly_scale(p, c)) for m, p in self.items()])


def _apply_poly(p: Poly, f: MultiSeries) -> MultiSeries:
    return MultiSeries(f.nvars, f.T, {k: v * poly_eval(p, k) for k, v in f.c.items()})


def _shift(f: MultiSeries, m: Exps) -> MultiSeries:
    return MultiSeries(f.nvars, f.T, {tuple(a + b for a, b in zip(k, m)): v for k, v in f.c.items()})


@dataclass
class FrobeniusSolution:
    """``regular + sum_j log(z_j) * log_parts[j]``."""

    regular: MultiSeries
    log_parts: Dict[int, MultiSeries] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return self.regular.is_zero() and all(f.is_zero() for f in self.log_parts.values())


def apply(op: ThetaOperator, f: FrobeniusSolution) -> FrobeniusSolution:
    nv, T = f.regular.nvars, f.regular.T
    if op.nvars != nv:
        raise ValueError("operator and series have different variable counts")
    reg = MultiSeries(nv, T)
    logs = {j: MultiSeries(nv, T) for j in f.log_parts}
    for m, p in op.items():
        part = _apply_poly(p, f.regular)
        for j, L in f.log_parts.items():
            part = part + _apply_poly(poly_diff(p, j), L)
            logs[j] = logs[j] + _shift(_apply_poly(p, L), m)
        reg = reg + _shift(part, m)
    return FrobeniusSolution(reg, logs)


def annihilates(ops: Sequence[ThetaOperator], f: FrobeniusSolution) -> bool:
    return all(apply(op, f).is_zero() for op in ops)


# ---------------------------------------------------------------------------
# order-by-order solver


def _solve(ops: Sequence[ThetaOperator], nvars: int, T: int, rhs: Sequence[MultiSeries], c0) -> MultiSeries:
    """Find ``f`` with ``f(0) = c0`` and ``op_o f + rhs_o = 0`` for every operator, to degree ``T``."""
    coeffs: Dict[Exps, Fraction] = {(0,) * nvars: Fraction(c0)}
    op_items = [list(op.items()) for op in ops]
    for e in range(T + 1):
        outs = monomials_of_degree(nvars, e)
        unknowns = [] if e == 0 else outs
        col = {k: i for i, k in enumerate(unknowns)}
        rows, consts, where = [], [], []
        for o, items in enumerate(op_items):
            for n in outs:
                row = [Fraction(0)] * len(unknowns)
                const = rhs[o].coeff(n) if rhs else Fraction(0)
                for m, p in items:
                    src = tuple(a - b for a, b in zip(n, m))
                    if any(x < 0 for x in src):
                        continue
                    val = poly_eval(p, src)
                    if not val:
                        continue
                    if src in col:
                        row[col[src]] += val
                    else:
                        const += val * coeffs.get(src, 0)
                rows.append(row)
                consts.append(-const)
                where.append(n)
        if unknowns:
            R, pivots = linalg.rref([r + [c] for r, c in zip(rows, consts)])
            if len(unknowns) in pivots:
                raise SolveError("inconsistent", e, _first_bad(rows, consts, where))
            free = [k for i, k in enumerate(unknowns) if i not in pivots]
            if free:
                raise SolveError("underdetermined", e, free[0])
            for r, pc in zip(R, pivots):
                coeffs[unknowns[pc]] = r[-1]
        else:
            for c, n in zip(consts, where):
                if c != 0:
                    raise SolveError("inconsistent", e, n)
    return MultiSeries(nvars, T, coeffs)


def _first_bad(rows, consts, where) -> Exps:
    """Output monomial of the first equation that cannot be met (for error messages)."""
    acc: list = []
    for r, c, n in zip(rows, consts, where):
        acc.append(r + [c])
        _, piv = linalg.rref(acc)
        if len(r) in piv:
            return n
    return where[0]  # pragma: no cover


def solve_regular(ops: Sequence[ThetaOperator], T: int) -> MultiSeries:
    """The holomorphic solution normalized to constant term 1."""
    return _solve(ops, ops[0].nvars, T, [], 1)


def solve_log(ops: Sequence[ThetaOperator], phi0: MultiSeries, i: int, T: int) -> FrobeniusSolution:
    """``phi0 log z_i + R`` with ``R(0) = 0``."""
    nv = phi0.nvars
    rhs = []
    for op in ops:
        acc = MultiSeries(nv, T)
        for m, p in op.items():
            acc = acc + _shift(_apply_poly(poly_diff(p, i), phi0.truncate(T)), m)
        rhs.append(acc)
    R = _solve(ops, nv, T, rhs, 0)
    return FrobeniusSolution(R, {i: phi0.truncate(T)})


def mirror_maps(phi0: MultiSeries, logs: Sequence[FrobeniusSolution]):
    """``q_i = z_i exp(R_i / phi0)`` and the inverse ``z_i(q)``."""
    qs = []
    for i, sol in enumerate(logs):
        if set(sol.log_parts) != {i}:
            raise ValueError(f"solution {i} is not logarithmic in z_{i + 1} alone")
        e = (sol.regular / phi0).exp()
        qs.append(_times_var(e.truncate(phi0.T - 1), i, phi0.T))
    return qs, revert_map(qs)


# ---------------------------------------------------------------------------
# verdicts


def first_mismatch(a: MultiSeries, b: MultiSeries) -> Optional[Tuple[Exps, Fraction, Fraction]]:
    T = min(a.T, b.T)
    for d in range(T + 1):
        for k in monomials_of_degree(a.nvars, d):
            if a.coeff(k) != b.coeff(k):
                return k, a.coeff(k), b.coeff(k)
    return None


def compare(v: Report, id: str, got: MultiSeries, expected: MultiSeries) -> bool:
    bad = first_mismatch(got, expected)
    if bad is None:
        return v.add(id, True, f"agree to degree {min(got.T, expected.T)}", "agree")
    k, g, e = bad
    return v.add(id, False, f"{k}: {e}", f"{k}: {g}")


def coefficients_match(v: Report, id: str, f: MultiSeries, table: Dict[Exps, int]) -> bool:
    got = {k: f.coeff(k) for k in table}
    want = {k: Fraction(x) for k, x in table.items()}
    return v.add(id, got == want, _fmt(want), _fmt(got))


def _fmt(d: Dict[Exps, Fraction]) -> str:
    return ", ".join(f"{k}:{v}" for k, v in sorted(d.items()))


# ---------------------------------------------------------------------------
# the two-parameter D12 family


def d12_operators() -> List[ThetaOperator]:
    """``Theta_i^2 - 4 z_i (4 Theta_1 + 4 Theta_2 + 3)(4 Theta_1 + 4 Theta_2 + 1)``."""
    s = poly_add(poly_scale(poly_theta(2, 0), 4), poly_scale(poly_theta(2, 1), 4))
    prod = poly_mul(poly_add(s, poly_const(2, 3)), poly_add(s, poly_const(2, 1)))
    ops = []
    for i in range(2):
        m = [0, 0]
        m[i] = 1
        ops.append(ThetaOperator.build(2, [((0, 0), poly_mul(poly_theta(2, i), poly_theta(2, i))), (m, poly_scale(prod, -4))]))
    return ops


D12_PHI0_PRINTED = {
    (0, 0): 1, (1, 0): 12, (0, 1): 12,
    (2, 0): 420, (1, 1): 1680, (0, 2): 420,
    (3, 0): 18480, (2, 1): 9 * 18480, (1, 2): 9 * 18480, (0, 3): 18480,
}
D12_R1_PRINTED = {(1, 0): 40, (0, 1): 64, (2, 0): 1556, (1, 1): 7904, (0, 2): 2816}
D12_R2_PRINTED = {(1, 0): 64, (0, 1): 40, (2, 0): 2816, (1, 1): 7904, (0, 2): 1556}
# q_1 = z_1 + 8 z_1 (5 z_1 + 8 z_2) + 4 z_1 (469 z_1^2 + 2304 z_1 z_2 + 1024 z_2^2)
D12_Q1_PRINTED = {(1, 0): 1, (2, 0): 40, (1, 1): 64, (3, 0): 1876, (2, 1): 9216, (1, 2): 4096}
D12_Q2_PRINTED = {(k[1], k[0]): v for k, v in D12_Q1_PRINTED.items()}


@dataclass
class D12Periods:
    T: int
    phi0: MultiSeries
    phi1: FrobeniusSolution
    phi2: FrobeniusSolution
    q: List[MultiSeries]
    z_of_q: List[MultiSeries]


def d12_periods(T: int = 8) -> D12Periods:
    ops = d12_operators()
    phi0 = solve_regular(ops, T)
    phi1 = solve_log(ops, phi0, 0, T)
    phi2 = solve_log(ops, phi0, 1, T)
    q, zq = mirror_maps(phi0, [phi1, phi2])
    return D12Periods(T, phi0, phi1, phi2, q, zq)


def _univariate_in(f: PuiseuxSeries, nvars: int, i: int, T: int) -> MultiSeries:
    return f.to_power_series(1, T).embed(nvars, [i])


def theta_building_blocks(T: int) -> Tuple[MultiSeries, MultiSeries]:
    """``A(q) = theta_2^8 / (64 (theta_3^4 + theta_4^4)^2)`` and ``B(q) = theta_3^4 + theta_4^4``."""
    t2, t3, t4 = theta(2, T + 1), theta(3, T + 1), theta(4, T + 1)
    B = t3**4 + t4**4
    A = t2**8 / (B * B).scale(64)
    return A.to_power_series(1, T), B.to_power_series(1, T)


def theta_inverse_maps(T: int) -> Tuple[List[MultiSeries], MultiSeries]:
    """Closed forms of ``z_1(q), z_2(q)`` and ``Phi_0(q)`` in two variables."""
    A, B = theta_building_blocks(T)
    A1, A2 = A.embed(2, [0]), A.embed(2, [1])
    B1, B2 = B.embed(2, [0]), B.embed(2, [1])
    z1 = A1 * (1 - A2.scale(64))
    z2 = A2 * (1 - A1.scale(64))
    phi0 = (B1 * B2).sqrt().scale(Fraction(1, 2))
    return [z1, z2], phi0


def verify_theta_inverse(T: int = 8, periods: Optional[D12Periods] = None) -> Report:
    P = periods or d12_periods(T)
    v = Report("theta-inverse")
    (z1, z2), phi0q = theta_inverse_maps(T)
    compare(v, "z1(q) theta form", P.z_of_q[0], z1)
    compare(v, "z2(q) theta form", P.z_of_q[1], z2)
    compare(v, "Phi0(q) square-root form", P.phi0.compose(P.z_of_q), phi0q)
    return v


def yukawa_matrix(P: D12Periods) -> List[List[MultiSeries]]:
    """``K_ij`` with ``d/dt_i`` realized as ``q_i d/dq_i``; unnormalized.

    With ``q_i d/dq_i z_k = z_k lam_ik`` the poles of the closed-form
    couplings cancel against ``z_k z_l``.
    """
    T = P.T
    z1, z2 = MultiSeries.var(2, T, 0), MultiSeries.var(2, T, 1)
    delta = 1 - (z1 + z2 + (z1 * z2).scale(64)).scale(2**7) + (z1 * z1 + z2 * z2).scale(2**12)
    dinv = delta.inverse()
    # z_k z_l C_kl as honest power series in z
    w11 = (z1 * dinv).scale(Fraction(1, 32))
    w22 = (z2 * dinv).scale(Fraction(1, 32))
    w12 = ((1 - (z1 + z2).scale(64)) * dinv).scale(Fraction(1, 2**12))
    zq = P.z_of_q
    W = [[w.compose(zq) for w in row] for row in ((w11, w12), (w12, w22))]
    lam = [[None, None], [None, None]]
    for k in range(2):
        # v_k = z_k / q_k has constant term 1
        vk = MultiSeries(2, T - 1, {tuple(e - (j == k) for j, e in enumerate(key)): c for key, c in zq[k].c.items()})
        lv = vk.log()
        for i in range(2):
            lam[i][k] = lv.euler(i) + (1 if i == k else 0)
    phi0 = P.phi0.truncate(T - 1).compose([z.truncate(T - 1) for z in zq])
    norm = (phi0 * phi0).inverse()
    K = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            acc = MultiSeries(2, T - 1)
            for k in range(2):
                for l in range(2):
                    acc = acc + W[k][l].truncate(T - 1) * lam[i][k] * lam[j][l]
            K[i][j] = acc * norm
    return K


def yukawa_check(T: int = 8, periods: Optional[D12Periods] = None) -> Report:
    P = periods or d12_periods(T)
    v = Report("yukawa")
    K = yukawa_matrix(P)
    v.add("K11 vanishes", K[0][0].is_zero(), "0", _head(K[0][0]))
    v.add("K22 vanishes", K[1][1].is_zero(), "0", _head(K[1][1]))
    c = K[0][1].constant
    const = K[0][1] == MultiSeries.const(2, K[0][1].T, c)
    v.add("K12 constant", const and c != 0, "nonzero constant", _head(K[0][1]))
    if c:
        n = [[K[i][j].scale(1 / c) for j in range(2)] for i in range(2)]
        gram = [[n[i][j].constant for j in range(2)] for i in range(2)]
        v.add("normalized Gram", gram == [[0, 1], [1, 0]], "[[0, 1], [1, 0]]", str([[str(x) for x in r] for r in gram]))
        v.data["normalization"] = c
    v.data["K"] = K
    return v


def _head(f: MultiSeries, n: int = 3) -> str:
    items = sorted(f.c.items(), key=lambda kv: (sum(kv[0]), kv[0]))[:n]
    return ", ".join(f"{k}:{c}" for k, c in items) or "0"


def d12_suite(T: int = 8) -> Report:
    v = Report("pf-d12")
    P = d12_periods(T)
    ops = d12_operators()
    coefficients_match(v, "Phi0 printed terms", P.phi0, D12_PHI0_PRINTED)
    coefficients_match(v, "Phi1 printed terms", P.phi1.regular, D12_R1_PRINTED)
    coefficients_match(v, "Phi2 printed terms", P.phi2.regular, D12_R2_PRINTED)
    v.add("Phi1 and Phi2 swap-symmetric", P.phi1.regular.permute([1, 0]) == P.phi2.regular)
    v.add("operators annihilate Phi0, Phi1, Phi2",
          all(annihilates(ops, f) for f in (FrobeniusSolution(P.phi0), P.phi1, P.phi2)))
    coefficients_match(v, "q1 printed terms", P.q[0], D12_Q1_PRINTED)
    coefficients_match(v, "q2 printed terms", P.q[1], D12_Q2_PRINTED)
    round_trip = [q.compose(P.z_of_q) for q in P.q]
    v.add("mirror map round trip", all(r == MultiSeries.var(2, T, i) for i, r in enumerate(round_trip)))
    for c in verify_theta_inverse(T, P).checks + yukawa_check(T, P).checks:
        v.checks.append(c)
    v.data["periods"] = P
    return v


# ---------------------------------------------------------------------------
# the three-parameter D8 family


def d8_operator(a: Sequence) -> ThetaOperator:
    a1, a2, a3, a4, a5, a6 = [Fraction(x) for x in a]
    th = [poly_theta(3, i) for i in range(3)]
    sq = [poly_mul(t, t) for t in th]
    Z = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    O = (0, 0, 0)
    terms = [
        (O, poly_scale(sq[0], a1)), (Z[0], poly_scale(sq[0], -64 * a1)),
        (Z[1], poly_scale(sq[0], 4 * (-16 * a1 - 16 * a2 + 3 * a5))), (Z[2], poly_scale(sq[0], -12 * a4)),
        (O, poly_scale(sq[1], a2)), (Z[0], poly_scale(sq[1], -12 * a5)),
        (Z[1], poly_scale(sq[1], -64 * a2)), (Z[2], poly_scale(sq[1], 4 * (-16 * a2 - 16 * a3 + 3 * a6))),
        (O, poly_scale(sq[2], a3)), (Z[0], poly_scale(sq[2], 4 * (-16 * a1 - 16 * a3 + 3 * a4))),
        (Z[1], poly_scale(sq[2], -12 * a6)), (Z[2], poly_scale(sq[2], -64 * a3)),
    ]
    mixed = poly_add(poly_mul(th[0], th[1]), poly_mul(th[1], th[2]), poly_mul(th[2], th[0]))
    lin = poly_add(*th)
    for z, ai in zip(Z, (a1, a2, a3)):
        terms += [
            (z, poly_scale(mixed, -128 * ai)),
            (z, poly_scale(lin, -64 * ai)),
            (z, poly_const(3, -12 * ai)),
        ]
    return ThetaOperator.build(3, terms)


def d8_basis_operators() -> List[ThetaOperator]:
    return [d8_operator([int(i == j) for j in range(6)]) for i in range(6)]


D8_PHI0_PRINTED = {
    (0, 0, 0): 1,
    (1, 0, 0): 12, (0, 1, 0): 12, (0, 0, 1): 12,
    (2, 0, 0): 420, (0, 2, 0): 420, (0, 0, 2): 420,
    (1, 1, 0): 1680, (0, 1, 1): 1680, (1, 0, 1): 1680,
}


def d8_suite(T: int = 6, samples: int = 20, seed: int = 0) -> Report:
    from itertools import permutations

    v = Report("pf-d8")
    ops = d8_basis_operators()
    try:
        phi0 = solve_regular(ops, T)
    except SolveError as exc:
        v.add("joint solve", False, "unique solution", str(exc))
        return v
    v.add("joint solve", True, "unique solution", f"solved to degree {T}")
    coefficients_match(v, "Phi0 printed terms", phi0, D8_PHI0_PRINTED)
    v.add("S3 symmetry", all(phi0.permute(p) == phi0 for p in permutations(range(3))))
    rng = random.Random(seed)
    f = FrobeniusSolution(phi0)
    ok = True
    for _ in range(samples):
        a = [Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(6)]
        ok &= apply(d8_operator(a), f).is_zero()
    v.add(f"annihilated by {samples} random D_a", ok)
    v.data["phi0"] = phi0
    return v


# ---------------------------------------------------------------------------
# the elliptic family over X_1(6)


def elliptic_operator() -> ThetaOperator:
    """``(8z - 1)(z + 1) Theta^2 + z (16 z + 7) Theta + 2 z (4 z + 1)``."""
    th = poly_theta(1, 0)
    sq = poly_mul(th, th)
    return ThetaOperator.build(1, [
        ((0,), poly_scale(sq, -1)),
        ((1,), poly_add(poly_scale(sq, 7), poly_scale(th, 7), poly_const(1, 2))),
        ((2,), poly_add(poly_scale(sq, 8), poly_scale(th, 16), poly_const(1, 8))),
    ])


def franel(n: int) -> int:
    return sum(comb(n, k) ** 3 for k in range(n + 1))


FRANEL_PRINTED = [1, 2, 10, 56, 346, 2252, 15184]
Z_OF_Q_PRINTED = [1, -3, 3, 5, -18, 15]  # times q^(1/6), in steps of q^(1/6)
# the display skips q^(5/6), so its coefficient is 0
PHI0_ELL_PRINTED = {Fraction(k, 6): c for k, c in enumerate([1, 2, 4, 2, 2, 0, 4])}

STEP = Fraction(1, 6)
Z_ETA = {1: 9, Fraction(1, 6): 3, Fraction(1, 2): -9, Fraction(1, 3): -3}
PHI0_ETA = {Fraction(1, 2): 6, Fraction(1, 3): 1, 1: -3, Fraction(1, 6): -2}


def hexagonal_theta_sum(prec: Fraction) -> PuiseuxSeries:
    """``(1/3) sum_{(n, m)} (q^(Q/6) + 2 q^(Q/3))`` with ``Q = n^2 + nm + m^2``."""
    from math import isqrt

    bound = int(prec * 6)
    r = isqrt(2 * bound) + 2
    terms: Dict[Fraction, Fraction] = {}
    for n in range(-r, r + 1):
        for m in range(-r, r + 1):
            Q = n * n + n * m + m * m
            for e, w in ((Fraction(Q, 6), Fraction(1, 3)), (Fraction(Q, 3), Fraction(2, 3))):
                if e < prec:
                    terms[e] = terms.get(e, 0) + w
    return PuiseuxSeries.from_exponents(terms, prec)


def elliptic_suite(T: int = 20) -> Report:
    """Checks through ``T`` steps of ``q^(1/6)`` (and ``z^T`` for the Franel row)."""
    v = Report("pf-elliptic")
    op = elliptic_operator()
    phi0 = solve_regular([op], T)
    want = [franel(n) for n in range(T + 1)]
    got = [phi0.coeff((n,)) for n in range(T + 1)]
    v.add("Franel numbers", got == want, want, [str(x) for x in got])
    k = min(len(FRANEL_PRINTED), T + 1)
    v.add("printed Franel terms", got[:k] == FRANEL_PRINTED[:k], FRANEL_PRINTED[:k], [str(x) for x in got[:k]])
    v.add("operator annihilates Phi0", apply(op, FrobeniusSolution(phi0)).is_zero())

    prec = (T + 1) * STEP
    zq = eta_quotient(Z_ETA, prec + STEP)  # leading q^(1/6): T + 1 known steps after it
    pq = eta_quotient(PHI0_ETA, prec)
    zs = [zq.coeff(STEP * (i + 1)) for i in range(len(Z_OF_Q_PRINTED)) if STEP * (i + 1) < zq.prec]
    v.add("z(q) printed terms", zs == Z_OF_Q_PRINTED[:len(zs)], Z_OF_Q_PRINTED[:len(zs)], [str(x) for x in zs])
    ps = {e: pq.coeff(e) for e in PHI0_ELL_PRINTED if e < pq.prec}
    want_ps = {e: c for e, c in PHI0_ELL_PRINTED.items() if e in ps}
    v.add("Phi0(q) printed terms", ps == want_ps, _fmt_q(want_ps), _fmt_q(ps))

    z_s = zq.to_power_series(STEP, T)  # z as a series in s = q^(1/6)
    composed = from_power_series(phi0.compose([z_s]), STEP)
    ok = composed == pq and composed.prec >= prec
    v.add("Phi0(z(q)) equals eta quotient", ok, f"agree below q^{prec}", _puiseux_diff(composed, pq))
    lattice = hexagonal_theta_sum(prec)
    v.add("hexagonal lattice sum equals eta quotient", lattice == pq, f"agree below q^{prec}", _puiseux_diff(lattice, pq))
    v.data.update(phi0=phi0, z_of_q=zq, phi0_of_q=pq)
    return v


def _fmt_q(d) -> str:
    return ", ".join(f"q^{e}:{c}" for e, c in sorted(d.items()))


def _puiseux_diff(a: PuiseuxSeries, b: PuiseuxSeries) -> str:
    p = min(a.prec, b.prec)
    ta, tb = a.truncated(p).terms(), b.truncated(p).terms()
    for e in sorted(set(ta) | set(tb)):
        if ta.get(e, 0) != tb.get(e, 0):
            return f"q^{e}: {ta.get(e, 0)} vs {tb.get(e, 0)}"
    return "agree"


# ---------------------------------------------------------------------------
# canonical text dumps for golden-file comparison


def _section(title: str, body: str) -> str:
    return f"[{title}]\n{body.rstrip()}\n"


def golden_dump(family: str, T: Optional[int] = None) -> str:
    """Periods, mirror maps and couplings of one family as canonical text."""
    names = ["z1", "z2", "z3"]
    if family == "d12":
        P = d12_periods(T or 8)
        K = yukawa_check(P.T, P).data["K"]
        parts = [("Phi0", P.phi0), ("Phi1 regular part", P.phi1.regular), ("Phi2 regular part", P.phi2.regular)]
        parts += [(f"q{i + 1}", q) for i, q in enumerate(P.q)]
        parts += [(f"z{i + 1}(q)", z) for i, z in enumerate(P.z_of_q)]
        parts += [(f"K{i + 1}{j + 1}", K[i][j]) for i in range(2) for j in range(2)]
        return "".join(_section(t, f.to_text(names[:2])) for t, f in parts)
    if family == "d8":
        phi0 = d8_suite(T or 6).data["phi0"]
        return _section("Phi0", phi0.to_text(names))
    if family == "elliptic":
        data = elliptic_suite(20 if T is None else T).data
        return (_section("Phi0", data["phi0"].to_text(["z"]))
                + _section("z(q)", data["z_of_q"].to_text())
                + _section("Phi0(q)", data["phi0_of_q"].to_text()))
    raise ValueError(f"unknown family {family!r}")
