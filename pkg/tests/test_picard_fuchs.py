import os
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from pathlib import Path

import pytest

from typek.picard_fuchs import (
    D12_PHI0_PRINTED,
    D12_Q1_PRINTED,
    D12_R1_PRINTED,
    FrobeniusSolution,
    SolveError,
    ThetaOperator,
    annihilates,
    apply,
    d8_basis_operators,
    d12_operators,
    d12_periods,
    elliptic_operator,
    elliptic_suite,
    franel,
    golden_dump,
    mirror_maps,
    poly_const,
    poly_mul,
    poly_theta,
    solve_log,
    solve_regular,
    yukawa_check,
)
from typek.series import MultiSeries

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def d12():
    return d12_periods(8)


def central(N):
    return Fraction(factorial(4 * N), factorial(2 * N) * factorial(N) ** 2)


def test_theta_operator_action():
    th = poly_theta(2, 0)
    op = ThetaOperator.build(2, [((0, 0), poly_mul(th, th)), ((0, 1), poly_const(2, 3))])
    f = MultiSeries(2, 4, {(2, 1): 1})
    out = apply(op, FrobeniusSolution(f))
    assert out.regular == MultiSeries(2, 4, {(2, 1): 4, (2, 2): 3})
    with pytest.raises(ValueError):
        ThetaOperator.build(2, [((-1, 0), th)])


def test_log_rule():
    # Theta^2 (log z) = 0 and Theta (z log z) = z log z + z
    th = poly_theta(1, 0)
    one = MultiSeries.const(1, 3)
    sq = ThetaOperator.build(1, [((0,), poly_mul(th, th))])
    assert apply(sq, FrobeniusSolution(MultiSeries(1, 3), {0: one})).is_zero()
    z = MultiSeries.var(1, 3, 0)
    out = apply(ThetaOperator.build(1, [((0,), th)]), FrobeniusSolution(MultiSeries(1, 3), {0: z}))
    assert out.regular == z and out.log_parts[0] == z


def test_d12_phi0_closed_form(d12):
    # coefficient of z1^m z2^n is C(m+n, m)^2 (4N)! / ((2N)! N!^2), N = m + n
    want = MultiSeries.from_function(2, 8, lambda k: comb(sum(k), k[0]) ** 2 * central(sum(k)))
    assert d12.phi0 == want


def test_d12_printed_values(d12):
    assert all(d12.phi0.coeff(k) == v for k, v in D12_PHI0_PRINTED.items())
    assert all(d12.phi1.regular.coeff(k) == v for k, v in D12_R1_PRINTED.items())
    assert all(d12.q[0].coeff(k) == v for k, v in D12_Q1_PRINTED.items())
    assert d12.phi1.regular.permute([1, 0]) == d12.phi2.regular


def test_d12_annihilation_and_round_trip(d12):
    ops = d12_operators()
    assert all(annihilates(ops, f) for f in (FrobeniusSolution(d12.phi0), d12.phi1, d12.phi2))
    for i, q in enumerate(d12.q):
        assert q.compose(d12.z_of_q) == MultiSeries.var(2, 8, i)


def test_d12_yukawa(d12):
    rep = yukawa_check(8, d12)
    assert rep.ok
    assert rep.data["normalization"] == Fraction(1, 4096)


def test_mirror_map_rejects_wrong_log_part(d12):
    with pytest.raises(ValueError):
        mirror_maps(d12.phi0, [d12.phi2, d12.phi1])


def test_solver_errors():
    th = poly_theta(1, 0)
    # the identity operator forces f = 0, contradicting f(0) = 1
    bad = ThetaOperator.build(1, [((0,), poly_const(1, 1))])
    with pytest.raises(SolveError) as exc:
        solve_regular([bad], 3)
    assert exc.value.kind == "inconsistent" and exc.value.order == 0
    # Theta (Theta - 1) kills 1 and z, leaving the z-coefficient free
    free = ThetaOperator.build(1, [((0,), poly_mul(th, {**th, **poly_const(1, -1)}))])
    with pytest.raises(SolveError) as exc:
        solve_regular([free], 3)
    assert exc.value.kind == "underdetermined" and exc.value.order == 1


def test_d8_multinomial_closed_form():
    T = 6
    phi0 = solve_regular(d8_basis_operators(), T)

    def coeff(k):
        N = sum(k)
        multinomial = factorial(N) // (factorial(k[0]) * factorial(k[1]) * factorial(k[2]))
        return multinomial**2 * central(N)

    assert phi0 == MultiSeries.from_function(3, T, coeff)
    assert all(phi0.permute(p) == phi0 for p in permutations(range(3)))


def test_elliptic_franel():
    phi0 = solve_regular([elliptic_operator()], 12)
    assert [phi0.coeff((n,)) for n in range(13)] == [franel(n) for n in range(13)]
    assert [franel(n) for n in range(7)] == [1, 2, 10, 56, 346, 2252, 15184]


def test_elliptic_suite_small_truncation():
    assert elliptic_suite(6).ok


def test_log_solution_of_elliptic_family():
    op = elliptic_operator()
    phi0 = solve_regular([op], 8)
    assert annihilates([op], solve_log([op], phi0, 0, 8))


@pytest.mark.parametrize("family", ["d12", "d8", "elliptic"])
def test_golden_dumps(family):
    path = GOLDEN / f"{family}.txt"
    text = golden_dump(family)
    if os.environ.get("TYPEK_REGEN_GOLDEN") or not path.exists():
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")
