import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typek.lattice import Lattice, diagonal, parse_lattice
from typek.qspace import REAL, bad_primes, hasse_invariant, hilbert_symbol, invariants, q_equivalent

nonzero = st.integers(-60, 60).filter(lambda x: x != 0)


def brute_hilbert_3(a: int, b: int) -> int:
    """(a, b)_3 from primitive solutions of a x^2 + b y^2 = z^2 modulo 27 (squarefree a, b)."""
    mod = 27
    roots = {}
    for z in range(mod):
        roots.setdefault(z * z % mod, set()).add(z % 3)
    for x in range(mod):
        for y in range(mod):
            r = (a * x * x + b * y * y) % mod
            for z3 in roots.get(r, ()):
                if x % 3 or y % 3 or z3:
                    return 1
    return -1


def test_examples():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert all(hilbert_symbol(1, b, p) == 1 for b in (2, -3, 7) for p in (2, 3, 5, 7))
    assert hasse_invariant([1, 1, 1], 5) == 1
    assert all(hasse_invariant([2, -2], p) == 1 for p in (2, 3, 5))
    assert hasse_invariant([-1, -1], 2) == -1


def test_odd_prime_against_brute_force():
    squarefree = [a for a in range(-15, 16) if a and all(a % (p * p) for p in (2, 3))]
    for a in squarefree[::3]:
        for b in squarefree[::4]:
            assert hilbert_symbol(a, b, 3) == brute_hilbert_3(a, b), (a, b)


def test_rational_arguments_use_square_class():
    assert hilbert_symbol(Fraction(1, 2), 3, 3) == hilbert_symbol(2, 3, 3)
    assert hilbert_symbol(Fraction(-1, 4), -1, 2) == hilbert_symbol(-1, -1, 2)


@given(nonzero, nonzero)
@settings(max_examples=200, deadline=None)
def test_reciprocity(a, b):
    places = sorted(bad_primes([a, b])) + [REAL]
    prod = 1
    for p in places:
        prod *= hilbert_symbol(a, b, p)
    assert prod == 1


@given(nonzero, nonzero, nonzero, st.sampled_from([2, 3, 5, 7, REAL]))
@settings(max_examples=150, deadline=None)
def test_symmetric_and_bimultiplicative(a, b, c, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a * c, b, p) == hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p)
    assert hilbert_symbol(a, -a, p) == 1


def test_q_equivalent_examples():
    assert q_equivalent(parse_lattice("U+U(2)"), parse_lattice("U(6)+U(6)")).equivalent
    L = parse_lattice("U(2)+<-4>")
    assert q_equivalent(L, L).equivalent
    res = q_equivalent(parse_lattice("U"), diagonal(1, 1))
    assert not res.equivalent and res.reason == "signature differs"
    res = q_equivalent(diagonal(1, 1), diagonal(1, 3))
    assert not res.equivalent and "square class" in res.reason
    # 2 = 1 + 1, so <1,1> and <2,2> are isometric over Q; 3 is not a sum of two rational squares
    assert q_equivalent(diagonal(1, 1), diagonal(2, 2)).equivalent
    res = q_equivalent(diagonal(1, 1, -1, -1), diagonal(3, 3, -1, -1))
    assert not res.equivalent and res.reason == "Hasse invariant differs at p = 2"
    res = q_equivalent(diagonal(1, 1, 1), diagonal(3, 3, 1))
    assert not res.equivalent and "Hasse" in res.reason


def test_degenerate_rejected():
    with pytest.raises(ValueError):
        q_equivalent(Lattice([[0, 0], [0, 1]]), diagonal(1, 1))


def test_equivalence_relation_on_pool():
    pool = [parse_lattice(e) for e in ("U", "U(2)", "U(3)", "<1>+<-1>", "<2>+<-2>", "<3>+<-3>", "<1>+<-2>", "<2>+<-1>")]
    rel = [[q_equivalent(a, b).equivalent for b in pool] for a in pool]
    n = len(pool)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


def test_invariants_json():
    inv = invariants(parse_lattice("U(2)+<-4>"))
    j = inv.to_json()
    assert j["rank"] == 3 and j["signature"] == [1, 2] and "2" in j["hasse"]
