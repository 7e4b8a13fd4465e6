from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typek.discform import (
    GuardExceeded,
    NotIsotropic,
    discriminant_group,
    fingerprint,
    fingerprints_equal,
    overlattice,
    q_value,
)
from typek.lattice import Lattice, diagonal, direct_sum, disc, is_even, parse_lattice, signature


def test_discriminant_group_examples():
    D = discriminant_group(parse_lattice("U(2)"))
    assert D.orders == (2, 2)
    assert discriminant_group(parse_lattice("U")).orders == ()
    D = discriminant_group(diagonal(-4))
    assert D.orders == (4,) and q_value(D, (1,)) == Fraction(7, 4)


def test_q_values_on_u2():
    D = discriminant_group(parse_lattice("U(2)"))
    values = sorted(q_value(D, el) for el in D.elements())
    assert values == [0, 0, 0, 1]
    assert q_value(D, (0, 0)) == 0


def test_element_of_inverts_vector():
    L = parse_lattice("U(2)+<-4>+A2(-2)")
    D = discriminant_group(L)
    for el in D.elements():
        assert D.element_of(D.vector(el)) == tuple(el)


def test_rejects_odd_or_degenerate():
    with pytest.raises(ValueError):
        discriminant_group(diagonal(3))
    with pytest.raises(ValueError):
        discriminant_group(Lattice([[0, 0], [0, 2]]))


def test_guards():
    with pytest.raises(GuardExceeded):
        fingerprint(parse_lattice("U(2)+E8(-2)+<-4>+<-4>+<-4>"))


def test_fingerprints():
    assert fingerprints_equal(parse_lattice("U(2)+E8(-2)"), parse_lattice("U+U(2)+E8(-2)"), negate=True)
    L = parse_lattice("U(2)+<-4>")
    assert fingerprints_equal(L, L)
    assert not fingerprints_equal(parse_lattice("U"), parse_lattice("<2>+<-2>"))
    # same group, different forms: U(2) is hyperbolic, D4 carries the anisotropic form
    assert not fingerprints_equal(parse_lattice("U(2)"), parse_lattice("D4"))


def test_overlattice_examples():
    L = parse_lattice("<2>+<-2>")
    M, basis = overlattice(L, [(1, 1)])
    assert abs(disc(M)) == 1 and is_even(M) and signature(M) == (1, 1)
    M, _ = overlattice(L, [])
    assert M.matrix() == L.matrix()
    with pytest.raises(NotIsotropic) as exc:
        overlattice(parse_lattice("U(2)"), [(1, 1)])
    assert exc.value.value == 1


def test_overlattice_enriques_pair_to_unimodular():
    # U(2) has isotropic e/2; gluing it back gives U
    M, _ = overlattice(parse_lattice("U(2)"), [(1, 0)])
    assert abs(disc(M)) == 1 and is_even(M)


@given(st.lists(st.integers(2, 8), min_size=1, max_size=2), st.data())
@settings(max_examples=60, deadline=None)
def test_overlattice_order_law(scales, data):
    L = parse_lattice(" + ".join(f"U({k})" for k in scales))
    D = discriminant_group(L)
    # an element supported on the e-coordinates of each U(k) is isotropic
    coeffs = [data.draw(st.integers(0, k - 1)) for k in scales]
    vec = [Fraction(0)] * L.rank
    for i, (c, k) in enumerate(zip(coeffs, scales)):
        vec[2 * i] = Fraction(c, k)
    el = D.element_of(vec)
    order = D.element_order(el)
    M, _ = overlattice(L, [el])
    assert abs(disc(M)) * order**2 == abs(disc(L))
    assert is_even(M)
