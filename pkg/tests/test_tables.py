from fractions import Fraction

import pytest

from typek.lattice import direct_sum, disc, parse_lattice
from typek.tables import (
    GROUP_TAGS,
    GaussQ,
    brauer_m,
    c2_coeff,
    coinvariant_table,
    elliptic_mirror,
    mu_typeL,
    mu_X_eval,
    normalize_tag,
    parse_power_product,
    record,
    records,
    symplectic_invariant,
    table_lattice_checks,
    tube_domain_period,
    typeL_integral,
    verify_duality,
)

EXPECTED_ANM = {
    "C2": (10, 2, 1), "C2xC2": (5, 3, 2), "C2xC2xC2": (2, 4, 3), "D6": (4, 2, 1),
    "D8": (2, 3, 2), "D10": (2, 2, 1), "D12": (1, 3, 2), "C2xD8": (0, 4, 3),
}


def test_records_load_and_self_verify():
    assert tuple(r.tag for r in records()) == GROUP_TAGS


def test_record_examples():
    r = record("D12")
    assert r.M == parse_lattice("U(2)") and r.N == parse_lattice("U(6)+U(6)")
    assert record("C2").N == parse_lattice("U+U(2)+E8(-2)")
    assert record("D8").M == parse_lattice("U(2)+<-4>")
    assert record("D8").N == parse_lattice("U(4)+U(4)+<-4>")
    assert record("C₂×D₈").tag == "C2xD8"
    with pytest.raises(KeyError):
        record("C7")


def test_normalize_tag():
    assert normalize_tag("C₂ × C₂") == "C2xC2"


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_brauer_rows(tag):
    row = brauer_m(tag)
    assert (row.a, row.n, row.m) == EXPECTED_ANM[tag]
    assert row.m == record(tag).expected_m


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_duality(tag):
    assert verify_duality(tag).equivalent


def test_c2_duality_holds_over_z():
    r = record("C2")
    assert direct_sum(parse_lattice("U"), r.M).gram == r.N.gram


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_table_consistency(tag):
    assert all(table_lattice_checks(record(tag)).values())


def test_m_plus_two():
    # H_1 of the threefold has 2-rank m + 2
    assert [brauer_m(t).m + 2 for t in GROUP_TAGS] == [3, 4, 5, 3, 4, 3, 4, 5]


def test_coinvariant_table():
    dets = {H: det for H, _, det in coinvariant_table()}
    assert dets == {"C2": 2**8, "C3": 3**6, "C4": 2**10, "C5": 5**4, "C6": 2**4 * 3**4}


def test_symplectic_invariant_ranks():
    # rank of the invariant lattice is 24 - rank of the coinvariant lattice (= total multiplicity)
    for H, ev, _ in coinvariant_table():
        assert symplectic_invariant(H).rank == 22 - ev.total


def test_parse_power_product():
    assert parse_power_product("2^4*3^5") == 3888
    assert parse_power_product("2^4·3^4") == 1296


def test_trilinear_form():
    mu = mu_typeL(parse_lattice("U(2)"))
    x, y, z = (1, 0, 2), (0, 1, -1), (3, 1, 1)
    vals = {mu(*p) for p in [(x, y, z), (y, x, z), (z, y, x), (x, z, y)]}
    assert len(vals) == 1
    assert mu.evaluate((1, 0), (0, 1), 0) == 0
    assert mu_X_eval("D12", (1, 0), (0, 1), 1) == 1
    assert all(typeL_integral(t) for t in GROUP_TAGS)


def test_c2_coeff():
    assert c2_coeff("C2") == 12 and c2_coeff("D12") == 2 and c2_coeff("C2xD8") == Fraction(3, 2)


def test_tube_domain_period():
    w = tube_domain_period("D12", [0, 0], [1, Fraction(1, 2)])
    assert w.square() == GaussQ(0) and w.hermitian_norm() == GaussQ(4)
    w = tube_domain_period("C2xC2", [1, 0, 1, 0, 0, 0], [2, 1, 0, 0, 0, 0])
    assert w.square() == GaussQ(0)
    with pytest.raises(ValueError):
        tube_domain_period("D12", [0, 0], [0, 0])


def test_elliptic_mirror():
    assert elliptic_mirror(0, 1) == GaussQ(0, 1)
    tau = elliptic_mirror(Fraction(1, 2), 3)
    assert (tau.re, tau.im) == (Fraction(1, 2), 3)
    with pytest.raises(ValueError):
        elliptic_mirror(0, 0)
