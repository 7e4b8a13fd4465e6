from fractions import Fraction

import pytest

from typek import linalg
from typek.action import (
    EigenvalueMultiset,
    LatticeAction,
    VerificationFailure,
    action_from_json,
    anti_invariant_torsion,
    coinv_det,
    coinvariant_lattice,
    enriques_model,
    glue_exponent,
    invariant_lattice,
    parse_eigenvalues,
    phi_at_one_direct,
    _phi_at_one,
)
from typek.discform import fingerprint, fingerprints_equal
from typek.lattice import disc, is_even, parse_lattice, signature


def neg(n):
    return [[-int(i == j) for j in range(n)] for i in range(n)]


def test_trivial_and_negation_actions():
    L = parse_lattice("U+<2>")
    triv = LatticeAction(L, (linalg.identity(3),))
    inv, _ = invariant_lattice(triv)
    assert inv.rank == 3 and coinvariant_lattice(triv)[0].rank == 0
    act = LatticeAction(L, (neg(3),))
    assert invariant_lattice(act)[0].rank == 0 and coinvariant_lattice(act)[0].rank == 3


def test_gram_not_preserved_rejected():
    with pytest.raises(ValueError):
        LatticeAction(parse_lattice("U(2)"), ([[1, 1], [0, 1]],))


def test_group_closure_and_json():
    act = enriques_model()
    assert act.order == 2
    again = action_from_json(act.to_json())
    assert again.generators == act.generators and again.lattice == act.lattice


def test_enriques_model():
    act = enriques_model()
    iota = act.generators[0]
    assert linalg.matmul(iota, iota) == linalg.identity(22)
    inv, inv_basis = invariant_lattice(act)
    coinv, coinv_basis = coinvariant_lattice(act)
    assert (inv.rank, abs(disc(inv)), signature(inv), is_even(inv)) == (10, 2**10, (1, 9), True)
    assert (coinv.rank, abs(disc(coinv)), signature(coinv), is_even(coinv)) == (12, 2**10, (2, 10), True)
    assert fingerprint(inv) == fingerprint(parse_lattice("U(2)+E8(-2)"))
    assert fingerprints_equal(coinv, parse_lattice("U+U(2)+E8(-2)"))
    G = act.lattice.gram
    assert all(linalg.bilinear(G, x, y) == 0 for x in inv_basis for y in coinv_basis)


def test_glue_exponent():
    act = enriques_model()
    assert glue_exponent(act.lattice, act.generators[0]) == 10
    L = parse_lattice("U(2)+<-4>")
    assert glue_exponent(L, neg(3)) == 0
    # swapping the two copies of U in U + U: invariant {x + sx}, anti-invariant {x - sx}
    UU = parse_lattice("U+U")
    swap = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert glue_exponent(UU, swap) == 2


def glue_relation_holds(L, iota):
    act = LatticeAction(L, (iota,))
    a = glue_exponent(L, iota)
    inv, _ = invariant_lattice(act)
    coinv, _ = coinvariant_lattice(act)
    d_inv = abs(disc(inv)) if inv.rank else 1
    d_co = abs(disc(coinv)) if coinv.rank else 1
    return Fraction(d_inv * d_co, abs(disc(L))) == 2 ** (2 * a)


def involution_pool():
    UU = parse_lattice("U+U")
    swap = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    U = parse_lattice("U")
    flip = [[0, 1], [1, 0]]  # e <-> f
    act = enriques_model()
    return [(UU, swap), (U, flip), (U, neg(2)), (act.lattice, act.generators[0])]


@pytest.mark.parametrize("L,iota", involution_pool())
def test_glue_relation_and_torsion_law(L, iota):
    assert glue_relation_holds(L, iota)
    tors = anti_invariant_torsion(L, iota)
    act = LatticeAction(L, (iota,))
    assert len(tors) == coinvariant_lattice(act)[0].rank - glue_exponent(L, iota)


def test_anti_invariant_torsion():
    act = enriques_model()
    assert anti_invariant_torsion(act.lattice, act.generators[0]) == (2, 2)
    assert anti_invariant_torsion(parse_lattice("U"), neg(2)) == (2, 2)
    with pytest.raises(ValueError):
        anti_invariant_torsion(parse_lattice("U"), linalg.identity(2))


def test_parse_eigenvalues():
    ev = parse_eigenvalues("(−1)^4 (ζ3)^4 (ζ3^2)^4 (−ζ3)^2 (−ζ3^2)^2")
    assert ev.total == 16
    assert dict(ev.entries)[Fraction(1, 2)] == 4
    assert dict(ev.entries)[Fraction(5, 6)] == 2  # -zeta_3 = zeta_6^5
    with pytest.raises(ValueError):
        parse_eigenvalues("(z3)^2 garbage")


def test_coinv_det_rows():
    assert coinv_det(parse_eigenvalues("(-1)^8")) == 2**8
    assert coinv_det(parse_eigenvalues("(z3)^6 (z3^2)^6")) == 3**6
    assert coinv_det(parse_eigenvalues("(-1)^6 (z4)^4 (-z4)^4")) == 2**10
    assert coinv_det(parse_eigenvalues("(z5)^4 (z5^2)^4 (z5^3)^4 (z5^4)^4")) == 5**4
    assert coinv_det(parse_eigenvalues("(-1)^4 (z3)^4 (z3^2)^4 (-z3)^2 (-z3^2)^2")) == 2**4 * 3**4


def test_coinv_det_errors():
    with pytest.raises(ValueError):
        coinv_det(EigenvalueMultiset(((Fraction(0), 2),)))
    with pytest.raises(ValueError):
        coinv_det(parse_eigenvalues("(z3)^2"))


@pytest.mark.parametrize("d", range(2, 40))
def test_phi_at_one_matches_cyclotomic_polynomial(d):
    assert _phi_at_one(d) == phi_at_one_direct(d)


def test_verification_failure_is_assertion():
    assert issubclass(VerificationFailure, AssertionError)
