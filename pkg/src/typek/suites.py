"""Named verification suites, each returning a ``Report``."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional

from .action import (
    anti_invariant_torsion,
    coinv_det,
    coinvariant_lattice,
    enriques_model,
    glue_exponent,
    invariant_lattice,
)
from .discform import fingerprints_equal
from .lattice import direct_sum, disc, is_even, parse_lattice, signature
from .report import Report, merge
from .tables import brauer_m, coinvariant_table, records, table_lattice_checks, verify_duality

DEFAULT_TRUNC = {"pf-d12": 8, "pf-d8": 6, "pf-elliptic": 20}

ANCHORS = {
    "brauer": "Brauer group (Z/2)^m from discriminant ratios",
    "duality": "U + M_G and N_G agree as quadratic spaces over Q",
    "coinv-det": "det(1 - h) on coinvariant lattices from eigenvalue multisets",
    "enriques": "Enriques involution lattices U(2)+E8(-2) and U+U(2)+E8(-2)",
    "pf-d12": "two-parameter K3 periods, mirror maps and Yukawa couplings",
    "pf-d8": "three-parameter K3 period system",
    "pf-elliptic": "elliptic family over X_1(6)",
    "proj-models": "projective models on P1 x P1",
}


def brauer_suite() -> Report:
    rep = Report("brauer")
    a = ANCHORS["brauer"]
    for r in records():
        row = brauer_m(r.tag)
        pr = r.proof_row
        got = (row.disc_H_invariant, row.disc_M, row.disc_N, row.a, row.rank_N, row.n)
        want = (pr.disc_H_invariant, pr.disc_G, pr.disc_N, pr.a, pr.rank_N, pr.n)
        rep.add(f"{r.tag} proof row", got == want, want, got, a)
        rep.add(f"{r.tag} m", row.m == r.expected_m, r.expected_m, row.m, a)
        for name, ok in table_lattice_checks(r).items():
            rep.add(f"{r.tag} {name}", ok, True, ok, a)
    return rep


def duality_suite() -> Report:
    rep = Report("duality")
    a = ANCHORS["duality"]
    for r in records():
        res = verify_duality(r.tag)
        rep.add(f"{r.tag} Q-equivalent", res.equivalent, "equivalent", res.reason or "equivalent", a)
    c2 = next(r for r in records() if r.tag == "C2")
    lhs = direct_sum(parse_lattice("U"), c2.M)
    rep.add("C2 equal over Z", lhs.gram == c2.N.gram, c2.N_expr, lhs.label, a)
    return rep


def coinv_det_suite() -> Report:
    rep = Report("coinv-det")
    for H, ev, det in coinvariant_table():
        got = coinv_det(ev)
        rep.add(f"{H} det", got == det, det, got, ANCHORS["coinv-det"])
    return rep


def enriques_suite() -> Report:
    rep = Report("enriques")
    a = ANCHORS["enriques"]
    act = enriques_model()
    iota = act.generators[0]
    K3 = act.lattice
    inv, _ = invariant_lattice(act)
    coinv, _ = coinvariant_lattice(act)
    ref_inv, ref_coinv = parse_lattice("U(2)+E8(-2)"), parse_lattice("U+U(2)+E8(-2)")
    for name, L, ref in (("invariant", inv, ref_inv), ("anti-invariant", coinv, ref_coinv)):
        rep.add(f"{name} rank", L.rank == ref.rank, ref.rank, L.rank, a)
        rep.add(f"{name} signature", signature(L) == signature(ref), signature(ref), signature(L), a)
        rep.add(f"{name} even", is_even(L), True, is_even(L), a)
        rep.add(f"{name} |disc|", abs(disc(L)) == abs(disc(ref)), abs(disc(ref)), abs(disc(L)), a)
        rep.add(f"{name} fingerprint", fingerprints_equal(L, ref), "equal", "equal" if fingerprints_equal(L, ref) else "differ", a)
    rep.add("q(L^iota) = -q(L_iota)", fingerprints_equal(inv, coinv, negate=True), "equal", "checked", a)
    g = glue_exponent(K3, iota)
    rep.add("glue exponent a", g == 10, 10, g, a)
    tors = anti_invariant_torsion(K3, iota)
    rep.add("anti-invariant torsion", tors == (2, 2), (2, 2), tors, a)
    rep.add("torsion rank = 12 - a", len(tors) == coinv.rank - g, coinv.rank - g, len(tors), a)
    return rep


def pf_d12_suite(trunc: Optional[int] = None) -> Report:
    from .picard_fuchs import d12_suite

    rep = Report("pf-d12")
    rep.extend(d12_suite(trunc or DEFAULT_TRUNC["pf-d12"]), anchor=ANCHORS["pf-d12"])
    return rep


def pf_d8_suite(trunc: Optional[int] = None) -> Report:
    from .picard_fuchs import d8_suite

    rep = Report("pf-d8")
    rep.extend(d8_suite(trunc or DEFAULT_TRUNC["pf-d8"]), anchor=ANCHORS["pf-d8"])
    return rep


def pf_elliptic_suite(trunc: Optional[int] = None) -> Report:
    from .picard_fuchs import elliptic_suite

    rep = Report("pf-elliptic")
    rep.extend(elliptic_suite(DEFAULT_TRUNC["pf-elliptic"] if trunc is None else trunc), anchor=ANCHORS["pf-elliptic"])
    return rep


def proj_models() -> Report:
    from .projmodels import proj_models_suite

    rep = Report("proj-models")
    rep.extend(proj_models_suite(), anchor=ANCHORS["proj-models"])
    return rep


SUITES: Dict[str, Callable[..., Report]] = {
    "brauer": brauer_suite,
    "duality": duality_suite,
    "coinv-det": coinv_det_suite,
    "enriques": enriques_suite,
    "pf-d12": pf_d12_suite,
    "pf-d8": pf_d8_suite,
    "pf-elliptic": pf_elliptic_suite,
    "proj-models": proj_models,
}
TRUNCATABLE = {"pf-d12", "pf-d8", "pf-elliptic"}


def run_suite(name: str, trunc: Optional[int] = None) -> Report:
    fn = SUITES[name]
    try:
        return fn(trunc) if name in TRUNCATABLE else fn()
    except Exception as exc:  # a crashing suite is a failed suite, not a crashed run
        rep = Report(name)
        rep.add("suite completed", False, "no error", f"{type(exc).__name__}: {exc}", ANCHORS.get(name, ""))
        return rep


def _run_star(args):
    return run_suite(*args)


def run_all(trunc: Optional[int] = None, jobs: int = 1) -> Report:
    names = list(SUITES)
    args = [(n, trunc if n in TRUNCATABLE else None) for n in names]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports: List[Report] = list(ex.map(_run_star, args))
    else:
        reports = [run_suite(*a) for a in args]
    return merge("all", reports)
