import pytest

from hopfgalois.bgd import (
    HypothesisViolated,
    NotBalanced,
    balanced_square_over_BBop,
    bgd_convolve,
    counit_pairing,
    es_bialgebroid,
    hopf_as_bialgebroid,
    phi_map,
    sigma_tilde,
    solve_convolution_inverse,
    twist_bialgebroid,
    twist_theorem,
    verify_bialgebroid,
    verify_es,
    verify_phi,
)
from hopfgalois.comod import ComoduleAlgebra, Measuring
from hopfgalois.cotwist import HopfTwist, twist_hopf
from hopfgalois.crossed import cocycle_from_table, crossed_product, smash_product, trivial_cocycle
from hopfgalois.galois import build_galois
from hopfgalois.linalg import LinMap, tensor_space, vtensor
from hopfgalois.scalars import ONE

from conftest import sign_action


def regular(H):
    return ComoduleAlgebra(H.alg, H, H.coproduct)


def es_of(total):
    return es_bialgebroid(build_galois(total))


@pytest.fixture(scope="module")
def C_kZ2(kZ2):
    return es_of(regular(kZ2))


@pytest.fixture(scope="module")
def C_smash(sign_kZ2):
    return es_of(smash_product(sign_kZ2).total)


def test_hopf_over_itself_has_dim_H(C_kZ2):
    assert C_kZ2.dim == 2
    assert verify_es(C_kZ2).ok


def test_hopf_over_itself_sweedler(H4):
    bg = es_of(regular(H4))
    assert bg.dim == 4
    assert verify_es(bg).ok
    # h1⊗S(h2) lies in the carrier for every h
    d = H4.dim
    for h in range(d):
        v = {}
        for (h1, h2), x in H4.sweedler(2)[h].items():
            for k, y in vtensor({h1: ONE}, H4.antipode.cols[h2], d).items():
                v[k] = v.get(k, 0) + x * y
        v = {k: x for k, x in v.items() if x}
        assert bg.carrier.contains(v)


def test_es_dimensions_match_oracle(C_smash, kV4, kZ2):
    # frozen from tests/oracle.py
    assert C_smash.dim == 8
    M = sign_action(kV4, kZ2.alg, {"a", "ab"})
    bg = es_of(smash_product(M).total)
    assert bg.dim == 16
    assert verify_es(bg).ok


def test_counit_of_unit_is_unit(C_smash):
    assert C_smash.counit(C_smash.L.unit) == C_smash.B.unit


def test_balanced_square_over_field_has_no_relations(kZ2):
    bg = hopf_as_bialgebroid(kZ2)
    assert verify_bialgebroid(bg).ok
    assert balanced_square_over_BBop(bg).relations.dim == 0


def test_balanced_square_over_kZ2(C_smash):
    q = balanced_square_over_BBop(C_smash)
    assert q.space.dim == 64 - q.relations.dim
    assert q.space.dim == 16


def test_convolution_unit(C_smash):
    eps = counit_pairing(C_smash)
    assert bgd_convolve(eps, eps, C_smash) == eps
    g, op = solve_convolution_inverse(eps, C_smash)
    assert g is not None
    # ε̃ itself solves ε̃⋆g = ε̃; the solution is determined up to ker(op)
    flat = {j * C_smash.B.dim + i: z for j, v in enumerate(eps.cols) for i, z in v.items()}
    assert op(flat) == op(g)


def test_unbalanced_map_rejected(C_smash):
    eps = counit_pairing(C_smash)
    cols = [dict(c) for c in eps.cols]
    cols[0] = {1: ONE}
    bad = LinMap(eps.domain, eps.codomain, cols)
    with pytest.raises(NotBalanced):
        bgd_convolve(bad, eps, C_smash)


def test_sigma_tilde_trivial_is_counit(sign_kZ2, C_smash):
    CP0 = smash_product(sign_kZ2)
    st = sigma_tilde(CP0, trivial_cocycle(sign_kZ2), C_smash)
    assert st.value == counit_pairing(C_smash)
    assert st.verify().ok


def test_sigma_tilde_invertible(sign_kZ2, C_smash):
    c = cocycle_from_table(sign_kZ2, {("g", "g"): {0: -ONE}})
    st = sigma_tilde(smash_product(sign_kZ2), c, C_smash)
    assert st.branch == "cocommutative"
    assert bgd_convolve(st.value, st.inverse, C_smash) == counit_pairing(C_smash)
    assert st.verify().ok


def test_twist_by_counit_is_identity(C_smash, sign_kZ2):
    st = sigma_tilde(smash_product(sign_kZ2), trivial_cocycle(sign_kZ2), C_smash)
    tw = twist_bialgebroid(C_smash, st)
    assert tw.L.table == C_smash.L.table


def test_hopf_specialisation_matches_twist_hopf(H4):
    t = HopfTwist.from_values(H4, {("x", "x"): ONE, ("x", "gx"): -ONE, ("gx", "x"): ONE, ("gx", "gx"): -ONE})
    assert t.verify().ok
    bg = hopf_as_bialgebroid(H4)
    tw = twist_bialgebroid(bg, t.as_bgd_cocycle)
    assert tw.L.table == twist_hopf(t).alg.table


def test_phi_on_unit_and_group_like(q_sigma_neg1):
    tt = twist_theorem(q_sigma_neg1)
    assert tt.report.ok
    phi, bg0, bg1 = tt.phi, tt.bg0, tt.bg1
    assert phi(bg0.L.unit) == bg1.L.unit
    CP0, CP = tt.CP0, tt.CP
    da = CP.A.dim
    g = {1: ONE}
    src = bg0.carrier.coords(vtensor(CP0.bh({0: ONE}, g), CP0.bh({0: ONE}, g), da))
    dst = bg1.carrier.coords(vtensor(CP.bh({0: ONE}, g), CP.bh({0: ONE}, g), da))
    assert phi(src) == {k: -x for k, x in dst.items()}


def test_phi_sweedler_trivial_action(fs):
    tt = twist_theorem(fs.get("H4-sigma").crossed)
    assert tt.report.ok, [f.id for f in tt.report.failures]
    assert verify_phi(tt.phi, tt.twisted, tt.bg1, "thm.2cocycle-twist-trivial.phi").ok


def test_section_independence(sign_kZ2):
    M = sign_kZ2
    CP = crossed_product(M, cocycle_from_table(M, {("g", "g"): {0: -ONE}}))
    bg1 = es_of(CP.total)
    alt = bg1.with_section(bg1.balsq.alt_section())
    assert verify_bialgebroid(alt).ok
    perm = list(reversed(range(bg1.dim * bg1.dim)))
    bg2 = es_bialgebroid(build_galois(CP.total), section_priority=perm)
    assert verify_es(bg2).ok


def test_hypothesis_violated(H4, kZ2):
    cols = []
    for h in H4.space.labels:
        if h in ("x", "gx"):
            cols += [{}, {}]
        else:
            cols += [{0: ONE}, {1: -ONE if h == "g" else ONE}]
    M = Measuring(H4, kZ2.alg, LinMap(tensor_space(H4.space, kZ2.alg.space), kZ2.alg.space, cols))
    CP = crossed_product(M, trivial_cocycle(M))
    with pytest.raises(HypothesisViolated):
        twist_theorem(CP)
    with pytest.raises(HypothesisViolated):
        phi_map(CP)
