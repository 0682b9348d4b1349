import pytest

from hopfgalois.comod import ComoduleAlgebra
from hopfgalois.crossed import cocycle_from_table, crossed_product, smash_product
from hopfgalois.galois import (
    NotGalois,
    build_cleft,
    build_galois,
    cleft_chi_inv,
    verify_cleft,
    verify_galois,
    verify_translation_identities,
)
from hopfgalois.hopf import ConvMap, conv_unit, convolve
from hopfgalois.linalg import LinMap, axpy, tensor_space, vtensor
from hopfgalois.scalars import ONE


def regular(H):
    return ComoduleAlgebra(H.alg, H, H.coproduct)


def test_regular_translation_map(kZ2, H4, dS3):
    for H in (kZ2, H4, dS3):
        ext = build_galois(regular(H))
        assert ext.B.dim == 1 and ext.balanced.dim == H.dim ** 2
        for h in range(H.dim):
            want = {}
            for (h1, h2), x in H.sweedler(2)[h].items():
                axpy(want, x, vtensor(H.antipode.cols[h1], {h2: ONE}, H.dim))
            assert ext.tau.cols[h] == ext.project(want)
        rep = verify_galois(ext).extend(verify_translation_identities(ext))
        assert rep.ok, [c.id for c in rep.failures]


def test_crossed_kZ2_kZ2_balanced_dimension(sign_kZ2):
    CP = crossed_product(sign_kZ2, cocycle_from_table(sign_kZ2, {("g", "g"): {0: -ONE}}))
    ext = build_galois(CP.total)
    assert ext.balanced.dim == 8
    rep = verify_translation_identities(ext)
    assert rep.ok


def test_trivial_coaction_is_not_galois(kZ2):
    d = kZ2.dim
    delta = LinMap(kZ2.space, tensor_space(kZ2.space, kZ2.space), [{a * d: ONE} for a in range(d)])
    with pytest.raises(NotGalois):
        build_galois(ComoduleAlgebra(kZ2.alg, kZ2, delta))


def test_translation_identities_independent_of_section(sign_kZ2):
    CP = crossed_product(sign_kZ2, cocycle_from_table(sign_kZ2, {("g", "g"): {0: -ONE}}))
    ext = build_galois(CP.total)
    assert verify_translation_identities(ext.with_section(ext.balanced.alt_section())).ok
    rev = build_galois(CP.total, priority=list(reversed(range(CP.A.dim ** 2))))
    assert verify_translation_identities(rev).ok


def test_cleft_inverse_matches_exact_inverse(q_sigma_neg1, sign_kZ2, H4):
    for CP in (q_sigma_neg1, smash_product(sign_kZ2)):
        ext = build_galois(CP.total)
        assert cleft_chi_inv(CP, ext) == ext.chi_inv


def test_cleft_inverse_examples(q_sigma_neg1):
    CP = q_sigma_neg1
    ext = build_galois(CP.total)
    inv = cleft_chi_inv(CP, ext)
    dh = CP.H.dim
    one, g = {0: ONE}, {1: ONE}
    # h = 1: χ⁻¹(1#g⊗1) = 1#g ⊗_B 1#1
    assert inv(vtensor(CP.bh(one, g), one, dh)) == ext.project(vtensor(CP.bh(one, g), CP.bh(one, one), CP.A.dim))
    # χ⁻¹(1#1⊗g) = (-1#g) ⊗_B (1#g)
    lhs = inv(vtensor(CP.bh(one, one), g, dh))
    assert lhs == ext.project({k: -x for k, x in vtensor(CP.bh(one, g), CP.bh(one, g), CP.A.dim).items()})


def test_cleft_data(q_sigma_neg1, sign_kZ2):
    for CP in (q_sigma_neg1, smash_product(sign_kZ2)):
        cd = build_cleft(CP)
        dh = CP.H.dim
        g = CP.H.space.index("g")
        assert CP.total.coaction(cd.gamma.map.cols[g]) == vtensor(CP.bh(CP.B.unit, {g: ONE}), {g: ONE}, dh)
        u = conv_unit(CP.H.coalg, CP.A).map
        assert convolve(cd.gamma, cd.gamma_inv).map == u
        rep = verify_cleft(cd)
        assert rep.ok, [c.id for c in rep.failures]
