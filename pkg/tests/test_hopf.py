import pytest

from hopfgalois.hopf import (
    ConvMap,
    FinAlgebra,
    HopfAlgebra,
    NotAGroup,
    build_dual_group_algebra,
    build_group_algebra,
    conv_inverse,
    conv_unit,
    convolve,
    cyclic_group,
    field_algebra,
    is_cocommutative,
    verify_hopf,
)
from hopfgalois.linalg import LinMap, space, tensor_space
from hopfgalois.scalars import ONE, Scalar, zeta


def test_group_algebra_dimensions(kZ2, kV4, kS3):
    assert kZ2.dim == 2 and kZ2.antipode.is_identity()
    assert kV4.dim == 4 and is_cocommutative(kV4)
    assert kS3.dim == 6 and is_cocommutative(kS3) and not kS3.alg.is_commutative()
    assert verify_hopf(kS3).ok


def test_not_a_group():
    with pytest.raises(NotAGroup):
        build_group_algebra([[0, 1], [1, 1]], ["1", "g"])


def test_dual_kZ2_fourier_iso(kZ2):
    d = build_dual_group_algebra(*cyclic_group(2))
    # e± = (1 ± g)/2 are orthogonal idempotents, δ_1 ↦ e+, δ_g ↦ e-
    half = Scalar.rational(1) / 2
    F = LinMap(d.space, kZ2.space, [{0: half, 1: half}, {0: half, 1: -half}])
    for i in range(2):
        for j in range(2):
            assert F(d.alg.table[i][j]) == kZ2.mul(F.cols[i], F.cols[j])
    assert F(d.unit) == kZ2.unit
    assert F.rank() == 2


def test_dual_S3(dS3):
    assert not is_cocommutative(dS3)
    assert [dS3.eps[g] for g in range(6)] == [ONE] + [0] * 5
    assert verify_hopf(dS3).ok


def test_sweedler(H4):
    S2 = H4.antipode @ H4.antipode
    g, x = {1: ONE}, {2: ONE}
    assert S2(x) == H4.mul(H4.mul(g, x), g) == {2: -ONE}
    assert H4.eps[2] == 0
    assert not is_cocommutative(H4)
    assert verify_hopf(H4).ok


def test_verify_hopf_small(kZ3):
    rep = verify_hopf(kZ3)
    assert rep.ok and len(rep) == 6


def test_corrupted_structure_constant_names_triple(kZ3):
    cols = [dict(c) for c in kZ3.alg.mult.cols]
    # g·g = g2 becomes g·g = 1
    cols[1 * 3 + 1] = {0: ONE}
    alg = FinAlgebra(kZ3.space, LinMap(kZ3.alg.mult.domain, kZ3.space, cols), kZ3.unit)
    bad = HopfAlgebra(alg, kZ3.coproduct, kZ3.counit, kZ3.antipode)
    rep = verify_hopf(bad)
    chk = rep["hopf.associativity"]
    assert not chk.passed
    assert len(chk.witness) == 3 and all(w in kZ3.space.labels for w in chk.witness)


def test_convolution_unit(H4):
    f = ConvMap(H4.coalg, H4.alg, H4.antipode)
    u = conv_unit(H4.coalg, H4.alg)
    assert convolve(f, u).map == f.map
    assert conv_inverse(u).map == u.map


def test_convolution_on_grouplikes(kZ3):
    K = field_algebra()
    f = ConvMap(kZ3.coalg, K, LinMap(kZ3.space, K.space, [{0: ONE}, {0: zeta(3)}, {0: 2 * ONE}]))
    g = ConvMap(kZ3.coalg, K, LinMap(kZ3.space, K.space, [{0: ONE}, {0: 3 * ONE}, {0: zeta(6)}]))
    fg = convolve(f, g).map
    for h in range(3):
        assert fg.cols[h] == {0: f.map.cols[h][0] * g.map.cols[h][0]}
    inv = conv_inverse(f).map
    assert list(inv.cols) == [{0: x[0].inverse()} for x in f.map.cols]


def test_antipode_star_identity_on_x(H4):
    S = ConvMap(H4.coalg, H4.alg, H4.antipode)
    ident = ConvMap(H4.coalg, H4.alg, LinMap.identity(H4.space))
    assert convolve(S, ident).map.cols[2] == {}


def test_non_invertible_convolution(kZ2):
    K = field_algebra()
    f = ConvMap(kZ2.coalg, K, LinMap(kZ2.space, K.space, [{0: ONE}, {}]))
    assert conv_inverse(f) is None
