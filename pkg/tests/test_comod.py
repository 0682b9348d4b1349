from hopfgalois.comod import (
    Comodule,
    ComoduleAlgebra,
    Measuring,
    coinvariant_subspace,
    coinvariants,
    diagonal_coaction,
    trivial_action,
    verify_comodule_algebra,
    verify_measuring,
)
from hopfgalois.crossed import smash_product
from hopfgalois.linalg import LinMap, Subspace, tensor, tensor_space, vtensor
from hopfgalois.scalars import ONE


def regular(H):
    return ComoduleAlgebra(H.alg, H, H.coproduct)


def trivial_coaction(H):
    d = H.dim
    u = next(iter(H.unit))
    return LinMap(H.space, tensor_space(H.space, H.space), [{a * d + u: ONE} for a in range(d)])


def test_regular_comodule_algebra(H4, dS3):
    for H in (H4, dS3):
        CA = regular(H)
        assert verify_comodule_algebra(CA).ok
        assert coinvariants(CA).subspace == Subspace(H.space, [H.unit])


def test_smash_product_comodule_algebra(sign_kZ2):
    CP = smash_product(sign_kZ2)
    assert verify_comodule_algebra(CP.total).ok
    dh = CP.H.dim
    assert coinvariant_subspace(CP.total) == Subspace(CP.A.space, [vtensor({b: ONE}, CP.H.unit, dh) for b in range(2)])


def test_corrupted_coaction_reports_witness(kZ2):
    # δ(g) = g⊗1 + g⊗g - 1⊗g is counital but not coassociative
    cols = [{0: ONE}, {2: ONE, 3: ONE, 1: -ONE}]
    CA = ComoduleAlgebra(kZ2.alg, kZ2, LinMap(kZ2.space, tensor_space(kZ2.space, kZ2.space), cols))
    rep = verify_comodule_algebra(CA)
    chk = rep["comod.coassociativity"]
    assert not chk.passed and chk.witness == ("g",)


def test_trivial_coaction_coinvariants_everything(kZ3):
    CA = ComoduleAlgebra(kZ3.alg, kZ3, trivial_coaction(kZ3))
    assert coinvariants(CA).dim == 3


def test_diagonal_coaction(kZ3, H4):
    T = Comodule(kZ3.space, kZ3, trivial_coaction(kZ3))
    D = diagonal_coaction(T, T)
    d = kZ3.dim
    for k in range(d * d):
        assert D.coaction.cols[k] == {k * d: ONE}
    R = Comodule(kZ3.space, kZ3, kZ3.coproduct)
    D = diagonal_coaction(R, R)
    for g in range(d):
        for h in range(d):
            gh = next(iter(kZ3.alg.table[g][h]))
            assert D.coaction.cols[g * d + h] == {(g * d + h) * d + gh: ONE}
    # H⊗H with Δ on both: (id⊗id⊗m)(id⊗flip⊗id)(Δ⊗Δ)
    R = Comodule(H4.space, H4, H4.coproduct)
    D = diagonal_coaction(R, R)
    n = H4.dim
    for a in range(n):
        for b in range(n):
            want = {}
            for (a0, a1), x in R.split({a: ONE}):
                for (b0, b1), y in R.split({b: ONE}):
                    for k, z in H4.alg.table[a1][b1].items():
                        key = (a0 * n + b0) * n + k
                        want[key] = want.get(key, 0) + x * y * z
            assert D.coaction.cols[a * n + b] == {k: v for k, v in want.items() if v}


def test_measurings(kZ2, H4, sign_kZ2, K):
    triv = trivial_action(H4, kZ2.alg)
    assert verify_measuring(triv).ok and triv.is_module_algebra
    assert verify_measuring(sign_kZ2).ok and sign_kZ2.is_module_algebra
    # g▷1 = u breaks h▷1 = ε(h)1
    cols = [dict(c) for c in sign_kZ2.action.cols]
    cols[1 * 2 + 0] = {1: ONE}
    bad = Measuring(kZ2, kZ2.alg, LinMap(sign_kZ2.action.domain, kZ2.space, cols))
    rep = verify_measuring(bad)
    assert not rep["measuring.unit"].passed and rep["measuring.unit"].witness == ("g",)
