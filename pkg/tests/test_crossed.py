import itertools

import pytest

from conftest import sign_action
from hopfgalois.comod import Measuring, trivial_action
from hopfgalois.crossed import (
    NotAssociative,
    NotInvertible,
    cocycle_from_table,
    crossed_product,
    smash_product,
    solve_unital_cocycles,
    trivial_cocycle,
    verify_sigma_properties,
)
from hopfgalois.linalg import LinMap, vtensor
from hopfgalois.scalars import ONE, zeta


def bh(CP, b, h):
    return CP.bh({CP.B.space.index(b): ONE}, {CP.H.space.index(h): ONE})


def test_trivial_action_smash_is_tensor_product(kZ2, H4):
    CP = smash_product(trivial_action(H4, kZ2.alg))
    B, H = CP.B, CP.H
    for b1, h1, b2, h2 in itertools.product(range(B.dim), range(H.dim), range(B.dim), range(H.dim)):
        left = vtensor({b1: ONE}, {h1: ONE}, H.dim)
        right = vtensor({b2: ONE}, {h2: ONE}, H.dim)
        want = {}
        for i, x in B.table[b1][b2].items():
            for j, y in H.alg.table[h1][h2].items():
                want[i * H.dim + j] = x * y
        assert CP.A.mul(left, right) == want


def test_sign_smash_product(sign_kZ2):
    CP = smash_product(sign_kZ2)
    assert CP.A.mul(bh(CP, "1", "g"), bh(CP, "g", "1")) == {k: -x for k, x in bh(CP, "g", "g").items()}
    assert CP.A.mul(bh(CP, "g", "1"), bh(CP, "g", "1")) == bh(CP, "1", "1")


def test_trivial_sigma_is_smash(sign_kZ2):
    assert crossed_product(sign_kZ2, trivial_cocycle(sign_kZ2)).A.table == smash_product(sign_kZ2).A.table


def test_q_sigma_neg1_is_gaussian(q_sigma_neg1):
    CP = q_sigma_neg1
    X = bh(CP, "1", "g")
    assert CP.A.mul(X, X) == {0: -ONE}


def test_sign_sigma_neg1_noncommutative(sign_kZ2):
    c = cocycle_from_table(sign_kZ2, {("g", "g"): {0: -ONE}})
    CP = crossed_product(sign_kZ2, c)
    assert CP.A.dim == 4 and CP.A.verify().ok and not CP.A.is_commutative()


def _corrupt_action(M, h, b, value):
    H, B = M.hopf, M.target
    cols = [dict(c) for c in M.action.cols]
    cols[H.space.index(h) * B.dim + B.space.index(b)] = value
    return Measuring(H, B, LinMap(M.action.domain, B.space, cols))


@pytest.mark.parametrize("case, expected", [
    ("unit-acts-wrongly", "cond1"),
    ("action-not-twisted-module", "cond2"),
    ("sigma-not-unital", "cond3"),
    ("cocycle-condition", "cond4"),
])
def test_targeted_corruptions_name_the_condition(sign_kZ2, case, expected):
    M, table = sign_kZ2, {}
    if case == "unit-acts-wrongly":
        M = _corrupt_action(sign_kZ2, "1", "g", {0: ONE})
    elif case == "action-not-twisted-module":
        M = _corrupt_action(sign_kZ2, "g", "g", {0: ONE})
    elif case == "sigma-not-unital":
        table = {("g", "1"): {0: -ONE}}
    else:
        table = {("g", "g"): {1: ONE}}
    with pytest.raises(NotAssociative) as err:
        crossed_product(M, cocycle_from_table(M, table))
    assert expected in err.value.failing_conditions
    assert expected in str(err.value)


@pytest.mark.parametrize("value", [{}, {0: ONE, 1: ONE}])
def test_non_invertible_sigma(sign_kZ2, value):
    with pytest.raises(NotInvertible):
        cocycle_from_table(sign_kZ2, {("g", "g"): value})


def test_sigma_properties(kZ2, sign_kZ2, K):
    M = trivial_action(kZ2, K)
    assert verify_sigma_properties(trivial_cocycle(M)).ok
    c = cocycle_from_table(M, {("g", "g"): {0: -ONE}})
    assert verify_sigma_properties(c).ok
    # property (4) at g: σ⁻¹(g,g)σ(g,g) = 1
    assert c.si(1, 1) == {0: -ONE} and c.s(1, 1) == {0: -ONE}
    assert verify_sigma_properties(cocycle_from_table(sign_kZ2, {("g", "g"): {0: -ONE}})).ok


def test_solver_kZ2_over_Q(kZ2, K):
    sols = solve_unital_cocycles(trivial_action(kZ2, K))
    assert sorted(str(s.sigma.cols[3][0]) for s in sols) == ["-1", "1"]
    for s in sols:
        assert s.sigma.cols[:3] == ({0: ONE}, {0: ONE}, {0: ONE})


def test_solver_sign_action_gives_constants(sign_kZ2):
    sols = solve_unital_cocycles(sign_kZ2)
    assert len(sols) == 2
    for s in sols:
        v = s.sigma.cols[3]
        assert set(v) == {0}
        assert sign_kZ2.act_basis(1, v) == v


def bichar(kV4):
    # σ(a^i b^j, a^k b^l) = ζ₄^(2jk+ik+jl); index of a^i b^j is 2i + j
    def s(p, q):
        (i, j), (k, l) = divmod(p, 2), divmod(q, 2)
        return zeta(4, 2 * j * k + i * k + j * l)
    return {(kV4.space.labels[p], kV4.space.labels[q]): {0: s(p, q)} for p in range(4) for q in range(4)}


def test_solver_includes_bicharacter(kV4, K):
    M = trivial_action(kV4, K)
    want = cocycle_from_table(M, bichar(kV4)).sigma
    sols = solve_unital_cocycles(M, conductor=4, max_solutions=1000)
    assert any(s.sigma == want for s in sols)
    assert all(s.verify().ok for s in sols)


def test_spec_bicharacter_is_not_a_cocycle(kV4, K):
    # ζ₄^(jk-il) fails twisted associativity on 12 of 64 triples
    M = trivial_action(kV4, K)
    tab = {}
    for p, q in itertools.product(range(4), repeat=2):
        (i, j), (k, l) = divmod(p, 2), divmod(q, 2)
        tab[kV4.space.labels[p], kV4.space.labels[q]] = {0: zeta(4, j * k - i * l)}
    c = cocycle_from_table(M, tab)
    assert not c.verify()["lemma.twisted-smash.cond4"].passed
    s = lambda p, q: c.s(p, q)[0]
    bad = sum(
        s(h, k) * s(next(iter(kV4.alg.table[h][k])), m) != s(k, m) * s(h, next(iter(kV4.alg.table[k][m])))
        for h, k, m in itertools.product(range(4), repeat=3)
    )
    assert bad == 12
