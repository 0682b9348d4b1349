from hopfgalois.linalg import (
    LinMap,
    Subspace,
    kernel,
    quotient,
    solve,
    space,
    subspace,
    tensor,
    vtensor,
)
from hopfgalois.scalars import ONE, Scalar

V2 = space(["e0", "e1"])


def m(rows):
    return LinMap.from_dense(V2, V2, [[Scalar.rational(x) for x in r] for r in rows])


def test_solve_identity():
    v = {0: Scalar.rational(3), 1: -ONE}
    assert solve(LinMap.identity(V2), v) == v


def test_solve_zero_map():
    assert solve(LinMap.zero(V2, V2), {0: ONE}) is None


def test_solve_upper_triangular():
    assert solve(m([[1, 1], [0, 1]]), {0: 2 * ONE, 1: ONE}) == {0: ONE, 1: ONE}


def test_kernels():
    assert kernel(LinMap.identity(V2)).dim == 0
    assert kernel(LinMap.zero(V2, V2)).dim == 2
    k = kernel(m([[1, 1], [1, 1]]))
    assert k.dim == 1 and k.contains({0: ONE, 1: -ONE})


def test_quotients():
    q = quotient(V2, [])
    assert q.dim == 2 and q.projection.is_identity()
    assert quotient(V2, [{0: ONE}, {1: ONE}]).dim == 0
    q = quotient(V2, [{0: ONE, 1: -ONE}])
    assert q.dim == 1 and q.project({0: ONE}) == q.project({1: ONE})


def test_quotient_sections_agree_modulo_relations():
    q = quotient(V2, [{0: ONE, 1: -ONE}])
    alt = q.alt_section()
    for x in range(q.dim):
        d = dict(q.lift({x: ONE}))
        for k, c in alt.lift({x: ONE}).items():
            d[k] = d.get(k, 0) - c
        assert q.relations.contains({k: c for k, c in d.items() if c})


def test_subspace_is_canonical():
    a = subspace(V2, [{0: ONE, 1: ONE}, {1: 2 * ONE}])
    b = Subspace(V2, [{0: ONE}, {1: ONE}])
    assert a == b


def test_tensor_of_maps():
    i = LinMap.identity(V2)
    assert tensor(i, i).is_identity()
    assert tensor(m([[1, 2], [3, 4]]), LinMap.zero(V2, V2)) == LinMap.zero(tensor(i, i).domain, tensor(i, i).codomain)
    f, g = m([[1, 2], [3, 4]]), m([[0, 1], [5, 7]])
    e01 = vtensor({0: ONE}, {1: ONE}, 2)
    assert tensor(f, g)(e01) == vtensor(f({0: ONE}), g({1: ONE}), 2)
    # Kronecker expansion: f(e0) = e0 + 3e1, g(e1) = e0 + 7e1
    assert tensor(f, g)(e01) == {0: ONE, 1: 7 * ONE, 2: 3 * ONE, 3: 21 * ONE}


def test_subspace_equality_ignores_pivot_priority():
    V = space(("x", "y", "z"))
    gens = [{0: ONE, 1: ONE}, {1: ONE, 2: -ONE}]
    a = Subspace(V, gens)
    b = Subspace(V, gens, priority=[2, 1, 0])
    assert a.pivots != b.pivots
    assert a == b
    assert a != Subspace(V, gens[:1])
