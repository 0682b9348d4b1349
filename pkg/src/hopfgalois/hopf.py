"""Finite-dimensional algebras, coalgebras and Hopf algebras by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .linalg import (
    FIELD,
    BasedSpace,
    LinMap,
    ShapeMismatch,
    Vec,
    axpy,
    flip,
    solve,
    kernel,
    space,
    tensor,
    tensor_space,
    vtensor,
)
from .report import Report
from .scalars import ONE, Scalar, as_scalar

__all__ = [
    "FinAlgebra",
    "Coalgebra",
    "HopfAlgebra",
    "ConvMap",
    "NotAGroup",
    "field_algebra",
    "build_group_algebra",
    "build_dual_group_algebra",
    "build_sweedler",
    "cyclic_group",
    "product_group",
    "symmetric_group",
    "verify_hopf",
    "convolve",
    "conv_inverse",
    "conv_unit",
    "is_cocommutative",
    "check_maps_equal",
]


class NotAGroup(ValueError):
    pass


def check_maps_equal(report: Report, check_id: str, f: LinMap, g: LinMap, detail: str = ""):
    """Add a check comparing two maps; the witness is the first differing basis tuple."""
    j = f.first_mismatch(g)
    return report.add(check_id, None if j is None else f.domain.witness(j), detail)


# ---------------------------------------------------------------------------
# algebras


class FinAlgebra:
    def __init__(self, space: BasedSpace, mult: LinMap, unit: Vec):
        if mult.domain.dim != space.dim**2 or mult.codomain.dim != space.dim:
            raise ShapeMismatch("multiplication must be a map A⊗A → A")
        self.space = space
        self.mult = mult
        self.unit = dict(unit)

    @classmethod
    def from_table(cls, space: BasedSpace, table, unit: Vec) -> "FinAlgebra":
        """table(i, j) -> Vec giving the product of basis elements i and j."""
        d = space.dim
        cols = [table(i, j) for i in range(d) for j in range(d)]
        return cls(space, LinMap(tensor_space(space, space), space, cols), unit)

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def table(self) -> list[list[Vec]]:
        d = self.dim
        return [[self.mult.cols[i * d + j] for j in range(d)] for i in range(d)]

    def mul(self, u: Vec, v: Vec) -> Vec:
        acc: Vec = {}
        table = self.table
        for i, x in u.items():
            row = table[i]
            for j, y in v.items():
                axpy(acc, x * y, row[j])
        return acc

    def lmul(self, u: Vec) -> LinMap:
        return LinMap.from_function(self.space, self.space, lambda j: self.mul(u, {j: ONE}))

    def rmul(self, u: Vec) -> LinMap:
        return LinMap.from_function(self.space, self.space, lambda j: self.mul({j: ONE}, u))

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.dim) for j in range(i))

    def commutes_with_all(self, v: Vec) -> bool:
        return all(self.mul(v, {j: ONE}) == self.mul({j: ONE}, v) for j in range(self.dim))

    def opposite(self) -> "FinAlgebra":
        return FinAlgebra.from_table(self.space, lambda i, j: self.table[j][i], self.unit)

    def tensor(self, other: "FinAlgebra", sep: str = "⊗") -> "FinAlgebra":
        V = tensor_space(self.space, other.space, sep=sep)
        d2 = other.dim

        def tab(p, q):
            (i, j), (k, l) = divmod(p, d2), divmod(q, d2)
            return vtensor(self.table[i][k], other.table[j][l], d2)

        return FinAlgebra.from_table(V, tab, vtensor(self.unit, other.unit, d2))

    def verify(self, report: Report | None = None, prefix: str = "algebra") -> Report:
        report = report if report is not None else Report()
        V = self.space
        I = LinMap.identity(V)
        lhs = self.mult @ tensor(self.mult, I)
        rhs = self.mult @ tensor(I, self.mult)
        check_maps_equal(report, f"{prefix}.associativity", lhs, rhs)
        bad = None
        for j in range(self.dim):
            e = {j: ONE}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                bad = (V.labels[j],)
                break
        report.add(f"{prefix}.unit", bad)
        return report

    def __repr__(self):
        return f"FinAlgebra(dim={self.dim})"


def field_algebra() -> FinAlgebra:
    return FinAlgebra.from_table(FIELD, lambda i, j: {0: ONE}, {0: ONE})


# ---------------------------------------------------------------------------
# coalgebras


class Coalgebra:
    def __init__(self, space: BasedSpace, coproduct: LinMap, counit: LinMap):
        self.space = space
        self.coproduct = coproduct
        self.counit = counit

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def eps(self) -> list[Scalar]:
        zero = Scalar.rational(0)
        return [c.get(0, zero) for c in self.counit.cols]

    def epsilon(self, v: Vec) -> Scalar:
        acc = Scalar.rational(0)
        eps = self.eps
        for i, x in v.items():
            if eps[i]:
                acc = acc + x * eps[i]
        return acc

    def sweedler(self, n: int) -> list[dict[tuple, Scalar]]:
        """For each basis element, its (n-1)-fold coproduct as {index tuple: coeff}."""
        cache = self.__dict__.setdefault("_sweedler", {})
        if n in cache:
            return cache[n]
        d = self.dim
        if n == 1:
            out = [{(i,): ONE} for i in range(d)]
        else:
            prev = self.sweedler(n - 1)
            delta = [[(divmod(k, d), x) for k, x in c.items()] for c in self.coproduct.cols]
            out = []
            for i in range(d):
                acc: dict[tuple, Scalar] = {}
                for t, x in prev[i].items():
                    for (a, b), y in delta[t[-1]]:
                        key = t[:-1] + (a, b)
                        v = acc.get(key)
                        v = x * y if v is None else v + x * y
                        if v:
                            acc[key] = v
                        else:
                            acc.pop(key, None)
                out.append(acc)
        cache[n] = out
        return out

    def sweedler_vec(self, v: Vec, n: int) -> dict[tuple, Scalar]:
        acc: dict[tuple, Scalar] = {}
        sw = self.sweedler(n)
        for i, x in v.items():
            for t, y in sw[i].items():
                z = acc.get(t)
                z = x * y if z is None else z + x * y
                if z:
                    acc[t] = z
                else:
                    acc.pop(t, None)
        return acc

    def tensor(self, other: "Coalgebra") -> "Coalgebra":
        """C⊗D with Δ(c⊗d) = c1⊗d1⊗c2⊗d2."""
        V = tensor_space(self.space, other.space)
        dc, dd = self.dim, other.dim
        cols = []
        ceps = []
        for i in range(dc):
            for j in range(dd):
                acc: Vec = {}
                for k, x in self.coproduct.cols[i].items():
                    c1, c2 = divmod(k, dc)
                    for l, y in other.coproduct.cols[j].items():
                        d1, d2 = divmod(l, dd)
                        acc[(c1 * dd + d1) * dc * dd + c2 * dd + d2] = x * y
                cols.append(acc)
                e = self.eps[i] * other.eps[j]
                ceps.append({0: e} if e else {})
        return Coalgebra(V, LinMap(V, tensor_space(V, V), cols), LinMap(V, FIELD, ceps))

    def is_cocommutative(self) -> bool:
        return flip(self.space, self.space) @ self.coproduct == self.coproduct

    def verify(self, report: Report | None = None, prefix: str = "coalgebra") -> Report:
        report = report if report is not None else Report()
        I = LinMap.identity(self.space)
        D = self.coproduct
        check_maps_equal(report, f"{prefix}.coassociativity", tensor(D, I) @ D, tensor(I, D) @ D)
        left = tensor(self.counit, I) @ D
        right = tensor(I, self.counit) @ D
        bad = None
        for j in range(self.dim):
            if left.cols[j] != {j: ONE} or right.cols[j] != {j: ONE}:
                bad = (self.space.labels[j],)
                break
        report.add(f"{prefix}.counit", bad)
        return report


# ---------------------------------------------------------------------------
# Hopf algebras


class HopfAlgebra:
    def __init__(self, alg: FinAlgebra, coproduct: LinMap, counit: LinMap, antipode: LinMap, name: str = ""):
        self.alg = alg
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        self.name = name
        self.coalg = Coalgebra(alg.space, coproduct, counit)

    @property
    def space(self) -> BasedSpace:
        return self.alg.space

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def unit(self) -> Vec:
        return self.alg.unit

    @property
    def eps(self) -> list[Scalar]:
        return self.coalg.eps

    def mul(self, u: Vec, v: Vec) -> Vec:
        return self.alg.mul(u, v)

    def S(self, v: Vec) -> Vec:
        return self.antipode(v)

    def sweedler(self, n: int):
        return self.coalg.sweedler(n)

    @cached_property
    def grouplike(self) -> list[bool]:
        return [c == {i * self.dim + i: ONE} for i, c in enumerate(self.coproduct.cols)]

    def __repr__(self):
        return f"HopfAlgebra({self.name or self.dim})"


def verify_hopf(H: HopfAlgebra) -> Report:
    """Exhaustive structure-constant check of every Hopf algebra axiom."""
    rep = Report()
    V = H.space
    d = H.dim
    I = LinMap.identity(V)
    m = H.alg.mult
    check_maps_equal(rep, "hopf.associativity", m @ tensor(m, I), m @ tensor(I, m))

    bad = None
    for j in range(d):
        e = {j: ONE}
        if H.mul(H.unit, e) != e or H.mul(e, H.unit) != e:
            bad = (V.labels[j],)
            break
    rep.add("hopf.unit", bad)

    D = H.coproduct
    check_maps_equal(rep, "hopf.coassociativity", tensor(D, I) @ D, tensor(I, D) @ D)
    left, right = tensor(H.counit, I) @ D, tensor(I, H.counit) @ D
    bad = next(((V.labels[j],) for j in range(d) if left.cols[j] != {j: ONE} or right.cols[j] != {j: ONE}), None)
    rep.add("hopf.counit", bad)

    HH = H.alg.tensor(H.alg)
    bad = None
    if D(H.unit) != vtensor(H.unit, H.unit, d) or H.coalg.epsilon(H.unit) != 1:
        bad = ("1",)
    else:
        for i, j in itertools.product(range(d), repeat=2):
            prod = H.alg.table[i][j]
            if D(prod) != HH.mul(D.cols[i], D.cols[j]) or H.coalg.epsilon(prod) != H.eps[i] * H.eps[j]:
                bad = (V.labels[i], V.labels[j])
                break
    rep.add("hopf.bialgebra", bad)

    bad = None
    sw = H.sweedler(2)
    for h in range(d):
        target = {k: x * H.eps[h] for k, x in H.unit.items()} if H.eps[h] else {}
        l: Vec = {}
        r: Vec = {}
        for (a, b), c in sw[h].items():
            axpy(l, c, H.mul(H.antipode.cols[a], {b: ONE}))
            axpy(r, c, H.mul({a: ONE}, H.antipode.cols[b]))
        if l != target or r != target:
            bad = (V.labels[h],)
            break
    rep.add("hopf.antipode", bad)
    return rep


def is_cocommutative(H: HopfAlgebra) -> bool:
    return H.coalg.is_cocommutative()


# ---------------------------------------------------------------------------
# builders


def cyclic_group(n: int, gen: str = "g"):
    labels = ["1", gen] + [f"{gen}{k}" for k in range(2, n)]
    return [[(i + j) % n for j in range(n)] for i in range(n)], labels


def product_group(G, H):
    (tg, lg), (th, lh) = G, H
    ng, nh = len(lg), len(lh)
    labels = []
    for a in lg:
        for b in lh:
            labels.append("1" if a == "1" and b == "1" else (b if a == "1" else (a if b == "1" else a + b)))
    table = [
        [tg[i // nh][j // nh] * nh + th[i % nh][j % nh] for j in range(ng * nh)] for i in range(ng * nh)
    ]
    return table, labels


def symmetric_group(n: int = 3):
    """S_n as permutation tuples; labels are the one-line notation (identity first)."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(n))] for q in perms] for p in perms]
    labels = ["1"] + ["".join(str(x + 1) for x in p) for p in perms[1:]]
    return table, labels


def _check_group(table) -> tuple[int, list[int]]:
    n = len(table)
    if any(len(r) != n or any(not (0 <= x < n) for x in r) for r in table):
        raise NotAGroup("table is not an n×n table of element indices")
    ids = [e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"associativity fails at {(a, b, c)}")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == e and table[b][a] == e), None)
        if b is None:
            raise NotAGroup(f"element {a} has no inverse")
        inv.append(b)
    return e, inv


def build_group_algebra(cayley_table, labels=None, name: str = "") -> HopfAlgebra:
    e, inv = _check_group(cayley_table)
    n = len(cayley_table)
    V = space(labels or [str(i) for i in range(n)])
    alg = FinAlgebra.from_table(V, lambda i, j: {cayley_table[i][j]: ONE}, {e: ONE})
    VV = tensor_space(V, V)
    D = LinMap(V, VV, [{i * n + i: ONE} for i in range(n)])
    eps = LinMap(V, FIELD, [{0: ONE} for _ in range(n)])
    S = LinMap(V, V, [{inv[i]: ONE} for i in range(n)])
    return HopfAlgebra(alg, D, eps, S, name)


def build_dual_group_algebra(cayley_table, labels=None, name: str = "") -> HopfAlgebra:
    e, inv = _check_group(cayley_table)
    n = len(cayley_table)
    labels = labels or [str(i) for i in range(n)]
    V = space([f"δ{l}" for l in labels])
    alg = FinAlgebra.from_table(V, lambda i, j: {i: ONE} if i == j else {}, {i: ONE for i in range(n)})
    VV = tensor_space(V, V)
    cols = []
    for g in range(n):
        cols.append({x * n + y: ONE for x in range(n) for y in range(n) if cayley_table[x][y] == g})
    D = LinMap(V, VV, cols)
    eps = LinMap(V, FIELD, [{0: ONE} if g == e else {} for g in range(n)])
    S = LinMap(V, V, [{inv[g]: ONE} for g in range(n)])
    return HopfAlgebra(alg, D, eps, S, name)


def build_sweedler(name: str = "H4") -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra on 1, g, x, gx (g² = 1, x² = 0, xg = -gx)."""
    idx = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    word = {v: k for k, v in idx.items()}
    V = space(["1", "g", "x", "gx"])

    def prod(p, q):
        (a, b), (c, d) = word[p], word[q]
        if b + d > 1:
            return {}
        return {idx[((a + c) % 2, b + d)]: ONE if (b * c) % 2 == 0 else -ONE}

    alg = FinAlgebra.from_table(V, prod, {0: ONE})
    VV = tensor_space(V, V)
    t = lambda i, j: i * 4 + j
    D = LinMap(V, VV, [
        {t(0, 0): ONE},
        {t(1, 1): ONE},
        {t(2, 0): ONE, t(1, 2): ONE},
        {t(3, 1): ONE, t(0, 3): ONE},
    ])
    eps = LinMap(V, FIELD, [{0: ONE}, {0: ONE}, {}, {}])
    S = LinMap(V, V, [{0: ONE}, {1: ONE}, {3: -ONE}, {2: ONE}])
    return HopfAlgebra(alg, D, eps, S, name)


# ---------------------------------------------------------------------------
# convolution


@dataclass
class ConvMap:
    source: Coalgebra
    target: FinAlgebra
    map: LinMap

    def __call__(self, v: Vec) -> Vec:
        return self.map(v)


def conv_unit(source: Coalgebra, target: FinAlgebra) -> ConvMap:
    cols = [{k: x * e for k, x in target.unit.items()} if e else {} for e in source.eps]
    return ConvMap(source, target, LinMap(source.space, target.space, cols))


def convolve(f: ConvMap, g: ConvMap) -> ConvMap:
    if f.source.space != g.source.space or f.target.space != g.target.space:
        raise ShapeMismatch("convolution needs a common source coalgebra and target algebra")
    C, T = f.source, f.target
    dc = C.dim
    cols = []
    for c in C.coproduct.cols:
        acc: Vec = {}
        for k, x in c.items():
            a, b = divmod(k, dc)
            axpy(acc, x, T.mul(f.map.cols[a], g.map.cols[b]))
        cols.append(acc)
    return ConvMap(C, T, LinMap(C.space, T.space, cols))


def _left_conv_operator(f: ConvMap, left: bool = True) -> LinMap:
    """g ↦ f⋆g (or g⋆f) as a matrix on the entries of g (index t*dimC + c)."""
    C, T = f.source, f.target
    dc, dt = C.dim, T.dim
    unknowns = space(range(dt * dc))
    cols: list[Vec] = [{} for _ in range(dt * dc)]
    for c, col in enumerate(C.coproduct.cols):
        for k, x in col.items():
            a, b = divmod(k, dc)
            fixed, free = (a, b) if left else (b, a)
            for t in range(dt):
                prod = T.mul(f.map.cols[fixed], {t: ONE}) if left else T.mul({t: ONE}, f.map.cols[fixed])
                tgt = cols[t * dc + free]
                for o, y in prod.items():
                    key = o * dc + c
                    v = tgt.get(key)
                    v = x * y if v is None else v + x * y
                    if v:
                        tgt[key] = v
                    else:
                        tgt.pop(key, None)
    return LinMap(unknowns, unknowns, cols)


def conv_inverse(f: ConvMap) -> ConvMap | None:
    """Two-sided convolution inverse of f, or None when it does not exist."""
    C, T = f.source, f.target
    dc = C.dim
    u = conv_unit(C, T)
    rhs: Vec = {}
    for c, col in enumerate(u.map.cols):
        for o, y in col.items():
            rhs[o * dc + c] = y
    op = _left_conv_operator(f)
    sol = solve(op, rhs)
    if sol is None:
        return None
    cols: list[Vec] = [{} for _ in range(dc)]
    for key, x in sol.items():
        t, c = divmod(key, dc)
        cols[c][t] = x
    g = ConvMap(C, T, LinMap(C.space, T.space, cols))
    if convolve(g, f).map != u.map or convolve(f, g).map != u.map:
        return None
    return g


def conv_inverse_is_unique(f: ConvMap) -> bool:
    return kernel(_left_conv_operator(f)).dim == 0
