"""Right comodules, comodule algebras, coinvariants and measurings."""

from __future__ import annotations

import itertools
from functools import cached_property

from .hopf import FinAlgebra, HopfAlgebra, check_maps_equal
from .linalg import (
    BasedSpace,
    Echelon,
    LinMap,
    Subspace,
    Vec,
    axpy,
    kernel,
    tensor,
    tensor_space,
    vtensor,
)
from .report import Report
from .scalars import ONE

__all__ = [
    "Comodule",
    "ComoduleAlgebra",
    "SubAlgebra",
    "Measuring",
    "NotSubalgebra",
    "verify_comodule",
    "verify_comodule_algebra",
    "coinvariant_subspace",
    "coinvariants",
    "diagonal_coaction",
    "verify_measuring",
    "trivial_action",
]


class NotSubalgebra(ValueError):
    pass


class Comodule:
    def __init__(self, space: BasedSpace, hopf: HopfAlgebra, coaction: LinMap):
        self.space = space
        self.hopf = hopf
        self.coaction = coaction

    @property
    def dim(self) -> int:
        return self.space.dim

    def delta(self, v: Vec) -> Vec:
        return self.coaction(v)

    def split(self, v: Vec):
        """δ(v) as a list of ((a, h), coeff) with a, h basis indices."""
        dh = self.hopf.dim
        return [(divmod(k, dh), x) for k, x in self.coaction(v).items()]


class SubAlgebra:
    """A unital subalgebra of A with a chosen basis (given as A-vectors)."""

    def __init__(self, ambient: FinAlgebra, basis, labels=None):
        basis = [dict(v) for v in basis]
        labels = labels or [f"<{i}>" for i in range(len(basis))]
        self.ambient = ambient
        self.vectors = basis
        self.space = BasedSpace(tuple(labels))
        self.inclusion = LinMap(self.space, ambient.space, basis)
        self.subspace = Subspace(ambient.space, basis)
        self._ech = Echelon(track=True)
        for i, v in enumerate(basis):
            if self._ech.add(v, {i: ONE}) is None:
                raise ValueError("subalgebra basis vectors are dependent")
        table = {}
        for i, j in itertools.product(range(len(basis)), repeat=2):
            prod = ambient.mul(basis[i], basis[j])
            c = self.try_coords(prod)
            if c is None:
                raise NotSubalgebra(f"product {labels[i]}·{labels[j]} leaves the subspace")
            table[i, j] = c
        unit = self.try_coords(ambient.unit)
        if unit is None:
            raise NotSubalgebra("subspace does not contain the unit")
        self.alg = FinAlgebra.from_table(self.space, lambda i, j: table[i, j], unit)
        self.retraction = LinMap.from_function(
            ambient.space, self.space, lambda j: self._ech.reduce({j: ONE})[1]
        )

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def try_coords(self, v: Vec) -> Vec | None:
        r, combo = self._ech.reduce(v)
        return None if r else combo

    def coords(self, v: Vec) -> Vec:
        c = self.try_coords(v)
        if c is None:
            raise ValueError("element does not lie in the subalgebra")
        return c

    def include(self, b: Vec) -> Vec:
        return self.inclusion(b)

    def contains(self, v: Vec) -> bool:
        return self.try_coords(v) is not None

    def __repr__(self):
        return f"SubAlgebra(dim={self.dim} in {self.ambient.dim})"


class ComoduleAlgebra(Comodule):
    def __init__(self, alg: FinAlgebra, hopf: HopfAlgebra, coaction: LinMap, base: SubAlgebra | None = None):
        super().__init__(alg.space, hopf, coaction)
        self.alg = alg
        self._base = base

    @property
    def base(self) -> SubAlgebra:
        if self._base is None:
            self._base = coinvariants(self)
        return self._base

    def mul(self, u: Vec, v: Vec) -> Vec:
        return self.alg.mul(u, v)

    @cached_property
    def AH(self) -> FinAlgebra:
        return self.alg.tensor(self.hopf.alg)


def verify_comodule(M: Comodule, report: Report | None = None, prefix: str = "comod") -> Report:
    rep = report if report is not None else Report()
    H = M.hopf
    IV = LinMap.identity(M.space)
    IH = LinMap.identity(H.space)
    d = M.coaction
    check_maps_equal(rep, f"{prefix}.coassociativity", tensor(IV, H.coproduct) @ d, tensor(d, IH) @ d)
    counit = tensor(IV, H.counit) @ d
    bad = next((M.space.witness(j) for j in range(M.dim) if counit.cols[j] != {j * 1: ONE}), None)
    rep.add(f"{prefix}.counit", bad)
    return rep


def verify_comodule_algebra(CA: ComoduleAlgebra) -> Report:
    """Coaction axioms plus multiplicativity of δ, on all basis elements and pairs."""
    rep = verify_comodule(CA)
    H = CA.hopf
    dh = H.dim
    d = CA.coaction
    bad = None
    if d(CA.alg.unit) != vtensor(CA.alg.unit, H.unit, dh):
        bad = ("1",)
    else:
        AH = CA.AH
        for i, j in itertools.product(range(CA.dim), repeat=2):
            if d(CA.alg.table[i][j]) != AH.mul(d.cols[i], d.cols[j]):
                bad = (CA.space.labels[i], CA.space.labels[j])
                break
    rep.add("comod.algebra-map", bad)
    return rep


def coinvariant_subspace(M: Comodule) -> Subspace:
    """Kernel of δ − (·⊗1_H)."""
    dh = M.hopf.dim
    one = M.hopf.unit
    cols = []
    for j, c in enumerate(M.coaction.cols):
        v = dict(c)
        axpy(v, -ONE, vtensor({j: ONE}, one, dh))
        cols.append(v)
    diff = LinMap(M.space, tensor_space(M.space, M.hopf.space), cols)
    return kernel(diff)


def coinvariants(CA: ComoduleAlgebra) -> SubAlgebra:
    sub = coinvariant_subspace(CA)
    return SubAlgebra(CA.alg, sub.basis, sub.space.labels)


def diagonal_coaction(V: Comodule, W: Comodule) -> Comodule:
    """δ(v⊗w) = v0⊗w0⊗v1w1."""
    if V.hopf is not W.hopf and V.hopf.space != W.hopf.space:
        raise ValueError("diagonal coaction needs a common Hopf algebra")
    H = V.hopf
    dh, dw = H.dim, W.dim
    VW = tensor_space(V.space, W.space)
    cols = []
    for i in range(V.dim):
        di = V.split({i: ONE})
        for j in range(W.dim):
            acc: Vec = {}
            for (a, h), x in di:
                for (b, k), y in W.split({j: ONE}):
                    base = (a * dw + b) * dh
                    for m, z in H.alg.table[h][k].items():
                        acc[base + m] = acc.get(base + m, 0) + x * y * z
            cols.append({k: x for k, x in acc.items() if x})
    return Comodule(VW, H, LinMap(VW, tensor_space(VW, H.space), cols))


# ---------------------------------------------------------------------------
# measurings


class Measuring:
    """A linear map H⊗B → B, h⊗b ↦ h▷b."""

    def __init__(self, hopf: HopfAlgebra, target: FinAlgebra, action: LinMap):
        self.hopf = hopf
        self.target = target
        self.action = action
        self.is_module_algebra = _module_law_witness(self) is None

    @cached_property
    def table(self) -> list[list[Vec]]:
        db = self.target.dim
        return [[self.action.cols[h * db + b] for b in range(db)] for h in range(self.hopf.dim)]

    def act(self, h: Vec, b: Vec) -> Vec:
        acc: Vec = {}
        t = self.table
        for i, x in h.items():
            row = t[i]
            for j, y in b.items():
                axpy(acc, x * y, row[j])
        return acc

    def act_basis(self, h: int, b: Vec) -> Vec:
        return self.act({h: ONE}, b)

    @cached_property
    def is_trivial(self) -> bool:
        eps = self.hopf.eps
        return all(
            self.table[h][b] == ({b: eps[h]} if eps[h] else {})
            for h in range(self.hopf.dim)
            for b in range(self.target.dim)
        )


def trivial_action(H: HopfAlgebra, B: FinAlgebra) -> Measuring:
    db = B.dim
    cols = []
    for h in range(H.dim):
        for b in range(db):
            cols.append({b: H.eps[h]} if H.eps[h] else {})
    return Measuring(H, B, LinMap(tensor_space(H.space, B.space), B.space, cols))


def _module_law_witness(M: Measuring):
    H, B = M.hopf, M.target
    for b in range(B.dim):
        if M.act(H.unit, {b: ONE}) != {b: ONE}:
            return ("1", B.space.labels[b])
    for h, k, b in itertools.product(range(H.dim), range(H.dim), range(B.dim)):
        if M.act_basis(h, M.act_basis(k, {b: ONE})) != M.act(H.alg.table[h][k], {b: ONE}):
            return (H.space.labels[h], H.space.labels[k], B.space.labels[b])
    return None


def verify_measuring(M: Measuring) -> Report:
    rep = Report()
    H, B = M.hopf, M.target
    bad = None
    for h in range(H.dim):
        want = {k: x * H.eps[h] for k, x in B.unit.items()} if H.eps[h] else {}
        if M.act_basis(h, B.unit) != want:
            bad = (H.space.labels[h],)
            break
    rep.add("measuring.unit", bad)
    bad = None
    sw = H.sweedler(2)
    for h, b, c in itertools.product(range(H.dim), range(B.dim), range(B.dim)):
        lhs = M.act_basis(h, B.table[b][c])
        rhs: Vec = {}
        for (h1, h2), x in sw[h].items():
            axpy(rhs, x, B.mul(M.act_basis(h1, {b: ONE}), M.act_basis(h2, {c: ONE})))
        if lhs != rhs:
            bad = (H.space.labels[h], B.space.labels[b], B.space.labels[c])
            break
    rep.add("measuring.product", bad)
    rep.flags["is_module_algebra"] = M.is_module_algebra
    return rep
