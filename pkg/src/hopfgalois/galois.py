"""Canonical map, translation map, cleft data and the normal basis property."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .comod import ComoduleAlgebra, Measuring, SubAlgebra
from .crossed import CocycleOnH, CrossedProduct, crossed_product
from .hopf import ConvMap, conv_inverse, conv_unit, convolve
from .linalg import (
    Echelon,
    LinMap,
    QuotientSpace,
    Vec,
    axpy,
    inverse,
    quotient,
    tensor,
    tensor_space,
    vtensor,
)
from .report import Report
from .scalars import ONE

__all__ = [
    "GaloisExtension",
    "CleftData",
    "NotGalois",
    "NotCleft",
    "build_galois",
    "verify_galois",
    "verify_translation_identities",
    "cleft_chi_inv",
    "build_cleft",
    "verify_cleft",
    "from_cleaving",
]


class NotGalois(ValueError):
    def __init__(self, rank, expected, reason=""):
        self.rank, self.expected = rank, expected
        super().__init__(reason or f"canonical map has rank {rank}, expected {expected}")


class NotCleft(ValueError):
    pass


def balanced_relations(A, B: SubAlgebra):
    """ab⊗a' − a⊗ba' for basis a, a' of A and b in the basis of B."""
    d = A.dim
    rels = []
    for a in range(d):
        for bv in B.vectors:
            left = A.mul({a: ONE}, bv)
            for a2 in range(d):
                rel = vtensor(left, {a2: ONE}, d)
                axpy(rel, -ONE, vtensor({a: ONE}, A.mul(bv, {a2: ONE}), d))
                if rel:
                    rels.append(rel)
    return rels


class GaloisExtension:
    def __init__(self, CA: ComoduleAlgebra, balanced: QuotientSpace, chi: LinMap, chi_inv: LinMap, pre_chi: LinMap):
        self.CA = CA
        self.A = CA.alg
        self.H = CA.hopf
        self.B = CA.base
        self.balanced = balanced
        self.chi = chi
        self.chi_inv = chi_inv
        self.pre_chi = pre_chi
        H = self.H
        dh = H.dim
        self.tau = LinMap.from_function(
            H.space, balanced.space, lambda h: chi_inv(vtensor(self.A.unit, {h: ONE}, dh))
        )

    def lift(self, q: Vec) -> Vec:
        return self.balanced.lift(q)

    def project(self, v: Vec) -> Vec:
        return self.balanced.project(v)

    def tau_lift(self, h: Vec) -> Vec:
        return self.balanced.lift(self.tau(h))

    def split2(self, v: Vec):
        d = self.A.dim
        return [(divmod(k, d), x) for k, x in v.items()]

    def with_section(self, balanced: QuotientSpace) -> "GaloisExtension":
        """The same extension with a different section of the balanced quotient."""
        if balanced.relations != self.balanced.relations:
            raise ValueError("a resection must keep the relation subspace")
        return GaloisExtension(self.CA, balanced, self.chi, self.chi_inv, self.pre_chi)

    @cached_property
    def freeness_basis(self):
        """Basis indices a_i of A with B^r → A, (b_i) ↦ Σ b_i a_i bijective, or None."""
        A, B = self.A, self.B
        if A.dim % B.dim:
            return None
        ech = Echelon()
        chosen = []
        for a in range(A.dim):
            images = [A.mul(b, {a: ONE}) for b in B.vectors]
            trial = Echelon()
            trial.rows = {p: dict(r) for p, r in ech.rows.items()}
            if all(trial.add(v) is not None for v in images):
                ech = trial
                chosen.append(a)
        if ech.rank != A.dim:
            return None
        return tuple(chosen)


def _pre_chi(CA: ComoduleAlgebra) -> LinMap:
    """a⊗a' ↦ a a'0 ⊗ a'1 on A⊗A."""
    A, H = CA.alg, CA.hopf
    d, dh = A.dim, H.dim
    AA = tensor_space(A.space, A.space)
    AH = tensor_space(A.space, H.space)
    coact = [CA.split({j: ONE}) for j in range(d)]
    cols = []
    for a in range(d):
        for a2 in range(d):
            acc: Vec = {}
            for (x, h), c in coact[a2]:
                for k, y in A.table[a][x].items():
                    key = k * dh + h
                    v = acc.get(key)
                    v = c * y if v is None else v + c * y
                    if v:
                        acc[key] = v
                    else:
                        acc.pop(key, None)
            cols.append(acc)
    return LinMap(AA, AH, cols)


def build_galois(CA: ComoduleAlgebra, priority=None) -> GaloisExtension:
    """Canonical map on A⊗_B A, inverted exactly; raises NotGalois otherwise."""
    A, H = CA.alg, CA.hopf
    AA = tensor_space(A.space, A.space)
    q = quotient(AA, balanced_relations(A, CA.base), priority)
    pre = _pre_chi(CA)
    for r in q.relations.basis:
        if pre(r):
            raise NotGalois(None, None, "canonical map does not descend to A⊗_B A")
    chi = (pre @ q.section).with_spaces(q.space, pre.codomain)
    expected = A.dim * H.dim
    if q.dim != expected:
        raise NotGalois(chi.rank(), expected, f"dim A⊗_B A = {q.dim} but dim A⊗H = {expected}")
    chi_inv = inverse(chi)
    if chi_inv is None:
        raise NotGalois(chi.rank(), expected)
    return GaloisExtension(CA, q, chi, chi_inv, pre)


def verify_galois(ext: GaloisExtension) -> Report:
    rep = Report()
    bad = next((ext.balanced.ambient.witness(j) for j, r in enumerate(ext.balanced.relations.basis) if ext.pre_chi(r)), None)
    rep.add("galois.chi.well-defined", bad)
    j = (ext.chi_inv @ ext.chi).first_mismatch(LinMap.identity(ext.chi.domain))
    k = (ext.chi @ ext.chi_inv).first_mismatch(LinMap.identity(ext.chi.codomain))
    rep.add("galois.chi.bijective", None if j is None and k is None else
            (ext.chi.domain.witness(j) if j is not None else ext.chi.codomain.witness(k)))
    dh = ext.H.dim
    bad = next(
        ((ext.H.space.labels[h],) for h in range(dh)
         if ext.chi(ext.tau.cols[h]) != vtensor(ext.A.unit, {h: ONE}, dh)),
        None,
    )
    rep.add("galois.chi-tau", bad)
    rep.add("galois.freeness", None if ext.freeness_basis is not None else ("A",))
    return rep


def verify_translation_identities(ext: GaloisExtension) -> Report:
    """The four translation-map identities on every basis h (and a, for the fourth)."""
    rep = Report()
    A, H, CA = ext.A, ext.H, ext.CA
    d, dh = A.dim, H.dim
    proj_H = tensor(ext.balanced.projection, LinMap.identity(H.space))
    sw2 = H.sweedler(2)
    S = H.antipode.cols
    coact = [CA.split({j: ONE}) for j in range(d)]
    bq = ext.balanced.dim

    bad1 = bad2 = bad3 = None
    for h in range(dh):
        lift = ext.tau_lift({h: ONE})
        lhs1: Vec = {}
        rhs2: Vec = {}
        lhs3: Vec = {}
        for (x, y), c in ext.split2(lift):
            for (y0, y1), e in coact[y]:
                axpy(lhs1, c * e, {(x * d + y0) * dh + y1: ONE})
                axpy(lhs3, c * e, vtensor(A.table[x][y0], {y1: ONE}, dh))
            for (x0, x1), e in coact[x]:
                axpy(rhs2, c * e, {(x0 * d + y) * dh + x1: ONE})
        lhs1 = proj_H(lhs1)
        rhs2 = proj_H(rhs2)
        rhs1: Vec = {}
        lhs2: Vec = {}
        for (h1, h2), c in sw2[h].items():
            axpy(rhs1, c, vtensor(ext.tau.cols[h1], {h2: ONE}, dh))
            axpy(lhs2, c, vtensor(ext.tau.cols[h2], S[h1], dh))
        if bad1 is None and lhs1 != rhs1:
            bad1 = (H.space.labels[h],)
        if bad2 is None and lhs2 != rhs2:
            bad2 = (H.space.labels[h],)
        if bad3 is None and lhs3 != vtensor(A.unit, {h: ONE}, dh):
            bad3 = (H.space.labels[h],)
    rep.add("eq.translation.1", bad1)
    rep.add("eq.translation.2", bad2)
    rep.add("eq.translation.3", bad3)

    bad4 = None
    for a in range(d):
        acc: Vec = {}
        for (a0, a1), c in coact[a]:
            for (x, y), e in ext.split2(ext.tau_lift({a1: ONE})):
                axpy(acc, c * e, vtensor(A.table[a0][x], {y: ONE}, d))
        if ext.project(acc) != ext.project(vtensor(A.unit, {a: ONE}, d)):
            bad4 = (A.space.labels[a],)
            break
    rep.add("eq.translation.4", bad4)
    return rep


# ---------------------------------------------------------------------------
# cleft extensions


def cleft_chi_inv(CP: CrossedProduct, ext: GaloisExtension) -> LinMap:
    """χ⁻¹(b#g⊗h) = (b#g)(σ⁻¹(S(h2),h3)#S(h1)) ⊗_B 1#h4 as a matrix."""
    A, H, B, c = CP.A, CP.H, CP.B, CP.cocycle
    d, dh = A.dim, H.dim
    S = H.antipode.cols
    sw4 = H.sweedler(4)
    cols = []
    for p in range(d):
        for h in range(dh):
            acc: Vec = {}
            for (h1, h2, h3, h4), x in sw4[h].items():
                right = vtensor(c.si_vec(S[h2], {h3: ONE}), S[h1], dh)
                left = A.mul({p: ONE}, right)
                axpy(acc, x, vtensor(left, CP.bh(B.unit, {h4: ONE}), d))
            cols.append(ext.project(acc))
    return LinMap(ext.chi.codomain, ext.balanced.space, cols)


@dataclass
class CleftData:
    ext: GaloisExtension
    gamma: ConvMap
    gamma_inv: ConvMap
    normal_basis_iso: LinMap
    crossed: CrossedProduct | None = None


def build_cleft(CP: CrossedProduct, ext: GaloisExtension | None = None) -> CleftData:
    """γ(h) = 1#h with γ⁻¹(h) = σ⁻¹(S(h2),h3)#S(h1); normal basis iso = identity."""
    ext = ext or build_galois(CP.total)
    A, H, B, c = CP.A, CP.H, CP.B, CP.cocycle
    dh = H.dim
    S = H.antipode.cols
    gamma = ConvMap(H.coalg, A, LinMap(H.space, A.space, [CP.bh(B.unit, {h: ONE}) for h in range(dh)]))
    cols = []
    for h in range(dh):
        acc: Vec = {}
        for (h1, h2, h3), x in H.sweedler(3)[h].items():
            axpy(acc, x, vtensor(c.si_vec(S[h2], {h3: ONE}), S[h1], dh))
        cols.append(acc)
    gamma_inv = ConvMap(H.coalg, A, LinMap(H.space, A.space, cols))
    iso = LinMap.identity(A.space).with_spaces(A.space, tensor_space(B.space, H.space))
    return CleftData(ext, gamma, gamma_inv, iso, CP)


def verify_cleft(cd: CleftData, CA: ComoduleAlgebra | None = None, prefix: str = "cleft") -> Report:
    """Colinearity and invertibility of γ; B-linearity, colinearity and bijectivity of the iso.

    ``CA`` overrides the comodule algebra used (the cotwisted one during transport).
    """
    rep = Report()
    CA = CA or cd.ext.CA
    A, H = CA.alg, CA.hopf
    B = cd.ext.B
    d, dh = A.dim, H.dim
    g, gi = cd.gamma.map, cd.gamma_inv.map
    src = H.coalg
    lhs = CA.coaction @ g
    rhs = tensor(g, LinMap.identity(H.space)) @ H.coproduct
    j = lhs.first_mismatch(rhs)
    rep.add(f"{prefix}.gamma.colinear", None if j is None else H.space.witness(j))
    u = conv_unit(src, A).map
    f1 = convolve(ConvMap(src, A, g), ConvMap(src, A, gi)).map
    f2 = convolve(ConvMap(src, A, gi), ConvMap(src, A, g)).map
    j = f1.first_mismatch(u)
    j = j if j is not None else f2.first_mismatch(u)
    rep.add(f"{prefix}.gamma.invertible", None if j is None else H.space.witness(j))

    F = cd.normal_basis_iso
    db = F.codomain.dim // dh
    bad = None
    for bi, bv in enumerate(B.vectors):
        for a in range(d):
            lhs = F(A.mul(bv, {a: ONE}))
            rhs: Vec = {}
            for k, x in F.cols[a].items():
                b2, h = divmod(k, dh)
                axpy(rhs, x, vtensor(B.alg.table[bi][b2], {h: ONE}, dh))
            if lhs != rhs:
                bad = (B.space.labels[bi], A.space.labels[a])
                break
        if bad:
            break
    rep.add(f"{prefix}.nb.left-B-linear", bad)
    BH_coact = LinMap.from_function(
        F.codomain, tensor_space(F.codomain, H.space),
        lambda k: {(k // dh * dh + h1) * dh + h2: x for (h1, h2), x in H.sweedler(2)[k % dh].items()},
    )
    lhs = tensor(F, LinMap.identity(H.space)) @ CA.coaction
    rhs = BH_coact @ F
    j = lhs.first_mismatch(rhs)
    rep.add(f"{prefix}.nb.colinear", None if j is None else A.space.witness(j))
    rep.add(f"{prefix}.nb.bijective", None if inverse(F) is not None else ("rank", F.rank()))

    free_cols = []
    for bv in B.vectors:
        for h in range(dh):
            free_cols.append(A.mul(bv, g.cols[h]))
    W = LinMap(tensor_space(B.space, H.space), A.space, free_cols)
    rep.add(f"{prefix}.freeness", None if inverse(W) is not None else ("rank", W.rank()))
    return rep


def from_cleaving(CA: ComoduleAlgebra, gamma: LinMap):
    """Crossed product presentation of a cleft extension from a cleaving map γ: H → A.

    h▷b = γ(h1)bγ⁻¹(h2), σ(h,k) = γ(h1)γ(k1)γ⁻¹(h2k2); returns (CP, Θ) with
    Θ(b#h) = bγ(h) an isomorphism of comodule algebras B#_σH → A.
    """
    A, H, Bsub = CA.alg, CA.hopf, CA.base
    dh = H.dim
    g = ConvMap(H.coalg, A, gamma.with_spaces(H.space, A.space))
    gi = conv_inverse(g)
    if gi is None:
        raise NotCleft("γ is not convolution invertible")
    sw2 = H.sweedler(2)
    Bspace = Bsub.space
    act_cols = []
    for h in range(dh):
        for bv in Bsub.vectors:
            acc: Vec = {}
            for (h1, h2), x in sw2[h].items():
                axpy(acc, x, A.mul(A.mul(g.map.cols[h1], bv), gi.map.cols[h2]))
            c = Bsub.try_coords(acc)
            if c is None:
                raise NotCleft("γ(h1)bγ⁻¹(h2) leaves B")
            act_cols.append(c)
    M = Measuring(H, Bsub.alg, LinMap(tensor_space(H.space, Bspace), Bspace, act_cols))
    sig_cols = []
    for h in range(dh):
        for k in range(dh):
            acc = {}
            for (h1, h2), x in sw2[h].items():
                for (k1, k2), y in sw2[k].items():
                    left = A.mul(g.map.cols[h1], g.map.cols[k1])
                    axpy(acc, x * y, A.mul(left, gi.map(H.alg.table[h2][k2])))
            c = Bsub.try_coords(acc)
            if c is None:
                raise NotCleft("γ(h1)γ(k1)γ⁻¹(h2k2) leaves B")
            sig_cols.append(c)
    sigma = CocycleOnH(M, LinMap(tensor_space(H.space, H.space), Bspace, sig_cols))
    CP = crossed_product(M, sigma)
    theta_cols = []
    for bv in Bsub.vectors:
        for h in range(dh):
            theta_cols.append(A.mul(bv, g.map.cols[h]))
    theta = LinMap(CP.A.space, A.space, theta_cols)
    return CP, theta
