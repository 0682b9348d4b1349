"""Cocycle twists of Hopf algebras, cotwisted comodule algebras and the Galois-object corollaries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .bgd import (
    Bialgebroid,
    BgdCocycle,
    IsoFailure,
    es_bialgebroid,
    hopf_as_bialgebroid,
    sigma_tilde,
    twist_bialgebroid,
    verify_bialgebroid,
    phi_map,
    verify_phi,
)
from .comod import ComoduleAlgebra, verify_comodule_algebra, coinvariant_subspace
from .crossed import CrossedProduct, _tensor_coalg, smash_product
from .galois import CleftData, GaloisExtension, build_galois, from_cleaving, verify_cleft
from .hopf import (
    ConvMap,
    FinAlgebra,
    HopfAlgebra,
    conv_inverse,
    conv_unit,
    convolve,
    field_algebra,
    verify_hopf,
)
from .linalg import LinMap, Vec, axpy, inverse, solve, tensor, tensor_space, vtensor
from .report import Report
from .scalars import ONE

__all__ = [
    "HopfTwist",
    "NoAntipode",
    "NotACocycle",
    "NotGaloisObject",
    "TransportFailure",
    "CotwistFailure",
    "twist_hopf",
    "solve_antipode",
    "cotwist_comodule_algebra",
    "deformed_translation",
    "cleftness_transport",
    "GaloisObjectIso",
    "galois_object_iso",
    "omega_compose",
    "OmegaPipeline",
    "omega_pipeline",
]


class NoAntipode(ValueError):
    pass


class NotACocycle(ValueError):
    def __init__(self, report=None, msg="composite is not an invertible normalised 2-cocycle"):
        self.report = report
        super().__init__(msg)


class NotGaloisObject(ValueError):
    pass


class TransportFailure(ValueError):
    def __init__(self, which, report=None):
        self.which = tuple(which)
        self.report = report
        super().__init__(f"cleftness transport fails: {', '.join(self.which)}")


class CotwistFailure(ValueError):
    def __init__(self, which, report=None):
        self.which = tuple(which)
        self.report = report
        super().__init__(f"cotwisted comodule algebra fails: {', '.join(self.which)}")


_K = field_algebra()


def _scalar_table(m: LinMap, d: int):
    """Field-valued bilinear map as a d×d table of scalars (0 for absent entries)."""
    return [[m.cols[i * d + j].get(0, 0) if m.cols[i * d + j] else 0 for j in range(d)] for i in range(d)]


class HopfTwist:
    """A field-valued bilinear γ on H with its convolution inverse on H⊗H."""

    def __init__(self, H: HopfAlgebra, gamma: LinMap, gamma_inv: LinMap | None = None):
        self.H = H
        HH = tensor_space(H.space, H.space)
        self.gamma = gamma.with_spaces(HH, _K.space)
        inv = conv_inverse(ConvMap(_tensor_coalg(H, 2), _K, self.gamma))
        if inv is None:
            raise NotACocycle(msg="γ has no convolution inverse")
        if gamma_inv is not None and gamma_inv.cols != inv.map.cols:
            raise NotACocycle(msg="stored γ⁻¹ is not the convolution inverse of γ")
        self.gamma_inv = inv.map.with_spaces(HH, _K.space)

    @classmethod
    def from_values(cls, H: HopfAlgebra, values: dict) -> "HopfTwist":
        """γ from {(label, label): scalar}; unlisted pairs default to ε(h)ε(g)."""
        d = H.dim
        cols = []
        for i, j in itertools.product(range(d), repeat=2):
            key = (H.space.labels[i], H.space.labels[j])
            x = values.get(key)
            if x is None:
                x = H.eps[i] * H.eps[j]
            cols.append({0: x} if x else {})
        return cls(H, LinMap(tensor_space(H.space, H.space), _K.space, cols))

    @classmethod
    def trivial(cls, H: HopfAlgebra) -> "HopfTwist":
        return cls.from_values(H, {})

    @cached_property
    def g(self):
        return _scalar_table(self.gamma, self.H.dim)

    @cached_property
    def gi(self):
        return _scalar_table(self.gamma_inv, self.H.dim)

    @cached_property
    def as_bgd_cocycle(self) -> BgdCocycle:
        return BgdCocycle(hopf_as_bialgebroid(self.H), self.gamma, self.gamma_inv)

    def verify(self, prefix: str = "hopf-twist") -> Report:
        return self.as_bgd_cocycle.verify(prefix)

    @cached_property
    def is_trivial(self) -> bool:
        return self.gamma == HopfTwist.trivial(self.H).gamma


def solve_antipode(alg: FinAlgebra, H: HopfAlgebra) -> LinMap | None:
    """Solve Σ S(h1)h2 = ε(h)1 for S; check the other side; None if no two-sided solution."""
    d = H.dim
    sw = H.sweedler(2)
    # unknown S(e_k) coordinate (k, m) at index k*d + m
    cols: list[Vec] = [{} for _ in range(d * d)]
    for h in range(d):
        for (h1, h2), x in sw[h].items():
            for m in range(d):
                for r, y in alg.table[m][h2].items():
                    col = cols[h1 * d + m]
                    col[h * d + r] = col.get(h * d + r, 0) + x * y
    space = tensor_space(H.space, H.space)
    op = LinMap(space, space, [{k: v for k, v in c.items() if v} for c in cols])
    rhs: Vec = {}
    for h in range(d):
        if H.eps[h]:
            for r, y in alg.unit.items():
                rhs[h * d + r] = H.eps[h] * y
    sol = solve(op, rhs)
    if sol is None:
        return None
    S = LinMap(H.space, H.space, [{m: sol[k * d + m] for m in range(d) if sol.get(k * d + m)} for k in range(d)])
    for h in range(d):
        acc: Vec = {}
        for (h1, h2), x in sw[h].items():
            axpy(acc, x, alg.mul({h1: ONE}, S.cols[h2]))
        if acc != ({k: H.eps[h] * y for k, y in alg.unit.items()} if H.eps[h] else {}):
            return None
    return S


def twist_hopf(t: HopfTwist) -> HopfAlgebra:
    """H^γ: product γ(h1,g1)h2g2γ⁻¹(h3,g3) on the same coalgebra, antipode by linear solve."""
    H = t.H
    sw3 = H.sweedler(3)
    g, gi = t.g, t.gi
    tab = H.alg.table

    def prod(a, b):
        acc: Vec = {}
        for (a1, a2, a3), x in sw3[a].items():
            for (b1, b2, b3), y in sw3[b].items():
                c = g[a1][b1]
                if not c:
                    continue
                e = gi[a3][b3]
                if e:
                    axpy(acc, x * y * c * e, tab[a2][b2])
        return acc

    alg = FinAlgebra.from_table(H.space, prod, H.unit)
    S = solve_antipode(alg, H)
    if S is None:
        raise NoAntipode("no antipode for the twisted product")
    Hg = HopfAlgebra(alg, H.coproduct, H.counit, S, name=f"{H.name}^γ")
    rep = verify_hopf(Hg)
    if not rep.ok:
        raise NoAntipode(f"twisted structure fails {[f.id for f in rep.failures]}")
    return Hg


def cotwist_comodule_algebra(CA: ComoduleAlgebra, t: HopfTwist, Hg: HopfAlgebra | None = None) -> ComoduleAlgebra:
    """A_γ: product a0a'0γ⁻¹(a1,a'1), same coaction, over H^γ."""
    if CA.hopf.space != t.H.space:
        raise ValueError("comodule algebra and twist live over different Hopf algebras")
    Hg = Hg or twist_hopf(t)
    A = CA.alg
    gi = t.gi
    split = [CA.split({a: ONE}) for a in range(A.dim)]

    def prod(a, b):
        acc: Vec = {}
        for (a0, a1), x in split[a]:
            for (b0, b1), y in split[b]:
                c = gi[a1][b1]
                if c:
                    axpy(acc, x * y * c, A.table[a0][b0])
        return acc

    Ag = FinAlgebra.from_table(A.space, prod, A.unit)
    out = ComoduleAlgebra(Ag, Hg, CA.coaction)
    rep = Report().extend(verify_comodule_algebra(out), prefix="cotwist.")
    Ag.verify(rep, prefix="cotwist.algebra")
    co = coinvariant_subspace(out)
    rep.add("cotwist.coinvariants", None if co == CA.base.subspace else ("dim", co.dim, CA.base.dim))
    if not rep.ok:
        raise CotwistFailure([f.id for f in rep.failures], rep)
    out.report = rep
    return out


def deformed_translation(ext_g: GaloisExtension, ext: GaloisExtension, t: HopfTwist) -> Report:
    """τ_γ(h) = τ(h3)γ(h1,S(h2)) against the exactly inverted translation map of A_γ."""
    rep = Report()
    H = t.H
    S = H.antipode.cols
    d = ext_g.A.dim
    bad = None
    for h in range(H.dim):
        acc: Vec = {}
        for (h1, h2, h3), x in H.sweedler(3)[h].items():
            w: Vec = {}
            for k, y in S[h2].items():
                c = t.g[h1][k]
                if c:
                    w[0] = w.get(0, 0) + y * c
            if w.get(0):
                axpy(acc, x * w[0], ext.tau_lift({h3: ONE}))
        if ext_g.project(acc) != ext_g.tau.cols[h]:
            bad = (H.space.labels[h],)
            break
    rep.add("cotwist.deformed-translation", bad)
    bad = None
    for h in range(H.dim):
        if ext_g.chi(ext_g.tau.cols[h]) != vtensor(ext_g.A.unit, {h: ONE}, H.dim):
            bad = (H.space.labels[h],)
            break
    rep.add("cotwist.deformed-translation.chi", bad)
    return rep


def cleftness_transport(cd: CleftData, t: HopfTwist, CAg: ComoduleAlgebra | None = None,
                        ext_g: GaloisExtension | None = None) -> CleftData:
    """Same F = normal basis iso and the same cleaving map, revalidated over (A_γ, H^γ)."""
    CAg = CAg or cotwist_comodule_algebra(cd.ext.CA, t)
    ext_g = ext_g or build_galois(CAg)
    Hg = CAg.hopf
    g = ConvMap(Hg.coalg, CAg.alg, cd.gamma.map)
    gi = conv_inverse(g)
    if gi is None:
        raise TransportFailure(["cotwist.cleft.gamma.invertible"])
    out = CleftData(ext_g, g, gi, cd.normal_basis_iso, None)
    rep = verify_cleft(out, CAg, prefix="lemma.twist-cleft")
    if not rep.ok:
        raise TransportFailure([f.id for f in rep.failures], rep)
    out.report = rep
    return out


# ---------------------------------------------------------------------------
# Galois objects


@dataclass
class GaloisObjectIso:
    twist: HopfTwist
    iso: LinMap
    Hg: HopfAlgebra
    bgd: Bialgebroid
    report: Report = field(default_factory=Report)

    def __iter__(self):
        return iter((self.twist, self.iso))


def _field_cocycle_as_twist(CP: CrossedProduct) -> HopfTwist:
    c = CP.cocycle
    return HopfTwist(CP.H, c.sigma.with_spaces(tensor_space(CP.H.space, CP.H.space), _K.space),
                     c.sigma_inv.with_spaces(tensor_space(CP.H.space, CP.H.space), _K.space))


def _c_antipode(bg: Bialgebroid) -> LinMap | None:
    """Antipode of C(A,H) over the field, by linear solve."""
    L = bg.L
    d = L.dim
    fake = HopfAlgebra(L, LinMap(L.space, tensor_space(L.space, L.space),
                                 [bg.balsq.lift(c) for c in bg.coproduct.cols]),
                       bg.counit, LinMap.identity(L.space), name="C")
    return solve_antipode(L, fake), fake


def verify_hopf_iso(iso: LinMap, src: HopfAlgebra, bg: Bialgebroid, prefix: str) -> Report:
    """iso: src → C as algebra, coalgebra and antipode-intertwining bijection."""
    rep = Report()
    L = bg.L
    d, dc = src.dim, bg.dim
    lab = src.space.labels
    inv = inverse(iso)
    rep.add(f"{prefix}.bijective", None if inv is not None else ("rank", iso.rank()))
    bad = None if iso(src.unit) == L.unit else ("1",)
    if bad is None:
        for a, b in itertools.product(range(d), repeat=2):
            if iso(src.alg.table[a][b]) != L.mul(iso.cols[a], iso.cols[b]):
                bad = (lab[a], lab[b])
                break
    rep.add(f"{prefix}.algebra", bad)
    bad = None
    for h in range(d):
        pushed: Vec = {}
        for (h1, h2), x in src.sweedler(2)[h].items():
            axpy(pushed, x, vtensor(iso.cols[h1], iso.cols[h2], dc))
        if bg.coproduct(iso.cols[h]) != bg.balsq.project(pushed) or bg.counit(iso.cols[h]) != (
            {0: src.eps[h]} if src.eps[h] else {}
        ):
            bad = (lab[h],)
            break
    rep.add(f"{prefix}.coalgebra", bad)
    SC, _ = _c_antipode(bg)
    if SC is None or inv is None:
        rep.add(f"{prefix}.antipode", ("no antipode on C",))
    else:
        j = (SC @ iso).first_mismatch(iso @ src.antipode)
        rep.add(f"{prefix}.antipode", None if j is None else src.space.witness(j))
    return rep


def galois_object_iso(CP: CrossedProduct, prefix: str = "cor.galois-object") -> GaloisObjectIso:
    """γ := σ as a field-valued cocycle; H^γ → C(A,H) is φ∘f with f(h) = h1⊗S(h2)."""
    if CP.B.dim != 1:
        raise NotGaloisObject(f"dim B = {CP.B.dim}")
    H = CP.H
    t = _field_cocycle_as_twist(CP)
    Hg = twist_hopf(t)
    CP0 = smash_product(CP.measuring)
    bg0 = es_bialgebroid(build_galois(CP0.total))
    bg1 = es_bialgebroid(build_galois(CP.total))
    S = H.antipode.cols
    da = CP0.A.dim
    fcols = []
    for h in range(H.dim):
        acc: Vec = {}
        for (h1, h2), x in H.sweedler(2)[h].items():
            axpy(acc, x, vtensor(CP0.bh(CP0.B.unit, {h1: ONE}), CP0.bh(CP0.B.unit, S[h2]), da))
        fcols.append(bg0.carrier.coords(acc))
    f = LinMap(H.space, bg0.L.space, fcols)
    rep = Report()
    if CP.is_smash:
        iso = f.with_spaces(H.space, bg1.L.space)
    else:
        phi = phi_map(CP, CP0, bg0, bg1)
        iso = phi @ f
        st = sigma_tilde(CP0, CP.cocycle, bg0)
        j = LinMap(tensor_space(H.space, H.space), _K.space,
                   [st.value(vtensor(f.cols[a], f.cols[b], bg0.dim)) for a in range(H.dim) for b in range(H.dim)]
                   ).first_mismatch(t.gamma)
        rep.add(f"{prefix}.sigma-tilde-restricts", None if j is None else t.gamma.domain.witness(j))
    rep.extend(verify_hopf_iso(iso, Hg, bg1, prefix))
    out = GaloisObjectIso(t, iso, Hg, bg1, rep)
    out.crossed = CP
    return out


def omega_compose(sigma: LinMap, t: HopfTwist, rho: LinMap, on: HopfAlgebra | None = None,
                  prefix: str = "cor.omega") -> LinMap:
    """ω = σ⁻¹⋆γ⋆ρ in the convolution algebra on H⊗H, checked as a 2-cocycle on ``on`` (default H)."""
    H = t.H
    HH = _tensor_coalg(H, 2)
    sp = tensor_space(H.space, H.space)
    s = ConvMap(HH, _K, sigma.with_spaces(sp, _K.space))
    si = conv_inverse(s)
    if si is None:
        raise NotACocycle(msg="σ is not convolution invertible")
    w = convolve(convolve(si, ConvMap(HH, _K, t.gamma)), ConvMap(HH, _K, rho.with_spaces(sp, _K.space)))
    try:
        tw = HopfTwist(on or H, w.map)
    except NotACocycle as e:
        raise NotACocycle(msg=str(e)) from e
    rep = tw.verify(prefix)
    if not rep.ok:
        raise NotACocycle(rep)
    return tw.gamma


@dataclass
class OmegaPipeline:
    A_iso: GaloisObjectIso
    Ag_iso: GaloisObjectIso
    omega: LinMap
    composite: LinMap
    report: Report


def omega_pipeline(CP: CrossedProduct, t: HopfTwist, order: str = "stated") -> OmegaPipeline:
    """C(A_γ, H^γ) ≅ C(A,H)^ω for a Galois object A = k#_σH, with ρ read off A_γ.

    ``order='stated'`` uses ω = σ⁻¹⋆γ⋆ρ; ``'reversed'`` uses ρ⋆γ⋆σ⁻¹.
    """
    if order not in ("stated", "reversed"):
        raise ValueError(f"unknown ω ordering {order!r}")
    rep = Report()
    if CP.B.dim != 1:
        raise NotGaloisObject(f"dim B = {CP.B.dim}")
    H = CP.H
    Aiso = galois_object_iso(CP, prefix="cor.omega.A")
    rep.extend(Aiso.report)
    CAg = cotwist_comodule_algebra(CP.total, t)
    Hg = CAg.hopf
    # cleaving map of A_γ: the same 1#h, convolution-inverted in Hom(H^γ, A_γ)
    jmap = LinMap(H.space, CAg.alg.space, [CP.bh(CP.B.unit, {h: ONE}) for h in range(H.dim)])
    CPg, theta = from_cleaving(CAg, jmap)
    rho = CPg.cocycle
    Agiso = galois_object_iso(CPg, prefix="cor.omega.Ag")
    rep.extend(Agiso.report)
    # Θ⊗Θ carries C(CPg, H^γ) onto C(A_γ, H^γ)
    bg_g = es_bialgebroid(build_galois(CAg))
    d = CAg.alg.dim
    tt = tensor(theta, theta)
    tcols = []
    bad = None
    for X in Agiso.bgd.carrier.basis:
        v = tt(X)
        if not bg_g.carrier.contains(v):
            bad = ("Θ⊗Θ leaves the carrier",)
            break
        tcols.append(bg_g.carrier.coords(v))
    rep.add("cor.omega.theta-carrier", bad)
    if bad:
        raise IsoFailure("theta", rep)
    theta_c = LinMap(Agiso.bgd.L.space, bg_g.L.space, tcols)

    sp = tensor_space(H.space, H.space)
    sig = CP.cocycle.sigma.with_spaces(sp, _K.space)
    rho_m = rho.sigma.with_spaces(sp, _K.space)
    Hs = Aiso.Hg
    if order == "stated":
        omega = omega_compose(sig, t, rho_m, on=Hs)
    else:
        HH = _tensor_coalg(H, 2)
        si = conv_inverse(ConvMap(HH, _K, sig)).map
        w = convolve(convolve(ConvMap(HH, _K, rho_m), ConvMap(HH, _K, t.gamma)), ConvMap(HH, _K, si)).map
        tw = HopfTwist(Hs, w)
        r = tw.verify("cor.omega")
        if not r.ok:
            raise NotACocycle(r)
        omega = tw.gamma
    wt = HopfTwist(Hs, omega)
    rep.extend(wt.verify("cor.omega.cocycle"))
    # ω carried to C(A,H) through the iso H^σ → C(A,H)
    bgA = Aiso.bgd
    inv = inverse(Aiso.iso)
    dl = bgA.dim
    dh = H.dim
    vcols, icols = [], []
    for X in range(dl):
        for Y in range(dl):
            v = vtensor(inv.cols[X], inv.cols[Y], dh)
            vcols.append(omega(v))
            icols.append(wt.gamma_inv(v))
    om = BgdCocycle(bgA, LinMap(tensor_space(bgA.L.space, bgA.L.space), _K.space, vcols),
                    LinMap(tensor_space(bgA.L.space, bgA.L.space), _K.space, icols))
    rep.extend(om.verify("cor.omega.on-C"))
    twisted = twist_bialgebroid(bgA, om, check=False)
    rep.flags["omega_changes_product"] = twisted.L.table != bgA.L.table
    # composite: C(A,H)^ω → H^σ → (H^γ)^ρ → C(CPg, H^γ) → C(A_γ, H^γ)
    composite = theta_c @ Agiso.iso @ inv
    rep.extend(verify_phi(composite, twisted, bg_g, prefix="cor.omega.iso"))
    return OmegaPipeline(Aiso, Agiso, omega, composite, rep)
