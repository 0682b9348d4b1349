"""Unital cocycles, smash and crossed products B#_σH."""

from __future__ import annotations

import itertools
from functools import cached_property

from .comod import ComoduleAlgebra, Measuring, SubAlgebra, verify_measuring
from .hopf import Coalgebra, ConvMap, FinAlgebra, HopfAlgebra, conv_inverse, conv_unit, convolve
from .linalg import LinMap, Vec, axpy, space, tensor_space, vtensor, BasedSpace, Echelon
from .report import Report
from .scalars import ONE, Scalar, zeta

__all__ = [
    "CocycleOnH",
    "CrossedProduct",
    "NotInvertible",
    "NotModuleAlgebra",
    "NotAssociative",
    "AnsatzTooLarge",
    "trivial_cocycle",
    "cocycle_from_table",
    "coboundary_cocycle",
    "smash_product",
    "crossed_product",
    "verify_sigma_properties",
    "solve_unital_cocycles",
    "lemma_conditions",
]


class NotInvertible(ValueError):
    pass


class NotModuleAlgebra(ValueError):
    pass


class NotAssociative(ValueError):
    def __init__(self, failing_conditions, report=None):
        self.failing_conditions = tuple(failing_conditions)
        self.report = report
        names = ", ".join(self.failing_conditions) or "none of (1)-(4)"
        super().__init__(f"crossed product is not associative and unital; failing: {names}")


class AnsatzTooLarge(ValueError):
    pass


def _tensor_coalg(H: HopfAlgebra, n: int) -> Coalgebra:
    cache = H.__dict__.setdefault("_tensor_coalg", {})
    if n not in cache:
        C = H.coalg
        for _ in range(n - 1):
            C = C.tensor(H.coalg)
        cache[n] = C
    return cache[n]


class CocycleOnH:
    """σ: H⊗H → B over a measuring, with its convolution inverse."""

    def __init__(self, measuring: Measuring, sigma: LinMap, sigma_inv: LinMap | None = None):
        H, B = measuring.hopf, measuring.target
        self.measuring = measuring
        self.hopf = H
        self.B = B
        self.sigma = sigma.with_spaces(tensor_space(H.space, H.space), B.space)
        HH = _tensor_coalg(H, 2)
        inv = conv_inverse(ConvMap(HH, B, self.sigma))
        if inv is None:
            raise NotInvertible("σ has no convolution inverse in Hom(H⊗H, B)")
        if sigma_inv is not None and sigma_inv.cols != inv.map.cols:
            raise NotInvertible("stored σ⁻¹ is not the convolution inverse of σ")
        self.sigma_inv = inv.map.with_spaces(self.sigma.domain, B.space)

    def s(self, h: int, k: int) -> Vec:
        return self.sigma.cols[h * self.hopf.dim + k]

    def si(self, h: int, k: int) -> Vec:
        return self.sigma_inv.cols[h * self.hopf.dim + k]

    def s_vec(self, h: Vec, k: Vec) -> Vec:
        return self.sigma(vtensor(h, k, self.hopf.dim))

    def si_vec(self, h: Vec, k: Vec) -> Vec:
        return self.sigma_inv(vtensor(h, k, self.hopf.dim))

    @cached_property
    def center_valued(self) -> bool:
        B = self.B
        return all(B.commutes_with_all(v) for v in self.sigma.cols) and all(
            B.commutes_with_all(v) for v in self.sigma_inv.cols
        )

    @cached_property
    def is_trivial(self) -> bool:
        return self.sigma == trivial_cocycle(self.measuring).sigma

    def verify(self) -> Report:
        """Invertibility and the four Lemma conditions."""
        rep = Report()
        HH = _tensor_coalg(self.hopf, 2)
        u = conv_unit(HH, self.B).map
        f, g = ConvMap(HH, self.B, self.sigma), ConvMap(HH, self.B, self.sigma_inv)
        j = convolve(f, g).map.first_mismatch(u)
        if j is None:
            j = convolve(g, f).map.first_mismatch(u)
        rep.add("cocycle.invertible", None if j is None else HH.space.witness(j))
        rep.extend(lemma_conditions(self.measuring, self))
        rep.flags["center_valued"] = self.center_valued
        return rep

    def __repr__(self):
        return f"CocycleOnH(H={self.hopf.name}, dim B={self.B.dim})"


def trivial_cocycle(M: Measuring) -> CocycleOnH:
    H, B = M.hopf, M.target
    cols = []
    for h in range(H.dim):
        for k in range(H.dim):
            e = H.eps[h] * H.eps[k]
            cols.append({i: x * e for i, x in B.unit.items()} if e else {})
    return CocycleOnH(M, LinMap(tensor_space(H.space, H.space), B.space, cols))


def cocycle_from_table(M: Measuring, entries: dict) -> CocycleOnH:
    """entries: {(h_label, k_label): B-vector}; missing entries default to ε(h)ε(k)1."""
    H, B = M.hopf, M.target
    cols = []
    for h in range(H.dim):
        for k in range(H.dim):
            key = (H.space.labels[h], H.space.labels[k])
            if key in entries:
                cols.append(dict(entries[key]))
            else:
                e = H.eps[h] * H.eps[k]
                cols.append({i: x * e for i, x in B.unit.items()} if e else {})
    return CocycleOnH(M, LinMap(tensor_space(H.space, H.space), B.space, cols))


def coboundary_cocycle(M: Measuring, gamma: LinMap) -> CocycleOnH:
    """σ(h,k) = γ(h1)γ(k1)γ⁻¹(h2k2) for a field-valued convolution-invertible γ with γ(1)=1.

    Requires a trivial action and B = field so that the result is a unital cocycle.
    """
    H, B = M.hopf, M.target
    if B.dim != 1 or not M.is_trivial:
        raise ValueError("coboundary cocycles are built for B = field with trivial action")
    g = ConvMap(H.coalg, B, gamma.with_spaces(H.space, B.space))
    gi = conv_inverse(g)
    if gi is None:
        raise NotInvertible("γ is not convolution invertible")
    sw = H.sweedler(2)
    cols = []
    for h in range(H.dim):
        for k in range(H.dim):
            acc = Scalar.rational(0)
            for (h1, h2), x in sw[h].items():
                for (k1, k2), y in sw[k].items():
                    prod = H.alg.table[h2][k2]
                    v = gi.map(prod).get(0)
                    if v:
                        acc = acc + x * y * g.map.cols[h1].get(0, 0) * g.map.cols[k1].get(0, 0) * v
            cols.append({0: acc} if acc else {})
    return CocycleOnH(M, LinMap(tensor_space(H.space, H.space), B.space, cols))


# ---------------------------------------------------------------------------
# condition checks


def _on_triples(H: HopfAlgebra, B: FinAlgebra, fn) -> LinMap:
    d = H.dim
    H3 = _tensor_coalg(H, 3)
    return LinMap.from_function(H3.space, B.space, lambda j: fn(j // (d * d), (j // d) % d, j % d))


def _conv(H: HopfAlgebra, B: FinAlgebra, *maps: LinMap) -> LinMap:
    C = _tensor_coalg(H, 3)
    out = ConvMap(C, B, maps[0])
    for m in maps[1:]:
        out = convolve(out, ConvMap(C, B, m))
    return out.map


def _compare(rep: Report, check_id: str, lhs: LinMap, rhs: LinMap):
    j = lhs.first_mismatch(rhs)
    rep.add(check_id, None if j is None else lhs.domain.witness(j))


def lemma_conditions(M: Measuring, c: CocycleOnH) -> Report:
    """Conditions (1)-(4) for the crossed product, each on all basis tuples."""
    rep = Report()
    H, B = M.hopf, M.target
    d, db = H.dim, B.dim
    bad = next((B.space.witness(b) for b in range(db) if M.act(H.unit, {b: ONE}) != {b: ONE}), None)
    rep.add("lemma.twisted-smash.cond1", bad)

    sw3 = H.sweedler(3)
    bad = None
    for h, k, b in itertools.product(range(d), range(d), range(db)):
        lhs = M.act_basis(h, M.act_basis(k, {b: ONE}))
        rhs: Vec = {}
        for (h1, h2, h3), x in sw3[h].items():
            for (k1, k2, k3), y in sw3[k].items():
                mid = M.act(H.alg.table[h2][k2], {b: ONE})
                if not mid:
                    continue
                axpy(rhs, x * y, B.mul(B.mul(c.s(h1, k1), mid), c.si(h3, k3)))
        if lhs != rhs:
            bad = (H.space.labels[h], H.space.labels[k], B.space.labels[b])
            break
    rep.add("lemma.twisted-smash.cond2", bad)

    bad = None
    for h in range(d):
        e = H.eps[h]
        want = {i: x * e for i, x in B.unit.items()} if e else {}
        for v in (c.s_vec({h: ONE}, H.unit), c.s_vec(H.unit, {h: ONE})):
            if v != want:
                bad = (H.space.labels[h],)
        if bad:
            break
    rep.add("lemma.twisted-smash.cond3", bad)

    lhs = _conv(
        H, B,
        _on_triples(H, B, lambda h, k, m: M.act_basis(h, c.s(k, m))),
        _on_triples(H, B, lambda h, k, m: c.sigma(vtensor({h: ONE}, H.alg.table[k][m], d))),
    )
    rhs = _conv(
        H, B,
        _on_triples(H, B, lambda h, k, m: _eps_scale(H, m, c.s(h, k))),
        _on_triples(H, B, lambda h, k, m: c.sigma(vtensor(H.alg.table[h][k], {m: ONE}, d))),
    )
    _compare(rep, "lemma.twisted-smash.cond4", lhs, rhs)
    return rep


def _eps_scale(H: HopfAlgebra, m: int, v: Vec) -> Vec:
    e = H.eps[m]
    return {i: x * e for i, x in v.items()} if e else {}


def verify_sigma_properties(c: CocycleOnH) -> Report:
    """Properties (1)-(4) of a unital cocycle, checked exhaustively."""
    rep = Report()
    M, H, B = c.measuring, c.hopf, c.B
    d = H.dim
    tab = H.alg.table

    def s_hk_m(fn):
        return _on_triples(H, B, lambda h, k, m: fn(vtensor(tab[h][k], {m: ONE}, d)))

    def s_h_km(fn):
        return _on_triples(H, B, lambda h, k, m: fn(vtensor({h: ONE}, tab[k][m], d)))

    s_hk_eps = _on_triples(H, B, lambda h, k, m: _eps_scale(H, m, c.s(h, k)))
    si_hk_eps = _on_triples(H, B, lambda h, k, m: _eps_scale(H, m, c.si(h, k)))

    lhs = _conv(H, B, s_h_km(c.sigma_inv), _on_triples(H, B, lambda h, k, m: M.act_basis(h, c.si(k, m))))
    rhs = _conv(H, B, s_hk_m(c.sigma_inv), si_hk_eps)
    _compare(rep, "prop.unital-twist.1", lhs, rhs)

    lhs = _on_triples(H, B, lambda h, k, m: M.act_basis(h, c.s(k, m)))
    rhs = _conv(H, B, s_hk_eps, s_hk_m(c.sigma), s_h_km(c.sigma_inv))
    _compare(rep, "prop.unital-twist.2", lhs, rhs)

    lhs = _on_triples(H, B, lambda h, k, m: M.act_basis(h, c.si(k, m)))
    rhs = _conv(H, B, s_h_km(c.sigma), s_hk_m(c.sigma_inv), si_hk_eps)
    _compare(rep, "prop.unital-twist.3", lhs, rhs)

    bad = None
    S = H.antipode.cols
    sw5 = H.sweedler(5)
    for h in range(d):
        acc: Vec = {}
        for (h1, h2, h3, h4, h5), x in sw5[h].items():
            left = M.act_basis(h1, c.si_vec(S[h4], {h5: ONE}))
            if left:
                axpy(acc, x, B.mul(left, c.s_vec({h2: ONE}, S[h3])))
        if acc != _eps_scale(H, h, B.unit):
            bad = (H.space.labels[h],)
            break
    rep.add("prop.unital-twist.4", bad)
    return rep


# ---------------------------------------------------------------------------
# crossed products


class CrossedProduct:
    """B#_σH on the carrier B⊗H, with the coaction b#h ↦ b#h1⊗h2."""

    def __init__(self, M: Measuring, cocycle: CocycleOnH, total: ComoduleAlgebra):
        self.measuring = M
        self.B = M.target
        self.H = M.hopf
        self.cocycle = cocycle
        self.total = total

    @property
    def A(self) -> FinAlgebra:
        return self.total.alg

    def bh(self, b: Vec, h: Vec) -> Vec:
        return vtensor(b, h, self.H.dim)

    def split(self, v: Vec):
        dh = self.H.dim
        return [(divmod(k, dh), x) for k, x in v.items()]

    @property
    def is_smash(self) -> bool:
        return self.cocycle.is_trivial

    def __repr__(self):
        return f"CrossedProduct(dim B={self.B.dim}, dim H={self.H.dim})"


def _crossed_algebra(M: Measuring, c: CocycleOnH) -> FinAlgebra:
    H, B = M.hopf, M.target
    dh = H.dim
    V = tensor_space(B.space, H.space, sep="#")
    sw3, sw2 = H.sweedler(3), H.sweedler(2)

    def prod(p, q):
        (b, h), (b2, k) = divmod(p, dh), divmod(q, dh)
        acc: Vec = {}
        for (h1, h2, h3), x in sw3[h].items():
            moved = M.act_basis(h1, {b2: ONE})
            if not moved:
                continue
            left = B.mul({b: ONE}, moved)
            for (k1, k2), y in sw2[k].items():
                bb = B.mul(left, c.s(h2, k1))
                if bb:
                    axpy(acc, x * y, vtensor(bb, H.alg.table[h3][k2], dh))
        return acc

    return FinAlgebra.from_table(V, prod, vtensor(B.unit, H.unit, dh))


def crossed_product(M: Measuring, c: CocycleOnH) -> CrossedProduct:
    """Build B#_σH; on failure the error names which Lemma conditions fail."""
    if c.measuring is not M and (c.hopf is not M.hopf or c.B is not M.target):
        raise ValueError("cocycle is defined over a different measuring")
    meas = verify_measuring(M)
    if not meas.ok:
        raise ValueError(f"action is not a measuring: {[f.id for f in meas.failures]}")
    A = _crossed_algebra(M, c)
    alg_rep = A.verify(prefix="crossed")
    if not alg_rep.ok:
        conds = lemma_conditions(M, c)
        failing = [f.id.rsplit(".", 1)[1] for f in conds.failures]
        raise NotAssociative(failing, alg_rep.extend(conds))
    H, B = M.hopf, M.target
    dh = H.dim
    cols = []
    for p in range(A.dim):
        b, h = divmod(p, dh)
        acc: Vec = {}
        for (h1, h2), x in H.sweedler(2)[h].items():
            acc[(b * dh + h1) * dh + h2] = x
        cols.append(acc)
    coaction = LinMap(A.space, tensor_space(A.space, H.space), cols)
    base = SubAlgebra(A, [vtensor({b: ONE}, H.unit, dh) for b in range(B.dim)], B.space.labels)
    total = ComoduleAlgebra(A, H, coaction, base)
    return CrossedProduct(M, c, total)


def smash_product(M: Measuring) -> CrossedProduct:
    if not M.is_module_algebra:
        raise NotModuleAlgebra("the action is not a module-algebra action")
    return crossed_product(M, trivial_cocycle(M))


# ---------------------------------------------------------------------------
# cocycle solver


class _Poly:
    """Polynomial in scalar unknowns: {sorted var tuple: Scalar}."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = terms or {}

    @staticmethod
    def const(c):
        return _Poly({(): c} if c else {})

    @staticmethod
    def var(i):
        return _Poly({(i,): ONE})

    def __bool__(self):
        return bool(self.t)

    def _add(self, other, sign):
        out = dict(self.t)
        other = other if isinstance(other, _Poly) else _Poly.const(other)
        for m, c in other.t.items():
            v = out.get(m)
            v = sign * c if v is None else v + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _Poly(out)

    def __add__(self, other):
        return self._add(other, ONE)

    __radd__ = __add__

    def __sub__(self, other):
        return self._add(other, -ONE)

    def __neg__(self):
        return _Poly({m: -c for m, c in self.t.items()})

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            if not other:
                return _Poly()
            return _Poly({m: c * other for m, c in self.t.items()})
        out: dict = {}
        for m1, c1 in self.t.items():
            for m2, c2 in other.t.items():
                m = tuple(sorted(m1 + m2))
                v = out.get(m)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return _Poly(out)

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((len(m) for m in self.t), default=0)

    def vars(self) -> set:
        return {v for m in self.t for v in m}

    def subst(self, values: dict) -> "_Poly":
        out: dict = {}
        for m, c in self.t.items():
            rest = []
            for v in m:
                if v in values:
                    c = c * values[v]
                    if not c:
                        break
                else:
                    rest.append(v)
            if not c:
                continue
            key = tuple(rest)
            w = out.get(key)
            w = c if w is None else w + c
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return _Poly(out)

    def subst_linear(self, var: int, expr: "_Poly") -> "_Poly":
        out = _Poly()
        for m, c in self.t.items():
            k = m.count(var)
            rest = _Poly({tuple(v for v in m if v != var): c})
            for _ in range(k):
                rest = rest * expr
            out = out + rest
        return out


def _unit_candidates(conductor: int):
    return [zeta(conductor, k) if conductor > 1 else ONE for k in range(conductor)] + (
        [-ONE] if conductor % 2 else []
    )


def solve_unital_cocycles(
    M: Measuring,
    fixed: dict | None = None,
    candidates=None,
    conductor: int = 2,
    max_params: int = 24,
    max_solutions: int = 64,
) -> list[CocycleOnH]:
    """Unital cocycles σ: H⊗H → B whose free coordinates take candidate values.

    Unitality and any ``fixed`` entries ({(h_label, k_label): B-vector}) are imposed
    linearly.  The remaining coordinates are found by branching: group-like pairs
    first, then whichever unknown occurs most, each time propagating the cocycle
    equations that have become linear.  Candidates default to 0 and the roots of
    unity of ``conductor``.  For group algebras with commutative B this enumerates
    every solution with coordinates among the candidates; elsewhere it is a
    best-effort search.  Results are filtered through the full CocycleOnH checks.
    """
    H, B = M.hopf, M.target
    d, db = H.dim, B.dim
    fixed = fixed or {}
    if candidates is None:
        candidates = [Scalar.rational(0)] + _unit_candidates(conductor)
    n_vars = d * d * db

    # linear constraints: unitality and fixed entries
    lin: list[tuple[Vec, Scalar]] = []
    for h in range(d):
        want = _eps_scale(H, h, B.unit)
        for side in (0, 1):
            coeff = H.unit
            for bi in range(db):
                row: Vec = {}
                for u, x in coeff.items():
                    key = (h * d + u) if side == 0 else (u * d + h)
                    row[key * db + bi] = row.get(key * db + bi, 0) + x
                lin.append(({k: v for k, v in row.items() if v}, want.get(bi, Scalar.rational(0))))
    for (hl, kl), v in fixed.items():
        key = H.space.index(hl) * d + H.space.index(kl)
        for bi in range(db):
            lin.append(({key * db + bi: ONE}, v.get(bi, Scalar.rational(0))))

    # eliminate with an augmented column n_vars holding the constant
    ech = Echelon(track=False)
    for row, val in lin:
        aug = dict(row)
        if val:
            aug[n_vars] = -val
        ech.add(aug)
    if n_vars in ech.rows:
        return []
    values: dict[int, _Poly] = {}
    pivots = set(ech.rows)
    free = [v for v in range(n_vars) if v not in pivots]
    if len(free) > max_params:
        raise AnsatzTooLarge(f"{len(free)} free coordinates exceed the bound {max_params}")
    for p, row in ech.rows.items():
        expr = _Poly()
        for k, x in row.items():
            if k == p:
                continue
            expr = expr - (_Poly.const(x) if k == n_vars else _Poly.var(k) * x)
        values[p] = expr
    for v in free:
        values[v] = _Poly.var(v)

    sig = [[{bi: values[(h * d + k) * db + bi] for bi in range(db) if values[(h * d + k) * db + bi]}
            for k in range(d)] for h in range(d)]

    def sv(hv: Vec, kv: Vec) -> Vec:
        acc: Vec = {}
        for h, x in hv.items():
            for k, y in kv.items():
                axpy(acc, x * y, sig[h][k])
        return acc

    def act(h: int, v: Vec) -> Vec:
        acc: Vec = {}
        for bi, x in v.items():
            axpy(acc, x, M.table[h][bi])
        return acc

    def bmul(u: Vec, v: Vec) -> Vec:
        acc: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, z in B.table[i][j].items():
                    w = acc.get(k)
                    w = x * y * z if w is None else w + x * y * z
                    if w:
                        acc[k] = w
                    else:
                        acc.pop(k, None)
        return acc

    eqs: list[_Poly] = []
    sw2 = H.sweedler(2)
    tab = H.alg.table
    for h, k, m in itertools.product(range(d), repeat=3):
        lhs: Vec = {}
        for (h1, h2), x in sw2[h].items():
            for (k1, k2), y in sw2[k].items():
                for (m1, m2), z in sw2[m].items():
                    a = act(h1, sig[k1][m1])
                    if a:
                        for kk, w in bmul(a, sv({h2: ONE}, tab[k2][m2])).items():
                            lhs[kk] = lhs.get(kk, _Poly()) + w * (x * y * z)
        rhs: Vec = {}
        for (h1, h2), x in sw2[h].items():
            for (k1, k2), y in sw2[k].items():
                a = sig[h1][k1]
                if a:
                    for kk, w in bmul(a, sv(tab[h2][k2], {m: ONE})).items():
                        rhs[kk] = rhs.get(kk, _Poly()) + w * (x * y)
        for kk in set(lhs) | set(rhs):
            e = lhs.get(kk, _Poly()) - rhs.get(kk, _Poly())
            if e:
                eqs.append(e)

    group_pairs = [
        (h * d + k) * db + bi for h in range(d) for k in range(d) if H.grouplike[h] and H.grouplike[k] for bi in range(db)
    ]
    order_hint = [v for v in group_pairs if v in free]
    solutions: list[CocycleOnH] = []
    seen = set()

    def finish(vals):
        full = [values[v].subst(vals) for v in range(n_vars)]
        if any(p.vars() for p in full):
            return
        full = [p.t.get((), Scalar.rational(0)) for p in full]
        cols = [{bi: full[hk * db + bi] for bi in range(db) if full[hk * db + bi]} for hk in range(d * d)]
        key = tuple(tuple(sorted(c.items())) for c in cols)
        if key in seen:
            return
        seen.add(key)
        try:
            c = CocycleOnH(M, LinMap(tensor_space(H.space, H.space), B.space, cols))
        except NotInvertible:
            return
        if c.verify().ok:
            solutions.append(c)

    def propagate(eqs, assign, subs):
        assign, subs = dict(assign), list(subs)
        eqs = [e.subst(assign) for e in eqs]
        while True:
            eqs = [e for e in eqs if e]
            if any(not e.vars() for e in eqs):
                return None
            lin_eq = next((e for e in eqs if e.degree() == 1), None)
            if lin_eq is None:
                return eqs, assign, subs
            var = min(lin_eq.vars())
            coef = lin_eq.t[(var,)]
            expr = _Poly({m: -c / coef for m, c in lin_eq.t.items() if m != (var,)})
            if not expr.vars():
                assign[var] = expr.t.get((), Scalar.rational(0))
                eqs = [e.subst({var: assign[var]}) for e in eqs]
            else:
                subs.append((var, expr))
                eqs = [e.subst_linear(var, expr) for e in eqs]

    def search(eqs, assign, subs):
        if len(solutions) >= max_solutions:
            return
        res = propagate(eqs, assign, subs)
        if res is None:
            return
        eqs, assign, subs = res
        eliminated = {v for v, _ in subs}
        pending = [v for v in free if v not in assign and v not in eliminated]
        if not pending:
            vals = dict(assign)
            for v, expr in reversed(subs):
                vals[v] = expr.subst(vals).t.get((), Scalar.rational(0))
            finish(vals)
            return
        pick = next((v for v in order_hint if v in pending), None)
        if pick is None:
            counts: dict[int, int] = {}
            for e in eqs:
                for m in e.t:
                    for v in m:
                        counts[v] = counts.get(v, 0) + 1
            pick = max(counts, key=lambda v: (counts[v], -v)) if counts else pending[0]
        for c in candidates:
            search(eqs, {**assign, pick: c}, subs)
            if len(solutions) >= max_solutions:
                return

    search(eqs, {}, [])
    return solutions
