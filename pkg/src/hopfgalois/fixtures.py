"""Built-in fixtures and the loader that turns presentation blocks into objects."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources

from .comod import ComoduleAlgebra, Measuring, trivial_action
from .cotwist import HopfTwist
from .crossed import CocycleOnH, CrossedProduct, crossed_product
from .hopf import FinAlgebra, HopfAlgebra, field_algebra
from .linalg import BasedSpace, LinMap, Vec, tensor_space
from .presentation import Entry, ParseError, Presentation, UndeclaredLabel, parse_presentations
from .scalars import ONE, Scalar

__all__ = [
    "Fixture",
    "FixtureSet",
    "UnknownFixture",
    "conductor_override",
    "load_text",
    "builtin_fixtures",
    "builtin_text",
    "dump_hopf",
    "dump_bilinear",
    "dump_measuring",
]

CONDUCTOR_ENV = "HOPFGALOIS_CONDUCTOR"


class UnknownFixture(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown fixture {name!r}")


def conductor_override() -> int | None:
    raw = os.environ.get(CONDUCTOR_ENV)
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{CONDUCTOR_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{CONDUCTOR_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass
class Fixture:
    """A named verification target: a Hopf algebra, optionally with an extension and a twist."""

    name: str
    hopf: HopfAlgebra
    measuring: Measuring | None = None
    sigma: LinMap | None = None
    comodule: ComoduleAlgebra | None = None
    twist_values: LinMap | None = None
    hidden: bool = False

    @property
    def kind(self) -> str:
        if self.measuring is not None:
            return "crossed"
        if self.comodule is not None:
            return "comodule"
        return "hopf"

    @cached_property
    def cocycle(self) -> CocycleOnH:
        return CocycleOnH(self.measuring, self.sigma)

    @cached_property
    def crossed(self) -> CrossedProduct:
        return crossed_product(self.measuring, self.cocycle)

    @cached_property
    def total(self) -> ComoduleAlgebra:
        if self.kind == "crossed":
            return self.crossed.total
        if self.kind == "comodule":
            return self.comodule
        H = self.hopf
        return ComoduleAlgebra(H.alg, H, H.coproduct)

    @cached_property
    def twist(self) -> HopfTwist | None:
        if self.twist_values is None:
            return None
        return HopfTwist(self.hopf, self.twist_values)

    @property
    def is_galois_object(self) -> bool:
        return self.kind == "crossed" and self.measuring.target.dim == 1


# ---------------------------------------------------------------------------
# materialising presentation blocks


def _check_scalar(x: Scalar, entry: Entry, conductor: int | None):
    if conductor is not None and conductor % x.minimal().n:
        raise ParseError(entry.line, entry.col, f"a scalar in Q(zeta({conductor}))", str(x))


def _vec(entry: Entry, labels: tuple[str, ...], unit: Vec | None, conductor, factors=None) -> Vec:
    """Entry value as a vector; ``factors`` gives the label tuples of tensor factors."""
    acc: Vec = {}
    for c, mono in entry.terms:
        _check_scalar(c, entry, conductor)
        if not mono:
            if unit is None:
                raise ParseError(entry.line, entry.col, "a basis element, not a bare scalar")
            for k, x in unit.items():
                acc[k] = acc.get(k, 0) + c * x
            continue
        if factors is None:
            if mono[0] not in labels:
                raise UndeclaredLabel(mono[0], entry.line, entry.col)
            k = labels.index(mono[0])
        else:
            k = 0
            for lab, fac in zip(mono, factors):
                if lab not in fac:
                    raise UndeclaredLabel(lab, entry.line, entry.col)
                k = k * len(fac) + fac.index(lab)
        acc[k] = acc.get(k, 0) + c
    return {k: x for k, x in acc.items() if x}


def _unit_of(p: Presentation) -> Vec:
    if p.unit_terms is None:
        raise ParseError(p.line, 1, "a unit line")
    acc: Vec = {}
    for c, mono in p.unit_terms:
        k = p.basis.index(mono[0])
        acc[k] = acc.get(k, 0) + c
    return {k: x for k, x in acc.items() if x}


def _unit_index(p: Presentation) -> int | None:
    """Basis index of the unit when it is a basis element; products with it are implied."""
    return None if p.unit is None else p.basis.index(p.unit)


def _algebra(p: Presentation, conductor) -> FinAlgebra:
    V = BasedSpace(p.basis)
    unit = _unit_of(p)
    u = _unit_index(p)
    table = {}
    for e in p.section("mult"):
        i, j = p.basis.index(e.args[0]), p.basis.index(e.args[1])
        if (i, j) in table:
            raise ParseError(e.line, e.col, "one entry per pair", f"mult({e.args[0]},{e.args[1]})")
        table[i, j] = _vec(e, p.basis, unit, conductor)

    def prod(i, j):
        if (i, j) in table:
            return table[i, j]
        if i == u:
            return {j: ONE}
        if j == u:
            return {i: ONE}
        return {}

    return FinAlgebra.from_table(V, prod, unit)


def _hopf(p: Presentation, conductor) -> HopfAlgebra:
    alg = _algebra(p, conductor)
    V = alg.space
    d = alg.dim
    u = _unit_index(p)
    unit = alg.unit
    K = field_algebra()

    def per_basis(section, default, **kw):
        vals = {}
        for e in p.section(section):
            i = p.basis.index(e.args[0])
            if i in vals:
                raise ParseError(e.line, e.col, "one entry per basis element", f"{section}({e.args[0]})")
            vals[i] = kw["conv"](e)
        return [vals.get(i, default(i)) for i in range(d)]

    # with a non-basis unit every coproduct, counit and antipode value must be listed
    cop = per_basis("coproduct", lambda i: {u * d + u: ONE} if i == u else {},
                    conv=lambda e: _vec(e, p.basis, None, conductor, factors=(p.basis, p.basis)))
    cnt = per_basis("counit", lambda i: {0: ONE} if i == u else {},
                    conv=lambda e: _vec(e, ("1",), {0: ONE}, conductor))
    ant = per_basis("antipode", lambda i: {u: ONE} if i == u else {},
                    conv=lambda e: _vec(e, p.basis, unit, conductor))
    return HopfAlgebra(
        alg,
        LinMap(V, tensor_space(V, V), cop),
        LinMap(V, K.space, cnt),
        LinMap(V, V, ant),
        name=p.name,
    )


class FixtureSet:
    """Objects and fixtures materialised from presentation files."""

    def __init__(self):
        self.objects: dict[str, object] = {"field": field_algebra()}
        self.fixtures: dict[str, Fixture] = {}
        self._measuring_spaces: dict[str, tuple] = {}

    def labels(self, kind: str, name: str):
        if kind == "measuring":
            return self._measuring_spaces.get(name)
        obj = self.objects.get(name)
        if isinstance(obj, HopfAlgebra):
            return obj.space.labels
        if isinstance(obj, FinAlgebra):
            return obj.space.labels
        return None

    def _algebra_named(self, name: str, p: Presentation):
        obj = self.objects.get(name)
        if isinstance(obj, HopfAlgebra):
            return obj.alg
        if isinstance(obj, FinAlgebra):
            return obj
        raise UndeclaredLabel(name, p.line, 1)

    def _hopf_named(self, name: str, p: Presentation) -> HopfAlgebra:
        obj = self.objects.get(name)
        if not isinstance(obj, HopfAlgebra):
            raise UndeclaredLabel(name, p.line, 1)
        return obj

    def load(self, text: str, hidden: bool = False) -> list[str]:
        """Parse and materialise a file; returns the names of fixtures it defines."""
        conductor = conductor_override()
        blocks = parse_presentations(text, resolve=self.labels)
        added = []
        for p in blocks:
            if p.name in self.objects:
                raise ParseError(p.line, 1, "a fresh name", p.name)
            if p.kind == "hopf":
                H = _hopf(p, conductor)
                self.objects[p.name] = H
                self.fixtures[p.name] = Fixture(p.name, H, hidden=hidden)
                added.append(p.name)
            elif p.kind == "algebra":
                self.objects[p.name] = _algebra(p, conductor)
            elif p.kind == "measuring":
                H = self._hopf_named(p.params["hopf"], p)
                B = self._algebra_named(p.params["algebra"], p)
                self._measuring_spaces[p.name] = (H.space.labels, B.space.labels)
                given = {}
                for e in p.section("action"):
                    h, b = H.space.index(e.args[0]), B.space.index(e.args[1])
                    given[h * B.dim + b] = _vec(e, B.space.labels, B.unit, conductor)
                triv = trivial_action(H, B).action.cols
                cols = [given.get(k, triv[k]) for k in range(H.dim * B.dim)]
                M = Measuring(H, B, LinMap(tensor_space(H.space, B.space), B.space, cols))
                self.objects[p.name] = M
            elif p.kind == "cocycle":
                M = self.objects.get(p.params["measuring"])
                if not isinstance(M, Measuring):
                    raise UndeclaredLabel(p.params["measuring"], p.line, 1)
                H, B = M.hopf, M.target
                given = {}
                for e in p.section("sigma"):
                    h, k = H.space.index(e.args[0]), H.space.index(e.args[1])
                    given[h * H.dim + k] = _vec(e, B.space.labels, B.unit, conductor)
                cols = []
                for h in range(H.dim):
                    for k in range(H.dim):
                        x = H.eps[h] * H.eps[k]
                        default = {i: x * y for i, y in B.unit.items()} if x else {}
                        cols.append(given.get(h * H.dim + k, default))
                sigma = LinMap(tensor_space(H.space, H.space), B.space, cols)
                self.objects[p.name] = sigma
                self.fixtures[p.name] = Fixture(p.name, H, measuring=M, sigma=sigma, hidden=hidden)
                added.append(p.name)
            elif p.kind == "comodule_algebra":
                H = self._hopf_named(p.params["hopf"], p)
                A = self._algebra_named(p.params["algebra"], p)
                cols = [{} for _ in range(A.dim)]
                seen = set()
                for e in p.section("coaction"):
                    a = A.space.index(e.args[0])
                    seen.add(a)
                    cols[a] = _vec(e, (), None, conductor, factors=(A.space.labels, H.space.labels))
                missing = [A.space.labels[a] for a in range(A.dim) if a not in seen]
                if missing:
                    raise ParseError(p.line, 1, f"coaction({missing[0]}) = ...")
                CA = ComoduleAlgebra(A, H, LinMap(A.space, tensor_space(A.space, H.space), cols))
                self.objects[p.name] = CA
                self.fixtures[p.name] = Fixture(p.name, H, comodule=CA, hidden=hidden)
                added.append(p.name)
            elif p.kind == "hopf_twist":
                H = self._hopf_named(p.params["hopf"], p)
                K = field_algebra()
                given = {}
                for e in p.section("gamma"):
                    h, k = H.space.index(e.args[0]), H.space.index(e.args[1])
                    given[h * H.dim + k] = _vec(e, ("1",), {0: ONE}, conductor)
                cols = []
                for h in range(H.dim):
                    for k in range(H.dim):
                        x = H.eps[h] * H.eps[k]
                        cols.append(given.get(h * H.dim + k, {0: x} if x else {}))
                gm = LinMap(tensor_space(H.space, H.space), K.space, cols)
                self.objects[p.name] = gm
                target = p.params.get("for")
                if target is not None:
                    fx = self.fixtures.get(target)
                    if fx is None:
                        raise UndeclaredLabel(target, p.line, 1)
                    if fx.hopf is not H:
                        raise ParseError(p.line, 1, f"a twist over {fx.hopf.name}", H.name)
                    fx.twist_values = gm
        return added

    def get(self, name: str) -> Fixture:
        fx = self.fixtures.get(name)
        if fx is None:
            raise UnknownFixture(name)
        return fx

    def visible(self) -> list[str]:
        return [n for n, f in self.fixtures.items() if not f.hidden]


def builtin_text(name: str = "builtin.hg") -> str:
    return resources.files("hopfgalois").joinpath("data", name).read_text(encoding="utf-8")


def builtin_fixtures() -> FixtureSet:
    fs = FixtureSet()
    fs.load(builtin_text("builtin.hg"))
    fs.load(builtin_text("corrupted.hg"), hidden=True)
    return fs


def load_text(text: str, base: FixtureSet | None = None) -> tuple[FixtureSet, list[str]]:
    """Load user presentations on top of the built-ins (or ``base``)."""
    fs = base if base is not None else builtin_fixtures()
    return fs, fs.load(text)


# ---------------------------------------------------------------------------
# writing presentation blocks


def _fmt_vec(v: Vec, labels) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        x = v[k].minimal()
        lab = labels(k)
        s = str(x)
        if x == ONE:
            term = lab
        elif x == -ONE:
            term = "-" + lab
        elif x.is_rational():
            term = f"{s}*{lab}"
        else:
            term = f"({s})*{lab}"
        parts.append(term)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _fmt_scalar_val(v: Vec) -> str:
    x = v.get(0)
    if not x:
        return "0"
    return str(x.minimal())


def dump_hopf(H: HopfAlgebra, name: str) -> str:
    """Presentation block for H, listing every non-default entry."""
    labs = H.space.labels
    d = H.dim
    if len(H.unit) == 1 and next(iter(H.unit.values())) == ONE:
        u = next(iter(H.unit))
        unit_line = labs[u]
    else:
        u = None
        unit_line = _fmt_vec(H.unit, lambda k: labs[k])
    lines = [f"hopf {name}", "basis " + " ".join(labs), f"unit {unit_line}"]
    for i in range(d):
        for j in range(d):
            if i == u or j == u:
                continue
            v = H.alg.table[i][j]
            lines.append(f"mult({labs[i]},{labs[j]}) = {_fmt_vec(v, lambda k: labs[k])}")
    for i in range(d):
        if i == u:
            continue
        v = H.coproduct.cols[i]
        lines.append(f"coproduct({labs[i]}) = {_fmt_vec(v, lambda k: labs[k // d] + '@' + labs[k % d])}")
    for i in range(d):
        if i != u and H.counit.cols[i]:
            lines.append(f"counit({labs[i]}) = {_fmt_scalar_val(H.counit.cols[i])}")
    for i in range(d):
        if i != u:
            lines.append(f"antipode({labs[i]}) = {_fmt_vec(H.antipode.cols[i], lambda k: labs[k])}")
    return "\n".join(lines) + "\n"


def dump_bilinear(kind: str, name: str, header: str, section: str, m: LinMap, H: HopfAlgebra,
                  target_labels=None, skip_default: bool = True) -> str:
    """Block for a bilinear map on H (σ with B-values, or γ with scalar values)."""
    labs = H.space.labels
    d = H.dim
    lines = [f"{kind} {name} {header}".rstrip()]
    for i in range(d):
        for j in range(d):
            v = m.cols[i * d + j]
            x = H.eps[i] * H.eps[j]
            if target_labels is None:
                default = {0: x} if x else {}
                if skip_default and v == default:
                    continue
                lines.append(f"{section}({labs[i]},{labs[j]}) = {_fmt_scalar_val(v)}")
            else:
                unit_default = {0: x} if x else {}
                if skip_default and v == unit_default:
                    continue
                lines.append(f"{section}({labs[i]},{labs[j]}) = {_fmt_vec(v, lambda k: target_labels[k])}")
    return "\n".join(lines) + "\n"


def dump_measuring(name: str, hopf_name: str, alg_name: str, M: Measuring) -> str:
    H, B = M.hopf, M.target
    triv = trivial_action(H, B).action.cols
    lines = [f"measuring {name} hopf={hopf_name} algebra={alg_name}"]
    for h in range(H.dim):
        for b in range(B.dim):
            v = M.table[h][b]
            if v != triv[h * B.dim + b]:
                lines.append(f"action({H.space.labels[h]},{B.space.labels[b]}) = "
                             f"{_fmt_vec(v, lambda k: B.space.labels[k])}")
    return "\n".join(lines) + "\n"
