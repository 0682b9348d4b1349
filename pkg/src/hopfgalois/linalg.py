"""Based vector spaces, sparse exact linear maps, subspaces and quotients.

Vectors are plain dicts ``{basis index: Scalar}`` with zero entries omitted.
A ``LinMap`` stores the images of the domain basis (its columns).
Everything canonical goes through a reduced row echelon form, so equal
subspaces have identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .scalars import ONE, Scalar, as_scalar

Vec = dict


class ShapeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse vector helpers


def axpy(acc: Vec, c, v: Vec) -> Vec:
    """acc += c*v in place (zero entries dropped)."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k)
        y = c * x if y is None else y + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vadd(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), ONE, v)


def vsub(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), -ONE, v)


def vscale(c, v: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vsum(vs: Iterable[Vec]) -> Vec:
    acc: Vec = {}
    for v in vs:
        axpy(acc, ONE, v)
    return acc


def unit_vec(i: int) -> Vec:
    return {i: ONE}


def vtensor(u: Vec, v: Vec, dim_v: int) -> Vec:
    out: Vec = {}
    for i, x in u.items():
        base = i * dim_v
        for j, y in v.items():
            out[base + j] = x * y
    return out


def vec_from_dense(xs: Sequence) -> Vec:
    out = {}
    for i, x in enumerate(xs):
        x = as_scalar(x)
        if x:
            out[i] = x
    return out


def vec_to_dense(v: Vec, dim: int) -> list:
    return [v.get(i, Scalar.rational(0)) for i in range(dim)]


# ---------------------------------------------------------------------------
# spaces and maps


@dataclass(frozen=True, eq=False)
class BasedSpace:
    labels: tuple
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def __eq__(self, other):
        return isinstance(other, BasedSpace) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"BasedSpace(dim={self.dim})"

    def split(self, idx: int) -> tuple[int, ...]:
        """Multi-index of a basis element of a tensor space."""
        if not self.factors:
            return (idx,)
        out = []
        for f in reversed(self.factors):
            idx, r = divmod(idx, f.dim)
            out.append(r)
        return tuple(reversed(out))

    def witness(self, idx: int) -> tuple[str, ...]:
        if not self.factors:
            return (self.labels[idx],)
        return tuple(f.labels[i] for f, i in zip(self.factors, self.split(idx)))


def space(labels: Iterable) -> BasedSpace:
    return BasedSpace(tuple(labels))


def tensor_space(*spaces: BasedSpace, sep: str = "⊗") -> BasedSpace:
    factors = []
    for s in spaces:
        factors.extend(s.factors if s.factors else (s,))
    labels = [""]
    for s in spaces:
        labels = [a + (sep if a else "") + b for a in labels for b in s.labels]
    return BasedSpace(tuple(labels), tuple(factors))


FIELD = BasedSpace(("1",))


class LinMap:
    """Linear map given by the sparse images of the domain basis."""

    __slots__ = ("domain", "codomain", "cols", "_ech")

    def __init__(self, domain: BasedSpace, codomain: BasedSpace, cols: Sequence[Vec]):
        if len(cols) != domain.dim:
            raise ShapeMismatch(f"{len(cols)} columns for a domain of dim {domain.dim}")
        self.domain = domain
        self.codomain = codomain
        self.cols = tuple(cols)
        self._ech = None

    @classmethod
    def from_function(cls, domain, codomain, fn: Callable[[int], Vec]) -> "LinMap":
        return cls(domain, codomain, [fn(j) for j in range(domain.dim)])

    @classmethod
    def from_dense(cls, domain, codomain, rows: Sequence[Sequence]) -> "LinMap":
        if len(rows) != codomain.dim or any(len(r) != domain.dim for r in rows):
            raise ShapeMismatch("dense matrix does not match the spaces")
        cols = []
        for j in range(domain.dim):
            cols.append(vec_from_dense([rows[i][j] for i in range(codomain.dim)]))
        return cls(domain, codomain, cols)

    @classmethod
    def identity(cls, V: BasedSpace) -> "LinMap":
        return cls(V, V, [{j: ONE} for j in range(V.dim)])

    @classmethod
    def zero(cls, V: BasedSpace, W: BasedSpace) -> "LinMap":
        return cls(V, W, [{} for _ in range(V.dim)])

    def __call__(self, v: Vec) -> Vec:
        acc: Vec = {}
        cols = self.cols
        for j, x in v.items():
            axpy(acc, x, cols[j])
        return acc

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if other.codomain.dim != self.domain.dim:
            raise ShapeMismatch("cannot compose: inner dimensions differ")
        return LinMap(other.domain, self.codomain, [self(c) for c in other.cols])

    def _check_same(self, other):
        if self.domain.dim != other.domain.dim or self.codomain.dim != other.codomain.dim:
            raise ShapeMismatch("maps have different shapes")

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.domain, self.codomain, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.domain, self.codomain, [vsub(a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self):
        return LinMap(self.domain, self.codomain, [vscale(-ONE, c) for c in self.cols])

    def scale(self, c) -> "LinMap":
        c = as_scalar(c)
        return LinMap(self.domain, self.codomain, [vscale(c, v) for v in self.cols])

    def first_mismatch(self, other: "LinMap") -> int | None:
        self._check_same(other)
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (
            self.domain.dim == other.domain.dim
            and self.codomain.dim == other.codomain.dim
            and self.cols == other.cols
        )

    __hash__ = None

    def __repr__(self):
        return f"LinMap({self.codomain.dim}x{self.domain.dim})"

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols[j].get(i, Scalar.rational(0))

    def dense(self) -> list[list[Scalar]]:
        return [[self.entry(i, j) for j in range(self.domain.dim)] for i in range(self.codomain.dim)]

    def is_identity(self) -> bool:
        return self.domain.dim == self.codomain.dim and all(
            c == {j: ONE} for j, c in enumerate(self.cols)
        )

    def echelon(self) -> "Echelon":
        if self._ech is None:
            ech = Echelon(track=True)
            for j, c in enumerate(self.cols):
                ech.add(c, {j: ONE})
            self._ech = ech
        return self._ech

    def rank(self) -> int:
        return self.echelon().rank

    def with_spaces(self, domain=None, codomain=None) -> "LinMap":
        return LinMap(domain or self.domain, codomain or self.codomain, self.cols)


# ---------------------------------------------------------------------------
# elimination


class Echelon:
    """Incremental reduced row echelon form over Scalar.

    ``rows[p]`` has a 1 at its pivot ``p`` and zeros at every other pivot.
    The pivot of a new row is its nonzero column of least priority (column
    index by default), so the result is the canonical RREF of the span.
    With ``track`` each row remembers which combination of the added vectors
    (in their tag coordinates) produced it.
    """

    def __init__(self, track: bool = False, priority: Sequence[int] | None = None):
        self.rows: dict[int, Vec] = {}
        self.combos: dict[int, Vec] = {}
        self.track = track
        self.rank_of = None if priority is None else {c: r for r, c in enumerate(priority)}
        self.relations: list[Vec] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _key(self, c):
        return c if self.rank_of is None else self.rank_of[c]

    def reduce(self, v: Vec) -> tuple[Vec, Vec]:
        """Return (residual, combo) with v = residual + sum combo[t]*vector_t."""
        v = dict(v)
        combo: Vec = {}
        rows = self.rows
        hits = [p for p in v if p in rows]
        for p in hits:
            c = v.get(p)
            if c:
                axpy(v, -c, rows[p])
                if self.track:
                    axpy(combo, c, self.combos[p])
        return v, combo

    def add(self, v: Vec, tag: Vec | None = None) -> int | None:
        """Insert v; returns its new pivot, or None when v was dependent."""
        r, combo = self.reduce(v)
        if self.track:
            combo = axpy(vscale(-ONE, combo), ONE, tag or {})
        if not r:
            if self.track and combo:
                self.relations.append(combo)
            return None
        p = min(r, key=self._key)
        inv = r[p].inverse()
        r = {k: x * inv for k, x in r.items()}
        if self.track:
            combo = {k: x * inv for k, x in combo.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
                if self.track:
                    axpy(self.combos[q], -c, combo)
        self.rows[p] = r
        if self.track:
            self.combos[p] = combo
        return p

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def sorted_rows(self) -> list[tuple[int, Vec]]:
        return sorted(self.rows.items(), key=lambda kv: self._key(kv[0]))


def echelonize(vectors: Iterable[Vec], priority=None) -> Echelon:
    ech = Echelon(priority=priority)
    for v in vectors:
        ech.add(v)
    return ech


# ---------------------------------------------------------------------------
# subspaces and quotients


class Subspace:
    """Subspace of a based space with its canonical RREF basis."""

    def __init__(self, ambient: BasedSpace, vectors: Iterable[Vec] = (), priority=None):
        ech = echelonize(vectors, priority)
        rows = ech.sorted_rows()
        self.ambient = ambient
        self.pivots = tuple(p for p, _ in rows)
        self.basis = tuple(r for _, r in rows)
        self._pivot_pos = {p: i for i, p in enumerate(self.pivots)}
        self.space = BasedSpace(tuple(f"<{ambient.labels[p]}>" for p in self.pivots))
        self.inclusion = LinMap(self.space, ambient, self.basis)
        cols = [{} for _ in range(ambient.dim)]
        for i, p in enumerate(self.pivots):
            cols[p] = {i: ONE}
        self.retraction = LinMap(ambient, self.space, cols)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Vec) -> Vec:
        """Coordinates of v in the subspace basis; ValueError if v is outside."""
        c = {self._pivot_pos[p]: x for p, x in v.items() if p in self._pivot_pos}
        if self.inclusion(c) != v:
            raise ValueError("vector does not lie in the subspace")
        return c

    def contains(self, v: Vec) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient.dim != other.ambient.dim or self.dim != other.dim:
            return False
        if self.pivots == other.pivots:
            return self.basis == other.basis
        # different pivot priorities: compare as subspaces
        return all(self.contains(v) for v in other.basis)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient.dim})"


class QuotientSpace:
    """V / R with projection and the echelon-complement section."""

    def __init__(self, ambient: BasedSpace, relations: Subspace, section: LinMap | None = None):
        self.ambient = ambient
        self.relations = relations
        pivots = set(relations.pivots)
        free = [j for j in range(ambient.dim) if j not in pivots]
        self.free = tuple(free)
        pos = {j: i for i, j in enumerate(free)}
        self.space = BasedSpace(tuple(f"[{ambient.labels[j]}]" for j in free))
        cols: list[Vec] = [{} for _ in range(ambient.dim)]
        for j in free:
            cols[j] = {pos[j]: ONE}
        for p, row in zip(relations.pivots, relations.basis):
            cols[p] = {pos[j]: -x for j, x in row.items() if j != p}
        self.projection = LinMap(ambient, self.space, cols)
        if section is None:
            section = LinMap(self.space, ambient, [{j: ONE} for j in free])
        self.section = section

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, v: Vec) -> Vec:
        return self.projection(v)

    def lift(self, q: Vec) -> Vec:
        return self.section(q)

    def alt_section(self) -> "QuotientSpace":
        """Same quotient, with a different section (shifted by relation vectors)."""
        rels = self.relations.basis
        if not rels:
            return self
        cols = []
        for i, c in enumerate(self.section.cols):
            cols.append(axpy(dict(c), Scalar.rational(i + 2), rels[i % len(rels)]))
        return QuotientSpace(self.ambient, self.relations, LinMap(self.space, self.ambient, cols))

    def __repr__(self):
        return f"QuotientSpace(dim={self.dim} = {self.ambient.dim} - {self.relations.dim})"


# ---------------------------------------------------------------------------
# operations


def _check_vec(M: LinMap, v: Vec):
    if any(not (0 <= k < M.codomain.dim) for k in v):
        raise ShapeMismatch("vector does not lie in the codomain")


def solve(M: LinMap, v: Vec) -> Vec | None:
    """Some x with M x = v, or None when the system is inconsistent."""
    _check_vec(M, v)
    residual, combo = M.echelon().reduce(v)
    if residual:
        return None
    return combo


def kernel(M: LinMap) -> Subspace:
    rels = M.echelon().relations
    return Subspace(M.domain, rels)


def image(M: LinMap) -> Subspace:
    return Subspace(M.codomain, M.cols)


def subspace(V: BasedSpace, vectors: Iterable[Vec], priority=None) -> Subspace:
    return Subspace(V, vectors, priority)


def quotient(V: BasedSpace, rel_gens: Iterable[Vec], priority=None) -> QuotientSpace:
    return QuotientSpace(V, Subspace(V, rel_gens, priority))


def inverse(M: LinMap) -> LinMap | None:
    if M.domain.dim != M.codomain.dim or M.rank() != M.domain.dim:
        return None
    cols = [solve(M, {i: ONE}) for i in range(M.codomain.dim)]
    return LinMap(M.codomain, M.domain, cols)


def tensor(f: LinMap, g: LinMap) -> LinMap:
    dom = tensor_space(f.domain, g.domain)
    cod = tensor_space(f.codomain, g.codomain)
    dg = g.codomain.dim
    cols = [vtensor(fc, gc, dg) for fc in f.cols for gc in g.cols]
    return LinMap(dom, cod, cols)


def flip(V: BasedSpace, W: BasedSpace) -> LinMap:
    """V⊗W → W⊗V."""
    cols = [{j * V.dim + i: ONE} for i in range(V.dim) for j in range(W.dim)]
    return LinMap(tensor_space(V, W), tensor_space(W, V), cols)
