"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored by its coordinates in the power basis
1, zeta, ..., zeta^(phi(N)-1) of Q[x]/Phi_N(x).  Coordinates are
arbitrary-precision rationals (gmpy2.mpq when available, Fraction otherwise).

Elements of different conductors interoperate: binary operations promote both
operands to the lcm conductor first.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

__all__ = [
    "Scalar",
    "DivisionByZero",
    "IncompatibleConductor",
    "cyclotomic_poly",
    "field_op",
    "promote",
    "zeta",
    "as_scalar",
    "parse_scalar",
    "ZERO",
    "ONE",
]

_RATIONAL_TYPES = (int, type(Q(0)))


class DivisionByZero(ZeroDivisionError):
    pass


class IncompatibleConductor(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple, ...]:
    """Rows k = 0..phi-2 give x^(phi+k) mod Phi_n in the power basis."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    cur = [Q(-c) for c in phi[:-1]]  # x^deg
    rows = []
    for _ in range(max(deg - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [Q(0)] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _degree(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class Scalar:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        coeffs = tuple(Q(x) for x in coeffs)
        if len(coeffs) != _degree(n):
            raise ValueError(f"Q(zeta_{n}) needs {_degree(n)} coordinates, got {len(coeffs)}")
        self.n = n
        self.c = coeffs

    @classmethod
    def _raw(cls, n, coeffs):
        s = object.__new__(cls)
        s.n = n
        s.c = coeffs
        return s

    @classmethod
    def rational(cls, q, n: int = 1) -> "Scalar":
        return cls._raw(n, (Q(q),) + (Q(0),) * (_degree(n) - 1))

    # -- structure -------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple:
        return self.c

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def promote(self, n: int) -> "Scalar":
        if n == self.n:
            return self
        if n % self.n:
            raise IncompatibleConductor(f"conductor {self.n} does not divide {n}")
        if self.is_rational():
            return Scalar.rational(self.c[0], n)
        step = n // self.n
        poly = [Q(0)] * (self.n * step)
        for k, x in enumerate(self.c):
            poly[(k * step) % n] += x
        return Scalar._raw(n, _reduce(poly, n))

    def demote(self, n: int) -> "Scalar":
        """Express self in Q(zeta_n), n | conductor; raises if not contained."""
        if n == self.n:
            return self
        if self.n % n:
            raise IncompatibleConductor(f"{n} does not divide conductor {self.n}")
        if self.is_rational():
            return Scalar.rational(self.c[0], n)
        d = _degree(n)
        images = [zeta(n, k).promote(self.n).c for k in range(d)]
        sol = _solve_rational([list(col) for col in images], list(self.c))
        if sol is None:
            raise IncompatibleConductor(f"{self} does not lie in Q(zeta_{n})")
        return Scalar._raw(n, tuple(sol))

    def minimal(self) -> "Scalar":
        """The same element at the smallest conductor that contains it."""
        if self.is_rational():
            return Scalar.rational(self.c[0])
        for d in range(1, self.n + 1):
            if self.n % d == 0:
                try:
                    return self.demote(d)
                except IncompatibleConductor:
                    continue
        return self

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.n == self.n:
                return self, other
            n = _lcm(self.n, other.n)
            return self.promote(n), other.promote(n)
        if isinstance(other, _RATIONAL_TYPES) or hasattr(other, "denominator"):
            return self, Scalar.rational(other, self.n)
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if len(a.c) == 1:
            return Scalar._raw(a.n, (a.c[0] + b.c[0],))
        return Scalar._raw(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if len(a.c) == 1:
            return Scalar._raw(a.n, (a.c[0] - b.c[0],))
        return Scalar._raw(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if len(a.c) == 1:
            return Scalar._raw(a.n, (a.c[0] * b.c[0],))
        if b.is_rational():
            y = b.c[0]
            return Scalar._raw(a.n, tuple(x * y for x in a.c))
        if a.is_rational():
            x = a.c[0]
            return Scalar._raw(a.n, tuple(x * y for y in b.c))
        d = len(a.c)
        prod = [Q(0)] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return Scalar._raw(a.n, _fold(prod, a.n))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return Scalar.rational(1 / self.c[0], self.n)
        inv = _poly_inverse(list(self.c), [Q(x) for x in cyclotomic_poly(self.n)])
        return Scalar._raw(self.n, _reduce(inv, self.n))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Scalar.rational(1, self.n)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ------------------------------------------------------
    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.c == b.c

    def __hash__(self):
        m = self.minimal()
        if m.n == 1:
            return hash(m.c[0])
        return hash((m.n, m.c))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.is_rational():
            return _fmt_q(self.c[0])
        parts = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            mono = "" if k == 0 else (f"zeta({self.n})" if k == 1 else f"zeta({self.n})^{k}")
            if not mono:
                term = _fmt_q(x)
            elif x == 1:
                term = mono
            elif x == -1:
                term = "-" + mono
            else:
                term = f"{_fmt_q(x)}*{mono}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _fmt_q(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fold(prod: list, n: int) -> tuple:
    d = _degree(n)
    table = _reduction_table(n)
    out = prod[:d]
    for k in range(d, len(prod)):
        x = prod[k]
        if x:
            for j, r in enumerate(table[k - d]):
                if r:
                    out[j] += x * r
    return tuple(out)


def _reduce(poly: list, n: int) -> tuple:
    """Reduce an arbitrary-length polynomial modulo Phi_n."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    poly = list(poly) + [Q(0)] * max(0, d - len(poly))
    for k in range(len(poly) - 1, d - 1, -1):
        top = poly[k]
        if top:
            for j in range(d + 1):
                poly[k - d + j] -= top * phi[j]
    return tuple(Q(x) for x in poly[:d])


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list):
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Q(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, _trim(a[: len(b) - 1])


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_inverse(a: list, m: list) -> list:
    """Inverse of a modulo the irreducible m via the extended Euclidean algorithm."""
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [], [Q(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def _solve_rational(cols: list[list], rhs: list):
    """Solve sum_k x_k cols[k] = rhs over Q; None when inconsistent."""
    nrows = len(rhs)
    m = [[Q(cols[k][i]) for k in range(len(cols))] + [Q(rhs[i])] for i in range(nrows)]
    ncols = len(cols)
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if any(m[i][ncols] for i in range(r, nrows)):
        return None
    sol = [Q(0)] * ncols
    for i, c in enumerate(piv):
        sol[c] = m[i][ncols]
    return sol


def zeta(n: int, k: int = 1) -> Scalar:
    """The root of unity zeta_n^k as an element of Q(zeta_n)."""
    k %= n
    poly = [Q(0)] * n
    poly[k] = Q(1)
    return Scalar._raw(n, _reduce(poly, n))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar.rational(x)


def promote(a: Scalar, n: int) -> Scalar:
    return a.promote(n)


def field_op(a, b, op: str) -> Scalar:
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero(f"{a} / 0")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse `p/q`, `zeta(N)^k`, and sums/products of those."""
    from .presentation import parse_scalar_expr

    return parse_scalar_expr(text)


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)
