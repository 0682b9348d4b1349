"""Line-oriented presentation files for Hopf algebras, algebras, actions and cocycles.

A file is a sequence of blocks.  Each block starts with a header line
``<kind> <name> [key=value ...]`` followed by ``basis``/``unit`` lines and
entries ``section(args) = expression``::

    hopf kZ2
    basis 1 g
    unit 1
    mult(g,g) = 1
    coproduct(g) = g@g
    counit(g) = 1
    antipode(g) = g

Expressions are linear combinations of basis monomials (labels joined by ``@``
for tensor factors) with scalar coefficients built from ``p/q``, ``zeta(N)^k``,
``+``, ``-``, ``*`` and parentheses.  A bare token that is a declared label is a
basis element; wrap numbers in parentheses to force a scalar.  ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Scalar, zeta, ONE

__all__ = [
    "ParseError",
    "UndeclaredLabel",
    "Entry",
    "Presentation",
    "KINDS",
    "SECTIONS",
    "parse_scalar_expr",
    "parse_presentation",
    "parse_presentations",
    "format_scalar",
]

KINDS = ("hopf", "algebra", "comodule_algebra", "measuring", "cocycle", "hopf_twist")
SECTIONS = {
    "hopf": {"mult": 2, "coproduct": 1, "counit": 1, "antipode": 1},
    "algebra": {"mult": 2},
    "comodule_algebra": {"coaction": 1},
    "measuring": {"action": 2},
    "cocycle": {"sigma": 2},
    "hopf_twist": {"gamma": 2},
}
HEADER_KEYS = {
    "hopf": set(),
    "algebra": set(),
    "comodule_algebra": {"hopf", "algebra"},
    "measuring": {"hopf", "algebra"},
    "cocycle": {"measuring"},
    "hopf_twist": {"hopf"},
}
OPTIONAL_KEYS = {"hopf_twist": {"for"}}


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line, self.col, self.expected, self.found = line, col, expected, found
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class UndeclaredLabel(ValueError):
    def __init__(self, label: str, line: int, col: int):
        self.label, self.line, self.col = label, line, col
        super().__init__(f"line {line}, col {col}: undeclared label {label!r}")


@dataclass
class Entry:
    section: str
    args: tuple[str, ...]
    terms: list[tuple[Scalar, tuple[str, ...]]]
    line: int
    col: int


@dataclass
class Presentation:
    kind: str
    name: str
    params: dict = field(default_factory=dict)
    basis: tuple[str, ...] = ()
    unit: str | None = None
    unit_terms: list | None = None
    entries: list[Entry] = field(default_factory=list)
    line: int = 1

    def section(self, name: str) -> list[Entry]:
        return [e for e in self.entries if e.section == name]


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<zeta>zeta)|(?P<ident>[^\s()+\-*/^=,@⊗#]+)|(?P<op>[()+\-*/^=,@⊗]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int = 1) -> list[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].lstrip()
            raise ParseError(line, col0 + n - len(bad), "a token", bad[:1])
        kind = m.lastgroup
        start = m.start(kind)
        out.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    return out


class _Stream:
    def __init__(self, toks: list[_Tok], line: int, end_col: int):
        self.toks = toks
        self.i = 0
        self.line = line
        self.end_col = end_col

    def peek(self, k: int = 0) -> _Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError(self.line, self.end_col, "more input", "end of line")
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t is None or t.text != text:
            raise ParseError(self.line, t.col if t else self.end_col, repr(text), t.text if t else "end of line")
        self.i += 1
        return t

    def at(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "op" and t.text in texts

    def done(self) -> bool:
        return self.i >= len(self.toks)


# ---------------------------------------------------------------------------
# scalars


def _scalar_atom(s: _Stream) -> Scalar:
    t = s.next()
    if t.kind == "num":
        base = Scalar.rational(Fraction(t.text))
    elif t.kind == "zeta":
        s.expect("(")
        nt = s.next()
        if nt.kind != "num" or "/" in nt.text or int(nt.text) < 1:
            raise ParseError(s.line, nt.col, "a positive integer conductor", nt.text)
        s.expect(")")
        base = zeta(int(nt.text))
    elif t.text == "(":
        base = _scalar_sum(s)
        s.expect(")")
    else:
        raise ParseError(s.line, t.col, "a scalar", t.text)
    if s.at("^"):
        s.next()
        neg = False
        if s.at("-"):
            s.next()
            neg = True
        et = s.next()
        if et.kind != "num" or "/" in et.text:
            raise ParseError(s.line, et.col, "an integer exponent", et.text)
        k = int(et.text)
        base = base ** (-k if neg else k)
    return base


def _scalar_product(s: _Stream) -> Scalar:
    acc = _scalar_atom(s)
    while s.at("*", "/"):
        op = s.next().text
        rhs = _scalar_atom(s)
        acc = acc * rhs if op == "*" else acc / rhs
    return acc


def _scalar_sum(s: _Stream) -> Scalar:
    sign = ONE
    if s.at("-", "+"):
        sign = -ONE if s.next().text == "-" else ONE
    acc = sign * _scalar_product(s)
    while s.at("+", "-"):
        sign = -ONE if s.next().text == "-" else ONE
        acc = acc + sign * _scalar_product(s)
    return acc


def parse_scalar_expr(text: str, line: int = 1, col: int = 1) -> Scalar:
    """Parse a scalar such as ``-1/2 + 3*zeta(4)^3``."""
    s = _Stream(_tokenize(text, line, col), line, col + len(text))
    if s.done():
        raise ParseError(line, col, "a scalar", "end of line")
    v = _scalar_sum(s)
    if not s.done():
        t = s.peek()
        raise ParseError(line, t.col, "end of scalar", t.text)
    return v.minimal()


def format_scalar(x: Scalar) -> str:
    return str(x.minimal())


# ---------------------------------------------------------------------------
# linear combinations


def _monomial(s: _Stream, labels: set[str]) -> tuple[str, ...]:
    parts = []
    while True:
        t = s.next()
        if t.kind not in ("ident", "num") or t.text not in labels:
            if t.kind == "ident":
                raise UndeclaredLabel(t.text, s.line, t.col)
            raise ParseError(s.line, t.col, "a basis label", t.text)
        parts.append(t.text)
        if s.at("@", "⊗"):
            s.next()
            continue
        return tuple(parts)


def _is_label(t: _Tok | None, labels: set[str]) -> bool:
    return t is not None and t.kind in ("ident", "num") and t.text in labels


def _term(s: _Stream, labels: set[str], arity: int, allow_scalar: bool):
    coef = ONE
    mono = None
    while True:
        t = s.peek()
        if _is_label(t, labels):
            if mono is not None:
                raise ParseError(s.line, t.col, "'+', '-' or end of line", t.text)
            mono = _monomial(s, labels)
        elif t is not None and t.kind == "ident":
            raise UndeclaredLabel(t.text, s.line, t.col)
        else:
            coef = coef * _scalar_atom(s)
        if s.at("*"):
            s.next()
            continue
        break
    if mono is None:
        if not allow_scalar:
            t = s.peek()
            raise ParseError(s.line, t.col if t else s.end_col, "a basis label", t.text if t else "end of line")
        mono = ()
    if mono and len(mono) != arity:
        raise ParseError(s.line, s.peek().col if s.peek() else s.end_col, f"a {arity}-fold tensor monomial")
    return coef, mono


def _lincomb(s: _Stream, labels: set[str], arity: int, allow_scalar: bool):
    terms = []
    sign = ONE
    if s.at("-", "+"):
        sign = -ONE if s.next().text == "-" else ONE
    c, m = _term(s, labels, arity, allow_scalar)
    terms.append((sign * c, m))
    while s.at("+", "-"):
        sign = -ONE if s.next().text == "-" else ONE
        c, m = _term(s, labels, arity, allow_scalar)
        terms.append((sign * c, m))
    if not s.done():
        t = s.peek()
        raise ParseError(s.line, t.col, "'+', '-' or end of line", t.text)
    return terms


# ---------------------------------------------------------------------------
# blocks


_HEADER = re.compile(r"^(\w+)\s+(\S+)((?:\s+\w+=\S+)*)\s*$")
_ENTRY = re.compile(r"^(\w+)\s*\(([^)]*)\)\s*=(.*)$")


def _strip(raw: str) -> str:
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


def parse_presentations(text: str, resolve=None) -> list[Presentation]:
    """Parse every block of a file.

    ``resolve(kind, name)`` returns the label tuple of a referenced object (used to
    check labels in entries whose value or arguments live outside the block); it
    also receives blocks parsed earlier in the same file.
    """
    blocks: list[Presentation] = []
    cur: Presentation | None = None
    pending: list[tuple[int, str, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = _strip(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        stripped = body.strip()
        head = stripped.split(None, 1)[0]
        if head in KINDS and "(" not in head:
            if cur is not None:
                blocks.append(_finish(cur, pending, blocks, resolve))
            m = _HEADER.match(stripped)
            if not m:
                raise ParseError(ln, indent + 1, "'<kind> <name> [key=value ...]'", stripped)
            params = dict(kv.split("=", 1) for kv in m.group(3).split())
            allowed = HEADER_KEYS[head] | OPTIONAL_KEYS.get(head, set())
            bad = set(params) - allowed
            if bad:
                raise ParseError(ln, indent + 1 + stripped.index(sorted(bad)[0]), f"one of {sorted(allowed)}", sorted(bad)[0])
            missing = HEADER_KEYS[head] - set(params)
            if missing:
                raise ParseError(ln, len(body) + 1, f"header key {sorted(missing)[0]}=...")
            cur = Presentation(head, m.group(2), params, line=ln)
            pending = []
            continue
        if cur is None:
            raise ParseError(ln, indent + 1, f"a block header ({', '.join(KINDS)})", head)
        if head in ("basis", "unit") and not stripped.startswith(head + "("):
            rest = stripped[len(head):].split()
            if head == "basis":
                if not rest or len(set(rest)) != len(rest):
                    raise ParseError(ln, indent + len(head) + 2, "distinct basis labels", " ".join(rest))
                for lab in rest:
                    if not re.fullmatch(r"[^\s()+\-*/^=,@⊗#]+", lab):
                        raise ParseError(ln, body.index(lab) + 1, "a label without operator characters", lab)
                cur.basis = tuple(rest)
            else:
                if not rest:
                    raise ParseError(ln, indent + len(head) + 2, "a unit label or combination")
                rhs = stripped[len(head):].strip()
                pending.append((ln, "unit", (rhs, body.index(rhs) + 1)))
            continue
        pending.append((ln, body, indent))
    if cur is not None:
        blocks.append(_finish(cur, pending, blocks, resolve))
    return blocks


def parse_presentation(text: str, resolve=None) -> Presentation:
    blocks = parse_presentations(text, resolve)
    if len(blocks) != 1:
        raise ParseError(1, 1, "exactly one block", f"{len(blocks)} blocks")
    return blocks[0]


def _lookup(kind_hint: str, name: str, earlier: list[Presentation], resolve, line: int, col: int):
    if name == "field":
        return ("1",)
    for b in reversed(earlier):
        if b.name == name:
            return b.basis
    if resolve is not None:
        labs = resolve(kind_hint, name)
        if labs is not None:
            return tuple(labs)
    raise UndeclaredLabel(name, line, col)


def _finish(p: Presentation, pending, earlier, resolve) -> Presentation:
    sections = SECTIONS[p.kind]
    needs_basis = p.kind in ("hopf", "algebra")
    if needs_basis and not p.basis:
        raise ParseError(p.line, 1, "a basis line")
    for ln, body, extra in pending:
        if body != "unit":
            continue
        rhs, rcol = extra
        s = _Stream(_tokenize(rhs, ln, rcol), ln, rcol + len(rhs))
        p.unit_terms = _lincomb(s, set(p.basis), 1, False)
        if len(p.unit_terms) == 1 and p.unit_terms[0][0] == 1:
            p.unit = p.unit_terms[0][1][0]
    # label sets for arguments and values
    if p.kind in ("hopf", "algebra"):
        arg_labels = val_labels = set(p.basis)
    elif p.kind == "comodule_algebra":
        a = _lookup("algebra", p.params["algebra"], earlier, resolve, p.line, 1)
        h = _lookup("hopf", p.params["hopf"], earlier, resolve, p.line, 1)
        arg_labels, val_labels = set(a), set(a) | set(h)
        p.basis = tuple(a)
    elif p.kind == "measuring":
        h = _lookup("hopf", p.params["hopf"], earlier, resolve, p.line, 1)
        b = _lookup("algebra", p.params["algebra"], earlier, resolve, p.line, 1)
        arg_labels, val_labels = set(h) | set(b), set(b)
        p.arg_spaces = (tuple(h), tuple(b))
    elif p.kind == "cocycle":
        meas = next((e for e in reversed(earlier) if e.name == p.params["measuring"] and e.kind == "measuring"), None)
        if meas is not None:
            h, b = meas.arg_spaces
        elif resolve is not None and resolve("measuring", p.params["measuring"]) is not None:
            h, b = resolve("measuring", p.params["measuring"])
        else:
            raise UndeclaredLabel(p.params["measuring"], p.line, 1)
        arg_labels, val_labels = set(h), set(b)
    else:  # hopf_twist
        h = _lookup("hopf", p.params["hopf"], earlier, resolve, p.line, 1)
        arg_labels, val_labels = set(h), set()
    for ln, body, indent in pending:
        if body == "unit":
            continue
        stripped = body.strip()
        m = _ENTRY.match(stripped)
        if not m:
            raise ParseError(ln, indent + 1, "'section(args) = expression'", stripped)
        sec = m.group(1)
        if sec not in sections:
            raise ParseError(ln, indent + 1, f"one of {', '.join(sections)}", sec)
        args = tuple(a.strip() for a in m.group(2).split(",")) if m.group(2).strip() else ()
        if len(args) != sections[sec]:
            raise ParseError(ln, indent + len(sec) + 2, f"{sections[sec]} argument(s)", m.group(2))
        col = indent + len(sec) + 2
        off = stripped.index("(") + 1
        for a in args:
            pos = stripped.index(a, off)
            off = pos + len(a)
            if a not in arg_labels:
                raise UndeclaredLabel(a, ln, indent + pos + 1)
        rhs = m.group(3)
        rcol = indent + len(stripped) - len(rhs) + 1
        toks = _tokenize(rhs, ln, rcol)
        s = _Stream(toks, ln, rcol + len(rhs))
        if s.done():
            raise ParseError(ln, rcol, "an expression", "end of line")
        arity = {"coproduct": 2, "coaction": 2}.get(sec, 1)
        allow_scalar = arity == 1
        labels = set() if sec == "counit" or p.kind == "hopf_twist" else val_labels
        terms = _lincomb(s, labels, arity, allow_scalar)
        p.entries.append(Entry(sec, args, terms, ln, col))
    return p
