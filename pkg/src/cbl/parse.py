"""Parser for the text syntax used on the command line and in reports.

Grammar (``^`` binds tighter than ``*`` and ``/``, which bind tighter than
``+`` and ``-``)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | chain
    chain  := atom ('^' atom)*
    atom   := NUMBER | NAME | 'd' NAME | '(' expr ')' | '@' '(' expr ';' expr ')'

Names resolve in order: chart variable, ``d<var>`` basis covector,
``e<k>`` basis vector (1-based).  ``p^k`` with an integer literal ``k`` and a
scalar ``p`` is a power; every other ``^`` is a wedge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .courant import GeneralizedSection
from .exterior import DegreeError, Form, MultiVector, wedge
from .polyring import Chart, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_BASIS_VECTOR = re.compile(r"e([1-9][0-9]*)$")

KINDS = ("polynomial", "form", "multivector", "section")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ParseError):
    pass


class DegreeMismatchError(ParseError, DegreeError):
    """Well-formed input whose degree is inconsistent or not the one expected."""


@dataclass(frozen=True)
class Expression:
    source: str
    value: object


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src) and not src[pos:].isspace():
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()@;":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


def _kind(v) -> str:
    if isinstance(v, Polynomial):
        return "polynomial"
    if isinstance(v, Form):
        return "form"
    if isinstance(v, MultiVector):
        return "multivector"
    return "section"


def _is_zero(v) -> bool:
    return v.is_zero()


class _Parser:
    def __init__(self, src: str, chart: Chart):
        self.src = src
        self.chart = chart
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[1] != op or tok[0] != "op":
            raise ParseError(f"expected {op!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return v

    def expr(self):
        tok = self.peek()
        neg = False
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            neg = tok[1] == "-"
        v = self.term()
        if neg:
            v = -v
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                v = self.add(v, rhs if tok[1] == "+" else -rhs, tok[2])
            else:
                return v

    def add(self, a, b, pos):
        ka, kb = _kind(a), _kind(b)
        if ka == "polynomial" and a.is_zero():
            return b
        if kb == "polynomial" and b.is_zero():
            return a
        if ka == kb == "polynomial" or ka == kb == "section":
            return a + b
        if ka == "polynomial" and kb in ("form", "multivector") and b.degree == 0:
            a = type(b).scalar(a)
            ka = kb
        elif kb == "polynomial" and ka in ("form", "multivector") and a.degree == 0:
            b = type(a).scalar(b)
            kb = ka
        if ka != kb:
            raise ParseError(f"cannot add a {ka} and a {kb}", pos)
        if a.degree != b.degree and a.comps and b.comps:
            raise DegreeMismatchError(f"degree inconsistency: {a.degree} vs {b.degree}", pos)
        return a + b

    def term(self):
        v = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    v = self.mul(v, rhs, tok[2])
                else:
                    if not isinstance(rhs, Polynomial) or not rhs.is_constant():
                        raise ParseError("can only divide by a rational constant", tok[2])
                    if rhs.is_zero():
                        raise ParseError("division by zero", tok[2])
                    v = v * (1 / rhs.constant_value())
            else:
                return v

    def mul(self, a, b, pos):
        if isinstance(a, Polynomial):
            return b * a
        if isinstance(b, Polynomial):
            return a * b
        if isinstance(a, (Form, MultiVector)) and a.degree == 0:
            return b * a.scalar_part()
        if isinstance(b, (Form, MultiVector)) and b.degree == 0:
            return a * b.scalar_part()
        raise ParseError(f"'*' needs a scalar operand; use '^' for wedge products", pos)

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        return self.chain()

    def chain(self):
        v = self.atom()
        while True:
            tok = self.peek()
            if not (tok[0] == "op" and tok[1] == "^"):
                return v
            self.take()
            nxt = self.peek()
            if nxt[0] == "num" and isinstance(v, Polynomial):
                self.take()
                v = v ** int(nxt[1])
                continue
            rhs = self.atom()
            v = self.wedge(v, rhs, tok[2])

    def wedge(self, a, b, pos):
        if isinstance(a, Polynomial) or isinstance(b, Polynomial):
            return self.mul(a, b, pos)
        if isinstance(a, GeneralizedSection) or isinstance(b, GeneralizedSection):
            raise ParseError("cannot wedge generalized sections", pos)
        if type(a) is not type(b):
            raise ParseError(f"cannot wedge a {_kind(a)} with a {_kind(b)}", pos)
        return wedge(a, b)

    def atom(self):
        tok = self.take()
        kind, text, pos = tok
        if kind == "num":
            return self.chart.constant(int(text))
        if kind == "name":
            return self.name(text, pos)
        if kind == "op" and text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "op" and text == "@":
            self.expect("(")
            vec = self.expr()
            self.expect(";")
            cov = self.expr()
            self.expect(")")
            return self.section(vec, cov, pos)
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)

    def name(self, text, pos):
        chart = self.chart
        if text in chart.names:
            return chart.coordinate(chart.index(text))
        if text.startswith("d") and text[1:] in chart.names:
            return Form.basis(chart, (chart.index(text[1:]),))
        if text == "d":
            nxt = self.peek()
            if nxt[0] == "name" and nxt[1] in chart.names:
                self.take()
                return Form.basis(chart, (chart.index(nxt[1]),))
        m = _BASIS_VECTOR.match(text)
        if m:
            k = int(m.group(1))
            if 1 <= k <= chart.dim:
                return MultiVector.basis(chart, (k - 1,))
        raise UnknownVariableError(f"unknown name {text!r}", pos)

    def section(self, vec, cov, pos):
        if isinstance(vec, Polynomial) and vec.is_zero():
            vec = MultiVector.zero(self.chart, 1)
        if isinstance(cov, Polynomial) and cov.is_zero():
            cov = Form.zero(self.chart, 1)
        if not isinstance(vec, MultiVector) or (vec.degree != 1 and vec.comps):
            raise ParseError("vector part of a section must be a vector field", pos)
        if not isinstance(cov, Form) or (cov.degree != 1 and cov.comps):
            raise ParseError("covector part of a section must be a 1-form", pos)
        return GeneralizedSection(vec, cov)


def coerce(value, kind: str | None, degree: int | None, chart: Chart, src: str = ""):
    """Convert a parsed value to the requested kind and degree."""
    if kind is None:
        return value
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    have = _kind(value)
    if kind == "polynomial":
        if have == "polynomial":
            return value
        if have in ("form", "multivector") and value.degree == 0:
            return value.scalar_part()
        raise ParseError(f"expected a polynomial, got a {have}", 0)
    if kind == "section":
        if have == "section":
            return value
        if have == "polynomial" and value.is_zero():
            return GeneralizedSection.zero(chart)
        if have in ("form", "multivector"):
            return GeneralizedSection.of(value) if value.comps or value.degree == 1 else GeneralizedSection.zero(chart)
        raise ParseError(f"expected a generalized section, got a {have}", 0)
    cls = Form if kind == "form" else MultiVector
    if have == "polynomial":
        if value.is_zero():
            return cls.zero(chart, degree if degree is not None else 0)
        if degree not in (None, 0):
            raise DegreeMismatchError(f"expected a degree-{degree} {kind}, got a nonzero scalar", 0)
        return cls.scalar(value)
    if have != kind:
        raise ParseError(f"expected a {kind}, got a {have}", 0)
    if degree is not None and value.degree != degree:
        if not value.comps:
            return cls.zero(chart, degree)
        raise DegreeMismatchError(f"expected degree {degree}, got degree {value.degree}", 0)
    return value


def parse(src: str, kind: str | None, chart: Chart, degree: int | None = None) -> Expression:
    """Parse ``src`` on ``chart``; ``kind`` is one of :data:`KINDS` or None."""
    value = _Parser(src, chart).parse()
    return Expression(src, coerce(value, kind, degree, chart, src))


def parse_value(src: str, kind: str | None, chart: Chart, degree: int | None = None):
    return parse(src, kind, chart, degree).value
