"""Exact multivariate polynomials over the rationals on a fixed chart."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from . import _backend as _k

Rational = Fraction

_MAX_VARS_DEGREE = _k.MASK


class ChartMismatchError(ValueError):
    """Operands live on different charts."""


@dataclass(frozen=True)
class Chart:
    """Coordinate chart: an ordered tuple of distinct variable names."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"invalid coordinate name {name!r}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "Chart":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @classmethod
    def parse(cls, spec: str) -> "Chart":
        return cls(tuple(s.strip() for s in spec.split(",") if s.strip()))

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def coordinate(self, i: int) -> "Polynomial":
        if not 0 <= i < self.dim:
            raise IndexError(f"coordinate index {i} out of range for dimension {self.dim}")
        return Polynomial(self, {1 << (_k.BITS * i): 1})

    def coordinates(self) -> list["Polynomial"]:
        return [self.coordinate(i) for i in range(self.dim)]

    def constant(self, c) -> "Polynomial":
        c = _coerce(c)
        return Polynomial(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def __str__(self):
        return ",".join(self.names)


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, _RationalABC):
        return _coerce(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _coerce(Fraction(c))
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def pack(exponents: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exponents):
        if e < 0 or e > _MAX_VARS_DEGREE:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_k.BITS * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (_k.BITS * i)) & _k.MASK for i in range(n))


class Polynomial:
    """Immutable polynomial with exact rational coefficients.

    Terms are held in a dict keyed by packed exponent vectors; zero
    coefficients are never stored, so equal polynomials have equal dicts.
    """

    __slots__ = ("chart", "_t", "_deg", "_hash")

    def __init__(self, chart: Chart, packed_terms: dict):
        self.chart = chart
        self._t = packed_terms
        self._deg = None
        self._hash = None

    @classmethod
    def from_terms(cls, chart: Chart, terms: Mapping[Sequence[int], object]) -> "Polynomial":
        """Build from ``{exponent vector: coefficient}``."""
        acc: dict = {}
        for exps, c in terms.items():
            if len(exps) != chart.dim:
                raise ValueError(f"exponent vector {tuple(exps)} has wrong length for {chart}")
            _k.axpy_terms(acc, 1, {pack(exps): _coerce(c)})
        return cls(chart, acc)

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        n = self.chart.dim
        return {unpack(k, n): Fraction(c) for k, c in self._t.items()}

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            n = self.chart.dim
            self._deg = max((sum(unpack(k, n)) for k in self._t), default=-1)
        return self._deg

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Fraction:
        return Fraction(self._t.get(0, 0))

    def _check(self, other: "Polynomial"):
        if other.chart != self.chart:
            raise ChartMismatchError(f"chart {other.chart} differs from {self.chart}")

    def _lift(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return self.chart.constant(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Polynomial(self.chart, _k.add_terms(self._t, o._t))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Polynomial(self.chart, _k.sub_terms(self._t, o._t))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Polynomial(self.chart, _k.scale_terms(self._t, -1))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            if not self._t or not other._t:
                return Polynomial(self.chart, {})
            if self.degree + other.degree > _MAX_VARS_DEGREE:
                raise OverflowError("product degree exceeds the packed exponent range")
            if len(other._t) == 1 and 0 in other._t:
                return Polynomial(self.chart, _k.scale_terms(self._t, other._t[0]))
            if len(self._t) == 1 and 0 in self._t:
                return Polynomial(self.chart, _k.scale_terms(other._t, self._t[0]))
            return Polynomial(self.chart, _k.mul_terms(self._t, other._t))
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial(self.chart, _k.scale_terms(self._t, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Fraction(_coerce(other))
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * _coerce(1 / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.chart.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to coordinate ``i`` (0-based)."""
        if not 0 <= i < self.chart.dim:
            raise IndexError(f"variable index {i} out of range for dimension {self.chart.dim}")
        return Polynomial(self.chart, _k.partial_terms(self._t, i))

    def gradient(self) -> list["Polynomial"]:
        return [self.partial(i) for i in range(self.chart.dim)]

    def evaluate(self, point: Sequence) -> Fraction:
        n = self.chart.dim
        if len(point) != n:
            raise ValueError("point has wrong dimension")
        pt = [Fraction(_coerce(v)) for v in point]
        total = Fraction(0)
        for k, c in self._t.items():
            term = Fraction(c)
            for v, e in zip(pt, unpack(k, n)):
                if e:
                    term *= v**e
            total += term
        return total

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.chart == other.chart and self._t == other._t
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._t == ({0: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self._t.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical order: graded lexicographic, leading term first."""
        n = self.chart.dim
        items = [(unpack(k, n), c) for k, c in self._t.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return [(e, Fraction(c)) for e, c in items]

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, chart={self.chart})"


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_signed_terms(p: Polynomial) -> list[tuple[int, str]]:
    """``(sign, body)`` pairs for each term, bodies without sign."""
    out = []
    for exps, c in p.sorted_terms():
        sign = -1 if c < 0 else 1
        mag = abs(c)
        mono = _monomial(p.chart.names, exps)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        out.append((sign, body))
    return out


def join_signed(parts: Iterable[tuple[int, str]]) -> str:
    text = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            text = ("-" if sign < 0 else "") + body
        else:
            text += (" - " if sign < 0 else " + ") + body
    return text or "0"


def render_polynomial(p: Polynomial) -> str:
    return join_signed(render_signed_terms(p))


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


def poly_partial(p: Polynomial, i: int) -> Polynomial:
    return p.partial(i)
