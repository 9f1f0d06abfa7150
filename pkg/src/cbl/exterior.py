"""Differential forms and multivector fields with polynomial coefficients.

Components are stored against strictly increasing index tuples (0-based
coordinate indices).  Rendering uses ``dx1^dx2`` for forms, named after the
chart variables, and ``e1^e2`` for multivectors, numbered from 1.

Contraction convention: the covectors of ``dx^J`` are matched to the slots
``J`` of ``d_I`` after moving those slots to the front, keeping their order,
with the sign of that permutation.  In particular
``contract(dx1^..^dxp, e1^..^ep) == 1``.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .polyring import Chart, ChartMismatchError, Polynomial, _coerce, render_signed_terms


class DegreeError(ValueError):
    """Operand degrees are incompatible with the operation."""


def merge_sign(left: tuple, right: tuple) -> tuple[int, tuple]:
    """Sign and sorted union of ``left ^ right``; sign 0 when they overlap."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    inversions = 0
    for r in right:
        for l in left:
            if l == r:
                return 0, ()
            if l > r:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(left + right))


def sort_sign(idx: Iterable[int]) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``idx``; 0 on a repeated index."""
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] == idx[j]:
                return 0, ()
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def front_sign(whole: tuple, part: tuple) -> tuple[int, tuple]:
    """Sign moving ``part`` (a subset of ``whole``) to the front, and the rest.

    Returns ``(0, ())`` when ``part`` is not contained in ``whole``.
    """
    pset = set(part)
    if not pset.issubset(whole):
        return 0, ()
    rest = tuple(i for i in whole if i not in pset)
    inversions = 0
    for j in part:
        inversions += sum(1 for r in rest if r < j)
    return (-1 if inversions & 1 else 1), rest


class _Alternating:
    __slots__ = ("chart", "degree", "comps")
    kind = ""

    def __init__(self, chart: Chart, degree: int, comps: Mapping[tuple, Polynomial] | None = None):
        if degree < 0:
            raise DegreeError("degree must be nonnegative")
        self.chart = chart
        self.degree = degree
        out = {}
        for idx, p in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"component key {idx} is not a strictly increasing {degree}-tuple")
            if idx and not 0 <= idx[-1] < chart.dim:
                raise IndexError(f"index {idx} out of range for dimension {chart.dim}")
            if p.chart != chart:
                raise ChartMismatchError("component lives on another chart")
            if p:
                out[idx] = p
        self.comps = out

    @classmethod
    def _raw(cls, chart, degree, comps):
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj.comps = {k: v for k, v in comps.items() if v}
        return obj

    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls._raw(chart, degree, {})

    @classmethod
    def scalar(cls, p: Polynomial):
        return cls._raw(p.chart, 0, {(): p})

    @classmethod
    def basis(cls, chart: Chart, indices: Iterable[int], coeff=None):
        indices = tuple(indices)
        if any(not 0 <= i < chart.dim for i in indices):
            raise IndexError(f"index out of range for dimension {chart.dim}")
        coeff = chart.one() if coeff is None else coeff
        if not isinstance(coeff, Polynomial):
            coeff = chart.constant(coeff)
        sign, idx = sort_sign(indices)
        return cls._raw(chart, len(indices), {idx: coeff * sign} if sign else {})

    @classmethod
    def from_components(cls, chart: Chart, degree: int, items: Iterable[tuple[Iterable[int], Polynomial]]):
        """Accumulate possibly unsorted index tuples, applying permutation signs."""
        acc: dict = {}
        for idx, p in items:
            idx = tuple(idx)
            if len(idx) != degree:
                raise DegreeError(f"index {idx} does not have length {degree}")
            sign, key = sort_sign(idx)
            if sign:
                _acc(acc, key, p if sign > 0 else -p)
        return cls._raw(chart, degree, acc)

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __getitem__(self, idx) -> Polynomial:
        sign, key = sort_sign(idx)
        if not sign:
            return self.chart.zero()
        p = self.comps.get(key)
        if p is None:
            return self.chart.zero()
        return p if sign > 0 else -p

    def scalar_part(self) -> Polynomial:
        if self.degree != 0:
            raise DegreeError("not a degree-0 element")
        return self.comps.get((), self.chart.zero())

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatchError(f"chart {other.chart} differs from {self.chart}")

    def _check_sum(self, other):
        self._check(other)
        if other.degree != self.degree and other.comps and self.comps:
            raise DegreeError(f"cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check_sum(other)
        acc = dict(self.comps)
        for k, p in other.comps.items():
            _acc(acc, k, p)
        degree = other.degree if not self.comps and other.comps else self.degree
        return self._raw(self.chart, degree, acc)

    __radd__ = __add__

    def __sub__(self, other):
        self._check_sum(other)
        acc = dict(self.comps)
        for k, p in other.comps.items():
            _acc(acc, k, -p)
        degree = other.degree if not self.comps and other.comps else self.degree
        return self._raw(self.chart, degree, acc)

    def __neg__(self):
        return self._raw(self.chart, self.degree, {k: -p for k, p in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.chart != self.chart:
                raise ChartMismatchError("scalar lives on another chart")
            if not other:
                return self.zero(self.chart, self.degree)
            return self._raw(self.chart, self.degree, {k: p * other for k, p in self.comps.items()})
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._raw(self.chart, self.degree, {k: p * c for k, p in self.comps.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.chart == other.chart and self.comps == other.comps and (
                self.degree == other.degree or not self.comps
            )
        if isinstance(other, int) and other == 0:
            return not self.comps
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.chart, self.degree, frozenset(self.comps.items())))

    def map_coefficients(self, fn):
        return self._raw(self.chart, self.degree, {k: fn(p) for k, p in self.comps.items()})

    def max_coefficient_degree(self) -> int:
        return max((p.degree for p in self.comps.values()), default=-1)

    def _basis_text(self, idx: tuple) -> str:
        raise NotImplementedError

    def __str__(self):
        return render_alternating(self)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r}, degree={self.degree})"


def _acc(acc: dict, key: tuple, p: Polynomial):
    cur = acc.get(key)
    if cur is None:
        if p:
            acc[key] = p
    else:
        s = cur + p
        if s:
            acc[key] = s
        else:
            del acc[key]


class Form(_Alternating):
    """Degree-k differential form."""

    __slots__ = ()
    kind = "form"

    def _basis_text(self, idx):
        return "^".join("d" + self.chart.names[i] for i in idx)


class MultiVector(_Alternating):
    """Degree-p multivector field; degree 1 is a vector field."""

    __slots__ = ()
    kind = "multivector"

    def _basis_text(self, idx):
        return "^".join(f"e{i + 1}" for i in idx)

    def apply(self, f: Polynomial) -> Polynomial:
        """Act as a derivation on ``f``; only for vector fields."""
        if self.degree != 1:
            raise DegreeError("only vector fields act on functions")
        out = f.chart.zero()
        for (i,), c in self.comps.items():
            d = f.partial(i)
            if d:
                out = out + c * d
        return out


def render_alternating(a: _Alternating) -> str:
    if a.degree == 0:
        return str(a.comps.get((), a.chart.zero()))
    parts = []
    for idx in sorted(a.comps):
        p = a.comps[idx]
        basis = a._basis_text(idx)
        signed = render_signed_terms(p)
        if len(signed) == 1:
            sign, body = signed[0]
            parts.append((sign, basis if body == "1" else f"{body}*{basis}"))
        else:
            parts.append((1, f"({p})*{basis}"))
    if not parts:
        return "0"
    text = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            text = ("-" if sign < 0 else "") + body
        else:
            text += (" - " if sign < 0 else " + ") + body
    return text


def wedge(a: _Alternating, b: _Alternating) -> _Alternating:
    """Exterior product of two forms or of two multivectors."""
    if isinstance(a, Polynomial):
        return b * a
    if isinstance(b, Polynomial):
        return a * b
    a._check(b)
    acc: dict = {}
    deg = a.degree + b.degree
    if deg <= a.chart.dim:
        for ia, pa in a.comps.items():
            for ib, pb in b.comps.items():
                sign, key = merge_sign(ia, ib)
                if sign:
                    prod = pa * pb
                    _acc(acc, key, prod if sign > 0 else -prod)
    return type(a)._raw(a.chart, deg, acc)


def wedge_all(items: Iterable[_Alternating], chart: Chart, cls=None) -> _Alternating:
    items = list(items)
    if not items:
        return (cls or Form).scalar(chart.one())
    out = items[0]
    for it in items[1:]:
        out = wedge(out, it)
    return out


def contract(beta: Form, P: MultiVector) -> MultiVector:
    """Contract the k-form ``beta`` into the first k slots of ``P``."""
    if not isinstance(beta, Form) or not isinstance(P, MultiVector):
        raise TypeError("contract expects (Form, MultiVector)")
    if beta.chart != P.chart:
        raise ChartMismatchError("contract operands on different charts")
    if beta.degree > P.degree:
        raise DegreeError(f"cannot contract a {beta.degree}-form into a {P.degree}-vector")
    acc: dict = {}
    for I, pI in P.comps.items():
        for J, bJ in beta.comps.items():
            sign, rest = front_sign(I, J)
            if sign:
                prod = pI * bJ
                _acc(acc, rest, prod if sign > 0 else -prod)
    return MultiVector._raw(P.chart, P.degree - beta.degree, acc)


def insert(Q: MultiVector, a: Form) -> Form:
    """Insert the q-vector ``Q`` into the first q slots of the form ``a``."""
    if Q.chart != a.chart:
        raise ChartMismatchError("insert operands on different charts")
    if Q.degree > a.degree:
        raise DegreeError(f"cannot insert a {Q.degree}-vector into a {a.degree}-form")
    acc: dict = {}
    for I, aI in a.comps.items():
        for J, qJ in Q.comps.items():
            sign, rest = front_sign(I, J)
            if sign:
                prod = aI * qJ
                _acc(acc, rest, prod if sign > 0 else -prod)
    return Form._raw(a.chart, a.degree - Q.degree, acc)


def pair(beta: Form, P: MultiVector) -> Polynomial:
    """Full pairing of a p-form with a p-vector."""
    if beta.degree != P.degree:
        raise DegreeError("pairing needs equal degrees")
    return contract(beta, P).scalar_part()


def basis_indices(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def rank(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def dx(chart: Chart, *indices: int) -> Form:
    """Basis form ``dx_{i1} ^ ... ^ dx_{ik}`` from 0-based indices."""
    return Form.basis(chart, indices)


def e(chart: Chart, *indices: int) -> MultiVector:
    """Basis multivector ``e_{i1} ^ ... ^ e_{ip}`` from 0-based indices."""
    return MultiVector.basis(chart, indices)
