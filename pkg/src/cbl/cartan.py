"""Cartan calculus on polynomial forms and multivectors, plus Nambu-Poisson tools."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exterior import (
    DegreeError,
    Form,
    MultiVector,
    _acc,
    contract,
    insert,
    merge_sign,
    pair,
    sort_sign,
    wedge,
)
from .polyring import Chart, ChartMismatchError, Polynomial


def ext_d(a: Form) -> Form:
    """Exterior derivative.  A top-degree form maps to the zero (n+1)-form."""
    if isinstance(a, Polynomial):
        a = Form.scalar(a)
    n = a.chart.dim
    acc: dict = {}
    if a.degree < n:
        for I, p in a.comps.items():
            for j in range(n):
                if j in I:
                    continue
                dp = p.partial(j)
                if not dp:
                    continue
                sign, key = merge_sign((j,), I)
                _acc(acc, key, dp if sign > 0 else -dp)
    return Form._raw(a.chart, a.degree + 1, acc)


def d(f: Polynomial) -> Form:
    return ext_d(Form.scalar(f))


def interior(X: MultiVector, a: Form) -> Form:
    """Insert the vector field ``X`` into the first slot of ``a``."""
    if X.degree != 1:
        raise DegreeError("interior product needs a vector field")
    if a.degree == 0:
        raise DegreeError("cannot take the interior product of a 0-form")
    return insert(X, a)


def lie_form(X: MultiVector, a: Form) -> Form:
    """Lie derivative of a form via the Cartan formula."""
    if X.degree != 1:
        raise DegreeError("Lie derivative needs a vector field")
    if X.chart != a.chart:
        raise ChartMismatchError("operands on different charts")
    if a.degree == 0:
        return Form.scalar(X.apply(a.scalar_part()))
    return insert(X, ext_d(a)) + ext_d(insert(X, a))


def lie_function(X: MultiVector, f: Polynomial) -> Polynomial:
    return X.apply(f)


def vf_bracket(X: MultiVector, Y: MultiVector) -> MultiVector:
    """Commutator of vector fields."""
    if X.degree != 1 or Y.degree != 1:
        raise DegreeError("vf_bracket needs two vector fields")
    if X.chart != Y.chart:
        raise ChartMismatchError("operands on different charts")
    acc: dict = {}
    for (j,), yj in Y.comps.items():
        _acc(acc, (j,), X.apply(yj))
    for (j,), xj in X.comps.items():
        _acc(acc, (j,), -Y.apply(xj))
    return MultiVector._raw(X.chart, 1, acc)


def lie_mv(X: MultiVector, P: MultiVector) -> MultiVector:
    """Lie derivative of a multivector along a vector field."""
    if X.degree != 1:
        raise DegreeError("Lie derivative needs a vector field")
    if X.chart != P.chart:
        raise ChartMismatchError("operands on different charts")
    acc: dict = {}
    for I, p in P.comps.items():
        _acc(acc, I, X.apply(p))
        for r, i in enumerate(I):
            for (j,), xj in X.comps.items():
                dx = xj.partial(i)
                if not dx:
                    continue
                sign, key = sort_sign(I[:r] + (j,) + I[r + 1:])
                if sign:
                    prod = p * dx
                    _acc(acc, key, -prod if sign > 0 else prod)
    return MultiVector._raw(P.chart, P.degree, acc)


def _right_derivative_wedge(A: MultiVector, B: MultiVector) -> dict:
    """Components of sum_i (A with e_i stripped from the right) ^ d_i B."""
    p = A.degree
    acc: dict = {}
    for I, a in A.comps.items():
        for r, i in enumerate(I):
            sign_r = -1 if (p - 1 - r) & 1 else 1
            rest = I[:r] + I[r + 1:]
            for J, b in B.comps.items():
                db = b.partial(i)
                if not db:
                    continue
                sign, key = merge_sign(rest, J)
                if sign:
                    prod = a * db
                    _acc(acc, key, prod if sign * sign_r > 0 else -prod)
    return acc


def schouten(P: MultiVector, Q: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket of a p-vector and a q-vector.

    Multivectors are treated as functions of odd variables ``e_i``; the
    bracket is ``sum_i P d<_i (d_i Q) - (-1)^((p-1)(q-1)) Q d<_i (d_i P)``
    with right derivatives in the odd variables.
    """
    if P.chart != Q.chart:
        raise ChartMismatchError("operands on different charts")
    p, q = P.degree, Q.degree
    deg = p + q - 1
    if deg < 0:
        return MultiVector.zero(P.chart, 0)
    if deg > P.chart.dim:
        return MultiVector.zero(P.chart, deg)
    acc = _right_derivative_wedge(P, Q)
    sign = -1 if ((p - 1) * (q - 1)) & 1 else 1
    for k, v in _right_derivative_wedge(Q, P).items():
        _acc(acc, k, -v if sign > 0 else v)
    return MultiVector._raw(P.chart, deg, acc)


@dataclass(frozen=True, eq=False)
class NambuStructure:
    """A p-vector, 2 <= p <= n, used as the tensor of a Nambu-Poisson candidate."""

    tensor: MultiVector

    def __post_init__(self):
        p, n = self.tensor.degree, self.tensor.chart.dim
        if not 2 <= p <= n:
            raise DegreeError(f"order {p} outside 2..{n}")

    @property
    def chart(self) -> Chart:
        return self.tensor.chart

    @property
    def order(self) -> int:
        return self.tensor.degree

    def sharp(self, a: Form) -> MultiVector:
        """The anchor contraction of a form into the tensor."""
        return contract(a, self.tensor)


def _arity(S: NambuStructure, fs: Sequence[Polynomial], k: int):
    if len(fs) != k:
        raise ValueError(f"expected {k} functions, got {len(fs)}")
    for f in fs:
        if f.chart != S.chart:
            raise ChartMismatchError("function on another chart")


def exact_wedge(fs: Sequence[Polynomial], chart: Chart) -> Form:
    out = Form.scalar(chart.one())
    for f in fs:
        out = wedge(out, d(f))
    return out


def nambu_bracket(S: NambuStructure, fs: Sequence[Polynomial]) -> Polynomial:
    _arity(S, fs, S.order)
    return pair(exact_wedge(fs, S.chart), S.tensor)


def hamiltonian_vf(S: NambuStructure, fs: Sequence[Polynomial]) -> MultiVector:
    _arity(S, fs, S.order - 1)
    return contract(exact_wedge(fs, S.chart), S.tensor)


def invariance_defect(S: NambuStructure, fs: Sequence[Polynomial]) -> MultiVector:
    return lie_mv(hamiltonian_vf(S, fs), S.tensor)


def fi_defect(S: NambuStructure, fs: Sequence[Polynomial], gs: Sequence[Polynomial]) -> Polynomial:
    """Defect of the fundamental identity for the induced p-ary bracket."""
    _arity(S, fs, S.order - 1)
    _arity(S, gs, S.order)
    fs = list(fs)
    gs = list(gs)
    out = nambu_bracket(S, fs + [nambu_bracket(S, gs)])
    for i in range(len(gs)):
        inner = nambu_bracket(S, fs + [gs[i]])
        out = out - nambu_bracket(S, gs[:i] + [inner] + gs[i + 1:])
    return out
