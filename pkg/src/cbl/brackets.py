"""Brackets on (p-1)-forms induced by a p-vector, and their defect functionals."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cartan import NambuStructure, d, ext_d, interior, lie_form, nambu_bracket
from .exterior import DegreeError, Form, MultiVector, contract, pair, wedge
from .polyring import Polynomial


class BracketKind(enum.Enum):
    HAGIWARA = "hagiwara"
    IBANEZ = "ibanez"
    DIFFERENCE = "difference"
    KOSZUL = "koszul"


class AnchorKind(enum.Enum):
    PI_CONTRACTION = "pi"
    ZERO_MAP = "zero"
    TANGENT_PROJECTION = "projection"


@dataclass(frozen=True, eq=False)
class AnchorAssignment:
    kind: AnchorKind
    structure: NambuStructure | None = None

    def __post_init__(self):
        if self.kind is AnchorKind.PI_CONTRACTION and self.structure is None:
            raise ValueError("the contraction anchor needs a tensor")

    @classmethod
    def pi(cls, S: NambuStructure) -> "AnchorAssignment":
        return cls(AnchorKind.PI_CONTRACTION, S)

    @classmethod
    def zero(cls) -> "AnchorAssignment":
        return cls(AnchorKind.ZERO_MAP)

    def act(self, a: Form, f: Polynomial) -> Polynomial:
        if self.kind is AnchorKind.PI_CONTRACTION:
            return self.structure.sharp(a).apply(f)
        if self.kind is AnchorKind.ZERO_MAP:
            return f.chart.zero()
        raise ValueError("the tangent projection anchor only applies to generalized sections")


def natural_anchor(kind: BracketKind, S: NambuStructure) -> AnchorAssignment:
    """The anchor each bracket is built with."""
    if kind is BracketKind.DIFFERENCE:
        return AnchorAssignment.zero()
    return AnchorAssignment.pi(S)


def _operands(S: NambuStructure, a: Form, b: Form):
    k = S.order - 1
    for x in (a, b):
        if not isinstance(x, Form):
            raise TypeError("bracket arguments must be forms")
        if x.chart != S.chart:
            raise ValueError("bracket argument on another chart")
        if x.degree != k and x.comps:
            raise DegreeError(f"expected {k}-forms, got degree {x.degree}")


def _sign(p: int) -> int:
    return -1 if p & 1 else 1


def scalar_factor(S: NambuStructure, a: Form) -> Polynomial:
    """Full contraction of ``d a`` with the tensor."""
    da = ext_d(a)
    if not da:
        return S.chart.zero()
    return pair(da, S.tensor)


def hagiwara_bracket(S: NambuStructure, a: Form, b: Form) -> Form:
    _operands(S, a, b)
    return lie_form(S.sharp(a), b) - interior(S.sharp(b), ext_d(a))


def ibanez_bracket(S: NambuStructure, a: Form, b: Form) -> Form:
    _operands(S, a, b)
    return lie_form(S.sharp(a), b) + b * (_sign(S.order) * scalar_factor(S, a))


def difference_bracket(S: NambuStructure, a: Form, b: Form, signs: tuple[int, int] = (1, 1)) -> Form:
    """``signs`` flips either term; the default is the Leibniz-compatible choice."""
    _operands(S, a, b)
    s1, s2 = signs
    return interior(S.sharp(b), ext_d(a)) * s1 + b * (s2 * _sign(S.order) * scalar_factor(S, a))


def koszul_bracket(S: NambuStructure, a: Form, b: Form) -> Form:
    if S.order != 2:
        raise DegreeError("the Koszul bracket needs a bivector")
    _operands(S, a, b)
    return lie_form(S.sharp(a), b) - lie_form(S.sharp(b), a) - ext_d(Form.scalar(pair(wedge(a, b), S.tensor)))


_BRACKETS = {
    BracketKind.HAGIWARA: hagiwara_bracket,
    BracketKind.IBANEZ: ibanez_bracket,
    BracketKind.DIFFERENCE: difference_bracket,
    BracketKind.KOSZUL: koszul_bracket,
}


def bracket(kind: BracketKind, S: NambuStructure, a: Form, b: Form) -> Form:
    return _BRACKETS[kind](S, a, b)


def anchor_defect(kind, S, anchor: AnchorAssignment, a: Form, f: Polynomial, b: Form) -> Form:
    """``[[a, f b]] - f [[a, b]] - (anchor(a) f) b``."""
    if anchor.kind is AnchorKind.TANGENT_PROJECTION:
        raise ValueError("tangent projection is not an anchor for form brackets")
    return bracket(kind, S, a, b * f) - bracket(kind, S, a, b) * f - b * anchor.act(a, f)


def leibnizator(kind, S, a: Form, b: Form, c: Form) -> Form:
    br = _BRACKETS[kind]
    return br(S, a, br(S, b, c)) - br(S, br(S, a, b), c) - br(S, b, br(S, a, c))


def jacobiator(kind, S, a: Form, b: Form, c: Form) -> Form:
    """Cyclic Jacobi sum; agrees with the leibnizator for antisymmetric brackets."""
    br = _BRACKETS[kind]
    return br(S, a, br(S, b, c)) + br(S, b, br(S, c, a)) + br(S, c, br(S, a, b))


def morphism_defect(kind, S, anchor: AnchorAssignment, a: Form, b: Form, f: Polynomial) -> Polynomial:
    """``anchor([[a,b]]) f - [anchor(a), anchor(b)] f``."""
    if anchor.kind is AnchorKind.ZERO_MAP:
        return f.chart.zero()
    ab = bracket(kind, S, a, b)
    return anchor.act(ab, f) - anchor.act(a, anchor.act(b, f)) + anchor.act(b, anchor.act(a, f))


def derivation_defect(S: NambuStructure, a: Form, f: Polynomial, g: Polynomial) -> Polynomial:
    X = S.sharp(a)
    return X.apply(f * g) - f * X.apply(g) - g * X.apply(f)


def anchor_antisymmetry_defect(kind, S, a: Form, b: Form, f: Polynomial, anchor: AnchorAssignment | None = None) -> Polynomial:
    anchor = anchor or AnchorAssignment.pi(S)
    return anchor.act(bracket(kind, S, a, b) + bracket(kind, S, b, a), f)


def morphism_leibniz_identity_defect(kind, S, anchor, a: Form, b: Form, c: Form, f: Polynomial) -> Form:
    """Residual of ``M(a,b;f) c == f L(a,b,c) - L(a,b,f c)``.

    ``M`` is the morphism defect and ``L`` the leibnizator.  The identity
    holds exactly whenever the anchor rule holds, so it ties a nonzero
    morphism defect to a nonzero leibnizator instance.
    """
    lhs = c * morphism_defect(kind, S, anchor, a, b, f)
    rhs = leibnizator(kind, S, a, b, c) * f - leibnizator(kind, S, a, b, c * f)
    return lhs - rhs


def koszul_exact_sign(S: NambuStructure, f: Polynomial, g: Polynomial) -> int | None:
    """``s`` with ``{df, dg} = s d{f,g}``; None when both sides vanish or neither sign fits."""
    lhs = koszul_bracket(S, d(f), d(g))
    rhs = d(nambu_bracket(S, [f, g]))
    if not rhs:
        return None if not lhs else 0
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return 0
