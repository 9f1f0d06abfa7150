"""Exact bracket calculus on polynomial forms and multivector fields."""

from ._backend import BACKEND
from .polyring import Chart, ChartMismatchError, Polynomial, Rational
from .exterior import DegreeError, Form, MultiVector, contract, wedge
from .cartan import NambuStructure, ext_d, interior, lie_form, lie_mv, schouten, vf_bracket
from .courant import GeneralizedSection

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Chart",
    "ChartMismatchError",
    "DegreeError",
    "Form",
    "GeneralizedSection",
    "MultiVector",
    "NambuStructure",
    "Polynomial",
    "Rational",
    "contract",
    "ext_d",
    "interior",
    "lie_form",
    "lie_mv",
    "schouten",
    "vf_bracket",
    "wedge",
]
