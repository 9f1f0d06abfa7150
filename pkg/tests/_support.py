"""Shared strategies and shorthands for the test modules."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from cbl.cartan import d
from cbl.courant import GeneralizedSection
from cbl.exterior import Form, MultiVector, wedge
from cbl.parse import parse_value
from cbl.polyring import Chart, Polynomial

R2 = Chart.standard(2)
R3 = Chart.standard(3)
R4 = Chart.standard(4)


def P(text, chart=R3):
    return parse_value(text, "polynomial", chart)


def F(text, chart=R3, degree=None):
    return parse_value(text, "form", chart, degree)


def V(text, chart=R3, degree=None):
    return parse_value(text, "multivector", chart, degree)


def S(text, chart=R3):
    return parse_value(text, "section", chart)


coefficients = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


def _count(n, picks):
    out = [0] * n
    for i in picks:
        out[i] += 1
    return out


def exponents(n, max_degree):
    return st.lists(st.integers(0, n - 1), max_size=max_degree).map(lambda picks: _count(n, picks))


def polynomials(chart=R3, max_degree=2, max_terms=4):
    return st.dictionaries(
        exponents(chart.dim, max_degree).map(tuple), coefficients, max_size=max_terms
    ).map(lambda t: Polynomial.from_terms(chart, t))


def alternating(cls, chart=R3, degree=1, max_degree=2, max_terms=3):
    keys = list(combinations(range(chart.dim), degree))
    return st.dictionaries(
        st.sampled_from(keys), polynomials(chart, max_degree, max_terms), max_size=min(len(keys), 3)
    ).map(lambda comps: cls(chart, degree, comps))


def forms(chart=R3, degree=1, **kw):
    return alternating(Form, chart, degree, **kw)


def multivectors(chart=R3, degree=1, **kw):
    return alternating(MultiVector, chart, degree, **kw)


def sections(chart=R3, **kw):
    return st.builds(GeneralizedSection, multivectors(chart, 1, **kw), forms(chart, 1, **kw))


def lie_form_oracle(X, a):
    """Derivation rule: L_X(f dx^I) = X(f) dx^I + f * sum over slots of dx..d(X^i_m)..dx."""
    chart = a.chart
    out = Form.zero(chart, a.degree)
    for idx, f in a.comps.items():
        out = out + Form.basis(chart, idx, X.apply(f))
        for m, i in enumerate(idx):
            term = Form.scalar(f)
            for s, j in enumerate(idx):
                term = wedge(term, d(X[(i,)]) if s == m else Form.basis(chart, (j,)))
            out = out + term
    return out
