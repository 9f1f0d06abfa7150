import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbl.exterior import DegreeError, Form, MultiVector
from cbl.parse import DegreeMismatchError, ParseError, UnknownVariableError, parse, parse_value
from cbl.polyring import Chart

from _support import R3, F, P, V, forms, multivectors, polynomials, sections


def test_grammar_examples():
    w = parse_value("x1*dx1^dx2 + 3/2*dx2^dx3", "form", R3)
    assert isinstance(w, Form) and w.degree == 2
    assert w.comps == {(0, 1): P("x1"), (1, 2): P("3/2")}
    t = parse_value("e1^e2^e3", "multivector", R3)
    assert isinstance(t, MultiVector) and t.comps == {(0, 1, 2): R3.one()}
    z = parse_value("dx1^dx1", "form", R3)
    assert z.is_zero() and z.degree == 2


def test_spaced_differential_and_powers():
    assert F("d x1 ^ d x2") == F("dx1^dx2")
    assert P("(x1 + 1)^2") == P("x1^2 + 2*x1 + 1")
    assert P("-x1/2") == P("-1/2*x1")


def test_expression_keeps_source():
    expr = parse("x1 + x2", "polynomial", R3)
    assert expr.source == "x1 + x2" and expr.value == P("x2 + x1")


def test_custom_chart_names():
    chart = Chart.parse("p,q")
    assert str(parse_value("p*dq - q*dp", "form", chart)) == "-q*dp + p*dq"


@pytest.mark.parametrize(
    "src, pos",
    [("x1 + ", 5), ("x1 * * x2", 5), ("(x1", 3), ("x1 $ x2", 3), ("@(e1 dx1)", 5)],
)
def test_syntax_errors_carry_positions(src, pos):
    with pytest.raises(ParseError) as info:
        parse_value(src, None, R3)
    assert info.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_value("x1 + y7", None, R3)
    assert info.value.position == 5
    with pytest.raises(UnknownVariableError):
        parse_value("e4", None, R3)


def test_degree_inconsistency():
    with pytest.raises(DegreeMismatchError) as info:
        parse_value("dx1 + dx1^dx2", "form", R3)
    assert isinstance(info.value, DegreeError) and isinstance(info.value, ParseError)
    with pytest.raises(DegreeMismatchError):
        parse_value("dx1", "form", R3, 2)


def test_kind_errors():
    with pytest.raises(ParseError):
        parse_value("dx1", "multivector", R3)
    with pytest.raises(ParseError):
        parse_value("e1 + dx1", None, R3)
    with pytest.raises(ParseError):
        parse_value("dx1 * dx2", "form", R3)


def test_zero_takes_the_expected_degree():
    z = parse_value("0", "form", R3, 2)
    assert z.is_zero() and z.degree == 2


def test_sections():
    x = parse_value("@(x1*e2; dx3 - x2*dx1)", "section", R3)
    assert x.vector == V("x1*e2") and x.covector == F("dx3 - x2*dx1")
    assert parse_value("@(0; 0)", "section", R3).is_zero()
    with pytest.raises(ParseError):
        parse_value("@(dx1; e1)", "section", R3)


def _round_trip(value, kind, degree=None):
    text = str(value)
    again = parse_value(text, kind, value.chart if kind != "section" else value.chart, degree)
    assert again == value
    assert str(again) == text


@settings(max_examples=60, deadline=None)
@given(polynomials(R3, max_degree=3))
def test_polynomial_round_trip(p):
    _round_trip(p, "polynomial")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.data())
def test_form_and_multivector_round_trip(k, data):
    w = data.draw(forms(R3, k))
    _round_trip(w, "form", k)
    v = data.draw(multivectors(R3, k))
    _round_trip(v, "multivector", k)


@settings(max_examples=40, deadline=None)
@given(sections(R3))
def test_section_round_trip(x):
    _round_trip(x, "section")
