from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbl.exterior import DegreeError, Form, MultiVector, contract, dx, e, insert, pair, wedge
from cbl.polyring import Chart, ChartMismatchError

from _support import R2, R3, R4, F, P, V, forms, multivectors, polynomials


def perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def tensor_entry(a, idx):
    """Fully antisymmetric tensor entry at an arbitrary index tuple."""
    if len(set(idx)) < len(idx):
        return a.chart.zero()
    return a.comps.get(tuple(sorted(idx)), a.chart.zero()) * perm_sign(idx)


def contract_oracle(beta, P_):
    """(i_beta P)^{I} = (1/k!) sum_J beta_J P^{J I} over ordered J."""
    n, k, p = P_.chart.dim, beta.degree, P_.degree
    comps = {}
    for rest in combinations(range(n), p - k):
        total = P_.chart.zero()
        for J in permutations(range(n), k):
            total = total + tensor_entry(beta, J) * tensor_entry(P_, J + rest)
        comps[rest] = total / factorial(k)
    return MultiVector(P_.chart, p - k, comps)


def wedge_oracle(a, b):
    n, k, l = a.chart.dim, a.degree, b.degree
    comps = {}
    for I in combinations(range(n), k + l):
        total = a.chart.zero()
        for s in permutations(I):
            total = total + tensor_entry(a, s[:k]) * tensor_entry(b, s[k:]) * perm_sign(s)
        comps[I] = total / (factorial(k) * factorial(l))
    return type(a)(a.chart, k + l, comps)


def test_wedge_examples():
    assert wedge(dx(R3, 0), dx(R3, 1)).comps == {(0, 1): R3.one()}
    assert wedge(dx(R3, 0), dx(R3, 0)).is_zero()
    assert wedge(F("x1*dx2"), F("dx1")) == F("-x1*dx1^dx2")


def test_wedge_beyond_top_degree_is_a_zero_of_that_degree():
    w = wedge(F("dx1^dx2", R2), F("dx1", R2))
    assert w.is_zero() and w.degree == 3


def test_contract_examples():
    assert contract(F("dx1^dx2"), V("e1^e2^e3")) == V("e3")
    assert contract(F("dx1^dx2^dx3"), V("e1^e2^e3")).scalar_part() == 1
    assert contract(F("dx4", R4), V("e1^e2^e3", R4)).is_zero()
    assert contract(F("dx2^dx4", R4), V("e1^e2^e3", R4)).is_zero()


def test_contract_errors():
    with pytest.raises(DegreeError):
        contract(F("dx1^dx2"), V("e1"))
    with pytest.raises(ChartMismatchError):
        contract(F("dx1", R2), V("e1"))


def test_rendering():
    assert str(V("x3*e1^e2")) == "x3*e1^e2"
    assert str(F("(x1 - x2)*dx1^dx2")) == "(x1 - x2)*dx1^dx2"
    assert str(F("dx1^dx2 - 2*dx2^dx3")) == "dx1^dx2 - 2*dx2^dx3"
    assert str(Form.zero(R3, 2)) == "0"


def test_component_access_is_signed():
    w = F("x1*dx1^dx3")
    assert w[(2, 0)] == P("-x1")
    assert w[(0, 0)] == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_contract_matches_permutation_oracle_on_all_basis_pairs(n):
    chart = Chart.standard(n)
    for p in range(n + 1):
        for I in combinations(range(n), p):
            P_ = MultiVector.basis(chart, I)
            for k in range(p + 1):
                for J in combinations(range(n), k):
                    beta = Form.basis(chart, J)
                    assert contract(beta, P_) == contract_oracle(beta, P_), (I, J)


@settings(max_examples=40, deadline=None)
@given(forms(R4, 1), forms(R4, 1), multivectors(R4, 3))
def test_contract_is_iterated_single_contraction(a, b, P_):
    assert contract(wedge(a, b), P_) == contract(b, contract(a, P_))
    assert contract(wedge(a, b), P_) == contract_oracle(wedge(a, b), P_)


@settings(max_examples=40, deadline=None)
@given(polynomials(R3), forms(R3, 2), multivectors(R3, 3))
def test_contract_is_function_linear(f, beta, P_):
    assert contract(beta * f, P_) == contract(beta, P_) * f
    assert contract(beta, P_ * f) == contract(beta, P_) * f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_wedge_graded_commutative_and_matches_oracle(k, l, data):
    a = data.draw(forms(R4, k))
    b = data.draw(forms(R4, l))
    assert wedge(a, b) == wedge(b, a) * (-1) ** (k * l)
    assert wedge(a, b) == wedge_oracle(a, b)


@settings(max_examples=40, deadline=None)
@given(forms(R4, 1), forms(R4, 1), forms(R4, 2))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=30, deadline=None)
@given(forms(R4, 3), multivectors(R4, 3))
def test_pair_agrees_with_full_contraction_and_insert(beta, P_):
    full = pair(beta, P_)
    assert full == contract(beta, P_).scalar_part()
    assert insert(P_, beta).scalar_part() == full


def test_insert_first_slot():
    assert insert(V("e1"), F("dx1^dx2")) == F("dx2")
    assert insert(V("e2"), F("dx1^dx2")) == F("-dx1")


def test_sum_degree_mismatch():
    with pytest.raises(DegreeError):
        F("dx1") + F("dx1^dx2")
    assert F("dx1") + Form.zero(R3, 2) == F("dx1")


def test_invalid_component_keys():
    with pytest.raises(ValueError):
        Form(R3, 2, {(1, 0): R3.one()})
    with pytest.raises(IndexError):
        Form(R3, 1, {(3,): R3.one()})


def test_basis_helpers():
    assert e(R3, 1, 0) == V("-e1^e2")
    assert dx(R3, 2) == F("dx3")
    assert Form.basis(R3, (0, 0)).is_zero()
    assert (F("dx1") * Fraction(1, 2)) == F("1/2*dx1")
