from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbl.cartan import (
    NambuStructure, d, ext_d, fi_defect, hamiltonian_vf, interior, invariance_defect, lie_form, lie_mv,
    nambu_bracket, schouten, vf_bracket,
)
from cbl.exterior import DegreeError, Form, MultiVector, pair, wedge
from cbl.library import library

from _support import R2, R3, R4, F, P, V, forms, lie_form_oracle, multivectors, polynomials



def perm_sign(seq):
    return (-1) ** sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def lie_mv_oracle(X, P_):
    """Derivation rule over the wedge of basis vectors: L_X e_i = [X, e_i] = -sum_j d_i(X^j) e_j."""
    chart = P_.chart
    out = MultiVector.zero(chart, P_.degree)
    for idx, f in P_.comps.items():
        out = out + MultiVector.basis(chart, idx, X.apply(f))
        for m in range(len(idx)):
            term = MultiVector.scalar(f)
            for s, j in enumerate(idx):
                factor = vf_bracket(X, MultiVector.basis(chart, (j,))) if s == m else MultiVector.basis(chart, (j,))
                term = wedge(term, factor)
            out = out + term
    return out


# ---------------------------------------------------------------- examples


def test_ext_d_examples():
    assert d(P("x1")) == F("dx1")
    assert ext_d(F("x1*dx2")) == F("dx1^dx2")
    top = ext_d(F("x1*dx1^dx2^dx3"))
    assert top.is_zero() and top.degree == 4


def test_interior_examples():
    assert interior(V("e1"), F("dx1^dx2")) == F("dx2")
    assert interior(V("e3"), F("dx1^dx2")).is_zero()
    assert interior(V("e2"), F("dx1^dx2")) == F("-dx1")
    with pytest.raises(DegreeError):
        interior(V("e1"), Form.scalar(P("x1")))


def test_lie_form_examples():
    assert lie_form(V("e1"), F("x1*dx2")) == F("dx2")
    assert lie_form(V("e1 + 2*e3"), F("dx1 - 3*dx3")).is_zero()
    assert lie_form(V("x1*e1"), F("dx1")) == F("dx1")


def test_vf_bracket_examples():
    assert vf_bracket(V("e1"), V("e2")).is_zero()
    assert vf_bracket(V("x1*e2"), V("e1")) == V("-e2")
    X = V("x1*x2*e1 - x3*e2")
    assert vf_bracket(X, X).is_zero()


def test_lie_mv_examples():
    assert lie_mv(V("e1"), V("e2^e3")).is_zero()
    X, Y = V("x2*e1 + x3^2*e3"), V("x1*e2")
    assert lie_mv(X, Y) == vf_bracket(X, Y)
    assert lie_mv(V("x2*e1"), V("e2^e3")) == V("-e1^e3")


def test_schouten_examples():
    assert schouten(V("e1"), V("e2")).is_zero()
    assert schouten(V("e1^e2"), V("e1^e2")).is_zero()
    sq = schouten(V("e1^e2 + x1*e1^e3"), V("e1^e2 + x1*e1^e3"))
    assert sq == V("2*e1^e2^e3")


def test_nambu_examples():
    S = NambuStructure(V("e1^e2^e3"))
    assert nambu_bracket(S, [P("x1"), P("x2"), P("x3")]) == 1
    assert nambu_bracket(S, [P("x1"), P("x1"), P("x2")]) == 0
    assert nambu_bracket(S, [P("x1*x2"), P("x2"), P("x3")]) == P("x2")
    with pytest.raises(ValueError):
        nambu_bracket(S, [P("x1"), P("x2")])


def test_hamiltonian_examples():
    S = NambuStructure(V("e1^e2^e3"))
    assert hamiltonian_vf(S, [P("x1"), P("x2")]) == V("e3")
    assert hamiltonian_vf(S, [P("x1*x3"), P("x1*x3")]).is_zero()
    assert hamiltonian_vf(NambuStructure(V("e1^e2", R2)), [P("x1", R2)]) == V("e2", R2)
    with pytest.raises(ValueError):
        hamiltonian_vf(S, [P("x1")])


def test_nambu_structure_bounds():
    with pytest.raises(ValueError):
        NambuStructure(V("e1"))
    with pytest.raises(ValueError):
        NambuStructure(V("x1"))


def test_invariance_and_fi_examples():
    S = NambuStructure(V("e1^e2^e3", R4))
    assert invariance_defect(S, [P("x1 + 2*x4", R4), P("x2 - x3", R4)]).is_zero()
    assert fi_defect(S, [P("x1", R4), P("x2", R4)], [P("x3", R4), P("x4", R4), P("x1", R4)]) == 0
    with pytest.raises(ValueError):
        fi_defect(S, [P("x1", R4)], [P("x3", R4), P("x4", R4), P("x1", R4)])


# ---------------------------------------------------------------- properties


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_d_squared_is_zero(k, data):
    a = data.draw(forms(R3, k, max_degree=3))
    assert ext_d(ext_d(a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(multivectors(R3, 1), st.integers(0, 3), st.data())
def test_cartan_formula_matches_derivation_rule(X, k, data):
    a = data.draw(forms(R3, k))
    assert lie_form(X, a) == lie_form_oracle(X, a)


@settings(max_examples=40, deadline=None)
@given(multivectors(R3, 1), multivectors(R3, 1), st.integers(1, 3), st.data())
def test_interior_of_commutator(X, Y, k, data):
    a = data.draw(forms(R3, k))
    assert interior(vf_bracket(X, Y), a) == lie_form(X, interior(Y, a)) - interior(Y, lie_form(X, a))


@settings(max_examples=40, deadline=None)
@given(multivectors(R3, 1), st.integers(0, 3), st.data())
def test_lie_mv_matches_derivation_rule(X, p, data):
    P_ = data.draw(multivectors(R3, p))
    assert lie_mv(X, P_) == lie_mv_oracle(X, P_)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_schouten_graded_antisymmetry(p, q, data):
    A = data.draw(multivectors(R3, p))
    B = data.draw(multivectors(R3, q))
    assert schouten(A, B) == schouten(B, A) * (-(-1) ** ((p - 1) * (q - 1)))


@settings(max_examples=40, deadline=None)
@given(multivectors(R3, 1), multivectors(R3, 1), st.integers(0, 3), st.data())
def test_schouten_reduces_to_lie_derivative(X, Y, q, data):
    Q = data.draw(multivectors(R3, q))
    assert schouten(X, Y) == vf_bracket(X, Y)
    assert schouten(X, Q) == lie_mv(X, Q)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(0, 1), st.data())
def test_schouten_graded_leibniz(p, q, r, data):
    A = data.draw(multivectors(R4, p))
    B = data.draw(multivectors(R4, q))
    C = data.draw(multivectors(R4, r))
    lhs = schouten(A, wedge(B, C))
    rhs = wedge(schouten(A, B), C) + wedge(B, schouten(A, C)) * (-1) ** ((p - 1) * q)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(multivectors(R3, 2), polynomials(R3), polynomials(R3), polynomials(R3))
def test_schouten_square_is_twice_the_jacobiator(Pi, f, g, h):
    if Pi.is_zero():
        return
    S = NambuStructure(Pi)

    def br(a, b):
        return nambu_bracket(S, [a, b])

    jac = br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))
    assert pair(wedge(wedge(d(f), d(g)), d(h)), schouten(Pi, Pi)) == jac * 2


@settings(max_examples=40, deadline=None)
@given(polynomials(R2, max_degree=3), polynomials(R2, max_degree=3))
def test_canonical_poisson_bracket(f, g):
    S = NambuStructure(V("e1^e2", R2))
    assert nambu_bracket(S, [f, g]) == f.partial(0) * g.partial(1) - f.partial(1) * g.partial(0)


@settings(max_examples=25, deadline=None)
@given(polynomials(R3), polynomials(R3), polynomials(R3))
def test_nambu_bracket_is_the_jacobian_determinant(f, g, h):
    S = NambuStructure(V("e1^e2^e3"))
    rows = [[q.partial(i) for i in range(3)] for q in (f, g, h)]
    det = R3.zero()
    for perm in permutations(range(3)):
        term = R3.one() * perm_sign(perm)
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        det = det + term
    assert nambu_bracket(S, [f, g, h]) == det


@settings(max_examples=25, deadline=None)
@given(polynomials(R3), polynomials(R3), polynomials(R3))
def test_nambu_bracket_is_totally_antisymmetric(f, g, h):
    S = NambuStructure(V("x1*e1^e2^e3"))
    base = nambu_bracket(S, [f, g, h])
    assert nambu_bracket(S, [g, f, h]) == -base
    assert nambu_bracket(S, [g, h, f]) == base


# ---------------------------------------------------------------- library tensors


@pytest.mark.parametrize("name", [n for n, e in library().items() if e.is_np])
def test_certified_tensors_have_zero_defects(name):
    from cbl.harness import GeneratorConfig, instance_rng, random_polynomial

    entry = library()[name]
    S, chart, p = entry.structure, entry.chart, entry.order
    cfg = GeneratorConfig()
    for i in range(30):
        rng = instance_rng(cfg, "cartan-test", name, i)
        fs = [random_polynomial(rng, cfg, chart) for _ in range(p - 1)]
        gs = [random_polynomial(rng, cfg, chart) for _ in range(p)]
        assert invariance_defect(S, fs).is_zero()
        assert fi_defect(S, fs, gs) == 0


def test_sum6_invariance_witness():
    entry = library()["sum6"]
    fs = [P(t, entry.chart) for t in entry.certificate["fs"]]
    assert not invariance_defect(entry.structure, fs).is_zero()
