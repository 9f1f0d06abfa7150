import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbl import harness
from cbl.harness import EXPERIMENTS, GeneratorConfig, Verdict, gen_polynomial, run_experiment

from _support import R3, R4, V

SMALL = GeneratorConfig(seed=5, trials=10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**63 - 1), st.integers(0, 10_000), st.integers(0, 3), st.integers(1, 5), st.integers(1, 5))
def test_gen_polynomial_contract(seed, pos, max_degree, bound, terms):
    cfg = GeneratorConfig(seed=seed, max_degree=max_degree, coeff_bound=bound, max_terms=terms)
    p = gen_polynomial(cfg, pos, R3)
    assert p == gen_polynomial(cfg, pos, R3)
    assert p.degree <= max_degree and len(p.terms) <= terms
    assert all(abs(c) <= bound * terms and c.denominator == 1 for c in p.terms.values())


def test_gen_polynomial_edge_configs():
    cfg = GeneratorConfig(seed=1, max_degree=0)
    assert all(gen_polynomial(cfg, i, R3).degree <= 0 for i in range(50))
    cfg = GeneratorConfig(seed=1, coeff_bound=1, max_terms=1)
    for i in range(50):
        terms = gen_polynomial(cfg, i, R3).terms
        assert len(terms) <= 1 and all(c in (-1, 1) for c in terms.values())


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(coeff_bound=0)
    with pytest.raises(ValueError):
        GeneratorConfig(trials=-1)


def test_every_experiment_registered_once():
    assert len(EXPERIMENTS) == 15
    for exp in EXPERIMENTS.values():
        assert harness.targets_for(exp)


def test_spec_examples():
    assert run_experiment("hagiwara-leibniz", "np3_r3").verdict == "ALL_ZERO"
    assert run_experiment("zero-anchor", "sum6").verdict == "ALL_ZERO"
    eq = run_experiment("hagiwara-equivalence", "sum6")
    assert eq.verdict == "WITNESS_FOUND" and eq.matches
    assert set(eq.details["search_found"]) == {"morphism", "leibnizator"}


def test_trials_zero_is_inconclusive():
    cfg = GeneratorConfig(trials=0)
    for slug in ("hagiwara-leibniz", "anchor-morphism-implication", "courant-axioms"):
        for target in harness.targets_for(EXPERIMENTS[slug])[:2]:
            r = run_experiment(slug, target, cfg)
            assert r.verdict == Verdict.INCONCLUSIVE.value and r.instances_run == 0


def test_search_cap_exhaustion_is_inconclusive():
    r = run_experiment("hagiwara-equivalence", "sum6", GeneratorConfig(trials=1, search_cap=1))
    assert r.verdict == "INCONCLUSIVE" and not r.matches


def test_report_invariants_and_witness_revalidation():
    reports = harness.run_all(SMALL)
    for r in reports:
        if r.verdict == "ALL_ZERO":
            assert not r.witnesses
        if r.verdict == "WITNESS_FOUND":
            assert r.witnesses
    doc = json.loads(harness.to_json(reports, SMALL))
    checked = 0
    for rep in doc["reports"]:
        for w in rep["witnesses"]:
            values = harness.reevaluate_witness(rep, w)
            assert values and all(harness._nonzero(v) for v in values.values())
            assert {k: str(v) for k, v in values.items()} == w["defects"]
            checked += 1
    assert checked > 0


def test_determinism():
    a = harness.to_json(harness.run_all(SMALL, ["hagiwara-morphism", "courant-axioms"]), SMALL)
    b = harness.to_json(harness.run_all(SMALL, ["hagiwara-morphism", "courant-axioms"]), SMALL)
    assert a == b


def test_json_field_order():
    r = run_experiment("anchor-derivation", "np2_r2", SMALL)
    keys = list(json.loads(harness.to_json([r], SMALL))["reports"][0])
    assert keys[:2] == ["experiment", "tensor"] and keys.index("verdict") < keys.index("witnesses")
    header = json.loads(harness.to_json([r], SMALL))["header"]
    assert "evidence" in header["note"] and header["config"]["trials"] == 10


def test_inline_tensor():
    r = run_experiment("hagiwara-leibniz", V("x2*e1^e2^e3 + e1^e2^e4", R4), SMALL)
    assert r.tensor == "inline" and r.expected is None
    assert r.verdict in ("ALL_ZERO", "WITNESS_FOUND")


def test_incompatible_inputs():
    with pytest.raises(ValueError):
        run_experiment("courant-axioms", "np3_r3")
    with pytest.raises(ValueError):
        run_experiment("koszul-equivalence", "np3_r3")
    with pytest.raises(KeyError):
        run_experiment("hagiwara-leibniz", "nope")
    with pytest.raises(KeyError):
        run_experiment("nope", "np3_r3")


def test_implication_runner_reports_per_kind():
    r = run_experiment("anchor-morphism-implication", "bad2_r3", SMALL)
    kinds = r.details["kinds"]
    assert set(kinds) == {"hagiwara", "ibanez", "difference", "koszul"}
    assert not any(k["counterexample"] for k in kinds.values())
    assert kinds["hagiwara"]["nonzero_morphism"] > 0 and kinds["hagiwara"]["nonzero_leibnizator"] > 0


def test_markdown_lists_mismatches():
    r = run_experiment("difference-leibniz", "x3np2_r3", SMALL)
    md = harness.to_markdown([r], SMALL)
    assert "## Mismatches" in md and "difference-leibniz" in md
