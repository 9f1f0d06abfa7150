"""Seeded instance generation, experiment orchestration and reports.

Every experiment evaluates named exact defects on a stream of random
instances.  Instance ``i`` of experiment ``e`` on tensor ``t`` is drawn
from ``random.Random(f"{seed}|{e}|{t}|{i}")``, so runs are reproducible and
independent of evaluation order.

A defect has a role: ``always`` defects must vanish on every tensor;
``np`` defects must vanish on Nambu-Poisson tensors, and on the other
tensors are either searched for witnesses (the experiment's ``search``
set) or only observed.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from . import brackets as br
from . import courant as cr
from .brackets import AnchorAssignment, BracketKind
from .cartan import d, nambu_bracket, schouten
from .courant import GeneralizedSection
from .exterior import Form, MultiVector, rank, wedge
from .library import Certification, TensorEntry, library
from .parse import parse_value
from .polyring import Chart, Polynomial

SEARCH_CAP = 10_000
MAX_WITNESSES = 3
COURANT_CHART = Chart.standard(3)
COURANT_TARGET = "tm_plus_tstar_r3"

EPISTEMIC_NOTE = (
    "Exact rational arithmetic. ALL_ZERO means every tracked defect vanished "
    "identically on each of the sampled instances (random polynomial coefficients "
    "of bounded degree); it is evidence for, not a proof of, the quantified identity."
)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    max_degree: int = 2
    coeff_bound: int = 3
    max_terms: int = 4
    trials: int = 100
    search_cap: int = SEARCH_CAP

    def __post_init__(self):
        if self.max_degree < 0 or self.trials < 0:
            raise ValueError("max_degree and trials must be nonnegative")
        if self.coeff_bound < 1 or self.max_terms < 1 or self.search_cap < 1:
            raise ValueError("coeff_bound, max_terms and search_cap must be positive")


class Verdict(str, enum.Enum):
    ALL_ZERO = "ALL_ZERO"
    WITNESS_FOUND = "WITNESS_FOUND"
    INCONCLUSIVE = "INCONCLUSIVE"


# ---------------------------------------------------------------- generation


def random_polynomial(rng: random.Random, cfg: GeneratorConfig, chart: Chart) -> Polynomial:
    n = chart.dim
    terms: dict = {}
    for _ in range(rng.randint(1, cfg.max_terms)):
        exps = [0] * n
        for _ in range(rng.randint(0, cfg.max_degree)):
            exps[rng.randrange(n)] += 1
        c = rng.randint(-cfg.coeff_bound, cfg.coeff_bound)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c
    return Polynomial.from_terms(chart, terms)


def gen_polynomial(cfg: GeneratorConfig, position, chart: Chart) -> Polynomial:
    """Deterministic polynomial for ``(cfg.seed, position)``."""
    return random_polynomial(random.Random(f"{cfg.seed}|poly|{position}"), cfg, chart)


def random_alternating(rng, cfg, chart: Chart, degree: int, cls=Form):
    n = chart.dim
    if degree == 0:
        return cls.scalar(random_polynomial(rng, cfg, chart))
    keys = list(combinations(range(n), degree))
    count = rng.randint(1, min(cfg.max_terms, rank(n, degree)))
    comps = {k: random_polynomial(rng, cfg, chart) for k in sorted(rng.sample(keys, count))}
    return cls(chart, degree, comps)


def random_form(rng, cfg, chart, degree) -> Form:
    return random_alternating(rng, cfg, chart, degree, Form)


def random_vector(rng, cfg, chart) -> MultiVector:
    return random_alternating(rng, cfg, chart, 1, MultiVector)


def random_section(rng, cfg, chart) -> GeneralizedSection:
    return GeneralizedSection(random_vector(rng, cfg, chart), random_form(rng, cfg, chart, 1))


def instance_rng(cfg: GeneratorConfig, slug: str, target: str, index: int) -> random.Random:
    return random.Random(f"{cfg.seed}|{slug}|{target}|{index}")


# ---------------------------------------------------------------- values <-> text


def describe(value) -> dict:
    if isinstance(value, Polynomial):
        return {"type": "polynomial", "text": str(value)}
    if isinstance(value, GeneralizedSection):
        return {"type": "section", "text": str(value)}
    if isinstance(value, Form):
        return {"type": "form", "degree": value.degree, "text": str(value)}
    if isinstance(value, MultiVector):
        return {"type": "multivector", "degree": value.degree, "text": str(value)}
    if isinstance(value, (list, tuple)):
        return {"type": "list", "items": [describe(v) for v in value]}
    raise TypeError(f"cannot describe {type(value).__name__}")


def restore(desc: dict, chart: Chart):
    if desc["type"] == "list":
        return [restore(d_, chart) for d_ in desc["items"]]
    kind = desc["type"]
    return parse_value(desc["text"], kind, chart, desc.get("degree"))


def _nonzero(value) -> bool:
    if isinstance(value, (list, tuple)):
        return any(_nonzero(v) for v in value)
    if isinstance(value, bool):
        return value
    return not value.is_zero()


# ---------------------------------------------------------------- experiments


@dataclass(frozen=True)
class Experiment:
    slug: str
    claim: str
    defects: dict  # name -> "always" | "np"
    sample: Callable  # (target, rng, cfg) -> inputs dict
    evaluate: Callable  # (target, inputs) -> defects dict
    search: tuple = ()  # np defects that must all show witnesses on non-NP tensors
    applies: Callable = lambda entry: entry is not None
    summarize: Callable | None = None  # (target) -> extra details

    @property
    def np_conditional(self) -> bool:
        return any(role == "np" for role in self.defects.values())


def _kinds(entry: TensorEntry) -> list[BracketKind]:
    kinds = [BracketKind.HAGIWARA, BracketKind.IBANEZ, BracketKind.DIFFERENCE]
    if entry.order == 2:
        kinds.append(BracketKind.KOSZUL)
    return kinds


def _sample_forms(names):
    def sample(entry, rng, cfg):
        out = {}
        for nm in names:
            if nm in ("f", "g"):
                out[nm] = random_polynomial(rng, cfg, entry.chart)
            else:
                out[nm] = random_form(rng, cfg, entry.chart, entry.order - 1)
        return out

    return sample


def _kind_evaluator(kind, fn):
    def evaluate(entry, x):
        return fn(kind, entry.structure, x)

    return evaluate


def _eval_morphism(kind):
    def evaluate(entry, x):
        S = entry.structure
        return {"morphism": br.morphism_defect(kind, S, AnchorAssignment.pi(S), x["a"], x["b"], x["f"])}

    return evaluate


def _eval_leibniz(kind):
    def evaluate(entry, x):
        return {"leibnizator": br.leibnizator(kind, entry.structure, x["a"], x["b"], x["c"])}

    return evaluate


def _eval_equivalence(kind):
    def evaluate(entry, x):
        S = entry.structure
        return {
            "morphism": br.morphism_defect(kind, S, AnchorAssignment.pi(S), x["a"], x["b"], x["f"]),
            "leibnizator": br.leibnizator(kind, S, x["a"], x["b"], x["c"]),
        }

    return evaluate


def _eval_antisymmetry(entry, x):
    S = entry.structure
    kinds = [BracketKind.HAGIWARA, BracketKind.IBANEZ] + ([BracketKind.KOSZUL] if S.order == 2 else [])
    return {
        f"{k.value}_antisymmetry": br.anchor_antisymmetry_defect(k, S, x["a"], x["b"], x["f"]) for k in kinds
    }


def _eval_derivation(entry, x):
    return {"derivation": br.derivation_defect(entry.structure, x["a"], x["f"], x["g"])}


def _eval_hagiwara_anchor(entry, x):
    S = entry.structure
    return {"anchor": br.anchor_defect(BracketKind.HAGIWARA, S, AnchorAssignment.pi(S), x["a"], x["f"], x["b"])}


def _sample_exact(entry, rng, cfg):
    k = entry.order - 1
    chart = entry.chart
    return {
        "fs": [random_polynomial(rng, cfg, chart) for _ in range(k)],
        "gs": [random_polynomial(rng, cfg, chart) for _ in range(k)],
        "f": random_polynomial(rng, cfg, chart),
        "b": random_form(rng, cfg, chart, k),
    }


def _exact_form(fs, chart):
    out = Form.scalar(chart.one())
    for f in fs:
        out = wedge(out, d(f))
    return out


def ibanez_characterization_defect(S, fs, gs) -> Form:
    """``[[df.., dg..]]_I - sum_i dg_1 ^ .. ^ d{f.., g_i} ^ .. ^ dg_k``."""
    chart = S.chart
    lhs = br.ibanez_bracket(S, _exact_form(fs, chart), _exact_form(gs, chart))
    rhs = Form.zero(chart, S.order - 1)
    for i in range(len(gs)):
        replaced = list(gs)
        replaced[i] = nambu_bracket(S, list(fs) + [gs[i]])
        rhs = rhs + _exact_form(replaced, chart)
    return lhs - rhs


def _eval_ibanez_char(entry, x):
    S = entry.structure
    return {
        "characterization": ibanez_characterization_defect(S, x["fs"], x["gs"]),
        "anchor": br.anchor_defect(
            BracketKind.IBANEZ, S, AnchorAssignment.pi(S), _exact_form(x["fs"], S.chart), x["f"], x["b"]
        ),
    }


def _eval_difference(entry, x):
    S = entry.structure
    a, b, c = x["a"], x["b"], x["c"]
    structural = br.difference_bracket(S, a, b) - (br.ibanez_bracket(S, a, b) - br.hagiwara_bracket(S, a, b))
    q = Fraction(-3, 2)
    bilinear = br.difference_bracket(S, a * q + c, b) - (br.difference_bracket(S, a, b) * q + br.difference_bracket(S, c, b))
    bilinear = bilinear + br.difference_bracket(S, a, b * q + c) - (br.difference_bracket(S, a, b) * q + br.difference_bracket(S, a, c))
    return {
        "structural": structural,
        "bilinearity": bilinear,
        "leibnizator": br.leibnizator(BracketKind.DIFFERENCE, S, a, b, c),
    }


SIGN_VARIANTS = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def _eval_zero_anchor(entry, x):
    S = entry.structure
    a, b, f = x["a"], x["b"], x["f"]
    out = {"zero_anchor": br.anchor_defect(BracketKind.DIFFERENCE, S, AnchorAssignment.zero(), a, f, b)}
    for s1, s2 in SIGN_VARIANTS[1:]:
        lhs = br.difference_bracket(S, a, b * f, (s1, s2)) - br.difference_bracket(S, a, b, (s1, s2)) * f
        out[f"zero_anchor_signs_{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}"] = lhs
    return out


def _sample_sections(entry, rng, cfg):
    chart = COURANT_CHART if entry is None else entry.chart
    return {
        "x": random_section(rng, cfg, chart),
        "y": random_section(rng, cfg, chart),
        "z": random_section(rng, cfg, chart),
        "f": random_polynomial(rng, cfg, chart),
    }


def _eval_courant(entry, x):
    out = cr.courant_axiom_suite(x["x"], x["y"], x["z"], x["f"])
    xs, ys = x["x"], x["y"]
    out["symmetric_part"] = cr.dorfman(xs, ys) + cr.dorfman(ys, xs) - cr.d_operator(cr.pairing(xs, ys))
    out["dorfman_decomposition"] = (
        cr.dorfman(xs, ys) - cr.courant_bracket(xs, ys) - cr.d_operator(cr.pairing(xs, ys)) * Fraction(1, 2)
    )
    return out


def _eval_dorfman(entry, x):
    return {"dorfman_leibnizator": cr.dorfman_leibnizator(x["x"], x["y"], x["z"])}


def _eval_redundancy(entry, x):
    xs, ys, zs, f = x["x"], x["y"], x["z"], x["f"]
    derived = cr.derived_axiom2(xs, ys, zs, f)
    direct = zs * cr.courant_axiom_suite(xs, ys, zs, f)["axiom2_morphism"]
    return {
        "leibniz_xyz": cr.dorfman_leibnizator(xs, ys, zs),
        "leibniz_xy_fz": cr.dorfman_leibnizator(xs, ys, zs * f),
        "leibniz_yxz": cr.dorfman_leibnizator(ys, xs, zs),
        "leibniz_yx_fz": cr.dorfman_leibnizator(ys, xs, zs * f),
        "anchor_rule_x": cr.anchor_rule_defect(xs, f, zs),
        "anchor_rule_y": cr.anchor_rule_defect(ys, f, zs),
        "derived_axiom2": derived,
        "derived_matches_direct": derived - direct,
    }


def _sample_koszul(entry, rng, cfg):
    chart = entry.chart
    out = _sample_forms(["a", "b", "c", "f"])(entry, rng, cfg)
    out["g1"] = random_polynomial(rng, cfg, chart)
    out["g2"] = random_polynomial(rng, cfg, chart)
    return out


def koszul_sign_defects(S, f, g) -> dict:
    lhs = br.koszul_bracket(S, d(f), d(g))
    rhs = d(nambu_bracket(S, [f, g]))
    return {"plus": lhs - rhs, "minus": lhs + rhs}


def _eval_koszul(entry, x):
    S = entry.structure
    signs = koszul_sign_defects(S, x["g1"], x["g2"])
    return {
        "jacobi": br.jacobiator(BracketKind.KOSZUL, S, x["a"], x["b"], x["c"]),
        "morphism": br.morphism_defect(BracketKind.KOSZUL, S, AnchorAssignment.pi(S), x["a"], x["b"], x["f"]),
        "exact_sign_plus": signs["plus"],
        "exact_sign_minus": signs["minus"],
    }


def _schouten_summary(entry):
    sq = schouten(entry.tensor, entry.tensor)
    return {"schouten_square": str(sq), "schouten_square_zero": sq.is_zero()}


_P2 = lambda entry: entry is not None and entry.order == 2
_COURANT = lambda entry: entry is None

IMPLICATION = "anchor-morphism-implication"

EXPERIMENTS: dict[str, Experiment] = {}


def _register(exp: Experiment):
    EXPERIMENTS[exp.slug] = exp


_register(Experiment(
    IMPLICATION,
    "Leibniz identity plus the anchor rule force the anchor to preserve brackets",
    {"counterexample": "always", "identity_residual": "always"},
    _sample_forms(["a", "b", "c", "f"]),
    None,
    summarize=_schouten_summary,
))
_register(Experiment(
    "anchor-antisymmetry",
    "a linear bracket-preserving anchor sends [x,y] + [y,x] to zero",
    {"hagiwara_antisymmetry": "np", "ibanez_antisymmetry": "np", "koszul_antisymmetry": "np"},
    _sample_forms(["a", "b", "f"]),
    _eval_antisymmetry,
))
_register(Experiment(
    "anchor-derivation",
    "each anchor transformation satisfies the Leibniz rule on products",
    {"derivation": "always"},
    _sample_forms(["a", "f", "g"]),
    _eval_derivation,
))
_register(Experiment(
    "hagiwara-anchor",
    "the contraction map is an anchor for the Hagiwara bracket, for any p-vector",
    {"anchor": "always"},
    _sample_forms(["a", "b", "f"]),
    _eval_hagiwara_anchor,
))
_register(Experiment(
    "hagiwara-morphism",
    "the contraction anchor preserves Hagiwara brackets iff the tensor is Nambu-Poisson",
    {"morphism": "np"},
    _sample_forms(["a", "b", "f"]),
    _eval_morphism(BracketKind.HAGIWARA),
    search=("morphism",),
))
_register(Experiment(
    "hagiwara-leibniz",
    "the Hagiwara bracket of a Nambu-Poisson tensor satisfies the Leibniz identity",
    {"leibnizator": "np"},
    _sample_forms(["a", "b", "c"]),
    _eval_leibniz(BracketKind.HAGIWARA),
    search=("leibnizator",),
))
_register(Experiment(
    "hagiwara-equivalence",
    "for the Hagiwara bracket, bracket preservation and the Leibniz identity fail together",
    {"morphism": "np", "leibnizator": "np"},
    _sample_forms(["a", "b", "c", "f"]),
    _eval_equivalence(BracketKind.HAGIWARA),
    search=("morphism", "leibnizator"),
))
_register(Experiment(
    "ibanez-characterization",
    "the Ibanez bracket has the contraction anchor and acts on exact forms through the Nambu bracket",
    {"characterization": "always", "anchor": "always"},
    _sample_exact,
    _eval_ibanez_char,
))
_register(Experiment(
    "ibanez-equivalence",
    "for the Ibanez bracket, bracket preservation and the Leibniz identity fail together",
    {"morphism": "np", "leibnizator": "np"},
    _sample_forms(["a", "b", "c", "f"]),
    _eval_equivalence(BracketKind.IBANEZ),
    search=("morphism", "leibnizator"),
))
_register(Experiment(
    "difference-leibniz",
    "the difference bracket is Ibanez minus Hagiwara, bilinear, and Leibniz for Nambu-Poisson tensors",
    {"structural": "always", "bilinearity": "always", "leibnizator": "np"},
    _sample_forms(["a", "b", "c"]),
    _eval_difference,
))
_register(Experiment(
    "zero-anchor",
    "the difference bracket is function-linear in its second slot, for every sign choice",
    {
        "zero_anchor": "always",
        "zero_anchor_signs_-+": "always",
        "zero_anchor_signs_+-": "always",
        "zero_anchor_signs_--": "always",
    },
    _sample_forms(["a", "b", "f"]),
    _eval_zero_anchor,
))
_register(Experiment(
    "courant-axioms",
    "TM + T*M with the Courant bracket satisfies the five algebroid axioms",
    {
        "axiom1_jacobi": "always",
        "axiom2_morphism": "always",
        "axiom3_leibniz_rule": "always",
        "axiom4_anchor_of_d": "always",
        "axiom5_invariance": "always",
        "symmetric_part": "always",
        "dorfman_decomposition": "always",
    },
    _sample_sections,
    _eval_courant,
    applies=_COURANT,
))
_register(Experiment(
    "dorfman-leibniz",
    "the Dorfman bracket satisfies the Leibniz identity",
    {"dorfman_leibnizator": "always"},
    _sample_sections,
    _eval_dorfman,
    applies=_COURANT,
))
_register(Experiment(
    "courant-anchor-redundancy",
    "the Courant morphism axiom follows from the Dorfman Leibniz identity and the anchor rule",
    {
        "leibniz_xyz": "always",
        "leibniz_xy_fz": "always",
        "leibniz_yxz": "always",
        "leibniz_yx_fz": "always",
        "anchor_rule_x": "always",
        "anchor_rule_y": "always",
        "derived_axiom2": "always",
        "derived_matches_direct": "always",
    },
    _sample_sections,
    _eval_redundancy,
    applies=_COURANT,
))
_register(Experiment(
    "koszul-equivalence",
    "for a bivector, Koszul Jacobi identity, bracket preservation and vanishing Schouten square agree",
    {"jacobi": "np", "morphism": "np"},
    _sample_koszul,
    _eval_koszul,
    search=("jacobi", "morphism"),
    applies=_P2,
    summarize=_schouten_summary,
))

# ---------------------------------------------------------------- reports


@dataclass
class DefectReport:
    experiment: str
    tensor: str
    config: dict
    verdict: str
    expected: str | None
    matches: bool
    instances_run: int
    max_defect_nonzero: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "tensor": self.tensor,
            "config": self.config,
            "verdict": self.verdict,
            "expected": self.expected,
            "matches": self.matches,
            "instances_run": self.instances_run,
            "max_defect_nonzero": self.max_defect_nonzero,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def _config_dict(cfg: GeneratorConfig) -> dict:
    return asdict(cfg)


def _witness(inputs: dict, defects: dict, names: Iterable[str], index: int) -> dict:
    return {
        "instance": index,
        "inputs": {k: describe(v) for k, v in inputs.items()},
        "defects": {k: str(defects[k]) for k in names},
    }


def targets_for(exp: Experiment) -> list[TensorEntry | None]:
    if exp.applies(None):
        return [None]
    return [e for e in library().values() if exp.applies(e)]


def _target_name(target) -> str:
    return COURANT_TARGET if target is None else target.name


def _certified_not(target) -> bool:
    return target is not None and target.certification is Certification.NOT_NAMBU_POISSON


def expected_verdict(exp: Experiment, target) -> str | None:
    if target is not None and target.certification is Certification.UNKNOWN:
        return None
    if not _certified_not(target) or not exp.np_conditional:
        return Verdict.ALL_ZERO.value
    if exp.search:
        return Verdict.WITNESS_FOUND.value
    return Verdict.ALL_ZERO.value


def _active_defects(exp: Experiment, target, names) -> tuple[list, list, list]:
    """Split defect names into (tracked-zero, searched, observed)."""
    np_tensor = not _certified_not(target)
    tracked, searched, observed = [], [], []
    for name in names:
        role = exp.defects.get(name)
        if role is None:
            observed.append(name)
        elif role == "always" or np_tensor:
            tracked.append(name)
        elif name in exp.search:
            searched.append(name)
        else:
            observed.append(name)
    return tracked, searched, observed


def run_experiment(slug: str, tensor=None, cfg: GeneratorConfig | None = None) -> DefectReport:
    """Run one experiment on one library tensor (name or entry; None for Courant)."""
    cfg = cfg or GeneratorConfig()
    exp = EXPERIMENTS.get(slug)
    if exp is None:
        raise KeyError(f"unknown experiment {slug!r}")
    if isinstance(tensor, MultiVector):
        target = TensorEntry("inline", tensor, Certification.UNKNOWN, description=str(tensor))
    elif tensor == COURANT_TARGET:
        target = None
    elif isinstance(tensor, str):
        if tensor not in library():
            raise KeyError(f"unknown tensor {tensor!r}")
        target = library()[tensor]
    else:
        target = tensor
    if not exp.applies(target):
        raise ValueError(f"experiment {slug} does not apply to tensor {_target_name(target)}")
    if slug == IMPLICATION:
        return _run_implication(exp, target, cfg)
    return _run_generic(exp, target, cfg)


def _run_generic(exp: Experiment, target, cfg: GeneratorConfig) -> DefectReport:
    name = _target_name(target)
    expected = expected_verdict(exp, target)
    details: dict = {}
    if exp.summarize is not None and target is not None:
        details.update(exp.summarize(target))
    searching = _certified_not(target) and bool(exp.search)
    if cfg.trials == 0:
        return DefectReport(exp.slug, name, _config_dict(cfg), Verdict.INCONCLUSIVE.value, expected,
                            False, 0, False, [], details)
    budget = cfg.search_cap if searching else cfg.trials
    witnesses: list = []
    seen_nonzero: dict = {}
    tracked_nonzero = False
    run = 0
    found_searched: set = set()
    searched_names: list = []
    for i in range(budget):
        rng = instance_rng(cfg, exp.slug, name, i)
        inputs = exp.sample(target, rng, cfg)
        defects = exp.evaluate(target, inputs)
        run += 1
        tracked, searched, observed = _active_defects(exp, target, defects)
        searched_names = searched
        for k, v in defects.items():
            seen_nonzero.setdefault(k, 0)
            if _nonzero(v):
                seen_nonzero[k] += 1
        bad = [k for k in tracked if _nonzero(defects[k])]
        if bad:
            tracked_nonzero = True
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(inputs, defects, bad, i))
        new = [k for k in searched if k not in found_searched and _nonzero(defects[k])]
        if new:
            found_searched.update(new)
            witnesses.append(_witness(inputs, defects, new, i))
        if searching and set(searched) <= found_searched:
            break
    details["nonzero_counts"] = {k: seen_nonzero[k] for k in sorted(seen_nonzero)}
    if searching:
        details["searched"] = list(exp.search)
        details["search_found"] = sorted(found_searched)
        if tracked_nonzero:
            verdict = Verdict.WITNESS_FOUND
            details["unexpected_nonzero"] = True
        elif set(exp.search) <= found_searched:
            verdict = Verdict.WITNESS_FOUND
        else:
            verdict = Verdict.INCONCLUSIVE
        matches = verdict.value == expected and not tracked_nonzero
    else:
        verdict = Verdict.WITNESS_FOUND if tracked_nonzero else Verdict.ALL_ZERO
        matches = expected is None or verdict.value == expected
        observed = [k for k in sorted(_all_names(exp, target)) if exp.defects[k] == "np" and _certified_not(target)]
        if observed:
            details["observed_only"] = observed
    return DefectReport(exp.slug, name, _config_dict(cfg), verdict.value, expected, matches, run,
                        tracked_nonzero or bool(found_searched), witnesses, details)


def _all_names(exp: Experiment, target) -> set:
    names = set(exp.defects)
    if exp.slug == "anchor-antisymmetry" and (target is None or target.order != 2):
        names.discard("koszul_antisymmetry")
    return names


def _run_implication(exp: Experiment, target: TensorEntry, cfg: GeneratorConfig) -> DefectReport:
    """Per bracket kind: leibnizator and anchor rule vanishing force the morphism defect to vanish.

    Also checks per instance the exact identity
    ``M(a,b;f) c = f L(a,b,c) - L(a,b,f c)``, which holds for any tensor
    once the anchor rule does.
    """
    name = target.name
    S = target.structure
    details: dict = {"kinds": {}}
    details.update(exp.summarize(target))
    if cfg.trials == 0:
        return DefectReport(exp.slug, name, _config_dict(cfg), Verdict.INCONCLUSIVE.value,
                            Verdict.ALL_ZERO.value, False, 0, False, [], details)
    witnesses: list = []
    total = 0
    any_bad = False
    for kind in _kinds(target):
        anchor = br.natural_anchor(kind, S)
        flags = {"leibnizator": 0, "anchor": 0, "morphism": 0, "identity_residual": 0}
        first_morphism = None
        for i in range(cfg.trials):
            rng = instance_rng(cfg, exp.slug, f"{name}/{kind.value}", i)
            x = exp.sample(target, rng, cfg)
            a, b, c, f = x["a"], x["b"], x["c"], x["f"]
            L = br.leibnizator(kind, S, a, b, c)
            A = br.anchor_defect(kind, S, anchor, a, f, b)
            M = br.morphism_defect(kind, S, anchor, a, b, f)
            R = br.morphism_leibniz_identity_defect(kind, S, anchor, a, b, c, f)
            total += 1
            for key, val in (("leibnizator", L), ("anchor", A), ("morphism", M), ("identity_residual", R)):
                if _nonzero(val):
                    flags[key] += 1
            if _nonzero(M) and first_morphism is None:
                first_morphism = (x, {"morphism": M, "leibnizator": L}, i)
            if _nonzero(R) and len(witnesses) < MAX_WITNESSES:
                any_bad = True
                witnesses.append(dict(_witness(x, {"identity_residual": R}, ["identity_residual"], i), kind=kind.value))
        counterexample = flags["leibnizator"] == 0 and flags["anchor"] == 0 and flags["morphism"] > 0
        if counterexample:
            any_bad = True
            x, dd, i = first_morphism
            witnesses.append(dict(_witness(x, dd, ["morphism"], i), kind=kind.value))
        details["kinds"][kind.value] = {
            "anchor": anchor.kind.value,
            "instances": cfg.trials,
            "nonzero_leibnizator": flags["leibnizator"],
            "nonzero_anchor": flags["anchor"],
            "nonzero_morphism": flags["morphism"],
            "nonzero_identity_residual": flags["identity_residual"],
            "counterexample": counterexample,
        }
    verdict = Verdict.WITNESS_FOUND if any_bad else Verdict.ALL_ZERO
    return DefectReport(exp.slug, name, _config_dict(cfg), verdict.value, Verdict.ALL_ZERO.value,
                        verdict is Verdict.ALL_ZERO, total, any_bad, witnesses, details)


def run_all(cfg: GeneratorConfig | None = None, experiments: Iterable[str] | None = None) -> list[DefectReport]:
    cfg = cfg or GeneratorConfig()
    out = []
    for slug in experiments or EXPERIMENTS:
        exp = EXPERIMENTS[slug]
        for target in targets_for(exp):
            out.append(run_experiment(slug, target, cfg))
    return out


def reevaluate_witness(report: DefectReport | dict, witness: dict, tensor: MultiVector | None = None) -> dict:
    """Rebuild a witness from its text form and recompute its defects.

    ``tensor`` is needed only for reports on inline tensors.
    """
    rep = report.to_dict() if isinstance(report, DefectReport) else report
    exp = EXPERIMENTS[rep["experiment"]]
    if tensor is not None:
        target = TensorEntry(rep["tensor"], tensor, Certification.UNKNOWN)
    elif rep["tensor"] == COURANT_TARGET:
        target = None
    else:
        target = library()[rep["tensor"]]
    chart = COURANT_CHART if target is None else target.chart
    inputs = {k: restore(v, chart) for k, v in witness["inputs"].items()}
    if exp.slug == IMPLICATION:
        kind = BracketKind(witness["kind"])
        S = target.structure
        anchor = br.natural_anchor(kind, S)
        a, b, c, f = inputs["a"], inputs["b"], inputs["c"], inputs["f"]
        values = {
            "morphism": br.morphism_defect(kind, S, anchor, a, b, f),
            "leibnizator": br.leibnizator(kind, S, a, b, c),
            "identity_residual": br.morphism_leibniz_identity_defect(kind, S, anchor, a, b, c, f),
        }
    else:
        values = exp.evaluate(target, inputs)
    return {k: values[k] for k in witness["defects"]}


# ---------------------------------------------------------------- serialization


def report_document(reports: list[DefectReport], cfg: GeneratorConfig) -> dict:
    return {
        "header": {
            "note": EPISTEMIC_NOTE,
            "config": _config_dict(cfg),
            "reports": len(reports),
            "all_match": all(r.matches for r in reports),
        },
        "reports": [r.to_dict() for r in reports],
    }


def to_json(reports: list[DefectReport], cfg: GeneratorConfig) -> str:
    return json.dumps(report_document(reports, cfg), indent=2) + "\n"


def to_markdown(reports: list[DefectReport], cfg: GeneratorConfig) -> str:
    lines = [
        "# Bracket defect report",
        "",
        EPISTEMIC_NOTE,
        "",
        f"seed {cfg.seed}, trials {cfg.trials}, max degree {cfg.max_degree}, "
        f"coefficients in [-{cfg.coeff_bound}, {cfg.coeff_bound}], up to {cfg.max_terms} terms, "
        f"search cap {cfg.search_cap}",
        "",
        "| experiment | tensor | verdict | expected | instances | match |",
        "|---|---|---|---|---|---|",
    ]
    for r in reports:
        lines.append(
            f"| {r.experiment} | {r.tensor} | {r.verdict} | {r.expected} | {r.instances_run} | "
            f"{'yes' if r.matches else 'NO'} |"
        )
    mismatched = [r for r in reports if not r.matches]
    if mismatched:
        lines += ["", "## Mismatches", ""]
        for r in mismatched:
            lines.append(f"### {r.experiment} on {r.tensor}: {r.verdict} (expected {r.expected})")
            lines.append("")
            for w in r.witnesses:
                ins = ", ".join(f"{k} = {v.get('text', v)}" for k, v in w["inputs"].items())
                dfs = ", ".join(f"{k} = {v}" for k, v in w["defects"].items())
                lines.append(f"- instance {w['instance']}: {ins}; {dfs}")
            lines.append("")
    return "\n".join(lines) + "\n"
