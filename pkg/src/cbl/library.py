"""Built-in corpus of p-vectors with Nambu-Poisson certification.

Certified entries carry the data that certifies them: a decomposition
``factor * e_{i1} ^ ... ^ e_{ip}`` into commuting constant fields for the
Nambu-Poisson ones, and arguments with a nonzero fundamental-identity
defect for the others.  Witnesses live in ``data/witnesses.json`` and are
regenerated with ``python -m cbl.library``.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from pathlib import Path

from .cartan import NambuStructure, fi_defect, schouten
from .exterior import MultiVector, wedge_all
from .parse import parse_value
from .polyring import Chart, Polynomial


class Certification(enum.Enum):
    NAMBU_POISSON = "certified-Nambu-Poisson"
    NOT_NAMBU_POISSON = "certified-not-Nambu-Poisson"
    UNKNOWN = "unknown"


@dataclass(frozen=True, eq=False)
class TensorEntry:
    name: str
    tensor: MultiVector
    certification: Certification
    certificate: dict = field(default_factory=dict)
    description: str = ""

    @property
    def chart(self) -> Chart:
        return self.tensor.chart

    @property
    def order(self) -> int:
        return self.tensor.degree

    @property
    def structure(self) -> NambuStructure:
        return NambuStructure(self.tensor)

    @property
    def is_np(self) -> bool:
        return self.certification is Certification.NAMBU_POISSON


# name -> (chart, tensor text, certification, decomposition or None, description)
_DEFINITIONS = {
    "np2_r2": ("x1,x2", "e1^e2", Certification.NAMBU_POISSON, ("1", ["e1", "e2"]),
               "canonical Poisson bivector on R^2"),
    "x3np2_r3": ("x1,x2,x3", "x3*e1^e2", Certification.NAMBU_POISSON, ("x3", ["e1", "e2"]),
                 "rank-2 Poisson bivector on R^3"),
    "np3_r3": ("x1,x2,x3", "e1^e2^e3", Certification.NAMBU_POISSON, ("1", ["e1", "e2", "e3"]),
               "constant top-degree 3-vector"),
    "x1np3_r3": ("x1,x2,x3", "x1*e1^e2^e3", Certification.NAMBU_POISSON, ("x1", ["e1", "e2", "e3"]),
                 "function times the constant 3-vector"),
    "np3_r4": ("x1,x2,x3,x4", "e1^e2^e3", Certification.NAMBU_POISSON, ("1", ["e1", "e2", "e3"]),
               "constant decomposable 3-vector in four dimensions"),
    "sum6": ("x1,x2,x3,x4,x5,x6", "e1^e2^e3 + e4^e5^e6", Certification.NOT_NAMBU_POISSON, None,
             "sum of two disjoint decomposable 3-vectors"),
    "bad2_r3": ("x1,x2,x3", None, Certification.NOT_NAMBU_POISSON, None,
                "bivector with nonzero Schouten square"),
}

WITNESS_FILE = "witnesses.json"


def _load_witness_data() -> dict:
    try:
        text = resources.files("cbl").joinpath("data").joinpath(WITNESS_FILE).read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text)


def verify_decomposition(tensor: MultiVector, factor: str, vectors: list[str]) -> bool:
    """Check ``tensor == factor * wedge(vectors)`` with constant basis vectors."""
    chart = tensor.chart
    f = parse_value(factor, "polynomial", chart)
    vs = [parse_value(v, "multivector", chart, 1) for v in vectors]
    if any(p.max_coefficient_degree() > 0 for p in vs):
        return False
    product_ = wedge_all(vs, chart, MultiVector) * f
    return bool(product_) and product_ == tensor


def fi_witness_defect(tensor: MultiVector, certificate: dict) -> Polynomial:
    chart = tensor.chart
    fs = [parse_value(s, "polynomial", chart) for s in certificate["fs"]]
    gs = [parse_value(s, "polynomial", chart) for s in certificate["gs"]]
    return fi_defect(NambuStructure(tensor), fs, gs)


def verify_certificate(entry: TensorEntry) -> bool:
    cert = entry.certificate
    if entry.certification is Certification.NAMBU_POISSON:
        return verify_decomposition(entry.tensor, cert["factor"], cert["vectors"])
    if entry.certification is Certification.NOT_NAMBU_POISSON:
        return not fi_witness_defect(entry.tensor, cert).is_zero()
    return True


def _small_polys(chart: Chart) -> list[Polynomial]:
    xs = chart.coordinates()
    out = list(xs)
    out += [a * b for a, b in combinations(xs, 2)]
    out += [x * x for x in xs]
    return out


def search_fi_witness(tensor: MultiVector, seed: int = 0, cap: int = 10_000) -> dict | None:
    """Seeded search for arguments with a nonzero fundamental-identity defect."""
    S = NambuStructure(tensor)
    pool = _small_polys(tensor.chart)
    rng = random.Random(f"fi-witness/{seed}")
    p = S.order
    for _ in range(cap):
        fs = [rng.choice(pool) for _ in range(p - 1)]
        gs = [rng.choice(pool) for _ in range(p)]
        if not fi_defect(S, fs, gs).is_zero():
            return {"kind": "fundamental-identity", "fs": [str(f) for f in fs], "gs": [str(g) for g in gs]}
    return None


def search_non_poisson_bivector(chart: Chart) -> MultiVector:
    """First bivector, in a fixed enumeration of two-term candidates, with nonzero Schouten square."""
    coeffs = [chart.one()] + chart.coordinates()
    pairs = list(combinations(range(chart.dim), 2))
    terms = [MultiVector.basis(chart, ij, c) for ij, c in product(pairs, coeffs)]
    for a, b in combinations(terms, 2):
        bv = a + b
        if not schouten(bv, bv).is_zero():
            return bv
    raise RuntimeError("no candidate bivector has a nonzero Schouten square")


def build_library(data: dict | None = None) -> dict[str, TensorEntry]:
    data = _load_witness_data() if data is None else data
    lib = {}
    for name, (chart_text, text, cert, decomposition, desc) in _DEFINITIONS.items():
        chart = Chart.parse(chart_text)
        stored = data.get(name, {})
        text = text or stored.get("tensor")
        if text is None:
            continue
        tensor = parse_value(text, "multivector", chart)
        if decomposition is not None:
            certificate = {"kind": "decomposable", "factor": decomposition[0], "vectors": decomposition[1]}
        else:
            certificate = stored.get("witness", {})
        lib[name] = TensorEntry(name, tensor, cert, certificate, desc)
    return lib


def regenerate(path: Path | None = None, seed: int = 0) -> dict:
    """Search witnesses for every not-Nambu-Poisson entry and write them out."""
    data = {}
    for name, (chart_text, text, cert, _, _) in _DEFINITIONS.items():
        if cert is not Certification.NOT_NAMBU_POISSON:
            continue
        chart = Chart.parse(chart_text)
        tensor = parse_value(text, "multivector", chart) if text else search_non_poisson_bivector(chart)
        witness = search_fi_witness(tensor, seed=seed)
        if witness is None:
            raise RuntimeError(f"no fundamental-identity witness found for {name}")
        data[name] = {"tensor": str(tensor), "witness": witness}
    if path is None:
        path = Path(__file__).parent / "data" / WITNESS_FILE
    path.write_text(json.dumps(data, indent=2) + "\n")
    return data


_LIBRARY: dict[str, TensorEntry] | None = None


def library() -> dict[str, TensorEntry]:
    global _LIBRARY
    if _LIBRARY is None:
        _LIBRARY = build_library()
    return _LIBRARY


def get(name: str) -> TensorEntry:
    try:
        return library()[name]
    except KeyError:
        raise KeyError(f"unknown tensor {name!r}; known: {', '.join(library())}") from None


if __name__ == "__main__":
    print(json.dumps(regenerate(), indent=2))
