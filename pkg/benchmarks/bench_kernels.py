"""Time the compiled and pure-Python term kernels on the same inputs.

Run with ``python3 benchmarks/bench_kernels.py``.  Also times one harness
experiment under each backend in a subprocess, since the backend is fixed at
import.
"""

import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from cbl import _kernels_py

try:
    from cbl import _kernels
except ImportError:
    _kernels = None

NVARS = 6
BITS = _kernels_py.BITS


def random_terms(rng, nterms, max_deg, rational):
    out = {}
    for _ in range(nterms):
        key = 0
        for _ in range(rng.randint(0, max_deg)):
            key += 1 << (BITS * rng.randrange(NVARS))
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rational else rng.randint(-9, 9)
        if c:
            out[key] = c
    return out


def bench_kernels(number=200):
    rng = random.Random(0)
    cases = {}
    for label, rational in (("int", False), ("rational", True)):
        a = random_terms(rng, 30, 4, rational)
        b = random_terms(rng, 30, 4, rational)
        cases[label] = (a, b)
    rows = []
    for label, (a, b) in cases.items():
        for name, call in (
            ("add", lambda k: k.add_terms(a, b)),
            ("mul", lambda k: k.mul_terms(a, b)),
            ("partial", lambda k: k.partial_terms(a, 3)),
            ("axpy", lambda k: k.axpy_terms(dict(a), 3, b)),
        ):
            py = timeit.timeit(lambda: call(_kernels_py), number=number)
            if _kernels is not None:
                assert call(_kernels) == call(_kernels_py)
                ext = timeit.timeit(lambda: call(_kernels), number=number)
            else:
                ext = float("nan")
            rows.append((f"{name}/{label}", py, ext))
    return rows


HARNESS_SNIPPET = (
    "import time; from cbl.harness import GeneratorConfig, run_experiment; "
    "t = time.perf_counter(); run_experiment('hagiwara-leibniz', 'x1np3_r3', GeneratorConfig(trials=100)); "
    "print(time.perf_counter() - t)"
)


def bench_harness():
    out = {}
    for backend in ("python", "ext"):
        env = dict(os.environ, CBL_BACKEND=backend)
        res = subprocess.run([sys.executable, "-c", HARNESS_SNIPPET], env=env, capture_output=True, text=True)
        out[backend] = float(res.stdout) if res.returncode == 0 else None
    return out


def main():
    print(f"{'kernel':20s} {'python (s)':>12s} {'ext (s)':>12s} {'speedup':>8s}")
    for name, py, ext in bench_kernels():
        print(f"{name:20s} {py:12.4f} {ext:12.4f} {py / ext:8.2f}")
    h = bench_harness()
    print()
    for backend, t in h.items():
        print(f"hagiwara-leibniz on x1np3_r3, 100 trials, {backend}: " + ("unavailable" if t is None else f"{t:.2f} s"))


if __name__ == "__main__":
    main()
