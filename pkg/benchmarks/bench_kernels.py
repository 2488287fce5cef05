"""Numba vs pure-numpy timings for the hot kernels.

    python benchmarks/bench_kernels.py            # both backends, side by side
    python benchmarks/bench_kernels.py --single   # current backend only, JSON

Each backend runs in its own interpreter (the choice is fixed at import
time by ``OCTASPEC_PURE_NUMPY``).  Timings are medians after one warm-up
call, so numba compilation is excluded.
"""
import argparse
import json
import os
import statistics
import subprocess
import sys
import time

import numpy as np


def median_time(fn, repeats):
    fn()
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def single():
    from octaspec import _accel, kernels
    from octaspec.randcomplex import _draw, _partner_of, sample_simple_gluing

    rng = np.random.default_rng(0)
    g, _ = sample_simple_gluing(20_000, 1)
    raw = [_partner_of(20_000, _draw(20_000, rng)[0]) for _ in range(50)]
    codes = rng.integers(0, 9, size=(100_000, 12))
    cases = {
        "find_cycles n=20000 len<=6": (lambda: kernels.find_cycles(g.partner, 6), 5),
        "find_cycles n=20000 len<=8": (lambda: kernels.find_cycles(g.partner, 8), 3),
        "is_simple x50 n=20000": (lambda: [kernels.is_simple_partner(p) for p in raw], 5),
        "word_products 1e5 x 12": (lambda: kernels.word_products(codes), 5),
    }
    return {"backend": _accel.backend_name(),
            "seconds": {name: median_time(fn, rep) for name, (fn, rep) in cases.items()}}


def compare():
    results = {}
    for flag in ("0", "1"):
        env = dict(os.environ, OCTASPEC_PURE_NUMPY=flag)
        out = subprocess.run([sys.executable, __file__, "--single"], env=env,
                             capture_output=True, text=True, check=True)
        res = json.loads(out.stdout)
        results[res["backend"]] = res["seconds"]
    nb, npy = results.get("numba", {}), results["numpy"]
    print(f"{'kernel':<30}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for name, t_np in npy.items():
        t_nb = nb.get(name, float("nan"))
        print(f"{name:<30}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--single", action="store_true")
    if ap.parse_args().single:
        print(json.dumps(single()))
    else:
        compare()
