"""Monte-Carlo trials of the random gluing model.

Trial ``i`` draws from ``trial_rng(seed, i)`` only, so a batch is identical
whatever the number of worker threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from . import kernels
from .intensity import class_intensity
from .randcomplex import (class_key, cycle_class_key, enumerate_cycles, sample_gluing,
                          sample_simple_gluing, trial_rng)
from .stats import TrialBatch
from .words import WordClass, class_of


def run_trial(n: int, seed: int, trial: int, keys: dict, max_len: int, conditioned: bool = True):
    """Counts per class index, sampling attempts, and cycle counts by length."""
    rng = trial_rng(seed, trial)
    if conditioned:
        g, attempts = sample_simple_gluing(n, rng)
    else:
        g, attempts = sample_gluing(n, rng), 1
    counts = np.zeros(len(set(keys.values())), dtype=np.int64)
    by_len = np.zeros(max_len + 1, dtype=np.int64)
    for c in enumerate_cycles(g, max_len):
        by_len[len(c)] += 1
        idx = keys.get((len(c), cycle_class_key(g, c)))
        if idx is not None:
            counts[idx] += 1
    return counts, attempts, by_len


def simulate(n: int, trials: int, classes: Sequence, seed: int = 0, *, max_len: int = None,
             conditioned: bool = True, threads: int = 1) -> TrialBatch:
    wcs = [c if isinstance(c, WordClass) else class_of(c) for c in classes]
    if max_len is None:
        max_len = max([wc.length for wc in wcs], default=3)
    if any(wc.length > max_len for wc in wcs):
        raise ValueError("a class is longer than max_len")
    keys = {(wc.length, class_key(wc)): i for i, wc in enumerate(wcs)}

    def work(i):
        return run_trial(n, seed, i, keys, max_len, conditioned)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, range(trials)))
    else:
        results = [work(i) for i in range(trials)]
    counts = np.array([r[0] for r in results], dtype=np.int64).reshape(trials, len(wcs))
    return TrialBatch(
        n=n, trials=trials, seed=seed, classes=[wc.name for wc in wcs],
        lambdas=[class_intensity(wc) for wc in wcs], counts=counts, conditioned=conditioned,
        attempts=np.array([r[1] for r in results], dtype=np.int64),
        cycles_by_length=np.array([r[2] for r in results], dtype=np.int64),
    )
