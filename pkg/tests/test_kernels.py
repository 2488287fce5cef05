import os
import subprocess
import sys

import numpy as np
import pytest

from octaspec import _accel, kernels
from octaspec.randcomplex import sample_gluing, sample_simple_gluing

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def as_sorted(flat, lens):
    cycles = np.split(np.asarray(flat), np.cumsum(lens)[:-1]) if len(lens) else []
    return sorted((len(c), c.tolist()) for c in cycles)


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_cycle_backends_agree(seed):
    g, _ = sample_simple_gluing(400, seed)
    flat_nb, lens_nb, complete = kernels._find_cycles_nb(g.partner, 7, 10 ** 6)
    assert complete
    flat_np, lens_np = kernels._find_cycles_np(g.partner, 7, 10 ** 6)
    assert as_sorted(flat_nb, lens_nb) == as_sorted(flat_np, lens_np)


@needs_numba
def test_simplicity_backends_agree():
    for seed in range(200):
        p = sample_gluing(6, seed).partner
        assert bool(kernels._is_simple_nb(p)) == kernels._is_simple_np(p)


@needs_numba
def test_product_backends_agree():
    codes = np.random.default_rng(0).integers(0, 9, size=(500, 20))
    assert np.array_equal(kernels._word_products_nb(codes, kernels.LETTER_INT),
                          kernels._word_products_np(codes, kernels.LETTER_INT))


def test_env_flag_forces_numpy():
    env = dict(os.environ, OCTASPEC_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", "from octaspec import _accel; print(_accel.backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
