"""numba and numpy kernels must agree; the env flag must select between them."""

import os
import subprocess
import sys

import numpy as np
import pytest

from gabmul import _kernels as K
from helpers import crandn, rel, rng

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("n", [1, 6, 12, 15])
def test_stft_backends_agree(n):
    gen = rng(n)
    f, g = crandn(gen, n), crandn(gen, n)
    assert rel(K.stft_nb(f, g), K.stft_np(f, g)) < 1e-13


@needs_numba
@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 3), (4, 6), (12, 12)])
def test_multiplier_backends_agree(alpha, beta):
    gen = rng(alpha * beta)
    g1, g2, f = crandn(gen, 12), crandn(gen, 12), crandn(gen, 12)
    mask = crandn(gen, 12, 12)
    assert rel(K.gm_kernel_nb(g1, g2, mask, alpha, beta), K.gm_kernel_np(g1, g2, mask, alpha, beta)) < 1e-13
    assert rel(K.gm_apply_nb(g1, g2, mask, alpha, beta, f), K.gm_apply_np(g1, g2, mask, alpha, beta, f)) < 1e-13
    assert rel(K.frame_operator_nb(g1, alpha, beta), K.frame_operator_np(g1, alpha, beta)) < 1e-13


@needs_numba
def test_stft_multiplier_backends_agree():
    gen = rng(3)
    n, step = 65, 1 / 8
    t = -4 + step * np.arange(n)
    f, m = crandn(gen, n), crandn(gen, n)
    corr = crandn(gen, 2 * n - 1)
    fwd = np.exp(-2j * np.pi * np.outer(t, t))
    assert rel(K.stft_multiplier_nb(f, corr, m, fwd, step), K.stft_multiplier_np(f, corr, m, fwd, step)) < 1e-12


def _backend_in_subprocess(value):
    env = dict(os.environ, GABMUL_BACKEND=value)
    return subprocess.run(
        [sys.executable, "-c", "import gabmul; print(gabmul.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
    )


def test_env_flag_selects_numpy():
    out = _backend_in_subprocess("numpy")
    assert out.returncode == 0 and out.stdout.strip() == "numpy"


@needs_numba
def test_env_flag_selects_numba():
    out = _backend_in_subprocess("numba")
    assert out.returncode == 0 and out.stdout.strip() == "numba"


def test_env_flag_rejects_unknown():
    out = _backend_in_subprocess("cuda")
    assert out.returncode != 0 and "GABMUL_BACKEND" in out.stderr


def test_dispatch_table():
    # FFT-based kernels win at every size, so both backends bind them
    assert K.stft is K.stft_np and K.gm_apply is K.gm_apply_np
    loops = ("gm_kernel", "frame_operator", "stft_multiplier")
    suffix = "nb" if K.BACKEND == "numba" else "np"
    assert all(getattr(K, name) is getattr(K, f"{name}_{suffix}") for name in loops)
