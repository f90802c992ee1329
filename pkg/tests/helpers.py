"""Brute-force oracles and instance builders shared by the test modules.

The oracles deliberately avoid the package's own transforms: every sum is
written out from its definition.
"""

import numpy as np

from gabmul.finite import Lattice


def rng(seed=0):
    return np.random.default_rng(seed)


def crandn(gen, *shape):
    return gen.standard_normal(shape) + 1j * gen.standard_normal(shape)


def rel(x, y):
    """||x - y|| / ||y|| (plain norm when y vanishes)."""
    x = np.asarray(x)
    y = np.asarray(y)
    den = np.linalg.norm(y)
    return float(np.linalg.norm(x - y) / den) if den else float(np.linalg.norm(x))


# --------------------------------------------------------------------------
# oracles
# --------------------------------------------------------------------------


def dft_direct(f):
    n = len(f)
    return np.array([sum(f[l] * np.exp(-2j * np.pi * k * l / n) for l in range(n)) for k in range(n)])


def sdft_direct(a):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    k = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    for u in range(n):
        for v in range(n):
            out[u, v] = np.sum(a * np.exp(2j * np.pi * (l * u - k * v) / n)) / n
    return out


def circ_conv_direct(f, g):
    n = len(f)
    return np.array([sum(f[(u - k) % n] * g[k] for k in range(n)) for u in range(n)])


def tf_atom(g, k, l):
    """M_l T_k g from the definition."""
    n = len(g)
    return np.array([np.exp(2j * np.pi * l * t / n) * g[(t - k) % n] for t in range(n)])


def stft_direct(f, g):
    n = len(f)
    out = np.zeros((n, n), dtype=complex)
    for u in range(n):
        for v in range(n):
            out[u, v] = np.vdot(tf_atom(g, u, v), f)
    return out


def gm_kernel_direct(g1, g2, mask, lat):
    """sum over lattice points of a(p) (pi(p) g2)(pi(p) g1)^*."""
    n = lat.n
    out = np.zeros((n, n), dtype=complex)
    for k in range(0, n, lat.alpha):
        for l in range(0, n, lat.beta):
            out += mask[k, l] * np.outer(tf_atom(g2, k, l), np.conj(tf_atom(g1, k, l)))
    return out


def frame_operator_direct(g, lat):
    n = lat.n
    out = np.zeros((n, n), dtype=complex)
    for k in range(0, n, lat.alpha):
        for l in range(0, n, lat.beta):
            a = tf_atom(g, k, l)
            out += np.outer(a, np.conj(a))
    return out


def spreading_direct(kernel):
    """eta(u, v) = sum_k K(k, k - u) e^{-2 pi i k v / N}, summed term by term."""
    n = kernel.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for u in range(n):
        for v in range(n):
            out[u, v] = sum(kernel[k, (k - u) % n] * np.exp(-2j * np.pi * k * v / n) for k in range(n))
    return out


def spectral_norm_power(a, iters=500, seed=0):
    """Largest singular value by power iteration on a^H a."""
    x = crandn(rng(seed), a.shape[1])
    x /= np.linalg.norm(x)
    for _ in range(iters):
        y = a.conj().T @ (a @ x)
        x = y / np.linalg.norm(y)
    return float(np.linalg.norm(a @ x))


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------


def bandlimited_window(gen, n, width, start=0):
    """Random window whose DFT lives on ``width`` consecutive bins from ``start``."""
    spec = np.zeros(n, dtype=complex)
    idx = (start + np.arange(width)) % n
    spec[idx] = crandn(gen, width)
    return np.fft.ifft(spec)


def representable_instance(n, alpha, beta, seed):
    """(h, g1, g2, lat) satisfying conditions 1-4.

    Windows with DFT support on s <= A consecutive bins make V_{g1}g2(., lA)
    vanish for 0 < l < alpha; h = w * corr with w B-periodic then satisfies
    the ratio and zero conditions automatically.
    """
    gen = rng(seed)
    lat = Lattice(n, alpha, beta)
    s = max(2, -(-lat.a_count // 2))
    g1 = bandlimited_window(gen, n, s)
    g2 = bandlimited_window(gen, n, s)
    corr = np.fft.ifft(np.fft.fft(g2) * np.conj(np.fft.fft(g1)))
    w = crandn(gen, lat.b_count)[np.arange(n) % lat.b_count]
    return w * corr, g1, g2, lat
