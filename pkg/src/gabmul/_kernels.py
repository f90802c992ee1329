"""Hot inner loops, each in two flavours.

Every kernel exists as a numba ``@njit`` loop (``*_nb``) and a vectorised
numpy version (``*_np``).  The public name (without suffix) is bound to one of
them at import time:

* ``GABMUL_BACKEND=numpy`` forces the numpy versions;
* ``GABMUL_BACKEND=numba`` (default) uses numba when it can be imported and
  silently falls back to numpy otherwise.

``stft`` and ``gm_apply`` stay on the numpy FFT path under both settings: the
loop versions are direct O(N^3) sums and lose to the FFT at every size
(see benchmarks/bench_kernels.py).  Their ``*_nb`` twins remain for parity
tests and the benchmark.

All kernels take and return complex128 arrays and do no validation; callers
in the public modules are responsible for shapes and lattice divisibility.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_requested = os.environ.get("GABMUL_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"GABMUL_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"


def _twiddles(n, sign):
    return np.exp(sign * 2j * np.pi * np.arange(n) / n)


# --------------------------------------------------------------------------
# STFT: V_g f(u, v) = sum_k f(k) conj(g(k - u)) e^{-2 pi i k v / N}
# --------------------------------------------------------------------------


@njit(cache=True)
def _stft_loop(f, g, tw):
    n = f.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for u in range(n):
        for k in range(n):
            x = f[k] * np.conj(g[(k - u) % n])
            if x == 0:
                continue
            for v in range(n):
                out[u, v] += x * tw[(k * v) % n]
    return out


def stft_nb(f, g):
    return _stft_loop(f, g, _twiddles(f.shape[0], -1.0))


def stft_np(f, g):
    n = f.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n  # [u, k] -> k - u
    return np.fft.fft(f[None, :] * np.conj(g[idx]), axis=1)


# --------------------------------------------------------------------------
# Gabor multiplier kernel
#   K(u, v) = sum_{k<A} M[k, u - v] conj(g1(v - alpha k)) g2(u - alpha k)
#   M[k, w] = sum_{l<B} a(alpha k, beta l) e^{2 pi i beta l w / N}
# --------------------------------------------------------------------------


def _mask_rows(mask, alpha, beta):
    """M[k, w] for w = 0..N-1 (B-periodic in w)."""
    n = mask.shape[0]
    b_count = n // beta
    sub = mask[::alpha, ::beta]  # (A, B)
    per = b_count * np.fft.ifft(sub, axis=1)  # sum_l sub[k,l] e^{2 pi i l w / B}
    return per[:, np.arange(n) % b_count]


@njit(cache=True)
def _gm_kernel_loop(g1, g2, rows, alpha):
    n = g1.shape[0]
    a_count = rows.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(a_count):
        s = alpha * k
        for u in range(n):
            x = g2[(u - s) % n]
            if x == 0:
                continue
            for v in range(n):
                out[u, v] += rows[k, (u - v) % n] * np.conj(g1[(v - s) % n]) * x
    return out


def gm_kernel_nb(g1, g2, mask, alpha, beta):
    return _gm_kernel_loop(g1, g2, _mask_rows(mask, alpha, beta), alpha)


def gm_kernel_np(g1, g2, mask, alpha, beta):
    n = g1.shape[0]
    rows = _mask_rows(mask, alpha, beta)
    ar = np.arange(n)
    diff = (ar[:, None] - ar[None, :]) % n
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(rows.shape[0]):
        s = alpha * k
        out += rows[k][diff] * np.outer(g2[(ar - s) % n], np.conj(g1[(ar - s) % n]))
    return out


# --------------------------------------------------------------------------
# Gabor multiplier applied to a signal (literal lattice double sum)
# --------------------------------------------------------------------------


@njit(cache=True)
def _gm_apply_loop(g1, g2, mask, alpha, beta, f, tw):
    n = f.shape[0]
    a_count = n // alpha
    b_count = n // beta
    out = np.zeros(n, dtype=np.complex128)
    for k in range(a_count):
        s = alpha * k
        for l in range(b_count):
            m = beta * l
            c = mask[s, m]
            if c == 0:
                continue
            coef = 0j
            for t in range(n):
                coef += f[t] * np.conj(g1[(t - s) % n]) * np.conj(tw[(t * m) % n])
            coef *= c
            for t in range(n):
                out[t] += coef * tw[(t * m) % n] * g2[(t - s) % n]
    return out


def gm_apply_nb(g1, g2, mask, alpha, beta, f):
    return _gm_apply_loop(g1, g2, mask, alpha, beta, f, _twiddles(f.shape[0], 1.0))


def gm_apply_np(g1, g2, mask, alpha, beta, f):
    n = f.shape[0]
    b_count = n // beta
    ar = np.arange(n)
    shifts = (ar[None, :] - alpha * np.arange(n // alpha)[:, None]) % n  # (A, N)
    coef = np.fft.fft(f[None, :] * np.conj(g1[shifts]), axis=1)[:, ::beta]
    coef = coef * mask[::alpha, ::beta]
    # sum_l coef[k,l] e^{2 pi i beta l t / N} = B * ifft_B(coef[k])[t mod B]
    synth = b_count * np.fft.ifft(coef, axis=1)[:, ar % b_count]
    return np.sum(synth * g2[shifts], axis=0)


# --------------------------------------------------------------------------
# Frame operator  S = sum_{k<A, l<B} pi(alpha k, beta l) g (pi(alpha k, beta l) g)^*
# Summing the modulations first leaves
#   S(m, n) = B * [m = n mod B] * sum_k g(m - alpha k) conj(g(n - alpha k)).
# --------------------------------------------------------------------------


@njit(cache=True)
def _frame_operator_loop(g, alpha, beta):
    n = g.shape[0]
    a_count = n // alpha
    b_count = n // beta
    out = np.zeros((n, n), dtype=np.complex128)
    for m in range(n):
        for j in range(beta):
            q = (m + j * b_count) % n
            acc = 0j
            for k in range(a_count):
                s = alpha * k
                acc += g[(m - s) % n] * np.conj(g[(q - s) % n])
            out[m, q] = b_count * acc
    return out


def frame_operator_nb(g, alpha, beta):
    return _frame_operator_loop(g, alpha, beta)


def frame_operator_np(g, alpha, beta):
    n = g.shape[0]
    b_count = n // beta
    ar = np.arange(n)
    shifts = (ar[None, :] - alpha * np.arange(n // alpha)[:, None]) % n
    gs = g[shifts]  # (A, N)
    full = gs.T @ np.conj(gs)
    same_class = (ar[:, None] - ar[None, :]) % b_count == 0
    return b_count * np.where(same_class, full, 0)


# --------------------------------------------------------------------------
# STFT multiplier with symbol 1 (x) m on a uniform grid, computed through the
# two-window STFT: for each output time t_j,
#   out[j] = sum_w e^{2 pi i w t_j} m(w) sum_y f(y) C(y - t_j) e^{-2 pi i w y} dy dw
# ``corr_ext`` holds C on the doubled index range: corr_ext[i + 2L/dt] = C(i*dt).
# --------------------------------------------------------------------------


@njit(cache=True)
def _stft_mult_loop(f, corr_ext, m, fwd, step):
    # on a uniform grid sum_w m(w) e^{2 pi i w (t_j - y_i)} depends on i - j only
    n = f.shape[0]
    off = n - 1
    kern = np.zeros(2 * n - 1, dtype=np.complex128)
    for d in range(n):
        s_pos = 0j
        s_neg = 0j
        for w in range(n):
            if m[w] == 0:
                continue
            s_pos += m[w] * np.conj(fwd[w, 0]) * fwd[w, d]
            s_neg += m[w] * np.conj(fwd[w, d]) * fwd[w, 0]
        kern[d + off] = s_pos
        kern[off - d] = s_neg
    out = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        acc = 0j
        for i in range(n):
            acc += f[i] * corr_ext[i - j + off] * kern[i - j + off]
        out[j] = acc * step * step
    return out


def stft_multiplier_nb(f, corr_ext, m, fwd, step):
    return _stft_mult_loop(f, corr_ext, m, fwd, step)


def stft_multiplier_np(f, corr_ext, m, fwd, step):
    n = f.shape[0]
    ar = np.arange(n)
    shifted = corr_ext[ar[None, :] - ar[:, None] + n - 1]  # [j, i] -> C(y_i - t_j)
    spec = (f[None, :] * shifted) @ fwd.T  # [j, w]
    return np.einsum("jw,wj->j", spec * m[None, :], np.conj(fwd)) * step * step


_IMPLS = {
    "numba": dict(
        stft=stft_np,
        gm_kernel=gm_kernel_nb,
        gm_apply=gm_apply_np,
        frame_operator=frame_operator_nb,
        stft_multiplier=stft_multiplier_nb,
    ),
    "numpy": dict(
        stft=stft_np,
        gm_kernel=gm_kernel_np,
        gm_apply=gm_apply_np,
        frame_operator=frame_operator_np,
        stft_multiplier=stft_multiplier_np,
    ),
}

stft = _IMPLS[BACKEND]["stft"]
gm_kernel = _IMPLS[BACKEND]["gm_kernel"]
gm_apply = _IMPLS[BACKEND]["gm_apply"]
frame_operator = _IMPLS[BACKEND]["frame_operator"]
stft_multiplier = _IMPLS[BACKEND]["stft_multiplier"]
