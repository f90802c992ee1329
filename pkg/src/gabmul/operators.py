"""Operators on C^N: kernels, spreading functions, LTI filters, Gabor multipliers.

A linear operator is represented by its N x N kernel matrix ``K`` (action
``f -> K @ f``).  Its spreading function is

    eta(u, v) = sum_k K(k, k - u) e^{-2 pi i k v / N},

so the identity has eta = N (delta (x) delta) and an LTI filter with impulse
response h has eta = N (h (x) delta).  The operator is recovered from eta by
``(1/N) sum_{k,l} eta(k, l) pi(k, l)``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .finite import Lattice, _same_length, as_matrix, as_signal, circ_conv, impulse_train, sdft
from .tf import stft, tf_shift_matrix


def _frozen(x):
    x = x.copy()
    x.flags.writeable = False
    return x


@dataclass(frozen=True)
class LTIFilter:
    """Convolution operator f -> h * f."""

    impulse_response: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "impulse_response", _frozen(as_signal(self.impulse_response, "h")))

    @property
    def n(self):
        return self.impulse_response.shape[0]

    @property
    def frequency_response(self):
        return np.fft.fft(self.impulse_response)


@dataclass(frozen=True)
class GaborMultiplier:
    """Windows g1 (analysis), g2 (synthesis), full N x N mask and a lattice.

    Only mask entries on the lattice points influence the operator.
    """

    g1: np.ndarray
    g2: np.ndarray
    mask: np.ndarray
    lattice: Lattice

    def __post_init__(self):
        g1 = as_signal(self.g1, "g1")
        g2 = as_signal(self.g2, "g2")
        mask = as_matrix(self.mask, "mask")
        n = self.lattice.n
        if g1.shape[0] != n or g2.shape[0] != n or mask.shape[0] != n:
            raise ValueError(
                f"dimension mismatch: g1 {g1.shape[0]}, g2 {g2.shape[0]}, "
                f"mask {mask.shape[0]}, lattice n {n}"
            )
        object.__setattr__(self, "g1", _frozen(g1))
        object.__setattr__(self, "g2", _frozen(g2))
        object.__setattr__(self, "mask", _frozen(mask))

    @property
    def n(self):
        return self.lattice.n


# --------------------------------------------------------------------------
# kernel <-> spreading function
# --------------------------------------------------------------------------


def kernel_to_spreading(kernel):
    k = as_matrix(kernel, "kernel")
    n = k.shape[0]
    rows = np.arange(n)[None, :]
    lags = np.arange(n)[:, None]
    diagonals = k[rows, (rows - lags) % n]  # [u, k] -> K(k, k - u)
    return np.fft.fft(diagonals, axis=1)


def spreading_to_kernel(eta):
    """Inverse of :func:`kernel_to_spreading`.

    K(m, n) = (1/N) sum_v eta((m - n) mod N, v) e^{2 pi i m v / N}.
    """
    eta = as_matrix(eta, "eta")
    n = eta.shape[0]
    diagonals = np.fft.ifft(eta, axis=1)  # [u, m] -> K(m, m - u)
    m = np.arange(n)[:, None]
    cols = np.arange(n)[None, :]
    return diagonals[(m - cols) % n, m]


def synthesize_from_spreading(eta):
    """(1/N) sum_{k,l} eta(k, l) pi(k, l), assembled term by term."""
    eta = as_matrix(eta, "eta")
    n = eta.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        for l in range(n):
            if eta[k, l] != 0:
                out += eta[k, l] * tf_shift_matrix(n, k, l)
    return out / n


# --------------------------------------------------------------------------
# LTI filters
# --------------------------------------------------------------------------


def lti_kernel(flt):
    """K_H(u, v) = h(u - v)."""
    h = flt.impulse_response
    n = h.shape[0]
    ar = np.arange(n)
    return h[(ar[:, None] - ar[None, :]) % n]


def lti_spreading(flt):
    """N (h (x) delta)."""
    h = flt.impulse_response
    out = np.zeros((h.shape[0], h.shape[0]), dtype=np.complex128)
    out[:, 0] = h.shape[0] * h
    return out


def lti_apply(flt, f):
    f = as_signal(f, "f")
    _same_length(flt.impulse_response, f)
    return circ_conv(flt.impulse_response, f)


# --------------------------------------------------------------------------
# Gabor multipliers
# --------------------------------------------------------------------------


def gm_apply(gm, f):
    """sum_{k<A} sum_{l<B} a(alpha k, beta l) V_{g1} f(alpha k, beta l) pi(alpha k, beta l) g2."""
    f = as_signal(f, "f")
    if f.shape[0] != gm.n:
        raise ValueError(f"signal length {f.shape[0]} != multiplier size {gm.n}")
    lat = gm.lattice
    return _kernels.gm_apply(gm.g1, gm.g2, gm.mask, lat.alpha, lat.beta, f)


def gm_kernel(gm):
    """Kernel matrix of a Gabor multiplier.

    K(u, v) = sum_{k,l} a(alpha k, beta l) conj(g1(v - alpha k)) g2(u - alpha k)
              e^{2 pi i beta l (u - v) / N}
    """
    lat = gm.lattice
    return _kernels.gm_kernel(gm.g1, gm.g2, gm.mask, lat.alpha, lat.beta)


def mask_periodization(mask, lat):
    """Periodised symplectic transform of the mask.

    sum_{l<alpha} sum_{k<beta} S(u + B k, v - A l), with S = sdft(mask).
    """
    s = sdft(mask)
    out = np.zeros_like(s)
    for l in range(lat.alpha):
        for k in range(lat.beta):
            out += np.roll(s, (-lat.b_count * k, lat.a_count * l), axis=(0, 1))
    return out


def mask_periodization_sampled(mask, lat):
    """Same quantity as :func:`mask_periodization`, via alpha*beta * sdft(mask * comb)."""
    return lat.alpha * lat.beta * sdft(as_matrix(mask) * impulse_train(lat))


def gm_spreading(gm):
    """(N / alpha beta) * periodised mask transform * V_{g1} g2."""
    lat = gm.lattice
    return lat.redundancy * mask_periodization(gm.mask, lat) * stft(gm.g2, gm.g1)


class OpDistance(NamedTuple):
    frobenius: float
    spectral: float


def op_distance(x, y):
    """Frobenius and spectral norm of K_x - K_y."""
    x = as_matrix(x, "x")
    y = as_matrix(y, "y")
    _same_length(x, y)
    d = x - y
    return OpDistance(float(np.linalg.norm(d)), float(np.linalg.norm(d, 2)))


def singular_spectrum(op, k):
    """The k largest singular values, descending."""
    op = as_matrix(op, "op")
    if not 1 <= k <= op.shape[0]:
        raise ValueError(f"k must be in 1..{op.shape[0]}, got {k}")
    return np.linalg.svd(op, compute_uv=False)[:k]


def leading_singular_vector(op):
    """Right singular vector of the largest singular value, phase-fixed so its largest entry is real positive."""
    _, _, vh = np.linalg.svd(as_matrix(op, "op"))
    vec = np.conj(vh[0])
    pivot = vec[np.argmax(np.abs(vec))]
    return vec * (np.abs(pivot) / pivot)
