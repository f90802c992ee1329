"""Fourier and convolution algebra on Z_N and Z_N x Z_N.

Normalisations:

* ``dft`` is unnormalised, ``idft`` carries 1/N;
* ``dft2`` is unnormalised, ``idft2`` carries 1/N^2;
* ``sdft`` (symplectic) carries 1/N and is its own inverse.

Indices are always reduced into 0..N-1 with Euclidean modulo, so negative
shifts are fine everywhere.
"""

from dataclasses import dataclass

import numpy as np


def as_signal(f, name="signal"):
    """Return ``f`` as a 1-D complex128 array, checking it is finite and non-empty."""
    x = np.asarray(f, dtype=np.complex128)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty 1-D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or Inf")
    return x


def as_matrix(a, name="matrix"):
    """Return ``a`` as a square complex128 array, checking it is finite."""
    x = np.asarray(a, dtype=np.complex128)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty square 2-D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or Inf")
    return x


def _same_length(*arrays):
    n = arrays[0].shape[0]
    for x in arrays[1:]:
        if x.shape[0] != n:
            raise ValueError(f"length mismatch: {n} vs {x.shape[0]}")
    return n


@dataclass(frozen=True)
class Lattice:
    """Rectangular lattice alpha*Z_N x beta*Z_N.

    ``a_count`` = N/alpha time nodes, ``b_count`` = N/beta frequency nodes.
    """

    n: int
    alpha: int
    beta: int

    def __post_init__(self):
        for name in ("n", "alpha", "beta"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.n % self.alpha:
            raise ValueError(f"alpha={self.alpha} does not divide n={self.n}")
        if self.n % self.beta:
            raise ValueError(f"beta={self.beta} does not divide n={self.n}")

    @property
    def a_count(self):
        return self.n // self.alpha

    @property
    def b_count(self):
        return self.n // self.beta

    @property
    def redundancy(self):
        return self.n / (self.alpha * self.beta)

    def points(self):
        """Lattice points (alpha*k, beta*l) as an (A*B, 2) integer array."""
        k, l = np.meshgrid(np.arange(self.a_count), np.arange(self.b_count), indexing="ij")
        return np.stack([self.alpha * k.ravel(), self.beta * l.ravel()], axis=1)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_lattices(n):
    """Every Lattice(n, alpha, beta) with alpha, beta dividing n."""
    ds = divisors(n)
    return [Lattice(n, a, b) for a in ds for b in ds]


# --------------------------------------------------------------------------
# Elementary signals
# --------------------------------------------------------------------------


def delta(n):
    out = np.zeros(n, dtype=np.complex128)
    out[0] = 1
    return out


def ones(n):
    return np.ones(n, dtype=np.complex128)


def char_subgroup(n, alpha):
    """Indicator of the subgroup alpha*Z_N."""
    if alpha < 1 or n % alpha:
        raise ValueError(f"alpha={alpha} does not divide n={n}")
    out = np.zeros(n, dtype=np.complex128)
    out[::alpha] = 1
    return out


def impulse_train(lat):
    """Dirac comb on the lattice: chi_{alpha Z_N}(u) * chi_{beta Z_N}(v)."""
    return np.outer(char_subgroup(lat.n, lat.alpha), char_subgroup(lat.n, lat.beta))


def tensor(f, g):
    """(f (x) g)(u, v) = f(u) g(v)."""
    f = as_signal(f, "f")
    g = as_signal(g, "g")
    return np.outer(f, g)


# --------------------------------------------------------------------------
# Transforms
# --------------------------------------------------------------------------


def dft(f):
    """Unnormalised DFT: sum_l f(l) e^{-2 pi i k l / N}."""
    return np.fft.fft(as_signal(f))


def idft(f):
    """Inverse of :func:`dft`, carrying the 1/N factor."""
    return np.fft.ifft(as_signal(f))


def dft2(a):
    return np.fft.fft2(as_matrix(a))


def idft2(a):
    return np.fft.ifft2(as_matrix(a))


def sdft(a):
    """Symplectic DFT, (1/N) sum_{k,l} a(k,l) e^{2 pi i (l u - k v) / N}.

    Self-inverse: ``sdft(sdft(a)) == a``.
    """
    a = as_matrix(a)
    # fft over k gives the e^{-2 pi i k v} factor, ifft over l gives (1/N) e^{2 pi i l u}
    return np.fft.ifft(np.fft.fft(a, axis=0), axis=1).T


def circ_conv(f, g):
    """Circular convolution (f * g)(u) = sum_k f(u - k) g(k)."""
    f = as_signal(f, "f")
    g = as_signal(g, "g")
    _same_length(f, g)
    return np.fft.ifft(np.fft.fft(f) * np.fft.fft(g))


def conv2(a, b):
    """Two-dimensional circular convolution on Z_N x Z_N."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    _same_length(a, b)
    return np.fft.ifft2(np.fft.fft2(a) * np.fft.fft2(b))


def reflect(f):
    """(I f)(t) = f(-t)."""
    f = as_signal(f)
    return f[(-np.arange(f.shape[0])) % f.shape[0]]
