"""Time-frequency primitives on C^N: shifts, STFT, window correlation, Gabor frames."""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .finite import Lattice, _same_length, as_signal


def translate(f, k):
    """(T_k f)(t) = f(t - k)."""
    f = as_signal(f)
    return np.roll(f, int(k) % f.shape[0])


def modulate(f, l):
    """(M_l f)(t) = e^{2 pi i l t / N} f(t)."""
    f = as_signal(f)
    n = f.shape[0]
    return np.exp(2j * np.pi * ((int(l) * np.arange(n)) % n) / n) * f


def tf_shift(f, k, l):
    """pi(k, l) f = M_l T_k f."""
    return modulate(translate(f, k), l)


def tf_shift_matrix(n, k, l):
    """Matrix of pi(k, l) on C^N."""
    out = np.zeros((n, n), dtype=np.complex128)
    t = np.arange(n)
    out[t, (t - k) % n] = np.exp(2j * np.pi * ((l * t) % n) / n)
    return out


def stft(f, g):
    """Discrete STFT as an N x N matrix indexed [u, v] (time, frequency).

    V_g f(u, v) = <f, pi(u, v) g> = sum_k f(k) conj(g(k - u)) e^{-2 pi i k v / N}.
    """
    f = as_signal(f, "f")
    g = as_signal(g, "g")
    _same_length(f, g)
    return _kernels.stft(f, g)


def spectrogram(f, g):
    """|V_g f|^2, indexed [u, v]."""
    v = stft(f, g)
    return v.real**2 + v.imag**2


def window_correlation(g1, g2):
    """V_{g1} g2(u, 0) = sum_t g2(t) conj(g1(t - u)) = (conj(I g1) * g2)(u)."""
    g1 = as_signal(g1, "g1")
    g2 = as_signal(g2, "g2")
    _same_length(g1, g2)
    # cross-correlation via the DFT: fft(g2) * conj(fft(g1)) is the spectrum of it
    return np.fft.ifft(np.fft.fft(g2) * np.conj(np.fft.fft(g1)))


def discrete_gaussian(n, width=1.0, normalize=False):
    """Periodised Gaussian sum_{|j|<=4} exp(-pi (t + jN)^2 / (width N)).

    Even mod N, maximal at t = 0.  With ``normalize`` the result has unit l2 norm.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    t = np.arange(n, dtype=float)
    t = np.where(t > n / 2, t - n, t)
    # centred index keeps g(-t) == g(t) exact in floating point
    j = np.arange(-4, 5)[:, None]
    g = np.exp(-np.pi * (t[None, :] + j * n) ** 2 / (width * n)).sum(axis=0)
    g = g.astype(np.complex128)
    if normalize:
        g /= np.linalg.norm(g)
    return g


@dataclass(frozen=True)
class GaborSystem:
    window: np.ndarray
    lattice: Lattice

    def __post_init__(self):
        w = as_signal(self.window, "window").copy()
        if w.shape[0] != self.lattice.n:
            raise ValueError(f"window length {w.shape[0]} != lattice n {self.lattice.n}")
        if not np.any(w):
            raise ValueError("window is identically zero")
        w.flags.writeable = False
        object.__setattr__(self, "window", w)

    def atoms(self):
        """All pi(alpha k, beta l) g stacked as rows, k-major order."""
        lat = self.lattice
        return np.array([tf_shift(self.window, k, l) for k, l in lat.points()])


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def is_frame(self):
        return self.lower > 0

    @property
    def condition_number(self):
        if self.lower == 0:
            return float("inf")
        return float(np.sqrt(self.upper / self.lower))


def frame_operator(sys):
    """S f = sum_{k,l} <f, pi(alpha k, beta l) g> pi(alpha k, beta l) g, as a matrix."""
    lat = sys.lattice
    return _kernels.frame_operator(np.asarray(sys.window), lat.alpha, lat.beta)


def frame_bounds(sys, rtol=1e-12):
    """Optimal frame bounds = extreme eigenvalues of the frame operator.

    Eigenvalues below ``rtol * upper`` are rounding noise of a singular
    operator and are reported as an exact zero.
    """
    s = frame_operator(sys)
    eig = np.linalg.eigvalsh(s)
    upper = float(eig[-1])
    lower = float(eig[0])
    if lower <= rtol * upper:
        lower = 0.0
    return FrameBounds(lower=lower, upper=upper)
