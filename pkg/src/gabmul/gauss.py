"""Gaussian calculus on R^d and Riemann-sum oracles on a uniform grid (d = 1).

Fourier transform convention: F f(w) = int f(t) e^{-2 pi i w t} dt.
A Gaussian profile (a, b, d) is t -> a exp(-pi b |t|^2) on R^d.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class GaussianProfile:
    amplitude: complex
    width: float
    dim: int = 1

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        r2 = t**2 if self.dim == 1 else np.sum(t**2, axis=-1)
        return self.amplitude * np.exp(-np.pi * self.width * r2)

    def on(self, grid):
        """Samples on the nodes of a GridFunction (d = 1 only)."""
        if self.dim != 1:
            raise ValueError("grid sampling is only available for d = 1")
        return grid.with_samples(self(grid.t))


def gauss_fourier(g):
    """F(a e^{-pi b t^2}) = a b^{-d/2} e^{-pi t^2 / b}."""
    return GaussianProfile(g.amplitude * g.width ** (-g.dim / 2), 1 / g.width, g.dim)


def gauss_convolve(x, y):
    """Convolution of two Gaussians: widths combine as b1 b2 / (b1 + b2)."""
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    s = x.width + y.width
    amp = x.amplitude * y.amplitude * s ** (-x.dim / 2)
    return GaussianProfile(amp, x.width * y.width / s, x.dim)


def gauss_lq_norm(g, q):
    """||a e^{-pi b t^2}||_q = |a| (q b)^{-d/(2q)}, and |a| for q = inf."""
    q = float(q)
    if not q >= 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if math.isinf(q):
        return abs(g.amplitude)
    return abs(g.amplitude) * (q * g.width) ** (-g.dim / (2 * q))


def _check_lr(lam, r, d):
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if not r >= 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")


def weak_lr_norm_gauss(lam, r, d=1):
    """Closed form C(d, r) lambda^{-d/(2r)} for ||e^{-pi lambda t^2}||_{L^{r,inf}}, as usually stated.

    C(d, r) = e^{-d/(2r)} (d/(2r))^{d/(2r)} Gamma(d/2 + 1)^{-1}.  Exact for r = 1
    only; see :func:`weak_lr_norm_gauss_exact`.
    """
    _check_lr(lam, r, d)
    s = d / (2 * r)
    return math.exp(-s) * s**s / math.gamma(d / 2 + 1) * lam ** (-s)


def weak_lr_norm_gauss_exact(lam, r, d=1):
    """Same quasi-norm with the Gamma factor raised to -1/r.

    The level set {e^{-pi lambda |t|^2} > a} is a ball of measure
    (log(1/a)/lambda)^{d/2} / Gamma(d/2 + 1); maximising a * measure^{1/r}
    at a = e^{-d/(2r)} gives this value.
    """
    _check_lr(lam, r, d)
    s = d / (2 * r)
    return math.exp(-s) * s**s * math.gamma(d / 2 + 1) ** (-1 / r) * lam ** (-s)


def fourier_multiplier_gauss(lam, d=1):
    """T_m g for m = g = e^{-pi lambda t^2}: (lambda^2+1)^{-d/2} e^{-pi lambda t^2/(lambda^2+1)}."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return GaussianProfile((lam**2 + 1) ** (-d / 2), lam / (lam**2 + 1), d)


def antiwick_gauss(lam, d=1):
    """Anti-Wick image of e^{-pi lambda t^2} under symbol 1 (x) e^{-pi lambda w^2}, as usually stated.

    c = 2^{d/2} / (6 l^2 + 4 l + 1)^{d/2},
    b = 2 l (6 l^3 + 10 l^2 + 9 l + 1) / ((6 l^2 + 4 l + 1)(2 l + 1)^2).
    Quadrature does not confirm these; :func:`antiwick_gauss_exact` does.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    q = 6 * lam**2 + 4 * lam + 1
    c = 2 ** (d / 2) / q ** (d / 2)
    b = 2 * lam * (6 * lam**3 + 10 * lam**2 + 9 * lam + 1) / (q * (2 * lam + 1) ** 2)
    return GaussianProfile(c, b, d)


def antiwick_gauss_exact(lam, d=1):
    """Same operator with windows 2^{d/4} e^{-pi t^2}, evaluated directly.

    Window correlation e^{-pi t^2/2}; inverse transform of the symbol
    l^{-d/2} e^{-pi t^2/l}; the operator is convolution with their product, so

    c = (l^2 + l/2 + 1)^{-d/2},   b = l (l + 2) / (2 l^2 + l + 2).
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    kernel = GaussianProfile(lam ** (-d / 2), 1 / lam + 0.5, d)
    return gauss_convolve(kernel, GaussianProfile(1.0, lam, d))


def gaussian_window(d=1):
    """L2-normalised 2^{d/4} e^{-pi t^2}."""
    return GaussianProfile(2 ** (d / 4), 1.0, d)


def norm_exponents(p, q, r, d=1):
    """Small-lambda exponents for the rescaled Gaussian test family.

    Returns (e_out, e_in) with ||T_{m_l} g_l||_q ~ l^{e_out} and
    ||m_l||_{L^{r,inf}} ||g_l||_p ~ l^{e_in} as l -> 0+.  A bound
    ||T_m f||_q <= C ||m||_{r,inf} ||f||_p survives the family iff e_out >= e_in.
    """
    inv = [0.0 if math.isinf(float(x)) else 1 / float(x) for x in (p, q, r)]
    ip, iq, ir = inv
    return -d * iq / 2, -d * (ir + ip) / 2


# --------------------------------------------------------------------------
# Grid functions and Riemann-sum oracles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GridFunction:
    """Samples at t = -L, -L + step, ..., L."""

    half_width: float
    step: float
    samples: np.ndarray

    def __post_init__(self):
        if not (self.half_width > 0 and self.step > 0):
            raise ValueError("half_width and step must be positive")
        count = 2 * self.half_width / self.step
        if abs(count - round(count)) > 1e-9 * max(1.0, count):
            raise ValueError(f"2L/step must be an integer, got {count}")
        s = np.array(self.samples, dtype=np.complex128)
        if s.shape != (int(round(count)) + 1,):
            raise ValueError(f"expected {int(round(count)) + 1} samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples contain NaN or Inf")
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @property
    def size(self):
        return self.samples.shape[0]

    @property
    def t(self):
        return -self.half_width + self.step * np.arange(self.size)

    def with_samples(self, values):
        return GridFunction(self.half_width, self.step, values)

    def l2_norm(self):
        return float(np.sqrt(self.step) * np.linalg.norm(self.samples))


def make_grid(half_width=8.0, step=1 / 64, values=None):
    """Grid function with the given samples, or a callable evaluated on the nodes (zeros if None)."""
    n = int(round(2 * half_width / step)) + 1
    t = -half_width + step * np.arange(n)
    if values is None:
        samples = np.zeros(n, dtype=np.complex128)
    elif callable(values):
        samples = values(t)
    else:
        samples = values
    return GridFunction(half_width, step, samples)


def _common(*fs):
    first = fs[0]
    for f in fs[1:]:
        if f.size != first.size or not math.isclose(f.step, first.step) or not math.isclose(
            f.half_width, first.half_width
        ):
            raise ValueError("grid mismatch")
    return first


def relative_l2_error(x, y):
    """||x - y|| / ||y|| on a common grid (arrays or GridFunctions)."""
    xs = x.samples if isinstance(x, GridFunction) else np.asarray(x)
    ys = y.samples if isinstance(y, GridFunction) else np.asarray(y)
    return float(np.linalg.norm(xs - ys) / np.linalg.norm(ys))


def _forward_matrix(grid):
    """e^{-2 pi i w_a t_b} with the frequency grid equal to the time grid."""
    t = grid.t
    return np.exp(-2j * np.pi * np.outer(t, t))


def riemann_fourier(f):
    """F f on the same grid, by Riemann sum."""
    return f.with_samples(_forward_matrix(f) @ f.samples * f.step)


def riemann_inverse_fourier(f):
    return f.with_samples(np.conj(_forward_matrix(f)) @ f.samples * f.step)


def _correlation_full(g1, g2):
    """C(k step) = int g2(s - k step) conj(g1(s)) ds for |k| <= n - 1, at index k + n - 1."""
    return g1.step * np.convolve(np.conj(g1.samples), g2.samples[::-1])


def window_correlation_numeric(g1, g2):
    """C_{g1,g2}(y) = int g2(s - y) conj(g1(s)) ds on the grid of g1 (windows zero off the grid)."""
    grid = _common(g1, g2)
    n = grid.size
    if (n - 1) % 2:
        raise ValueError("correlation needs t = 0 on the grid (L/step integer)")
    half = (n - 1) // 2
    full = _correlation_full(g1, g2)
    return grid.with_samples(full[half : half + n])


def fourier_multiplier_numeric(m, f):
    """T_m f = F^{-1}(m F f), both transforms by Riemann sums; m lives on the frequency grid."""
    grid = _common(m, f)
    fwd = _forward_matrix(grid)
    spec = fwd @ f.samples * grid.step
    return grid.with_samples(np.conj(fwd).T @ (m.samples * spec) * grid.step)


def stft_multiplier_numeric(m, g1, g2, f):
    """STFT multiplier with symbol 1 (x) m through the two-window STFT.

    out(t) = int e^{2 pi i w t} m(w) F(f T_t C)(w) dw with (T_t C)(y) = C(y - t)
    and C the window correlation on the doubled range of differences.
    """
    grid = _common(m, g1, g2, f)
    corr = _correlation_full(g1, g2)
    out = _kernels.stft_multiplier(
        np.ascontiguousarray(f.samples),
        corr,
        np.ascontiguousarray(m.samples),
        _forward_matrix(grid),
        float(grid.step),
    )
    return grid.with_samples(out)


def smoothed_multiplier(m, g1, g2):
    """m_2 = m * F^{-1}(C_{g1,g2}), both operations as Riemann sums."""
    grid = _common(m, g1, g2)
    n = grid.size
    corr = window_correlation_numeric(g1, g2)
    # F^{-1} C at every frequency difference k step, |k| <= n - 1
    diffs = grid.step * np.arange(-(n - 1), n)
    inv_c = np.exp(2j * np.pi * np.outer(diffs, grid.t)) @ corr.samples * grid.step
    full = np.convolve(m.samples, inv_c) * grid.step
    return grid.with_samples(full[n - 1 : 2 * n - 1])


def weak_lr_norm_numeric(f, r, n_levels=10_000, floor=1e-6):
    """sup_a a * mu({|f| > a})^{1/r} over a geometric grid of thresholds in [floor max|f|, max|f|].

    mu is step * (number of grid nodes above the threshold).
    """
    if not r >= 1:
        raise ValueError(f"r must be >= 1, got {r}")
    mag = np.sort(np.abs(f.samples))
    top = mag[-1]
    if top == 0:
        return 0.0
    levels = np.geomspace(floor * top, top, n_levels)
    above = mag.size - np.searchsorted(mag, levels, side="right")
    return float(np.max(levels * (f.step * above) ** (1 / r)))
