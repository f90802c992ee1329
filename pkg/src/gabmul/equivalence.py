"""Deciding and constructing exact LTI filter <-> Gabor multiplier equivalences.

Exact zeros do not survive floating point, so every "= 0" test below is
``|x| <= tol * ||g1|| ||g2||``; the tolerance is carried in the report.

Symbols are normalised so that the constructed multiplier *equals* the
filter with kernel K(u, v) = h(u - v) (this requires a factor N relative
to the bare formula N^-2 (1 (x) F(h / corr)) one finds in the literature,
because an LTI filter's spreading function is N (h (x) delta)).
"""

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .finite import Lattice, _same_length, as_signal, circ_conv
from .operators import GaborMultiplier, LTIFilter, gm_kernel, lti_kernel, op_distance
from .tf import stft, window_correlation


class NotRepresentableError(ValueError):
    """Raised when a symbol is requested for a filter the windows cannot represent."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def support_of(h, eps_rel=1e-10):
    """Indices u with |h(u)| > eps_rel * max|h| (empty for the zero signal)."""
    if not eps_rel > 0:
        raise ValueError("eps_rel must be positive")
    mag = np.abs(as_signal(h, "h"))
    top = mag.max()
    if top == 0:
        return np.zeros(0, dtype=int)
    return np.flatnonzero(mag > eps_rel * top)


@dataclass(frozen=True)
class Violation:
    condition: int
    u: int
    k: int
    l: int
    lhs: complex
    rhs: complex

    def to_dict(self):
        return {
            "condition": self.condition,
            "u": self.u,
            "k": self.k,
            "l": self.l,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
        }


@dataclass(frozen=True)
class RepresentabilityReport:
    representable: bool
    per_condition: dict
    support_h: tuple
    tolerance_used: float
    extra: dict = field(default_factory=dict)

    @property
    def violations(self):
        return [v for c in (1, 2, 3, 4) for v in self.per_condition[c]]

    def to_dict(self):
        out = {
            "representable": self.representable,
            "tolerance": self.tolerance_used,
            "violations": [v.to_dict() for v in self.violations],
        }
        out.update(self.extra)
        return out

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def _check_inputs(h, g1, g2, lat):
    h = as_signal(h, "h")
    g1 = as_signal(g1, "g1")
    g2 = as_signal(g2, "g2")
    _same_length(h, g1, g2)
    if not isinstance(lat, Lattice):
        raise TypeError("lat must be a Lattice")
    if lat.n != h.shape[0]:
        raise ValueError(f"lattice n={lat.n} does not match signal length {h.shape[0]}")
    return h, g1, g2


def check_representability(h, g1, g2, lat, tol=1e-9, eps_rel=1e-10):
    """Test the four window conditions for writing the filter h as a Gabor multiplier.

    For every u in supp(h), with V = V_{g1} g2:

    1. V(u, 0) != 0;
    2. V(u + Bk, lA) = 0 for k = 0..beta-1, l = 1..alpha-1;
    3. V(u + Bk, 0) = 0 for k = 1..beta-1 with u + Bk outside supp(h);
    4. V(u + Bk, 0) = h(u + Bk) / h(u) * V(u, 0) for k = 1..beta-1 with u + Bk in supp(h).
    """
    h, g1, g2 = _check_inputs(h, g1, g2, lat)
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = lat.n
    a_cnt, b_cnt = lat.a_count, lat.b_count
    scale = np.linalg.norm(g1) * np.linalg.norm(g2)
    zero = tol * scale
    v = stft(g2, g1)
    supp = support_of(h, eps_rel)
    in_supp = np.zeros(n, dtype=bool)
    in_supp[supp] = True

    found = {1: [], 2: [], 3: [], 4: []}
    for u in supp:
        u = int(u)
        base = v[u, 0]
        if abs(base) <= zero:
            found[1].append(Violation(1, u, 0, 0, complex(base), 0j))
        for k in range(lat.beta):
            w = (u + b_cnt * k) % n
            for l in range(1, lat.alpha):
                val = v[w, (l * a_cnt) % n]
                if abs(val) > zero:
                    found[2].append(Violation(2, u, k, l, complex(val), 0j))
        for k in range(1, lat.beta):
            w = (u + b_cnt * k) % n
            val = v[w, 0]
            if not in_supp[w]:
                if abs(val) > zero:
                    found[3].append(Violation(3, u, k, 0, complex(val), 0j))
            else:
                ratio = h[w] / h[u]
                rhs = ratio * base
                if abs(val - rhs) > zero * (1 + abs(ratio)):
                    found[4].append(Violation(4, u, k, 0, complex(val), complex(rhs)))

    ok = not any(found.values())
    return RepresentabilityReport(
        representable=ok,
        per_condition=found,
        support_h=tuple(int(s) for s in supp),
        tolerance_used=tol,
    )


@dataclass(frozen=True)
class SymbolConstruction:
    mask: np.ndarray
    v_function: np.ndarray
    c_function: np.ndarray
    report: RepresentabilityReport

    def multiplier(self, g1, g2, lat):
        return GaborMultiplier(g1, g2, self.mask, lat)


def construct_symbol(h, g1, g2, lat, tol=1e-9, eps_rel=1e-10, force=False):
    """Mask a with G^{g1,g2}_a = H on the given lattice.

    V(u) is the window correlation on supp(h) and 1 elsewhere; C(u) counts the
    support points in the coset u + B Z_N (1 if there are none).  The mask is
    (alpha beta / N) (1 (x) F_N(h / (C V))).

    Raises :class:`NotRepresentableError` unless the conditions hold; ``force``
    skips that refusal and builds the mask anyway (used to measure how far a
    violated instance is from the filter).
    """
    h, g1, g2 = _check_inputs(h, g1, g2, lat)
    report = check_representability(h, g1, g2, lat, tol=tol, eps_rel=eps_rel)
    if not report.representable and not force:
        first = report.violations[0]
        raise NotRepresentableError(
            f"{len(report.violations)} condition violation(s), first: condition "
            f"{first.condition} at u={first.u}, k={first.k}, l={first.l}",
            report,
        )
    n = lat.n
    b_cnt = lat.b_count
    supp = np.array(report.support_h, dtype=int)
    in_supp = np.zeros(n, dtype=bool)
    in_supp[supp] = True

    corr = window_correlation(g1, g2)
    vfun = np.where(in_supp, corr, 1).astype(np.complex128)
    hits = np.bincount(np.arange(n)[in_supp] % b_cnt, minlength=b_cnt)
    cfun = np.maximum(hits[np.arange(n) % b_cnt], 1)

    # below-threshold tails count as exact zeros
    h_s = np.where(in_supp, h, 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(in_supp, h_s / (cfun * vfun), 0)
    row = np.fft.fft(ratio) * (lat.alpha * lat.beta / n)
    mask = np.tile(row, (n, 1))
    return SymbolConstruction(mask=mask, v_function=vfun, c_function=cfun, report=report)


def construct_symbol_full_lattice(h, g1, g2, tol=1e-9):
    """Mask (1/N) (1 (x) F_N(h / corr)) for alpha = beta = 1.

    ``corr`` = V_{g1} g2(., 0) must not vanish anywhere.
    """
    h = as_signal(h, "h")
    g1 = as_signal(g1, "g1")
    g2 = as_signal(g2, "g2")
    n = _same_length(h, g1, g2)
    corr = window_correlation(g1, g2)
    zero = tol * np.linalg.norm(g1) * np.linalg.norm(g2)
    bad = np.flatnonzero(np.abs(corr) <= zero)
    if bad.size:
        raise NotRepresentableError(
            f"window correlation vanishes at u={int(bad[0])} "
            f"(|corr|={abs(corr[bad[0]]):.3e}, {bad.size} index(es) in total)"
        )
    row = np.fft.fft(h / corr) / n
    return np.tile(row, (n, 1))


def is_symmetric(g, tol=1e-12):
    g = as_signal(g)
    mirrored = g[(-np.arange(g.shape[0])) % g.shape[0]]
    return bool(np.max(np.abs(g - mirrored)) <= tol * max(1.0, np.max(np.abs(g))))


def gm_to_lti(g1, g2, h, lat):
    """Impulse response of the multiplier with mask 1 (x) F_N(h) and no time subsampling.

    Requires alpha = 1 and g1 even mod N.  The result is

        N * (1/beta) * sum_{k<beta} h(. + Bk) * (conj(g1) * g2)(.)
    """
    h = as_signal(h, "h")
    g1 = as_signal(g1, "g1")
    g2 = as_signal(g2, "g2")
    n = _same_length(h, g1, g2)
    if lat.n != n:
        raise ValueError(f"lattice n={lat.n} does not match signal length {n}")
    if lat.alpha != 1:
        raise ValueError(f"time subsampling (alpha={lat.alpha}) breaks time invariance; need alpha=1")
    if not is_symmetric(g1):
        raise ValueError("g1 must be symmetric: g1((N - t) mod N) == g1(t)")
    folded = sum(np.roll(h, -lat.b_count * k) for k in range(lat.beta)) / lat.beta
    return LTIFilter(n * folded * circ_conv(np.conj(g1), g2))


def time_invariant_mask(h):
    """1 (x) F_N(h): the same frequency mask at every time."""
    h = as_signal(h, "h")
    return np.tile(np.fft.fft(h), (h.shape[0], 1))


def diagonal_variation(kernel):
    """max over diagonals u - v = w of (max - min spread) of K along that diagonal.

    Zero exactly for circulant (LTI) kernels.
    """
    k = np.asarray(kernel)
    n = k.shape[0]
    ar = np.arange(n)
    diags = k[(ar[None, :] + ar[:, None]) % n, ar[None, :]]  # [w, v] -> K(v + w, v)
    return float(np.max(np.abs(diags - diags[:, :1])))


def lowpass_response(n, r):
    """Frequency response equal to 1 on [-R, R] (mod N) and 0 elsewhere."""
    if not 0 <= r < n / 2:
        raise ValueError(f"R must satisfy 0 <= R < N/2, got R={r}, N={n}")
    v = np.arange(n)
    return (np.minimum(v, n - v) <= r).astype(np.complex128)


def lowpass_windows(n, width=1.0):
    """Gaussian analysis/synthesis pair for the low-pass experiment.

    Both windows are the unit-norm discrete Gaussian; the synthesis window is
    scaled by 1/N (the redundancy for alpha = beta = 1), which gives the
    multiplier unit gain at DC.
    """
    from .tf import discrete_gaussian

    g = discrete_gaussian(n, width, normalize=True)
    return g, g / n


class LowpassGap(NamedTuple):
    gap_sup: float
    spectral_distance: float


def lowpass_comparison(r, g1, g2):
    """Ideal low-pass H against the multiplier with mask 1 (x) h_hat on the full lattice.

    Returns a dict with the target response, the effective response of the
    multiplier (from the closed-form impulse response), the two kernels and
    the effective response read off the multiplier's kernel.
    """
    g1 = as_signal(g1, "g1")
    g2 = as_signal(g2, "g2")
    n = _same_length(g1, g2)
    if not 0 < r < n / 2:
        raise ValueError(f"R must satisfy 0 < R < N/2, got R={r}, N={n}")
    target = lowpass_response(n, r)
    h = np.fft.ifft(target)
    lat = Lattice(n, 1, 1)
    gm = GaborMultiplier(g1, g2, time_invariant_mask(h), lat)
    k_gm = gm_kernel(gm)
    k_h = lti_kernel(LTIFilter(h))
    effective = np.fft.fft(gm_to_lti(g1, g2, h, lat).impulse_response)
    return {
        "target": target,
        "effective": effective,
        "effective_from_kernel": np.fft.fft(k_gm[:, 0]),
        "kernel_lti": k_h,
        "kernel_gm": k_gm,
    }


def lowpass_gap(r, g1, g2):
    """(max_v |h_hat - h_hat_eff|, spectral norm of K(H) - K(G))."""
    cmp = lowpass_comparison(r, g1, g2)
    gap = float(np.max(np.abs(cmp["target"] - cmp["effective"])))
    dist = op_distance(cmp["kernel_lti"], cmp["kernel_gm"]).spectral
    return LowpassGap(gap, dist)


def index_condition(p, q, r):
    """1/q <= 1/r + 1/p for exponents in (1, inf]."""
    inv = []
    for name, x in (("p", p), ("q", q), ("r", r)):
        x = float(x)
        if not x > 1:
            raise ValueError(f"{name} must lie in (1, inf], got {x}")
        inv.append(0.0 if np.isinf(x) else 1.0 / x)
    ip, iq, ir = inv
    return iq <= ir + ip + 1e-15
