"""Property-based checks of the algebraic invariants."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gabmul.equivalence import check_representability, construct_symbol, index_condition
from gabmul.finite import Lattice, circ_conv, dft, dft2, divisors, idft, idft2, impulse_train, sdft
from gabmul.gauss import GaussianProfile, gauss_convolve, gauss_fourier, norm_exponents, weak_lr_norm_gauss
from gabmul.operators import (
    GaborMultiplier,
    LTIFilter,
    gm_kernel,
    gm_spreading,
    kernel_to_spreading,
    lti_kernel,
    spreading_to_kernel,
)
from gabmul.tf import stft, window_correlation
from helpers import crandn, rel, representable_instance, rng

SETTINGS = settings(max_examples=40, deadline=None)

sizes = st.integers(min_value=1, max_value=64)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def lattices(draw, max_n=24):
    n = draw(st.integers(min_value=1, max_value=max_n))
    ds = divisors(n)
    return Lattice(n, draw(st.sampled_from(ds)), draw(st.sampled_from(ds)))


@SETTINGS
@given(sizes, seeds)
def test_fourier_round_trips(n, seed):
    gen = rng(seed)
    f, a = crandn(gen, n), crandn(gen, n, n)
    assert rel(idft(dft(f)), f) <= 1e-12
    assert rel(idft2(dft2(a)), a) <= 1e-12
    assert rel(sdft(sdft(a)), a) <= 1e-12
    assert np.isclose(np.linalg.norm(dft(f)) ** 2, n * np.linalg.norm(f) ** 2, rtol=1e-12)


@SETTINGS
@given(sizes, seeds)
def test_convolution_theorem(n, seed):
    gen = rng(seed)
    f, g = crandn(gen, n), crandn(gen, n)
    assert rel(dft(circ_conv(f, g)), dft(f) * dft(g)) <= 1e-12
    assert rel(circ_conv(f, g), circ_conv(g, f)) <= 1e-12


@SETTINGS
@given(lattices(max_n=64))
def test_poisson_summation(lat):
    dual = Lattice(lat.n, lat.a_count, lat.b_count)
    sha = impulse_train(lat)
    assert np.max(np.abs(dft2(sha) - lat.a_count * lat.b_count * impulse_train(dual))) <= 1e-12 * lat.n**2
    # symplectic form: F_s Sha_(alpha, beta) = (AB / N) Sha_(B, A)
    swapped = Lattice(lat.n, lat.b_count, lat.a_count)
    assert np.max(np.abs(sdft(sha) - lat.a_count * lat.b_count / lat.n * impulse_train(swapped))) <= 1e-12 * lat.n


@SETTINGS
@given(st.integers(min_value=1, max_value=32), seeds)
def test_kernel_spreading_round_trip(n, seed):
    k = crandn(rng(seed), n, n)
    assert rel(spreading_to_kernel(kernel_to_spreading(k)), k) <= 1e-12


@SETTINGS
@given(lattices(), seeds)
def test_gm_spreading_formula(lat, seed):
    gen = rng(seed)
    gm = GaborMultiplier(crandn(gen, lat.n), crandn(gen, lat.n), crandn(gen, lat.n, lat.n), lat)
    assert rel(gm_spreading(gm), kernel_to_spreading(gm_kernel(gm))) <= 1e-10


@SETTINGS
@given(st.integers(min_value=1, max_value=40), seeds)
def test_stft_covariance(n, seed):
    gen = rng(seed)
    f, g = crandn(gen, n), crandn(gen, n)
    k, l = gen.integers(0, n, size=2)
    shifted = np.roll(f, k) * np.exp(2j * np.pi * l * np.arange(n) / n)
    v = stft(f, g)
    vs = stft(shifted, g)
    u, w = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    # V_g(pi(k,l) f)(u, v) = e^{-2 pi i k (v - l)/N} V_g f(u - k, v - l)
    expected = np.exp(-2j * np.pi * k * (w - l) / n) * v[(u - k) % n, (w - l) % n]
    assert rel(vs, expected) <= 1e-11
    assert rel(window_correlation(g, f), v[:, 0]) <= 1e-11


@SETTINGS
@given(st.sampled_from([(12, 2, 2), (12, 2, 3), (12, 4, 2), (24, 2, 3), (24, 4, 2), (24, 3, 4)]), seeds)
def test_soundness_of_construction(params, seed):
    h, g1, g2, lat = representable_instance(*params, seed=seed)
    assert check_representability(h, g1, g2, lat).representable
    sym = construct_symbol(h, g1, g2, lat)
    k_g = gm_kernel(GaborMultiplier(g1, g2, sym.mask, lat))
    assert rel(k_g, lti_kernel(LTIFilter(h))) <= 1e-9


@SETTINGS
@given(
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=1e3),
    st.sampled_from([1.0, 1.5, 2.0, 4.0]),
    st.integers(min_value=1, max_value=4),
)
def test_weak_lr_scaling(l1, l2, r, d):
    ratio = weak_lr_norm_gauss(l1, r, d) / weak_lr_norm_gauss(l2, r, d)
    assert abs(ratio / (l1 / l2) ** (-d / (2 * r)) - 1) <= 1e-12


widths = st.floats(min_value=1e-2, max_value=1e2)


@SETTINGS
@given(widths, widths, st.integers(min_value=1, max_value=3))
def test_gaussian_algebra(b1, b2, d):
    x, y = GaussianProfile(1.0, b1, d), GaussianProfile(2.0, b2, d)
    xy, yx = gauss_convolve(x, y), gauss_convolve(y, x)
    assert np.isclose(xy.width, yx.width) and np.isclose(xy.amplitude, yx.amplitude)
    # convolution theorem on the closed forms
    lhs = gauss_fourier(xy)
    fx, fy = gauss_fourier(x), gauss_fourier(y)
    assert np.isclose(lhs.width, fx.width + fy.width)
    assert np.isclose(lhs.amplitude, fx.amplitude * fy.amplitude)
    back = gauss_fourier(gauss_fourier(x))
    assert np.isclose(back.width, b1) and np.isclose(back.amplitude, 1.0)


exponents = st.one_of(st.floats(min_value=1.01, max_value=50), st.just(float("inf")))


@SETTINGS
@given(exponents, exponents, exponents)
def test_index_condition_matches_exponents(p, q, r):
    e_out, e_in = norm_exponents(p, q, r)
    inv = lambda x: 0 if x == float("inf") else 1 / x
    assert index_condition(p, q, r) == (inv(q) <= inv(r) + inv(p) + 1e-15)
    if abs(e_out - e_in) > 1e-12:
        assert index_condition(p, q, r) == (e_out > e_in)
