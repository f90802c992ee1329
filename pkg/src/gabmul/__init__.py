"""LTI filters and Gabor multipliers on finite groups, with Gaussian closed-form checks."""

from ._kernels import BACKEND
from .equivalence import (
    NotRepresentableError,
    RepresentabilityReport,
    SymbolConstruction,
    check_representability,
    construct_symbol,
    construct_symbol_full_lattice,
    gm_to_lti,
    index_condition,
    lowpass_gap,
    support_of,
)
from .finite import Lattice, dft, dft2, idft, idft2, impulse_train, sdft
from .operators import GaborMultiplier, LTIFilter, gm_kernel, gm_spreading, kernel_to_spreading, lti_kernel
from .tf import GaborSystem, frame_bounds, stft, window_correlation

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NotRepresentableError",
    "RepresentabilityReport",
    "SymbolConstruction",
    "check_representability",
    "construct_symbol",
    "construct_symbol_full_lattice",
    "gm_to_lti",
    "index_condition",
    "lowpass_gap",
    "support_of",
    "Lattice",
    "dft",
    "dft2",
    "idft",
    "idft2",
    "impulse_train",
    "sdft",
    "GaborMultiplier",
    "LTIFilter",
    "gm_kernel",
    "gm_spreading",
    "kernel_to_spreading",
    "lti_kernel",
    "GaborSystem",
    "frame_bounds",
    "stft",
    "window_correlation",
]
