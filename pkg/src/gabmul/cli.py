"""Command-line front end.

Every subcommand accepts ``--config FILE`` (a JSON object); explicit flags
override its entries.  Outputs go to ``--output-dir``, else the config's
``output_dir``, else ``$GABMUL_OUTPUT_DIR``, else the current directory.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import equivalence as eq
from . import gauss as gs
from . import io
from .finite import Lattice, delta, ones
from .operators import (
    GaborMultiplier,
    LTIFilter,
    gm_kernel,
    kernel_to_spreading,
    leading_singular_vector,
    lti_kernel,
    op_distance,
    singular_spectrum,
)
from .tf import discrete_gaussian, spectrogram

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def random_signal(n, seed):
    """Complex signal with independent standard normal real and imaginary parts (PCG64)."""
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


# --------------------------------------------------------------------------
# specs: "gaussian[:width]", "ones", "delta", "random", "lowpass:R", or a file
# --------------------------------------------------------------------------


def parse_window(spec, n):
    spec = str(spec)
    name, _, arg = spec.partition(":")
    if name == "gaussian":
        return discrete_gaussian(n, float(arg) if arg else 1.0, normalize=True)
    if name == "ones":
        return ones(n)
    if name == "delta":
        return delta(n)
    return _signal_file(spec, n)


def parse_h(spec, n, seed):
    spec = str(spec)
    name, _, arg = spec.partition(":")
    if name == "random":
        return random_signal(n, seed)
    if name == "delta":
        return delta(n)
    if name == "lowpass":
        return np.fft.ifft(eq.lowpass_response(n, int(arg)))
    return _signal_file(spec, n)


def _signal_file(spec, n):
    if not Path(spec).is_file():
        raise UsageError(f"unknown spec or missing file: {spec!r}")
    f = io.read_signal(spec)
    if f.shape[0] != n:
        raise UsageError(f"{spec}: length {f.shape[0]} does not match n={n}")
    return f


def _int(x, name):
    try:
        v = int(x)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be an integer, got {x!r}") from None
    if v != float(x):
        raise UsageError(f"{name} must be an integer, got {x!r}")
    return v


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

DEFAULTS = {
    "figure-lowpass": {"n": 480, "R": 80, "seed": 0, "segment": 128, "top": 20},
    "repr-check": {"n": 12, "alpha": 1, "beta": 1, "window": "ones", "window2": None, "h": "random", "seed": 0, "tol": 1e-9},
    "repr-construct": {"n": 12, "alpha": 1, "beta": 1, "window": "ones", "window2": None, "h": "random", "seed": 0, "tol": 1e-9},
    "gauss-verify": {"lambdas": [0.5, 1.0, 2.0], "L": 8.0, "step": 1 / 64},
    "spectrogram": {"signal": None, "window": "gaussian"},
    "gen-signal": {"n": 64, "kind": "random", "seed": 0},
    "gen-window": {"n": 64, "window": "gaussian"},
}


def resolve(command, args):
    cfg = dict(DEFAULTS[command])
    allowed = set(cfg) | {"output_dir"}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(loaded) - allowed
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {sorted(unknown)}")
        cfg.update(loaded)
    for key in allowed:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    out = cfg.get("output_dir") or os.environ.get("GABMUL_OUTPUT_DIR") or "."
    cfg["output_dir"] = Path(out)
    return cfg


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_figure_lowpass(cfg):
    n, r = _int(cfg["n"], "n"), _int(cfg["R"], "R")
    if not 0 <= r < n / 2:
        raise UsageError(f"R must satisfy 0 <= R < n/2, got R={r}, n={n}")
    out = io.ensure_dir(cfg["output_dir"])
    g1, g2 = eq.lowpass_windows(n)
    h = np.fft.ifft(eq.lowpass_response(n, r))
    lat = Lattice(n, 1, 1)
    gm = GaborMultiplier(g1, g2, eq.time_invariant_mask(h), lat)
    k_h = lti_kernel(LTIFilter(h))
    k_g = gm_kernel(gm)
    f0 = random_signal(n, _int(cfg["seed"], "seed"))

    diff = k_h - k_g
    top = min(_int(cfg["top"], "top"), n)
    sv = singular_spectrum(diff, top)
    vec = leading_singular_vector(diff)
    seg = vec[: min(_int(cfg["segment"], "segment"), n)]

    y_h, y_g = k_h @ f0, k_g @ f0
    io.write_signal(out / "input_signal.csv", f0)
    io.write_signal(out / "output_lti.csv", y_h)
    io.write_signal(out / "output_gabor.csv", y_g)
    io.write_real_table(out / "spectrogram_lti.csv", spectrogram(y_h, g1).T)
    io.write_real_table(out / "spectrogram_gabor.csv", spectrogram(y_g, g1).T)
    io.write_real_table(out / "singular_values.csv", sv[:, None], header=["sigma"])
    io.write_signal(out / "leading_singular_vector.csv", seg)

    target = eq.lowpass_response(n, r)
    effective = np.fft.fft(k_g[:, 0])
    gap = np.abs(target - effective)
    peak = int(np.argmax(np.abs(np.fft.fft(vec))))
    summary = {
        "n": n,
        "R": r,
        "seed": _int(cfg["seed"], "seed"),
        "spectral_distance": float(sv[0]),
        "gap_sup": float(gap.max()),
        "leading_vector_peak_frequency": peak,
        "leading_vector_peak_distance_to_cutoff": int(abs(min(peak, n - peak) - r)),
    }
    io.write_json(out / "summary.json", summary)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def _repr_inputs(cfg):
    n = _int(cfg["n"], "n")
    lat = Lattice(n, _int(cfg["alpha"], "alpha"), _int(cfg["beta"], "beta"))
    g1 = parse_window(cfg["window"], n)
    g2 = parse_window(cfg["window2"] or cfg["window"], n)
    h = parse_h(cfg["h"], n, _int(cfg["seed"], "seed"))
    return h, g1, g2, lat, float(cfg["tol"])


def cmd_repr_check(cfg):
    h, g1, g2, lat, tol = _repr_inputs(cfg)
    report = eq.check_representability(h, g1, g2, lat, tol=tol)
    out = io.ensure_dir(cfg["output_dir"])
    io.write_json(out / "report.json", report.to_dict())
    print(report.to_json(sort_keys=True))
    return EXIT_OK if report.representable else EXIT_FAIL


def cmd_repr_construct(cfg):
    h, g1, g2, lat, tol = _repr_inputs(cfg)
    out = io.ensure_dir(cfg["output_dir"])
    try:
        sym = eq.construct_symbol(h, g1, g2, lat, tol=tol)
    except eq.NotRepresentableError as exc:
        io.write_json(out / "report.json", exc.report.to_dict())
        print(f"refused: {exc}", file=sys.stderr)
        print(exc.report.to_json(sort_keys=True))
        return EXIT_FAIL
    k_h = lti_kernel(LTIFilter(h))
    k_g = gm_kernel(sym.multiplier(g1, g2, lat))
    err = op_distance(k_g, k_h).frobenius / np.linalg.norm(k_h)
    spread = kernel_to_spreading(k_g) - kernel_to_spreading(k_h)
    body = sym.report.to_dict()
    body["reconstruction_error"] = float(err)
    body["spreading_error"] = float(np.linalg.norm(spread) / np.linalg.norm(kernel_to_spreading(k_h)))
    body["verified"] = bool(err <= 1e-9)
    io.write_matrix(out / "mask.csv", sym.mask, kind="mask", alpha=lat.alpha, beta=lat.beta)
    io.write_json(out / "report.json", body)
    print(json.dumps(body, sort_keys=True))
    return EXIT_OK if body["verified"] else EXIT_FAIL


def gauss_rows(lambdas, half_width=8.0, step=1 / 64):
    """Closed form against quadrature; one dict per comparison."""
    grid = gs.make_grid(half_width, step)
    fine = gs.make_grid(half_width, 1 / 1024)
    g = gs.gaussian_window().on(grid)
    rows = []

    def row(name, lam, err, tol):
        rows.append({"check": name, "lambda": lam, "error": err, "tol": tol, "pass": bool(err <= tol)})

    row("window_correlation", None, gs.relative_l2_error(
        gs.window_correlation_numeric(g, g), gs.GaussianProfile(1.0, 0.5).on(grid)), 1e-8)
    for lam in lambdas:
        f = gs.GaussianProfile(1.0, lam).on(grid)
        out_fm = gs.fourier_multiplier_numeric(f, f)
        row("fourier_multiplier", lam, gs.relative_l2_error(out_fm, gs.fourier_multiplier_gauss(lam).on(grid)), 1e-8)
        out_aw = gs.stft_multiplier_numeric(f, g, g, f)
        row("antiwick_printed", lam, gs.relative_l2_error(out_aw, gs.antiwick_gauss(lam).on(grid)), 1e-6)
        row("antiwick_exact", lam, gs.relative_l2_error(out_aw, gs.antiwick_gauss_exact(lam).on(grid)), 1e-6)
        for r in (1, 2, 4):
            num = gs.weak_lr_norm_numeric(gs.GaussianProfile(1.0, lam).on(fine), r)
            row(f"weak_lr_printed_r{r}", lam, abs(num / gs.weak_lr_norm_gauss(lam, r) - 1), 1e-2)
            row(f"weak_lr_exact_r{r}", lam, abs(num / gs.weak_lr_norm_gauss_exact(lam, r) - 1), 1e-2)
    return rows


def cmd_gauss_verify(cfg):
    lambdas = cfg["lambdas"]
    if isinstance(lambdas, str):
        lambdas = [float(x) for x in lambdas.split(",") if x]
    lambdas = [float(x) for x in lambdas]
    if not lambdas or min(lambdas) <= 0:
        raise UsageError("lambdas must be a non-empty list of positive numbers")
    rows = gauss_rows(lambdas, float(cfg["L"]), float(cfg["step"]))
    print(f"{'check':<22} {'lambda':>8} {'error':>12} {'tol':>8}  result")
    for r in rows:
        lam = "-" if r["lambda"] is None else f"{r['lambda']:g}"
        print(f"{r['check']:<22} {lam:>8} {r['error']:12.3e} {r['tol']:8.0e}  {'PASS' if r['pass'] else 'FAIL'}")
    io.write_json(io.ensure_dir(cfg["output_dir"]) / "gauss_verify.json", rows)
    failed = sum(not r["pass"] for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_spectrogram(cfg):
    if not cfg["signal"]:
        raise UsageError("spectrogram needs --signal FILE")
    f = io.read_signal(cfg["signal"])
    g = parse_window(cfg["window"], f.shape[0])
    s = spectrogram(f, g)
    out = io.ensure_dir(cfg["output_dir"])
    io.write_real_table(out / "spectrogram.csv", s.T)
    # sum |V_g f|^2 = N ||f||^2 ||g||^2
    expected = f.shape[0] * np.linalg.norm(f) ** 2 * np.linalg.norm(g) ** 2
    total = float(s.sum())
    rel = abs(total - expected) / expected if expected else total
    print(json.dumps({"energy": total, "expected": float(expected), "relative_error": float(rel)}, sort_keys=True))
    return EXIT_OK if rel <= 1e-10 else EXIT_FAIL


def cmd_gen_signal(cfg):
    n = _int(cfg["n"], "n")
    if n < 1:
        raise UsageError("n must be positive")
    f = parse_h(cfg["kind"], n, _int(cfg["seed"], "seed"))
    out = io.ensure_dir(cfg["output_dir"])
    io.write_signal(out / "signal.csv", f)
    return EXIT_OK


def cmd_gen_window(cfg):
    n = _int(cfg["n"], "n")
    if n < 1:
        raise UsageError("n must be positive")
    out = io.ensure_dir(cfg["output_dir"])
    io.write_signal(out / "window.csv", parse_window(cfg["window"], n))
    return EXIT_OK


COMMANDS = {
    "figure-lowpass": cmd_figure_lowpass,
    "repr-check": cmd_repr_check,
    "repr-construct": cmd_repr_construct,
    "gauss-verify": cmd_gauss_verify,
    "spectrogram": cmd_spectrogram,
    "gen-signal": cmd_gen_signal,
    "gen-window": cmd_gen_window,
}


def build_parser():
    p = argparse.ArgumentParser(prog="gabmul", description="LTI filters as Gabor multipliers: experiments and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file with defaults for this command")
        sp.add_argument("--output-dir", dest="output_dir")
        return sp

    sp = common(sub.add_parser("figure-lowpass", help="ideal low-pass vs its Gabor multiplier"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--R", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--top", type=int, help="number of singular values")
    sp.add_argument("--segment", type=int, help="length of the singular-vector segment")

    for name, text in (("repr-check", "test the representability conditions"), ("repr-construct", "build the mask")):
        sp = common(sub.add_parser(name, help=text))
        sp.add_argument("--n", type=int)
        sp.add_argument("--alpha", type=int)
        sp.add_argument("--beta", type=int)
        sp.add_argument("--window", help="gaussian[:width] | ones | delta | FILE")
        sp.add_argument("--window2", help="synthesis window (default: same as --window)")
        sp.add_argument("--h", help="random | delta | lowpass:R | FILE")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--tol", type=float)

    sp = common(sub.add_parser("gauss-verify", help="closed forms against quadrature"))
    sp.add_argument("--lambdas", help="comma-separated list")
    sp.add_argument("--L", type=float)
    sp.add_argument("--step", type=float)

    sp = common(sub.add_parser("spectrogram", help="|V_g f|^2 as frequency x time CSV"))
    sp.add_argument("--signal")
    sp.add_argument("--window")

    sp = common(sub.add_parser("gen-signal", help="write a signal CSV"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--kind", help="random | delta | lowpass:R")
    sp.add_argument("--seed", type=int)

    sp = common(sub.add_parser("gen-window", help="write a window CSV"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--window")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args.command, args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"gabmul {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
