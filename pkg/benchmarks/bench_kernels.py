"""Wall-clock comparison of the numba and numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once first so numba compilation is excluded, then
timed as the best of --repeat runs. Outputs of both backends are compared.
"""

import argparse
import time

import numpy as np

from gabmul import _kernels as K


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    gen = np.random.default_rng(0)
    cn = lambda *s: gen.standard_normal(s) + 1j * gen.standard_normal(s)
    for n in (64, 240):
        f, g1, g2, mask = cn(n), cn(n), cn(n), cn(n, n)
        yield f"stft N={n}", "stft", (f, g1)
        yield f"gm_kernel N={n} (1,1)", "gm_kernel", (g1, g2, mask, 1, 1)
        yield f"gm_kernel N={n} (2,4)", "gm_kernel", (g1, g2, mask, 2, 4)
        yield f"gm_apply N={n} (2,4)", "gm_apply", (g1, g2, mask, 2, 4, f)
        yield f"frame_operator N={n} (2,2)", "frame_operator", (g1, 2, 2)
    for half, step in ((4.0, 1 / 16), (8.0, 1 / 32)):
        t = np.arange(-half, half + step / 2, step)
        m = t.size
        fwd = np.exp(-2j * np.pi * np.outer(t, t))
        yield f"stft_multiplier n={m}", "stft_multiplier", (cn(m), cn(2 * m - 1), cn(m), fwd, step)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s} {'max rel diff':>13s}")
    for label, name, a in cases():
        f_np = getattr(K, f"{name}_np")
        f_nb = getattr(K, f"{name}_nb")
        t_np = best_of(lambda: f_np(*a), args.repeat)
        t_nb = best_of(lambda: f_nb(*a), args.repeat)
        x, y = f_np(*a), f_nb(*a)
        diff = np.max(np.abs(x - y)) / np.max(np.abs(x))
        print(f"{label:32s} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:8.1f}x {diff:13.1e}")


if __name__ == "__main__":
    main()
