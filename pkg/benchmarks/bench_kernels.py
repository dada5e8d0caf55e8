"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import timeit

import numpy as np

from qgraphgaps import _fallback

try:
    from qgraphgaps import _core
except ImportError:
    _core = None


def cases(nb: int, grid: int):
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(nb, nb)) + 1j * rng.normal(size=(nb, nb)))
    sb = np.ascontiguousarray(q)
    kl = rng.uniform(0, 20, nb)
    z = rng.integers(-1, 2, size=(nb, 2)).astype(float)
    axis = np.linspace(-np.pi, np.pi, grid)
    th = np.ascontiguousarray(np.array([(x, y) for x in axis for y in axis]))
    ks = np.linspace(1e-3, 500.0, 1_000_000)
    phi = (1 + 5 ** 0.5) / 2
    return {
        f"secular_batch ({nb} bonds, {grid}x{grid} theta)": lambda m: m.secular_batch(kl, sb, z, th),
        "secular_batch x200, 81 theta (refinement)": lambda m: [
            m.secular_batch(kl, sb, z, th[:81]) for _ in range(200)],
        "gap_margin (1e6 momenta)": lambda m: m.gap_margin(ks, 1.0, 1 / phi, -4.3),
        "gamma_terms (m <= 1e6)": lambda m: m.gamma_terms(phi, 2 * np.pi, 1_000_000, -1),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bonds", type=int, default=4)
    ap.add_argument("--grid", type=int, default=32)
    args = ap.parse_args()
    if _core is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<44} {'numpy [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for name, fn in cases(args.bonds, args.grid).items():
        t_np = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
        if _core is None:
            print(f"{name:<44} {1e3 * t_np:12.2f}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(_core), number=1, repeat=args.repeat))
        print(f"{name:<44} {1e3 * t_np:12.2f} {1e3 * t_cy:12.2f} {t_np / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
