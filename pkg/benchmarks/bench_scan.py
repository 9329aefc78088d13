"""Compare the compiled and pure-Python spherical-scan kernels.

    python3 benchmarks/bench_scan.py [--repeat N]
"""
import argparse
import time
from fractions import Fraction

from k3lattice import ComplexifiedClass, Lattice, hyperbolic_plane, rank_one
from k3lattice import _scan

CASES = [
    ("rank 1, <4>", rank_one(4), (0,), (1,), 1500),
    ("U, omega = e + 3f", hyperbolic_plane((1, 2)), (0, 0), (1, 3), 80),
    ("U, B = e/2, omega = e + f", hyperbolic_plane((1, 2)), (Fraction(1, 2), 0), (1, 1), 80),
    ("rank 3", Lattice(((2, 1, 0), (1, -2, 0), (0, 0, -2)), (1, 0, 0)), (0, 0, 0), (3, 1, 0), 20),
    ("rank 4", Lattice(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, -2, 0), (0, 0, 0, -4)), (1, 2, 0, 0)),
     (0, 0, 0, 0), (1, 3, 0, 0), 9),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _scan._scan_ext is None:
        print("compiled kernel not available; only the Python kernel can run")
    print(f"{'case':<28} {'bound':>5} {'hits':>5} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, lat, B, omega, bound in CASES:
        K = ComplexifiedClass(lat, B, omega)
        tp, hp = best_of(lambda: _scan.scan_spherical_hits(lat, K.B, K.omega, bound, backend="python"), args.repeat)
        if _scan._scan_ext is None:
            print(f"{name:<28} {bound:>5} {len(hp):>5} {tp:>10.4f} {'-':>10} {'-':>8}")
            continue
        tc, hc = best_of(lambda: _scan.scan_spherical_hits(lat, K.B, K.omega, bound, backend="cython"), args.repeat)
        assert hp == hc, name
        print(f"{name:<28} {bound:>5} {len(hp):>5} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
