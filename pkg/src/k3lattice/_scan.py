"""Backend selection for the spherical scan.

The compiled kernel is used when it imports and every intermediate fits in
int64; otherwise the pure-Python kernel runs.  Set ``K3LATTICE_PURE_PYTHON=1``
to force the fallback.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import _scan_py

try:
    if os.environ.get("K3LATTICE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _scan_ext
except ImportError:
    _scan_ext = None

BACKEND = "cython" if _scan_ext is not None else "python"
_INT64_SAFE = 2**62


def _scaled_inputs(lattice, B, omega):
    gram = lattice.gram
    gw = [sum(Fraction(g) * x for g, x in zip(row, omega)) for row in gram]
    gb = [sum(Fraction(g) * x for g, x in zip(row, B)) for row in gram]
    beta = Fraction(lattice.dot(B, omega))
    c = Fraction(lattice.square(B) - lattice.square(omega)) / 2
    D = 1
    for q in (*gw, *gb, beta, c):
        D = D * q.denominator // math.gcd(D, q.denominator)
    W = [int(q * D) for q in gw]
    Bv = [int(q * D) for q in gb]
    return gram, W, Bv, int(beta * D), int(c * D), D


def _fits_int64(gram, W, Bv, beta_s, c_s, D, bound) -> bool:
    rho = len(gram)
    b = bound + 1
    worst = max(
        rho * b * max(map(abs, W), default=0) + b * abs(beta_s),
        rho * b * max(map(abs, Bv), default=0) + b * abs(c_s) + D * b,
        rho * rho * b * b * max(abs(x) for row in gram for x in row) + 2,
        2 * b * b,
    )
    return worst < _INT64_SAFE


def scan_spherical_hits(lattice, B, omega, bound, threads=1, backend=None):
    """Raw ``(r, l, s)`` hits with ``0 <= r <= bound``, in lexicographic order."""
    args = _scaled_inputs(lattice, B, omega)
    backend = backend or BACKEND
    if backend == "cython" and (_scan_ext is None or not _fits_int64(*args, bound)):
        backend = "python"
    kernel = _scan_ext.scan_range if backend == "cython" else _scan_py.scan_range

    threads = max(1, int(threads))
    edges = [round(k * (bound + 1) / threads) for k in range(threads + 1)]
    chunks = [(lo, hi) for lo, hi in zip(edges, edges[1:]) if lo < hi]
    if len(chunks) <= 1:
        hits = kernel(*args, bound, 0, bound + 1)
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(lambda c: kernel(*args, bound, c[0], c[1]), chunks)
            hits = [h for part in parts for h in part]
    hits = [(int(r), tuple(int(x) for x in l), int(s)) for r, l, s in hits]
    hits.sort()
    return hits
