"""Isometries of the algebraic Mukai lattice and the coprime reduction.

Coordinates are ``(r, l_1, ..., l_rho, s)``; matrices act on column vectors.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exceptions import HypothesisViolation, ValidationError
from .lattice import Lattice, NSClass, content, positive_cone_check
from .mukai import MukaiVector, fine_moduli_check, split_h2

Matrix = tuple  # tuple[tuple[int, ...], ...]


def mukai_gram(lattice: Lattice) -> Matrix:
    n = lattice.rank + 2
    G = [[0] * n for _ in range(n)]
    G[0][n - 1] = G[n - 1][0] = -1
    for i in range(lattice.rank):
        for j in range(lattice.rank):
            G[i + 1][j + 1] = lattice.gram[i][j]
    return tuple(map(tuple, G))


def _matmul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _transpose(A):
    return tuple(zip(*A))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class MukaiIsometry:
    matrix: Matrix
    lattice: Lattice

    def __post_init__(self):
        n = self.lattice.rank + 2
        M = tuple(tuple(row) for row in self.matrix)
        if len(M) != n or any(len(row) != n for row in M):
            raise ValidationError(f"isometry matrix must be {n}x{n}")
        if any(isinstance(x, bool) or not isinstance(x, int) for row in M for x in row):
            raise ValidationError("isometry matrix must have integer entries")
        G = mukai_gram(self.lattice)
        if _matmul(_transpose(M), _matmul(G, M)) != G:
            raise ValidationError("matrix does not preserve the Mukai pairing")
        object.__setattr__(self, "matrix", M)

    @classmethod
    def _trusted(cls, matrix, lattice: Lattice) -> "MukaiIsometry":
        # for matrices that are isometries by construction; skips the M^T G M check
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", tuple(tuple(row) for row in matrix))
        object.__setattr__(obj, "lattice", lattice)
        return obj

    @classmethod
    def identity(cls, lattice: Lattice) -> "MukaiIsometry":
        return cls._trusted(_identity(lattice.rank + 2), lattice)

    def __call__(self, v: MukaiVector) -> MukaiVector:
        return apply(self, v)

    def __matmul__(self, other: "MukaiIsometry") -> "MukaiIsometry":
        return compose(self, other)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "isometry": True}


def apply(M: MukaiIsometry, v: MukaiVector) -> MukaiVector:
    if M.lattice != v.lattice:
        raise ValidationError("isometry and vector live on different lattices")
    x = v.coords
    return MukaiVector.from_coords(v.lattice, [sum(a * b for a, b in zip(row, x)) for row in M.matrix])


def compose(M: MukaiIsometry, N: MukaiIsometry) -> MukaiIsometry:
    """``M after N``."""
    if M.lattice != N.lattice:
        raise ValidationError("isometries live on different lattices")
    return MukaiIsometry._trusted(_matmul(M.matrix, N.matrix), M.lattice)


def invert(M: MukaiIsometry) -> MukaiIsometry:
    # M^T G M = G  =>  M^{-1} = G^{-1} M^T G, and G^{-1} is rational in general
    lat = M.lattice
    G = [[Fraction(x) for x in row] for row in mukai_gram(lat)]
    Ginv = _inverse(G)
    raw = _matmul(Ginv, _matmul(_transpose(M.matrix), G))
    out = []
    for row in raw:
        if any(Fraction(x).denominator != 1 for x in row):
            raise ValidationError("inverse is not integral")
        out.append(tuple(int(x) for x in row))
    return MukaiIsometry._trusted(tuple(out), lat)


def _inverse(A):
    n = len(A)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        p = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[p] = m[p], m[col]
        piv = m[col][col]
        m[col] = [x / piv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def determinant(M: MukaiIsometry) -> int:
    from .lattice import _det

    return int(_det([[Fraction(x) for x in row] for row in M.matrix]))


def spherical_twist_O(lattice: Lattice) -> MukaiIsometry:
    """Reflection in delta = v(O) = (1, 0, 1): (r, l, s) -> (-s, l, -r)."""
    n = lattice.rank + 2
    M = [list(row) for row in _identity(n)]
    M[0][0] = M[n - 1][n - 1] = 0
    M[0][n - 1] = M[n - 1][0] = -1
    return MukaiIsometry._trusted(M, lattice)


def line_twist(lattice: Lattice, c: Sequence[int]) -> MukaiIsometry:
    """Multiplication by exp(c): (r, l, s) -> (r, l + r c, s + c.l + r c^2/2)."""
    c = lattice.check(c)
    rho = lattice.rank
    n = rho + 2
    gc = [sum(g * x for g, x in zip(row, c)) for row in lattice.gram]
    M = [list(row) for row in _identity(n)]
    for i in range(rho):
        M[i + 1][0] = c[i]
    M[n - 1][0] = lattice.square(c) // 2
    for j in range(rho):
        M[n - 1][j + 1] = gc[j]
    return MukaiIsometry._trusted(M, lattice)


def fixes_point_class(M: MukaiIsometry) -> bool:
    """Lattice-level shadow of the isomorphism criterion Phi(0,0,1) = (0,0,1)."""
    pt = MukaiVector.point(M.lattice)
    return apply(M, pt) == pt


# -- coprime reduction -------------------------------------------------------

def primitive_vectors(rank: int, max_norm: int) -> Iterator[NSClass]:
    """Primitive integer vectors by increasing sup-norm.

    Ties are broken by L1 norm, then by coordinates with positive entries
    first, so the unit vectors e_1, e_2, ... lead each shell.
    """
    for k in range(1, max_norm + 1):
        shell = [x for x in itertools.product(range(-k, k + 1), repeat=rank)
                 if max(map(abs, x)) == k and content(x) == 1]
        shell.sort(key=lambda x: (sum(map(abs, x)), tuple(-c for c in x)))
        yield from shell


def _independent(x: Sequence[int], y: Sequence[int]) -> bool:
    return any(x[i] * y[j] != x[j] * y[i] for i in range(len(x)) for j in range(i + 1, len(x)))


@dataclass(frozen=True)
class Reduction:
    vector: MukaiVector
    ell_tilde: NSClass | None = None
    trace: tuple = field(default=())  # (label, MukaiIsometry) pairs, applied in order
    note: str = ""

    @property
    def isometry(self) -> MukaiIsometry:
        M = MukaiIsometry.identity(self.vector.lattice)
        for _, step in self.trace:
            M = compose(step, M)
        return M


def reduce_to_coprime(v: MukaiVector, H: Sequence[int] | None = None, max_norm: int = 25) -> Reduction:
    """Move ``v`` to a vector whose rank is coprime to the divisibility of its c1.

    The result is ``+-T_O(exp(ell~) v)`` for the first primitive ``ell~``
    (in :func:`primitive_vectors` order) independent of ``ell`` that makes
    the twisted rank coprime to the content of the twisted c1 and keeps
    gcd(r, a (ell.H), s) = 1.  The sign is chosen so the rank is >= 0.
    """
    lat = v.lattice
    report = fine_moduli_check(v, H)
    if not report.ok:
        raise HypothesisViolation(f"{v!r} violates the fine-moduli conditions: {report.to_json()}")
    a, ell = split_h2(v)
    if a == 0 and v.r == 0:
        return Reduction(v, note="point class")
    if math.gcd(v.r, a) == 1:
        return Reduction(v, note="rank already coprime to c1 divisibility")
    if lat.rank == 1:
        return Reduction(v, note="Picard rank one: no independent twist available")

    twist = spherical_twist_O(lat)
    for ell_t in primitive_vectors(lat.rank, max_norm):
        if a and not _independent(ell, ell_t):
            continue
        s_t = v.s + v.r * lat.square(ell_t) // 2 + a * lat.dot(ell_t, ell)
        c1 = tuple(a * x + v.r * y for x, y in zip(ell, ell_t))
        if math.gcd(s_t, content(c1)) != 1:
            continue
        sign = -1 if s_t > 0 else 1
        w = MukaiVector(-sign * s_t, tuple(sign * x for x in c1), -sign * v.r, lat)
        # (ell*.H) may share a factor with r* and s*, so recheck the gcd condition
        if not fine_moduli_check(w, H).ok:
            continue
        exp_l = line_twist(lat, ell_t)
        trace = [("line_twist", exp_l), ("spherical_twist_O", twist)]
        if sign < 0:
            trace.append(("shift", MukaiIsometry._trusted(
                [[-x for x in row] for row in _identity(lat.rank + 2)], lat)))
        red = Reduction(w, ell_t, tuple(trace))
        assert apply(red.isometry, v) == w
        return red
    raise HypothesisViolation(f"no admissible twist class with sup-norm <= {max_norm}")


# -- exponential normalisation ----------------------------------------------

@dataclass(frozen=True)
class ExponentialForm:
    """``lam * exp(B + i omega)``."""

    lam: Fraction
    B: NSClass
    omega: NSClass


class NormalizationError(HypothesisViolation):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def normalize_exponential(lattice: Lattice, w) -> ExponentialForm:
    """Write a complex Mukai class ``w = (re, im)`` as ``lam * exp(B' + i omega')``."""
    (r0, re_l, re_s), (i0, im_l, im_s) = w
    lam = Fraction(r0)
    if Fraction(i0) != 0 or lam <= 0:
        raise NormalizationError("degree0", f"degree-0 component {r0} + {i0}i is not a positive real")
    B = tuple(Fraction(x) / lam for x in lattice.check(re_l))
    omega = tuple(Fraction(x) / lam for x in lattice.check(im_l))
    want_re = lam * (lattice.square(B) - lattice.square(omega)) / 2
    want_im = lam * lattice.dot(B, omega)
    if Fraction(re_s) != want_re or Fraction(im_s) != want_im:
        raise NormalizationError(
            "quadratic",
            f"degree-4 component {re_s} + {im_s}i differs from w2^2/(2 lam) = {want_re} + {want_im}i",
        )
    if not positive_cone_check(lattice, omega):
        raise NormalizationError("cone", "imaginary part is not in the positive cone of the polarization")
    return ExponentialForm(lam, _tidy(B), _tidy(omega))


def _tidy(x):
    return tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in x)
