"""Neron-Severi lattices with exact arithmetic.

Classes in NS are plain tuples of ``int`` or ``Fraction``.  A lattice is an
even, nondegenerate, symmetric integer gram matrix together with a
distinguished ample class.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from numbers import Rational
from typing import Sequence

from .exceptions import ValidationError

NSClass = tuple  # tuple[int | Fraction, ...]


def _det(rows: list[list[Fraction]]) -> Fraction:
    # Bareiss-free Gaussian elimination over Q; ranks here are tiny.
    m = [row[:] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] / m[col][col]
            if f:
                for j in range(col, n):
                    m[i][j] -= f * m[col][j]
    return det


def _clear_denominators(x):
    """Integer numerators over a common denominator (ints and Fractions only)."""
    d = 1
    for c in x:
        q = c.denominator
        if q != 1:
            d = d * q // math.gcd(d, q)
    if d == 1:
        return [c.numerator for c in x], 1
    return [c.numerator * (d // c.denominator) for c in x], d


@dataclass(frozen=True)
class Lattice:
    """Even nondegenerate lattice ``(Z^rank, gram)`` with a polarization."""

    gram: tuple[tuple[int, ...], ...]
    ample: tuple[int, ...]

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        ample = tuple(self.ample)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "ample", ample)
        n = len(gram)
        if n == 0:
            raise ValidationError("gram matrix must be non-empty")
        for i, row in enumerate(gram):
            if len(row) != n:
                raise ValidationError(f"gram row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValidationError(f"gram[{i}][{j}] = {x!r} is not an integer")
        for i in range(n):
            if gram[i][i] % 2:
                raise ValidationError(f"gram[{i}][{i}] = {gram[i][i]} is odd (lattice must be even)")
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValidationError(
                        f"gram[{i}][{j}] = {gram[i][j]} differs from gram[{j}][{i}] = {gram[j][i]}"
                    )
        if len(ample) != n:
            raise ValidationError(f"ample has length {len(ample)}, expected {n}")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in ample):
            raise ValidationError("ample class must have integer coordinates")
        if self.determinant == 0:
            raise ValidationError("gram matrix is degenerate")
        if self.dot(ample, ample) <= 0:
            raise ValidationError("ample class must have positive square")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def determinant(self) -> int:
        return int(_det([[Fraction(x) for x in row] for row in self.gram]))

    def check(self, x: Sequence) -> NSClass:
        if len(x) != self.rank:
            raise ValidationError(f"class has length {len(x)}, lattice has rank {self.rank}")
        return tuple(x)

    def dot(self, x: Sequence, y: Sequence):
        """Intersection number ``x . y``; exact, integral for integral input."""
        n = len(self.gram)
        if len(x) != n or len(y) != n:
            self.check(x)
            self.check(y)
        X, dx = _clear_denominators(x)
        Y, dy = _clear_denominators(y)
        total = 0
        for xi, row in zip(X, self.gram):
            if xi:
                acc = 0
                for g, yj in zip(row, Y):
                    acc += g * yj
                total += xi * acc
        if dx == dy == 1:
            return total
        return Fraction(total, dx * dy)

    def square(self, x: Sequence):
        return self.dot(x, x)

    def zero(self) -> NSClass:
        return (0,) * self.rank

    def basis_vector(self, i: int) -> NSClass:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram], "ample": list(self.ample)}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        if not isinstance(data, dict):
            raise ValidationError("lattice JSON must be an object")
        try:
            gram = data["gram"]
            ample = data["ample"]
        except KeyError as exc:
            raise ValidationError(f"lattice JSON is missing key {exc.args[0]!r}") from None
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ValidationError("'gram' must be a list of lists")
        if not isinstance(ample, list):
            raise ValidationError("'ample' must be a list")
        lat = cls(tuple(tuple(r) for r in gram), tuple(ample))
        if "rank" in data and data["rank"] != lat.rank:
            raise ValidationError(f"'rank' is {data['rank']} but gram has size {lat.rank}")
        return lat

    @classmethod
    def load(cls, path) -> "Lattice":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def hyperbolic_plane(ample=(1, 1)) -> Lattice:
    """The lattice U with basis e, f, e.e = f.f = 0, e.f = 1."""
    return Lattice(((0, 1), (1, 0)), tuple(ample))


def rank_one(degree: int) -> Lattice:
    """``Z h`` with ``h.h = degree`` (a K3 of that degree)."""
    return Lattice(((degree,),), (1,))


def intersect(lattice: Lattice, x: Sequence, y: Sequence):
    return lattice.dot(x, y)


def content(x: Sequence) -> int:
    return reduce(math.gcd, (int(c) for c in x), 0)


def _require_integral_nonzero(x: Sequence) -> None:
    for c in x:
        if isinstance(c, Rational) and not isinstance(c, int) and c.denominator != 1:
            raise ValidationError(f"class {tuple(x)} is not integral")
    if not any(x):
        raise ValidationError("zero class has no content")


def is_primitive(x: Sequence) -> bool:
    _require_integral_nonzero(x)
    return content(x) == 1


def content_split(x: Sequence) -> tuple[int, NSClass]:
    """Write ``x = alpha * x0`` with ``alpha > 0`` and ``x0`` primitive."""
    _require_integral_nonzero(x)
    alpha = content(x)
    return alpha, tuple(int(c) // alpha for c in x)


def positive_cone_check(lattice: Lattice, omega: Sequence) -> bool:
    """True iff omega^2 > 0 and omega lies in the component containing the ample class."""
    return lattice.square(omega) > 0 and lattice.dot(omega, lattice.ample) > 0


def scale(t, x: Sequence) -> NSClass:
    return tuple(t * c for c in x)


def add(x: Sequence, y: Sequence) -> NSClass:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub(x: Sequence, y: Sequence) -> NSClass:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def as_rational_class(values: Sequence) -> NSClass:
    """Normalise a sequence of ints/Fractions/"p/q" strings into an exact class."""
    out = []
    for v in values:
        if isinstance(v, bool):
            raise ValidationError(f"{v!r} is not a number")
        if isinstance(v, int):
            out.append(v)
        elif isinstance(v, (Fraction, str)):
            try:
                q = Fraction(v)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"cannot parse rational {v!r}") from None
            out.append(int(q) if q.denominator == 1 else q)
        else:
            raise ValidationError(f"{v!r} is not an exact rational (floats are rejected)")
    return tuple(out)
