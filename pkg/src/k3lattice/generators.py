"""Random hyperbolic even lattices and vectors, for property checks."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .lattice import Lattice, content
from .mukai import MukaiVector, fine_moduli_check


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    G = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                G[k + i][k + j] = x
        k += len(b)
    return G


def random_lattice(rng: random.Random, rank: int, mixing: int = 3) -> Lattice:
    """Signature (1, rank-1) even lattice in a randomly sheared basis."""
    if rank >= 2 and rng.random() < 0.5:
        blocks = [[[0, 1], [1, 0]]]
        ample = [1, rng.randint(1, 3)]
    else:
        blocks = [[[2 * rng.randint(1, 4)]]]
        ample = [1]
    while sum(len(b) for b in blocks) < rank:
        blocks.append([[-2 * rng.randint(1, 3)]])
        ample.append(0)
    G = _block_diag(blocks)
    # basis change x_new = P^-1 x_old with P a product of shears e_i += c e_j
    for _ in range(mixing * rank if rank > 1 else 0):
        i, j = rng.sample(range(rank), 2)
        c = rng.choice([-1, 1])
        # new basis vector b_i' = b_i + c b_j: G' = E^T G E
        for k in range(rank):
            G[i][k] += c * G[j][k]
        for k in range(rank):
            G[k][i] += c * G[k][j]
        ample[j] -= c * ample[i]
    return Lattice(tuple(map(tuple, G)), tuple(ample))


def random_class(rng: random.Random, rank: int, size: int = 5) -> tuple[int, ...]:
    return tuple(rng.randint(-size, size) for _ in range(rank))


def random_rational_class(rng: random.Random, rank: int, size: int = 5, den: int = 4):
    return tuple(Fraction(rng.randint(-size * den, size * den), rng.randint(1, den)) for _ in range(rank))


def random_positive_class(rng: random.Random, lattice: Lattice, size: int = 3, den: int = 3):
    """Random rational omega in the positive cone of the polarization."""
    H = lattice.ample
    while True:
        t = Fraction(rng.randint(1, 3 * den), den)
        w = tuple(t * h + Fraction(rng.randint(-size, size), rng.randint(1, den)) for h in H)
        if lattice.square(w) > 0 and lattice.dot(w, H) > 0:
            return w


def random_vector(rng: random.Random, lattice: Lattice, size: int = 6) -> MukaiVector:
    return MukaiVector(rng.randint(-size, size), random_class(rng, lattice.rank, size),
                       rng.randint(-size, size), lattice)


def random_fine_moduli_vector(rng: random.Random, lattice: Lattice, max_a: int = 6,
                           require_reduction: bool = True) -> MukaiVector:
    """Random v = (r, a ell, s) with a^2 ell^2 = 2 r s and gcd(r, a(ell.H), s) = 1."""
    while True:
        ell = random_class(rng, lattice.rank, 3)
        if not any(ell) or content(ell) != 1:
            continue
        a = rng.randint(1, max_a)
        target = a * a * lattice.square(ell) // 2
        if target == 0:
            r, s = rng.choice([-1, 1]) * rng.randint(1, 12), 0
        else:
            divs = [d for d in range(1, math.isqrt(abs(target)) + 1) if target % d == 0]
            d = rng.choice(divs + [abs(target) // x for x in divs])
            r = rng.choice([-1, 1]) * d
            s = target // r
        v = MukaiVector(r, tuple(a * x for x in ell), s, lattice)
        if not fine_moduli_check(v).ok:
            continue
        if require_reduction and math.gcd(r, a) == 1:
            continue
        return v
