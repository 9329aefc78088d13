"""Candidate Fourier-Mukai partners of a K3 surface with Pic = Z l, l^2 = 2n.

Candidates are moduli spaces M(r, l, s) with r s = n and gcd(r, s) = 1,
identified under (r, s) <-> (s, r).  The count is reported as candidate
classes; matching it with the true partner count is a cited theorem, not
something re-checked here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import Lattice, rank_one
from .mukai import MukaiVector, fine_moduli_check, is_isotropic


@dataclass(frozen=True)
class Rank1Surface:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    @property
    def lattice(self) -> Lattice:
        return rank_one(2 * self.n)


@dataclass(frozen=True)
class PartnerCandidate:
    v: MukaiVector

    @property
    def r(self) -> int:
        return self.v.r

    @property
    def s(self) -> int:
        return self.v.s


def distinct_primes(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        primes.append(n)
    return primes


def coprime_splittings(n: int) -> list[tuple[int, int]]:
    """All (r, s) with r s = n and gcd(r, s) = 1, ordered by r."""
    primes = distinct_primes(n)
    powers = []
    for p in primes:
        q = p
        while n % (q * p) == 0:
            q *= p
        powers.append(q)
    out = []
    for mask in range(1 << len(powers)):
        r = math.prod(q for i, q in enumerate(powers) if mask >> i & 1)
        out.append((r, n // r))
    return sorted(out)


def enumerate_candidates(X: Rank1Surface) -> list[list[PartnerCandidate]]:
    """Candidate classes under the swap (r, s) <-> (s, r), each sorted by r."""
    lat = X.lattice
    classes = []
    for r, s in coprime_splittings(X.n):
        if r > s:
            continue
        members = [(r, s)] if r == s else [(r, s), (s, r)]
        cls = []
        for rr, ss in members:
            v = MukaiVector(rr, (1,), ss, lat)
            report = fine_moduli_check(v)
            assert report.ok and report.a == 1 and is_isotropic(v), v
            cls.append(PartnerCandidate(v))
        classes.append(cls)
    return classes


def partner_class_count(n: int) -> int:
    """2^(k-1) for n > 1 with k distinct prime factors; 1 for n = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    return 2 ** (len(distinct_primes(n)) - 1)
