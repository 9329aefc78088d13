"""Numerical side of stable extensions 0 -> F -> E -> G -> 0.

Given ``deg L = l`` and ``rk F = r`` with ``l/r < beta``, find ``(l', r')``
with ``(l + l')/(r + r') <= beta < l'/r'`` and ``L' = L^a`` (so
``l' = a * l``).  After dividing by ``l`` this asks for ``a/b`` with

    x < a/b   and   a - b x <= eps,       x = beta/l,  eps = r x - 1,

and the smallest such ``b`` is found by walking the upper bounds of the
Stern-Brocot descent towards ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import HypothesisViolation, ValidationError
from .lattice import NSClass
from .mukai import MukaiVector, euler_chi


@dataclass(frozen=True)
class ExtensionProblem:
    l: Fraction
    r: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "l", Fraction(self.l))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if isinstance(self.r, bool) or not isinstance(self.r, int) or self.r <= 0:
            raise ValidationError(f"rank must be a positive integer, got {self.r!r}")
        if not self.l / self.r < self.beta:
            raise HypothesisViolation(f"need mu(F) = {self.l / self.r} < beta = {self.beta}")


@dataclass(frozen=True)
class ExtensionSolution:
    l_prime: Fraction
    r_prime: int
    e_min: Fraction | None
    s_prime_min: int | None = None
    linearly_dependent: bool = True

    def check(self, p: ExtensionProblem) -> bool:
        """The double inequality (l + l')/(r + r') <= beta < l'/r'."""
        return (p.l + self.l_prime) / (p.r + self.r_prime) <= p.beta < Fraction(self.l_prime, 1) / self.r_prime


def min_upper_denominator(x: Fraction, eps: Fraction) -> tuple[int, int]:
    """Smallest ``b >= 1`` (then smallest ``a``) with ``0 < a - b x <= eps``.

    Requires ``x > 0`` rational and ``eps >= 1/denominator(x)``, which
    guarantees a solution (the upper Farey neighbour of ``x`` has
    ``a - b x = 1/denominator(x)``).
    """
    x = Fraction(x)
    eps = Fraction(eps)

    def f(p, q):
        return p - q * x

    lo, hi = (0, 1), (1, 0)
    while True:
        # advance the lower bound as far as possible
        flo, fhi = f(*lo), f(*hi)
        k = math.ceil(-flo / fhi) - 1
        lo = (lo[0] + k * hi[0], lo[1] + k * hi[1])
        flo = f(*lo)
        if flo + fhi == 0:
            return _past_x(hi, lo, x, eps)
        # lower the upper bound; every intermediate value is a candidate
        jmax = math.ceil(fhi / -flo) - 1
        j0 = max(1, math.ceil((fhi - eps) / -flo))
        if j0 <= jmax:
            b = hi[1] + j0 * lo[1]
            return math.floor(b * x) + 1, b
        hi = (hi[0] + jmax * lo[0], hi[1] + jmax * lo[1])
        if f(hi[0] + lo[0], hi[1] + lo[1]) == 0:
            return _past_x(hi, lo, x, eps)


def _past_x(hi, lo, x, eps):
    # the mediant hit x itself; upper bounds continue as hi + j*x with
    # constant a - b x, so only the first of them can be new
    m = (hi[0] + lo[0], hi[1] + lo[1])
    cand = (hi[0] + m[0], hi[1] + m[1])
    if hi[1] == 0 and cand[0] - cand[1] * x <= eps:
        return cand
    raise HypothesisViolation(f"no rational a/b above {x} within eps={eps}")


def _scan_from(x: Fraction, eps: Fraction, min_b: int) -> tuple[int, int]:
    # a - b x is periodic in b with period denominator(x), so one period suffices
    for b in range(min_b, min_b + x.denominator + 1):
        a = math.floor(b * x) + 1
        if a - b * x <= eps:
            return a, b
    raise HypothesisViolation(f"no solution with r' >= {min_b}")


def solve_extension_lemma(p: ExtensionProblem, min_rank: int = 1,
                          twist_degree: Fraction | None = None) -> ExtensionSolution:
    """Minimal ``r'`` (then minimal ``l'``) solving the extension inequalities.

    ``l`` must be positive.  When it is not, pass ``twist_degree = deg H``:
    the problem is solved for ``F (x) H^k`` and the answer is twisted back
    by ``H^{-k r'}``.
    """
    if p.l <= 0:
        if twist_degree is None or Fraction(twist_degree) <= 0:
            raise HypothesisViolation("deg L must be positive; pass a positive twist degree")
        d = Fraction(twist_degree)
        k = math.floor(-p.l / (p.r * d)) + 1
        shifted = ExtensionProblem(p.l + k * p.r * d, p.r, p.beta + k * d)
        sol = solve_extension_lemma(shifted, min_rank)
        l_prime = sol.l_prime - k * sol.r_prime * d
        e_min = e_threshold(p.l, p.r, l_prime, sol.r_prime) if sol.r_prime >= p.r else None
        return ExtensionSolution(l_prime, sol.r_prime, e_min, linearly_dependent=False)

    x = p.beta / p.l
    eps = p.r * x - 1
    if min_rank <= 1:
        a, b = min_upper_denominator(x, eps)
    else:
        a, b = _scan_from(x, eps, min_rank)
    l_prime = a * p.l
    e_min = e_threshold(p.l, p.r, l_prime, b) if b >= p.r else None
    sol = ExtensionSolution(l_prime, b, e_min)
    assert sol.check(p)
    return sol


def e_threshold(l, r: int, l_prime, r_prime: int, mu0=None) -> Fraction:
    """Smallest e for which e-stability of G forces mu(E_1) < mu(E).

    Returns ((r' r - r)/(r + r')) (l'/r' - l/r); with ``mu0`` the result is
    the max of that and ``l'/r' - mu0``.
    """
    if r_prime < r:
        raise HypothesisViolation(f"r' = {r_prime} must be at least r = {r}")
    e = Fraction(r_prime * r - r, r + r_prime) * (Fraction(l_prime) / r_prime - Fraction(l) / r)
    if mu0 is not None:
        e = max(e, Fraction(l_prime) / r_prime - Fraction(mu0))
    return e


def least_positive_chi_sprime(vF: MukaiVector, l_prime: Sequence[int], r_prime: int) -> int:
    """Least s' with chi(v(F), (r + r', l + l', s')) > 0."""
    r, l, s = vF.r, vF.l, vF.s
    if r <= 0:
        raise HypothesisViolation("v(F) must have positive rank")
    lat = vF.lattice
    total: NSClass = tuple(a + b for a, b in zip(l, lat.check(l_prime)))
    t = lat.dot(l, total) - (r + r_prime) * s
    s_prime = t // r + 1
    E = MukaiVector(r + r_prime, total, s_prime, lat)
    assert euler_chi(vF, E) > 0
    return s_prime


# name used by the public interface contract
bridgerem_sprime = least_positive_chi_sprime
