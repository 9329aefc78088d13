"""Quick randomized invariant suite behind ``k3lattice selftest``."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from . import construct, isometry, mukai, partners, stability
from .generators import (random_fine_moduli_vector, random_lattice, random_positive_class,
                         random_rational_class, random_vector)
from .lattice import content, hyperbolic_plane, rank_one


def _pairing(rng, n):
    for _ in range(n):
        lat = random_lattice(rng, rng.randint(1, 4))
        v, w, u = (random_vector(rng, lat) for _ in range(3))
        k = rng.randint(-5, 5)
        if mukai.mukai_pair(v, w) != mukai.mukai_pair(w, v):
            return False
        if mukai.mukai_pair(v + k * u, w) != mukai.mukai_pair(v, w) + k * mukai.mukai_pair(u, w):
            return False
        if v.square() % 2:
            return False
    return True


def _im_z(rng, n):
    for _ in range(n):
        lat = random_lattice(rng, rng.randint(1, 4))
        K = stability.ComplexifiedClass(lat, random_rational_class(rng, lat.rank),
                                        random_positive_class(rng, lat))
        v = random_vector(rng, lat)
        if stability.central_charge(K, v).im != stability.im_Z_formula(K, v):
            return False
    return True


def _isometries(rng, n):
    for _ in range(n):
        lat = random_lattice(rng, rng.randint(1, 4))
        T = isometry.spherical_twist_O(lat)
        c1, c2 = (tuple(rng.randint(-4, 4) for _ in range(lat.rank)) for _ in range(2))
        v, w = random_vector(rng, lat), random_vector(rng, lat)
        if T(T(v)) != v or mukai.mukai_pair(T(v), T(w)) != mukai.mukai_pair(v, w):
            return False
        L = isometry.line_twist(lat, tuple(a + b for a, b in zip(c1, c2)))
        if L(v) != isometry.line_twist(lat, c1)(isometry.line_twist(lat, c2)(v)):
            return False
    return True


def _reduction(rng, n):
    for _ in range(n):
        lat = random_lattice(rng, rng.randint(2, 4))
        v = random_fine_moduli_vector(rng, lat)
        red = isometry.reduce_to_coprime(v)
        w = red.vector
        if math.gcd(w.r, content(w.l)) != 1 or not mukai.is_isotropic(w) or not mukai.fine_moduli_check(w).ok:
            return False
    U = hyperbolic_plane((1, 2))
    red = isometry.reduce_to_coprime(mukai.MukaiVector(4, (2, 2), 1, U))
    return red.vector.coords == (3, -6, -2, 4) and red.ell_tilde == (1, 0)


def _extension(rng, n):
    for _ in range(n):
        r = rng.randint(1, 6)
        l = Fraction(rng.randint(1, 8))
        beta = l / r + Fraction(rng.randint(1, 20), rng.randint(1, 12))
        p = construct.ExtensionProblem(l, r, beta)
        sol = construct.solve_extension_lemma(p)
        if not sol.check(p):
            return False
        for b in range(1, sol.r_prime):
            a = math.floor(b * beta / l) + 1
            if (l + a * l) / (r + b) <= beta:
                return False
    return True


def _scan():
    for deg in (4, 6, 8):
        K = stability.ComplexifiedClass(rank_one(deg), (0,), (1,))
        if stability.spherical_scan(K, 6):
            return False
    K = stability.ComplexifiedClass(rank_one(2), (0,), (1,))
    hits = stability.spherical_scan(K, 2)
    return any((h.r, h.l, h.s) == (1, (0,), 1) for h in hits)


def _partners():
    for n in range(1, 500):
        classes = partners.enumerate_candidates(partners.Rank1Surface(n))
        if len(classes) != partners.partner_class_count(n):
            return False
    return True


def _exponential(rng, n):
    for _ in range(n):
        lat = random_lattice(rng, rng.randint(1, 4))
        B = random_rational_class(rng, lat.rank)
        w = random_positive_class(rng, lat)
        K = stability.ComplexifiedClass(lat, B, w)
        pp, pbar = stability.exp_isotropy_identities(K)
        if pp != (0, 0) or pbar != (2 * lat.square(w), 0):
            return False
        lam = Fraction(rng.randint(1, 30), rng.randint(1, 7))
        form = isometry.normalize_exponential(lat, mukai.exp_class(lat, B, w, lam))
        if (form.lam, form.B, form.omega) != (lam, tuple(B), tuple(w)):
            return False
    return True


def run(seed: int = 0, n: int = 200) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    return [
        ("mukai pairing symmetric, bilinear, even", _pairing(rng, n)),
        ("Im Z matches (l.omega) - r (B.omega)", _im_z(rng, n)),
        ("twists are isometries; line twists add", _isometries(rng, n)),
        ("coprime reduction", _reduction(rng, max(10, n // 10))),
        ("extension lemma inequalities and minimality", _extension(rng, n)),
        ("spherical scan", _scan()),
        ("partner class counts", _partners()),
        ("exponential identities and normalisation", _exponential(rng, n)),
    ]
