import math

import pytest

from k3lattice import fine_moduli_check, is_isotropic
from k3lattice.partners import Rank1Surface, coprime_splittings, distinct_primes, enumerate_candidates, partner_class_count


def brute_classes(n):
    pairs = {(r, n // r) for r in range(1, n + 1) if n % r == 0 and math.gcd(r, n // r) == 1}
    return {frozenset({p, p[::-1]}) for p in pairs}


@pytest.mark.parametrize("n, count", [(1, 1), (6, 2), (30, 4), (12, 2), (210, 8), (2**10, 1)])
def test_counts(n, count):
    assert partner_class_count(n) == count
    assert len(enumerate_candidates(Rank1Surface(n))) == count


def test_n6_candidates():
    classes = enumerate_candidates(Rank1Surface(6))
    assert [[(c.r, c.s) for c in cls] for cls in classes] == [[(1, 6), (6, 1)], [(2, 3), (3, 2)]]


def test_candidates_certified():
    for n in (1, 2, 6, 30, 360, 2310):
        for cls in enumerate_candidates(Rank1Surface(n)):
            for c in cls:
                rep = fine_moduli_check(c.v)
                assert rep.ok and rep.a == 1 and is_isotropic(c.v)
                assert c.r * c.s == n and math.gcd(c.r, c.s) == 1 and c.r >= 1


def test_against_brute_force():
    for n in range(1, 1500):
        classes = enumerate_candidates(Rank1Surface(n))
        got = {frozenset((c.r, c.s) for c in cls) for cls in classes}
        assert got == brute_classes(n)
        assert len(classes) == partner_class_count(n)


def test_multiplicative():
    for m in range(2, 300):
        for p in (2, 3, 5, 7, 11):
            if m % p:
                assert partner_class_count(p**2 * m) == 2 * partner_class_count(m)


def test_helpers():
    assert distinct_primes(360) == [2, 3, 5]
    assert distinct_primes(97) == [97]
    assert coprime_splittings(12) == [(1, 12), (3, 4), (4, 3), (12, 1)]


def test_invalid_n():
    with pytest.raises(ValueError):
        Rank1Surface(0)
    with pytest.raises(ValueError):
        partner_class_count(0)
