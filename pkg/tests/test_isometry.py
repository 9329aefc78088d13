import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lattice import (HypothesisViolation, MukaiIsometry, MukaiVector, ValidationError, apply, compose,
                       fine_moduli_check, fixes_point_class, invert, is_isotropic, is_spherical, line_twist,
                       mukai_pair, normalize_exponential, reduce_to_coprime, spherical_twist_O)
from k3lattice.generators import random_fine_moduli_vector, random_lattice
from k3lattice.isometry import NormalizationError, determinant, primitive_vectors
from k3lattice.lattice import content
from k3lattice.mukai import exp_class

from .conftest import lattices


def V(lat, r, l, s):
    return MukaiVector(r, tuple(l), s, lat)


def reflect(v):
    """Root reflection x + <x, d> d, d = (1, 0, 1), computed from the pairing."""
    d = MukaiVector.structure_sheaf(v.lattice)
    return v + mukai_pair(v, d) * d


def exp_twist(v, c):
    lat = v.lattice
    return V(lat, v.r, [a + v.r * b for a, b in zip(v.l, c)],
             v.s + lat.dot(c, v.l) + v.r * lat.square(c) // 2)


def test_spherical_twist_examples(U):
    T = spherical_twist_O(U)
    assert T(MukaiVector.point(U)) == V(U, -1, (0, 0), 0)
    O = MukaiVector.structure_sheaf(U)
    assert T(O) == -O
    v = V(U, 5, (2, -3), 7)
    assert T(v) == V(U, -7, (2, -3), -5)  # swaps H^0 and H^4 up to sign
    assert T(T(v)) == v
    assert T(v) == reflect(v)
    assert determinant(T) == -1


def test_line_twist_examples(U):
    v = V(U, 4, (2, 2), 1)
    assert line_twist(U, (1, 0))(v) == V(U, 4, (6, 2), 3)
    assert line_twist(U, (0, 0)) == MukaiIsometry.identity(U)


def test_identity_and_inverse(U):
    M = compose(line_twist(U, (2, -1)), spherical_twist_O(U))
    assert compose(MukaiIsometry.identity(U), M) == M
    assert compose(M, invert(M)) == MukaiIsometry.identity(U)
    assert compose(invert(M), M) == MukaiIsometry.identity(U)


def test_non_isometry_rejected(U):
    with pytest.raises(ValidationError):
        MukaiIsometry(((1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), U)


def test_fixes_point_class(U):
    assert fixes_point_class(MukaiIsometry.identity(U))
    assert not fixes_point_class(spherical_twist_O(U))
    for c in [(1, 0), (3, -7), (0, 0)]:
        assert fixes_point_class(line_twist(U, c))


@settings(max_examples=200)
@given(lattices(), st.data())
def test_generators_are_isometries(lat, data):
    coord = st.integers(-25, 25)
    def vec():
        return V(lat, data.draw(coord), [data.draw(coord) for _ in range(lat.rank)], data.draw(coord))
    def cls():
        return tuple(data.draw(st.integers(-6, 6)) for _ in range(lat.rank))
    v, w = vec(), vec()
    c1, c2 = cls(), cls()
    T = spherical_twist_O(lat)
    L1, L2 = line_twist(lat, c1), line_twist(lat, c2)
    for M in (T, L1, compose(T, L1)):
        assert mukai_pair(M(v), M(w)) == mukai_pair(v, w)
        assert is_spherical(M(v)) == is_spherical(v)
        assert is_isotropic(M(v)) == is_isotropic(v)
        assert abs(determinant(M)) == 1
    assert T(T(v)) == v and T(v).l == v.l
    assert compose(L1, L2) == line_twist(lat, tuple(a + b for a, b in zip(c1, c2)))
    assert L1(v) == exp_twist(v, c1)
    assert fixes_point_class(compose(L1, L2))


def test_primitive_vector_order():
    first = list(primitive_vectors(2, 1))
    assert first[:2] == [(1, 0), (0, 1)]
    assert all(max(map(abs, x)) == 1 for x in first)
    assert len(first) == 8


def test_reduce_running_example(U):
    v = V(U, 4, (2, 2), 1)
    # hand expansion: exp(e) v = (4, 6e + 2f, 3); reflect; fix the sign
    twisted = exp_twist(v, (1, 0))
    assert twisted == V(U, 4, (6, 2), 3)
    expected = -reflect(twisted)
    assert expected == V(U, 3, (-6, -2), 4)

    red = reduce_to_coprime(v)
    assert red.vector == expected
    assert red.ell_tilde == (1, 0)
    assert [name for name, _ in red.trace] == ["line_twist", "spherical_twist_O", "shift"]
    assert apply(red.isometry, v) == expected
    rep = fine_moduli_check(red.vector)
    assert (rep.a, rep.ell, U.square(rep.ell)) == (2, (-3, -1), 6)
    assert rep.ok and math.gcd(3, 2) == 1


def test_reduce_short_circuits(U):
    pt = MukaiVector.point(U)
    assert reduce_to_coprime(pt).vector == pt and reduce_to_coprime(pt).trace == ()
    # gcd(r, a) = 1 already: (1, e + f, 1), 2 = 2*1*1
    v = V(U, 1, (1, 1), 1)
    red = reduce_to_coprime(v)
    assert red.vector == v and red.trace == ()


def test_reduce_rank_one_unchanged(deg2):
    v = V(deg2, 4, (2,), 1)  # a = 2: 4 * 2 = 2 * 4 * 1, gcd(4, 4, 1) = 1, gcd(r, a) = 2
    assert fine_moduli_check(v).ok
    red = reduce_to_coprime(v)
    assert red.vector == v and red.trace == () and "rank one" in red.note


def test_reduce_rejects_non_fine(U):
    with pytest.raises(HypothesisViolation):
        reduce_to_coprime(V(U, 2, (2, 2), 2))


@pytest.mark.parametrize("seed", range(40))
def test_reduce_random(seed):
    rng = random.Random(seed)
    lat = random_lattice(rng, rng.randint(2, 4))
    v = random_fine_moduli_vector(rng, lat)
    red = reduce_to_coprime(v)
    w = red.vector
    assert math.gcd(w.r, content(w.l)) == 1
    assert w.r >= 0
    assert is_isotropic(w) and fine_moduli_check(w).ok
    assert apply(red.isometry, v) == w
    assert not fixes_point_class(red.isometry) or v == w


# -- exponential normalisation -------------------------------------------------

def test_normalize_identity(deg2):
    form = normalize_exponential(deg2, exp_class(deg2, (Fraction(1, 3),), (2,)))
    assert (form.lam, form.B, form.omega) == (1, (Fraction(1, 3),), (2,))


def test_normalize_scaled(deg2):
    # 3 exp(h + 2ih): (h + 2ih)^2/2 = (2 - 8 + 8i)/2 = -3 + 4i
    w = ((3, (3,), -9), (0, (6,), 12))
    form = normalize_exponential(deg2, w)
    assert (form.lam, form.B, form.omega) == (3, (1,), (2,))


@pytest.mark.parametrize("w, reason", [
    (((3, (3,), -8), (0, (6,), 12)), "quadratic"),
    (((3, (3,), -9), (1, (6,), 12)), "degree0"),
    (((-3, (-3,), 9), (0, (-6,), -12)), "degree0"),
    (((1, (0,), -1), (0, (-1,), 0)), "cone"),
])
def test_normalize_errors(deg2, w, reason):
    with pytest.raises(NormalizationError) as exc:
        normalize_exponential(deg2, w)
    assert exc.value.reason == reason


def test_built_matrices_pass_the_checked_constructor():
    from k3lattice.isometry import MukaiIsometry, compose, invert, line_twist, spherical_twist_O
    rng = random.Random(11)
    for _ in range(60):
        lat = random_lattice(rng, rng.randint(1, 4))
        c = tuple(rng.randint(-5, 5) for _ in range(lat.rank))
        for M in (spherical_twist_O(lat), line_twist(lat, c),
                  compose(spherical_twist_O(lat), line_twist(lat, c)), invert(line_twist(lat, c))):
            assert MukaiIsometry(M.matrix, lat) == M
