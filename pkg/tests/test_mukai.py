import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lattice import (ChernData, MukaiVector, ValidationError, fine_moduli_check, euler_chi, from_chern,
                       is_isotropic, is_spherical, mukai_pair, rank_one)
from k3lattice.mukai import to_chern

from .conftest import lattices


def V(lat, r, l, s):
    return MukaiVector(r, tuple(l), s, lat)


def test_pair_examples(deg2):
    pt = MukaiVector.point(deg2)
    O = MukaiVector.structure_sheaf(deg2)
    assert mukai_pair(pt, pt) == 0
    assert mukai_pair(O, O) == -2
    for s2 in range(-3, 10):
        val = mukai_pair(V(deg2, 2, (1,), 0), V(deg2, 9, (3,), s2))
        assert val == 6 - 2 * s2
        assert (val < 0) == (s2 >= 4)


def test_sign_convention_display(deg2):
    # <(r,l,s),(r+r',l+l',s')> = (l.(l+l')) - r s' - (r+r') s
    r, l, s, rp, lp, sp = 3, 2, -1, 4, 5, 7
    lhs = mukai_pair(V(deg2, r, (l,), s), V(deg2, r + rp, (l + lp,), sp))
    assert lhs == 2 * l * (l + lp) - r * sp - (r + rp) * s


def test_euler_examples(deg2):
    O = MukaiVector.structure_sheaf(deg2)
    pt = MukaiVector.point(deg2)
    assert euler_chi(O, O) == 2
    assert euler_chi(pt, pt) == 0
    assert euler_chi(V(deg2, 2, (1,), 0), V(deg2, 9, (3,), 4)) == 2


def test_lattice_mismatch(deg2):
    with pytest.raises(ValidationError):
        mukai_pair(MukaiVector.point(deg2), MukaiVector.point(rank_one(4)))


def test_from_chern(deg2):
    assert from_chern(deg2, ChernData(1, (0,), 0)) == MukaiVector.structure_sheaf(deg2)
    assert from_chern(deg2, ChernData(2, (1,), 1)) == V(deg2, 2, (1,), 2)
    # k(x): rank 0, c1 0, ch2 = 1, i.e. c2 = -1 in the ch2 = c1^2/2 - c2 convention
    assert from_chern(deg2, ChernData(0, (0,), -1)) == MukaiVector.point(deg2)


def test_spherical_isotropic(deg2):
    assert is_spherical(MukaiVector.structure_sheaf(deg2))
    assert is_isotropic(MukaiVector.point(deg2))
    v = V(deg2, 2, (1,), 1)
    assert v.square() == -2 and is_spherical(v) and not is_isotropic(v)


def test_fine_moduli_running_example(U):
    rep = fine_moduli_check(V(U, 4, (2, 2), 1))
    assert (rep.a, rep.ell, rep.ell_dot_h) == (2, (1, 1), 3)
    assert rep.primitive_decomposition and rep.gcd_condition and rep.dimension_condition


def test_fine_moduli_gcd_failure(U):
    rep = fine_moduli_check(V(U, 2, (2, 2), 2))
    assert not rep.gcd_condition and not rep.ok


def test_fine_moduli_point_class(U):
    rep = fine_moduli_check(MukaiVector.point(U))
    assert rep.a == 0 and rep.ok
    assert not fine_moduli_check(V(U, 0, (0, 0), 0)).ok


def test_non_integral_components_rejected(U):
    with pytest.raises(ValidationError):
        V(U, 1, (0.5, 0), 0)


vecs = st.integers(-30, 30)


@settings(max_examples=300)
@given(lattices(), st.data())
def test_pairing_properties(lat, data):
    def draw():
        return V(lat, data.draw(vecs), [data.draw(vecs) for _ in range(lat.rank)], data.draw(vecs))
    v, w, u = draw(), draw(), draw()
    k = data.draw(st.integers(-9, 9))
    assert mukai_pair(v, w) == mukai_pair(w, v)
    assert mukai_pair(v + k * u, w) == mukai_pair(v, w) + k * mukai_pair(u, w)
    assert v.square() % 2 == 0
    c = to_chern(v)
    if v.r >= 0:
        assert from_chern(lat, c) == v
    assert c.c2 == v.r + lat.square(v.l) // 2 - v.s


@given(lattices(), st.data())
def test_fine_moduli_implies_isotropic(lat, data):
    import random

    from k3lattice.generators import random_fine_moduli_vector

    v = random_fine_moduli_vector(random.Random(data.draw(st.integers(0, 10**6))), lat, require_reduction=False)
    assert fine_moduli_check(v).ok
    assert is_isotropic(v)


def test_contract_names_are_aliases():
    import k3lattice
    assert k3lattice.crucform_check is k3lattice.fine_moduli_check
    assert k3lattice.bridgerem_sprime is k3lattice.least_positive_chi_sprime
