"""Central charges, the tilted heart and numerical HN profiles.

Everything is decided in exact rational arithmetic.  ``beta`` is either a
``Fraction`` or an :class:`IrrationalBeta` bracket standing in for an
irrational value that no slope can equal.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .exceptions import HypothesisViolation, ValidationError
from .lattice import Lattice, NSClass, positive_cone_check
from .mukai import MukaiVector, complex_pair, conjugate, exp_class, is_spherical, raw_pair


@dataclass(frozen=True)
class ComplexifiedClass:
    """``B + i omega`` with omega in the positive cone."""

    lattice: Lattice
    B: NSClass
    omega: NSClass

    def __post_init__(self):
        B = tuple(Fraction(x) for x in self.lattice.check(self.B))
        omega = tuple(Fraction(x) for x in self.lattice.check(self.omega))
        if not positive_cone_check(self.lattice, omega):
            raise ValidationError("omega is not in the positive cone of the polarization")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "omega", omega)

    @cached_property
    def beta(self) -> Fraction:
        return self._exp[1][2]

    @property
    def stability_valid(self) -> bool:
        # omega^2 > 2 guarantees Z(F) is not in R_{<=0} for spherical sheaves
        return self.lattice.square(self.omega) > 2

    def slope(self, rank: int, c1: Sequence) -> Fraction:
        return Fraction(self.lattice.dot(c1, self.omega)) / rank

    @cached_property
    def _exp(self):
        return exp_class(self.lattice, self.B, self.omega)

    def exp(self):
        return self._exp


@dataclass(frozen=True)
class CentralChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return CentralChargeValue(self.re + other.re, self.im + other.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def central_charge(K: ComplexifiedClass, v: MukaiVector) -> CentralChargeValue:
    """Z(v) = <v, exp(B + i omega)>."""
    if v.lattice is not K.lattice and v.lattice != K.lattice:
        raise ValidationError("vector and stability data live on different lattices")
    # v is real, so the complex pairing splits into two real ones
    phi_re, phi_im = K.exp()
    t = v.triple()
    return CentralChargeValue(Fraction(raw_pair(K.lattice, t, phi_re)), Fraction(raw_pair(K.lattice, t, phi_im)))


def im_Z_formula(K: ComplexifiedClass, v: MukaiVector) -> Fraction:
    """Im Z(v) = (l.omega) - r (B.omega), computed directly."""
    return Fraction(K.lattice.dot(v.l, K.omega)) - v.r * K.beta


class PhaseKind(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    INVALID = "invalid"


@dataclass(frozen=True)
class Phase:
    kind: PhaseKind
    z: CentralChargeValue

    @property
    def approx(self) -> float | None:
        """Float phase in (0, 1] for display; never used in decisions."""
        if self.kind is PhaseKind.INVALID:
            return None
        return math.atan2(float(self.z.im), float(self.z.re)) / math.pi


def phase(K: ComplexifiedClass, v: MukaiVector) -> Phase:
    z = central_charge(K, v)
    if z.im > 0:
        return Phase(PhaseKind.INTERIOR, z)
    if z.im == 0 and z.re < 0:
        return Phase(PhaseKind.BOUNDARY, z)
    return Phase(PhaseKind.INVALID, z)


# -- irrational beta ---------------------------------------------------------

@dataclass(frozen=True)
class IrrationalBeta:
    """Symbolic irrational ``beta`` known to lie strictly inside ``(lo, hi)``.

    A slope inside the open bracket cannot be compared and raises; widen or
    tighten the bracket instead.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValidationError("irrational beta bracket needs lo < hi")


Beta = Union[Fraction, IrrationalBeta]


def compare_slope(mu: Fraction, beta: Beta) -> int:
    """Sign of ``mu - beta``."""
    if isinstance(beta, IrrationalBeta):
        if mu <= beta.lo:
            return -1
        if mu >= beta.hi:
            return 1
        raise HypothesisViolation(f"slope {mu} falls inside the bracket ({beta.lo}, {beta.hi}) of beta")
    beta = Fraction(beta)
    return (mu > beta) - (mu < beta)


# -- formal sheaves -------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    rank: int
    c1: NSClass

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank <= 0:
            raise ValidationError(f"HN factor rank must be a positive integer, got {self.rank!r}")
        object.__setattr__(self, "c1", tuple(self.c1))


@dataclass(frozen=True)
class Torsion:
    """Torsion part: a degree class (zero for 0-dimensional support) and a length."""

    c1: NSClass
    length: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(self.c1))
        if self.length < 0:
            raise ValidationError("torsion length must be non-negative")

    @property
    def zero_dimensional(self) -> bool:
        return not any(self.c1)


@dataclass(frozen=True)
class FormalSheaf:
    """Numerical HN profile: optional torsion, then semistable factors of decreasing slope."""

    lattice: Lattice
    omega: NSClass
    factors: tuple[Factor, ...] = ()
    torsion: Torsion | None = None

    def __post_init__(self):
        lat = self.lattice
        object.__setattr__(self, "omega", tuple(Fraction(x) for x in lat.check(self.omega)))
        factors = tuple(f if isinstance(f, Factor) else Factor(*f) for f in self.factors)
        for f in factors:
            lat.check(f.c1)
        object.__setattr__(self, "factors", factors)
        if self.torsion is not None:
            lat.check(self.torsion.c1)
        slopes = self.slopes
        for i in range(1, len(slopes)):
            if not slopes[i - 1] > slopes[i]:
                raise ValidationError(f"HN slopes must strictly decrease, got {slopes[i - 1]} then {slopes[i]}")

    @property
    def slopes(self) -> list[Fraction]:
        return [Fraction(self.lattice.dot(f.c1, self.omega)) / f.rank for f in self.factors]

    @property
    def is_empty(self) -> bool:
        return not self.factors and (self.torsion is None or
                                     (self.torsion.zero_dimensional and self.torsion.length == 0))

    @property
    def is_torsion(self) -> bool:
        return not self.factors

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def c1(self) -> NSClass:
        total = [0] * self.lattice.rank
        parts = [f.c1 for f in self.factors]
        if self.torsion is not None:
            parts.append(self.torsion.c1)
        for c in parts:
            for i, x in enumerate(c):
                total[i] += x
        return tuple(total)

    def with_omega(self, omega) -> "FormalSheaf":
        return FormalSheaf(self.lattice, omega, self.factors, self.torsion)

    def to_json(self) -> dict:
        tors = None
        if self.torsion is not None:
            tors = {"c1": list(self.torsion.c1), "length": self.torsion.length}
        return {"torsion": tors, "factors": [{"rank": f.rank, "c1": list(f.c1)} for f in self.factors]}

    @classmethod
    def from_json(cls, lattice: Lattice, omega, data) -> "FormalSheaf":
        if not isinstance(data, dict) or "factors" not in data:
            raise ValidationError('FormalSheaf JSON must look like {"torsion": ..., "factors": [...]}')
        tors = data.get("torsion")
        torsion = None
        if tors is not None:
            if not isinstance(tors, dict):
                raise ValidationError("'torsion' must be an object or null")
            torsion = Torsion(tuple(tors.get("c1", lattice.zero())), int(tors.get("length", 0)))
        try:
            factors = tuple(Factor(f["rank"], tuple(f["c1"])) for f in data["factors"])
        except (KeyError, TypeError):
            raise ValidationError('each factor must look like {"rank": n, "c1": [...]}') from None
        return cls(lattice, omega, factors, torsion)


def hn_mu_max(F: FormalSheaf) -> Fraction:
    if F.is_torsion:
        raise HypothesisViolation("mu_max is undefined for a pure torsion sheaf")
    return F.slopes[0]


def hn_mu_min(F: FormalSheaf) -> Fraction:
    if F.is_torsion:
        raise HypothesisViolation("mu_min is undefined for a pure torsion sheaf")
    return F.slopes[-1]


class Membership(enum.Enum):
    IN_T = "in_T"
    IN_F = "in_F"
    NEITHER = "neither"


def in_T(F: FormalSheaf, beta: Beta) -> bool:
    """Torsion, or mu_min > beta."""
    return F.is_torsion or compare_slope(hn_mu_min(F), beta) > 0


def in_F(F: FormalSheaf, beta: Beta) -> bool:
    """Torsion free with mu_max <= beta (the zero sheaf counts)."""
    if F.torsion is not None and not F.is_empty:
        return False
    return not F.factors or compare_slope(hn_mu_max(F), beta) <= 0


def torsion_pair_membership(F: FormalSheaf, beta: Beta) -> Membership:
    if in_T(F, beta):
        return Membership.IN_T
    if in_F(F, beta):
        return Membership.IN_F
    return Membership.NEITHER


def decompose(F: FormalSheaf, beta: Beta) -> tuple[FormalSheaf, FormalSheaf]:
    """Split ``0 -> T -> F -> F' -> 0`` along the torsion pair at ``beta``."""
    t_part = tuple(f for f, mu in zip(F.factors, F.slopes) if compare_slope(mu, beta) > 0)
    f_part = F.factors[len(t_part):]
    T = FormalSheaf(F.lattice, F.omega, t_part, F.torsion)
    Fp = FormalSheaf(F.lattice, F.omega, f_part, None)
    return T, Fp


@dataclass(frozen=True)
class NumericalComplex:
    """Two-term complex given by its cohomology sheaves in degrees -1 and 0."""

    h_minus1: FormalSheaf
    h0: FormalSheaf

    def __post_init__(self):
        if self.h_minus1.torsion is not None and not self.h_minus1.is_empty:
            raise ValidationError("H^-1 of an object in the heart is torsion free")


@dataclass(frozen=True)
class HeartReport:
    member: bool
    h_minus1_in_F: bool
    h0_in_T: bool

    @property
    def diagnostics(self) -> list[str]:
        out = []
        if not self.h_minus1_in_F:
            out.append("H^-1 is not in F(beta)")
        if not self.h0_in_T:
            out.append("H^0 is not in T(beta)")
        return out

    def __bool__(self):
        return self.member


def heart_membership(X: NumericalComplex, beta: Beta) -> HeartReport:
    f_ok = in_F(X.h_minus1, beta)
    t_ok = X.h0.is_empty or in_T(X.h0, beta)
    return HeartReport(f_ok and t_ok, f_ok, t_ok)


class MinimalShape(enum.Enum):
    POINT_CLASS = "point_class"
    SHIFTED_STABLE_SLOPE_BETA = "shifted_stable_slope_beta"
    NOT_MINIMAL_SHAPE = "not_minimal_shape"


def minimal_candidate(X: NumericalComplex, beta: Beta) -> MinimalShape:
    """Numerical shape of the two kinds of minimal objects of the heart.

    Necessary, not sufficient: mu-stability and local freeness of the
    shifted sheaf are not visible numerically.
    """
    h1, h0 = X.h_minus1, X.h0
    if h1.is_empty and not h0.factors and h0.torsion is not None \
            and h0.torsion.zero_dimensional and h0.torsion.length == 1:
        return MinimalShape.POINT_CLASS
    if h0.is_empty and len(h1.factors) == 1 and h1.torsion is None:
        if isinstance(beta, IrrationalBeta):
            # a rational slope never equals an irrational beta
            return MinimalShape.NOT_MINIMAL_SHAPE
        if h1.slopes[0] == beta:
            return MinimalShape.SHIFTED_STABLE_SLOPE_BETA
    return MinimalShape.NOT_MINIMAL_SHAPE


def minimal_candidate_vector(K: ComplexifiedClass, v: MukaiVector) -> MinimalShape:
    """Classify a bare Mukai vector: (0,0,1), or -v(F) with rank > 0 and slope beta."""
    if v == MukaiVector.point(v.lattice):
        return MinimalShape.POINT_CLASS
    if v.r < 0 and K.slope(-v.r, tuple(-c for c in v.l)) == K.beta:
        return MinimalShape.SHIFTED_STABLE_SLOPE_BETA
    return MinimalShape.NOT_MINIMAL_SHAPE


# -- spherical scan -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class SphericalViolation:
    r: int
    l: NSClass
    s: int
    z: CentralChargeValue = field(compare=False)


def spherical_scan(K: ComplexifiedClass, bound: int, threads: int = 1,
                   backend: str | None = None) -> list[SphericalViolation]:
    """All spherical (r >= 0, l, s) in the box ``bound`` with Z in R_{<=0}, sorted."""
    from ._scan import scan_spherical_hits

    if bound < 0:
        raise ValidationError("bound must be non-negative")
    hits = scan_spherical_hits(K.lattice, K.B, K.omega, bound, threads=threads, backend=backend)
    out = []
    for r, l, s in hits:
        v = MukaiVector(r, l, s, K.lattice)
        assert is_spherical(v)
        z = central_charge(K, v)
        assert z.im == 0 and z.re <= 0
        out.append(SphericalViolation(r, tuple(l), s, z))
    out.sort()
    return out


# -- period quadric -------------------------------------------------------------

class QuadricMembership(enum.Enum):
    IN_Q_TILDE = "in_Q_tilde"
    IN_Q_PRIME = "in_Q_prime"
    NEITHER = "neither"


def quadric_membership(lattice: Lattice, x) -> QuadricMembership:
    """x = (re, im) triples; Q~ = {(x.x) = 0, (x.xbar) > 0}, Q' its part with no H^0."""
    xx = complex_pair(lattice, x, x)
    xbar = complex_pair(lattice, x, conjugate(x))
    if xx != (0, 0) or not xbar[0] > 0:
        return QuadricMembership.NEITHER
    (r0, _, _), (i0, _, _) = x
    if r0 == 0 and i0 == 0:
        return QuadricMembership.IN_Q_PRIME
    return QuadricMembership.IN_Q_TILDE


def exp_isotropy_identities(K: ComplexifiedClass) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """(<phi, phi>, <phi, phibar>) for phi = exp(B + i omega); expected (0, 2 omega^2)."""
    phi = K.exp()
    return complex_pair(K.lattice, phi, phi), complex_pair(K.lattice, phi, conjugate(phi))
