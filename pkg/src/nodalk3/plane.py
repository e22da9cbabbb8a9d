"""Geometry of the (s, t) half-plane of stability conditions.

The polarization is the formal path H_eps = H - eps*L; the slice consists of
central charges Z at (s*H_eps, t*H_eps).  Everything is kept exact: t never
appears directly, only t^2 (walls give t^2 rationally and Im Z is linear in
t), and all coefficients are polynomials or fractions in the infinitesimals
eps, epsp.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .infinitesimal import EPS, EPSP, ONE, EpsPoly, EpsRational, compare
from .lattice import DivisorClass, MukaiVector, ProblemInstance


class DegenerateWallError(ValueError):
    """Wall requested for proportional (or charge-proportional) vectors."""


class VerticalWallError(ValueError):
    """Height query on a wall with vanishing quadratic coefficient."""


class ChargeVanishesError(ValueError):
    """Phase comparison at a point where a central charge is zero."""


@dataclass(frozen=True)
class PolarizationPath:
    """The ample path omega = H_eps = H - eps*L with eps formal."""

    instance: ProblemInstance

    @property
    def h2(self) -> int:
        return self.instance.lattice.h_squared

    def h_eps_sq(self) -> EpsPoly:
        """H_eps^2 = H^2 - 2*eps^2."""
        return EpsPoly({(0, 0): self.h2, (2, 0): -2})

    def dot_h_eps(self, d: DivisorClass) -> EpsPoly:
        """D.H_eps for D = (k1*H + e1*L)/2: equals k1*H^2/2 + e1*eps."""
        return EpsPoly({(0, 0): Fraction(d.k1 * self.h2, 2), (1, 0): d.e1})


@dataclass(frozen=True)
class Charge:
    """Central charge on a vertical line, resolved into exact pieces.

    Z(s, t) = (re_const + re_tsq * t^2) + i * t * im_coeff.
    """

    re_const: EpsRational
    re_tsq: EpsRational
    im_coeff: EpsRational

    def re_at(self, t_sq: EpsRational) -> EpsRational:
        return self.re_const + self.re_tsq * t_sq


def central_charge(v: MukaiVector, s: EpsRational, path: PolarizationPath) -> Charge:
    """Z(r, D, a) = -a - r*(s^2 - t^2)*H_eps^2/2 + s*(D.H_eps) + i*t*(D.H_eps - r*s*H_eps^2)."""
    h2e = EpsRational(path.h_eps_sq())
    b = EpsRational(path.dot_h_eps(v.divisor))
    half_r = Fraction(v.rank, 2)
    re_const = EpsRational(-v.degree) - half_r * s * s * h2e + s * b
    re_tsq = half_r * h2e
    im_coeff = b - v.rank * s * h2e
    return Charge(re_const, re_tsq, im_coeff)


class VerticalLine:
    """The line b = {s = const} on which destabilizing walls are compared.

    The default abscissa is s(epsp) = d*H^2/(r*H_eps^2) - epsp, chosen just
    left of the degeneration point of u so that Im Z(u) = t*r*epsp*H_eps^2 is
    strictly positive.  Internally the product s*H_eps^2 is stored, which is
    a plain polynomial on the default line; effectivity defects then come out
    exactly in the form the case analysis quotes.
    """

    def __init__(self, path: PolarizationPath, s_heps2: "EpsPoly | EpsRational | None" = None):
        self.path = path
        if s_heps2 is None:
            inst = path.instance
            # s(epsp)*H_eps^2 = d*H^2/r - epsp*H_eps^2
            s_heps2 = EpsPoly({(0, 0): Fraction(inst.d * path.h2, inst.r)}) - EPSP * path.h_eps_sq()
        if isinstance(s_heps2, EpsPoly):
            s_heps2 = EpsRational(s_heps2)
        self.s_heps2: EpsRational = s_heps2
        self._abscissa: EpsRational | None = None

    @property
    def abscissa(self) -> EpsRational:
        if self._abscissa is None:
            self._abscissa = self.s_heps2 / EpsRational(self.path.h_eps_sq())
        return self._abscissa

    def charge(self, v: MukaiVector) -> Charge:
        return central_charge(v, self.abscissa, self.path)


def effectivity_defect(v: MukaiVector, line: VerticalLine) -> EpsPoly:
    """H_eps.(c1(v) - rk(v)*s*H_eps), cleared of the line's positive denominator.

    Classes of nonzero objects of the tilted heart have nonnegative imaginary
    part, so "passes effectivity" means sign >= 0.
    """
    b = line.path.dot_h_eps(v.divisor)
    return b * line.s_heps2.den - v.rank * line.s_heps2.num


@dataclass(frozen=True)
class NumericalWall:
    """The locus alpha*(s^2 + t^2) + beta*s + gamma = 0.

    Coefficients are projective (any positive common factor gives the same
    wall); provenance records the defining pair of Mukai vectors.
    """

    alpha: EpsPoly
    beta: EpsPoly
    gamma: EpsPoly
    provenance: tuple[MukaiVector, MukaiVector] | None = None

    def coefficients(self) -> tuple[EpsPoly, EpsPoly, EpsPoly]:
        return (self.alpha, self.beta, self.gamma)

    def is_vertical(self) -> bool:
        return self.alpha.sign() == 0

    def height_sq_value(self, s: EpsRational) -> EpsRational:
        """The formal value of t^2 at abscissa s, regardless of its sign."""
        if self.is_vertical():
            raise VerticalWallError("wall is a vertical line; no circle height")
        return -(EpsRational(self.beta) * s + EpsRational(self.gamma)) / EpsRational(self.alpha) - s * s

    def height_sq(self, s: EpsRational) -> EpsRational | None:
        """t^2 at abscissa s, or None when the wall misses the line (t^2 <= 0)."""
        t_sq = self.height_sq_value(s)
        if t_sq.sign() <= 0:
            return None
        return t_sq

    def contains(self, s: EpsRational, t_sq: EpsRational) -> bool:
        value = EpsRational(self.alpha) * (s * s + t_sq) + EpsRational(self.beta) * s + EpsRational(self.gamma)
        return value.is_zero()

    def same_wall(self, other: "NumericalWall") -> bool:
        """Projective equality of coefficient triples."""
        return proportional_triples(self.coefficients(), other.coefficients()) != 0


def proportional_triples(
    t1: tuple[EpsPoly, EpsPoly, EpsPoly], t2: tuple[EpsPoly, EpsPoly, EpsPoly]
) -> int:
    """0 if not proportional; otherwise the sign of the common factor."""
    for i in range(3):
        for j in range(i + 1, 3):
            if not (t1[i] * t2[j] - t1[j] * t2[i]).is_zero():
                return 0
    for a, b in zip(t1, t2):
        sa, sb = a.sign(), b.sign()
        if sa or sb:
            if sa == 0 or sb == 0:
                return 0
            return sa * sb
    return 0  # both triples are identically zero


def wall_of(w1: MukaiVector, w2: MukaiVector, path: PolarizationPath) -> NumericalWall:
    """Numerical wall where the charges of w1 and w2 align.

    Collecting Re Z(w1)*ImCoeff(w2) - Re Z(w2)*ImCoeff(w1) = 0 in the plane
    coordinates gives alpha*(s^2+t^2) + beta*s + gamma with
    alpha = A1*B2 - A2*B1, beta = 2*(C2*A1 - C1*A2), gamma = C1*B2 - C2*B1,
    where A = r*H_eps^2/2, B = D.H_eps, C = -a for each vector.
    """
    if w1.is_proportional_to(w2):
        raise DegenerateWallError("proportional Mukai vectors define no wall")
    h2e = path.h_eps_sq()
    a1 = Fraction(w1.rank, 2) * h2e
    a2 = Fraction(w2.rank, 2) * h2e
    b1 = path.dot_h_eps(w1.divisor)
    b2 = path.dot_h_eps(w2.divisor)
    c1 = EpsPoly.const(-w1.degree)
    c2 = EpsPoly.const(-w2.degree)
    alpha = a1 * b2 - a2 * b1
    beta = 2 * (c2 * a1 - c1 * a2)
    gamma = c1 * b2 - c2 * b1
    if alpha.is_zero() and beta.is_zero() and gamma.is_zero():
        raise DegenerateWallError("charges are everywhere aligned; no wall")
    return NumericalWall(alpha, beta, gamma, provenance=(w1, w2))


def pivotal_wall(inst: ProblemInstance, path: PolarizationPath | None = None) -> NumericalWall:
    """W_{-1} = W(u, t_{-1}), the wall all case analyses are measured against."""
    path = path or PolarizationPath(inst)
    return wall_of(inst.u(), inst.t(-1), path)


@dataclass(frozen=True)
class SigmaU:
    """The degeneration point of u: the extended charge Z(u) vanishes here,
    so the closure of every numerical wall of u passes through it."""

    s: EpsRational
    t_sq: EpsRational

    @classmethod
    def of(cls, inst: ProblemInstance, path: PolarizationPath | None = None) -> "SigmaU":
        path = path or PolarizationPath(inst)
        h2e = EpsRational(path.h_eps_sq())
        s = EpsRational(EpsPoly.const(inst.d * path.h2)) / (inst.r * h2e)
        t_sq = EpsRational(EpsPoly.const(2 * inst.a)) / (inst.r * h2e) - s * s
        return cls(s, t_sq)


def slope_at_sigma_u(m: int, path: PolarizationPath) -> EpsRational:
    """dW_m/ds at the degeneration point, with the positive factor 1/t cleared:
    (r*m*H_eps^2 - 2*eps*d*H^2) / (2*eps*r*H_eps^2)."""
    inst = path.instance
    h2e = path.h_eps_sq()
    num = Fraction(inst.r * m) * h2e - EpsPoly({(1, 0): 2 * inst.d * path.h2})
    den = EpsPoly({(1, 0): 2 * inst.r}) * h2e
    return EpsRational(num, den)


def phase_compare(z1: Charge, z2: Charge, t_sq: EpsRational) -> int:
    """Order of phases in (0, 1]: -1 if phi(z1) < phi(z2), 0 if equal, +1 if greater.

    For charges with Im > 0 the order is the sign of Re(z2)*Im(z1) -
    Re(z1)*Im(z2); the ray Im = 0, Re < 0 has the maximal phase 1.
    """
    results = []
    for z in (z1, z2):
        re = z.re_at(t_sq)
        im_sign = z.im_coeff.sign()
        re_sign = re.sign()
        if im_sign == 0 and re_sign == 0:
            raise ChargeVanishesError("central charge vanishes at the evaluation point")
        if im_sign < 0 or (im_sign == 0 and re_sign > 0):
            raise ChargeVanishesError("charge leaves the closed upper half-plane cut along R>0")
        results.append((re, im_sign))
    (re1, im1), (re2, im2) = results
    on_ray1 = im1 == 0
    on_ray2 = im2 == 0
    if on_ray1 and on_ray2:
        return 0
    if on_ray1:
        return 1
    if on_ray2:
        return -1
    diff = re2 * z1.im_coeff - re1 * z2.im_coeff
    return diff.sign()


class LimitPhase(enum.Enum):
    """Phase class as t -> infinity (and eps -> 0) on a vertical line."""

    POSITIVE_RANK_ZERO = "positive-rank: phase -> 0"
    TORSION_HALF = "torsion (0,L,0): phase -> 1/2"
    TORSION_ONE = "torsion (0,L,m>0): phase -> 1"


def limit_phase_class(v: MukaiVector) -> LimitPhase:
    if v.rank > 0:
        return LimitPhase.POSITIVE_RANK_ZERO
    if v.rank == 0 and v.divisor.k1 == 0 and v.divisor.e1 == 2:
        if v.degree == 0:
            return LimitPhase.TORSION_HALF
        if v.degree > 0:
            return LimitPhase.TORSION_ONE
    raise ValueError(f"unsupported shape for limit phase: {v}")
