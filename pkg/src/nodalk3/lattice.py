"""Exact arithmetic in the rank-2 Neron-Severi lattice ZH + ZL and the
algebraic Mukai lattice built on it.

The ambient surface is the resolution of a one-node K3: H is the pullback of
the ample generator downstairs, L the exceptional (-2)-curve, with H.H = h2,
H.L = 0, L.L = -2.  When the node's half-integral Weil classes are Cartier-2
(class group strictly larger than the Picard group), the lattice is the
index-2 overlattice generated by classes (k1*H + e1*L)/2 with k1 = e1 mod 2;
divisor coordinates are therefore stored doubled, which makes the parity
constraint structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class LatticeError(ValueError):
    """Construction or pairing data violates a lattice invariant."""


@dataclass(frozen=True)
class NSLattice:
    """Intersection data of ZH + ZL, plus the class-group flag.

    ``class_group_nontrivial`` is True iff Cl(X) != Pic(X); in that case
    half-integral divisor classes exist, which forces h_squared = 2 (mod 8)
    (evenness of the overlattice).
    """

    h_squared: int
    class_group_nontrivial: bool = False

    def __post_init__(self):
        if self.h_squared <= 0 or self.h_squared % 2 != 0:
            raise LatticeError(f"H^2 must be a positive even integer, got {self.h_squared}")
        if self.class_group_nontrivial and self.h_squared % 8 != 2:
            raise LatticeError(
                f"half-integral classes require H^2 = 2 (mod 8), got H^2 = {self.h_squared}"
            )


@dataclass(frozen=True)
class DivisorClass:
    """The class (k1*H + e1*L)/2 in doubled coordinates."""

    k1: int
    e1: int
    lattice: NSLattice

    def __post_init__(self):
        if (self.k1 - self.e1) % 2 != 0:
            raise LatticeError(f"doubled coordinates must share parity: ({self.k1}, {self.e1})")
        if not self.lattice.class_group_nontrivial and (self.k1 % 2 or self.e1 % 2):
            raise LatticeError(
                "half-integral class in a lattice with trivial class group: "
                f"({self.k1}, {self.e1})"
            )
        si = self.self_intersection()
        # K3 Neron-Severi lattices are even; guaranteed by the mod-8 gate.
        assert si.denominator == 1 and si.numerator % 2 == 0, si

    def self_intersection(self) -> Fraction:
        return intersect(self, self)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self.lattice != other.lattice:
            raise LatticeError("divisor classes live in different lattices")
        return DivisorClass(self.k1 + other.k1, self.e1 + other.e1, self.lattice)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.k1, -self.e1, self.lattice)


def intersect(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number via the Gram matrix H.H = h2, H.L = 0, L.L = -2."""
    if d1.lattice != d2.lattice:
        raise LatticeError("cannot intersect classes from different lattices")
    h2 = d1.lattice.h_squared
    return Fraction(d1.k1 * d2.k1 * h2 - 2 * d1.e1 * d2.e1, 4)


@dataclass(frozen=True)
class MukaiVector:
    """Triple (rank, first Chern class, degree) in H^0 + NS + H^4."""

    rank: int
    divisor: DivisorClass
    degree: int

    @property
    def lattice(self) -> NSLattice:
        return self.divisor.lattice

    def square(self) -> Fraction:
        return mukai_pair(self, self)

    def is_spherical(self) -> bool:
        return self.square() == -2

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.rank + other.rank, self.divisor + other.divisor, self.degree + other.degree)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return self + (-other)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.rank, -self.divisor, -self.degree)

    def is_proportional_to(self, other: "MukaiVector") -> bool:
        """True iff the two vectors are parallel over Q (degenerate wall test)."""
        a = (self.rank, self.divisor.k1, self.divisor.e1, self.degree)
        b = (other.rank, other.divisor.k1, other.divisor.e1, other.degree)
        for i in range(4):
            for j in range(i + 1, 4):
                if a[i] * b[j] != a[j] * b[i]:
                    return False
        return True


def mukai_pair(v: MukaiVector, w: MukaiVector) -> Fraction:
    """Mukai pairing <(r,D,a),(r',D',a')> = D.D' - r*a' - r'*a."""
    return intersect(v.divisor, w.divisor) - v.rank * w.degree - w.rank * v.degree


def euler_char(v: MukaiVector, w: MukaiVector) -> Fraction:
    """chi(E, F) = -<v(E), v(F)>."""
    return -mukai_pair(v, w)


def twist_by_line(v: MukaiVector) -> MukaiVector:
    """Tensor by O(L) on the Mukai level: (r, D, a) -> (r, D + rL, a + D.L - r)."""
    d_dot_l = -v.divisor.e1  # D.L = e1 * L^2 / 2
    new_div = DivisorClass(v.divisor.k1, v.divisor.e1 + 2 * v.rank, v.lattice)
    return MukaiVector(v.rank, new_div, v.degree + d_dot_l - v.rank)


@dataclass(frozen=True)
class ProblemInstance:
    """A spherical class (r, dH, a) on a lattice; the input to the classifier."""

    lattice: NSLattice
    r: int
    d: int
    a: int

    def __post_init__(self):
        if self.r < 1:
            raise LatticeError(f"rank must be positive, got {self.r}")
        if self.d * self.d * self.lattice.h_squared - 2 * self.r * self.a != -2:
            raise LatticeError("d^2*H^2 - 2*r*a != -2")
        # Sphericality forces coprimality: d^2*H^2/2 - r*a = -1.
        assert math.gcd(self.r, self.d) == 1

    def divisor(self, k1: int, e1: int) -> DivisorClass:
        return DivisorClass(k1, e1, self.lattice)

    def u(self) -> MukaiVector:
        """(r, dH, a): the class of the bundle on the resolution."""
        return MukaiVector(self.r, self.divisor(2 * self.d, 0), self.a)

    def v(self) -> MukaiVector:
        """(r, dH + rL, a - r): the twist of u by O(L)."""
        return twist_by_line(self.u())

    def t(self, m: int) -> MukaiVector:
        """(0, L, m): the class of the torsion sheaf O_L(m-1)."""
        return MukaiVector(0, self.divisor(0, 2), m)


def pell_solutions(r: int, bound: int) -> list[tuple[int, int]]:
    """All (x, y) with |x|, |y| <= bound and x^2 - r*x*y + y^2 = 1.

    The form is the Gram matrix of the sublattice spanned by u and t_{-1}
    (u^2 = t_{-1}^2 = -2, u.t_{-1} = r); solutions parameterize spherical
    classes x*u + y*t_{-1}.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if x * x - r * x * y + y * y == 1:
                out.append((x, y))
    return sorted(out)


def is_minimal_pell_pair(r: int) -> bool:
    """True iff (1,0) and (0,1) minimize x+y among nonzero nonnegative solutions.

    Brute force over |x|, |y| <= max(50, 5r): positive solutions of the form
    grow geometrically, so a non-minimal small solution would land well inside
    this window.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    bound = max(50, 5 * r)
    for x, y in pell_solutions(r, bound):
        if x >= 0 and y >= 0 and (x, y) not in ((1, 0), (0, 1)):
            if x + y <= 1:
                return False
    return True
