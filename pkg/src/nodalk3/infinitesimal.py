"""Exact arithmetic in two formal positive infinitesimals.

Every asymptotic inequality in the classification is decided in the ordered
ring Q[eps, epsp] where 0 < epsp << eps << 1.  The ordering is the iterated
limit epsp -> 0+ first, then eps -> 0+: any positive power of epsp is smaller
than every positive power of eps, and constants dominate both.  Exactly two
infinitesimal levels are supported; the analysis never nests a third.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]
Monomial = Tuple[int, int]  # (power of eps, power of epsp)


class ZeroDenominatorError(ZeroDivisionError):
    """Division by a quantity whose sign under the ordering is zero."""


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class EpsPoly:
    """Polynomial sum(c_ij * eps^i * epsp^j) with exact rational coefficients.

    Canonical form: no zero coefficients are stored.  Instances are immutable
    and hashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent in EpsPoly monomial")
            c = _as_fraction(c)
            if c:
                key = (int(i), int(j))
                acc = clean.get(key, Fraction(0)) + c
                if acc:
                    clean[key] = acc
                elif key in clean:
                    del clean[key]
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "EpsPoly":
        return cls({(0, 0): c})

    @classmethod
    def eps(cls) -> "EpsPoly":
        return cls({(1, 0): 1})

    @classmethod
    def epsp(cls) -> "EpsPoly":
        return cls({(0, 1): 1})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def sign(self) -> int:
        """Sign under 0 < epsp << eps << 1.

        The dominant monomial minimizes (j, i) lexicographically: constants
        beat eps-powers, which beat anything carrying epsp.
        """
        if not self._terms:
            return 0
        i, j = min(self._terms, key=lambda key: (key[1], key[0]))
        c = self._terms[(i, j)]
        return 1 if c > 0 else -1

    def instantiate(self, eps_val: Scalar, epsp_val: Scalar) -> Fraction:
        """Exact evaluation at concrete rational values of eps, epsp."""
        e = _as_fraction(eps_val)
        ep = _as_fraction(epsp_val)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * e**i * ep**j
        return total

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=0)

    def _shift_down(self, di: int, dj: int) -> "EpsPoly":
        p = EpsPoly.__new__(EpsPoly)
        p._terms = {(i - di, j - dj): c for (i, j), c in self._terms.items()}
        return p

    def _scaled(self, factor: Fraction) -> "EpsPoly":
        p = EpsPoly.__new__(EpsPoly)
        p._terms = {key: c * factor for key, c in self._terms.items()}
        return p

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "EpsPoly | None":
        if isinstance(other, EpsPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return EpsPoly.const(other)
        return None

    def __add__(self, other) -> "EpsPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for key, c in o._terms.items():
            acc = out.get(key, Fraction(0)) + c
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        p = EpsPoly.__new__(EpsPoly)
        p._terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "EpsPoly":
        p = EpsPoly.__new__(EpsPoly)
        p._terms = {key: -c for key, c in self._terms.items()}
        return p

    def __sub__(self, other) -> "EpsPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "EpsPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "EpsPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in o._terms.items():
                key = (i1 + i2, j1 + j2)
                acc = out.get(key, Fraction(0)) + c1 * c2
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        p = EpsPoly.__new__(EpsPoly)
        p._terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "EpsPoly":
        if n < 0:
            raise ValueError("negative power of an EpsPoly")
        out = EpsPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j) in sorted(self._terms, key=lambda key: (key[1], key[0])):
            c = self._terms[(i, j)]
            mono = "*".join(
                ["eps" if i == 1 else f"eps^{i}"] * (i > 0) + ["eps'" if j == 1 else f"eps'^{j}"] * (j > 0)
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = EpsPoly()
ONE = EpsPoly.const(1)
EPS = EpsPoly.eps()
EPSP = EpsPoly.epsp()


def _common_content(p: EpsPoly, q: EpsPoly) -> Fraction:
    """Positive rational gcd of all coefficients of p and q."""
    num_gcd = 0
    den_lcm = 1
    for poly in (p, q):
        for c in poly._terms.values():
            num_gcd = math.gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        return Fraction(1)
    return Fraction(num_gcd, den_lcm)


class EpsRational:
    """Ratio of two EpsPolys with sign-definite denominator.

    The denominator is normalized to have sign +1.  Common monomial factors
    and the rational content are cancelled to keep sizes bounded; full
    polynomial reduction is not attempted.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        if not isinstance(num, EpsPoly):
            num = EpsPoly.const(num)
        if not isinstance(den, EpsPoly):
            den = EpsPoly.const(den)
        s = den.sign()
        if s == 0:
            raise ZeroDenominatorError("denominator has zero sign under the infinitesimal ordering")
        if s < 0:
            num, den = -num, -den
        if num._terms:
            keys = list(num._terms) + list(den._terms)
            di = min(i for i, _ in keys)
            dj = min(j for _, j in keys)
            if di or dj:
                num = num._shift_down(di, dj)
                den = den._shift_down(di, dj)
            content = _common_content(num, den)
            if content != 1:
                num = num._scaled(1 / content)
                den = den._scaled(1 / content)
        else:
            den = ONE
        self.num = num
        self.den = den

    def sign(self) -> int:
        return self.num.sign()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def instantiate(self, eps_val: Scalar, epsp_val: Scalar) -> Fraction:
        d = self.den.instantiate(eps_val, epsp_val)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the instantiation point")
        return self.num.instantiate(eps_val, epsp_val) / d

    def _coerce(self, other) -> "EpsRational | None":
        if isinstance(other, EpsRational):
            return other
        if isinstance(other, (int, Fraction, EpsPoly)):
            return EpsRational(other)
        return None

    def __add__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return EpsRational(self.num + o.num, self.den)
        return EpsRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "EpsRational":
        return EpsRational(-self.num, self.den)

    def __sub__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EpsRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EpsRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "EpsRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("EpsRational is not hashable (no canonical form)")

    def __repr__(self) -> str:
        if self.den == ONE:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def compare(p: "EpsRational | EpsPoly | Scalar", q: "EpsRational | EpsPoly | Scalar") -> int:
    """Total order on EpsRationals: -1 if p < q, 0 if equal, +1 if p > q."""
    if not isinstance(p, EpsRational):
        p = EpsRational(p)
    if not isinstance(q, EpsRational):
        q = EpsRational(q)
    # Denominators are positive-normalized, so cross-multiplication preserves order.
    return (p.num * q.den - q.num * p.den).sign()
