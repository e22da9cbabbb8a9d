"""Splitting-type calculus on the exceptional (-2)-curve.

A bundle restricted to the rational curve L splits as a direct sum of line
bundles O_L(a_1) + ... + O_L(a_r).  When c1 is a multiple of H the
multidegrees sum to zero, and the bundle is pulled back from the nodal
surface exactly when the restriction is trivial; this is detected by a pure
Hom-dimension count, with no sheaf theory left over.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SplittingError(ValueError):
    """The splitting type does not meet a criterion's precondition."""


@dataclass(frozen=True)
class SplittingType:
    """Multidegrees (a_1 >= ... >= a_r) of a bundle restricted to L."""

    parts: tuple[int, ...] = field()

    def __init__(self, parts):
        parts = tuple(sorted(parts, reverse=True))
        if not parts:
            raise SplittingError("a splitting type needs at least one part")
        object.__setattr__(self, "parts", parts)

    @property
    def rank(self) -> int:
        return len(self.parts)

    def is_zero_sum(self) -> bool:
        return sum(self.parts) == 0


def hom_dim_on_l(source: SplittingType, twist: int) -> int:
    """dim Hom_L(+O(a_j), +O(a_i + twist)) = sum max(0, a_i + twist - a_j + 1).

    On a rational curve hom(O(b), O(c)) = max(0, c - b + 1); the total is the
    sum over all ordered (source, target) pairs.
    """
    return sum(
        max(0, (a_i + twist) - a_j + 1)
        for a_i in source.parts
        for a_j in source.parts
    )


def descends(s: SplittingType) -> bool:
    """True iff the restriction to L is trivial, so the bundle is a pullback."""
    if not s.is_zero_sum():
        raise SplittingError("criterion requires c_1.L = 0")
    return all(a == 0 for a in s.parts)


def hom_criterion_agrees(s: SplittingType) -> bool:
    """Descent holds iff the twisted self-Hom count Hom(E, E(L)) has no excess:
    descends(s) == (hom_dim_on_l(s, -2) == 0).  Always true for zero-sum s."""
    if not s.is_zero_sum():
        raise SplittingError("criterion requires c_1.L = 0")
    return descends(s) == (hom_dim_on_l(s, -2) == 0)
