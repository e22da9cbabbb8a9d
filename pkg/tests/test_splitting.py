"""Splitting types on the exceptional curve and the descent criterion."""

import itertools

import pytest

from nodalk3.splitting import (
    SplittingError,
    SplittingType,
    descends,
    hom_criterion_agrees,
    hom_dim_on_l,
)


class TestSplittingType:
    def test_parts_are_sorted_descending(self):
        s = SplittingType([-1, 2, 0])
        assert s.parts == (2, 0, -1)
        assert s.rank == 3

    def test_zero_sum(self):
        assert SplittingType([1, -1]).is_zero_sum()
        assert not SplittingType([1, 0]).is_zero_sum()

    def test_empty_rejected(self):
        with pytest.raises(SplittingError):
            SplittingType([])


class TestHomDim:
    def test_worked_value(self):
        assert hom_dim_on_l(SplittingType([2, -2]), -2) == 3

    def test_trivial_restriction_has_no_twisted_homs(self):
        for r in range(1, 5):
            assert hom_dim_on_l(SplittingType([0] * r), -2) == 0

    def test_untwisted_hom_counts_at_least_the_identity(self):
        for parts in ([1, -1], [0, 0], [3, 0, -3]):
            assert hom_dim_on_l(SplittingType(parts), 0) >= len(parts)


class TestDescent:
    def test_trivial_splitting_descends(self):
        assert descends(SplittingType([0, 0, 0]))

    def test_balanced_nontrivial_does_not(self):
        assert not descends(SplittingType([2, -2]))
        assert not descends(SplittingType([1, 0, -1]))

    def test_nonzero_sum_is_a_precondition_error(self):
        with pytest.raises(SplittingError, match="c_1.L = 0"):
            descends(SplittingType([1, 0]))
        with pytest.raises(SplittingError):
            hom_criterion_agrees(SplittingType([1]))

    def test_hom_criterion_agrees_small(self):
        for r in range(1, 4):
            for parts in itertools.product(range(-2, 3), repeat=r):
                if sum(parts) == 0:
                    assert hom_criterion_agrees(SplittingType(parts))
