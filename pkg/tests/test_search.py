"""Destabilizer candidate sweep: pinned verdicts and classification logic."""

from fractions import Fraction

import pytest

from nodalk3.lattice import NSLattice, ProblemInstance, mukai_pair
from nodalk3.search import (
    Candidate,
    Kind,
    Outcome,
    check_candidate_t,
    check_candidate_v,
    classify,
    classify_with_search,
    default_bounds,
    exclude_rank_zero,
    m_from_ke,
    search_all,
    vv_prime,
)

EMPTY_CASE = ProblemInstance(NSLattice(18, class_group_nontrivial=True), 2, 1, 5)
RANK3 = ProblemInstance(NSLattice(4), 3, 1, 1)


def for_v(inst, k1, e1):
    return Candidate(k1, e1, m_from_ke(k1, e1, inst), Kind.FOR_V)


class TestScalarFormulas:
    def test_m_from_ke_yields_spherical_vectors(self):
        for k1 in (-3, -1, 1, 2, 3, 4):
            for e1 in range(-4, 5):
                if (k1 - e1) % 2:
                    continue
                m = m_from_ke(k1, e1, EMPTY_CASE)
                if m.denominator != 1:
                    continue
                vec = EMPTY_CASE.u()  # rebuild by hand below
                from nodalk3.lattice import MukaiVector

                div = EMPTY_CASE.divisor(k1 * EMPTY_CASE.d, e1)
                rank2 = k1 * EMPTY_CASE.r
                if rank2 % 2:
                    continue
                vec = MukaiVector(rank2 // 2, div, int(m))
                assert vec.square() == -2

    def test_vv_prime_matches_pairing(self):
        for inst in (EMPTY_CASE, RANK3):
            for k1 in (-2, -1, 1, 2, 3, 4):
                for e1 in range(-3, 4):
                    expected = vv_prime(k1, e1, inst.r)
                    m = m_from_ke(k1, e1, inst)
                    if (k1 - e1) % 2 or m.denominator != 1 or (k1 * inst.r) % 2:
                        continue
                    from nodalk3.lattice import MukaiVector

                    vec = MukaiVector(
                        k1 * inst.r // 2, inst.divisor(k1 * inst.d, e1), int(m)
                    )
                    assert mukai_pair(inst.v(), vec) == expected

    def test_k1_zero_rejected(self):
        with pytest.raises(ValueError):
            m_from_ke(0, 2, EMPTY_CASE)
        with pytest.raises(ValueError):
            vv_prime(0, 2, 2)


class TestPinnedVerdicts:
    def test_survivors_of_the_empty_case(self):
        result = search_all(EMPTY_CASE, *default_bounds(EMPTY_CASE))
        assert result.survivor_triples() == [(1, 1, 3), (1, 3, 1)]
        assert result.for_u_survivors == []
        assert [(c.k1, c.e1) for c, _ in result.for_t_survivors] == [(-1, 1), (3, 1)]

    def test_rank3_case_has_no_survivors(self):
        result = search_all(RANK3, *default_bounds(RANK3))
        assert result.survivors == []
        assert result.for_u_survivors == []
        assert result.for_t_survivors == []

    def test_positive_pairing_rejection(self):
        assert vv_prime(4, 6, 3) == 2
        verdict = check_candidate_v(RANK3, for_v(RANK3, 4, 6))
        assert "pairing-sign: vv'=2" in verdict.failures

    def test_candidate_equal_to_v_sits_on_the_pivotal_wall(self):
        # k = 1, e = r gives v' = v
        for inst in (EMPTY_CASE, RANK3):
            verdict = check_candidate_v(inst, for_v(inst, 2, 2 * inst.r))
            assert "wall-position: W=W_{-1}" in verdict.failures

    def test_negative_rank_candidates_fall_below_the_pivotal_wall(self):
        verdict = check_candidate_v(EMPTY_CASE, for_v(EMPTY_CASE, -2, 4))
        assert any(f.startswith("wall-position") for f in verdict.failures)

    def test_rank_zero_exclusion_tags(self):
        assert exclude_rank_zero(EMPTY_CASE, -5).failures == ("pairing-sign: vv'=6",)
        assert exclude_rank_zero(EMPTY_CASE, -1).failures == ("wall-position: W=W_{-1}",)
        for m in (0, 1, 4):
            tags = exclude_rank_zero(EMPTY_CASE, m).tags()
            assert tags == ("limit-phase-contradiction",)

    def test_torsion_factor_checks(self):
        # g = (e1/2)t_{-1} + (k1/2)u must be spherical and effective
        good = Candidate(-1, 1, Fraction(-1, 2) * EMPTY_CASE.a - Fraction(1, 2), Kind.FOR_T)
        assert check_candidate_t(EMPTY_CASE, good).passed
        trivial = Candidate(2, 0, Fraction(EMPTY_CASE.a), Kind.FOR_T)
        verdict = check_candidate_t(EMPTY_CASE, trivial)
        assert not verdict.passed


class TestAudit:
    def test_audit_lists_every_candidate(self):
        result = search_all(EMPTY_CASE, 4, 4, audit=True)
        assert len(result.audit) > 0
        seen = {(c.k1, c.e1, c.kind) for c, _ in result.audit}
        assert (4, 4, Kind.FOR_V) in seen
        assert (1, 1, Kind.FOR_U) in seen
        # audit contains the survivors too
        passing = [(c.k1, c.e1) for c, v in result.audit if v.passed and c.kind is Kind.FOR_V]
        assert (1, 1) in passing and (1, 3) in passing

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            search_all(EMPTY_CASE, 0, 4)
        with pytest.raises(ValueError):
            search_all(EMPTY_CASE, 4, 0)


class TestClassification:
    def test_empty_exactly_for_rank_two_with_nontrivial_class_group(self):
        assert classify(EMPTY_CASE).outcome is Outcome.EMPTY
        assert classify(RANK3).outcome is Outcome.REDUCED_POINT_LOCALLY_FREE
        trivial_cl = ProblemInstance(NSLattice(18), 2, 1, 5)
        assert classify(trivial_cl).outcome is Outcome.REDUCED_POINT_LOCALLY_FREE

    def test_rank_one_shortcut(self):
        inst = ProblemInstance(NSLattice(4), 1, 1, 3)
        c = classify(inst, cross_check=False)
        assert c.outcome is Outcome.REDUCED_POINT_LOCALLY_FREE
        assert "rank 1" in c.reason

    def test_classification_and_sweep_agree(self):
        for inst in (EMPTY_CASE, RANK3):
            classification, result = classify_with_search(inst)
            assert (classification.outcome is Outcome.EMPTY) == bool(result.survivors)
