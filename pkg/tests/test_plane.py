"""Exact geometry of walls, lines and phases on the stability slice."""

from fractions import Fraction

import pytest

from nodalk3.infinitesimal import EpsRational, compare
from nodalk3.lattice import NSLattice, ProblemInstance
from nodalk3.plane import (
    DegenerateWallError,
    LimitPhase,
    PolarizationPath,
    SigmaU,
    VerticalLine,
    central_charge,
    effectivity_defect,
    limit_phase_class,
    phase_compare,
    pivotal_wall,
    proportional_triples,
    slope_at_sigma_u,
    wall_of,
)

INSTANCES = [
    ProblemInstance(NSLattice(18, class_group_nontrivial=True), 2, 1, 5),
    ProblemInstance(NSLattice(4), 3, 1, 1),
    ProblemInstance(NSLattice(10, class_group_nontrivial=True), 3, 1, 2),
    ProblemInstance(NSLattice(2), 5, 3, 2),
]


class TestWalls:
    @pytest.mark.parametrize("inst", INSTANCES)
    def test_every_wall_of_u_passes_through_sigma_u(self, inst):
        path = PolarizationPath(inst)
        sigma = SigmaU.of(inst, path)
        for m in range(-4, 5):
            wall = wall_of(inst.u(), inst.t(m), path)
            assert wall.contains(sigma.s, sigma.t_sq)

    @pytest.mark.parametrize("inst", INSTANCES)
    def test_wall_coefficients_closed_form(self, inst):
        # W(u, t_m): alpha = r*Q*eps, beta = -m*r*Q, gamma = m*d*H^2 - 2*a*eps
        from nodalk3.infinitesimal import EPS, EpsPoly

        path = PolarizationPath(inst)
        q = path.h_eps_sq()
        h2 = inst.lattice.h_squared
        for m in range(-3, 4):
            wall = wall_of(inst.u(), inst.t(m), path)
            expected = (
                inst.r * q * EPS,
                Fraction(-m * inst.r) * q,
                EpsPoly.const(m * inst.d * h2) - 2 * inst.a * EPS,
            )
            assert proportional_triples(wall.coefficients(), expected) == 1

    def test_proportional_vectors_define_no_wall(self):
        inst = INSTANCES[0]
        path = PolarizationPath(inst)
        with pytest.raises(DegenerateWallError):
            wall_of(inst.u(), inst.u(), path)

    @pytest.mark.parametrize("inst", INSTANCES)
    def test_pivotal_wall_meets_default_line(self, inst):
        path = PolarizationPath(inst)
        line = VerticalLine(path)
        t_sq = pivotal_wall(inst, path).height_sq(line.abscissa)
        assert t_sq is not None
        assert pivotal_wall(inst, path).contains(line.abscissa, t_sq)

    @pytest.mark.parametrize("inst", INSTANCES)
    def test_slope_at_sigma_u_increases_with_m(self, inst):
        path = PolarizationPath(inst)
        slopes = [slope_at_sigma_u(m, path) for m in range(-3, 4)]
        for lo, hi in zip(slopes, slopes[1:]):
            assert compare(lo, hi) == -1


class TestLineAndCharges:
    @pytest.mark.parametrize("inst", INSTANCES)
    def test_u_and_v_are_effective_on_default_line(self, inst):
        line = VerticalLine(PolarizationPath(inst))
        assert effectivity_defect(inst.u(), line).sign() == 1
        assert effectivity_defect(inst.v(), line).sign() == 1

    @pytest.mark.parametrize("inst", INSTANCES)
    def test_imaginary_part_of_u_is_positive_but_infinitesimal(self, inst):
        line = VerticalLine(PolarizationPath(inst))
        im = line.charge(inst.u()).im_coeff
        assert im.sign() == 1
        # vanishes as epsp -> 0: the line hugs the degeneration point of u
        assert compare(im, EpsRational(1, 10**6)) == -1

    def test_phase_compare_scale_invariant(self):
        inst = INSTANCES[1]
        line = VerticalLine(PolarizationPath(inst))
        t_sq = EpsRational(Fraction(1, 20))
        z1 = line.charge(inst.u())
        z2 = line.charge(inst.t(-1))
        from nodalk3.plane import Charge

        scaled = Charge(7 * z1.re_const, 7 * z1.re_tsq, 7 * z1.im_coeff)
        assert phase_compare(z1, z2, t_sq) == phase_compare(scaled, z2, t_sq)
        assert phase_compare(z1, z2, t_sq) == -phase_compare(z2, z1, t_sq)
        assert phase_compare(z1, z1, t_sq) == 0

    def test_central_charge_matches_defining_formula(self):
        inst = INSTANCES[1]
        path = PolarizationPath(inst)
        s = EpsRational(Fraction(1, 3))
        z = central_charge(inst.u(), s, path)
        q = EpsRational(path.h_eps_sq())
        b = EpsRational(path.dot_h_eps(inst.u().divisor))
        assert (z.re_const - (-inst.a - Fraction(inst.r, 2) * s * s * q + s * b)).is_zero()
        assert (z.re_tsq - Fraction(inst.r, 2) * q).is_zero()
        assert (z.im_coeff - (b - inst.r * s * q)).is_zero()


class TestLimitPhases:
    def test_classes(self):
        inst = INSTANCES[0]
        assert limit_phase_class(inst.u()) is LimitPhase.POSITIVE_RANK_ZERO
        assert limit_phase_class(inst.t(0)) is LimitPhase.TORSION_HALF
        assert limit_phase_class(inst.t(2)) is LimitPhase.TORSION_ONE
        with pytest.raises(ValueError):
            limit_phase_class(inst.t(-1))
