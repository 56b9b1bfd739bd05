import cmath
import math

import pytest

from coaxmode import (AnnulusGeometry, CylinderGeometry, FieldPoint, ModeAmplitude,
                      ModeIndex, bessel_j, boundary_residual, ez_mode,
                      helmholtz_residual, orthogonality_check, radial_solution,
                      superpose, transverse_fields)
from coaxmode.fields import ZERO_SAMPLE
from coaxmode.errors import DomainError

import oracles

CYL = CylinderGeometry(b=1.0, l=1.0)
ANN = AnnulusGeometry(a=1.0, b=2.0, l=1.0)


def radial_max(sol, lo, hi, samples=200):
    return max(abs(sol.value(lo + (hi - lo) * i / (samples - 1)))
               for i in range(samples))


class TestRadialSolution:
    def test_cylinder_has_no_neumann_part(self):
        sol = radial_solution(CYL, 1, 2)
        assert sol.coeff_n == 0.0
        assert sol.coeff_j == 1.0
        assert abs(sol.value(CYL.b)) <= 1e-12

    def test_annulus_vanishes_on_both_walls(self):
        for m, n in ((0, 1), (1, 2), (3, 4)):
            sol = radial_solution(ANN, m, n)
            peak = radial_max(sol, ANN.a, ANN.b)
            assert abs(sol.value(ANN.a)) <= 1e-10 * peak
            assert abs(sol.value(ANN.b)) <= 1e-10 * peak

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_interior_node_count(self, n):
        # Sturm oscillation: mode n has exactly n-1 sign changes inside
        for geom, lo in ((CYL, 0.0), (ANN, ANN.a)):
            sol = radial_solution(geom, 0, n)
            xs = [lo + (geom.b - lo) * i / 400 for i in range(1, 400)]
            vals = [sol.value(x) for x in xs]
            flips = sum(1 for u, v in zip(vals, vals[1:]) if u * v < 0)
            assert flips == n - 1, (type(geom).__name__, n)


class TestEzMode:
    def test_wall_value_is_tiny(self):
        sol = radial_solution(CYL, 1, 1)
        peak = radial_max(sol, 0.0, CYL.b)
        v = ez_mode(CYL, ModeIndex(1, 1, 1), 1, 2.0, FieldPoint(CYL.b, 0.4, 0.3))
        assert abs(v) <= 1e-10 * 2.0 * peak

    def test_axis_value_for_symmetric_mode(self):
        v = ez_mode(CYL, ModeIndex(0, 1, 0), 1, 1.0, FieldPoint(0.0, 1.2, 0.77))
        assert v == 1.0 + 0.0j  # J_0(0) = 1, p = 0

    def test_componentwise_product(self):
        point = FieldPoint(0.5, math.pi / 3, 0.25)
        got = ez_mode(CYL, ModeIndex(1, 1, 1), 1, 1.0, point)
        expected = (bessel_j(1, oracles.X11 * 0.5).value
                    * cmath.exp(1j * math.pi / 3) * math.cos(math.pi * 0.25))
        assert got == pytest.approx(expected, abs=1e-10)

    def test_phi_periodicity_bit_identical(self):
        idx = ModeIndex(2, 1, 1)
        for phi in (0.0, 1.0, 0.75, 2.5):
            a = ez_mode(CYL, idx, 1, 1.0, FieldPoint(0.5, phi, 0.3))
            b = ez_mode(CYL, idx, 1, 1.0, FieldPoint(0.5, phi + 2.0 * math.pi, 0.3))
            assert a == b

    def test_rejects_outside_points(self):
        with pytest.raises(DomainError):
            ez_mode(CYL, ModeIndex(0, 1, 0), 1, 1.0, FieldPoint(1.5, 0.0, 0.5))
        with pytest.raises(DomainError):
            ez_mode(CYL, ModeIndex(0, 1, 0), 1, 1.0, FieldPoint(0.5, 0.0, -0.1))
        with pytest.raises(DomainError):
            ez_mode(ANN, ModeIndex(0, 1, 0), 1, 1.0, FieldPoint(0.5, 0.0, 0.5))

    def test_rejects_bad_sign(self):
        with pytest.raises(DomainError):
            ez_mode(CYL, ModeIndex(0, 1, 0), 2, 1.0, FieldPoint(0.5, 0.0, 0.5))


class TestTransverseFields:
    def test_plates_kill_tangential_e(self):
        for z in (0.0,):
            s = transverse_fields(CYL, ModeIndex(1, 1, 2), 1, 1.0, FieldPoint(0.5, 0.3, z))
            assert s.e_rho == 0j and s.e_phi == 0j

    def test_p0_has_no_transverse_e(self):
        s = transverse_fields(ANN, ModeIndex(1, 1, 0), -1, 1.0, FieldPoint(1.5, 0.9, 0.42))
        assert s.e_rho == 0j and s.e_phi == 0j
        assert abs(s.b_phi) > 0.0

    def test_e_rho_against_mixed_finite_difference(self):
        # E_rho = (1/gamma^2) d^2 E_z / (d rho d z)
        idx = ModeIndex(0, 1, 1)
        gamma = radial_solution(CYL, 0, 1).gamma
        rho, phi, z = 0.43, 1.1, 0.37
        h = 1e-5
        def ez(r, zz):
            return ez_mode(CYL, idx, 1, 1.0, FieldPoint(r, phi, zz))
        mixed = (ez(rho + h, z + h) - ez(rho - h, z + h)
                 - ez(rho + h, z - h) + ez(rho - h, z - h)) / (4.0 * h * h)
        got = transverse_fields(CYL, idx, 1, 1.0, FieldPoint(rho, phi, z)).e_rho
        assert got == pytest.approx(mixed / gamma ** 2, rel=1e-6)

    def test_b_phi_against_radial_finite_difference(self):
        from coaxmode import C_LIGHT, tm_frequency
        idx = ModeIndex(1, 1, 1)
        entry = tm_frequency(ANN, idx)
        rho, phi, z = 1.37, 0.4, 0.61
        h = 1e-6
        d_rho = (ez_mode(ANN, idx, 1, 1.0, FieldPoint(rho + h, phi, z))
                 - ez_mode(ANN, idx, 1, 1.0, FieldPoint(rho - h, phi, z))) / (2.0 * h)
        expected = 1j * entry.omega / (C_LIGHT ** 2 * entry.gamma ** 2) * d_rho
        got = transverse_fields(ANN, idx, 1, 1.0, FieldPoint(rho, phi, z)).b_phi
        assert got == pytest.approx(expected, rel=1e-6)

    def test_axis_limits(self):
        # m = 1 keeps a finite azimuthal component on the axis; m >= 2 vanishes
        s1 = transverse_fields(CYL, ModeIndex(1, 1, 1), 1, 1.0, FieldPoint(0.0, 0.0, 0.3))
        gamma = radial_solution(CYL, 1, 1).gamma
        kz = math.pi
        expected = -1j * kz / gamma ** 2 * (0.5 * gamma) * math.sin(kz * 0.3)
        assert s1.e_phi == pytest.approx(expected, rel=1e-12)
        s2 = transverse_fields(CYL, ModeIndex(2, 1, 1), 1, 1.0, FieldPoint(0.0, 0.0, 0.3))
        assert s2 == ZERO_SAMPLE


class TestSuperpose:
    POINT = FieldPoint(1.4, 0.8, 0.6)

    def test_empty_set_is_zero(self):
        assert superpose(ANN, [], self.POINT) == ZERO_SAMPLE

    def test_single_mode_passthrough(self):
        term = ModeAmplitude(ModeIndex(1, 1, 1), -1, 0.3 + 0.1j)
        assert superpose(ANN, [term], self.POINT) == transverse_fields(
            ANN, term.index, term.sign, term.amplitude, self.POINT)

    def test_opposite_amplitudes_cancel(self):
        plus = ModeAmplitude(ModeIndex(2, 1, 1), 1, 1.0)
        minus = ModeAmplitude(ModeIndex(2, 1, 1), 1, -1.0)
        assert superpose(ANN, [plus, minus], self.POINT) == ZERO_SAMPLE


class TestRealBasis:
    def test_cos_orientation_is_real_for_real_amplitude(self):
        from coaxmode import real_basis
        idx = ModeIndex(2, 1, 0)
        point = FieldPoint(0.6, 0.9, 0.4)
        plus = transverse_fields(CYL, idx, 1, 1.0, point)
        minus = transverse_fields(CYL, idx, -1, 1.0, point)
        cos_s, sin_s = real_basis(plus, minus)
        sol = radial_solution(CYL, 2, 1)
        assert cos_s.e_z == pytest.approx(sol.value(0.6) * math.cos(2 * 0.9), rel=1e-12)
        assert sin_s.e_z == pytest.approx(sol.value(0.6) * math.sin(2 * 0.9), rel=1e-12)
        assert abs(cos_s.e_z.imag) < 1e-16
        # reassembling the pair returns the originals
        re_plus = cos_s + sin_s.scaled(1j)
        assert re_plus.e_z == pytest.approx(plus.e_z, rel=1e-12)


class TestOrthogonality:
    def test_diagonal_matches_closed_form(self):
        integral, expected = orthogonality_check(0, 1, 1, 1.0)
        assert expected == pytest.approx(
            0.5 * bessel_j(1, oracles.X01).value ** 2, rel=1e-12)
        assert integral == pytest.approx(expected, abs=1e-8)

    def test_off_diagonal_vanishes(self):
        integral, expected = orthogonality_check(0, 1, 2, 1.0)
        diag = 0.5 * bessel_j(1, oracles.X01).value ** 2
        assert expected == 0.0
        assert abs(integral) <= 1e-8 * diag

    def test_quadratic_scaling_in_radius(self):
        small, expected_small = orthogonality_check(1, 2, 2, 1.0)
        large, expected_large = orthogonality_check(1, 2, 2, 2.0)
        assert expected_large == 4.0 * expected_small
        assert large == pytest.approx(4.0 * small, rel=1e-7)

    def test_validation(self):
        with pytest.raises(DomainError):
            orthogonality_check(11, 1, 1, 1.0)
        with pytest.raises(DomainError):
            orthogonality_check(0, 21, 1, 1.0)
        with pytest.raises(DomainError):
            orthogonality_check(0, 1, 1, -1.0)


class TestBoundaryResidual:
    @pytest.mark.parametrize("geom,idx", [
        (CYL, ModeIndex(0, 1, 0)), (CYL, ModeIndex(1, 1, 1)),
        (ANN, ModeIndex(0, 1, 1)), (ANN, ModeIndex(2, 2, 1)),
    ])
    def test_eigenmodes_sit_on_walls(self, geom, idx):
        assert boundary_residual(geom, idx) <= 1e-10

    def test_detuned_gamma_is_loud(self):
        for geom, idx in ((CYL, ModeIndex(0, 1, 0)), (ANN, ModeIndex(1, 1, 1))):
            assert boundary_residual(geom, idx, gamma_scale=1.01) > 1e-3


class TestHelmholtz:
    @pytest.mark.parametrize("geom,idx", [
        (CYL, ModeIndex(1, 1, 1)), (ANN, ModeIndex(2, 1, 2)),
    ])
    def test_wave_equation_residual(self, geom, idx):
        assert helmholtz_residual(geom, idx, npoints=40) <= 1e-4
