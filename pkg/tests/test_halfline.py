import math

import numpy as np
import pytest
from scipy.integrate import quad

from pointspec import (
    INFINITE_LENGTH,
    ConstraintError,
    bound_state,
    halfline_current,
    halfline_image_kernel,
    reflection_coefficient,
    robin_heat_kernel,
    scattering_state,
    scattering_state_dx,
    spectral_kernel_by_quadrature,
    wall_from_angle,
    wall_from_length,
)

RNG = np.random.default_rng(20240815)


class TestWallParam:
    def test_from_length_angle_roundtrip(self):
        w = wall_from_length(2.5, L0=1.0)
        assert w.L == 2.5
        w2 = wall_from_angle(w.phi, 1.0)
        assert w2.L == pytest.approx(2.5, rel=1e-12)

    def test_dirichlet_angle(self):
        assert wall_from_angle(math.pi / 2).L == 0.0

    def test_neumann_is_tagged(self):
        assert wall_from_angle(0.0).L is INFINITE_LENGTH
        assert wall_from_length(float("inf")).L is INFINITE_LENGTH

    def test_inconsistent_rejected(self):
        from pointspec import WallParam

        with pytest.raises(ConstraintError):
            WallParam(2.0, 0.3, 1.0)


class TestReflection:
    def test_dirichlet_sign(self):
        # the wall condition psi(0) + L psi'(0) = 0 at L = 0 forces R = -1,
        # which is the sign implemented (the unreflected sign is Neumann's)
        w = wall_from_length(0.0)
        assert reflection_coefficient(w, 1.7) == pytest.approx(-1.0)

    def test_neumann_sign(self):
        w = wall_from_length(INFINITE_LENGTH)
        assert reflection_coefficient(w, 0.3) == pytest.approx(1.0)
        x = np.linspace(0, 3, 7)
        psi = scattering_state(w, 2.0, x)
        ref = 2 * np.cos(2.0 * x) / math.sqrt(2 * math.pi)
        assert np.max(np.abs(psi - ref)) < 1e-14

    def test_large_L_approaches_neumann(self):
        w = wall_from_length(1e8)
        assert reflection_coefficient(w, 1.0) == pytest.approx(1.0, abs=1e-7)

    def test_unimodular_everywhere(self):
        for _ in range(1000):
            L = float(np.tan(RNG.uniform(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3)))
            k = float(RNG.uniform(1e-3, 50.0))
            r = reflection_coefficient(wall_from_length(L), k)
            assert abs(abs(r) - 1.0) < 1e-12

    def test_wall_condition_satisfied(self):
        for _ in range(100):
            L = float(RNG.uniform(-3, 3))
            k = float(RNG.uniform(0.1, 10.0))
            w = wall_from_length(L)
            v = scattering_state(w, k, 0.0)
            d = scattering_state_dx(w, k, 0.0)
            assert abs(v + L * d) < 1e-12


class TestBoundState:
    def test_unit_L(self):
        w = wall_from_length(1.0)
        energy, psi = bound_state(w)
        assert energy == -0.5
        val, _ = quad(lambda x: abs(psi(x)) ** 2, 0, 60)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_scaling(self):
        w = wall_from_length(2.0)
        energy, _ = bound_state(w, hbar=1.0, mass=1.0)
        assert energy == pytest.approx(-1.0 / 8.0)

    def test_wall_condition_exact(self):
        w = wall_from_length(0.7)
        _, psi = bound_state(w)
        h = 1e-7
        d0 = (psi(h) - psi(0.0)) / h
        assert abs(psi(0.0) + 0.7 * d0) < 1e-5

    def test_absent_for_neumann(self):
        with pytest.raises(ConstraintError):
            bound_state(wall_from_length(INFINITE_LENGTH))

    def test_absent_for_dirichlet(self):
        with pytest.raises(ConstraintError):
            bound_state(wall_from_length(0.0))

    def test_absent_for_negative(self):
        with pytest.raises(ConstraintError):
            bound_state(wall_from_length(-1.0))


class TestCurrent:
    def test_real_data_zero(self):
        assert halfline_current(1.3, -0.4) == 0.0

    def test_plane_wave(self):
        k, x = 2.0, 0.9
        psi = np.exp(1j * k * x)
        dpsi = 1j * k * psi
        assert halfline_current(psi, dpsi) == pytest.approx(k)

    def test_scattering_state_blocks_current(self):
        w = wall_from_length(3.0)
        v = scattering_state(w, 2.0, 0.0)
        d = scattering_state_dx(w, 2.0, 0.0)
        assert abs(halfline_current(v, d)) < 1e-12

    def test_current_zero_everywhere_not_just_wall(self):
        w = wall_from_length(-1.2)
        for x in (0.0, 0.7, 2.5):
            v = scattering_state(w, 1.1, x)
            d = scattering_state_dx(w, 1.1, x)
            assert abs(halfline_current(v, d)) < 1e-12


class TestSectorOrthogonality:
    def test_bound_scattering_overlap_decays(self):
        L = 0.8
        w = wall_from_length(L)
        _, psi_b = bound_state(w)
        k = 2.3
        X = 50 * L
        period = 2 * math.pi / k

        def overlap(upper):
            re, _ = quad(
                lambda x: (np.conj(psi_b(x)) * scattering_state(w, k, x)).real,
                0,
                upper,
                limit=300,
            )
            im, _ = quad(
                lambda x: (np.conj(psi_b(x)) * scattering_state(w, k, x)).imag,
                0,
                upper,
                limit=300,
            )
            return complex(re, im)

        # average over one oscillation period to damp the free tail
        samples = [overlap(X + t) for t in np.linspace(0, period, 9)]
        assert abs(np.mean(samples)) < 1e-3


class TestKernels:
    def test_scale_free_walls_match_quadrature(self):
        for case, L in (("dirichlet", 0.0), ("neumann", INFINITE_LENGTH)):
            w = wall_from_length(L)
            for a, b, tau in [(0.3, 0.9, 0.4), (0.05, 0.4, 0.15), (1.2, 1.2, 1.0)]:
                direct = spectral_kernel_by_quadrature(w, a, b, tau)
                image = halfline_image_kernel(case, a, b, tau)
                assert abs(direct - image) < 1e-6

    def test_generic_wall_closed_form(self):
        # spectral integral + bound-state term against the erfcx closed form
        for L, a, b, tau in [(1.0, 0.4, 0.9, 0.6), (0.7, 1.3, 0.2, 0.3), (2.2, 0.1, 0.5, 1.1)]:
            w = wall_from_length(L)
            direct = spectral_kernel_by_quadrature(w, a, b, tau)
            closed = robin_heat_kernel(w, a, b, tau)
            assert abs(direct - closed) < 1e-4

    def test_repulsive_wall_closed_form(self):
        for L, a, b, tau in [(-1.0, 0.4, 0.9, 0.6), (-0.5, 1.2, 0.3, 0.25)]:
            w = wall_from_length(L)
            direct = spectral_kernel_by_quadrature(w, a, b, tau)
            closed = robin_heat_kernel(w, a, b, tau)
            assert abs(direct - closed) < 1e-4

    def test_closed_form_reduces_to_images(self):
        tau = 0.37
        for case, L in (("dirichlet", 0.0), ("neumann", INFINITE_LENGTH)):
            w = wall_from_length(L)
            assert robin_heat_kernel(w, 0.3, 0.8, tau) == pytest.approx(
                halfline_image_kernel(case, 0.3, 0.8, tau), rel=1e-14
            )

    def test_bound_state_dominates_long_time(self):
        L = 1.0
        w = wall_from_length(L)
        tau = 25.0
        energy, psi_b = bound_state(w)
        a, b = 0.3, 0.7
        expected = math.exp(-energy * tau) * (psi_b(b) * np.conj(psi_b(a))).real
        assert robin_heat_kernel(w, a, b, tau) == pytest.approx(expected, rel=1e-8)
