import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vectorvortex as vv

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class TestMakeGrid:
    def test_pitch_default_window(self):
        g = vv.make_grid(256, 5.0)
        assert g.pitch == 10.0 / 256
        assert g.pitch == pytest.approx(0.0391, abs=1e-4)

    def test_minimal_legal_grid(self):
        g = vv.make_grid(16, 3.0)
        assert g.n == 16 and g.extent == 3.0

    @pytest.mark.parametrize("n", [17, 15, 14, 0, -4])
    def test_bad_n_rejected(self, n):
        with pytest.raises(ValueError):
            vv.make_grid(n, 5.0)

    def test_non_integer_n_rejected(self):
        with pytest.raises(ValueError):
            vv.make_grid(256.0, 5.0)

    @pytest.mark.parametrize("extent", [2.9, 0.0, -1.0, math.nan])
    def test_bad_extent_rejected(self, extent):
        with pytest.raises(ValueError):
            vv.make_grid(256, extent)

    def test_axis_symmetric_no_origin_sample(self):
        g = vv.make_grid(64, 4.0)
        ax = g.axis()
        assert np.array_equal(ax, -ax[::-1])
        assert np.abs(ax).min() == pytest.approx(g.pitch / 2)


class TestScalarField:
    def test_shape_mismatch_rejected(self, grid64):
        with pytest.raises(ValueError):
            vv.ScalarField(grid64, np.zeros((4, 4), dtype=complex))

    def test_non_finite_rejected(self, grid64):
        amp = np.zeros((64, 64), dtype=complex)
        amp[0, 0] = math.nan
        with pytest.raises(ValueError):
            vv.ScalarField(grid64, amp)

    def test_immutable_and_decoupled_from_input(self, grid64):
        amp = np.ones((64, 64), dtype=complex)
        f = vv.ScalarField(grid64, amp)
        amp[0, 0] = 5.0
        assert f.amp[0, 0] == 1.0
        with pytest.raises(ValueError):
            f.amp[0, 0] = 2.0


class TestLgMode:
    def test_gaussian_is_centred_and_normalized(self, grid256):
        f = vv.lg_mode(grid256, 0, 1.0)
        assert vv.power(f) == pytest.approx(1.0, abs=1e-12)
        i, j = np.unravel_index(np.argmax(np.abs(f.amp)), f.amp.shape)
        assert i in (127, 128) and j in (127, 128)

    def test_order2_is_dark_centred_donut(self, grid256):
        f = vv.lg_mode(grid256, 2, 1.0)
        c = grid256.n // 2
        centre = np.abs(f.amp[c - 1 : c + 1, c - 1 : c + 1]).max()
        assert centre < 0.01 * np.abs(f.amp).max()

    def test_order2_phase_winds_two_turns(self, grid256):
        f = vv.lg_mode(grid256, 2, 1.0)
        n = grid256.n
        centre = (n - 1) / 2.0
        angles = 2.0 * np.pi * np.arange(720) / 720
        r_pix = 1.0 / grid256.pitch
        rows = np.round(centre + r_pix * np.sin(angles)).astype(int)
        cols = np.round(centre + r_pix * np.cos(angles)).astype(int)
        phase = np.angle(f.amp[rows, cols])
        steps = np.diff(np.concatenate([phase, phase[:1]]))
        winding = np.sum(np.angle(np.exp(1j * steps))) / (2.0 * np.pi)
        assert winding == pytest.approx(2.0, abs=1e-9)

    def test_opposite_order_is_conjugate(self, grid256):
        plus = vv.lg_mode(grid256, 2, 1.0)
        minus = vv.lg_mode(grid256, -2, 1.0)
        assert np.allclose(np.abs(minus.amp), np.abs(plus.amp), atol=1e-15)
        assert np.allclose(minus.amp, np.conj(plus.amp), atol=1e-14)

    def test_bad_arguments(self, grid64):
        with pytest.raises(ValueError):
            vv.lg_mode(grid64, 17, 1.0)
        with pytest.raises(ValueError):
            vv.lg_mode(grid64, 2, 0.0)
        with pytest.raises(ValueError):
            vv.lg_mode(grid64, 2, -1.0)
        with pytest.raises(ValueError):
            vv.lg_mode(grid64, 2.5, 1.0)


class TestInnerProduct:
    def test_self_overlap_is_one(self, grid256):
        f = vv.lg_mode(grid256, 2)
        assert abs(vv.inner_product(f, f) - 1.0) < 1e-10

    @pytest.mark.parametrize("m1,m2", [(2, -2), (0, 1), (3, -1), (4, 2)])
    def test_distinct_orders_orthogonal(self, grid256, m1, m2):
        ip = vv.inner_product(vv.lg_mode(grid256, m1), vv.lg_mode(grid256, m2))
        assert abs(ip) < 1e-10

    def test_grid_mismatch_rejected(self, grid256, grid128):
        with pytest.raises(ValueError):
            vv.inner_product(vv.lg_mode(grid256, 0), vv.lg_mode(grid128, 0))

    def test_hermitian_symmetry_exact(self, grid256):
        a = vv.lg_mode(grid256, 1)
        mask = vv.azimuthal_phase_mask(grid256, 2)
        b = vv.ScalarField(grid256, mask.amp * vv.lg_mode(grid256, 0).amp)
        assert vv.inner_product(a, b) == vv.inner_product(b, a).conjugate()

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1))
    def test_hermitian_symmetry_random_fields(self, seed):
        g = vv.make_grid(16, 3.0)
        rng = np.random.default_rng(seed)
        a = vv.ScalarField(g, rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        b = vv.ScalarField(g, rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        assert vv.inner_product(a, b) == vv.inner_product(b, a).conjugate()

    def test_refinement_stability(self):
        g1 = vv.make_grid(256, 5.0)
        g2 = vv.make_grid(512, 5.0)
        for m1 in (-4, -1, 0, 3, 4):
            for m2 in (-4, -1, 0, 3, 4):
                a = vv.inner_product(vv.lg_mode(g1, m1), vv.lg_mode(g1, m2))
                b = vv.inner_product(vv.lg_mode(g2, m1), vv.lg_mode(g2, m2))
                assert abs(a - b) < 1e-6


class TestPowerNormalize:
    def test_power_matches_inner_product_exactly(self, grid256):
        f = vv.lg_mode(grid256, 3)
        assert vv.power(f) == vv.inner_product(f, f).real

    def test_normalize_gives_unit_power(self, grid64):
        f = vv.ScalarField(grid64, 3.7j * vv.lg_mode(grid64, 1).amp)
        assert vv.power(vv.normalize(f)) == pytest.approx(1.0, abs=1e-12)

    def test_zero_field(self, grid64):
        z = vv.ScalarField(grid64, np.zeros((64, 64), dtype=complex))
        assert vv.power(z) == 0.0
        with pytest.raises(ValueError):
            vv.normalize(z)


class TestAzimuthalPhaseMask:
    def test_order_zero_is_identity(self, grid64):
        mask = vv.azimuthal_phase_mask(grid64, 0)
        assert np.array_equal(mask.amp, np.ones((64, 64), dtype=complex))

    def test_unit_modulus(self, grid64):
        mask = vv.azimuthal_phase_mask(grid64, 5)
        assert np.allclose(np.abs(mask.amp), 1.0, atol=1e-15)

    def test_conjugate_masks_cancel(self, grid64):
        prod = vv.azimuthal_phase_mask(grid64, 3).amp * vv.azimuthal_phase_mask(grid64, -3).amp
        assert np.allclose(prod, 1.0, atol=1e-14)

    def test_power_conserved_under_mask(self, grid256):
        f = vv.lg_mode(grid256, 1)
        masked = vv.ScalarField(grid256, vv.azimuthal_phase_mask(grid256, 4).amp * f.amp)
        assert vv.power(masked) == pytest.approx(vv.power(f), abs=1e-12)

    def test_range_guard(self, grid64):
        with pytest.raises(ValueError):
            vv.azimuthal_phase_mask(grid64, 17)

    def test_gaussian_coupling_into_order2(self, grid256):
        # Independent oracle: radial quadrature of the continuum overlap of a
        # helically masked Gaussian with the order-2 ring mode.  The analytic
        # value is 1/sqrt(2) for equal waists.
        r = np.linspace(0.0, 12.0, 600_001)
        integrand = (1.0 / math.sqrt(math.pi)) * 2.0 * r**2 * np.exp(-2.0 * r**2) * math.sqrt(2.0 / math.pi) * r
        oracle = 2.0 * math.pi * float(np.trapezoid(integrand, r))
        assert oracle == pytest.approx(INV_SQRT2, abs=1e-9)

        masked = vv.ScalarField(
            grid256, vv.azimuthal_phase_mask(grid256, 2).amp * vv.lg_mode(grid256, 0).amp
        )
        overlap = vv.inner_product(vv.lg_mode(grid256, 2), masked)
        assert abs(abs(overlap) - oracle) < 1e-9
        assert abs(overlap) > 0.5
