import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vectorvortex as vv
from conftest import polarized_gaussian, zero_field

INV_SQRT2 = 1.0 / math.sqrt(2.0)

thetas = st.floats(min_value=-2.0 * math.pi, max_value=2.0 * math.pi, allow_nan=False)


def up_to_phase(u, v, atol=1e-12):
    """True if Jones vectors u, v agree up to a global phase."""
    ip = np.vdot(u, v)
    return abs(abs(ip) - np.linalg.norm(u) * np.linalg.norm(v)) < atol


class TestBasis:
    def test_values(self):
        assert vv.basis("H").as_array() == pytest.approx([1, 0])
        assert vv.basis("V").as_array() == pytest.approx([0, 1])
        assert vv.basis("D").as_array() == pytest.approx([INV_SQRT2, INV_SQRT2])
        assert vv.basis("A").as_array() == pytest.approx([INV_SQRT2, -INV_SQRT2])
        assert vv.basis("L").as_array() == pytest.approx([INV_SQRT2, 1j * INV_SQRT2])
        assert vv.basis("R").as_array() == pytest.approx([INV_SQRT2, -1j * INV_SQRT2])

    @pytest.mark.parametrize("a,b", [("D", "A"), ("L", "R"), ("H", "V")])
    def test_orthogonal_pairs(self, a, b):
        ip = np.vdot(vv.basis(a).as_array(), vv.basis(b).as_array())
        assert abs(ip) < 1e-15

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            vv.basis("X")


class TestWaveplates:
    def test_hwp_22p5_maps_h_to_d(self):
        out = vv.jones_hwp(math.radians(22.5)) @ vv.basis("H").as_array()
        assert up_to_phase(out, vv.basis("D").as_array())

    def test_hwp_45_swaps_h_and_v(self):
        j = vv.jones_hwp(math.radians(45.0))
        assert up_to_phase(j @ vv.basis("H").as_array(), vv.basis("V").as_array())
        assert up_to_phase(j @ vv.basis("V").as_array(), vv.basis("H").as_array())

    def test_qwp_45_makes_circular(self):
        out = vv.jones_qwp(math.radians(45.0)) @ vv.basis("H").as_array()
        assert abs(out[0]) == pytest.approx(INV_SQRT2, abs=1e-12)
        assert abs(out[1]) == pytest.approx(INV_SQRT2, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(theta=thetas)
    def test_unitarity(self, theta):
        for j in (vv.jones_hwp(theta), vv.jones_qwp(theta)):
            assert np.abs(j @ j.conj().T - np.eye(2)).max() < 1e-12

    @settings(max_examples=25, deadline=None)
    @given(theta=thetas)
    def test_hwp_is_involutive(self, theta):
        j = vv.jones_hwp(theta)
        assert np.abs(j @ j - np.eye(2)).max() < 1e-12


class TestApplyJones:
    def test_identity_leaves_field_alone(self, grid64):
        f = polarized_gaussian(grid64, "D")
        out = vv.apply_jones(f, np.eye(2))
        assert np.allclose(out.e_h.amp, f.e_h.amp, atol=1e-15)
        assert np.allclose(out.e_v.amp, f.e_v.amp, atol=1e-15)

    def test_hwp45_swaps_spatial_modes(self, grid64):
        f = vv.make_ns_state(1, -2, 0.0, grid64)
        out = vv.apply_jones(f, vv.jones_hwp(math.radians(45.0)))
        assert np.allclose(out.e_h.amp, f.e_v.amp, atol=1e-15)
        assert np.allclose(out.e_v.amp, f.e_h.amp, atol=1e-15)

    @settings(max_examples=20, deadline=None)
    @given(theta=thetas)
    def test_qwp_conserves_power(self, theta):
        g = vv.make_grid(32, 3.0)
        f = polarized_gaussian(g, "D")
        out = vv.apply_jones(f, vv.jones_qwp(theta))
        assert vv.total_power(out) == pytest.approx(vv.total_power(f), abs=1e-12)

    def test_bad_matrix_shape(self, grid64):
        with pytest.raises(ValueError):
            vv.apply_jones(polarized_gaussian(grid64, "H"), np.eye(3))


class TestProject:
    def test_h_polarized_field_has_dark_v_port(self, grid64):
        f = polarized_gaussian(grid64, "H")
        out = vv.project(f, vv.basis("V"))
        assert np.abs(out.amp).max() == 0.0

    def test_projection_of_synthesized_state(self, grid256):
        state = vv.make_ns_state(-2, 2, 0.0, grid256)
        want_h = vv.lg_mode(grid256, -2).amp * INV_SQRT2
        want_v = vv.lg_mode(grid256, 2).amp * INV_SQRT2
        assert np.allclose(vv.project(state, vv.basis("H")).amp, want_h, atol=1e-15)
        assert np.allclose(vv.project(state, vv.basis("V")).amp, want_v, atol=1e-15)

    def test_non_normalized_state_rejected(self, grid64):
        f = polarized_gaussian(grid64, "H")
        with pytest.raises(ValueError):
            vv.project(f, vv.JonesVector(1.0, 1.0))

    @pytest.mark.parametrize("pair", [("H", "V"), ("D", "A"), ("L", "R")])
    def test_completeness(self, grid128, pair):
        f = vv.make_ns_state(1, -1, 0.7, grid128)
        total = vv.total_power(f)
        split = sum(vv.power(vv.project(f, vv.basis(name))) for name in pair)
        assert split == pytest.approx(total, abs=1e-10)

    def test_malus_idempotent_in_power(self, grid64):
        f = vv.make_ns_state(1, 0, 0.3, grid64)
        p = vv.basis("D")
        once = vv.apply_jones(f, vv.projector_matrix(p))
        twice = vv.apply_jones(once, vv.projector_matrix(p))
        assert vv.total_power(twice) == pytest.approx(vv.total_power(once), abs=1e-12)
        assert vv.total_power(once) == pytest.approx(vv.power(vv.project(f, p)), abs=1e-12)

    @pytest.mark.parametrize(
        "name,rotator",
        [
            ("D", lambda: vv.jones_hwp(math.radians(22.5))),
            ("A", lambda: vv.jones_hwp(math.radians(-22.5))),
            ("L", lambda: vv.jones_qwp(math.radians(45.0))),
            ("R", lambda: vv.jones_qwp(math.radians(-45.0))),
        ],
    )
    def test_analyzer_equivalence(self, grid128, name, rotator):
        # An analyzer for state p equals a waveplate mapping p -> H followed by
        # an H analyzer; the chain and the single projector agree up to a
        # global phase.
        u = rotator()
        mapped = u @ vv.basis(name).as_array()
        assert up_to_phase(mapped, vv.basis("H").as_array())
        f = vv.make_ns_state(2, -1, 0.4, grid128)
        direct = vv.project(f, vv.basis(name))
        chained = vv.project(vv.apply_jones(f, u), vv.basis("H"))
        p1, p2 = vv.power(direct), vv.power(chained)
        assert p1 == pytest.approx(p2, abs=1e-12)
        overlap = abs(vv.inner_product(direct, chained))
        assert overlap == pytest.approx(math.sqrt(p1 * p2), abs=1e-12)


class TestVectorField:
    def test_grid_mismatch_rejected(self, grid64, grid128):
        with pytest.raises(ValueError):
            vv.VectorField(vv.lg_mode(grid64, 0), vv.lg_mode(grid128, 0))

    def test_state_overlap_normalized(self, grid64):
        f = vv.make_ns_state(1, -1, 0.0, grid64)
        assert abs(vv.state_overlap(f, f)) == pytest.approx(1.0, abs=1e-12)
        g = vv.make_ns_state(2, -2, 0.0, grid64)
        assert abs(vv.state_overlap(f, g)) < 1e-9

    def test_state_overlap_zero_field_rejected(self, grid64):
        f = polarized_gaussian(grid64, "H")
        z = vv.VectorField(zero_field(grid64), zero_field(grid64))
        with pytest.raises(ValueError):
            vv.state_overlap(f, z)
