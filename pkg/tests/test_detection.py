"""Linearized photodetection, RF splitting, and observable pull-backs."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eprsim.detection import (
    BRIGHTNESS_THRESHOLD,
    LinearizationWarning,
    LinearObservable,
    current_diff,
    current_sum,
    current_variance,
    direct_detect,
    homodyne_variance,
    pull_back,
    rf_split,
)
from eprsim.gaussian import (
    ModeRegistry,
    apply,
    displace,
    new_vacuum,
    quadrature_variance,
)
from eprsim.optics import SourceSpec, bright_pair, measurement_chain, nopa_source, qwp

COSH2 = 3.7621956910836314  # cosh(2): variance of every single-beam quadrature at r=1


def coherent(alpha, label="m"):
    return displace(new_vacuum((label,)), label, alpha)


class TestLinearObservable:
    def test_coeff_shape_enforced(self):
        with pytest.raises(ValueError, match="coeffs must have shape"):
            LinearObservable(ModeRegistry(("a",)), 0.0, np.zeros(4))

    def test_finite_enforced(self):
        with pytest.raises(ValueError, match="finite"):
            LinearObservable(ModeRegistry(("a",)), math.inf, np.zeros(2))
        with pytest.raises(ValueError, match="finite"):
            LinearObservable(ModeRegistry(("a",)), 0.0, np.array([np.nan, 0.0]))

    def test_coeffs_read_only(self):
        obs = LinearObservable(ModeRegistry(("a",)), 1.0, np.ones(2))
        with pytest.raises(ValueError, match="read-only"):
            obs.coeffs[0] = 2.0


class TestDirectDetect:
    def test_coherent_dc_and_coefficients(self):
        obs = direct_detect(coherent(10.0), "m")
        # <n> = alpha^2 exactly: the -1/2 offset cancels the vacuum trace term.
        assert obs.dc == 100.0
        assert np.array_equal(obs.coeffs, [10.0, 0.0])

    def test_threshold_is_strict(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error", LinearizationWarning)
            direct_detect(coherent(10.0), "m")  # exactly at threshold: no warning
        assert BRIGHTNESS_THRESHOLD == 100.0

    def test_dim_mode_warns(self):
        with pytest.warns(LinearizationWarning, match="mean photon number"):
            direct_detect(coherent(3.0), "m")

    def test_bright_squeezed_beam_dc_includes_thermal_photons(self):
        # <n> = alpha^2 + sinh^2(r) for one arm of the twin-beam source.
        state = nopa_source(SourceSpec(alpha=20.0, r=1.0))
        obs = direct_detect(state, "signal")
        assert obs.dc == pytest.approx(400.0 + math.sinh(1.0) ** 2, rel=1e-14)

    def test_phase_rotated_mean_moves_coefficients(self):
        state = displace(new_vacuum(("m",)), "m", 15.0j)
        obs = direct_detect(state, "m")
        assert np.array_equal(obs.coeffs, [0.0, 15.0])
        assert obs.dc == 225.0


class TestRfProcessing:
    def _bright_obs(self):
        return direct_detect(coherent(20.0), "m")

    def test_split_halves_dc_and_noise_power(self):
        obs = self._bright_obs()
        first, second = rf_split(obs)
        assert first.dc == obs.dc / 2.0
        assert np.array_equal(first.coeffs, obs.coeffs / math.sqrt(2.0))
        assert second.dc == first.dc
        # noise power (variance) halves per output port
        state = coherent(20.0)
        assert current_variance(state, first) == pytest.approx(
            current_variance(state, obs) / 2.0, rel=1e-12
        )

    def test_sum_and_diff_combine_linearly(self):
        obs = self._bright_obs()
        total = current_sum(obs, obs)
        null = current_diff(obs, obs)
        assert total.dc == 2.0 * obs.dc
        assert np.array_equal(total.coeffs, 2.0 * obs.coeffs)
        assert null.dc == 0.0
        assert not null.coeffs.any()

    def test_registry_mismatch_rejected(self):
        a = direct_detect(coherent(20.0, "a"), "a")
        b = direct_detect(coherent(20.0, "b"), "b")
        with pytest.raises(ValueError, match="different registries"):
            current_sum(a, b)

    def test_current_variance_matches_quadratic_form(self):
        state = nopa_source(SourceSpec(alpha=30.0, r=0.8))
        obs = direct_detect(state, "signal")
        assert current_variance(state, obs) == quadrature_variance(state, obs.coeffs)

    def test_electronic_noise_adds(self):
        state = coherent(20.0)
        obs = direct_detect(state, "m")
        base = current_variance(state, obs)
        assert current_variance(state, obs, electronic_noise=2.5) == base + 2.5
        with pytest.raises(ValueError, match="electronic_noise"):
            current_variance(state, obs, electronic_noise=-1.0)


class TestHomodyne:
    @given(st.floats(-math.pi, math.pi))
    def test_vacuum_is_phase_insensitive_at_shot_noise(self, theta):
        assert homodyne_variance(new_vacuum(("m",)), "m", theta) == pytest.approx(
            1.0, rel=1e-12
        )

    @given(st.floats(-math.pi, math.pi))
    def test_single_twin_beam_arm_is_thermal(self, theta):
        # Each arm alone carries cosh(2r) noise in every quadrature: the
        # entanglement only shows in joint combinations.
        state = nopa_source(SourceSpec(alpha=10.0, r=1.0))
        assert homodyne_variance(state, "signal", theta) == pytest.approx(
            COSH2, rel=1e-12
        )


class TestPullBack:
    def test_identity_op_keeps_observable(self):
        from eprsim.gaussian import SymplecticOp

        obs = direct_detect(coherent(15.0), "m")
        pulled = pull_back(obs, SymplecticOp(np.eye(2), ("m",)))
        assert pulled.dc == obs.dc
        assert np.array_equal(pulled.coeffs, obs.coeffs)

    def test_pull_back_renames_to_input_labels(self):
        chain = measurement_chain()
        source = bright_pair(50.0)
        out = apply(source, chain)
        obs = direct_detect(out, "p")
        pulled = pull_back(obs, chain)
        assert pulled.registry.labels == ("signal", "idler")

    def test_variance_preserved_under_pull_back(self):
        chain = measurement_chain()
        source = nopa_source(SourceSpec(alpha=50.0, r=1.0))
        out = apply(source, chain)
        obs = direct_detect(out, "p")
        pulled = pull_back(obs, chain)
        assert quadrature_variance(source, pulled.coeffs) == pytest.approx(
            quadrature_variance(out, obs.coeffs), rel=1e-12
        )

    @given(st.floats(0.0, 180.0))
    def test_variance_preserved_for_any_plate_angle(self, angle):
        op = qwp(angle)
        source = nopa_source(SourceSpec(alpha=40.0, r=0.6))
        out = apply(source, op)
        obs = direct_detect(out, "signal")
        pulled = pull_back(obs, op)
        assert quadrature_variance(source, pulled.coeffs) == pytest.approx(
            quadrature_variance(out, obs.coeffs), rel=1e-11
        )
