import math

import numpy as np
import pytest
from hypothesis import given, settings

from nullmeas import (
    finite_difference,
    rate_fidelity,
    rate_info_gain,
    rate_limits,
    rate_reversal,
    rate_snapshot,
)
from nullmeas.rates import get_rate, rate_curves

from . import oracles
from .conftest import CAPTION_PRIORS, QUBIT_PRIORS, QUTRIT_PRIORS, distributions

# mpmath numerical derivatives of the static quantities (40 digits)
D_FIDELITY_QUBIT_LN2 = -0.03985771862301671
D_GAIN_03_07_AT_05 = -0.12155875710632753
D_PREV_UNIFORM_QUTRIT_AT_1 = -0.4254512808294365


def _close(analytic, numeric, rel=1e-5, atol=1e-9):
    return abs(analytic - numeric) <= max(rel * abs(numeric), atol)


class TestInfoGainRate:
    def test_uniform_qubit_starts_at_zero(self):
        assert rate_info_gain([0.5, 0.5], 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_biased_qubit_start(self):
        expected = -0.21 * math.log2(7 / 3)
        assert rate_info_gain([0.3, 0.7], 0.0) == pytest.approx(expected, abs=1e-15)

    def test_vanishes_at_long_time(self):
        assert rate_info_gain([1 / 3, 1 / 3, 1 / 3], 50.0) == pytest.approx(0.0, abs=1e-6)

    def test_frozen_derivative(self):
        assert rate_info_gain([0.3, 0.7], 0.5) == pytest.approx(D_GAIN_03_07_AT_05, abs=1e-13)


class TestFidelityRate:
    @pytest.mark.parametrize("prior", CAPTION_PRIORS)
    def test_starts_at_zero(self, prior):
        assert rate_fidelity(prior, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_qubit_ln2(self):
        value = rate_fidelity([0.5, 0.5], math.log(2))
        assert value == pytest.approx(D_FIDELITY_QUBIT_LN2, abs=1e-14)
        assert abs(value - (-0.039856)) <= 1e-5

    def test_independent_closed_form(self):
        # d/dtau of (0.5 + 0.5 e^{-tau/2}) / sqrt(0.5 + 0.5 e^{-tau})
        t = math.log(2)
        num, den = 0.5 + 0.5 * math.exp(-t / 2), 0.5 + 0.5 * math.exp(-t)
        d = -0.25 * math.exp(-t / 2) / math.sqrt(den) + num * 0.25 * math.exp(-t) / den**1.5
        assert rate_fidelity([0.5, 0.5], t) == pytest.approx(d, abs=1e-15)

    def test_vanishes_at_long_time(self):
        assert rate_fidelity([0.5, 0.5], 50.0) == pytest.approx(0.0, abs=1e-6)


class TestReversalRate:
    def test_uniform_qubit_start(self):
        assert rate_reversal([0.5, 0.5], 0.0) == pytest.approx(-0.5, abs=1e-15)

    def test_uniform_qutrit_start(self):
        assert rate_reversal([1 / 3, 1 / 3, 1 / 3], 0.0) == pytest.approx(-1.0, abs=1e-15)

    def test_vanishes_at_long_time(self):
        assert rate_reversal([0.2, 0.8], 50.0) == pytest.approx(0.0, abs=1e-6)

    def test_frozen_derivative(self):
        value = rate_reversal([1 / 3, 1 / 3, 1 / 3], 1.0)
        assert value == pytest.approx(D_PREV_UNIFORM_QUTRIT_AT_1, abs=1e-13)


class TestFiniteDifference:
    def test_fidelity_qubit(self):
        value = finite_difference("fidelity", [0.5, 0.5], math.log(2), 1e-5)
        assert value == pytest.approx(D_FIDELITY_QUBIT_LN2, abs=1e-7)
        assert value == pytest.approx(rate_fidelity([0.5, 0.5], math.log(2)), abs=1e-7)

    def test_info_gain(self):
        fd = finite_difference("info_gain", [0.3, 0.7], 0.5, 1e-5)
        assert _close(rate_info_gain([0.3, 0.7], 0.5), fd, rel=1e-6)

    def test_reversal(self):
        p = [1 / 3, 1 / 3, 1 / 3]
        fd = finite_difference("p_rev", p, 1.0, 1e-5)
        assert _close(rate_reversal(p, 1.0), fd, rel=1e-6)

    def test_forward_difference_near_zero(self):
        fd = finite_difference("p_rev", [0.5, 0.5], 0.0)
        assert fd == pytest.approx(-0.5, abs=1e-5)

    @pytest.mark.parametrize("step", [0.0, -1e-5])
    def test_bad_step(self, step):
        with pytest.raises(ValueError):
            finite_difference("fidelity", [0.5, 0.5], 1.0, step)

    def test_callable_quantity(self):
        fd = finite_difference(lambda p, t: np.asarray(t) ** 2, [0.5, 0.5], 1.0)
        assert fd == pytest.approx(2.0, abs=1e-9)


class TestLimits:
    def test_biased_qubit(self):
        lim = rate_limits([0.6, 0.4])
        assert lim.d_info_gain_0 == pytest.approx(-0.24 * math.log2(0.4 / 0.6), abs=1e-15)
        assert lim.d_fidelity_0 == 0.0

    def test_uniform_qubit_reversal(self):
        assert rate_limits([0.5, 0.5]).d_p_rev_0 == pytest.approx(-0.5)

    def test_qutrit_branch(self):
        p = [0.2, 0.4, 0.4]
        assert rate_limits(p).d_info_gain_0 == pytest.approx(
            oracles.limit_branch_info_rate(p), abs=1e-12
        )
        assert rate_limits(p).d_p_rev_0 == pytest.approx(1.2 - 2)

    @pytest.mark.parametrize("prior", QUBIT_PRIORS + QUTRIT_PRIORS)
    def test_branch_formula_matches_general(self, prior):
        assert rate_limits(prior).d_info_gain_0 == pytest.approx(
            oracles.limit_branch_info_rate(prior), abs=1e-12
        )

    @pytest.mark.parametrize("prior", CAPTION_PRIORS)
    def test_continuity(self, prior):
        lim = rate_limits(prior)
        snap = rate_snapshot(prior, 1e-8)
        assert snap.d_info_gain == pytest.approx(lim.d_info_gain_0, abs=1e-6)
        assert snap.d_fidelity == pytest.approx(lim.d_fidelity_0, abs=1e-6)
        assert snap.d_p_rev == pytest.approx(lim.d_p_rev_0, abs=1e-6)


@pytest.mark.parametrize("prior", CAPTION_PRIORS)
def test_oracle_equivalence_on_grid(prior):
    grid = np.linspace(0.025, 5, 200)
    for name in ("info_gain", "fidelity", "p_rev"):
        analytic = get_rate(name)(prior, grid)
        numeric = finite_difference(name, prior, grid)
        err = np.abs(analytic - numeric)
        assert np.all(err <= np.maximum(1e-5 * np.abs(numeric), 1e-9)), name


@pytest.mark.parametrize("prior", CAPTION_PRIORS)
def test_signs_on_grid(prior):
    r = rate_curves(prior, np.linspace(0, 5, 501))
    assert np.all(r["d_fidelity"] <= 1e-12)
    assert np.all(r["d_p_rev"] <= 0)


@pytest.mark.parametrize("prior", CAPTION_PRIORS)
def test_information_rate_has_interior_peak(prior):
    grid = np.linspace(0.01, 5, 500)
    analytic = rate_info_gain(prior, grid)
    numeric = finite_difference("info_gain", prior, grid)
    i = int(np.argmax(analytic))
    assert 0 < i < grid.size - 1
    assert abs(i - int(np.argmax(numeric))) <= 1


@settings(max_examples=100, deadline=None)
@given(distributions(max_levels=5))
def test_sign_property(p):
    grid = np.linspace(0, 5, 101)
    assert np.all(rate_fidelity(p, grid) <= 1e-12)
    assert np.all(rate_reversal(p, grid) <= 1e-15)


def test_rate_snapshot_rejects_grid():
    with pytest.raises(TypeError):
        rate_snapshot([0.5, 0.5], [0.1, 0.2])


def test_get_rate_unknown():
    with pytest.raises(ValueError):
        get_rate("mutual_info")


