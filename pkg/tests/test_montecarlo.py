import math

import numpy as np
import pytest

from nullmeas import McConfig, mc_validate, null_probability, posterior_null, run_mc
from nullmeas.montecarlo import BLOCK_SIZE, block_generator, total_variation


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(samples=0),
            dict(workers=0),
            dict(seed=-1),
            dict(seed=2**64),
            dict(tau=-1.0),
            dict(prior=(0.9, 0.9)),
            dict(samples=1.5),
        ],
    )
    def test_rejects(self, kwargs):
        base = dict(prior=(0.5, 0.5), tau=1.0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            McConfig(**base)

    def test_prior_is_normalised_tuple(self):
        assert McConfig(prior=[0.5, 0.5], tau=1).prior == (0.5, 0.5)


def test_zero_time_is_exact():
    est = run_mc(McConfig(prior=(0.5, 0.5), tau=0.0, samples=10_000, seed=3))
    assert est.p_null_hat == 1.0
    assert est.n_null == 10_000
    np.testing.assert_array_equal(est.posterior_null_hat, est.prior_hat)
    assert mc_validate(McConfig(prior=(0.5, 0.5), tau=0.0, samples=10_000, seed=3)).passed


def test_qutrit_within_four_sigma():
    cfg = McConfig(prior=(0.2, 0.4, 0.4), tau=1.0, samples=1_000_000, seed=7, workers=4)
    est = run_mc(cfg)
    assert abs(est.p_null_hat - null_probability(cfg.prior, 1.0)) <= 4 * est.p_null_se
    diff = np.abs(est.posterior_null_hat - posterior_null(cfg.prior, 1.0))
    assert np.all(diff <= 4 * est.posterior_null_se)


def test_qubit_validation_with_tv():
    cfg = McConfig(prior=(0.5, 0.5), tau=math.log(2), samples=1_000_000, seed=11)
    result = mc_validate(cfg, n_sigma=4, tv_tol=0.005)
    assert result.passed, [c for c in result.checks if not c.passed]
    assert {c.name for c in result.checks} >= {"p_null", "posterior_null_tv"}


def test_insufficient_conditioning():
    cfg = McConfig(prior=(0.0, 0.0, 1.0), tau=5.0, samples=10, seed=0)
    est = run_mc(cfg)
    assert est.insufficient
    assert est.posterior_null_hat is None
    result = mc_validate(cfg)
    assert not result.passed
    assert result.reason == "insufficient-conditioning"
    assert [c.name for c in result.checks] == ["p_null"]


def test_worker_count_does_not_change_result():
    samples = 3 * BLOCK_SIZE + 123
    runs = [
        run_mc(McConfig(prior=(0.2, 0.4, 0.4), tau=0.8, samples=samples, seed=99, workers=w))
        for w in (1, 2, 5)
    ]
    for r in runs[1:]:
        np.testing.assert_array_equal(r.level_counts, runs[0].level_counts)
        np.testing.assert_array_equal(r.null_counts, runs[0].null_counts)
        assert r.as_dict() == runs[0].as_dict()


def test_block_streams_are_pure_functions_of_seed_and_block():
    a = block_generator(5, 2).random(4)
    b = block_generator(5, 2).random(4)
    c = block_generator(5, 3).random(4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def _coverage(prior, tau, seeds, samples):
    expected_p = null_probability(prior, tau)
    expected_post = posterior_null(prior, tau)
    hits = np.zeros(1 + len(prior))
    for seed in seeds:
        est = run_mc(McConfig(prior=prior, tau=tau, samples=samples, seed=seed))
        hits[0] += abs(est.p_null_hat - expected_p) <= 2 * est.p_null_se
        hits[1:] += np.abs(est.posterior_null_hat - expected_post) <= 2 * est.posterior_null_se
    return hits / len(seeds)


def test_two_sigma_coverage_seeds_1_to_20():
    cover = _coverage((0.5, 0.5), math.log(2), range(1, 21), 100_000)
    assert np.all(cover >= 0.9), cover


@pytest.mark.slow
def test_two_sigma_coverage_many_seeds():
    # 400 seeds: nominal 0.954, binomial sd ~0.01
    cover = _coverage((0.2, 0.4, 0.4), 1.0, range(1, 401), 100_000)
    assert np.all((cover >= 0.925) & (cover <= 0.985)), cover


def test_tv_shrinks_along_doubling_schedule():
    prior, tau = (0.5, 0.3, 0.2), 0.7
    expected = posterior_null(prior, tau)
    medians = []
    for samples in (2_000, 8_000, 32_000, 128_000):
        tvs = [
            total_variation(run_mc(McConfig(prior, tau, samples, seed)).posterior_null_hat, expected)
            for seed in range(15)
        ]
        medians.append(np.median(tvs))
    assert all(a > b for a, b in zip(medians, medians[1:])), medians


def test_info_gain_plugin_estimate():
    cfg = McConfig(prior=(0.5, 0.5), tau=math.log(2), samples=400_000, seed=1)
    est = run_mc(cfg)
    from nullmeas import info_gain

    assert est.info_gain_hat == pytest.approx(info_gain(cfg.prior, cfg.tau), abs=0.01)
