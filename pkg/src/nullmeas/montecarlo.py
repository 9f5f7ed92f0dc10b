"""Monte Carlo trajectories of the null/click record.

Each trajectory draws a level ``n`` from the prior and then survives without
a click with probability ``exp(-n tau)``. Frequencies over trajectories
estimate the null probability and the null-conditioned distribution.

Reproducibility
---------------
Samples are cut into fixed blocks of :data:`BLOCK_SIZE`. Block ``b`` draws
from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``, so every stream is a
pure function of ``(seed, b)``. Workers only decide who evaluates which
block; per-block results are integer counts that are summed, so the
estimate is bit-identical for any worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_distribution, check_positive_int, check_tau
from .information import shannon_entropy
from .measurement import null_probability, posterior_null

__all__ = [
    "BLOCK_SIZE",
    "McConfig",
    "McEstimate",
    "McCheck",
    "McValidation",
    "block_generator",
    "run_mc",
    "mc_validate",
    "total_variation",
]

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class McConfig:
    prior: tuple
    tau: float
    samples: int = 100_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        prior = check_distribution(self.prior)
        object.__setattr__(self, "prior", tuple(float(p) for p in prior))
        tau = check_tau(self.tau)
        if not isinstance(tau, float):
            raise ValueError("tau must be a scalar")
        object.__setattr__(self, "tau", tau)
        check_positive_int(self.samples, "samples")
        check_positive_int(self.workers, "workers")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")

    def as_dict(self):
        return {
            "prior": list(self.prior),
            "tau": self.tau,
            "samples": self.samples,
            "seed": int(self.seed),
            "workers": self.workers,
        }


@dataclass(frozen=True)
class McEstimate:
    """Empirical counterparts of the null probability and null posterior.

    ``posterior_null_hat`` and its errors are ``None`` when no trajectory
    survived (``n_null == 0``); only ``p_null_hat`` is meaningful then.
    """

    samples: int
    n_null: int
    level_counts: np.ndarray = field(repr=False)
    null_counts: np.ndarray = field(repr=False)
    p_null_hat: float
    p_null_se: float
    posterior_null_hat: Optional[np.ndarray]
    posterior_null_se: Optional[np.ndarray]
    info_gain_hat: Optional[float]

    @property
    def insufficient(self):
        return self.n_null == 0

    @property
    def prior_hat(self):
        return self.level_counts / self.samples

    def as_dict(self):
        def _list(a):
            return None if a is None else [float(x) for x in a]

        return {
            "samples": self.samples,
            "n_null": self.n_null,
            "p_null_hat": self.p_null_hat,
            "p_null_se": self.p_null_se,
            "posterior_null_hat": _list(self.posterior_null_hat),
            "posterior_null_se": _list(self.posterior_null_se),
            "info_gain_hat": self.info_gain_hat,
            "insufficient": self.insufficient,
        }


def block_generator(seed, block):
    """Independent generator for one block of trajectories."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(block),)))
    )


def _run_block(prior, survive, seed, block, size):
    rng = block_generator(seed, block)
    levels = rng.choice(prior.size, size=size, p=prior)
    null = rng.random(size) < survive[levels]
    return (
        np.bincount(levels, minlength=prior.size),
        np.bincount(levels[null], minlength=prior.size),
    )


def run_mc(config):
    """Simulate ``config.samples`` trajectories and summarise them."""
    prior = np.asarray(config.prior, dtype=np.float64)
    survive = np.exp(-config.tau * np.arange(prior.size))
    n_blocks = math.ceil(config.samples / BLOCK_SIZE)
    sizes = [min(BLOCK_SIZE, config.samples - b * BLOCK_SIZE) for b in range(n_blocks)]

    def job(block):
        return _run_block(prior, survive, config.seed, block, sizes[block])

    if config.workers == 1 or n_blocks == 1:
        parts = [job(b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(job, range(n_blocks)))

    level_counts = np.sum([p[0] for p in parts], axis=0)
    null_counts = np.sum([p[1] for p in parts], axis=0)
    n_null = int(null_counts.sum())
    p_hat = n_null / config.samples
    p_se = math.sqrt(p_hat * (1 - p_hat) / config.samples)

    post = post_se = gain = None
    if n_null > 0:
        post = null_counts / n_null
        post_se = np.sqrt(post * (1 - post) / n_null)
        gain = shannon_entropy(level_counts / config.samples) - shannon_entropy(post)

    return McEstimate(
        samples=config.samples,
        n_null=n_null,
        level_counts=level_counts,
        null_counts=null_counts,
        p_null_hat=p_hat,
        p_null_se=p_se,
        posterior_null_hat=post,
        posterior_null_se=post_se,
        info_gain_hat=gain,
    )


def total_variation(p, q):
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


@dataclass(frozen=True)
class McCheck:
    name: str
    estimate: float
    expected: float
    stderr: Optional[float]
    bound: float
    passed: bool

    @property
    def deviation(self):
        return abs(self.estimate - self.expected)


@dataclass(frozen=True)
class McValidation:
    config: McConfig
    estimate: McEstimate
    checks: list
    passed: bool
    reason: str = ""

    def as_dict(self):
        return {
            "config": self.config.as_dict(),
            "estimate": self.estimate.as_dict(),
            "checks": [
                {
                    "name": c.name,
                    "estimate": c.estimate,
                    "expected": c.expected,
                    "stderr": c.stderr,
                    "bound": c.bound,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            "passed": self.passed,
            "reason": self.reason,
        }


# deviation allowed when the standard error is exactly zero
_EXACT_ATOL = 1e-12


def _sigma_check(name, estimate, expected, se, n_sigma):
    bound = max(n_sigma * se, _EXACT_ATOL)
    return McCheck(name, float(estimate), float(expected), float(se), bound,
                   bool(abs(estimate - expected) <= bound))


def mc_validate(config, n_sigma=4.0, tv_tol=None, estimate=None):
    """Compare a Monte Carlo run against the analytic null update.

    Each estimate passes when it lies within ``n_sigma`` standard errors of
    the analytic value. With ``tv_tol`` the null posterior must also lie
    within that total-variation distance. A run with no surviving
    trajectory fails with reason ``"insufficient-conditioning"``.
    """
    if not n_sigma > 0:
        raise ValueError(f"n_sigma must be positive, got {n_sigma!r}")
    est = run_mc(config) if estimate is None else estimate
    prior = np.asarray(config.prior)
    checks = [
        _sigma_check("p_null", est.p_null_hat, null_probability(prior, config.tau),
                     est.p_null_se, n_sigma)
    ]
    if est.insufficient:
        return McValidation(config, est, checks, False, "insufficient-conditioning")

    expected_post = posterior_null(prior, config.tau)
    for n, (hat, se, exp_) in enumerate(
        zip(est.posterior_null_hat, est.posterior_null_se, expected_post)
    ):
        checks.append(_sigma_check(f"posterior_null[{n}]", hat, exp_, se, n_sigma))
    if tv_tol is not None:
        tv = total_variation(est.posterior_null_hat, expected_post)
        checks.append(McCheck("posterior_null_tv", tv, 0.0, None, tv_tol, bool(tv <= tv_tol)))
    return McValidation(config, est, checks, all(c.passed for c in checks))
