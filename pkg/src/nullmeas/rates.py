"""Instantaneous rates d/dtau of information gain, fidelity and reversal probability.

Closed forms are evaluated from the null posterior ``q_n = p(x_n|y0)`` and
its mean level ``<n>_q = sum_m m p(x_m) exp(-m tau) / p_null``.
:func:`finite_difference` gives an independent numerical derivative of any
static quantity for cross-checking.
"""

from dataclasses import asdict, dataclass

import numpy as np

from ._validation import check_distribution, check_tau
from .information import _TINY, fidelity, get_quantity, reversal_probability
from .measurement import mean_level, posterior_null

__all__ = [
    "RateSnapshot",
    "RateLimits",
    "rate_info_gain",
    "rate_fidelity",
    "rate_reversal",
    "rate_snapshot",
    "rate_curves",
    "rate_limits",
    "finite_difference",
    "get_rate",
    "RATE_COLUMNS",
    "DEFAULT_STEP",
    "FORWARD_STEP",
]

DEFAULT_STEP = 1e-5
FORWARD_STEP = 1e-6

RATE_COLUMNS = ("d_info_gain", "d_fidelity", "d_p_rev")


def _as_output(value):
    return value if np.ndim(value) else float(value)


def _levels(prior):
    return np.arange(prior.size, dtype=np.float64)


def _log2_safe(q):
    return np.log2(np.where(q < _TINY, 1.0, q))


def rate_info_gain(prior, tau):
    """Rate of the null-outcome information gain.

    ``-sum_n q_n (n - <n>_q) log2 q_n``. Terms with ``q_n = 0`` vanish.
    """
    prior = check_distribution(prior)
    post = posterior_null(prior, tau)
    centred = _levels(prior) - np.asarray(mean_level(post))[..., None]
    return _as_output(-(post * centred * _log2_safe(post)).sum(axis=-1))


def rate_fidelity(prior, tau):
    """Rate of the classical fidelity.

    ``0.5 * [F <n>_q - sum_n n sqrt(p_n q_n)]``, which is never positive.
    """
    prior = check_distribution(prior)
    post = posterior_null(prior, tau)
    overlap = np.sqrt(prior * post)
    value = 0.5 * (
        np.asarray(fidelity(prior, tau)) * mean_level(post) - overlap @ _levels(prior)
    )
    return _as_output(value)


def rate_reversal(prior, tau):
    """Rate of the reversal probability, ``P_rev (<n>_q - N)``."""
    prior = check_distribution(prior)
    post = posterior_null(prior, tau)
    top = prior.size - 1
    value = np.asarray(reversal_probability(prior, tau)) * (mean_level(post) - top)
    return _as_output(value)


_RATES = {
    "info_gain": rate_info_gain,
    "fidelity": rate_fidelity,
    "p_rev": rate_reversal,
}


def get_rate(quantity):
    """Analytic rate for ``info_gain``, ``fidelity`` or ``p_rev``."""
    try:
        return _RATES[quantity]
    except KeyError:
        raise ValueError(f"no analytic rate for {quantity!r}; choose from {sorted(_RATES)}") from None


def finite_difference(quantity, prior, tau, step=DEFAULT_STEP):
    """Numerical derivative of a static quantity with respect to ``tau``.

    Central difference ``[Q(tau+h) - Q(tau-h)] / 2h``. When ``tau < step``
    the central stencil would leave the domain, so a forward difference with
    ``h = FORWARD_STEP`` is used instead.

    Parameters
    ----------
    quantity : str or callable
        A name from :data:`nullmeas.information.QUANTITIES` or ``f(prior, tau)``.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    func = get_quantity(quantity) if isinstance(quantity, str) else quantity
    prior = check_distribution(prior)
    tau = np.asarray(check_tau(tau), dtype=np.float64)
    central = tau >= step
    h_fwd = min(step, FORWARD_STEP)
    lo = np.where(central, tau - step, tau)
    hi = np.where(central, tau + step, tau + h_fwd)
    width = np.where(central, 2 * step, h_fwd)
    value = (np.asarray(func(prior, hi)) - np.asarray(func(prior, lo))) / width
    return _as_output(value)


@dataclass(frozen=True)
class RateSnapshot:
    tau: float
    d_info_gain: float
    d_fidelity: float
    d_p_rev: float

    def as_dict(self):
        return asdict(self)


def rate_snapshot(prior, tau):
    tau = check_tau(tau)
    if not isinstance(tau, float):
        raise TypeError("rate_snapshot takes a scalar tau; use rate_curves for grids")
    return RateSnapshot(
        tau=tau,
        d_info_gain=rate_info_gain(prior, tau),
        d_fidelity=rate_fidelity(prior, tau),
        d_p_rev=rate_reversal(prior, tau),
    )


def rate_curves(prior, taus):
    prior = check_distribution(prior)
    taus = np.atleast_1d(check_tau(taus)).astype(np.float64)
    return {
        "tau": taus,
        "d_info_gain": rate_info_gain(prior, taus),
        "d_fidelity": rate_fidelity(prior, taus),
        "d_p_rev": rate_reversal(prior, taus),
    }


@dataclass(frozen=True)
class RateLimits:
    """Closed-form ``tau -> 0`` values of the three rates."""

    d_info_gain_0: float
    d_fidelity_0: float
    d_p_rev_0: float


def rate_limits(prior):
    """Short-time limits of the rates, from the prior alone.

    ``d_info_gain_0 = -sum_n p_n (n - <n>) log2 p_n``,
    ``d_fidelity_0 = 0`` and ``d_p_rev_0 = <n> - N``.
    """
    prior = check_distribution(prior)
    levels = _levels(prior)
    mean = float(prior @ levels)
    d_info = -float((prior * (levels - mean) * _log2_safe(prior)).sum())
    return RateLimits(
        d_info_gain_0=d_info,
        d_fidelity_0=0.0,
        d_p_rev_0=mean - (prior.size - 1),
    )
