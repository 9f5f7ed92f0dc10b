"""Null-result conditioning of a photon-number distribution.

A detector watches a mode for scaled time ``tau = 2*gamma*t``. Level ``n``
survives without a click with likelihood ``exp(-n*tau)``. Everything here
works on probabilities ``p(x_n) = |c_n|**2``; phases never enter.

All functions accept a scalar ``tau`` or an array of them. Distributions
broadcast along a trailing ``n_levels`` axis.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp, softmax

from ._validation import DegenerateOutcomeError, check_distribution, check_tau

__all__ = [
    "OutcomeEnsemble",
    "null_probability",
    "log_null_probability",
    "posterior_null",
    "posterior_click",
    "click_probability",
    "outcome_ensemble",
    "mean_level",
]


def _levels(prior):
    return np.arange(prior.shape[-1], dtype=np.float64)


def _log_prior(prior):
    with np.errstate(divide="ignore"):
        return np.log(prior)


def _decay(prior, tau):
    """``-n * tau`` with shape ``tau.shape + (n_levels,)``."""
    return -np.multiply.outer(tau, _levels(prior))


def log_null_probability(prior, tau):
    """Natural log of the null probability, stable for large ``tau``."""
    prior = check_distribution(prior)
    tau = check_tau(tau)
    out = logsumexp(_decay(prior, tau), b=prior, axis=-1)
    return out if np.ndim(out) else float(out)


def null_probability(prior, tau):
    """Probability that no click is recorded up to ``tau``.

    ``sum_n p(x_n) exp(-n tau)``.
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    out = np.exp(-np.multiply.outer(tau, _levels(prior))) @ prior
    return out if np.ndim(out) else float(out)


def click_probability(prior, tau):
    """Probability of at least one click up to ``tau``.

    Computed with ``expm1`` so it stays accurate for small ``tau``.
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    out = -np.expm1(_decay(prior, tau)) @ prior
    return out if np.ndim(out) else float(out)


def posterior_null(prior, tau):
    """Distribution over levels conditioned on a null record.

    Entry ``n`` is ``p(x_n) exp(-n tau) / p_null``. Evaluated in log space,
    so a prior with ``p(x_0) = 0`` stays well defined at any finite ``tau``.

    Examples
    --------
    >>> posterior_null([0.5, 0.5], np.log(2))
    array([0.66666667, 0.33333333])
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    return softmax(_log_prior(prior) + _decay(prior, tau), axis=-1)


def posterior_click(prior, tau):
    """Distribution over levels conditioned on a click somewhere in ``[0, tau]``.

    Entry ``n`` is ``p(x_n) (1 - exp(-n tau)) / p_click``; entry 0 is exactly 0.

    Raises
    ------
    DegenerateOutcomeError
        If the click record has probability zero (``tau == 0`` or all prior
        weight on the vacuum).
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    weights = prior * -np.expm1(_decay(prior, tau))
    total = weights.sum(axis=-1, keepdims=True)
    if np.any(total <= 0):
        raise DegenerateOutcomeError(
            "click outcome has zero probability (tau == 0 or prior supported on n=0 only)"
        )
    return weights / total


def mean_level(dist):
    """Mean photon number of a distribution (or a stack of them)."""
    dist = np.asarray(dist, dtype=np.float64)
    out = dist @ _levels(dist)
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class OutcomeEnsemble:
    """The binary null/click record and its two conditional distributions.

    ``posterior_click`` is ``None`` when the click branch is absent (``tau = 0``
    or a vacuum-only prior).
    """

    tau: float
    p_null: float
    p_click: float
    posterior_null: np.ndarray
    posterior_click: Optional[np.ndarray]

    @property
    def click_absent(self):
        return self.posterior_click is None


def outcome_ensemble(prior, tau):
    """Bundle both outcomes of the null/click record at a single ``tau``."""
    prior = check_distribution(prior)
    tau = check_tau(tau)
    if not isinstance(tau, float):
        raise TypeError("outcome_ensemble takes a scalar tau")
    p_click = click_probability(prior, tau)
    click = posterior_click(prior, tau) if p_click > 0 else None
    return OutcomeEnsemble(
        tau=tau,
        p_null=null_probability(prior, tau),
        p_click=p_click,
        posterior_null=posterior_null(prior, tau),
        posterior_click=click,
    )
