"""Static information measures of a null-result measurement.

Every quantity is a function of the prior ``p(x_n)`` and the scaled time
``tau`` only. Logarithms are base 2 throughout.
"""

from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import entr, rel_entr

from ._validation import check_distribution, check_tau
from .measurement import (
    click_probability,
    log_null_probability,
    null_probability,
    posterior_null,
)

__all__ = [
    "InfoSnapshot",
    "shannon_entropy",
    "conditional_entropy",
    "info_gain",
    "mutual_information",
    "fidelity",
    "reversal_probability",
    "relative_entropy",
    "snapshot",
    "info_curves",
    "SNAPSHOT_COLUMNS",
    "QUANTITIES",
    "get_quantity",
]

# probabilities below this are exact zeros inside entropy sums
_TINY = 1e-300


def _as_output(value):
    return value if np.ndim(value) else float(value)


def shannon_entropy(dist):
    """Shannon entropy in bits, with ``0 log 0 = 0``.

    Accepts a single distribution or a stack along the last axis; stacks
    are not re-validated.

    >>> shannon_entropy([0.5, 0.5])
    1.0
    """
    arr = np.asarray(dist, dtype=np.float64)
    if arr.ndim == 1:
        arr = check_distribution(arr, name="dist")
    arr = np.where(arr < _TINY, 0.0, arr)
    return _as_output(entr(arr).sum(axis=-1) / np.log(2))


def conditional_entropy(prior, tau):
    """Entropy of the null-conditioned distribution, ``H(X|y0)``."""
    return shannon_entropy(posterior_null(prior, tau))


def info_gain(prior, tau):
    """Unaveraged information gain of a null record, ``H(X) - H(X|y0)``.

    This is not sign constrained: for biased priors the null posterior can
    be more uncertain than the prior at short times.
    """
    prior = check_distribution(prior)
    return _as_output(shannon_entropy(prior) - conditional_entropy(prior, tau))


def _click_entropy(prior, tau):
    weights = prior * -np.expm1(-np.multiply.outer(tau, np.arange(prior.size)))
    total = weights.sum(axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        dist = np.where(total > 0, weights / total, 0.0)
    dist = np.where(dist < _TINY, 0.0, dist)
    return entr(dist).sum(axis=-1) / np.log(2)


def mutual_information(prior, tau):
    """Mutual information between photon number and the null/click record.

    ``H(X) - p_null H(X|y0) - p_click H(X|y1)``. At ``tau = 0`` the click
    branch has zero weight and the result is 0.
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    p_null = null_probability(prior, tau)
    p_click = click_probability(prior, tau)
    value = (
        shannon_entropy(prior)
        - p_null * conditional_entropy(prior, tau)
        - p_click * _click_entropy(prior, tau)
    )
    # non-negative analytically; clip rounding residue
    return _as_output(np.maximum(value, 0.0))


def fidelity(prior, tau):
    """Classical (Bhattacharyya) fidelity between prior and null posterior.

    Equal to ``sum_n p(x_n) exp(-n tau / 2) / sqrt(p_null)``; note the half
    rate in the exponent.
    """
    prior = check_distribution(prior)
    post = posterior_null(prior, tau)
    value = np.sqrt(prior * post).sum(axis=-1)
    return _as_output(np.minimum(value, 1.0))


def reversal_probability(prior, tau):
    """Success probability of undoing the null-result update.

    ``exp(-N tau) / p_null`` where ``N = len(prior) - 1`` is the declared
    truncation, even when the top level carries zero weight.
    """
    prior = check_distribution(prior)
    tau = check_tau(tau)
    top = prior.size - 1
    log_value = -top * np.asarray(tau) - log_null_probability(prior, tau)
    return _as_output(np.minimum(np.exp(log_value), 1.0))


def relative_entropy(prior, tau):
    """KL divergence ``D(p(x|y0) || p(x))`` in bits.

    Terms outside the prior's support vanish because the null posterior
    never puts weight there.
    """
    prior = check_distribution(prior)
    post = posterior_null(prior, tau)
    post = np.where(post < _TINY, 0.0, post)
    value = rel_entr(post, prior).sum(axis=-1) / np.log(2)
    return _as_output(np.maximum(value, 0.0))


@dataclass(frozen=True)
class InfoSnapshot:
    """All static quantities at one ``tau``. Entropies are in bits."""

    tau: float
    p_null: float
    entropy_prior: float
    entropy_post_null: float
    info_gain: float
    mutual_info: float
    fidelity: float
    p_rev: float
    rel_entropy: float

    def as_dict(self):
        return asdict(self)


def snapshot(prior, tau):
    prior = check_distribution(prior)
    tau = check_tau(tau)
    if not isinstance(tau, float):
        raise TypeError("snapshot takes a scalar tau; use information curves for grids")
    h_prior = shannon_entropy(prior)
    h_post = conditional_entropy(prior, tau)
    return InfoSnapshot(
        tau=tau,
        p_null=null_probability(prior, tau),
        entropy_prior=h_prior,
        entropy_post_null=h_post,
        info_gain=h_prior - h_post,
        mutual_info=mutual_information(prior, tau),
        fidelity=fidelity(prior, tau),
        p_rev=reversal_probability(prior, tau),
        rel_entropy=relative_entropy(prior, tau),
    )


SNAPSHOT_COLUMNS = tuple(InfoSnapshot.__dataclass_fields__)


def info_curves(prior, taus):
    """Vectorised :func:`snapshot` over a grid; maps column name to array."""
    prior = check_distribution(prior)
    taus = np.atleast_1d(check_tau(taus)).astype(np.float64)
    h_prior = shannon_entropy(prior)
    h_post = conditional_entropy(prior, taus)
    return {
        "tau": taus,
        "p_null": null_probability(prior, taus),
        "entropy_prior": np.full_like(taus, h_prior),
        "entropy_post_null": h_post,
        "info_gain": h_prior - h_post,
        "mutual_info": mutual_information(prior, taus),
        "fidelity": fidelity(prior, taus),
        "p_rev": reversal_probability(prior, taus),
        "rel_entropy": relative_entropy(prior, taus),
    }


#: Static quantities addressable by name, each ``f(prior, tau)``.
QUANTITIES = {
    "p_null": null_probability,
    "entropy_post_null": conditional_entropy,
    "info_gain": info_gain,
    "mutual_info": mutual_information,
    "fidelity": fidelity,
    "p_rev": reversal_probability,
    "rel_entropy": relative_entropy,
}


def get_quantity(name):
    try:
        return QUANTITIES[name]
    except KeyError:
        raise ValueError(
            f"unknown quantity {name!r}; choose from {sorted(QUANTITIES)}"
        ) from None
