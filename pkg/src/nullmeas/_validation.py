"""Input validation helpers shared by every public entry point."""

import numbers

import numpy as np

#: Tolerance on the sum of a user supplied distribution.
SUM_ATOL = 1e-9
_RENORM_ATOL = 1e-12


class InvalidDistributionError(ValueError):
    """Raised when a probability vector over photon numbers is malformed."""


class DegenerateOutcomeError(ValueError):
    """Raised when conditioning on an outcome that has probability zero."""


class DegenerateInputError(ValueError):
    """Raised when a prior carries no information to threshold against."""


def check_distribution(probs, *, atol=SUM_ATOL, name="prior"):
    """Validate a photon-number distribution and return it as a float array.

    Entries must be finite, lie in ``[0, 1]`` and sum to one within ``atol``.
    At least two levels are required. A sum off by more than ``1e-12`` is
    renormalised; closer sums are left alone so validation is idempotent.

    Parameters
    ----------
    probs : array-like of shape (n_levels,)
        Probabilities ``p(x_n)`` for ``n = 0 .. n_levels - 1``.
    atol : float, default=1e-9
        Allowed deviation of the sum from one.
    name : str, default="prior"
        Used in error messages.

    Returns
    -------
    ndarray of shape (n_levels,)
    """
    try:
        arr = np.array(probs, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidDistributionError(f"{name} is not numeric: {exc}") from None
    if arr.ndim == 2 and arr.shape[0] == 1:
        arr = arr[0]
    if arr.ndim != 1:
        raise InvalidDistributionError(
            f"{name} must be one-dimensional, got shape {arr.shape}"
        )
    if arr.size < 2:
        raise InvalidDistributionError(f"{name} needs at least 2 levels, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistributionError(f"{name} contains non-finite entries")
    if np.any(arr < 0) or np.any(arr > 1):
        raise InvalidDistributionError(f"{name} entries must lie in [0, 1]")
    total = arr.sum()
    if abs(total - 1.0) > atol:
        raise InvalidDistributionError(
            f"{name} must sum to 1 (within {atol:g}), got {total!r}"
        )
    if abs(total - 1.0) > _RENORM_ATOL:
        arr = arr / total
    return arr


def check_tau(tau, *, name="tau"):
    """Validate scaled time(s) ``tau = 2*gamma*t``.

    Scalars come back as ``float``, anything else as a float ndarray.
    """
    if isinstance(tau, numbers.Real) and not isinstance(tau, bool):
        value = float(tau)
        if not np.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value!r}")
        return value
    arr = np.asarray(tau, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    return arr


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value!r}")
    return int(value)
