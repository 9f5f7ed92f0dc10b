"""First-crossing times of the static quantities.

A coarse scan on a uniform grid brackets the first crossing, then plain
bisection narrows the bracket to ``xtol``.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import DegenerateInputError, check_distribution
from .information import get_quantity, info_gain, shannon_entropy

__all__ = [
    "ThresholdReport",
    "bisect",
    "find_threshold",
    "info_gain_threshold",
    "threshold_report",
    "reproduce_tables",
    "QUBIT_PRIORS",
    "QUTRIT_PRIORS",
    "PANELS",
    "TABLE_QUBIT",
    "TABLE_QUTRIT",
    "I_MAX_MODES",
]

SCAN_STEP = 1e-3
XTOL = 1e-10
DEFAULT_TAU_MAX = 5.0
I_MAX_MODES = ("window", "asymptotic")

PANELS = ("a", "b", "c", "d")

#: Priors of the four qubit and four qutrit panels.
QUBIT_PRIORS = (
    (0.5, 0.5),
    (0.6, 0.4),
    (0.2, 0.8),
    (0.3, 0.7),
)
QUTRIT_PRIORS = (
    (1 / 3, 1 / 3, 1 / 3),
    (0.2, 0.4, 0.4),
    (0.5, 0.3, 0.2),
    (0.2, 0.2, 0.6),
)

#: Published threshold times per panel: (F < 90%, P_rev < 50%, I(0) > 90% I_max).
TABLE_QUBIT = (
    (2.124, 1.104, 3.813),
    (2.475, 0.987, 3.562),
    (1.923, 1.806, 4.649),
    (1.873, 1.472, 4.348),
)
TABLE_QUTRIT = (
    (1.254, 0.585, 3.445),
    (1.237, 0.702, 3.913),
    (1.555, 0.485, 3.127),
    (1.070, 0.786, 3.662),
)


def bisect(func, lo, hi, xtol=XTOL, maxiter=200):
    """Root of ``func`` on ``[lo, hi]`` by bisection.

    ``func(lo)`` and ``func(hi)`` must have opposite signs (or one of them be
    zero). Returns the midpoint of the final bracket.
    """
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if math.copysign(1, f_lo) == math.copysign(1, f_hi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0:
            return mid
        if math.copysign(1, f_mid) == math.copysign(1, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_threshold(
    quantity,
    prior,
    target,
    direction="below",
    tau_max=DEFAULT_TAU_MAX,
    *,
    scan_step=SCAN_STEP,
    xtol=XTOL,
):
    """First ``tau`` in ``(0, tau_max]`` where a quantity crosses ``target``.

    Parameters
    ----------
    quantity : str or callable
        Name from :data:`nullmeas.information.QUANTITIES`, or ``f(prior, tau)``
        vectorised over ``tau``.
    direction : {"below", "above"}
        ``"below"`` finds the first ``Q(tau) < target``, ``"above"`` the first
        ``Q(tau) > target``. Touching the target without crossing does not
        count.

    Returns
    -------
    float or None
        ``None`` when the crossing is not reached inside the window.
    """
    if direction not in ("below", "above"):
        raise ValueError(f"direction must be 'below' or 'above', got {direction!r}")
    if not math.isfinite(target):
        raise ValueError(f"target must be finite, got {target!r}")
    if not (tau_max > 0 and math.isfinite(tau_max)):
        raise ValueError(f"tau_max must be positive and finite, got {tau_max!r}")
    func = get_quantity(quantity) if isinstance(quantity, str) else quantity
    prior = check_distribution(prior)

    n_steps = max(1, int(math.ceil(tau_max / scan_step - 1e-9)))
    grid = np.linspace(0.0, tau_max, n_steps + 1)
    values = np.asarray(func(prior, grid), dtype=np.float64)
    sign = 1.0 if direction == "above" else -1.0
    excess = sign * (values - target)
    if excess[0] > 0:
        raise ValueError(
            f"target {target!r} is already crossed at tau=0 (value {values[0]!r})"
        )
    hits = np.flatnonzero(excess > 0)
    if hits.size == 0:
        return None
    i = int(hits[0])

    def shifted(t):
        return sign * (float(func(prior, t)) - target)

    # bracket has shifted <= 0 at the left end and > 0 at the right end
    lo, hi = float(grid[i - 1]), float(grid[i])
    if shifted(lo) == 0:
        # touch at the grid point; the crossing is strictly inside (lo, hi]
        lo = math.nextafter(lo, hi)
    return bisect(shifted, lo, hi, xtol=xtol)


def info_gain_threshold(
    prior, fraction=0.9, i_max_mode="window", tau_max=DEFAULT_TAU_MAX, **kwargs
):
    """First ``tau`` at which the information gain exceeds ``fraction * I_max``.

    ``i_max_mode="window"`` takes ``I_max`` as the gain at ``tau_max``;
    ``"asymptotic"`` takes the long-time limit ``H(X)``.

    Raises
    ------
    DegenerateInputError
        When ``I_max <= 0``; the gain is identically zero for such priors.
    """
    if not 0 < fraction < 1:
        raise ValueError(f"fraction must lie in (0, 1), got {fraction!r}")
    if i_max_mode not in I_MAX_MODES:
        raise ValueError(f"i_max_mode must be one of {I_MAX_MODES}, got {i_max_mode!r}")
    prior = check_distribution(prior)
    if i_max_mode == "window":
        i_max = info_gain(prior, float(tau_max))
    else:
        i_max = shannon_entropy(prior)
    if not i_max > 0:
        raise DegenerateInputError(f"I_max = {i_max!r} <= 0; no information to gain")
    return find_threshold("info_gain", prior, fraction * i_max, "above", tau_max, **kwargs)


@dataclass(frozen=True)
class ThresholdReport:
    """Threshold times for one prior. ``None`` marks "not reached in window"."""

    prior: tuple
    tau_fidelity_90: Optional[float]
    tau_prev_50: Optional[float]
    tau_info_90: Optional[float]
    i_max_mode: str
    tau_max: float

    def as_dict(self):
        return {
            "prior": list(self.prior),
            "tau_fidelity_90": self.tau_fidelity_90,
            "tau_prev_50": self.tau_prev_50,
            "tau_info_90": self.tau_info_90,
            "i_max_mode": self.i_max_mode,
            "tau_max": self.tau_max,
        }

    def as_tuple(self):
        return (self.tau_fidelity_90, self.tau_prev_50, self.tau_info_90)


def threshold_report(prior, i_max_mode="window", tau_max=DEFAULT_TAU_MAX):
    prior = check_distribution(prior)
    try:
        tau_info = info_gain_threshold(prior, 0.9, i_max_mode, tau_max)
    except DegenerateInputError:
        tau_info = None
    return ThresholdReport(
        prior=tuple(float(p) for p in prior),
        tau_fidelity_90=find_threshold("fidelity", prior, 0.9, "below", tau_max),
        tau_prev_50=find_threshold("p_rev", prior, 0.5, "below", tau_max),
        tau_info_90=tau_info,
        i_max_mode=i_max_mode,
        tau_max=float(tau_max),
    )


def reproduce_tables(
    qubit_priors=QUBIT_PRIORS,
    qutrit_priors=QUTRIT_PRIORS,
    i_max_mode="window",
    tau_max=DEFAULT_TAU_MAX,
):
    """Threshold reports for the qubit table and the qutrit table."""
    return (
        [threshold_report(p, i_max_mode, tau_max) for p in qubit_priors],
        [threshold_report(p, i_max_mode, tau_max) for p in qutrit_priors],
    )
