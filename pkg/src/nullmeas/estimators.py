"""scikit-learn compatible wrappers.

:class:`NullResultTransformer` maps a column of scaled times to the
information measures (and optionally their rates) for a fixed prior, so the
curves can sit inside a ``Pipeline`` or ``ColumnTransformer``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_distribution, check_tau
from .information import SNAPSHOT_COLUMNS, info_curves
from .measurement import posterior_null
from .rates import RATE_COLUMNS, rate_curves

__all__ = ["NullResultTransformer"]


class NullResultTransformer(TransformerMixin, BaseEstimator):
    """Evaluate null-result information measures at the given scaled times.

    Parameters
    ----------
    prior : array-like of shape (n_levels,)
        Photon-number distribution ``p(x_n)``.
    rates : bool, default=False
        Append ``d_info_gain``, ``d_fidelity`` and ``d_p_rev``.
    quantities : sequence of str, default=None
        Subset of output columns to keep, in the given order. ``None`` keeps
        every static column except ``tau``.

    Attributes
    ----------
    prior_ : ndarray of shape (n_levels,)
        Validated, renormalised prior.
    n_levels_ : int
    n_features_in_ : int
        Always 1: the single input column is ``tau``.
    feature_names_out_ : tuple of str

    Examples
    --------
    >>> import numpy as np
    >>> t = NullResultTransformer(prior=[0.5, 0.5], quantities=["fidelity"])
    >>> t.fit_transform(np.array([[0.0]]))
    array([[1.]])
    """

    def __init__(self, prior=(0.5, 0.5), rates=False, quantities=None):
        self.prior = prior
        self.rates = rates
        self.quantities = quantities

    def _all_columns(self):
        cols = SNAPSHOT_COLUMNS[1:]
        return cols + RATE_COLUMNS if self.rates else cols

    def fit(self, X=None, y=None):
        self.prior_ = check_distribution(self.prior)
        self.n_levels_ = self.prior_.size
        available = self._all_columns()
        if self.quantities is None:
            names = available
        else:
            names = tuple(self.quantities)
            missing = [q for q in names if q not in available]
            if missing:
                raise ValueError(f"unknown quantities {missing}; available: {available}")
        self.feature_names_out_ = names
        self.n_features_in_ = 1
        return self

    def _taus(self, X):
        X = check_array(X, ensure_2d=False, dtype=np.float64)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single tau column, got {X.shape[1]} columns")
            X = X[:, 0]
        return check_tau(X)

    def transform(self, X):
        """Return an array of shape (n_samples, n_outputs)."""
        check_is_fitted(self, "prior_")
        taus = self._taus(X)
        cols = info_curves(self.prior_, taus)
        if self.rates:
            cols.update(rate_curves(self.prior_, taus))
        return np.column_stack([cols[name] for name in self.feature_names_out_])

    def posterior(self, X):
        """Null-conditioned distributions, shape (n_samples, n_levels)."""
        check_is_fitted(self, "prior_")
        return posterior_null(self.prior_, self._taus(X))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return np.asarray(self.feature_names_out_, dtype=object)
