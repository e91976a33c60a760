"""scikit-learn compatible wrappers.

``SDREECipher`` treats encryption as a transform with an exact inverse;
``RepetitionStats`` turns messages into a numeric feature matrix of repetition
metrics. Both accept an iterable of byte messages, the way text vectorizers
accept an iterable of documents, so they chain in a ``Pipeline``::

    Pipeline([("enc", SDREECipher(key=b"hello world")), ("stats", RepetitionStats())])
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_key, check_messages, check_positive_int
from .analysis import ByteStats
from .cipher import StreamCipher
from .keyderive import derive_key
from .numtheory import params_from_derivation

__all__ = ["SDREECipher", "RepetitionStats"]


class SDREECipher(TransformerMixin, BaseEstimator):
    """Encrypt each message with parameters derived from ``key``.

    Parameters
    ----------
    key : bytes or str, default=None
        Pass key. ``str`` is encoded as UTF-8.
    code, power_ex : int, default=None
        Explicit parameters. When both are set they take precedence over
        ``key``; setting only one is an error.

    Attributes
    ----------
    trace_ : KeyDerivationTrace or None
        Intermediates of the key derivation; ``None`` with explicit parameters.
    params_ : CipherParams
    """

    def __init__(self, key=None, code=None, power_ex=None):
        self.key = key
        self.code = code
        self.power_ex = power_ex

    def fit(self, X=None, y=None):
        """Derive the cipher parameters. ``X`` is ignored."""
        if (self.code is None) != (self.power_ex is None):
            raise ValueError("code and power_ex must be given together")
        if self.code is not None:
            self.trace_ = None
            self.params_ = params_from_derivation(
                check_positive_int(self.code, "code"),
                check_positive_int(self.power_ex, "power_ex"),
            )
        elif self.key is not None:
            self.trace_ = derive_key(check_key(self.key))
            self.params_ = params_from_derivation(self.trace_.code, self.trace_.power_ex)
        else:
            raise ValueError("either key or both code and power_ex are required")
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        return [StreamCipher(self.params_).update(m) for m in check_messages(X)]

    def inverse_transform(self, X):
        check_is_fitted(self, "params_")
        return [StreamCipher(self.params_, decrypt=True).update(m) for m in check_messages(X)]

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.requires_fit = True
        return tags


class RepetitionStats(TransformerMixin, BaseEstimator):
    """Map each message to ``[total, distinct, max_run, ic, chi2]``.

    Undefined statistics on very short messages are ``nan``.
    """

    _FEATURES = ("total", "distinct_bytes", "max_run_length", "index_of_coincidence", "chi_square_uniform")

    def fit(self, X=None, y=None):
        self.n_features_out_ = len(self._FEATURES)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = []
        for m in check_messages(X):
            r = ByteStats().update(m).report()
            rows.append([
                r.total,
                r.distinct_bytes,
                r.max_run_length,
                np.nan if r.index_of_coincidence is None else r.index_of_coincidence,
                np.nan if r.chi_square_uniform is None else r.chi_square_uniform,
            ])
        return np.asarray(rows, dtype=np.float64).reshape(-1, len(self._FEATURES))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self._FEATURES, dtype=object)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.requires_fit = False
        return tags
