"""Estimator base class so filters compose with scikit-learn tooling."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .validation import check_image_stack


class BaseImageFilter(TransformerMixin, BaseEstimator):
    """Stateless image-to-image transformer.

    ``transform`` accepts either one image ``(height, width)`` or a stack
    ``(n_images, height, width)`` and returns the same layout. ``fit`` only
    validates its input; none of the filters learn anything from data.

    Subclasses implement ``_filter_image(img) -> img`` on a validated uint8
    array and check their own hyperparameters in ``_validate_params``.
    """

    def fit(self, X, y=None):
        self._validate_params()
        check_image_stack(X)
        return self

    def transform(self, X):
        self._validate_params()
        stack, single = check_image_stack(X)
        out = np.stack([self._filter_image(img) for img in stack])
        return out[0] if single else out

    def _validate_params(self):
        pass

    def _filter_image(self, img):
        raise NotImplementedError

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        return tags
