"""scikit-learn style front ends for the two embeddings.

``KuratowskiEmbedding`` turns precomputed distances into Chebyshev vectors
and ``ScaffoldEmbedding`` turns bounded vectors into scaffolds, so a finite
metric space goes to the Gromov-Hausdorff space through::

    make_pipeline(KuratowskiEmbedding(), ScaffoldEmbedding()).fit_transform(D)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_point_set, check_square_matrix
from .hausdorff import scaffold_distance_matrix
from .kuratowski import kuratowski_coordinates
from .metric import validate_metric
from .scaffold import Scaffold, ScaffoldParams, as_variant


class ScaffoldEmbedding(TransformerMixin, BaseEstimator):
    """Map rows of ``X`` (a bounded set in the Chebyshev space) to scaffolds.

    Parameters
    ----------
    variant : str, default="full-square"
        Block shape: "full-square", "frame", "four-corners" or "three-points".
    bound : float or None, default=None
        Side ``M`` of the box the translated data must fit in. ``None``
        takes the span of the training data (1 for a single point).

    Attributes
    ----------
    offset_ : ndarray of shape (n_features,)
        Per-coordinate minimum of the training data, subtracted before embedding.
    bound_ : float
    params_ : ScaffoldParams
    """

    def __init__(self, variant="full-square", bound=None):
        self.variant = variant
        self.bound = bound

    def fit(self, X, y=None):
        X = check_point_set(X, "X")
        variant = as_variant(self.variant)
        self.offset_ = X.min(axis=0)
        span = float((X - self.offset_).max())
        if self.bound is None:
            bound = span if span > 0 else 1.0
        else:
            bound = float(self.bound)
            if bound < span:
                raise ValueError(f"bound={bound} is smaller than the data span {span}")
        self.bound_ = bound
        self.params_ = ScaffoldParams(X.shape[1], bound, variant)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> list:
        check_is_fitted(self, "params_")
        X = check_point_set(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, fitted with {self.n_features_in_}")
        shifted = X - self.offset_
        return [Scaffold(self.params_, tuple(row)) for row in shifted]

    def distances(self, X) -> np.ndarray:
        """Pairwise Hausdorff distances between the scaffolds of the rows of ``X``."""
        return scaffold_distance_matrix(self.transform(X))


class KuratowskiEmbedding(TransformerMixin, BaseEstimator):
    """Isometric embedding of a finite metric space into (R^n, Chebyshev).

    Expects precomputed distances. ``fit`` takes the ``(n, n)`` distance
    matrix of the reference points; ``transform`` takes the ``(k, n)``
    distances from new points to those references, so ``fit_transform(D)``
    embeds the references themselves.

    Parameters
    ----------
    base_index : int, default=0
        Index of the reference point whose image is the origin.
    tol : float, default=1e-9
        Tolerance for the metric check in ``fit``.
    """

    def __init__(self, base_index=0, tol=1e-9):
        self.base_index = base_index
        self.tol = tol

    def fit(self, X, y=None):
        D = check_square_matrix(X, "distance matrix")
        if not 0 <= self.base_index < D.shape[0]:
            raise ValueError(f"base_index {self.base_index} outside 0..{D.shape[0] - 1}")
        violations = validate_metric(D, self.tol)
        if violations:
            raise ValueError(f"not a metric: {violations[0]}")
        self.reference_distances_ = D
        self.n_features_in_ = D.shape[0]
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "reference_distances_")
        X = check_point_set(X, "distances")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected distances to {self.n_features_in_} reference points, got {X.shape[1]}")
        return kuratowski_coordinates(X, self.reference_distances_, self.base_index)
