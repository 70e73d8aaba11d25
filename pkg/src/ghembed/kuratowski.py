"""Finite metric spaces into (R^n, Chebyshev), and on into scaffolds.

Point ``x_j`` goes to the vector whose ``i``-th coordinate is
``d(x_j, x_i) - d(x_i, x_base)``. The triangle inequality bounds every
coordinate difference by ``d(x_j, x_k)`` and coordinate ``i = k`` attains
it, so the map is an isometry for the sup norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hausdorff import scaffold_distance_matrix
from .metric import FiniteMetricSpace, validate_metric
from .scaffold import Scaffold, Variant, build_scaffold, normalize


@dataclass(frozen=True, eq=False)
class EmbeddedSpace:
    source: FiniteMetricSpace
    images: np.ndarray  # row j is the image of point j
    base_index: int


def _as_space(m) -> FiniteMetricSpace:
    return m if isinstance(m, FiniteMetricSpace) else FiniteMetricSpace(None, m)


def kuratowski_coordinates(dist_to_fitted, fitted: np.ndarray, base_index: int) -> np.ndarray:
    """Images of points given their distances to the fitted points.

    ``dist_to_fitted`` has shape ``(k, n)``; ``fitted`` is the ``(n, n)``
    distance matrix of the reference points.
    """
    return np.asarray(dist_to_fitted, dtype=float) - fitted[:, base_index][None, :]


def kuratowski_embed(m, base_index: int = 0, tol: float = 1e-9) -> EmbeddedSpace:
    space = _as_space(m)
    n = len(space)
    if not 0 <= base_index < n:
        raise IndexError(f"base index {base_index} outside 0..{n - 1}")
    violations = validate_metric(space, tol)
    if violations:
        raise ValueError(f"not a metric: {violations[0]}" + (f" (+{len(violations) - 1} more)" if len(violations) > 1 else ""))
    d = np.asarray(space.matrix)
    images = kuratowski_coordinates(d, d, base_index)
    return EmbeddedSpace(space, images, base_index)


@dataclass(frozen=True, eq=False)
class FiniteEmbedding:
    embedded: EmbeddedSpace
    bound: float
    scaffolds: tuple
    recovered: FiniteMetricSpace


def embed_finite_space(m, variant=Variant.FULL_SQUARE, base_index: int = 0) -> FiniteEmbedding:
    """Send each point of a finite metric space to a scaffold.

    The recovered matrix holds the exact Hausdorff distances between the
    scaffolds and reproduces the input distances.
    """
    emb = kuratowski_embed(m, base_index)
    translated, bound = normalize(emb.images)
    scaffolds = tuple(build_scaffold(row, bound, variant) for row in translated)
    recovered = FiniteMetricSpace(emb.source.labels, scaffold_distance_matrix(scaffolds))
    return FiniteEmbedding(emb, bound, scaffolds, recovered)
