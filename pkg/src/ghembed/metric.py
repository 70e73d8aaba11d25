"""Chebyshev and Euclidean distances, finite Hausdorff distance and metric checks.

Vectors are 1-D float arrays and point sets are ``(n_points, dim)`` arrays;
every function validates its inputs and raises ``ValueError`` on bad input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from ._validation import check_pair, check_point_set, check_same_dim, check_square_matrix

DEFAULT_TOL = 1e-9


def chebyshev_distance(x, y) -> float:
    """Return ``max_n |x_n - y_n|``."""
    x, y = check_pair(x, y)
    return float(np.max(np.abs(x - y)))


def euclidean_distance(x, y) -> float:
    x, y = check_pair(x, y)
    return float(np.sqrt(np.sum((x - y) ** 2)))


def check_bilipschitz(x, y, tol: float = 1e-12) -> tuple[bool, bool]:
    """Check ``d_inf <= d_2 <= sqrt(N) * d_inf`` for one pair of vectors.

    Returns ``(lower_ok, upper_ok)``.
    """
    x, y = check_pair(x, y)
    d_inf = chebyshev_distance(x, y)
    d_2 = euclidean_distance(x, y)
    upper = np.sqrt(x.size) * d_inf
    return bool(d_inf <= d_2 + tol), bool(d_2 <= upper + tol)


def pairwise_chebyshev(a, b=None) -> np.ndarray:
    """Chebyshev distance matrix between the rows of ``a`` and ``b``."""
    a = check_point_set(a, "a")
    b = a if b is None else check_point_set(b, "b")
    check_same_dim(a, b)
    return np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=-1)


def diameter(points) -> float:
    return float(pairwise_chebyshev(points).max())


def directed_hausdorff(a, b) -> tuple[float, int, int]:
    """Directed Hausdorff distance ``sup_{p in a} inf_{q in b} d(p, q)``.

    Returns the value with the realising indices ``(i, j)``; ties go to the
    lowest index.
    """
    dist = pairwise_chebyshev(a, b)
    nearest = dist.argmin(axis=1)
    mins = dist[np.arange(dist.shape[0]), nearest]
    i = int(mins.argmax())
    return float(mins[i]), i, int(nearest[i])


def hausdorff_distance_finite(a, b) -> float:
    """Hausdorff distance between two finite point sets under the Chebyshev metric."""
    dist = pairwise_chebyshev(a, b)
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


class MetricViolation(NamedTuple):
    kind: str  # "diagonal", "negative", "asymmetric" or "triangle"
    i: int
    j: int
    k: int | None
    amount: float

    def __str__(self) -> str:
        if self.kind == "triangle":
            return f"triangle violation ({self.i},{self.j}) via {self.k} by {self.amount:g}"
        return f"{self.kind} violation at ({self.i},{self.j}) by {self.amount:g}"


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A labelled finite metric space given by its distance matrix."""

    labels: tuple
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = check_square_matrix(self.matrix)
        labels = tuple(self.labels) if self.labels is not None else tuple(range(matrix.shape[0]))
        if len(labels) != matrix.shape[0]:
            raise ValueError(f"{len(labels)} labels for a {matrix.shape[0]}-point matrix")
        matrix = matrix.copy()
        matrix.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", matrix)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.matrix.max())

    @classmethod
    def from_points(cls, points, labels: Sequence | None = None) -> "FiniteMetricSpace":
        """Space of the given points under the Chebyshev metric."""
        return cls(labels, pairwise_chebyshev(points))

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteMetricSpace":
        matrix = data["matrix"]
        return cls(data.get("labels"), matrix)

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.matrix.tolist()}

    @classmethod
    def load(cls, path) -> "FiniteMetricSpace":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def validate_metric(space, tol: float = DEFAULT_TOL) -> list[MetricViolation]:
    """List every metric-axiom violation of a distance matrix.

    Checks zero diagonal, non-negativity, symmetry and the triangle
    inequality (exhaustively, O(n^3)). For a symmetric matrix each unordered
    pair is reported once, as ``i < j``. Returns ``[]`` for a valid metric.
    """
    m = space.matrix if isinstance(space, FiniteMetricSpace) else check_square_matrix(space)
    n = m.shape[0]
    out: list[MetricViolation] = []
    for i in range(n):
        if abs(m[i, i]) > tol:
            out.append(MetricViolation("diagonal", i, i, None, float(abs(m[i, i]))))
    for i, j in zip(*np.nonzero(m < -tol)):
        out.append(MetricViolation("negative", int(i), int(j), None, float(-m[i, j])))
    asym = np.abs(m - m.T)
    symmetric = True
    for i, j in zip(*np.nonzero(asym > tol)):
        symmetric = False
        if i < j:
            out.append(MetricViolation("asymmetric", int(i), int(j), None, float(asym[i, j])))
    # excess[i, k, j] = m[i, j] - (m[i, k] + m[k, j])
    excess = m[:, None, :] - (m[:, :, None] + m[None, :, :])
    for i, k, j in zip(*np.nonzero(excess > tol)):
        if i == j or k in (i, j) or (symmetric and i > j):
            continue
        out.append(MetricViolation("triangle", int(i), int(j), int(k), float(excess[i, k, j])))
    return out


def load_point_set(path) -> np.ndarray:
    """Read ``{"dim": N, "points": [[...], ...]}``."""
    with open(path) as fh:
        data = json.load(fh)
    points = check_point_set(data["points"])
    if "dim" in data and int(data["dim"]) != points.shape[1]:
        raise ValueError(f"declared dim {data['dim']} but points have dim {points.shape[1]}")
    return points


def dump_point_set(points, path) -> None:
    points = check_point_set(points)
    with open(path, "w") as fh:
        json.dump({"dim": int(points.shape[1]), "points": points.tolist()}, fh, indent=2)
        fh.write("\n")
