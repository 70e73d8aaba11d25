"""Exact Hausdorff distance between two scaffolds sharing ``N``, ``M`` and variant.

Two such scaffolds have identical blocks, so every block point has a copy
at distance 0 in the other scaffold and only the markers can contribute.
The directed contribution of a marker is its exact distance to the nearest
component of the other scaffold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .metric import chebyshev_distance, hausdorff_distance_finite
from .scaffold import Scaffold, Variant, sample_scaffold


@dataclass(frozen=True)
class NearestComponentReport:
    query: tuple
    kind: str  # "marker" or "block"
    index: int
    sign: str | None
    distance: float


def nearest_component(p, k: Scaffold) -> NearestComponentReport:
    """Closest marker or block of ``k`` to the planar point ``p``.

    Markers are scanned before blocks and ties keep the first hit, so the
    lowest index (and a marker over a block) wins.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (2,):
        raise ValueError(f"query must be a planar point, got shape {p.shape}")
    flat = k.markers.reshape(-1, 2)
    mdist = np.max(np.abs(flat - p), axis=1)
    i = int(mdist.argmin())
    best = NearestComponentReport(tuple(p), "marker", i // 2 + 1, "+-"[i % 2], float(mdist[i]))
    for b in k.blocks:
        dist = b.distance(p)
        if dist < best.distance:
            best = NearestComponentReport(tuple(p), "block", b.index, None, dist)
    return best


class HausdorffWitness(NamedTuple):
    value: float
    marker: int  # 1-based index of the realising marker pair
    sign: str
    direction: str  # "a->b" or "b->a"


def _check_compatible(ka: Scaffold, kb: Scaffold) -> None:
    if ka.params != kb.params:
        raise ValueError(
            "scaffolds must share N, M and variant: "
            f"{ka.params} vs {kb.params}"
        )


def component_distances(points, k: Scaffold) -> tuple[np.ndarray, np.ndarray]:
    """Exact distances from planar ``points`` to every marker and block of ``k``.

    Returns arrays of shape ``(P, 2N)`` (markers in order ``p_1^+, p_1^-,
    ...``) and ``(P, N)``.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    markers = k.markers.reshape(-1, 2)
    mdist = np.max(np.abs(pts[:, None, :] - markers[None, :, :]), axis=2)
    p = k.params
    m = p.bound
    x0 = p.c + p.d * np.arange(p.dim)
    if p.variant.is_finite:
        local = p.variant.local_points(m)
        ext = np.stack([local[:, 0][None, :] + x0[:, None], np.broadcast_to(local[:, 1], (p.dim, len(local)))], axis=2)
        diff = np.abs(pts[:, None, None, :] - ext[None, :, :, :])
        return mdist, diff.max(axis=3).min(axis=2)
    px, py = pts[:, :1], pts[:, 1:]
    dx = np.maximum(np.maximum(x0 - px, 0.0), px - (x0 + 2 * m))
    dy = np.maximum(np.maximum(-m - py, 0.0), py - m)
    bdist = np.maximum(dx, dy)
    if p.variant is Variant.FRAME:
        gap = np.minimum(np.minimum(px - x0, x0 + 2 * m - px), np.minimum(py + m, m - py))
        bdist = np.where(bdist > 0, bdist, np.maximum(gap, 0.0))
    return mdist, bdist


def _nearest(points, k: Scaffold) -> np.ndarray:
    mdist, bdist = component_distances(points, k)
    return np.minimum(mdist.min(axis=1), bdist.min(axis=1))


def scaffold_hausdorff_witness(ka: Scaffold, kb: Scaffold, check: bool = True) -> HausdorffWitness:
    """Exact Hausdorff distance with the marker that realises it.

    With ``check`` the structural value is compared to the Chebyshev
    distance of the encoded points and every block's directed contribution
    is confirmed to be 0; a mismatch raises ``AssertionError``.
    The witness is the first realising marker in the order a->b before
    b->a, then by index, ``+`` before ``-``.
    """
    _check_compatible(ka, kb)
    contrib = np.concatenate([_nearest(ka.markers, kb), _nearest(kb.markers, ka)])
    i = int(contrib.argmax())
    half, rest = divmod(i, 2 * ka.dim)
    best = HausdorffWitness(float(contrib[i]), rest // 2 + 1, "+-"[rest % 2], ("a->b", "b->a")[half])
    if check:
        for src, dst in ((ka, kb), (kb, ka)):
            corners = np.concatenate([b.extreme_points() for b in src.blocks])
            bad = np.nonzero(_nearest(corners, dst) != 0.0)[0]
            if bad.size:
                raise AssertionError(f"block point {tuple(corners[bad[0]])} has a nonzero directed contribution")
        expected = chebyshev_distance(ka.x, kb.x)
        if best.value != expected:
            raise AssertionError(f"structural Hausdorff {best.value} != Chebyshev distance {expected}")
    return best


def scaffold_hausdorff(ka: Scaffold, kb: Scaffold, check: bool = True) -> float:
    return scaffold_hausdorff_witness(ka, kb, check).value


def scaffold_hausdorff_sampled(ka: Scaffold, kb: Scaffold, eps: float) -> float:
    """Finite Hausdorff distance between ``eps``-dense samples of both scaffolds.

    Within ``2 * eps`` of the exact value.
    """
    _check_compatible(ka, kb)
    return hausdorff_distance_finite(sample_scaffold(ka, eps), sample_scaffold(kb, eps))


def scaffold_distance_matrix(scaffolds) -> np.ndarray:
    """Pairwise exact Hausdorff distances of a list of compatible scaffolds."""
    scaffolds = list(scaffolds)
    n = len(scaffolds)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = scaffold_hausdorff(scaffolds[i], scaffolds[j])
    return out
