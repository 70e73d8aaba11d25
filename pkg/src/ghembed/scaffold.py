"""Planar scaffold sets encoding a point of a bounded Chebyshev set.

For a point ``x`` in ``[0, M]^N`` the scaffold is the union, over
``n = 1..N``, of a marker pair ``(D(n-1), +x_n)``, ``(D(n-1), -x_n)`` and a
block of width and height ``2M`` whose left edge sits at abscissa
``C + D(n-1)``, where ``C = 4M`` and ``D = 10M``. Blocks can be full
squares or one of three thinner variants that keep the corners the
construction relies on. The ambient plane carries the Chebyshev metric.

Blocks are stored analytically; point clouds are produced only on request
by :func:`sample_scaffold` and :func:`sparse_sample`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._validation import check_point_set, check_positive, check_vector


class Variant(str, enum.Enum):
    FULL_SQUARE = "full-square"
    FRAME = "frame"
    FOUR_CORNERS = "four-corners"
    THREE_POINTS = "three-points"

    @property
    def is_finite(self) -> bool:
        return self in (Variant.FOUR_CORNERS, Variant.THREE_POINTS)

    def local_points(self, bound: float) -> np.ndarray:
        """Extreme points of the block in block-local coordinates ``(a, b)``.

        For the finite variants this is the whole block. For the square and
        the frame it is the four corners, where every supremum of a
        Chebyshev distance over the block is attained.
        """
        m = bound
        if self is Variant.THREE_POINTS:
            return np.array([[0.0, -m], [0.0, m], [2 * m, 0.0]])
        return np.array([[0.0, -m], [0.0, m], [2 * m, -m], [2 * m, m]])


def as_variant(value) -> Variant:
    if isinstance(value, Variant):
        return value
    try:
        return Variant(str(value).lower().replace("_", "-"))
    except ValueError:
        names = ", ".join(v.value for v in Variant)
        raise ValueError(f"unknown block variant {value!r}; expected one of {names}") from None


@dataclass(frozen=True)
class ScaffoldParams:
    dim: int
    bound: float
    variant: Variant = Variant.FULL_SQUARE

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "bound", check_positive(self.bound, "bound M"))
        object.__setattr__(self, "variant", as_variant(self.variant))

    @property
    def c(self) -> float:
        return 4 * self.bound

    @property
    def d(self) -> float:
        return self.c + 2 * self.bound + self.c

    def block_left(self, n: int) -> float:
        """Abscissa of the left edge of block ``n`` (1-based)."""
        return self.c + self.d * (n - 1)

    def marker_abscissa(self, n: int) -> float:
        return self.d * (n - 1)


@dataclass(frozen=True)
class Block:
    """Block ``index`` (1-based): ``[x0, x0 + 2M] x [-M, M]`` or a variant subset."""

    index: int
    x0: float
    half_height: float
    variant: Variant

    @property
    def x1(self) -> float:
        return self.x0 + 2 * self.half_height

    @property
    def y0(self) -> float:
        return -self.half_height

    @property
    def y1(self) -> float:
        return self.half_height

    def extreme_points(self) -> np.ndarray:
        pts = self.variant.local_points(self.half_height)
        pts[:, 0] += self.x0
        return pts

    def contains(self, p, tol: float = 0.0) -> bool:
        px, py = float(p[0]), float(p[1])
        if self.variant.is_finite:
            return bool(np.any(np.max(np.abs(self.extreme_points() - (px, py)), axis=1) <= tol))
        inside = (self.x0 - tol <= px <= self.x1 + tol) and (self.y0 - tol <= py <= self.y1 + tol)
        if not inside or self.variant is Variant.FULL_SQUARE:
            return inside
        return self._interior_gap(px, py) <= tol

    def _interior_gap(self, px: float, py: float) -> float:
        return min(px - self.x0, self.x1 - px, py - self.y0, self.y1 - py)

    def distance(self, p) -> float:
        """Exact Chebyshev distance from a planar point to the block."""
        px, py = float(p[0]), float(p[1])
        if self.variant.is_finite:
            return float(np.max(np.abs(self.extreme_points() - (px, py)), axis=1).min())
        dx = max(self.x0 - px, 0.0, px - self.x1)
        dy = max(self.y0 - py, 0.0, py - self.y1)
        outside = max(dx, dy)
        if outside > 0 or self.variant is Variant.FULL_SQUARE:
            return outside
        # a point inside the frame has to reach the nearest edge
        return max(self._interior_gap(px, py), 0.0)

    def farthest(self, p) -> float:
        """Supremum of the Chebyshev distance from ``p`` over the block."""
        return float(np.max(np.abs(self.extreme_points() - (float(p[0]), float(p[1])))))

    def sample(self, spacing: float) -> np.ndarray:
        """Points of the block on a grid of step at most ``spacing``.

        The covering radius of the result is at most ``spacing / 2`` (zero
        for the finite variants, which are returned whole).
        """
        if self.variant.is_finite:
            return self.extreme_points()
        side = 2 * self.half_height
        k = max(1, math.ceil(side / spacing - 1e-12))
        xs = self.x0 + side * np.arange(k + 1) / k
        ys = self.y0 + side * np.arange(k + 1) / k
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        if self.variant is Variant.FRAME:
            on_edge = (
                np.isin(gx.ravel(), (xs[0], xs[-1])) | np.isin(gy.ravel(), (ys[0], ys[-1]))
            )
            pts = pts[on_edge]
        return pts


@dataclass(frozen=True)
class Scaffold:
    """The scaffold set of one point ``x``; markers and blocks are derived."""

    params: ScaffoldParams
    x: tuple

    def __post_init__(self):
        x = check_vector(self.x)
        if x.size != self.params.dim:
            raise ValueError(f"x has {x.size} coordinates, params say dim={self.params.dim}")
        m = self.params.bound
        bad = np.nonzero((x < 0) | (x > m))[0]
        if bad.size:
            n = int(bad[0])
            raise ValueError(f"coordinate x[{n}]={x[n]} outside [0, {m}]")
        object.__setattr__(self, "x", tuple(float(v) for v in x))

    @property
    def dim(self) -> int:
        return self.params.dim

    @property
    def bound(self) -> float:
        return self.params.bound

    @property
    def variant(self) -> Variant:
        return self.params.variant

    def marker(self, n: int, sign: str = "+") -> np.ndarray:
        """Marker ``p_n^sign`` for 1-based ``n``."""
        if not 1 <= n <= self.dim:
            raise IndexError(f"marker index {n} outside 1..{self.dim}")
        if sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {sign!r}")
        y = self.x[n - 1] if sign == "+" else -self.x[n - 1]
        return np.array([self.params.marker_abscissa(n), y])

    @cached_property
    def markers(self) -> np.ndarray:
        """Array of shape ``(N, 2, 2)``: ``markers[n-1, 0]`` is ``p_n^+``, ``[n-1, 1]`` is ``p_n^-``."""
        out = np.empty((self.dim, 2, 2))
        for i, xn in enumerate(self.x):
            a = self.params.marker_abscissa(i + 1)
            out[i, 0] = (a, xn)
            out[i, 1] = (a, -xn)
        out.setflags(write=False)
        return out

    @cached_property
    def blocks(self) -> tuple[Block, ...]:
        p = self.params
        return tuple(Block(n, p.block_left(n), p.bound, p.variant) for n in range(1, p.dim + 1))

    def block(self, n: int) -> Block:
        if not 1 <= n <= self.dim:
            raise IndexError(f"block index {n} outside 1..{self.dim}")
        return self.blocks[n - 1]

    def marker_points(self) -> np.ndarray:
        """Distinct marker points in order ``p_1^+, p_1^-, p_2^+, ...``."""
        pts = []
        for i, xn in enumerate(self.x):
            pts.append(self.markers[i, 0])
            if xn != 0:
                pts.append(self.markers[i, 1])
        return np.array(pts)

    def classify(self, p, tol: float = 1e-9) -> tuple[str, int, str | None]:
        """Component of the scaffold containing ``p``.

        Returns ``("marker", n, sign)`` or ``("block", n, None)``; a collapsed
        marker pair (``x_n = 0``) reports sign ``"+"``.
        """
        p = np.asarray(p, dtype=float)
        for i in range(self.dim):
            for s, sign in enumerate("+-"):
                if np.max(np.abs(self.markers[i, s] - p)) <= tol:
                    return "marker", i + 1, sign
        for b in self.blocks:
            if b.contains(p, tol):
                return "block", b.index, None
        raise ValueError(f"point {tuple(p)} is not on the scaffold")

    def to_dict(self) -> dict:
        p = self.params
        return {
            "dim": p.dim,
            "M": p.bound,
            "C": p.c,
            "D": p.d,
            "variant": p.variant.value,
            "x": list(self.x),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scaffold":
        params = ScaffoldParams(data["dim"], data["M"], data.get("variant", "full-square"))
        for key, expected in (("C", params.c), ("D", params.d)):
            if key in data and not math.isclose(float(data[key]), expected, rel_tol=1e-12):
                raise ValueError(f"{key}={data[key]} inconsistent with M={params.bound}")
        return cls(params, tuple(data["x"]))

    @classmethod
    def load(cls, path) -> "Scaffold":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def normalize(points) -> tuple[np.ndarray, float]:
    """Translate a point set into ``[0, M]^N``.

    Subtracts the per-coordinate minimum; ``M`` is the largest resulting
    coordinate, or 1 when all points coincide.
    """
    a = check_point_set(points)
    translated = a - a.min(axis=0)
    bound = float(translated.max())
    return translated, (bound if bound > 0 else 1.0)


def build_scaffold(x, bound: float, variant=Variant.FULL_SQUARE) -> Scaffold:
    x = check_vector(x)
    return Scaffold(ScaffoldParams(x.size, bound, variant), tuple(x))


def _dedupe(points: np.ndarray) -> np.ndarray:
    _, first = np.unique(points, axis=0, return_index=True)
    return points[np.sort(first)]


def sample_scaffold(k: Scaffold, eps: float) -> np.ndarray:
    """Finite subset of the scaffold with covering radius at most ``eps``.

    Always contains every marker and every extreme point of every block.
    """
    eps = check_positive(eps, "eps")
    parts = [k.marker_points()] + [b.sample(2 * eps) for b in k.blocks]
    return _dedupe(np.vstack(parts))


def sampling_radius(k: Scaffold, eps: float) -> float:
    """Guaranteed covering radius of ``sample_scaffold(k, eps)``."""
    eps = check_positive(eps, "eps")
    if k.variant.is_finite:
        return 0.0
    side = 2 * k.bound
    steps = max(1, math.ceil(side / (2 * eps) - 1e-12))
    return side / steps / 2


def covering_radius(k: Scaffold, sample, probe_eps: float) -> float:
    """Upper bound on ``sup_{p in K} dist(p, sample)``.

    The distance to a finite set is 1-Lipschitz, so the maximum over a
    probe sample plus the probe's own covering radius bounds the supremum.
    """
    sample = check_point_set(sample, "sample")
    probe = sample_scaffold(k, probe_eps)
    dist = np.max(np.abs(probe[:, None, :] - sample[None, :, :]), axis=-1).min(axis=1)
    return float(dist.max()) + sampling_radius(k, probe_eps)


def block_representative(block: Block) -> np.ndarray:
    if block.variant is Variant.FULL_SQUARE:
        return np.array([block.x0 + block.half_height, 0.0])
    if block.variant is Variant.FRAME:
        return np.array([block.x0, 0.0])
    return block.extreme_points()[0]


def sparse_sample(k: Scaffold, max_points: int, eps: float | None = None) -> np.ndarray:
    """At most ``max_points`` scaffold points, one per block before any marker.

    Selection order: one representative per block, the distinct markers in
    index order, then farthest-first picks from ``sample_scaffold(k, eps)``
    (default ``eps = M / 8``). Deterministic; ties go to the lowest index.
    """
    if max_points < 1:
        raise ValueError("max_points must be >= 1")
    eps = k.bound / 8 if eps is None else eps
    chosen = [block_representative(b) for b in k.blocks]
    chosen += list(k.marker_points())
    chosen = list(_dedupe(np.array(chosen)))[:max_points]
    dense = sample_scaffold(k, eps)
    while len(chosen) < max_points:
        sel = np.array(chosen)
        dist = np.max(np.abs(dense[:, None, :] - sel[None, :, :]), axis=-1).min(axis=1)
        i = int(dist.argmax())
        if dist[i] == 0:
            break
        chosen.append(dense[i])
    return np.array(chosen)
