"""Gromov-Hausdorff distance between small finite metric spaces.

The distance is computed as half the least distortion of a correspondence,
the standard reformulation of the infimum over common ambient spaces.
It is exact, and exponential in the input size, so inputs are held to a
size budget.

Also here: eccentricity lower bounds, epsilon-isometry reports for
explicit maps, and an analyser that reads off which scaffold component a
map sends each component to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .metric import FiniteMetricSpace
from ._validation import check_point_set, check_square_matrix
from .scaffold import Scaffold

DEFAULT_MAX_COST = 24


class BudgetExceeded(ValueError):
    """Raised instead of approximating when an exact search would be too large."""


def _matrix(space) -> np.ndarray:
    if isinstance(space, FiniteMetricSpace):
        return np.asarray(space.matrix)
    return check_square_matrix(space)


def _as_pairs(r) -> list[tuple[int, int]]:
    return sorted({(int(i), int(j)) for i, j in r})


def _check_correspondence(pairs, p: int, q: int) -> None:
    if not pairs:
        raise ValueError("empty correspondence")
    xs = {i for i, _ in pairs}
    ys = {j for _, j in pairs}
    if any(not 0 <= i < p for i in xs) or any(not 0 <= j < q for j in ys):
        raise ValueError("correspondence index out of range")
    if len(xs) != p or len(ys) != q:
        raise ValueError(
            f"relation is not a correspondence: covers {len(xs)}/{p} of X and {len(ys)}/{q} of Y"
        )


def distortion(r, x_space, y_space) -> float:
    """``max |d_X(i, i') - d_Y(j, j')|`` over pairs ``(i, j), (i', j')`` of ``r``."""
    dx, dy = _matrix(x_space), _matrix(y_space)
    pairs = _as_pairs(r)
    _check_correspondence(pairs, dx.shape[0], dy.shape[0])
    i = np.array([a for a, _ in pairs])
    j = np.array([b for _, b in pairs])
    return float(np.max(np.abs(dx[np.ix_(i, i)] - dy[np.ix_(j, j)])))


def eccentricities(space) -> np.ndarray:
    return _matrix(space).max(axis=1)


def gh_lower_bounds(x_space, y_space) -> float:
    """Cheap lower bound on the GH distance.

    Along any correspondence of distortion ``t`` paired points have
    eccentricities within ``t``, so half the Hausdorff distance between the
    two eccentricity sets is a lower bound; it dominates the diameter bound
    ``|diam X - diam Y| / 2``, which is included for clarity.
    """
    ex, ey = eccentricities(x_space), eccentricities(y_space)
    gap = np.abs(ex[:, None] - ey[None, :])
    ecc = max(gap.min(axis=1).max(), gap.min(axis=0).max())
    diam = abs(ex.max() - ey.max())
    return float(max(ecc, diam) / 2)


@dataclass(frozen=True)
class GHResult:
    distance: float
    correspondence: tuple  # optimal pairs (i, j), first found in search order
    nodes: int


def gh_search(x_space, y_space, max_cost: int = DEFAULT_MAX_COST) -> GHResult:
    """Exact GH distance by branch and bound over correspondences.

    Any correspondence contains the graph of a map ``f: X -> Y`` together
    with one partner for each point of ``Y`` outside ``f(X)``, and that
    subset is itself a correspondence of no larger distortion. The search
    therefore assigns ``f(x)`` for every ``x`` and then a partner for each
    uncovered ``y``, pruning partial relations whose distortion already
    reaches the best complete one.
    """
    dx, dy = _matrix(x_space), _matrix(y_space)
    p, q = dx.shape[0], dy.shape[0]
    if p * q > max_cost:
        raise BudgetExceeded(
            f"exact GH search refused: |X|*|Y| = {p}*{q} = {p * q} exceeds budget {max_cost}"
        )
    # cost[i][j][a][b] = |d_X(i, a) - d_Y(j, b)|
    cost = np.abs(dx[:, None, :, None] - dy[None, :, None, :]).tolist()
    lower = 2 * gh_lower_bounds(dx, dy)
    best = [math.inf, ()]
    pairs: list[tuple[int, int]] = []
    covered = [0] * q
    nodes = 0

    def increment(i: int, j: int) -> float:
        row = cost[i][j]
        return max((row[a][b] for a, b in pairs), default=0.0)

    def done() -> bool:
        return best[0] <= lower

    def cover_y(start: int, cur: float) -> None:
        nonlocal nodes
        y = start
        while y < q and covered[y]:
            y += 1
        if y == q:
            if cur < best[0]:
                best[0], best[1] = cur, tuple(pairs)
            return
        options = sorted(range(p), key=lambda i: (max(cur, increment(i, y)), i))
        for i in options:
            c = max(cur, increment(i, y))
            if c >= best[0]:
                break
            nodes += 1
            pairs.append((i, y))
            covered[y] += 1
            cover_y(y + 1, c)
            covered[y] -= 1
            pairs.pop()
            if done():
                return

    def assign_x(i: int, cur: float) -> None:
        nonlocal nodes
        if i == p:
            cover_y(0, cur)
            return
        options = sorted(range(q), key=lambda j: (max(cur, increment(i, j)), j))
        for j in options:
            c = max(cur, increment(i, j))
            if c >= best[0]:
                break
            nodes += 1
            pairs.append((i, j))
            covered[j] += 1
            assign_x(i + 1, c)
            covered[j] -= 1
            pairs.pop()
            if done():
                return

    assign_x(0, 0.0)
    return GHResult(best[0] / 2, tuple(sorted(best[1])), nodes)


def gh_bruteforce(x_space, y_space, max_cost: int = DEFAULT_MAX_COST) -> float:
    """Exact Gromov-Hausdorff distance; raises :class:`BudgetExceeded` above the budget."""
    return gh_search(x_space, y_space, max_cost).distance


def _as_map(f, p: int) -> np.ndarray:
    """Normalise a map given as a length-``p`` sequence or as ``(i, j)`` pairs."""
    f = list(f)
    if f and isinstance(f[0], (tuple, list, np.ndarray)) and len(f[0]) == 2:
        out = [-1] * p
        for i, j in f:
            i, j = int(i), int(j)
            if not 0 <= i < p:
                raise ValueError(f"map source index {i} out of range")
            if out[i] != -1 and out[i] != j:
                raise ValueError(f"map sends {i} to both {out[i]} and {j}")
            out[i] = j
        f = out
    arr = np.asarray(f, dtype=int)
    if arr.shape != (p,) or np.any(arr < 0):
        raise ValueError(f"map is not total on a {p}-point space")
    return arr


@dataclass(frozen=True)
class EpsIsometryReport:
    max_distortion: float
    max_surjectivity_gap: float
    distortion_witness: tuple  # (i, i') realising the distortion
    gap_witness: int  # the worst-covered point of Y

    def is_eps_isometry(self, eps: float) -> bool:
        return self.max_distortion <= eps and self.max_surjectivity_gap <= eps


def check_eps_isometry(f, x_space, y_space) -> EpsIsometryReport:
    dx, dy = _matrix(x_space), _matrix(y_space)
    fmap = _as_map(f, dx.shape[0])
    if np.any(fmap >= dy.shape[0]):
        raise ValueError("map target index out of range")
    dis = np.abs(dx - dy[np.ix_(fmap, fmap)])
    w = np.unravel_index(int(dis.argmax()), dis.shape)
    gaps = dy[fmap, :].min(axis=0)
    g = int(gaps.argmax())
    return EpsIsometryReport(float(dis[w]), float(gaps[g]), (int(w[0]), int(w[1])), g)


# Component-map analysis -------------------------------------------------

BLOCK_SCATTER = "block-scatter"
MARKER_SCATTER = "marker-scatter"
SIGMA_NOT_INJECTIVE = "sigma-not-injective"
TAU_NOT_INJECTIVE = "tau-not-injective"
NOT_ADJACENT = "non-adjacent"
TAU_OUT_OF_RANGE = "tau-out-of-range"
SIGMA_NOT_IDENTITY = "sigma-not-identity"
TAU_NOT_IDENTITY = "tau-not-identity"


class Violation(NamedTuple):
    kind: str
    step: int
    detail: str


@dataclass
class ComponentMapReport:
    sigma: dict  # block index -> block index, where the image is one block
    tau: dict  # marker index -> marker index, where the image is one marker pair
    violations: list = field(default_factory=list)

    @property
    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def is_identity(self, dim: int) -> bool:
        full = range(1, dim + 1)
        return (
            not self.violations
            and self.sigma == {n: n for n in full}
            and self.tau == {n: n for n in full}
        )


def classify_sample(sample, k: Scaffold, tol: float = 1e-9) -> list:
    return [k.classify(p, tol) for p in check_point_set(sample, "sample")]


def analyze_component_map(f, sample_x, sample_y, kx: Scaffold, ky: Scaffold) -> ComponentMapReport:
    """Induced block map ``sigma`` and marker map ``tau`` of a sampled map, with failed conditions.

    ``f`` maps indices of ``sample_x`` (points of ``kx``) to indices of
    ``sample_y`` (points of ``ky``). A near-isometry of small enough
    distortion must send each block into one block, each marker pair onto
    one marker pair, keep both maps injective, keep neighbouring blocks
    neighbours, keep ``tau(n)`` in ``{sigma(n), sigma(n) + 1}``, and in the
    end fix every index. Each failure is reported with the step it breaks.
    """
    cls_x = classify_sample(sample_x, kx)
    cls_y = classify_sample(sample_y, ky)
    fmap = _as_map(f, len(cls_x))
    if np.any(fmap >= len(cls_y)):
        raise ValueError("map target index out of range")
    report = ComponentMapReport({}, {})
    bad = report.violations

    for kind, field_map, scatter in (("block", report.sigma, BLOCK_SCATTER), ("marker", report.tau, MARKER_SCATTER)):
        for n in range(1, kx.dim + 1):
            members = [i for i, c in enumerate(cls_x) if c[0] == kind and c[1] == n]
            if not members:
                continue
            images = [cls_y[fmap[i]] for i in members]
            wrong = [(i, im) for i, im in zip(members, images) if im[0] != kind]
            if wrong:
                i, im = wrong[0]
                bad.append(Violation(scatter, 1 if kind == "block" else 3,
                                     f"{kind} {n}: sample point {i} maps into {im[0]} {im[1]}"))
                continue
            hit = sorted({im[1] for im in images})
            if len(hit) > 1:
                bad.append(Violation(scatter, 1 if kind == "block" else 3,
                                     f"{kind} {n} maps into {kind}s {hit}"))
                continue
            field_map[n] = hit[0]

    sigma, tau = report.sigma, report.tau
    for name, mapping, kind, step in (("sigma", sigma, SIGMA_NOT_INJECTIVE, 2), ("tau", tau, TAU_NOT_INJECTIVE, 4)):
        seen: dict = {}
        for n, m in sorted(mapping.items()):
            if m in seen:
                bad.append(Violation(kind, step, f"{name}({seen[m]}) = {name}({n}) = {m}"))
            else:
                seen[m] = n
    for n in sorted(sigma):
        if n + 1 in sigma and abs(sigma[n + 1] - sigma[n]) != 1:
            bad.append(Violation(NOT_ADJACENT, 5, f"|sigma({n + 1}) - sigma({n})| = {abs(sigma[n + 1] - sigma[n])}"))
    for n in sorted(tau):
        if n in sigma and tau[n] not in (sigma[n], sigma[n] + 1):
            bad.append(Violation(TAU_OUT_OF_RANGE, 6, f"tau({n}) = {tau[n]} not in {{{sigma[n]}, {sigma[n] + 1}}}"))
    for n in sorted(sigma):
        if sigma[n] != n:
            bad.append(Violation(SIGMA_NOT_IDENTITY, 7, f"sigma({n}) = {sigma[n]}"))
    for n in sorted(tau):
        if tau[n] != n:
            bad.append(Violation(TAU_NOT_IDENTITY, 7, f"tau({n}) = {tau[n]}"))
    return report


def natural_map(sample_x, sample_y, kx: Scaffold, ky: Scaffold) -> np.ndarray:
    """The component-preserving map between two scaffold samples.

    Marker ``p_n^s(x)`` goes to ``p_n^s(y)`` when sampled, otherwise to the
    nearest sampled marker of pair ``n``; a block point goes to the nearest
    sampled point of the same block. Points whose component is missing from
    ``sample_y`` go to the nearest sample point overall.
    """
    sx = check_point_set(sample_x, "sample_x")
    sy = check_point_set(sample_y, "sample_y")
    cls_x = classify_sample(sx, kx)
    cls_y = classify_sample(sy, ky)
    out = np.empty(len(sx), dtype=int)
    for i, (kind, n, sign) in enumerate(cls_x):
        target = sx[i] if kind == "block" else ky.marker(n, sign)
        candidates = [j for j, c in enumerate(cls_y) if c[0] == kind and c[1] == n]
        if not candidates:
            candidates = list(range(len(sy)))
        dist = np.max(np.abs(sy[candidates] - target), axis=1)
        out[i] = candidates[int(dist.argmin())]
    return out


def sample_space(sample, labels: Sequence | None = None) -> FiniteMetricSpace:
    """Finite metric space of planar sample points under the Chebyshev metric."""
    return FiniteMetricSpace.from_points(sample, labels)
