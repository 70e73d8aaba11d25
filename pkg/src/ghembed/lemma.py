"""Closed-form distances between scaffold components and brute-force grid checks.

Every distance between markers and blocks of a scaffold is a short formula
in ``C``, ``D`` and ``M``. Each formula here has a matching oracle in
:func:`verify_lemma_case` that only looks at coordinates: exact for
marker-only items, exhaustive min/max over block grids otherwise.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from ._validation import check_positive
from .scaffold import Block, Scaffold, Variant, build_scaffold

FLOAT_TOL = 1e-9


class LemmaItem(str, enum.Enum):
    L1_1 = "1-1"  # d(p_n^+, p_n^-) <= 2M
    L1_2 = "1-2"  # d(p_n^s, p_m^t) = D|n-m|, n != m
    L2_1 = "2-1"  # dist(p_n, block m) = C + D(m-n), n <= m
    L2_2 = "2-2"  # dist(p_n, block m) = D(n-m) - C - 2M, m < n
    L3 = "3"  # dist(block n, block m) = D|n-m| - 2M, n != m
    L4 = "4"  # d(P, Q) <= D|n-m| + 2M
    L5 = "5"  # d(p_n, Q) <= D - C, Q in block n-1

    @property
    def marker_only(self) -> bool:
        return self in (LemmaItem.L1_1, LemmaItem.L1_2)


def _check_index(k: Scaffold, n: int, what: str = "index") -> None:
    if not 1 <= n <= k.dim:
        raise IndexError(f"{what} {n} outside 1..{k.dim}")


def marker_pair_distance(k: Scaffold, n: int) -> float:
    _check_index(k, n)
    return 2 * k.x[n - 1]


def cross_marker_distance(k: Scaffold, n: int, m: int, s: str = "+", t: str = "+") -> float:
    _check_index(k, n)
    _check_index(k, m)
    if n == m:
        raise ValueError("n == m: use marker_pair_distance")
    return k.params.d * abs(n - m)


def marker_block_distance(k: Scaffold, n: int, m: int) -> float:
    """Distance from marker pair ``n`` (either sign) to block ``m``."""
    _check_index(k, n, "marker index")
    _check_index(k, m, "block index")
    p = k.params
    if n <= m:
        return p.c + p.d * (m - n)
    return p.d * (n - m) - p.c - 2 * p.bound


def block_block_distance(k: Scaffold, n: int, m: int) -> float:
    _check_index(k, n)
    _check_index(k, m)
    if n == m:
        raise ValueError("n == m: a block is at distance 0 from itself")
    return k.params.d * abs(n - m) - 2 * k.params.bound


def block_block_upper(k: Scaffold, n: int, m: int) -> float:
    _check_index(k, n)
    _check_index(k, m)
    return k.params.d * abs(n - m) + 2 * k.params.bound


def marker_prevblock_upper(k: Scaffold, n: int) -> float:
    _check_index(k, n)
    if n == 1:
        raise ValueError("marker 1 has no preceding block")
    return k.params.d - k.params.c


@dataclass(frozen=True)
class LemmaCase:
    """One instance of a lemma item.

    ``n`` and ``m`` are 1-based; for marker/block items ``n`` indexes the
    marker and ``m`` the block. ``s`` and ``t`` are marker signs.
    """

    item: LemmaItem
    n: int
    m: int | None = None
    s: str = "+"
    t: str = "+"

    def validate(self, dim: int) -> None:
        item, n, m = LemmaItem(self.item), self.n, self.m
        if m is None:
            m = n if item is LemmaItem.L1_1 else (n - 1 if item is LemmaItem.L5 else None)
        if m is None:
            raise ValueError(f"item {item.value} needs two indices")
        if not (1 <= n <= dim and 1 <= m <= dim):
            raise ValueError(f"indices ({n}, {m}) outside 1..{dim}")
        if self.s not in "+-" or self.t not in "+-":
            raise ValueError("signs must be '+' or '-'")
        ok = {
            LemmaItem.L1_1: m == n,
            LemmaItem.L1_2: n != m,
            LemmaItem.L2_1: n <= m,
            LemmaItem.L2_2: m + 1 <= n,
            LemmaItem.L3: n != m,
            LemmaItem.L4: True,
            LemmaItem.L5: m == n - 1,
        }[item]
        if not ok:
            raise ValueError(f"item {item.value} does not apply to n={n}, m={m}")


@dataclass(frozen=True)
class LemmaCheck:
    case: LemmaCase
    closed_form: float
    bound: float
    sampled: float
    agree: bool
    witness: tuple


def iter_lemma_cases(dim: int) -> Iterator[LemmaCase]:
    """Every applicable case for a scaffold of dimension ``dim``."""
    idx = range(1, dim + 1)
    for n in idx:
        yield LemmaCase(LemmaItem.L1_1, n, n)
    for n, m in itertools.product(idx, idx):
        if n != m:
            for s, t in itertools.product("+-", "+-"):
                yield LemmaCase(LemmaItem.L1_2, n, m, s, t)
    for n, m in itertools.product(idx, idx):
        item = LemmaItem.L2_1 if n <= m else LemmaItem.L2_2
        for s in "+-":
            yield LemmaCase(item, n, m, s)
    for n, m in itertools.product(idx, idx):
        if n != m:
            yield LemmaCase(LemmaItem.L3, n, m)
    for n, m in itertools.product(idx, idx):
        yield LemmaCase(LemmaItem.L4, n, m)
    for n in idx:
        if n >= 2:
            for s in "+-":
                yield LemmaCase(LemmaItem.L5, n, n - 1, s)


def _cheb(p, q) -> float:
    return float(np.max(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float))))


def _point_block_extremes(point: tuple, block: Block, spacing: float):
    grid = block.sample(spacing)
    dist = np.max(np.abs(grid - np.asarray(point)), axis=1)
    i, j = int(dist.argmin()), int(dist.argmax())
    return float(dist[i]), tuple(grid[i]), float(dist[j]), tuple(grid[j])


@lru_cache(maxsize=4096)
def _block_block_extremes(a: Block, b: Block, spacing: float):
    ga, gb = a.sample(spacing), b.sample(spacing)
    dist = np.max(np.abs(ga[:, None, :] - gb[None, :, :]), axis=-1)
    imin = np.unravel_index(int(dist.argmin()), dist.shape)
    imax = np.unravel_index(int(dist.argmax()), dist.shape)
    return (
        float(dist[imin]),
        (tuple(ga[imin[0]]), tuple(gb[imin[1]])),
        float(dist[imax]),
        (tuple(ga[imax[0]]), tuple(gb[imax[1]])),
    )


def verify_lemma_case(case: LemmaCase, k: Scaffold, grid_eps: float | None = None) -> LemmaCheck:
    """Compare a closed form with a brute-force value on a grid of step <= ``grid_eps``.

    Infima over blocks may overshoot by at most the grid step, suprema may
    undershoot by at most the grid step; marker-only items must match
    exactly. ``agree`` also requires the realised value to respect the
    item's bound where the item is an inequality.
    """
    grid_eps = k.bound / 8 if grid_eps is None else check_positive(grid_eps, "grid_eps")
    case.validate(k.dim)
    item, n = LemmaItem(case.item), case.n
    m = case.m if case.m is not None else (n if item is LemmaItem.L1_1 else n - 1)
    p = k.params

    if item is LemmaItem.L1_1:
        a, b = k.marker(n, "+"), k.marker(n, "-")
        closed, bound = marker_pair_distance(k, n), 2 * p.bound
        sampled = _cheb(a, b)
        return LemmaCheck(case, closed, bound, sampled, sampled == closed and closed <= bound, (tuple(a), tuple(b)))

    if item is LemmaItem.L1_2:
        a, b = k.marker(n, case.s), k.marker(m, case.t)
        closed = cross_marker_distance(k, n, m, case.s, case.t)
        sampled = _cheb(a, b)
        return LemmaCheck(case, closed, closed, sampled, sampled == closed, (tuple(a), tuple(b)))

    if item in (LemmaItem.L2_1, LemmaItem.L2_2):
        marker = tuple(k.marker(n, case.s))
        closed = marker_block_distance(k, n, m)
        sampled, at, _, _ = _point_block_extremes(marker, k.block(m), grid_eps)
        agree = closed - FLOAT_TOL <= sampled <= closed + grid_eps + FLOAT_TOL
        return LemmaCheck(case, closed, closed, sampled, agree, (marker, at))

    if item is LemmaItem.L3:
        closed = block_block_distance(k, n, m)
        sampled, at, _, _ = _block_block_extremes(k.block(n), k.block(m), grid_eps)
        agree = closed - FLOAT_TOL <= sampled <= closed + grid_eps + FLOAT_TOL
        return LemmaCheck(case, closed, closed, sampled, agree, at)

    if item is LemmaItem.L4:
        bound = block_block_upper(k, n, m)
        _, _, sampled, at = _block_block_extremes(k.block(n), k.block(m), grid_eps)
        agree = bound - grid_eps - FLOAT_TOL <= sampled <= bound + FLOAT_TOL
        return LemmaCheck(case, bound, bound, sampled, agree, at)

    marker = tuple(k.marker(n, case.s))
    bound = marker_prevblock_upper(k, n)
    _, _, sampled, at = _point_block_extremes(marker, k.block(m), grid_eps)
    agree = bound - grid_eps - FLOAT_TOL <= sampled <= bound + FLOAT_TOL
    return LemmaCheck(case, bound, bound, sampled, agree, (marker, at))


def constant_relations(bound: float) -> list[tuple[str, bool]]:
    """The arithmetic relations between ``C``, ``D`` and ``M`` the construction leans on.

    Each entry is ``(relation, holds)``, evaluated in exact rational
    arithmetic on the given ``M``.
    """
    m = Fraction(check_positive(bound, "bound"))
    c = 4 * m
    d = c + 2 * m + c
    return [
        ("C - 2M == 2M", c - 2 * m == 2 * m),
        ("D - C - 2M == 4M", d - c - 2 * m == 4 * m),
        ("D - C - 2M >= C - 2M", d - c - 2 * m >= c - 2 * m),
        ("D - 2M >= C", d - 2 * m >= c),
        ("2D - 2M > C + D", 2 * d - 2 * m > c + d),
        ("D - 2M == 2C", d - 2 * m == 2 * c),
        ("2D - C - 2M >= C + D", 2 * d - c - 2 * m >= c + d),
        ("(C + D) - (D - C) == 2C", (c + d) - (d - c) == 2 * c),
    ]


@dataclass
class LemmaCertificate:
    cases: int = 0
    failures: list = None
    worst_gap: float = 0.0
    relation_failures: list = None

    def __post_init__(self):
        self.failures = [] if self.failures is None else self.failures
        self.relation_failures = [] if self.relation_failures is None else self.relation_failures

    @property
    def passed(self) -> bool:
        return not self.failures and not self.relation_failures


def certify_lemma(
    dims=(1, 2, 3, 4),
    bounds=(0.5, 1.0, 2.0, 7.0),
    variant=Variant.FULL_SQUARE,
    x_step: float = 0.25,
    grid_step: float = 0.125,
) -> LemmaCertificate:
    """Run every lemma case over every ``x`` on a coordinate grid.

    ``x`` ranges over ``{0, s, 2s, ..., M}^N`` with ``s = x_step * M`` and
    the block grids use step ``grid_step * M``.
    """
    cert = LemmaCertificate()
    for bound in bounds:
        for relation, holds in constant_relations(bound):
            if not holds:
                cert.relation_failures.append({"M": bound, "relation": relation})
        levels = np.linspace(0.0, bound, int(round(1 / x_step)) + 1)
        for dim in dims:
            cases = list(iter_lemma_cases(dim))
            for x in itertools.product(levels, repeat=dim):
                k = build_scaffold(x, bound, variant)
                for case in cases:
                    check = verify_lemma_case(case, k, grid_step * bound)
                    cert.cases += 1
                    cert.worst_gap = max(cert.worst_gap, abs(check.closed_form - check.sampled))
                    if not check.agree:
                        cert.failures.append(
                            {
                                "M": bound,
                                "x": list(map(float, x)),
                                "item": LemmaItem(case.item).value,
                                "n": case.n,
                                "m": case.m,
                                "s": case.s,
                                "t": case.t,
                                "closed_form": check.closed_form,
                                "sampled": check.sampled,
                            }
                        )
    return cert
