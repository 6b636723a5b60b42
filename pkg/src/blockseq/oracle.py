"""Independent brute-force oracles used by the test suite.

Everything here is deliberately naive and coded separately from the algorithm
modules, so it can serve as ground truth: an exact cut-grid DP for
block-monotone existence, exhaustive transversal enumeration for avoidance,
numeric circle-arc intersection for page crossings, and a transparent
recursive search for the longest monotone subsequence.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
import math

import numpy as np

from .core import Sequence
from .errors import BudgetExceededError, IndeterminateGeometryError, InvalidInputError

__all__ = [
    "exists_block_monotone",
    "max_blocksize_exact",
    "brute_avoiding_transversals",
    "brute_crossings_geometric",
    "brute_longest_monotone",
]

_MAX_CUTGRID_N = 120
_TRANSVERSAL_BUDGET = 10**6
_GEO_TOL = 1e-9


def _exists_increasing(ranks: np.ndarray, k: int, s: int) -> bool:
    """Cut-grid DP: k stacked position/value windows, each holding >= s
    points of the permutation matrix given by ``ranks`` (1..n)."""
    n = len(ranks)
    if k * s > n:
        return False
    # M[p, v] = number of x <= p with rank(a_x) <= v   (p, v in 0..n)
    grid = np.zeros((n + 1, n + 1), dtype=np.int64)
    for p, r in enumerate(ranks, start=1):
        grid[p, r] = 1
    M = grid.cumsum(axis=0).cumsum(axis=1)
    reach = np.ones((n + 1, n + 1), dtype=bool)  # depth 0: any frontier
    inf = np.int64(1 << 60)
    for _ in range(k):
        nxt = np.zeros_like(reach)
        for p_cut in range(n):  # previous frontier position p' (p' = n useless)
            if not reach[p_cut].any():
                continue
            D = M - M[p_cut]  # D[p, v'] = count of (p_cut, p] x (-inf, v']
            masked = np.where(reach[p_cut][None, :], D, inf)
            prefmin = np.minimum.accumulate(masked, axis=1)
            # v' < v: shift the running minimum right by one
            shifted = np.empty_like(prefmin)
            shifted[:, 0] = inf
            shifted[:, 1:] = prefmin[:, :-1]
            cond = D >= shifted + s
            nxt[p_cut + 1 :] |= cond[p_cut + 1 :]
        reach = nxt
        if not reach.any():
            return False
    return True


def exists_block_monotone(seq: Sequence, k: int, s: int) -> bool:
    """Exact decision: does a depth-k, block-size-s block-monotone
    subsequence exist (either direction)?  O(k n^3) cut-grid DP."""
    if k < 1 or s < 1:
        raise InvalidInputError("k and s must be >= 1")
    n = len(seq)
    if n > _MAX_CUTGRID_N:
        raise BudgetExceededError(f"cut-grid oracle limited to n <= {_MAX_CUTGRID_N}")
    if k * s > n:
        return False
    order = np.argsort(np.asarray(seq.values))
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(1, n + 1)
    if _exists_increasing(ranks, k, s):
        return True
    return _exists_increasing(n + 1 - ranks, k, s)


def max_blocksize_exact(seq: Sequence, k: int) -> int:
    """Exact maximum s admitting a depth-k witness; 0 when none exists."""
    n = len(seq)
    if n < k:
        raise InvalidInputError(f"need n >= k, got n={n}, k={k}")
    lo, hi = 0, n // k
    if hi == 0 or not exists_block_monotone(seq, k, 1):
        return 0
    lo = 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if exists_block_monotone(seq, k, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _side(a, b, p) -> int:
    """Orientation sign of p relative to the line through a and b."""
    det = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if det > 0.0:
        return 1
    if det < 0.0:
        return -1
    raise InvalidInputError(f"collinear points encountered: {a}, {b}, {p}")


def _transversals_avoid(lines_from, hulls_from) -> bool:
    for tr in product(*lines_from):
        for a, b in combinations(tr, 2):
            for other in product(*hulls_from):
                sides = {_side(a, b, p) for p in other}
                if len(sides) > 1:
                    return False
    return True


def brute_avoiding_transversals(w) -> bool:
    """Literal check of mutual avoidance by enumerating all transversals of
    both families and testing every pair-line against the opposite hull."""
    a_blocks = [list(b) for b in w.a_blocks]
    b_blocks = [list(b) for b in w.b_blocks]
    count_a = math.prod(len(b) for b in a_blocks)
    count_b = math.prod(len(b) for b in b_blocks)
    if count_a * count_b > _TRANSVERSAL_BUDGET:
        raise BudgetExceededError(
            f"{count_a} x {count_b} transversal pairs exceed {_TRANSVERSAL_BUDGET}"
        )
    if len(a_blocks) < 2 and len(b_blocks) < 2:
        return True
    return _transversals_avoid(a_blocks, b_blocks) and _transversals_avoid(
        b_blocks, a_blocks
    )


def _arc_pair_crossings(spans: list[tuple[float, float]]) -> int:
    """Proper intersections among same-half-plane semicircles by circle
    geometry.  Near-tangency away from span endpoints is refused."""
    count = 0
    for (a1, a2), (b1, b2) in combinations(spans, 2):
        if a1 == b1 or a1 == b2 or a2 == b1 or a2 == b2:
            # Circles centred on the spine that pass through a common
            # spine point are tangent there and meet nowhere else, so
            # arcs sharing a span endpoint touch without crossing.
            continue
        m1, r1 = (a1 + a2) / 2.0, (a2 - a1) / 2.0
        m2, r2 = (b1 + b2) / 2.0, (b2 - b1) / 2.0
        d = abs(m2 - m1)
        if d == 0.0:
            continue  # concentric: equal spans cannot happen, nested never cross
        lo, hi = abs(r1 - r2), r1 + r2
        if d >= hi or d <= lo:
            # also covers exact endpoint tangency (d == hi or d == lo)
            continue
        x = m1 + (d * d + r1 * r1 - r2 * r2) / (2.0 * d) * (1.0 if m2 > m1 else -1.0)
        y_sq = r1 * r1 - (x - m1) ** 2
        y = math.sqrt(max(y_sq, 0.0))
        if y > _GEO_TOL:
            count += 1
        else:
            endpoints = (a1, a2, b1, b2)
            if all(abs(x - e) > _GEO_TOL for e in endpoints):
                raise IndeterminateGeometryError(
                    f"near-tangent arcs at x={x!r} cannot be classified"
                )
    return count


def brute_crossings_geometric(page) -> int:
    """Crossing count of a page via numeric circle-arc intersections."""
    return _arc_pair_crossings(page.upper_spans()) + _arc_pair_crossings(
        page.lower_spans()
    )


def brute_longest_monotone(seq: Sequence) -> int:
    """Longest monotone subsequence length by transparent recursion."""
    n = len(seq)
    if n > 20:
        raise BudgetExceededError("brute oracle limited to n <= 20")
    if n == 0:
        return 0
    vals = seq.values

    @lru_cache(maxsize=None)
    def longest_from(i: int, up: bool) -> int:
        best = 1
        for j in range(i + 1, n):
            if (vals[j] > vals[i]) == up and vals[j] != vals[i]:
                best = max(best, 1 + longest_from(j, up))
        return best

    result = max(longest_from(i, up) for i in range(n) for up in (True, False))
    longest_from.cache_clear()
    return result
