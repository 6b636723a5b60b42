"""Partition sequences and planar point sets into block-monotone pieces.

A sequence is viewed as the planar point set {(i, a_i)}; the partitioner
maintains a *pattern*: a list of already-structured side sets, each with the
rest of the pattern confined to one quadrant of it, around a staircase
*configuration* whose even-indexed parts are depth-k block-monotone witnesses.
Each round either finishes (everything left is small), widens the pattern
(more sides), or deepens the staircase, and bounded-round pull-outs convert
the absorbed material into witnesses.  A final monotone-subsequence sweep
reduces the leftover pool below (k-1)^2 points.

All public indices are 1-based ids into the input point set / sequence.
Directions follow the sequence convention: "inc" means up-right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .core import DEC, INC, BlockWitness, Sequence, longest_monotone
from .errors import InvalidInputError, SearchFailedError
from .extract import chain_to_blocks, default_c, gapped_chain_dp

__all__ = [
    "PointSet",
    "Configuration",
    "Pattern",
    "LabeledPartition",
    "seq_to_points",
    "points_to_seq",
    "pullout",
    "trim_exact",
    "validate_configuration",
    "validate_pattern",
    "validate_point_witness",
    "step_pattern",
    "flatten_wide",
    "flatten_deep",
    "partition_point_set",
    "partition_sequence",
    "greedy_partition",
]

# Size above which the per-round extraction stops probing the gapped-chain DP
# for the best block-size and falls back to chunking a longest monotone
# subsequence instead.
_DP_CUTOFF = 2500


@dataclass(frozen=True)
class PointSet:
    """Planar points with pairwise distinct x and pairwise distinct y."""

    points: tuple[tuple[float, float], ...]

    def __init__(self, points):
        pts = tuple((float(x), float(y)) for x, y in points)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        for arr, axis in ((xs, "x"), (ys, "y")):
            if any(not math.isfinite(v) for v in arr):
                raise InvalidInputError(f"{axis} coordinates must be finite")
            if len(set(arr)) != len(arr):
                raise InvalidInputError(f"{axis} coordinates must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)


def seq_to_points(seq: Sequence) -> PointSet:
    """Embed entry i as the point (i, a_i)."""
    return PointSet(tuple((float(i), v) for i, v in enumerate(seq.values, start=1)))


def points_to_seq(p: PointSet) -> Sequence:
    """Inverse projection: read y-values in x-order."""
    return Sequence([y for _, y in sorted(p.points)])


@dataclass(frozen=True)
class Configuration:
    """Staircase decomposition: odd parts are raw point-id sets, even parts
    carry depth-k witnesses, and consecutive parts march up-right or
    down-right."""

    odd_parts: tuple[tuple[int, ...], ...]
    even_parts: tuple[BlockWitness, ...]
    orientation: str  # "up-right" | "down-right"

    @property
    def t(self) -> int:
        return len(self.even_parts)


@dataclass(frozen=True)
class Pattern:
    sides: tuple[BlockWitness, ...]
    config: Configuration

    @property
    def l(self) -> int:
        return len(self.sides)

    @property
    def t(self) -> int:
        return self.config.t


@dataclass(frozen=True)
class LabeledPartition:
    """Exact cover of the input: structured parts, a small remainder, and
    run metrics."""

    parts: tuple[tuple[tuple[int, ...], BlockWitness], ...]
    remainder: tuple[int, ...]
    metrics: dict = field(compare=False)


# ---------------------------------------------------------------------------
# internal geometry helpers (0-based ids into master coordinate arrays)


class _Frame:
    """Master coordinates plus cheap subset utilities."""

    def __init__(self, xs: np.ndarray, ys: np.ndarray):
        self.xs = xs
        self.ys = ys

    def by_x(self, ids: np.ndarray) -> np.ndarray:
        return ids[np.argsort(self.xs[ids])]

    def subseq(self, ids_x_sorted: np.ndarray) -> Sequence:
        return Sequence(self.ys[ids_x_sorted].tolist())


@dataclass
class _Wit:
    """Internal witness: x-sorted id arrays, one per block."""

    direction: str
    blocks: list[np.ndarray]

    @property
    def size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def ids(self) -> np.ndarray:
        if not self.blocks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(self.blocks)

    def public(self) -> BlockWitness:
        return BlockWitness(
            self.direction,
            tuple(tuple(int(i) + 1 for i in np.sort(b)) for b in self.blocks),
        )


def _wit_from_public(fr: _Frame, w: BlockWitness) -> _Wit:
    blocks = [fr.by_x(np.asarray(b, dtype=np.int64) - 1) for b in w.blocks]
    return _Wit(w.direction, blocks)


def validate_point_witness(p: PointSet, w: BlockWitness) -> bool:
    """Point-set analogue of the sequence validator: x-separation between
    consecutive blocks and y-monotone block ranges."""
    if w.direction not in (INC, DEC):
        raise InvalidInputError(f"unknown direction {w.direction!r}")
    n = len(p)
    flat = [i for b in w.blocks for i in b]
    for i in flat:
        if not (isinstance(i, (int, np.integer)) and 1 <= i <= n):
            raise InvalidInputError(f"point id {i!r} out of range 1..{n}")
    if not w.blocks or len(set(flat)) != len(flat):
        return False
    if len({len(b) for b in w.blocks}) != 1 or not w.blocks[0]:
        return False
    xs = [p.points[i - 1][0] for i in flat]
    ys = [p.points[i - 1][1] for i in flat]
    sizes = len(w.blocks[0])
    pos = 0
    prev_x_max = prev_y_lo = prev_y_hi = None
    for _ in w.blocks:
        bx = xs[pos : pos + sizes]
        by = ys[pos : pos + sizes]
        pos += sizes
        if prev_x_max is not None:
            if min(bx) <= prev_x_max:
                return False
            if w.direction == INC and min(by) <= prev_y_hi:
                return False
            if w.direction == DEC and max(by) >= prev_y_lo:
                return False
        prev_x_max = max(bx)
        prev_y_lo, prev_y_hi = min(by), max(by)
    return True


# ---------------------------------------------------------------------------
# best-effort extraction on subsets


def _lis_witness(fr: _Frame, ids: np.ndarray, depth: int) -> _Wit | None:
    """Chunk a longest monotone subsequence into ``depth`` equal blocks."""
    if len(ids) == 0:
        return None
    sx = fr.by_x(ids)
    d, pos = longest_monotone(fr.subseq(sx))
    if len(pos) < depth:
        return None
    s = len(pos) // depth
    chain = sx[np.asarray(pos, dtype=np.int64) - 1][: depth * s]
    blocks = [chain[i * s : (i + 1) * s] for i in range(depth)]
    return _Wit(d, blocks)


def _chain_witness(fr: _Frame, sx: np.ndarray, seq: Sequence, s: int, d: str) -> _Wit | None:
    ch = gapped_chain_dp(seq, s, d)
    if ch.length < 2:
        return None
    w = chain_to_blocks(seq, ch)
    blocks = [sx[np.asarray(b, dtype=np.int64) - 1] for b in w.blocks]
    return _Wit(w.direction, blocks)


def _best_gapped(
    fr: _Frame, ids: np.ndarray, depth: int, exact: bool, hint: int | None
) -> tuple[int, _Wit | None]:
    """Largest block-size s whose gapped-chain reaches depth+1, per direction.
    ``exact`` binary-searches fully; otherwise a warm bracket around ``hint``
    is refined a couple of steps."""
    m = len(ids)
    hi_cap = (m - depth - 1) // depth
    if hi_cap < 1:
        return 0, None
    sx = fr.by_x(ids)
    seq = fr.subseq(sx)
    memo: dict[int, str | None] = {}

    def reach(s: int) -> str | None:
        if s not in memo:
            memo[s] = next(
                (
                    d
                    for d in (INC, DEC)
                    if gapped_chain_dp(seq, s, d).length >= depth + 1
                ),
                None,
            )
        return memo[s]

    if exact:
        if reach(1) is None:
            return 0, None
        lo, hi = 1, hi_cap
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if reach(mid) is not None:
                lo = mid
            else:
                hi = mid - 1
        d = reach(lo)
        return lo, _chain_witness(fr, sx, seq, lo, d)

    s = min(max(hint or max(hi_cap // 8, 1), 1), hi_cap)
    if reach(s) is not None:
        while s < hi_cap:
            nxt = min(2 * s, hi_cap)
            if reach(nxt) is None:
                # one refinement step inside (s, nxt)
                mid = (s + nxt) // 2
                if mid > s and reach(mid) is not None:
                    s = mid
                break
            s = nxt
    else:
        while s > 1:
            s //= 2
            if reach(s) is not None:
                break
        if reach(s) is None:
            return 0, None
    return s, _chain_witness(fr, sx, seq, s, reach(s))


def _extract_best(
    fr: _Frame,
    ids: np.ndarray,
    depth: int,
    *,
    probe: bool | None = None,
    hint: int | None = None,
) -> tuple[_Wit | None, int]:
    """Best block-monotone extraction of exact ``depth`` from a subset.

    Returns (witness, block_size_hint_for_next_call).  Tries the gapped-chain
    DP (exact below _DP_CUTOFF, warm-bracket probing above when ``probe``)
    and always considers the chunked longest-monotone fallback; the larger
    block-size wins.
    """
    m = len(ids)
    if depth < 1 or m <= (depth - 1) ** 2:
        return None, 0
    lis = _lis_witness(fr, ids, depth)
    best = lis
    hint_out = best.size if best else 0
    use_dp = probe if probe is not None else (m <= _DP_CUTOFF)
    if use_dp:
        s, wit = _best_gapped(fr, ids, depth, exact=(m <= _DP_CUTOFF), hint=hint)
        if wit is not None and s > (best.size if best else 0):
            best, hint_out = wit, s
    return best, hint_out


# ---------------------------------------------------------------------------
# pull-out rounds and exact trims


def _round_ceiling(depth: int) -> int:
    return math.ceil(2 * depth * math.log2(max(depth, 2))) + 2


def _big_depth(k: int, c: float) -> int:
    """Depth of the coarse first pull-out stage (a no-op for small inputs)."""
    return max(2, math.ceil(9 * c * c * k))


def _pullout_ids(
    fr: _Frame, ids: np.ndarray, depth: int, *, probe: bool = False
) -> tuple[list[_Wit], np.ndarray, int]:
    """Repeatedly extract depth-``depth`` witnesses until the residue drops
    to max(|ids|/depth, (depth-1)^2) or the round ceiling is hit."""
    target = max(len(ids) / depth, (depth - 1) ** 2)
    parts: list[_Wit] = []
    cur = np.sort(ids)
    rounds = 0
    hint = None
    while len(cur) > target and rounds < _round_ceiling(depth):
        wit, hint = _extract_best(fr, cur, depth, probe=probe or None, hint=hint)
        if wit is None:
            break
        parts.append(wit)
        cur = np.setdiff1d(cur, wit.ids(), assume_unique=True)
        rounds += 1
    return parts, cur, rounds


def _pullout_chain(
    fr: _Frame, ids: np.ndarray, depths: list[int]
) -> tuple[list[_Wit], np.ndarray, int]:
    parts: list[_Wit] = []
    cur = ids
    worst = 0
    for d in depths:
        got, cur, rounds = _pullout_ids(fr, cur, d)
        parts.extend(got)
        worst = max(worst, rounds)
    return parts, cur, worst


def pullout(p: PointSet, k: int) -> tuple[list[BlockWitness], PointSet]:
    """Fraction-reducing pull-out: extract depth-k witnesses until at most
    max(|P|/k, (k-1)^2) points remain (best effort within the round
    ceiling)."""
    if k < 2:
        raise InvalidInputError("pullout requires k >= 2")
    fr = _frame_of(p)
    parts, residue, _ = _pullout_ids(
        fr, np.arange(len(p), dtype=np.int64), k, probe=True
    )
    rest = PointSet(tuple(p.points[i] for i in sorted(int(i) for i in residue)))
    return [w.public() for w in parts], rest


def _trim_wit(
    fr: _Frame, w: _Wit, m: int
) -> tuple[_Wit, np.ndarray, np.ndarray]:
    """Remove ceil(m/k) trailing points (in x) from each block; first m
    removed points form the exact set, the rest the sub-k leftover."""
    k, s = len(w.blocks), w.size
    if m > k * s:
        raise InvalidInputError(f"cannot trim {m} points out of {k * s}")
    if m == 0:
        return w, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    r = math.ceil(m / k)
    removed = np.concatenate([b[s - r :] for b in w.blocks])
    core_blocks = [b[: s - r] for b in w.blocks]
    core = _Wit(w.direction, core_blocks if s - r > 0 else [])
    return core, removed[:m], removed[m:]


def trim_exact(
    p: PointSet, w: BlockWitness, m: int
) -> tuple[BlockWitness, tuple[int, ...], tuple[int, ...]]:
    """Split a depth-k witness into a smaller core witness, a subset of size
    exactly m, and fewer than k leftover points."""
    fr = _frame_of(p)
    core, exact, rest = _trim_wit(fr, _wit_from_public(fr, w), m)
    to_pub = lambda a: tuple(int(i) + 1 for i in np.sort(a))
    return core.public(), to_pub(exact), to_pub(rest)


def _frame_of(p: PointSet) -> _Frame:
    xs = np.asarray([q[0] for q in p.points])
    ys = np.asarray([q[1] for q in p.points])
    return _Frame(xs, ys)


# ---------------------------------------------------------------------------
# configuration / pattern validation


def _threshold(total: int, k: int, c: float) -> int:
    bound = total / (3 * c * k) ** 2
    return math.ceil(bound) if bound > 1 else 1


def _bbox(fr: _Frame, ids) -> tuple[float, float, float, float]:
    ids = np.asarray(list(ids), dtype=np.int64)
    xs, ys = fr.xs[ids], fr.ys[ids]
    return xs.min(), xs.max(), ys.min(), ys.max()


def _staircase_ok(fr: _Frame, groups: list[np.ndarray], up: bool) -> bool:
    boxes = [_bbox(fr, g) for g in groups if len(g)]
    for (ax0, ax1, ay0, ay1), (bx0, bx1, by0, by1) in zip(boxes, boxes[1:]):
        if bx0 <= ax1:
            return False
        if up and by0 <= ay1:
            return False
        if not up and by1 >= ay0:
            return False
    return True


def _config_groups(fr: _Frame, cfg: Configuration) -> list[np.ndarray]:
    groups = []
    evens = [_wit_from_public(fr, w) for w in cfg.even_parts]
    for j, odd in enumerate(cfg.odd_parts):
        groups.append(np.asarray([i - 1 for i in odd], dtype=np.int64))
        if j < len(evens):
            groups.append(evens[j].ids())
    return groups


def validate_configuration(p: PointSet, cfg: Configuration, k: int, c: float | None = None) -> bool:
    """Check the staircase decomposition: alternating raw/witness parts in
    strict up-right or down-right order, witnesses valid at depth >= k with
    block-size above the configured fraction of every odd part."""
    c = default_c() if c is None else c
    if cfg.orientation not in ("up-right", "down-right"):
        raise InvalidInputError(f"unknown orientation {cfg.orientation!r}")
    if len(cfg.odd_parts) != len(cfg.even_parts) + 1:
        return False
    fr = _frame_of(p)
    flat: list[int] = []
    for odd in cfg.odd_parts:
        flat.extend(odd)
    for w in cfg.even_parts:
        if not validate_point_witness(p, w):
            return False
        if w.depth < k:
            return False
        need = max(_threshold(len(odd), k, c) for odd in cfg.odd_parts)
        if w.block_size < need:
            return False
        flat.extend(i for b in w.blocks for i in b)
    if len(set(flat)) != len(flat):
        return False
    groups = _config_groups(fr, cfg)
    return _staircase_ok(fr, groups, cfg.orientation == "up-right")


def _one_quadrant(fr: _Frame, side_ids: np.ndarray, rest_ids: np.ndarray) -> str | None:
    """Which quadrant of the side contains every rest point, if any."""
    if len(rest_ids) == 0:
        return "UR"
    sx0, sx1, sy0, sy1 = _bbox(fr, side_ids)
    rx0, rx1, ry0, ry1 = _bbox(fr, rest_ids)
    horiz = "R" if rx0 > sx1 else ("L" if rx1 < sx0 else None)
    vert = "U" if ry0 > sy1 else ("D" if ry1 < sy0 else None)
    if horiz and vert:
        return vert + horiz
    return None


def validate_pattern(p: PointSet, pat: Pattern, k: int, c: float | None = None) -> bool:
    """Check the side/quadrant decomposition around a valid configuration."""
    c = default_c() if c is None else c
    if not validate_configuration(p, pat.config, k, c):
        return False
    fr = _frame_of(p)
    config_ids = np.concatenate(_config_groups(fr, pat.config)) if (
        pat.config.odd_parts or pat.config.even_parts
    ) else np.empty(0, dtype=np.int64)
    total = len(config_ids)
    sides = [_wit_from_public(fr, w) for w in pat.sides]
    seen = set(config_ids.tolist())
    for w, pub in zip(sides, pat.sides):
        if not validate_point_witness(p, pub):
            return False
        if pub.depth < k or pub.block_size < _threshold(total, k, c):
            return False
        ids = w.ids().tolist()
        if seen.intersection(ids):
            return False
        seen.update(ids)
    for i, w in enumerate(sides):
        rest = [x.ids() for x in sides[i + 1 :]] + [config_ids]
        rest_ids = np.concatenate(rest) if rest else np.empty(0, dtype=np.int64)
        if _one_quadrant(fr, w.ids(), rest_ids) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# the pattern step (widen / deepen / finish)


@dataclass
class _State:
    """Mutable mirror of a Pattern used by the main loop."""

    sides: list[_Wit]
    odds: list[np.ndarray]
    evens: list[_Wit]
    up: bool

    @property
    def l(self) -> int:
        return len(self.sides)

    @property
    def t(self) -> int:
        return len(self.evens)

    def config_points(self) -> int:
        return sum(len(o) for o in self.odds) + sum(
            len(w.ids()) for w in self.evens
        )

    def public(self) -> Pattern:
        cfg = Configuration(
            tuple(tuple(int(i) + 1 for i in np.sort(o)) for o in self.odds),
            tuple(w.public() for w in self.evens),
            "up-right" if self.up else "down-right",
        )
        return Pattern(tuple(w.public() for w in self.sides), cfg)


def _state_from_pattern(fr: _Frame, pat: Pattern) -> _State:
    odds = [
        fr.by_x(np.asarray([i - 1 for i in o], dtype=np.int64))
        for o in pat.config.odd_parts
    ]
    evens = [_wit_from_public(fr, w) for w in pat.config.even_parts]
    sides = [_wit_from_public(fr, w) for w in pat.sides]
    return _State(sides, odds, evens, pat.config.orientation == "up-right")


def _fresh_between(values: np.ndarray, lo: float, hi: float) -> float:
    """A coordinate strictly inside (lo, hi) differing from every value:
    the midpoint of the two smallest present values of [lo, hi] endpoints
    and interior points."""
    inside = values[(values > lo) & (values < hi)]
    nxt = inside.min() if len(inside) else hi
    return (lo + nxt) / 2.0


def _stitch(base: _Wit, extra: np.ndarray, prepend: bool) -> tuple[list[_Wit], np.ndarray]:
    """Attach a detached point set as one extra block (trimming to a common
    size); returns the new witnesses and pooled remainder."""
    if len(extra) == 0:
        return [base], np.empty(0, dtype=np.int64)
    m = min(len(extra), base.size)
    used, spill = extra[:m], extra[m:]
    sliced = []
    cores = []
    for b in base.blocks:
        sliced.append(b[:m])
        cores.append(b[m:])
    blocks = [used] + sliced if prepend else sliced + [used]
    out = [_Wit(base.direction, blocks)]
    if base.size - m > 0:
        out.append(_Wit(base.direction, cores))
    return out, spill


def step_pattern(
    p: PointSet, pat: Pattern, k: int, c: float | None = None
) -> tuple[list[BlockWitness], Pattern | tuple[int, ...], tuple[int, ...], str]:
    """One round of the main loop, on public types.  See _step for the
    internal version the loop itself uses."""
    c = default_c() if c is None else c
    if not (pat.l < 4 * k and pat.t < k):
        raise InvalidInputError("step requires l < 4k and t < k")
    if not validate_pattern(p, pat, k, c):
        raise InvalidInputError("input pattern does not validate")
    fr = _frame_of(p)
    st = _state_from_pattern(fr, pat)
    parts, nxt, pool, outcome = _step(fr, st, k, c)
    pub_parts = [w.public() for w in parts]
    pool_pub = tuple(int(i) + 1 for i in np.sort(pool)) if len(pool) else ()
    if outcome == "small":
        return pub_parts, tuple(int(i) + 1 for i in np.sort(nxt)), pool_pub, outcome
    return pub_parts, nxt.public(), pool_pub, outcome


def _step(
    fr: _Frame, st: _State, k: int, c: float
) -> tuple[list[_Wit], _State | np.ndarray, np.ndarray, str]:
    parts: list[_Wit] = []
    pool: list[np.ndarray] = []
    sizes = [len(o) for o in st.odds]
    i0 = int(np.argmax(sizes))
    if sizes[i0] <= (3 * k - 1) ** 2:
        parts.extend(st.sides)
        parts.extend(st.evens)
        rest = (
            np.concatenate(st.odds) if st.odds else np.empty(0, dtype=np.int64)
        )
        return parts, rest, np.empty(0, dtype=np.int64), "small"

    y0 = st.odds[i0]
    x_wit, _ = _extract_best(fr, y0, 3 * k)
    if x_wit is None:  # cannot happen: |Y| > (3k-1)^2 guarantees a chunked LIS
        raise SearchFailedError("depth-3k extraction failed unexpectedly")
    remaining = np.setdiff1d(y0, x_wit.ids(), assume_unique=False)
    if st.t == 0:
        # orientation is free when the staircase is trivial; oppose X so the
        # deepening branch below applies
        st.up = x_wit.direction == DEC
    normalized_increasing = (x_wit.direction == INC) == st.up
    bchunks = x_wit.blocks
    x1w = _Wit(x_wit.direction, bchunks[:k])
    x2w = _Wit(x_wit.direction, bchunks[k : 2 * k])
    x3w = _Wit(x_wit.direction, bchunks[2 * k :])

    if normalized_increasing and st.t > 0:
        # widen: evens become sides, the gutted largest odd part restarts the
        # staircase, flanking odd parts are absorbed alongside X_1/X_3
        z1 = [o for j, o in enumerate(st.odds) if j < i0]
        z3 = [o for j, o in enumerate(st.odds) if j > i0]
        new_sides = (
            st.sides
            + st.evens[:i0]
            + list(reversed(st.evens[i0:]))
        )
        parts.append(x2w)
        for xw, zs, prepend in ((x1w, z1, True), (x3w, z3, False)):
            z = (
                np.concatenate(zs) if zs else np.empty(0, dtype=np.int64)
            )
            got, residue, _ = _pullout_chain(fr, z, [_big_depth(k, c), k, k])
            parts.extend(got)
            stitched, spill = _stitch(xw, fr.by_x(residue), prepend)
            parts.extend(stitched)
            if len(spill):
                pool.append(spill)
        st2 = _State(new_sides, [fr.by_x(remaining)], [], True)
        return parts, st2, _cat(pool), "widened"

    # deepen: draw the 3x3 grid around the middle third of X and fold the
    # corner material into the staircase
    sgn = 1.0 if st.up else -1.0
    bk, bk1 = bchunks[k - 1], bchunks[k]
    b2k, b2k1 = bchunks[2 * k - 1], bchunks[2 * k]

    def gap_coords(left: np.ndarray, right: np.ndarray) -> tuple[float, float]:
        gx = _fresh_between(fr.xs, float(fr.xs[left].max()), float(fr.xs[right].min()))
        if fr.ys[left].min() > fr.ys[right].max():  # left block sits above
            y_lo, y_hi = fr.ys[right].max(), fr.ys[left].min()
        else:
            y_lo, y_hi = fr.ys[left].max(), fr.ys[right].min()
        gy = _fresh_between(fr.ys, float(y_lo), float(y_hi))
        return gx, gy

    gx1, gy1 = gap_coords(bk, bk1)
    gx2, gy2 = gap_coords(b2k, b2k1)
    u1, u2 = sgn * gy1, sgn * gy2  # u1 > u2 in the normalized frame
    px, pu = fr.xs[remaining], sgn * fr.ys[remaining]
    r7 = remaining[(px < gx1) & (pu < u2)]
    r3 = remaining[(px > gx2) & (pu > u1)]
    z1 = remaining[(px > gx1) & (pu < u1)]
    z3 = remaining[((px < gx1) & (pu > u2) & (pu < u1)) | ((px < gx2) & (pu > u1))]
    assert len(r7) + len(r3) + len(z1) + len(z3) == len(remaining)

    for xw, z, prepend in ((x1w, z1, False), (x3w, z3, True)):
        got, residue, _ = _pullout_chain(fr, z, [_big_depth(k, c), k])
        parts.extend(got)
        stitched, spill = _stitch(xw, fr.by_x(residue), prepend)
        parts.extend(stitched)
        if len(spill):
            pool.append(spill)

    new_odds = st.odds[:i0] + [fr.by_x(r7), fr.by_x(r3)] + st.odds[i0 + 1 :]
    new_evens = st.evens[:i0] + [x2w] + st.evens[i0:]
    st2 = _State(list(st.sides), new_odds, new_evens, st.up)
    return parts, st2, _cat(pool), "deepened"


def _cat(chunks: list[np.ndarray]) -> np.ndarray:
    return np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# flatten endgames


def _quadrant_partition(fr: _Frame, st: _State) -> dict[str, list[int]]:
    y_ids = _cat([o for o in st.odds] + [w.ids() for w in st.evens])
    groups: dict[str, list[int]] = {"UL": [], "UR": [], "DL": [], "DR": []}
    for idx, side in enumerate(st.sides):
        quad = _one_quadrant(fr, y_ids, side.ids())  # side's position vs Y
        if quad is None:
            raise InvalidInputError("side is not confined to one quadrant of Y")
        groups[quad].append(idx)
    return groups


def _flatten_wide(fr: _Frame, st: _State, k: int, c: float) -> tuple[list[_Wit], np.ndarray]:
    parts: list[_Wit] = []
    pool: list[np.ndarray] = []
    parts.extend(st.evens)
    groups = _quadrant_partition(fr, st)
    quad = max(groups, key=lambda q: (len(groups[q]), q))
    chosen_idx = groups[quad][:k]
    chosen = [st.sides[i] for i in chosen_idx]
    for i, side in enumerate(st.sides):
        if i not in chosen_idx:
            parts.append(side)
    odd_ids = _cat(st.odds)
    got, y_res, _ = _pullout_ids(fr, odd_ids, _big_depth(k, c))
    parts.extend(got)
    y_res = fr.by_x(y_res)
    if len(chosen) < k:
        # degenerate pigeonhole (few sides); pool the residue
        for side in chosen:
            parts.append(side)
        if len(y_res):
            pool.append(y_res)
        return parts, _cat(pool)

    m = len(y_res)
    cap = min((w.size * len(w.blocks) for w in chosen), default=0)
    big = m > (_big_depth(k, c) - 1) ** 2 and m <= cap
    if not big:
        for side in chosen:
            parts.append(side)
        if len(y_res):
            pool.append(y_res)
        return parts, _cat(pool)

    # stitch one block from each chosen side around the residue
    slabs = []
    for side in chosen:
        core, exact, spill = _trim_wit(fr, side, m)
        if core.blocks:
            parts.append(core)
        slabs.append(fr.by_x(exact))
        if len(spill):
            pool.append(spill)
    # assembly order and direction by the shared quadrant (side quadrant
    # relative to Y): UL -> descending with Y last, DL -> ascending with Y
    # last, UR -> ascending with Y first, DR -> descending with Y first
    if quad in ("UL", "DL"):
        blocks = slabs + [y_res]
    else:
        blocks = [y_res] + list(reversed(slabs))
    direction = INC if quad in ("DL", "UR") else DEC
    parts.append(_Wit(direction, blocks))
    return parts, _cat(pool)


def _flatten_deep(fr: _Frame, st: _State, k: int, c: float) -> tuple[list[_Wit], np.ndarray]:
    parts: list[_Wit] = list(st.sides)
    pool: list[np.ndarray] = []
    residues: list[np.ndarray] = []
    for odd in st.odds:
        got, res, _ = _pullout_chain(fr, odd, [_big_depth(k, c), k + 1])
        parts.extend(got)
        residues.append(fr.by_x(res))
    big_cut = (_big_depth(k, c) - 1) ** 2
    m_total = sum(len(r) for r in residues)
    j1 = [j for j, r in enumerate(residues) if len(r) > big_cut]
    cap = min((w.size * len(w.blocks) for w in st.evens), default=0)
    if j1 and m_total <= cap and len(st.evens) == k:
        sizes = [len(residues[j]) for j in j1]
        m = sum(sizes)
        slabs: list[list[np.ndarray]] = []  # per even part: slices per j
        for w in st.evens:
            core, exact, spill = _trim_wit(fr, w, m)
            if core.blocks:
                parts.append(core)
            if len(spill):
                pool.append(spill)
            exact = fr.by_x(exact)
            cuts = np.cumsum([0] + sizes)
            slabs.append([exact[cuts[a] : cuts[a + 1]] for a in range(len(j1))])
        for a, j in enumerate(j1):
            blocks = [slabs[i][a] for i in range(j)]
            blocks.append(residues[j])
            blocks.extend(slabs[i][a] for i in range(j, k))
            direction = INC if st.up else DEC
            parts.append(_Wit(direction, blocks))
        for j, r in enumerate(residues):
            if j not in j1 and len(r):
                pool.append(r)
    else:
        parts.extend(st.evens)
        for r in residues:
            if len(r):
                pool.append(r)
    return parts, _cat(pool)


def flatten_wide(p: PointSet, pat: Pattern, k: int, c: float | None = None):
    """Endgame for a pattern with l = 4k sides: pigeonhole the sides by
    quadrant and stitch one block of each chosen side around the staircase
    residue."""
    c = default_c() if c is None else c
    if pat.l != 4 * k:
        raise InvalidInputError(f"flatten_wide requires exactly {4 * k} sides")
    fr = _frame_of(p)
    parts, pool = _flatten_wide(fr, _state_from_pattern(fr, pat), k, c)
    return [w.public() for w in parts], tuple(int(i) + 1 for i in np.sort(pool))


def flatten_deep(p: PointSet, pat: Pattern, k: int, c: float | None = None):
    """Endgame for a staircase of full depth t = k: double pull-out of every
    odd part, then stitch surviving residues through slices of the even
    parts."""
    c = default_c() if c is None else c
    if pat.t != k:
        raise InvalidInputError(f"flatten_deep requires staircase depth {k}")
    fr = _frame_of(p)
    parts, pool = _flatten_deep(fr, _state_from_pattern(fr, pat), k, c)
    return [w.public() for w in parts], tuple(int(i) + 1 for i in np.sort(pool))


# ---------------------------------------------------------------------------
# the full partition loop


def partition_point_set(p: PointSet, k: int, c: float | None = None) -> LabeledPartition:
    """Partition a planar point set into block-monotone parts of depth >= k
    plus at most (k-1)^2 leftover points."""
    if k < 2:
        raise InvalidInputError("partition requires k >= 2")
    c = default_c() if c is None else c
    n = len(p)
    fr = _frame_of(p)
    parts: list[_Wit] = []
    pool: list[np.ndarray] = []
    lt_history: list[tuple[int, int]] = []
    iterations = 0
    all_ids = np.arange(n, dtype=np.int64)
    if n > (k - 1) ** 2:
        sx = fr.by_x(all_ids)
        d, posn = longest_monotone(fr.subseq(sx))
        if len(posn) == n:
            # fully monotone input: one witness of singleton blocks covers it
            wit = _Wit(d, [np.asarray([i]) for i in sx])
            metrics = {
                "n": n,
                "k": k,
                "parts": 1,
                "iterations": 0,
                "lt_history": [],
                "cleanup_parts": 0,
                "remainder": 0,
            }
            pub = ((tuple(range(1, n + 1)), wit.public()),)
            return LabeledPartition(pub, (), metrics)
    if n > (k - 1) ** 2:
        st = _State([], [np.arange(n, dtype=np.int64)], [], True)
        while True:
            total = st.config_points() + sum(len(w.ids()) for w in st.sides)
            if total <= k * (3 * k - 1) ** 2 and st.t == 0 and st.l == 0:
                pool.append(_cat(st.odds))
                break
            if st.t == k:
                got, rest = _flatten_deep(fr, st, k, c)
                parts.extend(got)
                if len(rest):
                    pool.append(rest)
                break
            if st.l >= 4 * k:
                extra = st.l - 4 * k
                parts.extend(st.sides[:extra])
                st.sides = st.sides[extra:]
                got, rest = _flatten_wide(fr, st, k, c)
                parts.extend(got)
                if len(rest):
                    pool.append(rest)
                break
            lt_history.append((st.l, st.t))
            iterations += 1
            if iterations > 12 * k:
                raise SearchFailedError("pattern loop exceeded its round bound")
            got, nxt, spill, outcome = _step(fr, st, k, c)
            parts.extend(got)
            if len(spill):
                pool.append(spill)
            if outcome == "small":
                if len(nxt):
                    pool.append(nxt)
                break
            st = nxt
    else:
        pool.append(np.arange(n, dtype=np.int64))

    # Erdos-Szekeres cleanup of the pool
    rest = np.sort(_cat(pool))
    cleanup = 0
    while len(rest) > (k - 1) ** 2:
        sx = fr.by_x(rest)
        d, posn = longest_monotone(fr.subseq(sx))
        chain = sx[np.asarray(posn, dtype=np.int64) - 1]
        parts.append(_Wit(d, [np.asarray([i]) for i in chain]))
        rest = np.setdiff1d(rest, chain, assume_unique=False)
        cleanup += 1

    pub = tuple(
        (tuple(int(i) + 1 for i in np.sort(w.ids())), w.public()) for w in parts
    )
    metrics = {
        "n": n,
        "k": k,
        "parts": len(parts),
        "iterations": iterations,
        "lt_history": lt_history,
        "cleanup_parts": cleanup,
        "remainder": int(len(rest)),
    }
    return LabeledPartition(pub, tuple(int(i) + 1 for i in np.sort(rest)), metrics)


def partition_sequence(seq: Sequence, k: int, c: float | None = None) -> LabeledPartition:
    """Sequence version: indices play the role of x-coordinates, so part ids
    are 1-based positions in the sequence."""
    return partition_point_set(seq_to_points(seq), k, c)


def greedy_partition(seq: Sequence, k: int) -> LabeledPartition:
    """Baseline: repeatedly pull out the best single depth-k witness until
    at most (k-1)^2 entries remain."""
    if k < 2:
        raise InvalidInputError("partition requires k >= 2")
    p = seq_to_points(seq)
    fr = _frame_of(p)
    cur = np.arange(len(p), dtype=np.int64)
    parts: list[_Wit] = []
    hint = None
    while len(cur) > (k - 1) ** 2:
        wit, hint = _extract_best(fr, cur, k, probe=True, hint=hint)
        if wit is None:
            break
        parts.append(wit)
        cur = np.setdiff1d(cur, wit.ids(), assume_unique=False)
    pub = tuple(
        (tuple(int(i) + 1 for i in np.sort(w.ids())), w.public()) for w in parts
    )
    metrics = {
        "n": len(p),
        "k": k,
        "parts": len(parts),
        "iterations": len(parts),
        "remainder": int(len(cur)),
    }
    return LabeledPartition(pub, tuple(int(i) + 1 for i in np.sort(cur)), metrics)
