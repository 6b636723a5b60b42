"""Sequences, monotone subsequences, and block-monotone witnesses.

Every tool in the package revolves around one structure: k consecutive
blocks of s entries each, where picking any one entry per block gives a
monotone subsequence.  This script builds the basic objects by hand so the
later demos have something to stand on.
"""

import math

from blockseq import (
    BlockWitness,
    Sequence,
    gen_es_extremal,
    gen_random,
    inversion_stats,
    longest_monotone,
    validate_block_witness,
)

# -- longest monotone subsequence -------------------------------------------

seq = gen_random(50, seed=7)
direction, ids = longest_monotone(seq)
print(f"random n=50: longest monotone run is {direction} of length {len(ids)}")
print(f"  indices: {ids}")
print(f"  floor ceil(sqrt(50)) = {math.isqrt(49) + 1} always holds")
assert len(ids) >= 8

# The guarantee is tight: the staircase fixture with k^2 entries has no
# monotone subsequence longer than k.
for k in (3, 5, 8):
    ext = gen_es_extremal(k)
    _, best = longest_monotone(ext)
    print(f"staircase k={k}: n={len(ext)}, longest monotone = {len(best)}")
    assert len(best) == k

# -- block witnesses ---------------------------------------------------------

# A depth-3 block witness over a short sequence, written out by hand.
# Blocks hold 1-based positions; every one-per-block transversal must be
# increasing here.
vals = Sequence([2.0, 1.0, 3.0, 5.0, 4.0, 8.0, 9.0, 7.0])
w = BlockWitness("inc", ((1, 2), (3, 5), (7, 8)))
print(f"\nhand-built witness: depth={w.depth}, block size={w.block_size}")
print(f"  validates: {validate_block_witness(vals, w)}")
assert validate_block_witness(vals, w)

# Swap one block and the transversal property breaks.
bad = BlockWitness("inc", ((3, 5), (1, 2), (7, 8)))
print(f"  reordered blocks validate: {validate_block_witness(vals, bad)}")
assert not validate_block_witness(vals, bad)

# -- inversion profile -------------------------------------------------------

stats = inversion_stats(gen_random(200, seed=1))
total = stats.increasing_pairs + stats.decreasing_pairs
print(f"\nrandom n=200: {stats.decreasing_pairs} of {total} pairs decrease "
      f"({100 * stats.decreasing_pairs / total:.1f}%)")
print("a uniformly random permutation sits near 50% by symmetry;")
print(f"eps-increasing at eps=0.3: {stats.is_eps_increasing(0.3)}")
