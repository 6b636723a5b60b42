"""Extracting wide block-monotone structure with the gapped-chain DP.

A single longest monotone subsequence only reaches length ~sqrt(n).  To get
*blocks* of many entries each, the extractor chains pairs that keep at least
s entries strictly between them in both index and value; each such pair then
donates a full block of s entries.
"""

import math
import os

from blockseq import (
    chain_to_blocks,
    default_c,
    extract_block_monotone,
    gapped_chain_dp,
    gen_random,
    max_gapped_blocksize,
    validate_block_witness,
)

seq = gen_random(2000, seed=3)
n = len(seq)
k = 3

# -- the raw DP --------------------------------------------------------------

s = 40
for direction in ("inc", "dec"):
    ch = gapped_chain_dp(seq, s, direction)
    print(f"{direction} chains with gap {s}: longest has {ch.length} links")

ch = gapped_chain_dp(seq, s, "dec")
w = chain_to_blocks(seq, ch)
print(f"converted: depth {w.depth}, {w.block_size} entries per block, "
      f"valid={validate_block_witness(seq, w)}")

# -- the one-call extractor --------------------------------------------------

# The block size scales like n / (ck)^2.  The default constant c is huge on
# purpose (asymptotic safety margin); desk-sized inputs use c=2 to see the
# DP branch instead of the classical fallback.
print(f"\ndefault c = {default_c()}  (override via BLOCKSEQ_C)")
for c in (None, 2):
    w = extract_block_monotone(seq, k, c)
    label = "default" if c is None else f"c={c}"
    print(f"extract k={k} [{label}]: depth={w.depth} block size={w.block_size}")
    assert validate_block_witness(seq, w) and w.depth >= k

target = math.ceil(n / (2 * k) ** 2)
w = extract_block_monotone(seq, k, 2)
print(f"guaranteed block size at c=2: >= ceil(n/(ck)^2) = {target}; "
      f"got {w.block_size}")
assert w.block_size >= target

# -- the widest possible gap -------------------------------------------------

small = gen_random(300, seed=12)
s_star, best = max_gapped_blocksize(small, k)
print(f"\nn=300, k={k}: largest feasible gap s* = {s_star}")
print(f"  witness depth {best.depth}, block size {best.block_size}")
assert validate_block_witness(small, best)

# The environment override applies at call time.
os.environ["BLOCKSEQ_C"] = "2"
print(f"after setting BLOCKSEQ_C=2: default_c() = {default_c()}")
del os.environ["BLOCKSEQ_C"]
