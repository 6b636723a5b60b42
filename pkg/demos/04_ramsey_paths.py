"""Monochromatic monotone paths in colored orderings.

Color every pair {i, j} of [n] with one of q colors.  Some color always
carries a vertex-increasing path through ~n^(1/q) vertices, and the
recursive product coloring shows that exponent is the truth.  The block
variant asks for more: hub vertices interleaved with whole blocks, every
spoke edge in one color.
"""

import math

from blockseq import (
    depth1_block_path,
    find_block_path,
    gen_random_coloring,
    gen_recursive_coloring,
    longest_monochromatic_path,
    validate_block_path,
)

# -- the tight recursive construction ---------------------------------------

for q in (2, 3):
    for k in (2, 3, 4):
        c = gen_recursive_coloring(k, q)
        color, path = longest_monochromatic_path(c)
        print(f"recursive k={k} q={q}: n={c.n:3d} -> "
              f"longest path {len(path)} (color {color})")
        assert len(path) == k

# -- random colorings sit well above the floor -------------------------------

print()
for q, n in ((2, 100), (3, 125)):
    c = gen_random_coloring(n, q, seed=5)
    color, path = longest_monochromatic_path(c)
    floor = math.ceil(n ** (1 / q))
    print(f"random q={q} n={n}: longest path {len(path)} "
          f"(floor {floor}, color {color})")
    assert len(path) >= floor

# -- block paths -------------------------------------------------------------

# Depth 1 is a single hub-block-hub sandwich; the guaranteed block size on a
# random 2-coloring of N=600 vertices is small, but the search finds far
# more in practice.
c = gen_random_coloring(600, 2, seed=8)
w = depth1_block_path(c)
print(f"\ndepth-1 block path on random N=600: block of {w.block_size} "
      f"vertices, color {w.color}")
assert validate_block_path(c, w)

# Deeper structured paths: ask for depth 2 with blocks of 3.
w2 = find_block_path(c, 2, 3)
if w2 is None:
    print("no depth-2 size-3 block path found in budget")
else:
    print(f"depth-2 block path: endpoints {w2.endpoints}, "
          f"blocks {w2.blocks}, color {w2.color}")
    assert validate_block_path(c, w2)
