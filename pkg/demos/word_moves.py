"""Word moves and their seed shadows.

Double words rewrite under braid moves, mixed swaps, bar flips and dual
moves; every rewrite drags the attached seed along by an explicit mutation
sequence.  This script walks a few rewrites in ranks A2, B2 and G2 and
verifies the seed transport for the ten-mutation 6-move.

Run:  python3 demos/word_moves.py
"""

from cluster_dual import cartan, maps, seeds, words
from cluster_dual.words import DoubleWord, Move

W = DoubleWord.from_string

print("=== move graph around -1,1,2,1 in A2")
A2 = cartan.build_cartan("A2")
start = W("-1,1,2,1")
for mv in words.applicable_moves(start, A2):
    print(f"  {mv.kind:<12} at {mv.pos}: {start.to_string()} -> "
          f"{words.apply_move(start, mv, A2).to_string()}")

print("\n=== shortest dual-move route -1,1 -> 1,1 (A1)")
A1 = cartan.build_cartan("A1")
cur = W("-1,1")
for mv in words.move_path(cur, W("1,1"), A1, words.DHAT_KINDS):
    nxt = words.apply_move(cur, mv, A1)
    print(f"  {mv.kind}: {cur.to_string()} -> {nxt.to_string()}")
    cur = nxt

print("\n=== the 6-move seed shadow in G2 (ten mutations)")
G2 = cartan.build_cartan("G2")
word = W("1,2,1,2,1,2")
mv = Move("positive_d", 0, 6)
target = words.apply_move(word, mv, G2)
seed = seeds.seed_for_word(word, G2)
sequence = maps._move_mutations(word, mv, G2)
print("mutation sequence:", [ix for ix, _ in sequence])
for ix, kind in sequence:
    seed = seeds.mutate_seed(seed, ix)
expected = seeds.seed_for_word(target, G2)
print("transported seed equals the seed of", target.to_string(), ":",
      seeds.relabel_seed(seed, words.index_map(word, mv, G2), expected.counts)
      == expected)
