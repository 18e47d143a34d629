#!/usr/bin/env python3
"""Tour of the tournament kernel: densities, embeddings, reversal
distance, transitive extraction.

Run:  python demos/kernel_demo.py
"""

import random

from tourkit import (
    count_embeddings,
    density,
    distance_to_h_free,
    embedding_stats,
    transitive_subtournament,
)
from tourkit.digraphs import (
    c3_pattern,
    cyclic_triangle,
    random_tournament,
    transitive_tournament,
)

rng = random.Random(42)

print("== densities ==")
t = random_tournament(10, rng)
stats = density(t, [1, 2, 3], [4, 5, 6])
print(f"d(X,Y) = {stats.density}  d(Y,X) = {1 - stats.density}")
print(f"dominant X->Y: {stats.dominant_xy}   weight = {stats.weight}")

print("\n== embeddings ==")
host = cyclic_triangle()
s = embedding_stats(host, c3_pattern())
print(f"directed triangle in itself: {s.embeddings} embeddings, "
      f"{s.automorphisms} automorphisms, {s.unlabeled} unlabeled copy")
print("directed triangle in a transitive tournament:",
      count_embeddings(transitive_tournament(5), c3_pattern()))

print("\n== reversal distance ==")
t6 = random_tournament(6, rng)
result = distance_to_h_free(t6, c3_pattern())
print(f"random 6-vertex tournament: {count_embeddings(t6, c3_pattern())} "
      f"triangle embeddings, distance to triangle-freeness = {result.distance}")
print(f"witness reversals: {result.flips}")

print("\n== transitive extraction ==")
t8 = random_tournament(8, rng)
seq = transitive_subtournament(t8, 4)
print(f"transitive 4-sequence in a random 8-vertex tournament: {seq}")
print("guaranteed for n >= 2^(k-1); here 8 = 2^3 covers k = 4")
