#!/usr/bin/env python3
"""The easy/hard classifier and the smallest hard tournament.

A pattern is easy exactly when its vertex set splits into two acyclic
classes. The smallest tournament without such a split is found by
scanning vertex counts upward; nothing below it refutes 2-colorability.

Run:  python demos/colorability_demo.py   (the discovery scan takes ~1s)
"""

from tourkit import (
    chromatic_number,
    classify,
    nae_two_coloring,
    smallest_non_two_colorable_tournament,
)
from tourkit.digraphs import c3_pattern, cyclic_triangle, transitive_tournament

print("== classification ==")
print("directed triangle:", classify(c3_pattern()))
print("transitive tournament on 6:", classify(transitive_tournament(6)))

print("\n== the smallest hard tournament ==")
hard = smallest_non_two_colorable_tournament()
print(f"first non-2-colorable tournament appears at n = {hard.n}")
print("its edges:", sorted(hard.edges))
print("classification:", classify(hard))
print("chromatic number:", chromatic_number(hard))

print("\n== the clause view ==")
coloring = nae_two_coloring(cyclic_triangle())
print("cyclic triangle 2-coloring via not-all-equal constraints:",
      coloring.assignment)
print("(one constraint per cyclic triangle; a class is transitive exactly",
      "when it spans none)")
