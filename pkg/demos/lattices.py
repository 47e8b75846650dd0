"""All six-element lattices and the probability that two elements meet at zero."""

from collections import Counter

from pspec.checks import lattice_search

hits = lattice_search(6)
print(len(hits), "lattices of order 6")
for h in sorted(hits, key=lambda h: h.probability):
    print(f"  {h.probability!s:6s} covers={list(h.covers)}")

print(Counter(str(h.probability) for h in hits))
