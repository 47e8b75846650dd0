"""Slow, obviously-correct reference computations used only by the tests."""

from fractions import Fraction
from itertools import combinations, permutations, product

from pspec.core import eval_term


def tuples(n, k):
    return list(product(range(n), repeat=k))


def naive_clone(alg, k):
    """Fixed point of composition over Python tuples."""
    pts = tuples(alg.size, k)
    known = {tuple(p[i] for p in pts) for i in range(k)}
    known |= {tuple(alg.tables[c].entries[0] for _ in pts) for c in alg.nullary}
    ops = [(alg.tables[op], a) for op, a in alg.signature if a >= 1]
    while True:
        fresh = set()
        for table, m in ops:
            for args in product(sorted(known), repeat=m):
                fresh.add(tuple(table(*(g[i] for g in args)) for i in range(len(pts))))
        if fresh <= known:
            return sorted(known)
        known |= fresh


def brute_probability(alg, eq):
    hits = sum(eval_term(alg, eq.lhs, x) == eval_term(alg, eq.rhs, x)
               for x in tuples(alg.size, eq.vars))
    return Fraction(hits, alg.size**eq.vars)


def brute_automorphisms(alg):
    out = []
    for p in permutations(range(alg.size)):
        good = True
        for op, a in alg.signature:
            t = alg.tables[op]
            if any(p[t(*x)] != t(*(p[v] for v in x)) for x in tuples(alg.size, a)):
                good = False
                break
        if good:
            out.append(p)
    return out


def brute_orbit_sizes(perms, n, k):
    seen, sizes = set(), []
    for x in tuples(n, k):
        if x in seen:
            continue
        orbit = {tuple(p[v] for v in x) for p in perms}
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def brute_subset_sums(sizes, den):
    out = set()
    for r in range(len(sizes) + 1):
        for c in combinations(sizes, r):
            out.add(Fraction(sum(c), den))
    return sorted(out)


def brute_covering_radius(clone_rows, n, L):
    best = 0
    for f in product(range(n), repeat=L):
        d = min(sum(a != b for a, b in zip(f, g)) for g in clone_rows)
        best = max(best, d)
    return best
