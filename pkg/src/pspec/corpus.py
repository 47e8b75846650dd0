"""Seeded random terms, equations and algebra pairs for the property suites."""

from __future__ import annotations

import numpy as np

from .core import Apply, Equation, FiniteAlgebra, Term, Var, make_equation
from .builtins import groupoid2, order3_corpus, random_groupoid


def random_term(signature, k: int, depth: int, rng: np.random.Generator) -> Term:
    """Random term over x0..x{k-1}; leaves are variables or constants."""
    ops = [(op, a) for op, a in signature if a >= 1]
    consts = [op for op, a in signature if a == 0]
    if depth <= 0 or not ops or rng.random() < 0.25:
        if consts and rng.random() < 0.2:
            return Apply(consts[rng.integers(len(consts))], ())
        return Var(int(rng.integers(k)))
    op, a = ops[rng.integers(len(ops))]
    return Apply(op, tuple(random_term(signature, k, depth - 1, rng) for _ in range(a)))


def random_equation(signature, k: int, rng: np.random.Generator, depth: int = 3) -> Equation:
    return make_equation(random_term(signature, k, depth, rng),
                         random_term(signature, k, depth, rng), vars=k)


def groupoid_corpus(seed: int = 0, count3: int = 20) -> list[FiniteAlgebra]:
    """The 16 order-2 groupoids followed by ``count3`` seeded order-3 ones."""
    return [groupoid2(i) for i in range(16)] + order3_corpus(count3, seed)


def product_triples(count: int = 20, seed: int = 0, max_k: int = 3):
    """(A, B, equation) with A, B seeded groupoids of order 2 or 3."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        na, nb = (int(x) for x in rng.integers(2, 4, size=2))
        a = random_groupoid(na, int(rng.integers(1 << 30)))
        b = random_groupoid(nb, int(rng.integers(1 << 30)))
        k = int(rng.integers(1, max_k + 1))
        out.append((a, b, random_equation(a.signature, k, rng)))
    return out
