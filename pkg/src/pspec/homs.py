"""Homomorphism classification and the elementary probability inequalities."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .core import (AlgebraError, Equation, FiniteAlgebra, PreconditionError,
                   coordinate_grid)
from .spectrum import direct_product, equation_probability


@dataclass(frozen=True)
class AlgebraMap:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.size:
            raise AlgebraError(f"map needs {self.source.size} values, got {len(self.mapping)}")
        if any(not 0 <= v < self.target.size for v in self.mapping):
            raise AlgebraError("map value outside the target")


@dataclass(frozen=True)
class HomClassification:
    is_hom: bool
    injective: bool
    surjective: bool
    kappa: int | None          # common fiber size, when all fibers agree
    failure: str | None = None


def check_homomorphism(f: AlgebraMap) -> HomClassification:
    src, dst = f.source, f.target
    if src.signature != dst.signature:
        raise AlgebraError("signature mismatch")
    m = np.array(f.mapping, dtype=np.int64)
    failure = None
    for op, arity in src.signature:
        grid = coordinate_grid(src.size, arity)
        img = np.zeros(grid.shape[1], dtype=np.int64)
        for pos in range(arity):
            img = img * dst.size + m[grid[pos]]
        lhs = m[src.tables[op].entries.astype(np.int64)]
        rhs = dst.tables[op].entries.astype(np.int64)[img]
        if np.any(lhs != rhs):
            failure = op
            break
    fibers = Counter(f.mapping)
    surjective = len(fibers) == dst.size
    sizes = set(fibers.values())
    kappa = sizes.pop() if surjective and len(sizes) == 1 else None
    return HomClassification(failure is None, len(fibers) == src.size, surjective, kappa, failure)


def parse_map(text: str, algebras: Mapping[str, FiniteAlgebra] | Callable[[str], FiniteAlgebra]) -> AlgebraMap:
    """``map <src> <dst>`` followed by |src| integers; ``#`` comments."""
    tokens = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    if len(tokens) < 3 or tokens[0] != "map":
        raise AlgebraError("map file must start with: map <src> <dst>")
    resolve = algebras if callable(algebras) else algebras.__getitem__
    try:
        src, dst = resolve(tokens[1]), resolve(tokens[2])
    except KeyError as e:
        raise AlgebraError(f"unknown algebra {e.args[0]}") from None
    try:
        values = tuple(int(t) for t in tokens[3:])
    except ValueError:
        raise AlgebraError("map values must be integers") from None
    return AlgebraMap(src, dst, values)


def serialize_map(f: AlgebraMap) -> str:
    return f"map {f.source.name} {f.target.name}\n" + " ".join(map(str, f.mapping)) + "\n"


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaCheck:
    kind: str
    holds: bool
    lhs: Fraction
    rhs: Fraction
    upper: Fraction | None = None     # kappa kind: kappa * Pr(source)
    lower_holds: bool | None = None   # kappa kind: Pr(source) <= Pr(target)
    upper_holds: bool | None = None   # kappa kind: Pr(target) <= kappa * Pr(source)


def lemma_elementary_check(kind: str, eq: Equation, arg) -> LemmaCheck:
    """Evaluate one of the elementary inequalities exactly.

    kind     arg                  checked relation (k = eq.vars)
    mono     injective hom A->B   Pr_A <= (|B|/|A|)^k Pr_B
    epi      surjective hom A->B  1 - Pr_A >= (|B|/|A|)^k (1 - Pr_B)
    product  pair (A, B)          Pr_{AxB} = Pr_A Pr_B
    kappa    surjective hom A->B  Pr_A <= Pr_B <= kappa Pr_A, constant fibers kappa
    """
    k = eq.vars
    if kind == "product":
        a, b = arg
        lhs = equation_probability(direct_product(a, b), eq)
        rhs = equation_probability(a, eq) * equation_probability(b, eq)
        return LemmaCheck(kind, lhs == rhs, lhs, rhs)
    if not isinstance(arg, AlgebraMap):
        raise PreconditionError(f"{kind} needs an AlgebraMap")
    cls = check_homomorphism(arg)
    if not cls.is_hom:
        raise PreconditionError(f"hypothesis failed: not a homomorphism (op {cls.failure})")
    a, b = arg.source, arg.target
    pa, pb = equation_probability(a, eq), equation_probability(b, eq)
    ratio = Fraction(b.size, a.size) ** k
    if kind == "mono":
        if not cls.injective:
            raise PreconditionError("hypothesis failed: map is not injective")
        rhs = ratio * pb
        return LemmaCheck(kind, pa <= rhs, pa, rhs)
    if kind == "epi":
        if not cls.surjective:
            raise PreconditionError("hypothesis failed: map is not surjective")
        lhs, rhs = 1 - pa, ratio * (1 - pb)
        return LemmaCheck(kind, lhs >= rhs, lhs, rhs)
    if kind == "kappa":
        if not cls.surjective:
            raise PreconditionError("hypothesis failed: map is not surjective")
        if cls.kappa is None:
            raise PreconditionError("hypothesis failed: fibers differ in size")
        upper = cls.kappa * pa
        lo, hi = pa <= pb, pb <= upper
        return LemmaCheck(kind, lo and hi, pa, pb, upper, lo, hi)
    raise ValueError(f"unknown kind {kind}")


# --------------------------------------------------------------------------
# corpus helpers

def subuniverse_closure(alg: FiniteAlgebra, seed) -> list[int]:
    """Smallest subset containing ``seed`` and the constants, closed under all ops."""
    current = set(int(x) for x in seed)
    for op in alg.nullary:
        current.add(alg.tables[op](*()))
    while True:
        grew = False
        elems = sorted(current)
        for op, arity in alg.signature:
            if arity == 0:
                continue
            t = alg.tables[op]
            for args in np.array(np.meshgrid(*[elems] * arity, indexing="ij")).reshape(arity, -1).T:
                v = t(*args.tolist())
                if v not in current:
                    current.add(v)
                    grew = True
        if not grew:
            return sorted(current)


def subalgebra(alg: FiniteAlgebra, universe) -> tuple[FiniteAlgebra, AlgebraMap]:
    """The subalgebra on ``universe`` (relabelled 0..m-1) and its inclusion map."""
    universe = sorted(universe)
    pos = {x: i for i, x in enumerate(universe)}
    m = len(universe)
    ops = []
    for op, arity in alg.signature:
        grid = coordinate_grid(m, arity)
        vals = []
        for col in grid.T if arity else [()]:
            v = alg.tables[op](*[universe[i] for i in col])
            if v not in pos:
                raise AlgebraError("universe is not closed")
            vals.append(pos[v])
        ops.append((op, arity, vals))
    sub = FiniteAlgebra.from_tables(f"{alg.name}_sub", m, ops)
    return sub, AlgebraMap(sub, alg, tuple(universe))


def product_projection(a: FiniteAlgebra, b: FiniteAlgebra) -> AlgebraMap:
    """First projection A x B -> A (fibers of size |B|)."""
    prod = direct_product(a, b)
    return AlgebraMap(prod, a, tuple(x // b.size for x in range(prod.size)))


def diagonal_map(a: FiniteAlgebra) -> AlgebraMap:
    prod = direct_product(a, a)
    return AlgebraMap(a, prod, tuple(x * a.size + x for x in range(a.size)))
