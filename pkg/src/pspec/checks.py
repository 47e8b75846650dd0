"""Named property suites shared by the command line and the test-suite.

Each suite returns a list of ``CheckRow``; a suite passes when every row is ok.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .approx import PrimReport, prim_at
from .builtins import boolean_ops, bounded_lattices, builtin_algebra, groupoid2, hasse_covers
from .clone import DEFAULT_CLONE_BUDGET, Status, generate_clone, is_primal, post_classes
from .core import BudgetExceeded, FiniteAlgebra, parse_equation
from .corpus import groupoid_corpus, product_triples, random_equation
from .homs import (lemma_elementary_check, product_projection, subalgebra,
                   subuniverse_closure)
from .oracles import quadrilateral_count
from .spectrum import (SpectrumReport, check_orbit_inclusion,
                       equation_probability, fraction_str)


@dataclass(frozen=True)
class CheckRow:
    suite: str
    case: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'ok  ' if self.ok else 'FAIL'} {self.suite} {self.case} {self.detail}".rstrip()


def all_ok(rows) -> bool:
    return all(r.ok for r in rows)


def suite_budget(alg: FiniteAlgebra, k: int) -> int:
    """Clone budget used by the corpus suites: tight where Clo_k can be huge."""
    return DEFAULT_CLONE_BUDGET if alg.size**k <= 9 else 1 << 14


# --------------------------------------------------------------------------

def orbit_inclusion_suite(algebras=None, max_k: int = 3, seed: int = 0, budget_at=suite_budget):
    rows = []
    for alg in algebras if algebras is not None else groupoid_corpus(seed):
        for k in range(1, max_k + 1):
            r = check_orbit_inclusion(alg, k, budget=budget_at(alg, k))
            detail = "strict" if r.strict else "equal"
            if r.equality_required:
                detail += " (equality required)"
            if not r.complete:
                detail += " partial"
            if r.witness is not None:
                detail += f" witness={fraction_str(r.witness)}"
            rows.append(CheckRow("orbit-inclusion", f"{alg.name} k={k}", r.ok, detail))
    return rows


def product_law_suite(count: int = 20, seed: int = 0):
    rows = []
    for a, b, eq in product_triples(count, seed):
        r = lemma_elementary_check("product", eq, (a, b))
        rows.append(CheckRow("product-law", f"{a.name} x {b.name} {eq}", r.holds,
                             f"{fraction_str(r.lhs)} vs {fraction_str(r.rhs)}"))
    return rows


def hom_lemma_suite(algebras=None, seed: int = 0, equations: int = 2):
    """mono on subalgebra inclusions; epi and kappa on product projections."""
    rng = np.random.default_rng(seed)
    algebras = list(algebras if algebras is not None else groupoid_corpus(seed))
    rows = []
    for alg in algebras:
        size = int(rng.integers(1, alg.size + 1))
        seed_set = rng.choice(alg.size, size=size, replace=False)
        _, inclusion = subalgebra(alg, subuniverse_closure(alg, seed_set))
        partner = algebras[int(rng.integers(len(algebras)))]
        if partner.signature != alg.signature:
            partner = alg
        projection = product_projection(alg, partner)
        for _ in range(equations):
            k = int(rng.integers(1, 4))
            eq = random_equation(alg.signature, k, rng)
            for kind, f in (("mono", inclusion), ("epi", projection), ("kappa", projection)):
                r = lemma_elementary_check(kind, eq, f)
                case = f"{f.source.name}->{f.target.name} {eq}"
                if kind == "kappa":
                    detail = (f"{fraction_str(r.lhs)} <= {fraction_str(r.rhs)} <= "
                              f"{fraction_str(r.upper)}")
                else:
                    detail = f"{fraction_str(r.lhs)} vs {fraction_str(r.rhs)}"
                rows.append(CheckRow(kind, case, r.holds, detail))
    return rows


# --------------------------------------------------------------------------
# the two-element barrier

_UNARY_NAMES = {(0, 1): "id", (0, 0): "0", (1, 1): "1", (1, 0): "neg"}

# unary clone -> (maximal Post class it witnesses, predicted Prim_1)
BARRIER_CASES = {
    frozenset({"id", "0"}): ("P0", Fraction(1, 2)),
    frozenset({"id", "1"}): ("P1", Fraction(1, 2)),
    frozenset({"id", "0", "1"}): ("M", Fraction(1, 2)),
    frozenset({"id", "neg"}): ("D", Fraction(1, 2)),
}

BARRIER_SAMPLES = ("or+xor", "and+iff", "or+and+zero+one", "neg+xor3")


def unary_clone(alg: FiniteAlgebra) -> frozenset[str]:
    clone = generate_clone(alg, 1)
    return frozenset(_UNARY_NAMES[tuple(int(v) for v in row)] for row in clone.rows)


def barrier_suite(samples=BARRIER_SAMPLES):
    rows = []
    for names in samples:
        alg = boolean_ops(names)
        unary = unary_clone(alg)
        case = BARRIER_CASES.get(unary)
        prim1 = prim_at(alg, 1).prim_k
        classes = post_classes(alg)
        if case is None:
            rows.append(CheckRow("barrier", names, False, f"unary clone {sorted(unary)} has no case"))
            continue
        cls, predicted = case
        ok = prim1 == predicted and cls in classes
        rows.append(CheckRow("barrier", names, ok,
                             f"unary={sorted(unary)} class={cls} Prim_1={fraction_str(prim1)}"))
    nand = builtin_algebra("nand")
    post = is_primal(nand, method="PostTest")
    card = is_primal(nand, method="Cardinality")
    rows.append(CheckRow("barrier", "nand primal", post.status == card.status == Status.PRIMAL,
                         f"PostTest={post.status.value} Cardinality={card.status.value}"))
    return rows


# --------------------------------------------------------------------------

def quadrilateral_row(spec: SpectrumReport, prim: PrimReport, n: int) -> CheckRow:
    """|spectrum| >= floor(1/(4(1-Prim_k))); at Prim_k = 1 every d/n^k must appear."""
    need = quadrilateral_count(prim.prim_k)
    have = len(spec.values)
    if need is None:
        ok, bound = have == n**spec.arity + 1, f"={n**spec.arity + 1}"
    else:
        ok, bound = have >= need, f">={need}"
    return CheckRow("quadrilateral", f"{spec.algebra} k={spec.arity}", ok,
                    f"|spec|={have} {bound} Prim={fraction_str(prim.prim_k)}")


def quadrilateral_suite(algebras=None, max_k: int = 2, seed: int = 0):
    from .spectrum import pspec_at
    rows = []
    for alg in algebras if algebras is not None else groupoid_corpus(seed):
        for k in range(1, max_k + 1):
            clone = generate_clone(alg, k)
            if not clone.complete:
                continue
            try:
                prim = prim_at(alg, k, clone=clone)
            except BudgetExceeded:
                continue
            rows.append(quadrilateral_row(pspec_at(alg, k, clone=clone), prim, alg.size))
    return rows


SUITES = {
    "orbit-inclusion": orbit_inclusion_suite,
    "product-law": product_law_suite,
    "hom-lemma": hom_lemma_suite,
    "barrier": barrier_suite,
    "quadrilateral": quadrilateral_suite,
}


# --------------------------------------------------------------------------
# lattice search

@dataclass(frozen=True)
class LatticeHit:
    lattice: FiniteAlgebra
    probability: Fraction
    covers: tuple[tuple[int, int], ...]


def lattice_search(size: int = 6, equation: str = "(= (meet x0 x1) (zero))"):
    """Every bounded lattice of the given order with its equation probability."""
    out = []
    for lat in bounded_lattices(size):
        eq = parse_equation(equation, lat.signature)
        out.append(LatticeHit(lat, equation_probability(lat, eq), tuple(hasse_covers(lat))))
    return out


def product_power_spectrum(alg: FiniteAlgebra, k: int, m: int = 2):
    """pspec_at of A^m next to the m-th powers of pspec_at(A)."""
    from .spectrum import power, pspec_at
    base = pspec_at(alg, k).values
    return pspec_at(power(alg, m), k).values, tuple(sorted(v**m for v in base))
