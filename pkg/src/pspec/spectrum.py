"""Equation probabilities and arity-truncated probabilistic spectra.

Pr(t = t' | A) for a k-variable equation is the coincidence ratio of the
two term operations, so the arity-k slice of the spectrum is exactly the
set of coincidence ratios over pairs of k-ary clone members.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from .bitpack import Packer
from .clone import DEFAULT_CLONE_BUDGET, CloneSet, generate_clone, is_automorphism_primal_at
from .core import AlgebraError, Equation, FiniteAlgebra, compile_term, coordinate_grid
from .symmetry import automorphism_group, orbit_partition, sigma_subset_sums

DEFAULT_PAIR_BUDGET = 1 << 34


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def equation_probability(alg: FiniteAlgebra, eq: Equation) -> Fraction:
    k = eq.vars
    lhs = compile_term(alg, eq.lhs, k)
    rhs = compile_term(alg, eq.rhs, k)
    packer = Packer(alg.size, alg.size**k)
    agree = int(packer.agreements(packer.pack(lhs.entries), packer.pack(rhs.entries))[0])
    return Fraction(agree, alg.size**k)


@dataclass(frozen=True)
class SpectrumReport:
    algebra: str
    arity: int
    values: tuple[Fraction, ...]
    complete: bool
    pair_count: int
    clone_size: int = 0
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "arity": self.arity, "complete": self.complete,
                "values": [fraction_str(v) for v in self.values]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def singleton_subuniverses(alg: FiniteAlgebra) -> list[int]:
    """Elements a such that {a} is closed under every operation."""
    out = []
    for a in range(alg.size):
        ok = True
        for op, arity in alg.signature:
            t = alg.tables[op]
            if t(*([a] * arity)) != a:
                ok = False
                break
        if ok:
            out.append(a)
    return out


def candidate_counts(alg: FiniteAlgebra, k: int) -> set[int]:
    """Agreement counts not excluded a priori at arity k.

    Agreement sets are unions of automorphism orbits, and every term sends
    (a, ..., a) to a when {a} is a subuniverse, so those orbits are forced.
    """
    n = alg.size
    try:
        part = orbit_partition(automorphism_group(alg), k)
    except Exception:
        return set(range(n**k + 1))
    forced = set()
    diag_step = sum(n**i for i in range(k))
    for a in singleton_subuniverses(alg):
        forced.add(int(part.labels[a * diag_step]))
    base = sum(s for rep, s in part.orbits if rep in forced)
    free = [s for rep, s in part.orbits if rep not in forced]
    reach = 1
    for s in free:
        reach |= reach << s
    return {base + d for d in range(n**k + 1) if (reach >> d) & 1}


def coincidence_counts(clone: CloneSet, pair_budget: int = DEFAULT_PAIR_BUDGET,
                       stop_when: set[int] | None = None) -> tuple[set[int], int, bool]:
    """Set of agreement counts over unordered clone pairs.

    Returns (counts, pairs examined, exhausted).  Stops early once
    ``stop_when`` is covered, which cannot lose values.
    """
    n, L = clone.n, clone.rows.shape[1]
    N = len(clone)
    packer = Packer(n, L)
    packed = packer.pack(clone.rows)
    seen = np.zeros(L + 1, dtype=bool)
    pairs = 0
    block = max(1, (1 << 22) // max(1, N * packer.words))
    for start in range(0, N, block):
        stop = min(N, start + block)
        width = N - start
        if pairs + (stop - start) * width > pair_budget:
            return set(np.nonzero(seen)[0].tolist()), pairs, False
        agree = packer.agreements(packed[start:stop, None, :], packed[None, start:, :])
        seen[np.unique(agree)] = True
        pairs += (stop - start) * width
        if stop_when is not None and stop_when <= set(np.nonzero(seen)[0].tolist()):
            return set(np.nonzero(seen)[0].tolist()), pairs, True
    return set(np.nonzero(seen)[0].tolist()), pairs, True


def pspec_at(alg: FiniteAlgebra, k: int, budget: int = DEFAULT_CLONE_BUDGET,
             pair_budget: int = DEFAULT_PAIR_BUDGET, clone: CloneSet | None = None) -> SpectrumReport:
    """Spectrum values realized by equations in k variables."""
    if k < 1:
        raise AlgebraError("arity must be >= 1")
    if clone is None:
        clone = generate_clone(alg, k, budget)
    counts, pairs, exhausted = coincidence_counts(clone, pair_budget, candidate_counts(alg, k))
    total = alg.size**k
    values = tuple(sorted(Fraction(c, total) for c in counts))
    notes = []
    if not clone.complete:
        notes.append("clone closure hit the table budget; values are a subset of the slice")
    if not exhausted:
        notes.append("pair budget exhausted; values are a subset of the slice")
    return SpectrumReport(alg.name, k, values, clone.complete and exhausted, pairs,
                          len(clone), tuple(notes))


# --------------------------------------------------------------------------
# products

def direct_product(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """A x B; the pair (x, y) is element x * |B| + y."""
    if a.signature != b.signature:
        raise AlgebraError("signature mismatch")
    na, nb = a.size, b.size
    n = na * nb
    ops = []
    for op, arity in a.signature:
        grid = coordinate_grid(n, arity)
        ia = np.zeros(grid.shape[1], dtype=np.int64)
        ib = np.zeros(grid.shape[1], dtype=np.int64)
        for pos in range(arity):
            ia = ia * na + grid[pos] // nb
            ib = ib * nb + grid[pos] % nb
        ta = a.tables[op].entries.astype(np.int64)
        tb = b.tables[op].entries.astype(np.int64)
        ops.append((op, arity, ta[ia] * nb + tb[ib]))
    return FiniteAlgebra.from_tables(name or f"{a.name}x{b.name}", n, ops)


def power(alg: FiniteAlgebra, m: int) -> FiniteAlgebra:
    out = alg
    for _ in range(m - 1):
        out = direct_product(out, alg)
    return FiniteAlgebra(f"{alg.name}^{m}", out.size, out.signature, out.tables)


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InclusionResult:
    holds: bool                     # spectrum slice is inside the orbit bound
    strict: bool
    witness: Fraction | None        # a spectrum value outside the bound, or a bound value never realized
    equality_required: bool         # automorphism-primal at k with at least two fixed points
    equality_holds: bool | None     # None unless equality is required
    complete: bool

    @property
    def ok(self) -> bool:
        return self.holds and self.equality_holds is not False


def check_orbit_inclusion(alg: FiniteAlgebra, k: int, budget: int = DEFAULT_CLONE_BUDGET,
                          pair_budget: int = DEFAULT_PAIR_BUDGET) -> InclusionResult:
    clone = generate_clone(alg, k, budget)
    report = pspec_at(alg, k, clone=clone, pair_budget=pair_budget)
    spec = set(report.values)
    group = automorphism_group(alg)
    bound = set(sigma_subset_sums(orbit_partition(group, k).sizes, alg.size**k))
    outside = sorted(spec - bound)
    holds = not outside
    strict = holds and spec != bound
    witness = outside[0] if outside else (min(bound - spec) if strict else None)
    equality_required = False
    if report.complete and len(group.fixed_points) >= 2:
        equality_required = bool(is_automorphism_primal_at(alg, k, clone=clone))
    equality_holds = (spec == bound) if equality_required else None
    return InclusionResult(holds, strict, witness, equality_required, equality_holds, report.complete)
