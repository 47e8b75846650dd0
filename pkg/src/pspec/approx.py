"""Quantitative primality.

Prim_k(A) is one minus the normalized covering radius of Clo_k(A), viewed
as a code of length n^k over the alphabet A.  Two routes compute the
covering radius: a breadth-first sweep of the Hamming graph on all n^(n^k)
words (any clone), and the Walsh-Hadamard spectrum when the clone is the
Boolean affine clone, where the distance to the clone is the nonlinearity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bitpack import Packer
from .clone import DEFAULT_CLONE_BUDGET, CloneSet, all_functions, generate_clone, row_keys
from .core import BudgetExceeded, FiniteAlgebra, FunctionTable, PreconditionError, coordinate_grid

DEFAULT_FUNCTION_BUDGET = 1 << 24


def _check_pair(f: FunctionTable, g: FunctionTable) -> None:
    if f.n != g.n or f.arity != g.arity:
        raise PreconditionError("tables differ in size or arity")
    if f.arity == 0:
        raise PreconditionError("the coincidence ratio is undefined for arity 0")


def hamming_distance(f: FunctionTable, g: FunctionTable) -> int:
    _check_pair(f, g)
    return int(np.count_nonzero(f.entries != g.entries))


def distance(f: FunctionTable, g: FunctionTable) -> Fraction:
    return Fraction(hamming_distance(f, g), len(f))


def coincidence_mu(f: FunctionTable, g: FunctionTable) -> Fraction:
    return 1 - distance(f, g)


def best_approximation(clone: CloneSet, f: FunctionTable) -> tuple[FunctionTable, Fraction]:
    """Closest clone member to ``f``; ties go to the canonically least table."""
    if f.n != clone.n or f.arity != clone.arity:
        raise PreconditionError("table and clone differ in size or arity")
    packer = Packer(clone.n, len(f))
    agree = packer.agreements(packer.pack(clone.rows), packer.pack(f.entries))
    i = int(np.argmax(agree))
    return clone.tables[i], Fraction(int(agree[i]), len(f))


# --------------------------------------------------------------------------
# covering radius

@dataclass(frozen=True)
class CoveringResult:
    radius: int
    witness: FunctionTable     # lexicographically least word at maximal distance


def _check_function_budget(n: int, k: int, budget: int) -> int:
    total = n ** (n**k)
    if total > budget:
        raise BudgetExceeded(
            f"budget exceeded: {n}^({n}^{k}) = {total} functions > {budget}; "
            "the exhaustive route needs a larger budget and the Walsh-Hadamard "
            "route applies only to the Boolean affine clone")
    return total


def covering_radius_bfs(clone: CloneSet, budget: int = DEFAULT_FUNCTION_BUDGET) -> CoveringResult:
    """Multi-source BFS from the clone over the Hamming graph of all words."""
    n, k = clone.n, clone.arity
    L = n**k
    total = _check_function_budget(n, k, budget)
    if L == 0 or len(clone) == 0:
        raise PreconditionError("empty clone")
    dist = np.full(total, -1, dtype=np.int16)
    frontier = np.asarray(row_keys(clone.rows, n), dtype=np.int64)
    dist[frontier] = 0
    weights = [n ** (L - 1 - i) for i in range(L)]
    level = 0
    while frontier.size:
        nbrs = []
        for w in weights:
            digit = (frontier // w) % n
            for delta in range(1, n):
                nbrs.append(frontier + (((digit + delta) % n) - digit) * w)
        cand = np.unique(np.concatenate(nbrs))
        cand = cand[dist[cand] < 0]
        level += 1
        dist[cand] = level
        frontier = cand
    radius = int(dist.max())
    idx = int(np.argmax(dist == radius))
    return CoveringResult(radius, FunctionTable(n, k, all_functions(n, k, idx, idx + 1)[0]))


def covering_radius_direct(clone: CloneSet, budget: int = DEFAULT_FUNCTION_BUDGET) -> CoveringResult:
    """Distance from every word to every clone member, chunked."""
    n, k = clone.n, clone.arity
    L = n**k
    total = _check_function_budget(n, k, budget)
    packer = Packer(n, L)
    code = packer.pack(clone.rows)
    best, best_idx = -1, 0
    step = max(1, (1 << 22) // max(1, len(clone) * packer.words))
    for start in range(0, total, step):
        words = packer.pack(all_functions(n, k, start, min(total, start + step)))
        d = packer.mismatches(words[:, None, :], code[None, :, :]).min(axis=1)
        i = int(np.argmax(d))
        if d[i] > best:
            best, best_idx = int(d[i]), start + i
    return CoveringResult(best, FunctionTable(n, k, all_functions(n, k, best_idx, best_idx + 1)[0]))


def covering_radius(clone: CloneSet, budget: int = DEFAULT_FUNCTION_BUDGET,
                    method: str = "bfs") -> int:
    if clone.complete and len(clone) == clone.n ** (clone.n**clone.arity):
        return 0
    if method == "bfs":
        return covering_radius_bfs(clone, budget).radius
    if method == "direct":
        return covering_radius_direct(clone, budget).radius
    raise ValueError(f"unknown method {method}")


# --------------------------------------------------------------------------
# Walsh-Hadamard

def walsh_spectrum(rows: np.ndarray) -> np.ndarray:
    """Fast Walsh-Hadamard transform of (-1)^f for each row of 0/1 values."""
    a = 1 - 2 * np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a[None, :]
    a = a.copy()
    L = a.shape[1]
    h = 1
    while h < L:
        a = a.reshape(a.shape[0], -1, 2, h)
        x = a[:, :, 0, :].copy()
        y = a[:, :, 1, :]
        a[:, :, 0, :] += y
        a[:, :, 1, :] = x - y
        a = a.reshape(a.shape[0], L)
        h *= 2
    return a


def _nonlinearity_rows(rows: np.ndarray, k: int) -> np.ndarray:
    w = np.abs(walsh_spectrum(rows)).max(axis=1)
    return (1 << (k - 1)) - w // 2


def walsh_nonlinearity(f: FunctionTable) -> int:
    """Hamming distance from a Boolean function to the nearest affine function."""
    if f.n != 2:
        raise PreconditionError("nonlinearity is defined for n = 2")
    if f.arity == 0:
        raise PreconditionError("nonlinearity needs arity >= 1")
    return int(_nonlinearity_rows(f.entries, f.arity)[0])


def affine_rows(k: int) -> np.ndarray:
    """All 2^(k+1) Boolean affine k-ary functions, lexicographic."""
    grid = coordinate_grid(2, k)
    rows = []
    for mask in range(1 << k):
        lin = np.zeros(1 << k, dtype=np.int64)
        for i in range(k):
            if (mask >> i) & 1:
                lin ^= grid[i]
        rows.append(lin)
        rows.append(lin ^ 1)
    rows = np.array(rows, dtype=np.uint8)
    return rows[np.argsort(row_keys(rows, 2), kind="stable")]


def is_affine_clone(clone: CloneSet) -> bool:
    if clone.n != 2 or not clone.complete:
        return False
    expected = affine_rows(clone.arity)
    return clone.rows.shape == expected.shape and bool(np.all(clone.rows == expected))


def covering_radius_walsh(k: int, budget: int = DEFAULT_FUNCTION_BUDGET) -> CoveringResult:
    """Covering radius of the affine clone: the maximal nonlinearity nl_k."""
    total = _check_function_budget(2, k, budget)
    best, best_idx = -1, 0
    step = 1 << 16
    for start in range(0, total, step):
        nl = _nonlinearity_rows(all_functions(2, k, start, min(total, start + step)), k)
        i = int(np.argmax(nl))
        if nl[i] > best:
            best, best_idx = int(nl[i]), start + i
    return CoveringResult(best, FunctionTable(2, k, all_functions(2, k, best_idx, best_idx + 1)[0]))


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimReport:
    algebra: str
    arity: int
    prim_k: Fraction
    covering_radius: int
    hardest_function: FunctionTable
    method: str                 # "Exhaustive" or "WalshHadamard"
    complete: bool
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "arity": self.arity,
                "prim": f"{self.prim_k.numerator}/{self.prim_k.denominator}",
                "coveringRadius": self.covering_radius,
                "hardestFunction": self.hardest_function.tolist(),
                "method": self.method, "complete": self.complete,
                "notes": list(self.notes)}


def prim_at(alg: FiniteAlgebra, k: int, budget: int = DEFAULT_FUNCTION_BUDGET,
            clone_budget: int = DEFAULT_CLONE_BUDGET, method: str = "auto",
            clone: CloneSet | None = None) -> PrimReport:
    """Arity-k primality: min over k-ary f of the best clone coincidence."""
    if k < 1:
        raise PreconditionError("arity must be >= 1")
    n = alg.size
    if clone is None:
        clone = generate_clone(alg, k, clone_budget)
    if not clone.complete:
        raise BudgetExceeded(f"budget exceeded: Clo_{k}({alg.name}) did not close within {clone_budget} tables")
    L = n**k
    notes = []
    if n == 1:
        notes.append("trivial algebra")
    if len(clone) == n**L:
        witness = clone.tables[0]
        return PrimReport(alg.name, k, Fraction(1), 0, witness, "Exhaustive", True,
                          tuple(notes + ["every k-ary function is a term"]))
    if method == "auto":
        method = "WalshHadamard" if is_affine_clone(clone) else "Exhaustive"
    if method == "WalshHadamard":
        if not is_affine_clone(clone):
            raise PreconditionError("the Walsh-Hadamard route needs the Boolean affine clone")
        res = covering_radius_walsh(k, budget)
    elif method == "Exhaustive":
        res = covering_radius_bfs(clone, budget)
    else:
        raise ValueError(f"unknown method {method}")
    return PrimReport(alg.name, k, 1 - Fraction(res.radius, L), res.radius,
                      res.witness, method, True, tuple(notes))


def prim_upper_bound(reports) -> Fraction:
    """min over computed arities: an upper bound on Prim(A), never its value."""
    return min(r.prim_k for r in reports)
