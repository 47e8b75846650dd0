"""Automorphism groups, orbits of A^k and orbit subset-sum bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .core import BudgetExceeded, FiniteAlgebra, PreconditionError, coordinate_grid

MAX_AUT_SIZE = 9
DEFAULT_ORBIT_BUDGET = 1 << 22


@dataclass(frozen=True)
class AutomorphismGroup:
    n: int
    elements: tuple[tuple[int, ...], ...]
    fixed_points: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(len(self.elements), self.n)

    def is_closed(self) -> bool:
        elems = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                if tuple(a[x] for x in b) not in elems:
                    return False
        return True


@dataclass(frozen=True)
class OrbitPartition:
    arity: int
    n: int
    orbits: tuple[tuple[int, int], ...]  # (least index in orbit, orbit size)
    labels: np.ndarray                   # labels[i] = representative of i's orbit

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.orbits)

    @property
    def total(self) -> int:
        return sum(self.sizes)


def _permuted_indices(perms: np.ndarray, n: int, k: int) -> np.ndarray:
    """(P, n^k) array: entry [g, i] is the index of g applied to tuple i."""
    grid = coordinate_grid(n, k)
    out = np.zeros((perms.shape[0], n**k), dtype=np.int64)
    for pos in range(k):
        out = out * n + perms[:, grid[pos]]
    return out


def preserves(perms: np.ndarray, alg: FiniteAlgebra) -> np.ndarray:
    """Boolean mask over the rows of ``perms``: which are automorphisms."""
    n = alg.size
    ok = np.ones(perms.shape[0], dtype=bool)
    # nullary ops first: they prune the most for the least work
    for op, arity in sorted(alg.signature, key=lambda s: s[1]):
        table = alg.tables[op].entries.astype(np.int64)
        moved = _permuted_indices(perms, n, arity)
        lhs = np.take_along_axis(perms, np.broadcast_to(table, moved.shape), axis=1)
        rhs = table[moved]
        ok &= (lhs == rhs).all(axis=1)
    return ok


def automorphism_group(alg: FiniteAlgebra, max_size: int = MAX_AUT_SIZE) -> AutomorphismGroup:
    n = alg.size
    if n > max_size:
        raise BudgetExceeded(f"automorphism search over {n}! permutations exceeds the limit n <= {max_size}")
    kept = []
    chunk = []
    for p in permutations(range(n)):
        chunk.append(p)
        if len(chunk) == 20000:
            arr = np.array(chunk, dtype=np.int64)
            kept.extend(map(tuple, arr[preserves(arr, alg)].tolist()))
            chunk = []
    if chunk:
        arr = np.array(chunk, dtype=np.int64)
        kept.extend(map(tuple, arr[preserves(arr, alg)].tolist()))
    elements = tuple(sorted(kept))
    fixed = tuple(x for x in range(n) if all(g[x] == x for g in elements))
    return AutomorphismGroup(n, elements, fixed)


def orbit_partition(group: AutomorphismGroup, k: int,
                    budget: int = DEFAULT_ORBIT_BUDGET) -> OrbitPartition:
    n = group.n
    if group.order * n**k > budget:
        raise BudgetExceeded(f"orbit computation on {n}^{k} tuples exceeds budget {budget}")
    moved = _permuted_indices(group.as_array(), n, k)
    # the group is listed in full, so an orbit is one column's image set
    labels = moved.min(axis=0)
    reps, sizes = np.unique(labels, return_counts=True)
    orbits = tuple(zip(reps.tolist(), sizes.tolist()))
    return OrbitPartition(k, n, orbits, labels)


def sigma_subset_sums(sizes, denominator: int) -> list[Fraction]:
    """All subset sums of ``sizes`` divided by ``denominator``, ascending."""
    sizes = [int(s) for s in sizes]
    if any(s < 0 for s in sizes) or sum(sizes) != denominator or denominator < 1:
        raise PreconditionError(
            f"sizes sum to {sum(sizes)}, expected denominator {denominator}")
    reach = 1
    for s in sizes:
        reach |= reach << s
    return [Fraction(d, denominator) for d in range(denominator + 1) if (reach >> d) & 1]


def orbit_bound_at(alg: FiniteAlgebra, k: int) -> list[Fraction]:
    part = orbit_partition(automorphism_group(alg), k)
    return sigma_subset_sums(part.sizes, alg.size**k)
