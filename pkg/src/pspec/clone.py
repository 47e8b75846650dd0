"""Clone generation and primality decisions.

``generate_clone`` computes Clo_k(A), the k-ary term operations, as the
closure of the projections and nullary constants under composition with
the basic operations.  Closure is semi-naive: every round only forms
compositions that use at least one table discovered in the previous round.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod

import numpy as np

from .core import (BudgetExceeded, FiniteAlgebra, FunctionTable, PreconditionError,
                   coordinate_grid)
from .symmetry import AutomorphismGroup, automorphism_group, orbit_partition, _permuted_indices

DEFAULT_CLONE_BUDGET = 1 << 20
_BLOCK_ELEMS = 1 << 22


# --------------------------------------------------------------------------
# row keys: canonical, hashable, and lexicographically ordered

def row_keys(rows: np.ndarray, n: int) -> np.ndarray:
    """Sort keys for table rows; key order equals lexicographic row order."""
    L = rows.shape[1]
    if n**L < 2**64:
        weights = np.array([n ** (L - 1 - i) for i in range(L)], dtype=np.uint64)
        return (rows.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    # big-endian bytes keep the lexicographic order for wide digits
    rows = np.ascontiguousarray(rows, dtype=rows.dtype.newbyteorder(">"))
    return rows.view(np.dtype((np.void, L * rows.dtype.itemsize))).ravel()


def all_functions(n: int, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows of every k-ary function in lexicographic order (slice start:stop)."""
    L = n**k
    stop = n**L if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [(idx // n ** (L - 1 - i)) % n for i in range(L)]
    return np.stack(cols, axis=1).astype(np.uint8) if cols else np.zeros((len(idx), 0), np.uint8)


# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CloneSet:
    n: int
    arity: int
    rows: np.ndarray          # (N, n^k) uint8, canonical (lexicographic) order
    complete: bool
    generation_rounds: int
    budget: int

    def __len__(self) -> int:
        return self.rows.shape[0]

    @cached_property
    def keys(self) -> np.ndarray:
        return row_keys(self.rows, self.n)

    @cached_property
    def tables(self) -> list[FunctionTable]:
        return [FunctionTable(self.n, self.arity, r) for r in self.rows]

    def __iter__(self):
        return iter(self.tables)

    def index_of(self, table) -> int:
        row = np.asarray(table.entries if isinstance(table, FunctionTable) else table,
                         dtype=np.uint8)[None, :]
        key = row_keys(row, self.n)
        pos = int(np.searchsorted(self.keys, key)[0])
        if pos < len(self) and self.keys[pos] == key[0]:
            return pos
        return -1


class Membership(enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    NOT_FOUND_INCOMPLETE = "not found (incomplete)"

    def __bool__(self) -> bool:
        return self is Membership.FOUND


def clone_contains(clone: CloneSet, table: FunctionTable) -> Membership:
    if table.n != clone.n or table.arity != clone.arity:
        raise PreconditionError(
            f"table is {table.arity}-ary over {table.n}, clone is {clone.arity}-ary over {clone.n}")
    if clone.index_of(table) >= 0:
        return Membership.FOUND
    return Membership.ABSENT if clone.complete else Membership.NOT_FOUND_INCOMPLETE


_DENSE_LIMIT = 1 << 26


class _Store:
    """Append-only deduplicating store of clone members.

    Items are table rows, or single words in the Boolean path; ``key_fn``
    maps a batch of items to their row keys.  Small function spaces get a
    dense membership bitmap indexed by key, larger ones a hash set.
    """

    def __init__(self, space: int, key_fn):
        self.space = space
        self.key_fn = key_fn
        self.blocks: list[np.ndarray] = []
        self.dense = np.zeros(space, dtype=bool) if space <= _DENSE_LIMIT else None
        self.seen: set = set()
        self.size = 0

    @property
    def full(self) -> bool:
        return self.size == self.space

    def add(self, items: np.ndarray) -> int:
        if items.shape[0] == 0:
            return 0
        keys = self.key_fn(items)
        if self.dense is not None:
            keys = keys.view(np.int64) if keys.dtype == np.uint64 else keys.astype(np.int64)
            mask = ~self.dense[keys]
            if not mask.any():
                return 0
            ukeys, first = np.unique(keys[mask], return_index=True)
            fresh = np.sort(np.nonzero(mask)[0][first])
            self.dense[ukeys] = True
        else:
            ukeys, first = np.unique(keys, return_index=True)
            fresh = [i for i, key in zip(first.tolist(), ukeys.tolist()) if key not in self.seen]
            if not fresh:
                return 0
            fresh.sort()
            self.seen.update(self.key_fn(items[fresh]).tolist())
        self.blocks.append(items[fresh])
        self.size += len(fresh)
        return len(fresh)

    def items(self) -> np.ndarray:
        if len(self.blocks) > 1:
            self.blocks = [np.concatenate(self.blocks)]
        return self.blocks[0]


def _broadcast_args(args: list[np.ndarray]) -> list[np.ndarray]:
    m = len(args)
    out = []
    for pos, a in enumerate(args):
        shape = [1] * m + list(a.shape[1:])
        shape[pos] = a.shape[0]
        out.append(a.reshape(shape))
    return out


def _compose_rows(table: np.ndarray, n: int, args: list[np.ndarray]) -> np.ndarray:
    """table o (g_1, ..., g_m) for all combinations of the given row stacks."""
    idx = np.zeros((), dtype=np.int64)
    for a in _broadcast_args(args):
        idx = idx * n + a.astype(np.int64)
    return table[idx].reshape(-1, idx.shape[-1])


def _compose_keys(table: np.ndarray, n: int, args: list[np.ndarray]) -> np.ndarray:
    """As _compose_rows, but folds each result row straight into its key."""
    shaped = _broadcast_args(args)
    key = None
    for c in range(args[0].shape[1]):
        idx = np.zeros((), dtype=np.int64)
        for a in shaped:
            idx = idx * n + a[..., c]
        digit = table[idx].astype(np.int64)
        key = digit if key is None else key * n + digit
    return key.ravel()


def _key_digits(keys: np.ndarray, radix: int, width: int) -> np.ndarray:
    out = np.empty((keys.shape[0], width), dtype=np.int64)
    rest = keys.copy()
    for c in range(width - 1, -1, -1):
        out[:, c] = rest % radix
        rest //= radix
    return out


_LUT_LIMIT = 1 << 18


def _chunk_width(n: int, L: int, max_arity: int) -> int:
    """Largest divisor w of L with an op lookup table of n^(w m) entries in budget."""
    return max((w for w in range(1, L + 1)
                if L % w == 0 and n ** (w * max(max_arity, 1)) <= _LUT_LIMIT), default=1)


def _chunk_dtype(radix: int):
    return np.uint8 if radix <= 256 else np.uint32


def _chunk_lut(table: np.ndarray, n: int, m: int, w: int) -> np.ndarray:
    """The op acting on w-position blocks encoded as base-n digits."""
    radix = n**w
    digits = coordinate_grid(n, w).T                      # (radix, w), block value -> entries
    grid = coordinate_grid(radix, m)                      # (m, radix^m)
    idx = np.zeros((grid.shape[1], w), dtype=np.int64)
    for j in range(m):
        idx = idx * n + digits[grid[j]]
    out = table[idx]
    weights = n ** np.arange(w - 1, -1, -1, dtype=np.int64)
    return (out * weights).sum(axis=1).astype(_chunk_dtype(radix))


def _to_chunks(rows: np.ndarray, n: int, w: int) -> np.ndarray:
    N, L = rows.shape
    weights = n ** np.arange(w - 1, -1, -1, dtype=np.int64)
    return (rows.reshape(N, L // w, w).astype(np.int64) * weights).sum(axis=2).astype(_chunk_dtype(n**w))


def _from_chunks(chunks: np.ndarray, n: int, w: int) -> np.ndarray:
    shifts = n ** np.arange(w - 1, -1, -1, dtype=np.int64)
    out = (chunks.astype(np.int64)[:, :, None] // shifts) % n
    return out.reshape(chunks.shape[0], -1).astype(np.uint8)


def _compose_words(table: np.ndarray, mask: np.uint64, args: list[np.ndarray]) -> np.ndarray:
    """Boolean composition on packed words: OR of the op's true minterms."""
    m = len(args)
    shaped = _broadcast_args(args)
    shape = np.broadcast_shapes(*(a.shape for a in shaped))
    # sum over whichever minterm set is smaller, complementing if needed
    flip = 2 * int(table.sum()) > 2**m
    out = None
    for idx in range(2**m):
        if bool(table[idx]) != flip:
            term = mask
            for j, a in enumerate(shaped):
                term = term & (a if (idx >> (m - 1 - j)) & 1 else ~a)
            out = term if out is None else out | term
    if out is None:
        out = np.zeros(shape, dtype=np.uint64)
    out = np.broadcast_to(out, shape)
    if flip:
        out = ~out & mask
    return out.ravel()


def _tuple_batches(ranges: list[tuple[int, int]], width: int):
    """Split a product of index ranges into blocks of bounded total size."""
    *outer, (s2, e2) = ranges
    if not outer:
        yield [(s2, e2)]
        return
    *head, (s1, e1) = outer
    inner = max(1, e2 - s2)
    step = max(1, _BLOCK_ELEMS // (inner * width))
    for prefix in product(*[range(s, e) for s, e in head]):
        for b in range(s1, e1, step):
            yield [(i, i + 1) for i in prefix] + [(b, min(e1, b + step)), (s2, e2)]


def _words_to_rows(words: np.ndarray, L: int) -> np.ndarray:
    shifts = np.arange(L - 1, -1, -1, dtype=np.uint64)
    return ((words[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)


def generate_clone(alg: FiniteAlgebra, k: int, budget: int = DEFAULT_CLONE_BUDGET) -> CloneSet:
    if k < 1:
        raise PreconditionError("clone arity must be >= 1")
    n = alg.size
    if n > 256:
        raise PreconditionError("clone generation supports n <= 256")
    L = n**k
    grid = coordinate_grid(n, k).astype(np.uint8)
    seed = np.stack([grid[i] for i in range(k)]
                    + [np.full(L, alg.tables[op].entries[0], dtype=np.uint8) for op in alg.nullary])
    ops = [(alg.tables[op].entries.astype(np.int64), a) for op, a in alg.signature if a >= 1]

    boolean = n == 2 and L <= 64
    keyed = False
    expand = lambda x: x
    if boolean:
        # one uint64 word per table, entry i at bit L-1-i, so word == row key
        mask = np.uint64((1 << L) - 1)
        store = _Store(2**L, lambda w: w)
        store.add(row_keys(seed, 2))
        compose = lambda table, args: _compose_words(table, mask, args)
        width = 1
    else:
        # rows of base n^w digits, each covering w consecutive entries
        w = _chunk_width(n, L, max((m for _, m in ops), default=1))
        radix = n**w
        ops = [(_chunk_lut(table, n, m, w), m) for table, m in ops]
        width = L // w
        keyed = n**L < 2**63
        if keyed:
            # store int64 keys, expand to digit rows once per round
            store = _Store(n**L, lambda x: x)
            store.add(row_keys(seed, n).astype(np.int64))
            expand = lambda keys: _key_digits(keys, radix, width)
            compose = lambda table, args: _compose_keys(table, radix, args)
        else:
            store = _Store(n**L, lambda r: row_keys(r, radix))
            store.add(_to_chunks(seed, n, w))
            compose = lambda table, args: _compose_rows(table, radix, args)

    frontier_start = 0
    rounds = 0
    complete = True
    while True:
        total = store.size
        if frontier_start >= total:
            break
        items = expand(store.items())
        rounds += 1
        for table, m in ops:
            # tuples whose first frontier argument sits at position p
            for p in range(m):
                ranges = [(0, frontier_start)] * p + [(frontier_start, total)] + [(0, total)] * (m - p - 1)
                if any(s >= e for s, e in ranges):
                    continue
                for batch in _tuple_batches(ranges, width):
                    store.add(compose(table, [items[s:e] for s, e in batch]))
                    if store.full or store.size > budget:
                        break
                if store.full or store.size > budget:
                    break
            if store.full or store.size > budget:
                break
        if store.full:
            # every function is present: nothing further can appear
            break
        if store.size > budget:
            complete = False
            break
        frontier_start = total

    items = store.items()
    if not complete:
        # keep the first members found, in discovery order
        items = items[:budget]
    if boolean:
        rows = _words_to_rows(items, L)
    elif keyed:
        rows = _from_chunks(_key_digits(items, radix, width), n, w)
    else:
        rows = _from_chunks(items, n, w)
    order = np.argsort(row_keys(rows, n), kind="stable")
    rows = np.ascontiguousarray(rows[order])
    rows.setflags(write=False)
    return CloneSet(n, k, rows, complete, rounds, budget)


# --------------------------------------------------------------------------
# Boolean (n = 2) Post classes

POST_CLASSES = ("P0", "P1", "M", "D", "A")


def _is_monotone(entries: np.ndarray, m: int) -> bool:
    L = entries.size
    idx = np.arange(L)
    for bit in range(m):
        w = 1 << bit
        lo = idx[(idx & w) == 0]
        if np.any(entries[lo] > entries[lo | w]):
            return False
    return True


def _anf_degree_le1(entries: np.ndarray, m: int) -> bool:
    coeffs = entries.astype(np.int64).copy()
    h = 1
    while h < coeffs.size:
        for i in range(0, coeffs.size, 2 * h):
            coeffs[i + h:i + 2 * h] ^= coeffs[i:i + h]
        h *= 2
    degree_one_or_less = [i for i in range(coeffs.size) if bin(i).count("1") <= 1]
    mask = np.ones(coeffs.size, dtype=bool)
    mask[degree_one_or_less] = False
    return not coeffs[mask].any()


def _parity_affine(entries: np.ndarray) -> bool:
    e = entries.astype(np.int64)
    L = e.size
    idx = np.arange(L)
    x = idx[:, None, None]
    y = idx[None, :, None]
    z = idx[None, None, :]
    return bool(np.all((e[x] ^ e[y] ^ e[z]) == e[x ^ y ^ z]))


def post_properties(table: FunctionTable) -> dict[str, bool]:
    """Membership of a Boolean operation in Post's five maximal clones."""
    if table.n != 2:
        raise PreconditionError("Post classes are defined for n = 2")
    e = table.entries.astype(np.int64)
    m = table.arity
    L = e.size
    return {
        "P0": bool(e[0] == 0),
        "P1": bool(e[L - 1] == 1),
        "M": _is_monotone(e, m),
        "D": bool(np.all(e[::-1] == 1 - e)),
        "A": _parity_affine(e) if m <= 4 else _anf_degree_le1(e, m),
    }


def post_classes(alg: FiniteAlgebra) -> list[str]:
    """The Post classes containing every basic operation of ``alg``."""
    props = [post_properties(alg.tables[op]) for op, _ in alg.signature]
    return [c for c in POST_CLASSES if all(p[c] for p in props)]


# --------------------------------------------------------------------------
# primality

class Status(enum.Enum):
    PRIMAL = "Primal"
    NOT_PRIMAL = "NotPrimal"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PrimalityVerdict:
    status: Status
    method: str                      # "PostTest" or "Cardinality"
    witness: object = None           # Post classes (n=2) or a missing table

    def __post_init__(self):
        if (self.witness is not None) != (self.status is Status.NOT_PRIMAL):
            raise ValueError("witness present iff NotPrimal")


def _first_missing(clone: CloneSet) -> FunctionTable:
    n, k = clone.n, clone.arity
    total = n ** (n**k)
    keys = clone.keys
    step = 1 << 16
    for start in range(0, total, step):
        rows = all_functions(n, k, start, min(total, start + step))
        cand = row_keys(rows, n)
        pos = np.searchsorted(keys, cand)
        pos = np.minimum(pos, len(keys) - 1)
        missing = np.nonzero(keys[pos] != cand)[0]
        if missing.size:
            return FunctionTable(n, k, rows[missing[0]])
    raise AssertionError("clone contains every function")


def is_primal(alg: FiniteAlgebra, budget: int = DEFAULT_CLONE_BUDGET,
              method: str = "auto") -> PrimalityVerdict:
    n = alg.size
    if method == "auto":
        method = "PostTest" if n == 2 else "Cardinality"
    if method == "PostTest":
        if n != 2:
            raise PreconditionError("the Post test applies to n = 2 only")
        classes = post_classes(alg)
        if classes:
            return PrimalityVerdict(Status.NOT_PRIMAL, "PostTest", tuple(classes))
        return PrimalityVerdict(Status.PRIMAL, "PostTest")
    if method != "Cardinality":
        raise ValueError(f"unknown method {method}")
    full = n ** (n * n)
    if full > budget:
        return PrimalityVerdict(Status.UNKNOWN, "Cardinality")
    clone = generate_clone(alg, 2, budget)
    if not clone.complete:
        return PrimalityVerdict(Status.UNKNOWN, "Cardinality")
    if len(clone) == full:
        return PrimalityVerdict(Status.PRIMAL, "Cardinality")
    return PrimalityVerdict(Status.NOT_PRIMAL, "Cardinality", _first_missing(clone))


def diagonal_indices(n: int, k: int) -> np.ndarray:
    step = sum(n**i for i in range(k))
    return np.arange(n, dtype=np.int64) * step


def is_idemprimal_at(alg: FiniteAlgebra, k: int, budget: int = DEFAULT_CLONE_BUDGET,
                     clone: CloneSet | None = None) -> bool:
    """Whether every k-ary f with f(x,...,x) = x is a term operation."""
    n = alg.size
    count = n ** (n**k - n)
    if count > budget:
        raise BudgetExceeded(f"budget exceeded: {count} idempotent {k}-ary functions > {budget}")
    if clone is None:
        clone = generate_clone(alg, k, max(budget, DEFAULT_CLONE_BUDGET))
    if not clone.complete:
        raise BudgetExceeded(f"budget exceeded: Clo_{k} did not close")
    diag = diagonal_indices(n, k)
    idem = np.all(clone.rows[:, diag] == np.arange(n), axis=1)
    return int(idem.sum()) == count


# --------------------------------------------------------------------------
# automorphism-compatible functions

@dataclass(frozen=True, eq=False)
class CompatibleFunctions:
    n: int
    arity: int
    count: int
    rows: np.ndarray | None          # None when only the count was requested
    method: str                      # "Orbit" or "Enumeration"
    automorphism_primal: bool | None = None

    @property
    def tables(self) -> list[FunctionTable]:
        return [FunctionTable(self.n, self.arity, r) for r in self.rows]


def _orbit_choices(group: AutomorphismGroup, k: int):
    """Per orbit: (member indices, group image indices, allowed values)."""
    n = group.n
    perms = group.as_array()
    moved = _permuted_indices(perms, n, k)
    part = orbit_partition(group, k)
    out = []
    for rep, _ in part.orbits:
        stab = perms[moved[:, rep] == rep]
        allowed = [v for v in range(n) if np.all(stab[:, v] == v)]
        out.append((moved[:, rep], perms, allowed))
    return out


def compatible_functions(alg: FiniteAlgebra, k: int, group: AutomorphismGroup | None = None,
                         budget: int = 1 << 20, method: str = "auto",
                         clone: CloneSet | None = None,
                         count_only: bool = False) -> CompatibleFunctions:
    """All k-ary f with f(g.x) = g(f(x)) for every automorphism g."""
    n = alg.size
    L = n**k
    if group is None:
        group = automorphism_group(alg)
    choices = _orbit_choices(group, k)
    count = prod(len(c[2]) for c in choices)
    if method == "auto":
        method = "Orbit" if n**L > budget else "Enumeration"

    rows = None
    if not count_only:
        if method == "Enumeration":
            total = n**L
            if total > budget:
                raise BudgetExceeded(f"budget exceeded: {total} functions > {budget}")
            perms = group.as_array()
            moved = _permuted_indices(perms, n, k)
            keep = []
            step = 1 << 15
            for start in range(0, total, step):
                cand = all_functions(n, k, start, min(total, start + step)).astype(np.int64)
                ok = np.ones(cand.shape[0], dtype=bool)
                for g in range(perms.shape[0]):
                    ok &= np.all(cand[:, moved[g]] == perms[g][cand], axis=1)
                keep.append(cand[ok])
            rows = np.concatenate(keep).astype(np.uint8)
        elif method == "Orbit":
            if count > budget:
                raise BudgetExceeded(f"budget exceeded: {count} compatible functions > {budget}")
            out = np.zeros((count, L), dtype=np.uint8)
            for r, pick in enumerate(product(*[c[2] for c in choices])):
                for (images, perms, _), v in zip(choices, pick):
                    out[r, images] = perms[:, v]
            order = np.argsort(row_keys(out, n), kind="stable")
            rows = out[order]
        else:
            raise ValueError(f"unknown method {method}")
        if rows.shape[0] != count:
            raise AssertionError("orbit count and enumeration disagree")

    ap = None
    if clone is not None and clone.complete:
        ap = len(clone) == count
    return CompatibleFunctions(n, k, count, rows, method, ap)


def is_automorphism_primal_at(alg: FiniteAlgebra, k: int,
                              budget: int = DEFAULT_CLONE_BUDGET,
                              clone: CloneSet | None = None) -> bool | None:
    """Compatible functions of arity k are all terms; None if Clo_k did not close.

    Clo_k is always contained in the compatible functions, so equal counts
    mean equal sets.
    """
    if clone is None:
        clone = generate_clone(alg, k, budget)
    if not clone.complete:
        return None
    return compatible_functions(alg, k, clone=clone, count_only=True).automorphism_primal
