"""Named algebras with frozen element orderings.

Keys are addressable as ``builtin:<key>[:<param>...]``.  Element orderings:

boolean2      0, 1 with zero, one, neg, join, meet
c2            the semilattice ({0,1}, mul = AND)
zp:p / zn:n   Z_n with add, neg and the neutral constant e
zn_plus:n     Z_n with add, neg and every constant c0..c{n-1}; z2plus = zn_plus:2
zn_rho:n      Z_n with add and rho(x) = x + 1
s3            1, r, r^2, s, rs, r^2 s  (r = [3,1,2], s = [2,1,3] one-line) with mul, inv, e
v4            Klein group on 2-bit vectors: mul = XOR, inv, e
m_n:n         0 (bottom), 1 (top), a_1..a_n as 2..n+1, with join, meet
pentagon      0, a, b, c, 1 as 0..4 with 0 < a < b < 1, 0 < c < 1; join, meet, zero, one
fl2           bounded free distributive lattice on two generators:
              0, xy, x, y, x+y, 1 as 0..5; join, meet, zero, one
p_n:n         projection groupoid, mul(x, y) = x
groupoid2:i   mul(x, y) = bit (3 - 2x - y) of i, so i read in binary is the
              table [f(0,0), f(0,1), f(1,0), f(1,1)]
xor / nand    groupoid2:6 / groupoid2:14
bool:a+b+...  Boolean operations from BOOLEAN_OPS, e.g. bool:or+xor
random:n:seed seeded uniformly random groupoid of order n
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .core import AlgebraError, FiniteAlgebra, coordinate_grid


@dataclass(frozen=True)
class BuiltinSpec:
    key: str
    parameters: tuple[int, ...] = ()
    description: str = ""

    @classmethod
    def parse(cls, text: str) -> "BuiltinSpec":
        if text.startswith("builtin:"):
            text = text[len("builtin:"):]
        key, *params = text.split(":")
        if key == "bool":
            return cls(key, (), ":".join(params))
        try:
            return cls(key, tuple(int(p) for p in params))
        except ValueError:
            raise AlgebraError(f"bad builtin parameters in {text!r}") from None


def _binary(n: int, fn) -> list[int]:
    return [fn(x, y) for x in range(n) for y in range(n)]


def _unary(n: int, fn) -> list[int]:
    return [fn(x) for x in range(n)]


# --------------------------------------------------------------------------
# lattices from order relations

def lattice_from_leq(name: str, leq: np.ndarray, bounds: bool = False) -> FiniteAlgebra:
    """Join/meet tables of the poset ``leq`` (leq[i, j] iff i <= j)."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            ub = [z for z in range(n) if leq[x, z] and leq[y, z]]
            lb = [z for z in range(n) if leq[z, x] and leq[z, y]]
            least = [z for z in ub if all(leq[z, w] for w in ub)]
            greatest = [z for z in lb if all(leq[w, z] for w in lb)]
            if len(least) != 1 or len(greatest) != 1:
                raise AlgebraError(f"{name}: not a lattice at ({x}, {y})")
            join[x, y] = least[0]
            meet[x, y] = greatest[0]
    ops = [("join", 2, join.ravel()), ("meet", 2, meet.ravel())]
    if bounds:
        bottom = [z for z in range(n) if leq[z].all()][0]
        top = [z for z in range(n) if leq[:, z].all()][0]
        ops += [("zero", 0, [bottom]), ("one", 0, [top])]
    return FiniteAlgebra.from_tables(name, n, ops)


def leq_from_covers(n: int, covers) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        leq[lo, hi] = True
    for k in range(n):  # transitive closure
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


# --------------------------------------------------------------------------

BOOLEAN_OPS = {
    "zero": (0, [0]),
    "one": (0, [1]),
    "neg": (1, [1, 0]),
    "and": (2, [0, 0, 0, 1]),
    "or": (2, [0, 1, 1, 1]),
    "xor": (2, [0, 1, 1, 0]),
    "iff": (2, [1, 0, 0, 1]),
    "nand": (2, [1, 1, 1, 0]),
    "nor": (2, [1, 0, 0, 0]),
    "impl": (2, [1, 1, 0, 1]),
    "xor3": (3, [a ^ b ^ c for a, b, c in product((0, 1), repeat=3)]),
    "maj": (3, [int(a + b + c >= 2) for a, b, c in product((0, 1), repeat=3)]),
}


def _s3() -> FiniteAlgebra:
    def compose(p, q):  # (p q)(x) = p(q(x))
        return tuple(p[q[i]] for i in range(3))

    ident = (0, 1, 2)
    r = (2, 0, 1)  # one-line [3, 1, 2]
    s = (1, 0, 2)  # one-line [2, 1, 3]
    r2 = compose(r, r)
    elems = [ident, r, r2, s, compose(r, s), compose(r2, s)]
    pos = {p: i for i, p in enumerate(elems)}
    mul = _binary(6, lambda a, b: pos[compose(elems[a], elems[b])])
    inv = _unary(6, lambda a: next(b for b in range(6) if mul[a * 6 + b] == 0))
    return FiniteAlgebra.from_tables("s3", 6, [("mul", 2, mul), ("inv", 1, inv), ("e", 0, [0])])


def _zn(n: int, name: str) -> FiniteAlgebra:
    return FiniteAlgebra.from_tables(name, n, [
        ("add", 2, _binary(n, lambda x, y: (x + y) % n)),
        ("neg", 1, _unary(n, lambda x: (-x) % n)),
        ("e", 0, [0]),
    ])


def m_n(n: int) -> FiniteAlgebra:
    covers = [(0, a) for a in range(2, n + 2)] + [(a, 1) for a in range(2, n + 2)]
    return lattice_from_leq(f"m_{n}", leq_from_covers(n + 2, covers))


def random_groupoid(n: int, seed: int) -> FiniteAlgebra:
    rng = np.random.default_rng(seed)
    return FiniteAlgebra.from_tables(f"random_{n}_{seed}", n,
                                     [("mul", 2, rng.integers(0, n, n * n))])


def groupoid2(i: int) -> FiniteAlgebra:
    if not 0 <= i < 16:
        raise AlgebraError("groupoid2 index must be in 0..15")
    table = [(i >> (3 - j)) & 1 for j in range(4)]
    return FiniteAlgebra.from_tables(f"groupoid2_{i}", 2, [("mul", 2, table)])


def boolean_ops(names: str) -> FiniteAlgebra:
    ops = []
    for nm in names.split("+"):
        if nm not in BOOLEAN_OPS:
            raise AlgebraError(f"unknown Boolean operation {nm}")
        arity, table = BOOLEAN_OPS[nm]
        ops.append((nm, arity, table))
    return FiniteAlgebra.from_tables(f"bool_{'_'.join(names.split('+'))}", 2, ops)


def _need(params, count, key):
    if len(params) != count:
        raise AlgebraError(f"builtin {key} takes {count} parameter(s)")


def builtin_algebra(spec) -> FiniteAlgebra:
    if isinstance(spec, str):
        spec = BuiltinSpec.parse(spec)
    key, p = spec.key, spec.parameters
    if key == "boolean2":
        return FiniteAlgebra.from_tables("boolean2", 2, [
            ("zero", 0, [0]), ("one", 0, [1]), ("neg", 1, [1, 0]),
            ("join", 2, [0, 1, 1, 1]), ("meet", 2, [0, 0, 0, 1])])
    if key == "c2":
        return FiniteAlgebra.from_tables("c2", 2, [("mul", 2, [0, 0, 0, 1])])
    if key in ("zp", "zn"):
        _need(p, 1, key)
        if p[0] < 2:
            raise AlgebraError(f"{key} needs order >= 2")
        return _zn(p[0], f"z{p[0]}")
    if key in ("zn_plus", "z2plus"):
        n = 2 if key == "z2plus" else (p[0] if len(p) == 1 else 0)
        if n < 2:
            raise AlgebraError("zn_plus needs order >= 2")
        base = _zn(n, f"z{n}plus")
        ops = [(op, a, base.tables[op].entries) for op, a in base.signature if op != "e"]
        ops += [(f"c{c}", 0, [c]) for c in range(n)]
        return FiniteAlgebra.from_tables(f"z{n}plus", n, ops)
    if key == "zn_rho":
        _need(p, 1, key)
        n = p[0]
        if n < 2:
            raise AlgebraError("zn_rho needs order >= 2")
        return FiniteAlgebra.from_tables(f"z{n}rho", n, [
            ("add", 2, _binary(n, lambda x, y: (x + y) % n)),
            ("rho", 1, _unary(n, lambda x: (x + 1) % n))])
    if key == "s3":
        return _s3()
    if key == "v4":
        return FiniteAlgebra.from_tables("v4", 4, [
            ("mul", 2, _binary(4, lambda x, y: x ^ y)), ("inv", 1, [0, 1, 2, 3]), ("e", 0, [0])])
    if key == "m_n":
        _need(p, 1, key)
        if p[0] < 2:
            raise AlgebraError("m_n needs n >= 2")
        return m_n(p[0])
    if key == "pentagon":
        covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]
        return lattice_from_leq("pentagon", leq_from_covers(5, covers), bounds=True)
    if key == "fl2":
        covers = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]
        return lattice_from_leq("fl2", leq_from_covers(6, covers), bounds=True)
    if key == "p_n":
        _need(p, 1, key)
        if p[0] < 1:
            raise AlgebraError("p_n needs n >= 1")
        return FiniteAlgebra.from_tables(f"p_{p[0]}", p[0], [("mul", 2, _binary(p[0], lambda x, y: x))])
    if key == "groupoid2":
        _need(p, 1, key)
        return groupoid2(p[0])
    if key == "xor":
        return groupoid2(6)
    if key == "nand":
        return groupoid2(14)
    if key == "bool":
        return boolean_ops(spec.description)
    if key == "random":
        _need(p, 2, key)
        return random_groupoid(*p)
    raise AlgebraError(f"unknown builtin {key}")


def order3_corpus(count: int = 20, seed: int = 0) -> list[FiniteAlgebra]:
    """Seeded random order-3 groupoids used by the property suites."""
    return [random_groupoid(3, seed * 1000 + i) for i in range(count)]


# --------------------------------------------------------------------------
# six-element lattices

def _canonical(leq: np.ndarray) -> bytes:
    n = leq.shape[0]
    best = None
    for p in permutations(range(n)):
        key = leq[np.ix_(p, p)].tobytes()
        if best is None or key < best:
            best = key
    return best


def bounded_lattices(n: int) -> list[FiniteAlgebra]:
    """All lattices of order n up to isomorphism; 0 is bottom, n-1 is top."""
    if n < 2:
        raise AlgebraError("need n >= 2")
    mid = n - 2
    pairs = [(i, j) for i in range(mid) for j in range(mid) if i != j]
    found: dict[bytes, np.ndarray] = {}
    for bits in product((False, True), repeat=len(pairs)):
        rel = np.eye(mid, dtype=bool)
        for (i, j), b in zip(pairs, bits):
            rel[i, j] = b
        # antisymmetric and transitive
        if np.any(rel & rel.T & ~np.eye(mid, dtype=bool)):
            continue
        if np.any((rel.astype(int) @ rel.astype(int) > 0) & ~rel):
            continue
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = rel
        key = _canonical(rel)
        if key in found:
            continue
        try:
            lattice_from_leq("tmp", leq)
        except AlgebraError:
            found[key] = None
            continue
        found[key] = leq
    out = []
    for i, leq in enumerate(sorted((v for v in found.values() if v is not None),
                                   key=lambda m: m.tobytes())):
        out.append(lattice_from_leq(f"lattice{n}_{i}", leq, bounds=True))
    return out


def hasse_covers(alg: FiniteAlgebra) -> list[tuple[int, int]]:
    """Cover pairs (lo, hi) of a lattice with a ``meet`` operation."""
    n = alg.size
    meet = alg.tables["meet"]
    leq = np.array([[meet(x, y) == x for y in range(n)] for x in range(n)])
    covers = []
    for x in range(n):
        for y in range(n):
            if x != y and leq[x, y] and not any(
                    z not in (x, y) and leq[x, z] and leq[z, y] for z in range(n)):
                covers.append((x, y))
    return covers
