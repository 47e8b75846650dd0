"""Finite algebras, function tables, terms and equations.

Every table in the package uses the same tuple encoding: a tuple
``(x_0, ..., x_{k-1})`` over ``{0..n-1}`` is stored at index
``sum(x_i * n**(k-1-i))``, leftmost argument most significant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

import numpy as np


class AlgebraError(ValueError):
    """Malformed algebra, term, equation or table."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured budget."""


class PreconditionError(ValueError):
    """An operation was called outside its hypotheses."""


def exact(count: int, total: int) -> Fraction:
    return Fraction(count, total)


# --------------------------------------------------------------------------
# tuple <-> index codec

def tuple_index(tup: Sequence[int], n: int) -> int:
    idx = 0
    for x in tup:
        if not 0 <= x < n:
            raise AlgebraError(f"component {x} outside [0, {n})")
        idx = idx * n + int(x)
    return idx


def index_tuple(index: int, k: int, n: int) -> tuple[int, ...]:
    if not 0 <= index < n**k:
        raise AlgebraError(f"index {index} outside [0, {n}^{k})")
    out = [0] * k
    for i in range(k - 1, -1, -1):
        index, out[i] = divmod(index, n)
    return tuple(out)


def coordinate_grid(n: int, k: int) -> np.ndarray:
    """Array of shape (k, n**k); column i is index_tuple(i, k, n)."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int64)
    idx = np.arange(n**k, dtype=np.int64)
    rows = []
    for pos in range(k):
        rows.append((idx // n ** (k - 1 - pos)) % n)
    return np.stack(rows)


def table_dtype(n: int):
    return np.uint8 if n <= 256 else np.uint16


# --------------------------------------------------------------------------
# function tables

@total_ordering
class FunctionTable:
    """A k-ary operation on {0..n-1}, stored as its flat value table."""

    __slots__ = ("n", "arity", "entries", "_key")

    def __init__(self, n: int, arity: int, entries: Iterable[int]):
        arr = np.array(list(entries) if not isinstance(entries, np.ndarray) else entries,
                       dtype=np.int64).ravel()
        if n < 1 or arity < 0:
            raise AlgebraError("size must be >= 1 and arity >= 0")
        if arr.size != n**arity:
            raise AlgebraError(
                f"table length {arr.size} != {n}^{arity} = {n**arity}")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise AlgebraError("entry out of range")
        arr = arr.astype(table_dtype(n))
        arr.setflags(write=False)
        self.n = n
        self.arity = arity
        self.entries = arr
        self._key = arr.tobytes()

    def __len__(self) -> int:
        return self.entries.size

    def __call__(self, *args: int) -> int:
        return int(self.entries[tuple_index(args, self.n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (self.n, self.arity, self._key) == (other.n, other.arity, other._key)

    def __lt__(self, other: "FunctionTable") -> bool:
        return (self.n, self.arity, tuple(self.entries)) < (
            other.n, other.arity, tuple(other.entries))

    def __hash__(self) -> int:
        return hash((self.n, self.arity, self._key))

    def __repr__(self) -> str:
        return f"FunctionTable(n={self.n}, arity={self.arity}, {self.entries.tolist()})"

    def tolist(self) -> list[int]:
        return self.entries.tolist()

    @classmethod
    def projection(cls, n: int, k: int, i: int) -> "FunctionTable":
        return cls(n, k, coordinate_grid(n, k)[i])

    @classmethod
    def constant(cls, n: int, k: int, value: int) -> "FunctionTable":
        return cls(n, k, np.full(n**k, value))


# --------------------------------------------------------------------------
# algebras

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    signature: tuple[tuple[str, int], ...]
    tables: dict = field(compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError("size must be >= 1")
        names = [op for op, _ in self.signature]
        if len(set(names)) != len(names):
            dup = sorted({x for x in names if names.count(x) > 1})
            raise AlgebraError(f"duplicate op name {dup[0]}")
        if set(names) != set(self.tables):
            raise AlgebraError("signature and tables disagree")
        for op, arity in self.signature:
            t = self.tables[op]
            if t.n != self.size or t.arity != arity:
                raise AlgebraError(f"table for {op} has wrong shape")

    @classmethod
    def from_tables(cls, name: str, size: int, ops: Sequence[tuple[str, int, Iterable[int]]]):
        signature = tuple((op, arity) for op, arity, _ in ops)
        tables = {op: FunctionTable(size, arity, entries) for op, arity, entries in ops}
        return cls(name, size, signature, tables)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.name, self.size, self.signature) == (
            other.name, other.size, other.signature) and all(
            self.tables[op] == other.tables[op] for op, _ in self.signature)

    def __hash__(self) -> int:
        return hash((self.name, self.size, self.signature))

    def arity(self, op: str) -> int:
        for name, a in self.signature:
            if name == op:
                return a
        raise AlgebraError(f"unknown symbol {op}")

    def op(self, name: str) -> FunctionTable:
        return self.tables[name]

    @property
    def nullary(self) -> list[str]:
        return [op for op, a in self.signature if a == 0]

    def reduct(self, ops: Iterable[str], name: str | None = None) -> "FiniteAlgebra":
        keep = list(ops)
        sig = tuple((op, self.arity(op)) for op in keep)
        return FiniteAlgebra(name or f"{self.name}|{'+'.join(keep)}", self.size, sig,
                             {op: self.tables[op] for op in keep})

    def with_op(self, name: str, arity: int, entries, new_name: str | None = None) -> "FiniteAlgebra":
        tables = dict(self.tables)
        tables[name] = FunctionTable(self.size, arity, entries)
        return FiniteAlgebra(new_name or self.name, self.size,
                             self.signature + ((name, arity),), tables)


def parse_algebra(text: str) -> FiniteAlgebra:
    """Read the ``.alg`` text format."""
    tokens: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        tokens.extend((lineno, tok) for tok in line.split())

    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(tokens):
            last = tokens[-1][0] if tokens else 1
            raise AlgebraError(f"line {last}: unexpected end of input, expected {what}")
        tok = tokens[pos]
        pos += 1
        return tok

    def take_int(what: str) -> tuple[int, int]:
        line, tok = take(what)
        try:
            return line, int(tok, 10)
        except ValueError:
            raise AlgebraError(f"line {line}: expected {what}, got {tok!r}") from None

    line, kw = take("'algebra'")
    if kw != "algebra":
        raise AlgebraError(f"line {line}: expected 'algebra', got {kw!r}")
    line, name = take("algebra name")
    if not _IDENT.match(name):
        raise AlgebraError(f"line {line}: bad algebra name {name!r}")
    line, kw = take("'size'")
    if kw != "size":
        raise AlgebraError(f"line {line}: expected 'size', got {kw!r}")
    line, n = take_int("size")
    if n < 1:
        raise AlgebraError(f"line {line}: size must be >= 1")

    ops = []
    seen = set()
    while pos < len(tokens):
        line, kw = take("'op'")
        if kw != "op":
            raise AlgebraError(f"line {line}: expected 'op', got {kw!r}")
        line, opname = take("op name")
        if not _IDENT.match(opname):
            raise AlgebraError(f"line {line}: bad op name {opname!r}")
        if opname in seen:
            raise AlgebraError(f"line {line}: duplicate op name {opname}")
        seen.add(opname)
        line, arity = take_int("arity")
        if arity < 0:
            raise AlgebraError(f"line {line}: negative arity")
        entries = []
        for _ in range(n**arity):
            if pos < len(tokens) and tokens[pos][1] == "op":
                raise AlgebraError(
                    f"line {tokens[pos][0]}: table length mismatch for {opname}: "
                    f"got {len(entries)}, expected {n**arity}")
            eline, v = take_int(f"table entry for {opname}")
            if not 0 <= v < n:
                raise AlgebraError(f"line {eline}: entry out of range: {v} (size {n})")
            entries.append(v)
        ops.append((opname, arity, entries))
        if pos < len(tokens) and tokens[pos][1] != "op":
            raise AlgebraError(
                f"line {tokens[pos][0]}: table length mismatch for {opname}: "
                f"extra token {tokens[pos][1]!r}")
    return FiniteAlgebra.from_tables(name, n, ops)


def serialize_algebra(alg: FiniteAlgebra) -> str:
    out = [f"algebra {alg.name}", f"size {alg.size}"]
    for op, arity in alg.signature:
        out.append(f"op {op} {arity}")
        entries = alg.tables[op].tolist()
        width = alg.size if arity >= 1 else 1
        for i in range(0, len(entries), width):
            out.append(" ".join(map(str, entries[i:i + width])))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple = ()

    def __str__(self) -> str:
        return "(" + " ".join([self.op, *map(str, self.args)]) + ")"


Term = Union[Var, Apply]


def max_var(term: Term) -> int:
    """Largest variable index in ``term``, or -1 for ground terms."""
    if isinstance(term, Var):
        return term.index
    return max((max_var(a) for a in term.args), default=-1)


def _tokenize(text: str) -> list[str]:
    return re.findall(r"\(|\)|[^\s()]+", text)


def _read_sexpr(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise AlgebraError("malformed s-expression: unexpected end")
    tok = tokens[pos]
    if tok == ")":
        raise AlgebraError("malformed s-expression: unexpected ')'")
    if tok != "(":
        return tok, pos + 1
    items = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise AlgebraError("malformed s-expression: missing ')'")
        if tokens[pos] == ")":
            return items, pos + 1
        item, pos = _read_sexpr(tokens, pos)
        items.append(item)


_VAR = re.compile(r"^x(\d+)$")


def _build_term(sx, signature: dict[str, int]) -> Term:
    if isinstance(sx, str):
        m = _VAR.match(sx)
        if m:
            return Var(int(m.group(1)))
        if sx in signature:
            raise AlgebraError(f"{sx} must be written as an application ({sx} ...)")
        raise AlgebraError(f"unknown symbol {sx}")
    if not sx or not isinstance(sx[0], str):
        raise AlgebraError("malformed s-expression: application needs an operator")
    op = sx[0]
    if op not in signature:
        raise AlgebraError(f"unknown symbol {op}")
    if len(sx) - 1 != signature[op]:
        plural = "" if signature[op] == 1 else "s"
        raise AlgebraError(f"{op} expects {signature[op]} argument{plural}")
    return Apply(op, tuple(_build_term(a, signature) for a in sx[1:]))


def _sig_dict(signature) -> dict[str, int]:
    if isinstance(signature, FiniteAlgebra):
        signature = signature.signature
    return dict(signature)


def parse_term(text: str, signature) -> Term:
    tokens = _tokenize(text)
    sx, pos = _read_sexpr(tokens, 0)
    if pos != len(tokens):
        raise AlgebraError("malformed s-expression: trailing tokens")
    return _build_term(sx, _sig_dict(signature))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    vars: int

    def __post_init__(self):
        need = 1 + max(max_var(self.lhs), max_var(self.rhs))
        if self.vars < 1 or self.vars < need:
            raise AlgebraError(f"equation needs at least {max(need, 1)} variables")

    def padded(self, extra: int = 1) -> "Equation":
        return Equation(self.lhs, self.rhs, self.vars + extra)

    def __str__(self) -> str:
        return f"(= {self.lhs} {self.rhs})"


def make_equation(lhs: Term, rhs: Term, vars: int | None = None) -> Equation:
    if vars is None:
        vars = max(1, 1 + max(max_var(lhs), max_var(rhs)))
    return Equation(lhs, rhs, vars)


def parse_equation(text: str, signature, vars: int | None = None) -> Equation:
    tokens = _tokenize(text)
    sx, pos = _read_sexpr(tokens, 0)
    if pos != len(tokens) or not isinstance(sx, list) or len(sx) != 3 or sx[0] != "=":
        raise AlgebraError("equation must have the form (= <term> <term>)")
    sig = _sig_dict(signature)
    return make_equation(_build_term(sx[1], sig), _build_term(sx[2], sig), vars)


# --------------------------------------------------------------------------
# evaluation

def eval_term(alg: FiniteAlgebra, term: Term, assignment: Sequence[int]) -> int:
    if isinstance(term, Var):
        if term.index >= len(assignment):
            raise AlgebraError(f"missing binding for x{term.index}")
        return int(assignment[term.index])
    args = [eval_term(alg, a, assignment) for a in term.args]
    return alg.tables[term.op](*args)


def _compile(alg: FiniteAlgebra, term: Term, grid: np.ndarray) -> np.ndarray:
    if isinstance(term, Var):
        return grid[term.index]
    table = alg.tables[term.op].entries.astype(np.int64)
    if not term.args:
        return np.full(grid.shape[1], table[0], dtype=np.int64)
    idx = np.zeros(grid.shape[1], dtype=np.int64)
    for a in term.args:
        idx = idx * alg.size + _compile(alg, a, grid)
    return table[idx]


def compile_term(alg: FiniteAlgebra, term: Term, k: int) -> FunctionTable:
    """The term operation t^A as a k-ary table."""
    if k <= max_var(term):
        raise AlgebraError(f"arity {k} too small for term using x{max_var(term)}")
    grid = coordinate_grid(alg.size, k)
    if k == 0:
        grid = np.zeros((0, 1), dtype=np.int64)
    return FunctionTable(alg.size, k, _compile(alg, term, grid))
