"""Values where an exhaustive count disagrees with a previously reported figure.

Each entry names the quantity, the reported value and how to recompute ours.
``recompute`` runs the count from scratch, so the record never drifts from
the code.  The reported values are kept for reference only and are never
treated as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable


@dataclass(frozen=True)
class Discrepancy:
    key: str
    quantity: str
    reported: Fraction | None
    computed: Fraction
    note: str
    recompute: Callable[[], Fraction]


def _pr_meet_zero(key: str) -> Fraction:
    from .builtins import builtin_algebra
    from .core import parse_equation
    from .spectrum import equation_probability
    alg = builtin_algebra(key)
    return equation_probability(alg, parse_equation("(= (meet x0 x1) (zero))", alg.signature))


def _lattice_13_36() -> Fraction:
    from .checks import lattice_search
    hits = [h for h in lattice_search(6) if h.probability == Fraction(13, 36)]
    return Fraction(len(hits))


DISCREPANCIES = (
    Discrepancy(
        "pentagon-meet-zero",
        "Pr(x meet y = 0) in the pentagon lattice N5",
        Fraction(14, 25), Fraction(13, 25),
        "exhaustive count over the 25 pairs gives 13: the 9 pairs involving 0 plus "
        "the symmetric pairs (a, c), (c, a), (b, c), (c, b)",
        lambda: _pr_meet_zero("pentagon"),
    ),
    Discrepancy(
        "fl2-meet-zero",
        "Pr(x meet y = 0) in the six-element bounded free distributive lattice on two generators",
        Fraction(13, 36), Fraction(11, 36),
        "13/36 is realized by exactly one six-element lattice, two atoms below a "
        "three-element chain; the free distributive one gives 11/36",
        lambda: _pr_meet_zero("fl2"),
    ),
    Discrepancy(
        "six-lattices-at-13-36",
        "number of six-element lattices with Pr(x meet y = 0) = 13/36",
        None, Fraction(1),
        "found by enumerating all 15 lattices of order six",
        _lattice_13_36,
    ),
    Discrepancy(
        "kappa-upper-bound",
        "Pr_B <= kappa Pr_A for a surjective hom A -> B with constant fibers kappa",
        None, Fraction(1, 4),
        "fails in general: 2 x 2 -> 2 with x meet y = 1 gives Pr_B = 1/4 > 2 * 1/16; "
        "the lower half Pr_A <= Pr_B always holds; no multiplicative upper bound "
        "survives in general, since Pr_A = 0 < Pr_B occurs among order-2 groupoids",
        lambda: _pr_meet_one_target(),
    ),
)


def _pr_meet_one_target() -> Fraction:
    from .builtins import builtin_algebra
    from .core import parse_equation
    from .spectrum import equation_probability
    alg = builtin_algebra("boolean2")
    return equation_probability(alg, parse_equation("(= (meet x0 x1) (one))", alg.signature))


def by_key(key: str) -> Discrepancy:
    for d in DISCREPANCIES:
        if d.key == key:
            return d
    raise KeyError(key)
