"""Closed-form values used as independent checks on the enumeration engines."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import floor, isqrt


def c2_phi(p: int, q: int, r: int) -> Fraction:
    """Pr(x1..xr y1..yp = x1..xr z1..zq) in the two-element semilattice.

    Empty products are the identity 1, so phi(0, 0, r) = 1.
    """
    if min(p, q, r) < 0:
        raise ValueError("p, q, r must be >= 0")
    return 1 - Fraction(2**p + 2**q - 2, 2 ** (p + q + r))


def c2_phi_brute(p: int, q: int, r: int) -> Fraction:
    """Direct count over {0,1}^(p+q+r), AND with empty product 1."""
    hits = 0
    for bits in product((0, 1), repeat=p + q + r):
        x, y, z = bits[:r], bits[r:r + p], bits[r + p:]
        hits += int(all(x) and all(y)) == int(all(x) and all(z))
    return Fraction(hits, 2 ** (p + q + r))


def c2_spectrum_prefix(k: int) -> set[Fraction]:
    """phi(p, q, r) over equations with both sides nonempty and p+q+r <= k."""
    out = set()
    for p in range(k + 1):
        for q in range(k + 1 - p):
            for r in range(k + 1 - p - q):
                if (r + p) and (r + q):
                    out.add(c2_phi(p, q, r))
    return out


def s3_power_prob(k: int) -> Fraction:
    """Pr(x1^2 ... xk^2 = 1) in the symmetric group on three letters."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(1, 3) * (1 + Fraction(1, 2 ** (k - 1)))


def nonlinearity_bounds(k: int) -> tuple[int, int]:
    """Bounds on the maximal nonlinearity of k-ary Boolean functions (equal for even k)."""
    if k % 2 == 0:
        v = 2 ** (k - 1) - 2 ** (k // 2 - 1)
        return v, v
    lo = 2 ** (k - 1) - 2 ** ((k - 1) // 2)
    # 2^(k-1) - 2^(k/2 - 1), rounded down to an integer
    hi = 2 ** (k - 1) - _ceil_pow2_half(k - 2)
    return lo, hi


def _ceil_pow2_half(e: int) -> int:
    """ceil(2 ** (e / 2)) for integer e >= -1."""
    if e < 0:
        return 1
    if e % 2 == 0:
        return 2 ** (e // 2)
    v = 2**e
    return isqrt(v - 1) + 1


def affine_prim(k: int):
    """Prim_k of the Boolean affine clone: exact for even k, (lo, hi) for odd k.

    For odd k the lower end 1/2 + 2^-(k/2+1) is irrational; it is rounded up
    to the grid of multiples of 2^-k, where Prim_k lives.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k % 2 == 0:
        return Fraction(1, 2) + Fraction(1, 2 ** (k // 2 + 1))
    lo = Fraction(2 ** (k - 1) + _ceil_pow2_half(k - 2), 2**k)
    hi = Fraction(1, 2) + Fraction(1, 2 ** ((k + 1) // 2))
    return lo, hi


def quadrilateral_count(prim: Fraction):
    """floor(1 / (4 (1 - prim))): spectrum values forced by arity-k primality.

    Returns None when prim = 1 (the bound is vacuous there).
    """
    prim = Fraction(prim)
    if prim == 1:
        return None
    return floor(1 / (4 * (1 - prim)))


def known_bounds(kind: str, **params):
    if kind == "zp":
        p = params["p"]
        return {Fraction(1, p), Fraction(1)}
    if kind == "mn_orbits":
        n = params["n"]
        return (1, 1, 1, 1, n, n, n, n, n, n * n - n)
    if kind == "affine_prim":
        return affine_prim(params["k"])
    if kind == "quadrilateral":
        return quadrilateral_count(params["prim"])
    if kind == "idemprimal_lower":
        n, k = params["n"], params["k"]
        return 1 - Fraction(1, n ** (k - 1))
    if kind == "rho_lower":
        return Fraction(1, params["n"])
    if kind == "weak_upper":
        return 1 - Fraction(1, params["n"] ** 2)
    raise ValueError(f"unknown kind {kind}")
