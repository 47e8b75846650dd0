from fractions import Fraction
from itertools import product

import pytest

from pspec import (Apply, Var, builtin_algebra, equation_probability, make_equation,
                   orbit_partition, automorphism_group, pspec_at, prim_at)
from pspec.oracles import (affine_prim, c2_phi, c2_phi_brute, c2_spectrum_prefix, known_bounds,
                           nonlinearity_bounds, quadrilateral_count, s3_power_prob)
from pspec.approx import covering_radius_walsh

F = Fraction


def product_term(vars_):
    if not vars_:
        return None
    t = Var(vars_[0])
    for v in vars_[1:]:
        t = Apply("mul", (t, Var(v)))
    return t


@pytest.mark.parametrize("pqr,value", [((1, 1, 1), F(3, 4)), ((0, 0, 0), F(1)), ((2, 2, 0), F(5, 8))])
def test_c2_phi_examples(pqr, value):
    assert c2_phi(*pqr) == value


@pytest.mark.parametrize("p,q,r", list(product(range(4), repeat=3)))
def test_c2_phi_brute(p, q, r):
    assert c2_phi_brute(p, q, r) == c2_phi(p, q, r)


@pytest.mark.parametrize("p,q,r", [t for t in product(range(4), repeat=3) if t[2] + t[0] and t[2] + t[1]])
def test_c2_phi_against_engine(p, q, r):
    # x1..xr y1..yp = x1..xr z1..zq, compiled and counted on the semilattice itself
    xs, ys, zs = list(range(r)), list(range(r, r + p)), list(range(r + p, r + p + q))
    eq = make_equation(product_term(xs + ys), product_term(xs + zs), vars=p + q + r)
    assert equation_probability(builtin_algebra("c2"), eq) == c2_phi(p, q, r)


def test_c2_spectrum_prefix_covers_engine():
    for k in (1, 2, 3, 4):
        assert set(pspec_at(builtin_algebra("c2"), k).values) <= c2_spectrum_prefix(k)
    with pytest.raises(ValueError):
        c2_phi(-1, 0, 0)


@pytest.mark.parametrize("k,value", [(1, F(2, 3)), (2, F(1, 2)), (3, F(5, 12))])
def test_s3_examples(k, value):
    assert s3_power_prob(k) == value


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_s3_against_engine(k):
    sq = [Apply("mul", (Var(i), Var(i))) for i in range(k)]
    lhs = sq[0]
    for t in sq[1:]:
        lhs = Apply("mul", (lhs, t))
    eq = make_equation(lhs, Apply("e", ()), vars=k)
    assert equation_probability(builtin_algebra("s3"), eq) == s3_power_prob(k)


def test_known_bounds_examples():
    assert known_bounds("zp", p=5) == {F(1, 5), F(1)}
    assert known_bounds("mn_orbits", n=6) == (1, 1, 1, 1, 6, 6, 6, 6, 6, 30)
    assert known_bounds("affine_prim", k=2) == F(3, 4)
    assert known_bounds("quadrilateral", prim=F(3, 4)) == 1
    assert known_bounds("idemprimal_lower", n=2, k=3) == F(3, 4)
    assert known_bounds("rho_lower", n=3) == F(1, 3)
    assert quadrilateral_count(F(1)) is None
    with pytest.raises(ValueError):
        known_bounds("nope")


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_zp_spectrum(p, k):
    assert set(pspec_at(builtin_algebra(f"zp:{p}"), k).values) == known_bounds("zp", p=p)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_mn_orbit_vector(n):
    sizes = orbit_partition(automorphism_group(builtin_algebra(f"m_n:{n}")), 2).sizes
    assert tuple(sorted(sizes)) == tuple(sorted(known_bounds("mn_orbits", n=n)))


@pytest.mark.parametrize("k", [2, 4])
def test_affine_prim_even(k):
    assert prim_at(builtin_algebra("z2plus"), k).prim_k == affine_prim(k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_nonlinearity_bounds_bracket_max(k):
    lo, hi = nonlinearity_bounds(k)
    assert lo <= covering_radius_walsh(k).radius <= hi
