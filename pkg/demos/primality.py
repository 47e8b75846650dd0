"""Quantitative primality: how well term operations approximate arbitrary functions."""

from itertools import product

from pspec import FunctionTable, builtin_algebra, prim_at, walsh_nonlinearity
from pspec.oracles import affine_prim

# %% the affine clone of Z_2, two routes
z2 = builtin_algebra("z2plus")
def show(v):
    return str(v) if not isinstance(v, tuple) else f"[{v[0]}, {v[1]}]"


for k in (1, 2, 3, 4):
    w = prim_at(z2, k, method="WalshHadamard")
    e = prim_at(z2, k, method="Exhaustive")
    print(f"Prim_{k}(Z2+) = {w.prim_k}  exhaustive {e.prim_k}  closed form {show(affine_prim(k))}")

# %% a bent function sits at the covering radius
bent = FunctionTable(2, 4, [(a & b) ^ (c & d) for a, b, c, d in product((0, 1), repeat=4)])
print("nl(x1x2 + x3x4) =", walsh_nonlinearity(bent))

# %% groups and lattices are poor approximators
for key in ("v4", "bool:or+and", "m_n:3", "nand"):
    alg = builtin_algebra(key)
    r = prim_at(alg, 1)
    print(f"Prim_1({alg.name}) = {r.prim_k}  hardest {r.hardest_function.tolist()}")

lat = builtin_algebra("bool:or+and")
print("({0,1}, join, meet):", [str(prim_at(lat, k).prim_k) for k in (1, 2, 3)])
