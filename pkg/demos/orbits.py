"""Automorphism orbits and the subset-sum bound they put on the spectrum."""

from pspec import (automorphism_group, builtin_algebra, check_orbit_inclusion, orbit_bound_at,
                   orbit_partition)

# %% M_3: Aut is the full symmetric group on the three atoms
m3 = builtin_algebra("m_n:3")
g = automorphism_group(m3)
print("|Aut(M3)| =", g.order, " Fix =", g.fixed_points)
print("orbit sizes on M3^2:", sorted(orbit_partition(g, 2).sizes))
print("bound fills", len(orbit_bound_at(m3, 2)), "of the 26 fractions d/25")

# %% M_6: the orbit sizes leave gaps
vals = orbit_bound_at(builtin_algebra("m_n:6"), 2)
gaps = [d for d in range(65) if all(v * 64 != d for v in vals)]
print("d/64 missing for M6:", gaps[:12], "...")

# %% inclusion, strict and with equality
for key, k in (("zp:3", 1), ("boolean2", 2), ("m_n:3", 2)):
    r = check_orbit_inclusion(builtin_algebra(key), k)
    print(f"{key:9s} k={k} holds={r.holds} strict={r.strict} "
          f"equality required={r.equality_required} witness={r.witness}")
