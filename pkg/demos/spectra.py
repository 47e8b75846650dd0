"""Equation probabilities and the first few slices of the spectrum."""

from fractions import Fraction

from pspec import builtin_algebra, equation_probability, parse_equation, power, pspec_at

# %% one equation, one algebra
b = builtin_algebra("boolean2")
eq = parse_equation("(= (meet x0 x1) (zero))", b.signature)
print("Pr(x meet y = 0) over 2:", equation_probability(b, eq))

# products multiply probabilities
for m in (2, 3):
    print(f"  over 2^{m}:", equation_probability(power(b, m), eq))

# %% spectra at small arity
for key in ("boolean2", "zp:3", "zp:4", "c2", "s3"):
    alg = builtin_algebra(key)
    for k in (1, 2):
        r = pspec_at(alg, k)
        vals = " ".join(str(v) for v in r.values)
        print(f"{alg.name:9s} k={k} |Clo_k|={r.clone_size:<5d} {vals}")

# %% the pentagon: exhaustive count of x meet y = 0
n5 = builtin_algebra("pentagon")
p = equation_probability(n5, parse_equation("(= (meet x0 x1) (zero))", n5.signature))
print("pentagon:", p, "=", p * 25, "of 25 pairs")
assert p == Fraction(13, 25)
