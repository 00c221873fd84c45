"""Codimension-one factorization, the product-merge identity, and cleaning.

Run:  python demos/04_codim_one_and_merge.py
"""

from fractions import Fraction

from circforge import clean_exponents, codim1_factor, permute_to_standard, product_merge, z2z4_spec

# Along the stratum where only w1 vanishes (w2 a unit, set to 1), the
# order-4 quotient of Z2 x Z4 factors into two pinch points.
rep = codim1_factor(z2z4_spec(), 0)
print("factors along the first stratum:")
for f in rep.factor_polys:
    print("  ", f)
print("variable combinations:")
for name in sorted(rep.transform):
    rows = rep.transform[name]
    print(f"  {name} = " + " + ".join(f"({c})*{x}" for c, x in rows))
print("product equals the specialization exactly:", rep.verified)

# Merging r standard ladders of order k into one ladder of order rk is an
# exact polynomial identity under an explicit linear change of variables.
for k, r in ((2, 2), (3, 2)):
    m = product_merge(k, r)
    print(f"\nmerge identity ({k} x {r} factors -> order {k * r}): {m.verified}")

# Exponent permutations h_j = mu*j reduce to the standard ladder by the
# variable permutation x_j = y_{h_j}; arbitrary permutations do not.
print("\npermute h=(2,1), k=3:", permute_to_standard((2, 1), 3).verified)
print("permute h=(1,3,2), k=4:", permute_to_standard((1, 3, 2), 4).verified)

# Cleaning sorts exponent rows by termwise minima and splits each increment
# into an integer part and a legal fractional part.
ladder = clean_exponents([(Fraction(5, 2),), (Fraction(1, 2),)], (2,))
print("\ncleaning rows (5/2), (1/2):")
print("  order:", ladder.order, " delta:", ladder.delta, " beta:", ladder.beta)
