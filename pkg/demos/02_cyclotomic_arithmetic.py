"""Exact arithmetic in cyclotomic fields.

Run:  python demos/02_cyclotomic_arithmetic.py
"""

from fractions import Fraction

from circforge import Cyclo, cyclo_nth_root, minimal_order, rational_sqrt, root_of_unity

# Roots of unity are stored canonically modulo the cyclotomic polynomial,
# so equalities like e_3 + e_3^2 = -1 are literal coefficient equalities.
e3 = root_of_unity(3)
e4 = root_of_unity(4)
print(f"e3 + e3^2 = {e3 + e3 * e3}")
print(f"(1 + e4)(1 - e4) = {(1 + e4) * (1 - e4)}")

# Mixed orders promote to the least common multiple: e_2 = e_4^2 = e_12^6.
print(f"e2 in order 4:  {root_of_unity(2).embed(4)}")
print(f"e4 * e3 = {e4 * e3}   (an order-12 element)")

# Inverses come from the extended Euclidean algorithm in Q[x]/Phi_k.
a = 1 + e3
print(f"\na = {a},  a^-1 = {a.inverse()},  a * a^-1 = {a * a.inverse()}")

# The geometric sum identity that powers every Vandermonde inversion here:
for k in (4, 6):
    for m in (3, 6, 12):
        total = Cyclo.zero(k)
        for j in range(k):
            total = total + root_of_unity(k, j * m)
        print(f"sum_j e_{k}^(j*{m}) = {total}")

# Square roots of rationals are cyclotomic via quadratic Gauss sums.
for q in (2, -3, 5):
    r = rational_sqrt(Fraction(q))
    print(f"sqrt({q}) = {r}   (square: {r * r})")

# n-th roots exist for rational-times-root-of-unity patterns.
r = cyclo_nth_root(Cyclo.rational(-8), 3)
print(f"cbrt(-8) = {r}   (cube: {r ** 3})")

# minimal_order descends for display: e_6^2 really lives in Q(e_3).
x = root_of_unity(6, 2)
print(f"\ne6^2 has minimal order {minimal_order(x)}")
