"""The truncated splitting engine on the basic blow-up chain.

Run:  python demos/05_series_splitting.py
"""

from circforge import (
    FracPoly,
    NoSplit,
    VarSpace,
    split_newton,
    strict_transform,
    substitute_power,
    truncate,
    verify_split,
)

# Start from f = z^2 + (w^3 + x) x^2, which is a double line along the
# w-axis but does not split over power series in (w, x).
sp = VarSpace([("w", 2)], ["x", "z"])
w, x, z = (FracPoly.variable(sp, n) for n in ("w", "x", "z"))
f = z * z + (w ** 3 + x) * x * x
print("start:", f)

# Three blow-ups of the origin (each time following the w-chart and taking
# the strict transform) simplify the coefficient:
cur = f
for step in range(1, 4):
    total = cur.substitute({"x": w * x, "z": w * z}, target_space=sp)
    cur, mult = strict_transform(total, "w")
    print(f"blow-up {step}: divide w^{mult} ->", cur)

# Now w -> v^2 clears the half-integer exponents and the polynomial splits
# into two series factors, found by the Newton-polygon search:
print("substituted:", substitute_power(cur, "w", 2))
roots = split_newton(cur, "z", powers=2, degree_bound=12)
for r in roots:
    print("root:", truncate(r, 8), "+ ...")
print("verified to degree 12:", verify_split(cur, 2, roots, 12))

# Obstructions are reported, not guessed away: z^2 + wx has no series root
# (the halved divisor order stays odd).
g = z * z + w * x
try:
    split_newton(g, "z", powers=2, degree_bound=8)
except NoSplit as err:
    print("\nz^2 + wx:", err)
