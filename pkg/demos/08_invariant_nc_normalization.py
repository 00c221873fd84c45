"""Normalizing an invariant normal-crossings ideal to nested circulant form.

Run:  python demos/08_invariant_nc_normalization.py
"""

from circforge import (
    AbelianGroup,
    DiagonalAction,
    FracPoly,
    InvariantNCInput,
    VarSpace,
    adapted_coordinates,
    apply_group,
    invariant_nc_normal_form,
    semi_invariant_generators,
)

# A sign action on (y0, y1): the product (y0+y1)(y0-y1) is invariant but
# neither factor is.  The normal form extracts the weight pieces y0, y1 and
# the 2x2 Vandermonde recombining them.
sp = VarSpace([], ["y0", "y1"])
act = DiagonalAction(AbelianGroup((2,)), {"y0": (0,), "y1": (1,)})
y0, y1 = FracPoly.variable(sp, "y0"), FracPoly.variable(sp, "y1")
nf = invariant_nc_normal_form(InvariantNCInput(act, [y0 + y1, y0 - y1]))
print("chain of cyclic quotients:", nf.chain)
print("coordinates:", {"".join(map(str, k)): str(v) for k, v in nf.parts.items()})
print("matrix:")
for row in nf.matrix:
    print("  ", [str(c) for c in row])
print("determinant:", nf.determinant, "| product scalar:", nf.scalar)

# A rank-two example: the orbit of a + b + c + d under mu2 x mu2 acting by
# signs gives four factors and a nested (2,2) chain -- the coefficient
# matrix is a tensor of two Vandermondes.
sp4 = VarSpace([], ["a", "b", "c", "d"])
g = AbelianGroup((2, 2))
act4 = DiagonalAction(g, {"a": (0, 0), "b": (1, 0), "c": (0, 1), "d": (1, 1)})
f1 = sum((FracPoly.variable(sp4, n) for n in ("b", "c", "d")), FracPoly.variable(sp4, "a"))
orbit = [apply_group(f1, act4, el) for el in g.elements()]
nf4 = invariant_nc_normal_form(InvariantNCInput(act4, orbit))
print("\nKlein orbit: chain", nf4.chain, "from generators", nf4.chain_generators)
print("coordinates:", {"".join(map(str, k)): str(v) for k, v in sorted(nf4.parts.items())})

# Semi-invariant generators and adapted coordinates are the supporting
# machinery: bucketing by character weight, then completing a diagonal
# coordinate system adapted to divisors and the stratum.
gens = semi_invariant_generators([(y0 + y1) ** 2], act)
print("\nweight pieces of (y0+y1)^2:", [str(g) for g in gens])

spB = VarSpace([], ["x", "y", "u"])
actB = DiagonalAction(AbelianGroup((2,)), {"x": (1,), "y": (0,), "u": (0,)})
xB, yB = FracPoly.variable(spB, "x"), FracPoly.variable(spB, "y")
ac = adapted_coordinates(actB, [xB + xB * yB], [xB, yB])
print("adapted coordinates:")
for name, polyc, role in ac.coordinates:
    print(f"  {name} = {polyc}   [{role}]")
