"""Finite abelian groups, the weighted pairing, and orthogonal complements.

Run:  python demos/01_groups_and_duality.py
"""

from circforge import (
    AbelianGroup,
    PairingContext,
    all_subgroups,
    invariant_factors,
    pairing,
    perp,
    quotient,
    quotient_invariant_factors,
    subgroup_from_generators,
    xi,
)

# The running example: G = Z2 x Z4 with the weighted scalar product
# <j, l> = (k/2) j1 l1 + (k/4) j2 l2 mod k, where k = lcm(2, 4) = 4.
G = AbelianGroup((2, 4))
ctx = PairingContext.natural(G)
print(f"G = {G}, pairing modulus k = {ctx.k}")

j = G.element((1, 1))
l = G.element((1, 2))
print(f"<{j}, {l}> = {pairing(ctx, j, l)}  (2*1*1 + 1*1*2 = 4 = 0 mod 4)")

# The subgroup generated by (1,2) has order two ...
H = subgroup_from_generators(G, [G.element((1, 2))])
print(f"\nH = {H}")

# ... and its orthogonal complement has order |G|/|H| = 4.
K = perp(ctx, H)
print(f"H-perp = {K}")

# The complement is isomorphic to the quotient G/H -- here both are cyclic
# of order four, even though the ambient group is not cyclic.
print(f"invariant factors of H-perp: {invariant_factors(K)}")
print(f"invariant factors of G/H:    {quotient_invariant_factors(G, H)}")

# Coset representatives are chosen lexicographically least, identity first.
cs = quotient(G, H)
print(f"coset representatives of G/H: {[str(r) for r in cs.representatives]}")

# The character sum over H detects membership in the complement:
# |H| on H-perp, zero off it.
print("\ncharacter sums:")
for ell in G.elements():
    val = xi(ctx, H, ell)
    tag = "in H-perp" if ell in K else "off"
    print(f"  xi_{ell} = {val}   [{tag}]")

# Duality is an involution on the subgroup lattice.
print("\nperp(perp(H)) == H for every subgroup:")
for sub in all_subgroups(G):
    assert perp(ctx, perp(ctx, sub)) == sub
print(f"  checked all {len(all_subgroups(G))} subgroups of {G}")
