"""Finite abelian groups Z_{p_1} x ... x Z_{p_r} with duality combinatorics.

Provides the weighted scalar product <j, l> = sum_i (k/p_i) j_i l_i mod k,
orthogonal complements, coset systems with deterministic representatives,
and invariant-factor certificates via Smith normal form.

Subgroups are explicit element sets; group orders here stay small enough
for exhaustive work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm, prod

import numpy as np

from .cyclotomic import Cyclo, root_of_unity
from .smith import cokernel_invariant_factors, kernel_basis


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.moduli):
            raise ValueError("moduli must be positive")
        object.__setattr__(self, "moduli", tuple(int(p) for p in self.moduli))

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def element(self, residues) -> "GroupElement":
        return GroupElement(self, tuple(int(r) % p for r, p in zip(residues, self.moduli, strict=True)))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def elements(self):
        for tup in itertools.product(*(range(p) for p in self.moduli)):
            yield GroupElement(self, tup)

    def generator(self, i: int) -> "GroupElement":
        res = [0] * self.rank
        res[i] = 1
        return GroupElement(self, tuple(res))

    def __str__(self):
        return " x ".join(f"Z{p}" for p in self.moduli) if self.moduli else "Z1"


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple((a + b) % p for a, b, p in zip(self.residues, other.residues, self.group.moduli)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple((-a) % p for a, p in zip(self.residues, self.group.moduli)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        return GroupElement(self.group, tuple((a * n) % p for a, p in zip(self.residues, self.group.moduli)))

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.residues)

    def _check(self, other: "GroupElement"):
        if self.group != other.group:
            raise ValueError("elements of different groups")

    def __str__(self):
        return "(" + ",".join(map(str, self.residues)) + ")"


class Subgroup:
    """A subgroup given by its explicit element set."""

    def __init__(self, parent: AbelianGroup, elements):
        self.parent = parent
        elems = frozenset(elements)
        for g in elems:
            if g.group != parent:
                raise ValueError("element outside parent group")
        if parent.identity not in elems:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if -a not in elems:
                raise ValueError("subgroup not closed under negation")
            for b in elems:
                if a + b not in elems:
                    raise ValueError("subgroup not closed under addition")
        self.elements = elems

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elements, key=lambda g: g.residues)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((self.parent, self.elements))

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.sorted_elements()) + "}"


def subgroup_from_generators(group: AbelianGroup, gens) -> Subgroup:
    """Smallest subgroup containing gens, by closure under addition."""
    elems = {group.identity}
    frontier = [group.identity]
    gens = list(gens)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = cur + g
            if nxt not in elems:
                elems.add(nxt)
                frontier.append(nxt)
    return Subgroup(group, elems)


def trivial_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, [group.identity])


def full_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, group.elements())


@dataclass(frozen=True)
class PairingContext:
    """Carries the common multiple k defining the weighted scalar product."""

    group: AbelianGroup
    k: int

    def __post_init__(self):
        for p in self.group.moduli:
            if self.k % p != 0:
                raise ValueError(f"k={self.k} is not a common multiple of the moduli")

    @staticmethod
    def natural(group: AbelianGroup) -> "PairingContext":
        return PairingContext(group, lcm(1, *group.moduli))


def pairing(ctx: PairingContext, j: GroupElement, l: GroupElement) -> int:
    """Weighted scalar product sum_i (k/p_i) j_i l_i, reduced mod k."""
    if j.group != ctx.group or l.group != ctx.group:
        raise ValueError("elements do not belong to the pairing's group")
    k = ctx.k
    total = 0
    for p, a, b in zip(ctx.group.moduli, j.residues, l.residues):
        total += (k // p) * a * b
    return total % k


def perp(ctx: PairingContext, h: Subgroup) -> Subgroup:
    """Orthogonal complement {l : <l, h> = 0 mod k for all h in H}."""
    if h.parent != ctx.group:
        raise ValueError("subgroup of a different group")
    elems = [l for l in ctx.group.elements() if all(pairing(ctx, l, x) == 0 for x in h.elements)]
    return Subgroup(ctx.group, elems)


def xi(ctx: PairingContext, h: Subgroup, l: GroupElement) -> Cyclo:
    """sum_{h in H} e_k^(-<l, h>); equals |H| on the complement, 0 off it."""
    total = Cyclo.zero(ctx.k)
    for x in h.elements:
        total = total + root_of_unity(ctx.k, -pairing(ctx, l, x))
    return total


@dataclass(frozen=True)
class CosetSystem:
    subgroup: Subgroup
    representatives: tuple[GroupElement, ...]

    @property
    def size(self) -> int:
        return len(self.representatives)

    def representative_of(self, g: GroupElement) -> GroupElement:
        for r in self.representatives:
            if g - r in self.subgroup:
                return r
        raise ValueError("element not covered by the coset system")


def quotient(group: AbelianGroup, h: Subgroup) -> CosetSystem:
    """Coset representatives, each the lexicographically least of its coset.

    The identity's coset comes first; the rest follow in lexicographic order.
    """
    if h.parent != group:
        raise ValueError("subgroup of a different group")
    seen: set = set()
    reps = []
    for g in sorted(group.elements(), key=lambda e: e.residues):
        if g in seen:
            continue
        reps.append(g)
        for x in h.elements:
            seen.add(g + x)
    reps.sort(key=lambda e: e.residues)
    assert reps[0].is_identity()
    return CosetSystem(h, tuple(reps))


def invariant_factors(h: Subgroup) -> list[int]:
    """Invariant factor decomposition d_1 | d_2 | ... of H, via Smith form.

    Presents H as Z^t / K, where t is the number of nontrivial elements
    taken as generators and K is the lattice of relations among them.
    """
    gens = [e for e in h.sorted_elements() if not e.is_identity()]
    if not gens:
        return []
    g = h.parent
    t, r = len(gens), g.rank
    # Relations: integer vectors a with sum_i a_i gens_i = 0 in G, i.e. the
    # projection to the first t coordinates of ker [gens | diag(moduli)].
    a = np.array(
        [[gens[j].residues[i] for j in range(t)] + [g.moduli[i] if j == i else 0 for j in range(r)] for i in range(r)],
        dtype=object,
    )
    rows = kernel_basis(a)
    rel_cols = np.array([[row[i] for row in rows] for i in range(t)], dtype=object)
    return cokernel_invariant_factors(rel_cols)


def quotient_invariant_factors(group: AbelianGroup, h: Subgroup) -> list[int]:
    """Invariant factors of G/H (the cokernel of [diag(moduli) | lifts of H])."""
    r = group.rank
    if r == 0:
        return []
    cols = [[group.moduli[i] if j == i else 0 for i in range(r)] for j in range(r)]
    cols += [list(e.residues) for e in h.sorted_elements()]
    mat = np.array(cols, dtype=object).T
    return cokernel_invariant_factors(mat)


def all_subgroups(group: AbelianGroup) -> list[Subgroup]:
    """Every subgroup of the (small) group, by closure of generator sets."""
    found = {trivial_subgroup(group)}
    frontier = [trivial_subgroup(group)]
    while frontier:
        h = frontier.pop()
        for g in group.elements():
            if g in h:
                continue
            bigger = subgroup_from_generators(group, list(h.elements) + [g])
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return sorted(found, key=lambda s: (s.order, tuple(e.residues for e in s.sorted_elements())))
