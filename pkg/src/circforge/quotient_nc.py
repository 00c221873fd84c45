"""Normalization of a normal-crossings ideal invariant under a diagonal
finite abelian group action.

Inputs are polynomial factor systems f_1, ..., f_k with independent linear
parts whose product ideal is invariant.  The normal form extracts, one
group generator at a time, the cyclic quotient order q acting effectively
on the factor ideals, splits the first factor into semi-invariant pieces
indexed by nested weights, and certifies an invertible coefficient matrix
(nested blocks of diagonal times Vandermonde type) recombining the pieces
into the full factor system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .abelian import GroupElement, Subgroup, subgroup_from_generators
from .cyclotomic import Cyclo, root_of_unity
from .polyring import (
    DiagonalAction,
    FracPoly,
    VarSpace,
    apply_group,
    semi_invariant_split,
    semi_invariant_weight,
    truncate,
)


class SplitsInvariantly(Exception):
    """The ideal factors into invariant pieces; callers recurse on the parts."""

    def __init__(self, partition):
        self.partition = partition
        super().__init__(f"ideal splits into invariant factor groups {partition}")


class DegenerateInput(Exception):
    pass


def semi_invariant_generators(gens, action: DiagonalAction, membership_factors=None, degree: int | None = None):
    """Replace generators by weight-homogeneous pieces, one group generator
    at a time; the pieces generate the same ideal when the input ideal is
    invariant.

    When membership_factors is given (a normal-crossings system), each piece
    is reduced against it and a nonzero reduction reports a non-invariant
    input ideal.
    """
    out = [g for g in gens if not g.is_zero()]
    for i in range(action.group.rank):
        nxt = []
        for g in out:
            for part in semi_invariant_split(g, action, i):
                if not part.is_zero():
                    nxt.append(part)
        out = nxt
    deduped = []
    for g in out:
        if not any(_match_scalar(g, h) is not None for h in deduped):
            deduped.append(g)
    out = deduped
    if membership_factors is not None:
        for part in out:
            if not nc_ideal_reduction(part, membership_factors, degree=degree).is_zero():
                raise ValueError("bucketed part fails ideal membership: ideal is not invariant")
    return out


def nc_ideal_reduction(f: FracPoly, factors, degree: int | None = None) -> FracPoly:
    """Image of f in the local quotient by (factors), truncated.

    The factors must have independent linear parts; the pivot variables are
    eliminated by iterating the solved equations.  A zero image certifies
    membership up to the truncation degree (default: 2 deg f + 4).
    """
    factors = list(factors)
    if degree is None:
        d = f.total_degree()
        degree = int(2 * (d if d is not None else 1)) + 4
    space = f.space
    for g in factors:
        space = space.union(g.space)
    f = f.in_space(space)
    factors = [g.in_space(space) for g in factors]
    rows, pivots = _triangularize(factors, space)
    subs = {}
    for piv, g in zip(pivots, rows):
        pv = FracPoly.variable(space, piv)
        subs[piv] = pv - g  # g has linear part pv + (non-pivot linear) + higher
    # iterate the substitution until the pivots are eliminated mod the degree
    sol = {p: truncate(v, degree) for p, v in subs.items()}
    for _ in range(degree + 2):
        changed = False
        for p in sol:
            new = truncate(sol[p].substitute(sol, target_space=space), degree)
            if new != sol[p]:
                sol[p] = new
                changed = True
        if not changed:
            break
    image = truncate(f.substitute(sol, target_space=space), degree)
    return image


def _linear_part(f: FracPoly):
    return {
        f.space.names[pos]: c
        for key, c in f.terms.items()
        if sum(Fraction(e) for e in key) == 1
        for pos, e in enumerate(key)
        if e == 1
    }


def _triangularize(factors, space: VarSpace):
    """Row-reduce the factor system so each row has a distinct pivot variable
    with unit coefficient in its linear part."""
    rows = list(factors)
    names = list(space.names)
    pivots = []
    reduced = []
    for g in rows:
        work = g
        for piv, done in zip(pivots, reduced):
            c = _linear_part(work).get(piv)
            if c is not None and not c.is_zero():
                work = work - done.scale(c)
        lin = _linear_part(work)
        piv = next((n for n in names if n in lin and not lin[n].is_zero() and n not in pivots), None)
        if piv is None:
            raise DegenerateInput("factor linear parts are not independent")
        work = work.scale(lin[piv].inverse())
        pivots.append(piv)
        reduced.append(work)
    # back-substitute so no pivot appears in another row's linear part
    for a in range(len(reduced)):
        for b in range(len(reduced)):
            if a == b:
                continue
            c = _linear_part(reduced[a]).get(pivots[b])
            if c is not None and not c.is_zero():
                reduced[a] = reduced[a] - reduced[b].scale(c)
    return reduced, pivots


# -- adapted coordinates ---------------------------------------------------------


@dataclass
class AdaptedCoordinates:
    coordinates: list  # (name, FracPoly, role) with role in {divisor:j, stratum, complement}
    weights: dict  # name -> weight tuple of the coordinate
    verified: bool


def adapted_coordinates(action: DiagonalAction, divisor_gens, s_gens) -> AdaptedCoordinates:
    """Diagonal coordinates in which every divisor ideal is a coordinate and
    the stratum ideal is generated by coordinates.

    Divisor components whose generator lies in the stratum ideal are handled
    by the two-step reduction: their coordinates join the stratum system and
    the remaining stratum coordinates are chosen afterwards.
    """
    divisor_gens = list(divisor_gens)
    s_gens = list(s_gens)
    if not s_gens:
        raise ValueError("need stratum generators")
    group = action.group

    def semi_part_with_linear(g: FracPoly) -> FracPoly:
        lin = _linear_part(g)
        if not lin:
            raise DegenerateInput("generator has zero linear part")
        parts = [g]
        for i in range(group.rank):
            parts = [p for q in parts for p in semi_invariant_split(q, action, i) if not p.is_zero()]
        for p in parts:
            plin = _linear_part(p)
            if plin and all(
                (n in plin and plin[n] == c) for n, c in lin.items()
            ):
                return p
        raise ValueError("generator's linear part is not weight-homogeneous; principal ideal cannot be invariant")

    space = s_gens[0].space
    for g in s_gens + divisor_gens:
        space = space.union(g.space)

    transverse = []
    contained = []
    for j, h in enumerate(divisor_gens):
        image = nc_ideal_reduction(h, s_gens)
        (contained if image.is_zero() else transverse).append((j, h))

    coords = []
    used_directions = []

    def try_add(name, poly, role) -> bool:
        vec = _linear_part(poly)
        if _dependent(vec, used_directions, space):
            return False
        used_directions.append(vec)
        coords.append((name, poly.in_space(space), role))
        return True

    for j, h in transverse:
        if not try_add(f"e{j}", semi_part_with_linear(h), f"divisor:{j}"):
            raise DegenerateInput("divisor linear parts are dependent")
    # two-step reduction: divisor components containing the stratum lead
    # the stratum coordinate system
    s_dirs = []
    s_count = 0
    for j, h in contained:
        part = semi_part_with_linear(h)
        if try_add(f"s{s_count}", part, f"stratum+divisor:{j}"):
            s_dirs.append(_linear_part(part))
            s_count += 1
    # semi-invariant stratum pieces fill out the span of the stratum ideal
    rank_s = _rank([_linear_part(g) for g in s_gens], space)
    pieces = semi_invariant_generators(s_gens, action)
    for p in sorted(pieces, key=lambda q: (q.total_degree(), str(q))):
        if _rank(s_dirs, space) >= rank_s:
            break
        if _linear_part(p) and not _dependent(_linear_part(p), s_dirs, space) and try_add(f"s{s_count}", p, "stratum"):
            s_dirs.append(_linear_part(p))
            s_count += 1
    if _rank(s_dirs, space) < rank_s:
        raise DegenerateInput("semi-invariant pieces do not span the stratum ideal")
    c_count = 0
    for name in space.names:
        unit = {name: Cyclo.one()}
        if not _dependent(unit, used_directions, space):
            used_directions.append(unit)
            coords.append((f"c{c_count}", FracPoly.variable(space, name), "complement"))
            c_count += 1
    weights = {}
    ok = len(coords) == len(space.names)
    for name, poly, _role in coords:
        w = semi_invariant_weight(poly, action)
        if w is None:
            ok = False
        weights[name] = w
    return AdaptedCoordinates(coordinates=coords, weights=weights, verified=ok)


def _rank(vectors, space: VarSpace) -> int:
    names = list(space.names)
    rows = [[v.get(n, Cyclo.zero()) for n in names] for v in vectors]
    return _gauss_rank(rows)


def _dependent(vec, basis, space: VarSpace) -> bool:
    if not vec:
        return True
    return _rank(basis + [vec], space) == _rank(list(basis), space)


def _gauss_rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r2 in range(len(rows)):
            if r2 != rank and not rows[r2][col].is_zero():
                c = rows[r2][col]
                rows[r2] = [x - c * y for x, y in zip(rows[r2], rows[rank])]
        rank += 1
    return rank


# -- the nested normal form --------------------------------------------------------


@dataclass
class InvariantNCInput:
    action: DiagonalAction
    factors: list

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")


@dataclass
class NestedNormalForm:
    chain: tuple[int, ...]  # cyclic quotient orders q > 1, in generator order
    chain_generators: tuple[int, ...]  # generator index supplying each q
    parts: dict  # (l_1, ..., l_s) -> coordinate polynomial h
    gamma: dict  # prefix tuple -> residual weight used in the matrix formula
    matrix: list  # rows over m-tuples, columns over l-tuples (Cyclo entries)
    row_index: list  # the m-tuples, parallel to matrix rows
    col_index: list  # the l-tuples, parallel to matrix columns
    determinant: Cyclo
    factors: list  # recombined factors, one per m-tuple
    scalar: Cyclo  # prod(factors) = scalar * prod(input factors)
    stabilizer: Subgroup


def _match_scalar(a: FracPoly, b: FracPoly):
    """Scalar c with a = c * b, or None."""
    if a.is_zero() or b.is_zero():
        return None
    if len(a.terms) != len(b.terms) or a.space != b.space:
        aa, bb = FracPoly._aligned(a, b)
        if len(aa.terms) != len(bb.terms):
            return None
        a, b = aa, bb
    if set(a.terms) != set(b.terms):
        return None
    key = next(iter(b.terms))
    c = a.terms[key] * b.terms[key].inverse()
    for k2, bc in b.terms.items():
        if a.terms[k2] != bc * c:
            return None
    return c


def _factor_permutation(factors, action: DiagonalAction, g: GroupElement):
    """Permutation sigma and scalars with g . f_j = c_j f_{sigma(j)}, or None."""
    out = []
    for f in factors:
        moved = apply_group(f, action, g)
        hit = None
        for idx, other in enumerate(factors):
            c = _match_scalar(moved, other)
            if c is not None:
                hit = (idx, c)
                break
        if hit is None:
            return None
        out.append(hit)
    if sorted(idx for idx, _c in out) != list(range(len(factors))):
        return None
    return out


def invariant_nc_normal_form(data: InvariantNCInput) -> NestedNormalForm:
    action = data.action
    group = action.group
    factors = list(data.factors)
    k = len(factors)

    lins = [_linear_part(f) for f in factors]
    space = factors[0].space
    for f in factors[1:]:
        space = space.union(f.space)
    if _rank(lins, space) != k:
        raise DegenerateInput("factor linear parts are not independent")

    perms = {}
    for el in group.elements():
        res = _factor_permutation(factors, action, el)
        if res is None:
            raise ValueError("the group does not permute the factor ideals; product is not invariant")
        perms[el] = res

    orbit0 = sorted({idx for el in group.elements() for idx, _c in [perms[el][0]]})
    if len(orbit0) != k:
        partition = []
        seen = set()
        for j in range(k):
            if j in seen:
                continue
            orb = sorted({perms[el][j][0] for el in group.elements()})
            seen.update(orb)
            partition.append(tuple(orb))
        raise SplitsInvariantly(tuple(partition))

    stab = Subgroup(group, [el for el in group.elements() if perms[el][0][0] == 0])

    f1 = factors[0]
    chain = []
    chain_gens = []
    parts = {(): f1}
    gamma: dict = {}
    h_cur = stab
    for i in range(group.rank):
        p = group.moduli[i]
        gen = group.generator(i)
        q = next(qq for qq in range(1, p + 1) if gen.scale(qq) in h_cur)
        if q > 1:
            step = p // q
            new_parts = {}
            for prefix, h in parts.items():
                buckets = semi_invariant_split(h, action, i)
                nonzero = [(m, b) for m, b in enumerate(buckets) if not b.is_zero()]
                if len(nonzero) != q:
                    raise DegenerateInput(
                        f"expected {q} weight pieces along generator {i}, found {len(nonzero)}"
                    )
                g0 = min(m % step for m, _b in nonzero)
                if any(m % step != g0 for m, _b in nonzero):
                    raise DegenerateInput("weight pieces do not lie in one residue ladder")
                gamma[(i,) + prefix] = g0
                for m, b in nonzero:
                    ell = (m - g0) // step % q
                    new_parts[prefix + (ell,)] = b
            parts = new_parts
            chain.append(q)
            chain_gens.append(i)
        h_cur = subgroup_from_generators(group, list(h_cur.elements) + [gen])

    if len(parts) != k:
        raise DegenerateInput(f"nested pieces number {len(parts)}, expected {k}")

    s = len(chain)
    rows = list(itertools.product(*(range(q) for q in chain)))
    cols = sorted(parts)
    matrix = []
    recombined = []
    for mvec in rows:
        row = []
        for lvec in cols:
            entry = Cyclo.one()
            for t in range(s):
                i = chain_gens[t]
                p = group.moduli[i]
                g0 = gamma[(i,) + lvec[:t]]
                entry = entry * root_of_unity(p, mvec[t] * g0) * root_of_unity(chain[t], mvec[t] * lvec[t])
            row.append(entry)
        matrix.append(row)
        comb = FracPoly.zero(space)
        for entry, lvec in zip(row, cols):
            comb = comb + parts[lvec].in_space(space).scale(entry)
        recombined.append(comb)

    # each recombined factor must be the corresponding group translate of f1;
    # through the factor permutations this matches the recombined system
    # bijectively with the input system, which certifies the product identity
    # prod(recombined) = scalar * prod(inputs) exactly
    f1_aligned = f1.in_space(space)
    hit = []
    scalar = Cyclo.one()
    for mvec, comb in zip(rows, recombined):
        el = group.identity
        for t in range(s):
            el = el + group.generator(chain_gens[t]).scale(mvec[t])
        if comb != apply_group(f1_aligned, action, el):
            raise AssertionError("recombined factor differs from the group translate")
        idx, c = perms[el][0]
        hit.append(idx)
        scalar = scalar * c
    if sorted(hit) != list(range(k)):
        raise AssertionError("recombined factors do not match the input system bijectively")

    det = _det_cyclo(matrix)
    if det.is_zero():
        raise AssertionError("coefficient matrix is singular")

    if _rank([_linear_part(h) for h in parts.values()], space) != k:
        raise DegenerateInput("nested coordinates have dependent gradients")

    return NestedNormalForm(
        chain=tuple(chain),
        chain_generators=tuple(chain_gens),
        parts=parts,
        gamma=gamma,
        matrix=matrix,
        row_index=rows,
        col_index=cols,
        determinant=det,
        factors=recombined,
        scalar=scalar,
        stabilizer=stab,
    )


def _det_cyclo(matrix) -> Cyclo:
    m = [row[:] for row in matrix]
    n = len(m)
    det = Cyclo.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return Cyclo.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                c = m[r][col] * inv
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return det
