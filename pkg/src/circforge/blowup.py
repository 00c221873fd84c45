"""Weighted blow-up charts with cyclic group actions, invariant Hilbert bases,
binomial relations, orbifold quotient equations, and the staged blow-up of
group-circulant normal forms.

The blow-up of parameters (x_1, ..., x_n) with weights (w_1, ..., w_n) is
covered by n charts; in chart i the substitution is x_i = t^{w_i},
x_j = t^{w_j} y_j, and the cyclic group of order w_i acts by t -> s t,
y_j -> s^{-w_j} y_j.  The action is free off the exceptional divisor t = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .abelian import AbelianGroup, PairingContext, pairing
from .cyclotomic import Cyclo, root_of_unity
from .gcirc import NormalFormSpec, ProductNormalFormSpec, spec_values, validate_normal_form
from .polyring import (
    DiagonalAction,
    FracPoly,
    VarSpace,
    apply_group,
    is_invariant,
    strict_transform,
)
from .resinv import weights as resinv_weights
from .smith import in_lattice, kernel_basis


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


@dataclass(frozen=True)
class ChartMap:
    index: int
    chart_var: str
    y_names: dict  # parameter -> fresh chart coordinate (None for the chart's own)
    substitutions: dict  # original variable name -> FracPoly over new_space
    new_space: VarSpace
    weights_map: dict  # original variable name -> weight

    @property
    def exceptional(self) -> str:
        return self.chart_var

    def apply(self, f: FracPoly) -> FracPoly:
        mapping = {n: v for n, v in self.substitutions.items() if n in f.space}
        return f.substitute(mapping)


@dataclass(frozen=True)
class ChartAtlas:
    params: tuple[str, ...]
    weights: tuple[int, ...]
    ambient: VarSpace
    charts: tuple[tuple[ChartMap, DiagonalAction], ...]


def charts(ambient: VarSpace, params, weight_vector) -> ChartAtlas:
    """Atlas of the weighted blow-up of the listed parameters; other
    variables of the ambient space ride along untouched."""
    params = tuple(params)
    wts = tuple(int(w) for w in weight_vector)
    if len(params) != len(wts):
        raise ValueError("one weight per parameter")
    if any(w < 1 for w in wts):
        raise ValueError("weights must be positive integers")
    for p in params:
        if p not in ambient:
            raise ValueError(f"parameter {p} not in the ambient space")
    out = []
    spectator_div = [(n, b) for n, b in zip(ambient.div_names, ambient.div_bounds) if n not in params]
    spectator_free = [n for n in ambient.free_names if n not in params]
    taken_base = set(ambient.names)
    for i, (pi, wi) in enumerate(zip(params, wts)):
        t = _fresh("t", taken_base)
        ynames: dict = {pi: None}
        for j, pj in enumerate(params):
            if j != i:
                ynames[pj] = _fresh(pj + "'", taken_base | {t} | {v for v in ynames.values() if v})
        space = VarSpace(spectator_div, spectator_free + [t] + [ynames[p] for p in params if ynames[p]])
        subs = {pi: FracPoly.monomial(space, {t: wi})}
        for j, pj in enumerate(params):
            if j != i:
                subs[pj] = FracPoly.monomial(space, {t: wts[j], ynames[pj]: 1})
        action_weights = {n: (0,) for n in space.names}
        action_weights[t] = (1,)
        for j, pj in enumerate(params):
            if j != i:
                action_weights[ynames[pj]] = ((-wts[j]) % wi,)
        action = DiagonalAction(AbelianGroup((wi,)), action_weights)
        out.append((ChartMap(i, t, ynames, subs, space, dict(zip(params, wts))), action))
    return ChartAtlas(params, wts, ambient, tuple(out))


def blowup_substitute(f: FracPoly, chart: ChartMap) -> FracPoly:
    """Exact substitution of a chart map into f (no division)."""
    return chart.apply(f)


def pullback(f: FracPoly, atlas: ChartAtlas, i: int):
    """Total pullback in chart i plus its strict transform and multiplicity."""
    cmap, _action = atlas.charts[i]
    total = blowup_substitute(f, cmap)
    st, mult = strict_transform(total, cmap.chart_var)
    return total, st, mult


# -- transitions ---------------------------------------------------------------


@dataclass(frozen=True)
class TransitionChart:
    pair: tuple[int, int]
    cover_i_vars: tuple[str, ...]  # variables of the auxiliary cover over chart i
    cover_j_vars: tuple[str, ...]
    relation_i: str  # "<var> = <root>^w" description of the added root variable
    relation_j: str
    iso: dict  # generator of cover-over-i -> Laurent monomial over cover-over-j
    action_i: DiagonalAction
    action_j: DiagonalAction
    equivariant: bool
    commutes_with_projection: bool


def transition(atlas: ChartAtlas, i: int, j: int) -> TransitionChart:
    """Auxiliary presentations gluing charts i and j, with the equivariance
    and projection checks performed symbolically on Laurent monomials.

    The cover over chart i adds a w_j-th root u of the chart-i coordinate of
    parameter j (and symmetrically); the glueing sends the chart-i variable
    s to t*u, inverts the root, and rescales the remaining coordinates.
    """
    if i == j:
        raise ValueError("need two distinct charts")
    params, wts = atlas.params, atlas.weights
    wi, wj = wts[i], wts[j]
    cmi, _ai = atlas.charts[i]
    cmj, _aj = atlas.charts[j]
    s, t = cmi.chart_var, cmj.chart_var
    yi, yj = cmi.y_names, cmj.y_names

    u_i = _fresh("u", set(cmi.new_space.names))
    u_j = _fresh("u", set(cmj.new_space.names))
    cover_i_space = cmi.new_space.union(VarSpace((), (u_i,)))
    cover_j_space = cmj.new_space.union(VarSpace((), (u_j,)))

    group = AbelianGroup((wi, wj))
    ai_weights = {n: (0, 0) for n in cover_i_space.names}
    ai_weights[s] = (1, 0)
    ai_weights[u_i] = (-1, 1)
    for p in params:
        if yi[p] is not None:
            ai_weights[yi[p]] = (-cmi.weights_map[p], 0)
    action_i = DiagonalAction(group, ai_weights)

    aj_weights = {n: (0, 0) for n in cover_j_space.names}
    aj_weights[t] = (0, 1)
    aj_weights[u_j] = (1, -1)
    for p in params:
        if yj[p] is not None:
            aj_weights[yj[p]] = (0, -cmj.weights_map[p])
    action_j = DiagonalAction(group, aj_weights)

    # isomorphism: cover-over-i generators expressed over the cover-over-j
    iso = {
        s: FracPoly.monomial(cover_j_space, {t: 1, u_j: 1}),
        u_i: FracPoly.monomial(cover_j_space, {u_j: -1}),
        yi[params[j]]: FracPoly.monomial(cover_j_space, {u_j: -wj}),
    }
    for m, p in enumerate(params):
        if m != i and m != j:
            iso[yi[p]] = FracPoly.monomial(cover_j_space, {u_j: -wts[m], yj[p]: 1})

    equivariant = True
    for v, image in iso.items():
        vpoly = FracPoly.variable(cover_i_space, v)
        for gi in range(group.rank):
            g = group.generator(gi)
            lhs = apply_group(vpoly, action_i, g)
            (_, lc), = lhs.terms.items()
            if image.scale(lc) != apply_group(image, action_j, g):
                equivariant = False

    # both projections to the ambient coordinates agree after gluing
    commutes = True
    root_j = {yj[params[i]]: FracPoly.monomial(cover_j_space, {u_j: wi})}
    for p in params:
        via_j = cmj.substitutions[p].in_space(cover_j_space).substitute(root_j, target_space=cover_j_space)
        via_i = cmi.substitutions[p].in_space(cover_i_space)
        glue = {v: img for v, img in iso.items() if v in via_i.space}
        via_i_glued = via_i.substitute(glue, target_space=cover_j_space)
        if via_i_glued != via_j:
            commutes = False

    return TransitionChart(
        pair=(i, j),
        cover_i_vars=tuple(cover_i_space.names),
        cover_j_vars=tuple(cover_j_space.names),
        relation_i=f"{yi[params[j]]} = {u_i}^{wj}",
        relation_j=f"{yj[params[i]]} = {u_j}^{wi}",
        iso={v: str(img) for v, img in iso.items()},
        action_i=action_i,
        action_j=action_j,
        equivariant=equivariant,
        commutes_with_projection=commutes,
    )


# -- invariant Hilbert bases -----------------------------------------------------


@dataclass(frozen=True)
class HilbertBasis:
    action: DiagonalAction
    variables: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...]  # exponent vectors over variables
    degree_bound: int
    space: VarSpace

    def names(self) -> list[str]:
        return [f"g{i}" for i in range(len(self.generators))]

    def monomial(self, idx: int) -> FracPoly:
        return FracPoly.monomial(self.space, dict(zip(self.variables, self.generators[idx])))

    def find(self, exps: dict) -> int | None:
        vec = tuple(int(exps.get(v, 0)) for v in self.variables)
        try:
            return self.generators.index(vec)
        except ValueError:
            return None


def _invariant(action: DiagonalAction, variables, vec) -> bool:
    for i, p in enumerate(action.group.moduli):
        total = 0
        for v, e in zip(variables, vec):
            total += action.weights[v][i] * e
        if total % p != 0:
            return False
    return True


def hilbert_basis(action: DiagonalAction, variables=None) -> HilbertBasis:
    """Minimal generating monomials of the invariant algebra, complete up to
    the group-order degree bound."""
    if variables is None:
        variables = tuple(sorted(action.weights))
    variables = tuple(variables)
    bound = action.group.order
    space = VarSpace((), variables)
    gens: list[tuple[int, ...]] = []
    for total in range(1, bound + 1):
        for vec in _compositions(total, len(variables)):
            if not _invariant(action, variables, vec):
                continue
            if _reducible(vec, gens):
                continue
            gens.append(vec)
    gens.sort(key=lambda v: (sum(v), v))
    return HilbertBasis(action, variables, tuple(gens), bound, space)


def _compositions(total: int, n: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def _reducible(vec, gens) -> bool:
    return any(all(g[t] <= vec[t] for t in range(len(vec))) for g in gens)


@dataclass(frozen=True)
class Relation:
    left: tuple[int, ...]  # exponents over generators
    right: tuple[int, ...]

    def vector(self):
        return tuple(l - r for l, r in zip(self.left, self.right))


@dataclass(frozen=True)
class RelationSet:
    basis: HilbertBasis
    relations: tuple[Relation, ...]
    lattice_rank: int

    def ambient_identity_holds(self, rel: Relation) -> bool:
        lhs = FracPoly.constant(self.basis.space, 1)
        rhs = FracPoly.constant(self.basis.space, 1)
        for idx, (el, er) in enumerate(zip(rel.left, rel.right)):
            if el:
                lhs = lhs * self.basis.monomial(idx) ** el
            if er:
                rhs = rhs * self.basis.monomial(idx) ** er
        return lhs == rhs

    def contains(self, rel: Relation) -> bool:
        vectors = [r.vector() for r in self.relations]
        return in_lattice(vectors, rel.vector())


def relations(basis: HilbertBasis, degree_bound: int | None = None) -> RelationSet:
    """Binomial relation lattice of the generators (integer kernel of the
    exponent matrix); every basis relation is an exact monomial identity."""
    nvars = len(basis.variables)
    ngens = len(basis.generators)
    a = np.array([[basis.generators[g][v] for g in range(ngens)] for v in range(nvars)], dtype=object)
    rows = kernel_basis(a)
    rels = []
    for row in rows:
        left = tuple(int(x) if x > 0 else 0 for x in row)
        right = tuple(int(-x) if x < 0 else 0 for x in row)
        rels.append(Relation(left, right))
    out = RelationSet(basis, tuple(rels), lattice_rank=len(rels))
    for rel in out.relations:
        if not out.ambient_identity_holds(rel):
            raise AssertionError("kernel relation fails as a monomial identity")
    return out


def quotient_image(f: FracPoly, basis: HilbertBasis) -> FracPoly:
    """Rewrite the invariant polynomial f in the basis generators.

    Greedy division with backtracking per monomial; representations are not
    unique (the relations identify them) so correctness is certified by
    re-expansion, see expand_quotient_image.
    """
    if not is_invariant(f, basis.action):
        raise ValueError("polynomial is not invariant under the basis action")
    gen_space = VarSpace((), tuple(basis.names()))
    out = FracPoly.zero(gen_space)
    var_index = {v: i for i, v in enumerate(basis.variables)}
    gens_desc = sorted(range(len(basis.generators)), key=lambda i: (-sum(basis.generators[i]), basis.generators[i]))
    for key, coeff in f.terms.items():
        vec = [0] * len(basis.variables)
        for pos, e in enumerate(key):
            name = f.space.names[pos]
            if e:
                vec[var_index[name]] = int(e)
        decomp = _decompose(tuple(vec), gens_desc, basis, {})
        if decomp is None:
            raise ValueError(f"monomial {dict(zip(basis.variables, vec))} not expressible in the generators")
        exps = {}
        for idx in decomp:
            exps[basis.names()[idx]] = exps.get(basis.names()[idx], 0) + 1
        out = out + FracPoly.monomial(gen_space, exps, coeff)
    return out


def _decompose(vec, gens_desc, basis: HilbertBasis, memo):
    if all(e == 0 for e in vec):
        return []
    if vec in memo:
        return memo[vec]
    for idx in gens_desc:
        g = basis.generators[idx]
        if all(g[t] <= vec[t] for t in range(len(vec))):
            rest = _decompose(tuple(v - gt for v, gt in zip(vec, g)), gens_desc, basis, memo)
            if rest is not None:
                memo[vec] = [idx] + rest
                return memo[vec]
    memo[vec] = None
    return None


def expand_quotient_image(img: FracPoly, basis: HilbertBasis) -> FracPoly:
    """Substitute the generator monomials back; inverse check for quotient_image."""
    mapping = {name: basis.monomial(i) for i, name in enumerate(basis.names())}
    return img.substitute(mapping, target_space=basis.space)


# -- toric transform of the relation family ----------------------------------------


@dataclass(frozen=True)
class TransformedRelation:
    lhs: str
    rhs: str
    nu: int
    trivialized: bool
    verified: bool


def toric_relation_transform(rel: Relation, basis: HilbertBasis, w_index: int, s_index: int) -> TransformedRelation:
    """Chart transform of a relation prod X^lambda = W^(sum lambda - nu) * S
    under the blow-up of the common zero locus of its generators, in the
    W-chart: S/W = W^(nu-1) prod (X/W)^lambda."""
    left, right = rel.left, rel.right
    if left[s_index] or not right[s_index]:
        left, right = right, left
    if right[s_index] != 1 or right[w_index] < 0 or any(left[i] and i in (w_index, s_index) for i in range(len(left))):
        raise ValueError("relation is not of the product = W^a * S family")
    lam_total = sum(left)
    nu = lam_total - right[w_index]
    if nu < 1:
        raise ValueError("relation has nonpositive residual order")
    names = basis.names()
    lam = {names[i]: e for i, e in enumerate(left) if e}
    rhs_chunks = [f"{names[w_index]}^{nu-1}"] if nu > 1 else []
    rhs_chunks += [f"({n}/{names[w_index]})^{e}" if e > 1 else f"({n}/{names[w_index]})" for n, e in lam.items()]
    lhs = f"{names[s_index]}/{names[w_index]}"
    # verify: original relation, with X = W X', S = W S', becomes the claim
    # S' = W^(nu-1) prod X'^lambda; in exponent vectors over (W, X', S'):
    # LHS' = (sum lambda) on W plus lambda on X'; RHS' = (sum lambda - nu) + 1
    # on W plus S'; equality holds iff the original exponents matched.
    verified = right[w_index] + 1 + (nu - 1) == lam_total
    return TransformedRelation(
        lhs=lhs,
        rhs=" * ".join(rhs_chunks) if rhs_chunks else "1",
        nu=nu,
        trivialized=(nu == 1 and lam_total == 1),
        verified=verified,
    )


# -- the staged blow-up of a (product) group-circulant normal form -------------------


@dataclass(frozen=True)
class PipelineStep:
    divisor_index: int
    chart_var: str
    weight_map: dict
    multiplicity: int
    expected_multiplicity: int
    group_order: int
    max_chart_cyclic_order: int


@dataclass(frozen=True)
class PipelineReport:
    steps: tuple[PipelineStep, ...]
    final_factors: tuple[FracPoly, ...]
    final_strict_transform: FracPoly
    group_moduli: tuple[int, ...]
    group_order: int
    order_bound: int
    cyclic_orders_bounded: bool
    normal_crossings: bool
    product_verified: bool


def gcirc_blowup_sequence(spec) -> PipelineReport:
    """One weighted blow-up per divisorial variable, following the w-charts;
    the final strict transform is checked to be a product of linear factors
    with independent linear parts."""
    if isinstance(spec, NormalFormSpec):
        spec = ProductNormalFormSpec((spec,))
    for f in spec.factors:
        rep = validate_normal_form(f, allow_omitted_divisors=len(spec.factors) > 1)
        if not rep.valid:
            raise ValueError("factor fails validation")
    moduli = spec.moduli
    r = len(moduli)
    k = spec.k
    names = spec.x_names()
    w_names = spec.factors[0].w_names()

    # per-variable exponent residues mu (per divisor) off the factor gammas
    mu = {}
    pos = 0
    for fac in spec.factors:
        exps = fac.exponent_elements()
        for m in range(fac.k):
            mu[names[pos + m]] = exps[m].residues
        pos += fac.k

    space = VarSpace(list(zip(w_names, moduli)), list(names))
    factors = []
    pos = 0
    for fac in spec.factors:
        sub_names = names[pos : pos + fac.k]
        vals = spec_values(fac, space, x_names=sub_names)
        ctx = PairingContext.natural(fac.quotient_group)
        for j in fac.quotient_group.elements():
            factor = FracPoly.zero(space)
            for l, v in zip(fac.labels, vals):
                factor = factor + v.scale(root_of_unity(ctx.k, pairing(ctx, j, l)))
            factors.append(factor)
        pos += fac.k
    total_poly = factors[0]
    for f in factors[1:]:
        total_poly = total_poly * f

    steps = []
    current_names = list(names)
    for i in range(r):
        p = moduli[i]
        expected = resinv_weights([p] * (k // p))
        expected_w = dict(zip(expected.parameters, expected.integer))
        wt_map = {w_names[i]: p}
        for name in current_names:
            m = mu[_root_name(name)][i]
            wt_map[name] = p - m + 1
        # cross-check against the closed-form weights for cp(p) x ... x cp(p)
        for name, wv in wt_map.items():
            if name == w_names[i]:
                assert wv == expected_w["w"]
        params = [w_names[i]] + current_names
        atlas = charts(space, params, [wt_map[n] for n in params])
        cmap, action = atlas.charts[0]  # the divisor chart
        new_factors = []
        mult_total = Fraction(0)
        for f in factors:
            tot = cmap.apply(f)
            st, mlt = strict_transform(tot, cmap.chart_var)
            new_factors.append(st)
            mult_total += mlt
        factors = new_factors
        total_poly = cmap.apply(total_poly)
        total_poly, mult_check = strict_transform(total_poly, cmap.chart_var)
        if mult_check != mult_total:
            raise AssertionError("factor multiplicities do not add up")
        steps.append(
            PipelineStep(
                divisor_index=i,
                chart_var=cmap.chart_var,
                weight_map=dict(wt_map),
                multiplicity=int(mult_total),
                expected_multiplicity=k * (p + 1),
                group_order=p,
                max_chart_cyclic_order=max(wt_map.values()),
            )
        )
        # variables were renamed by the chart
        rename = {}
        for name in current_names:
            sub = cmap.substitutions[name]
            (key,), = [list(sub.terms.keys())]
            newn = [sub.space.names[t] for t, e in enumerate(key) if e != 0 and sub.space.names[t] != cmap.chart_var]
            rename[name] = newn[0]
        current_names = [rename[n] for n in current_names]
        space = cmap.new_space

    prod_again = factors[0]
    for f in factors[1:]:
        prod_again = prod_again * f
    product_verified = prod_again == total_poly

    nc = _independent_linear_parts(factors, current_names)
    order_bound = sum(moduli) + 1
    cyclic_ok = all(s.max_chart_cyclic_order <= order_bound for s in steps) and all(
        p <= order_bound for p in moduli
    )
    return PipelineReport(
        steps=tuple(steps),
        final_factors=tuple(factors),
        final_strict_transform=total_poly,
        group_moduli=tuple(moduli),
        group_order=prod(moduli),
        order_bound=order_bound,
        cyclic_orders_bounded=cyclic_ok,
        normal_crossings=nc,
        product_verified=product_verified,
    )


def _root_name(name: str) -> str:
    return name.rstrip("'")


def _independent_linear_parts(factors, var_names) -> bool:
    """Each factor a linear form in the listed variables, jointly of full rank."""
    rows = []
    for f in factors:
        coeffs = {n: Cyclo.zero() for n in var_names}
        for key, c in f.terms.items():
            if sum(Fraction(e) for e in key) != 1:
                return False
            hit = [f.space.names[pos] for pos, e in enumerate(key) if e != 0]
            if len(hit) != 1 or hit[0] not in coeffs:
                return False
            coeffs[hit[0]] = coeffs[hit[0]] + c
        rows.append([coeffs[n] for n in var_names])
    # Gaussian elimination over the cyclotomic field
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(var_names)
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if not m[r][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for r2 in range(len(m)):
            if r2 != rank and not m[r2][col].is_zero():
                fct = m[r2][col]
                m[r2] = [x - fct * y for x, y in zip(m[r2], m[rank])]
        rank += 1
    return rank == len(factors)
