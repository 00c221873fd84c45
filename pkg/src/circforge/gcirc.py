"""Group-circulant matrices, determinants, normal forms and their combinatorics.

For a finite abelian group of order t with enumeration l_0, ..., l_{t-1}
(identity first), the circulant matrix has (i, j) entry X_{l_j - l_i}.  Its
determinant is the product of the character sums sum_i chi(l_i) X_{l_i},
independent of the enumeration.

A normal-form specification carries moduli (p_1, ..., p_r), an order k, a
(k-1) x r matrix of exponents gamma_{ji} in (1/p_i){0, ..., p_i - 1}, an
abstract quotient group of order k and an enumeration of its elements; the
associated polynomial is the determinant evaluated at x_0, w^gamma_1 x_1,
..., w^gamma_{k-1} x_{k-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .abelian import (
    AbelianGroup,
    GroupElement,
    PairingContext,
    Subgroup,
    full_subgroup,
    invariant_factors,
    pairing,
    perp,
    quotient,
    quotient_invariant_factors,
    subgroup_from_generators,
)
from .cyclotomic import Cyclo, root_of_unity
from .polyring import DiagonalAction, FracPoly, VarSpace, apply_group


class NonPolynomial(Exception):
    """The normal-form determinant failed to cancel to integer w-exponents."""


def lex_ordering(group: AbelianGroup) -> tuple[GroupElement, ...]:
    return tuple(sorted(group.elements(), key=lambda g: g.residues))


@dataclass(frozen=True)
class CirculantMatrix:
    group: AbelianGroup
    ordering: tuple[GroupElement, ...]
    entries: tuple[tuple[int, ...], ...]  # symbol indices

    def symbol(self, idx: int) -> str:
        return f"X{idx}"

    def rows_as_symbols(self) -> list[list[str]]:
        return [[self.symbol(e) for e in row] for row in self.entries]


def circulant_matrix(group: AbelianGroup, ordering=None) -> CirculantMatrix:
    if ordering is None:
        ordering = lex_ordering(group)
    ordering = tuple(ordering)
    if set(ordering) != set(group.elements()) or len(ordering) != group.order:
        raise ValueError("ordering must enumerate the group")
    return CirculantMatrix(group, ordering, _difference_entries(ordering))


def _difference_entries(ordering) -> tuple:
    if not ordering[0].is_identity():
        raise ValueError("ordering must start with the identity")
    index = {g: i for i, g in enumerate(ordering)}
    rows = []
    for gi in ordering:
        row = []
        for gj in ordering:
            diff = gj - gi
            if diff not in index:
                raise ValueError("elements are not closed under differences")
            row.append(index[diff])
        rows.append(tuple(row))
    return tuple(rows)


def subgroup_circulant_matrix(sub: Subgroup, ordering=None) -> CirculantMatrix:
    """Circulant matrix of a subgroup realized inside its ambient group."""
    if ordering is None:
        ordering = tuple(sub.sorted_elements())
    ordering = tuple(ordering)
    if set(ordering) != sub.elements:
        raise ValueError("ordering must enumerate the subgroup")
    return CirculantMatrix(sub.parent, ordering, _difference_entries(ordering))


@dataclass(frozen=True)
class EigenPair:
    label: GroupElement  # index j (or a coset representative)
    vector: tuple[Cyclo, ...]
    # eigenvalue as a linear form: coefficient of X_i at position i
    value_coeffs: tuple[Cyclo, ...]


def eigen_system(group: AbelianGroup, ordering=None, ctx: PairingContext | None = None, reps=None) -> list[EigenPair]:
    """Eigenvectors (chi(l_0), ..., chi(l_{t-1})) and eigenvalue linear forms.

    Standalone use: characters of the group via its natural pairing.
    Embedded use: `ordering` lists a subgroup K of ctx.group, `reps` indexes
    the characters by coset representatives of perp(K).
    """
    if ordering is None:
        ordering = lex_ordering(group)
    ordering = tuple(ordering)
    if ctx is None:
        ctx = PairingContext.natural(group)
        labels = list(ordering)
    else:
        labels = list(reps) if reps is not None else list(lex_ordering(ctx.group))
    out = []
    for j in labels:
        vec = tuple(root_of_unity(ctx.k, pairing(ctx, j, l)) for l in ordering)
        out.append(EigenPair(j, vec, vec))
    return out


def verify_eigen_system(mat: CirculantMatrix, pairs: list[EigenPair]) -> bool:
    """Symbolic check of C * psi = Y * psi for every eigenpair."""
    t = len(mat.ordering)
    for pair in pairs:
        for i in range(t):
            lhs: dict[int, Cyclo] = {}
            for jcol in range(t):
                idx = mat.entries[i][jcol]
                lhs[idx] = lhs.get(idx, Cyclo.zero()) + pair.vector[jcol]
            # rhs: (sum_m Y_m X_m) * psi_i
            rhs = {m: pair.value_coeffs[m] * pair.vector[i] for m in range(t)}
            for m in range(t):
                if lhs.get(m, Cyclo.zero()) != rhs.get(m, Cyclo.zero()):
                    return False
    return True


def eigen_factors(group: AbelianGroup, values: list[FracPoly], ordering=None) -> list[FracPoly]:
    """The |G| character combinations of the values whose product is the
    circulant determinant."""
    if ordering is None:
        ordering = lex_ordering(group)
    ordering = tuple(ordering)
    if len(values) != group.order:
        raise ValueError("need one value per group element")
    ctx = PairingContext.natural(group)
    space = values[0].space
    for v in values[1:]:
        space = space.union(v.space)
    vals = [v.in_space(space) for v in values]
    factors = []
    for j in ordering:
        factor = FracPoly.zero(space)
        for l, v in zip(ordering, vals):
            factor = factor + v.scale(root_of_unity(ctx.k, pairing(ctx, j, l)))
        factors.append(factor)
    return factors


def gcirc_det(group: AbelianGroup, values: list[FracPoly], ordering=None) -> FracPoly:
    """Determinant of the circulant matrix with symbols replaced by values."""
    factors = eigen_factors(group, values, ordering)
    result = FracPoly.constant(factors[0].space, 1)
    for factor in factors:
        result = result * factor
    return result


def leibniz_det(mat: CirculantMatrix, values: list[FracPoly]) -> FracPoly:
    """Sign-weighted permutation expansion of the explicit matrix (oracle)."""
    t = len(mat.ordering)
    space = values[0].space
    for v in values[1:]:
        space = space.union(v.space)
    vals = [v.in_space(space) for v in values]
    total = FracPoly.zero(space)
    for perm in itertools.permutations(range(t)):
        sign = _perm_sign(perm)
        term = FracPoly.constant(space, sign)
        for i in range(t):
            term = term * vals[mat.entries[i][perm[i]]]
        total = total + term
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        size = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            size += 1
        if size % 2 == 0:
            sign = -sign
    return sign


# -- normal-form specifications ------------------------------------------------


@dataclass(frozen=True)
class NormalFormSpec:
    moduli: tuple[int, ...]
    k: int
    gamma: tuple[tuple[Fraction, ...], ...]  # (k-1) rows, r columns
    quotient_group: AbelianGroup
    labels: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(p) for p in self.moduli))
        object.__setattr__(
            self, "gamma", tuple(tuple(Fraction(x) for x in row) for row in self.gamma)
        )
        if len(self.gamma) != self.k - 1:
            raise ValueError("gamma must have k-1 rows")
        for row in self.gamma:
            if len(row) != len(self.moduli):
                raise ValueError("gamma rows must match the moduli")

    @property
    def r(self) -> int:
        return len(self.moduli)

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.moduli)

    def w_names(self) -> tuple[str, ...]:
        if self.r == 1:
            return ("w",)
        return tuple(f"w{i+1}" for i in range(self.r))

    def x_names(self) -> tuple[str, ...]:
        return default_x_names(self.k)

    def exponent_elements(self) -> tuple[GroupElement, ...]:
        """Element (p_i gamma_{ji})_i of the acting group, per label row."""
        g = self.group
        out = [g.identity]
        for row in self.gamma:
            out.append(g.element(tuple(int(p * e) for p, e in zip(self.moduli, row))))
        return tuple(out)


def default_x_names(k: int) -> tuple[str, ...]:
    if k == 2:
        return ("z", "x")
    if k == 3:
        return ("z", "y", "x")
    return ("z",) + tuple(f"x{j}" for j in range(1, k))


def cpk_spec(k: int) -> NormalFormSpec:
    """The cyclic circulant normal form of order k (exponent ladder j/k)."""
    if k < 2:
        raise ValueError("order must be >= 2")
    zk = AbelianGroup((k,))
    return NormalFormSpec(
        moduli=(k,),
        k=k,
        gamma=tuple((Fraction(j, k),) for j in range(1, k)),
        quotient_group=zk,
        labels=tuple(zk.element((j,)) for j in range(k)),
    )


def klein_spec() -> NormalFormSpec:
    g = AbelianGroup((2, 2))
    return NormalFormSpec(
        moduli=(2, 2),
        k=4,
        gamma=(
            (Fraction(1, 2), Fraction(0)),
            (Fraction(0), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(1, 2)),
        ),
        quotient_group=g,
        labels=lex_ordering(g),
    )


def z2z4_spec() -> NormalFormSpec:
    """Order-4 cyclic quotient of Z2 x Z4 with non-smooth normalization."""
    z4 = AbelianGroup((4,))
    return NormalFormSpec(
        moduli=(2, 4),
        k=4,
        gamma=(
            (Fraction(1, 2), Fraction(1, 4)),
            (Fraction(0), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(3, 4)),
        ),
        quotient_group=z4,
        labels=tuple(z4.element((j,)) for j in range(4)),
    )


def spec_space(spec: NormalFormSpec, x_names=None) -> VarSpace:
    return VarSpace(
        list(zip(spec.w_names(), spec.moduli)),
        list(x_names) if x_names is not None else list(spec.x_names()),
    )


def spec_values(spec: NormalFormSpec, space: VarSpace, x_names=None) -> list[FracPoly]:
    names = list(x_names) if x_names is not None else list(spec.x_names())
    vals = [FracPoly.variable(space, names[0])]
    for j in range(1, spec.k):
        exps = {names[j]: 1}
        for i, wname in enumerate(spec.w_names()):
            e = spec.gamma[j - 1][i]
            if e:
                exps[wname] = e
        vals.append(FracPoly.monomial(space, exps))
    return vals


def normal_form_poly(spec, x_names=None) -> FracPoly:
    """The defining polynomial; raises NonPolynomial if w-exponents fail to cancel."""
    if isinstance(spec, ProductNormalFormSpec):
        return _product_poly(spec)
    space = spec_space(spec, x_names)
    vals = spec_values(spec, space, x_names)
    poly = gcirc_det(spec.quotient_group, vals, ordering=spec.labels)
    _require_integer_w(poly, spec.w_names())
    return poly


def _require_integer_w(poly: FracPoly, w_names) -> None:
    for key in poly.terms:
        for name in w_names:
            e = Fraction(key[poly.space._index[name]])
            if e.denominator != 1:
                raise NonPolynomial(f"residual fractional exponent {e} on {name}")


@dataclass(frozen=True)
class ProductNormalFormSpec:
    factors: tuple[NormalFormSpec, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")
        moduli = self.factors[0].moduli
        for f in self.factors:
            if f.moduli != moduli:
                raise ValueError("factors must share moduli (omitted divisors use zero columns)")

    @property
    def moduli(self):
        return self.factors[0].moduli

    @property
    def k(self) -> int:
        return sum(f.k for f in self.factors)

    def x_names(self) -> tuple[str, ...]:
        if len(self.factors) == 1:
            return self.factors[0].x_names()
        out = []
        for h, f in enumerate(self.factors):
            out.extend(f"x{h+1}_{j}" for j in range(f.k))
        return tuple(out)


def _product_poly(spec: ProductNormalFormSpec) -> FracPoly:
    names = spec.x_names()
    polys = []
    pos = 0
    for f in spec.factors:
        polys.append(normal_form_poly(f, x_names=names[pos : pos + f.k]))
        pos += f.k
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


# -- validation -----------------------------------------------------------------


@dataclass
class ValidationReport:
    spec: NormalFormSpec
    exponents_in_range: bool
    denominators_realized: tuple[bool, ...]
    labels_enumerate: bool
    multiset_condition: tuple[bool, ...]
    exponent_subgroup: Subgroup | None
    action_permutations: list | None  # one permutation per generator of the acting group
    transitive: bool
    stabilizer: Subgroup | None
    quotient_isomorphic: bool

    @property
    def valid(self) -> bool:
        return (
            self.exponents_in_range
            and all(self.denominators_realized)
            and self.labels_enumerate
            and all(self.multiset_condition)
            and self.exponent_subgroup is not None
            and self.action_permutations is not None
            and self.transitive
            and self.quotient_isomorphic
        )


def validate_normal_form(spec: NormalFormSpec, allow_omitted_divisors: bool = False) -> ValidationReport:
    moduli = spec.moduli
    in_range = all(
        0 <= e < 1 and p % e.denominator == 0
        for row in spec.gamma
        for e, p in zip(row, moduli)
    )
    denom = []
    for i, p in enumerate(moduli):
        col = [row[i] for row in spec.gamma]
        realized = any(e != 0 and e.denominator == p for e in col)
        if allow_omitted_divisors and all(e == 0 for e in col):
            realized = True
        denom.append(realized)
    labels_ok = (
        len(spec.labels) == spec.k
        and spec.labels[0].is_identity()
        and set(spec.labels) == set(spec.quotient_group.elements())
        and spec.quotient_group.order == spec.k
    )
    multiset = []
    for i, p in enumerate(moduli):
        col = [Fraction(0)] + [row[i] for row in spec.gamma]
        want_ok = spec.k % p == 0
        if want_ok:
            counts = {Fraction(q, p): 0 for q in range(p)}
            for e in col:
                if e in counts:
                    counts[e] += 1
                else:
                    want_ok = False
                    break
            if want_ok:
                want_ok = all(c == spec.k // p for c in counts.values())
        if allow_omitted_divisors and all(e == 0 for e in col):
            want_ok = True
        multiset.append(want_ok)

    g = spec.group
    exps = spec.exponent_elements()
    ksub = None
    if len(set(exps)) == spec.k:
        try:
            cand = subgroup_from_generators(g, exps)
            if cand.elements == frozenset(exps):
                ksub = cand
        except ValueError:
            ksub = None

    perms = _eigen_action_permutations(spec)
    transitive = False
    stab = None
    if perms is not None:
        transitive, stab = _orbit_and_stabilizer(spec, perms)
    quotient_iso = False
    if stab is not None:
        quotient_iso = quotient_invariant_factors(g, stab) == invariant_factors(full_subgroup(spec.quotient_group))
    return ValidationReport(
        spec=spec,
        exponents_in_range=in_range,
        denominators_realized=tuple(denom),
        labels_enumerate=labels_ok,
        multiset_condition=tuple(multiset),
        exponent_subgroup=ksub,
        action_permutations=perms,
        transitive=transitive,
        stabilizer=stab,
        quotient_isomorphic=quotient_iso,
    )


def _eigen_action_permutations(spec: NormalFormSpec):
    """For each generator of the acting group, the induced permutation of the
    eigenvalue factors, or None if some factor is not mapped to a factor."""
    gamma_ctx = PairingContext.natural(spec.quotient_group)
    kq = gamma_ctx.k
    # factor j has coefficient phase <j, l_m>/kq on argument m; generator i
    # multiplies argument m by a phase gamma_{mi} (fraction of a full turn).
    phases = [
        [Fraction(pairing(gamma_ctx, j, l), kq) for l in spec.labels] for j in spec.quotient_group.elements()
    ]
    order = {tuple(row): idx for idx, row in enumerate(phases)}
    perms = []
    for i, p in enumerate(spec.moduli):
        shift = [Fraction(0)] + [row[i] for row in spec.gamma]
        perm = []
        for row in phases:
            target = tuple((a + b) % 1 for a, b in zip(row, shift))
            if target not in order:
                return None
            perm.append(order[target])
        perms.append(tuple(perm))
    return perms


def _orbit_and_stabilizer(spec: NormalFormSpec, perms):
    g = spec.group
    k = spec.k

    def act(element: GroupElement, idx: int) -> int:
        for i, n in enumerate(element.residues):
            for _ in range(n):
                idx = perms[i][idx]
        return idx

    orbit = {act(el, 0) for el in g.elements()}
    stab_elems = [el for el in g.elements() if act(el, 0) == 0]
    stab = Subgroup(g, stab_elems)
    return len(orbit) == k, stab


# -- irreducibility and permutation lemmas ---------------------------------------


def irreducible_exponents(k: int, h) -> bool:
    """Whether (h_0, ..., h_{k-1}) is a permutation of {0, ..., k-1}."""
    h = tuple(int(x) % k for x in h)
    if len(h) != k:
        raise ValueError("need k residues")
    return sorted(h) == list(range(k))


def cyclic_factor_orbit_transitive(k: int, h) -> bool | None:
    """Brute-force transitivity of the rotation action on the k factors of
    the determinant with exponents h; None when the action does not permute
    the factors (the product is not invariant)."""
    h = tuple(int(x) % k for x in h)
    factors = [tuple((j * l + h[j]) % k for j in range(k)) for l in range(k)]
    index = {f: i for i, f in enumerate(factors)}
    perm = []
    for l in range(k):
        # the rotation multiplies argument j by eps^{h_j}
        target = tuple((factors[l][j] + h[j]) % k for j in range(k))
        if target not in index:
            return None
        perm.append(index[target])
    orbit = {0}
    frontier = [0]
    while frontier:
        cur = frontier.pop()
        nxt = perm[cur]
        if nxt not in orbit:
            orbit.add(nxt)
            frontier.append(nxt)
    return len(orbit) == k


@dataclass
class PermutationReport:
    h: tuple[int, ...]
    substitution: dict
    verified: bool


def permute_to_standard(h, k: int | None = None) -> PermutationReport:
    """Substitution x_j = y_{h_j} and a symbolic check that it yields the
    standard exponent ladder (1/k, ..., (k-1)/k)."""
    h = tuple(int(x) for x in h)
    if h and h[0] == 0:
        h = h[1:]
    if k is None:
        k = len(h) + 1
    if sorted(h) != list(range(1, k)):
        raise ValueError("h must be a permutation of {1, ..., k-1}")
    space = VarSpace([("w", k)], ["z"] + [f"x{j}" for j in range(1, k)] + [f"y{j}" for j in range(1, k)])
    w_pows = {j: Fraction(h[j - 1], k) for j in range(1, k)}
    lhs_vals = [FracPoly.variable(space, "z")] + [
        FracPoly.monomial(space, {f"x{j}": 1, "w": w_pows[j]}) for j in range(1, k)
    ]
    zk = AbelianGroup((k,))
    lhs = gcirc_det(zk, lhs_vals)
    lhs_sub = lhs.substitute({f"x{j}": FracPoly.variable(space, f"y{h[j-1]}") for j in range(1, k)}, target_space=space)
    rhs_vals = [FracPoly.variable(space, "z")] + [
        FracPoly.monomial(space, {f"y{j}": 1, "w": Fraction(j, k)}) for j in range(1, k)
    ]
    rhs = gcirc_det(zk, rhs_vals)
    return PermutationReport(h=h, substitution={f"x{j}": f"y{h[j-1]}" for j in range(1, k)}, verified=lhs_sub == rhs)


# -- product merge ----------------------------------------------------------------


@dataclass
class MergeReport:
    k: int
    r: int
    # rows: x_{ij} = sum_m coeff * x_{mk+j}
    transform: dict
    verified: bool


def product_merge(k: int, r: int) -> MergeReport:
    """Linear identification of r copies of the order-k ladder with the
    order-rk ladder, with both determinants expanded and compared."""
    if k < 2 or r < 1:
        raise ValueError("need k >= 2 and r >= 1")
    space = VarSpace([("w", k)], [f"x{m}" for m in range(r * k)])
    xs = [FracPoly.variable(space, f"x{m}") for m in range(r * k)]
    transform = {}
    lhs = FracPoly.constant(space, 1)
    zk = AbelianGroup((k,))
    for i in range(r):
        vals = []
        for j in range(k):
            comb = FracPoly.zero(space)
            coeffs = []
            for m in range(r):
                c = root_of_unity(r * k, i * j) * root_of_unity(r, i * m)
                comb = comb + xs[m * k + j].scale(c)
                coeffs.append(c)
            transform[(i, j)] = coeffs
            if j == 0:
                vals.append(comb)
            else:
                vals.append(comb * FracPoly.monomial(space, {"w": Fraction(j, k)}))
        lhs = lhs * gcirc_det(zk, vals)
    zrk = AbelianGroup((r * k,))
    rhs_vals = []
    for m in range(r * k):
        e = Fraction(m % k, k)
        if e:
            rhs_vals.append(xs[m] * FracPoly.monomial(space, {"w": e}))
        else:
            rhs_vals.append(xs[m])
    rhs = gcirc_det(zrk, rhs_vals)
    return MergeReport(k=k, r=r, transform=transform, verified=lhs == rhs)


# -- roots <-> coordinate forms ----------------------------------------------------


@dataclass
class CoordsReport:
    coords: dict  # GroupElement -> FracPoly
    stabilizer: Subgroup
    support: Subgroup
    action: DiagonalAction
    z: str

    def to_roots(self) -> dict:
        """Inverse transform: GroupElement j -> z + b_j reconstructed from coords."""
        g = self.stabilizer.parent
        ctx = PairingContext.natural(g)
        out = {}
        for j in g.elements():
            total = None
            for l, x in self.coords.items():
                term = x.scale(root_of_unity(ctx.k, pairing(ctx, j, l)))
                total = term if total is None else total + term
            out[j] = total
        return out


def roots_to_coords(roots, group: AbelianGroup, v_names, z: str = "z") -> CoordsReport:
    """Averaged coordinate forms of a root system closed under the rotation
    v_i -> e_{p_i} v_i.

    `roots` are the series parts b_i (so the factors are z + b_i); the first
    entry generates the system under the rotation action.
    """
    roots = list(roots)
    if len(roots) != group.order:
        raise ValueError("need |G| roots")
    space = roots[0].space
    for b in roots[1:]:
        space = space.union(b.space)
    space = space.union(VarSpace((), (z,)))
    weights = {}
    for name in space.names:
        weights[name] = tuple(0 for _ in range(group.rank))
    for i, name in enumerate(v_names):
        weights[name] = tuple(1 if t == i else 0 for t in range(group.rank))
    action = DiagonalAction(group, weights)
    base = roots[0].in_space(space)
    translates = {j: apply_group(base, action, j) for j in group.elements()}
    remaining = [b.in_space(space) for b in roots]
    for j, t in translates.items():
        hit = next((idx for idx, b in enumerate(remaining) if b == t), None)
        if hit is None:
            raise ValueError("roots are not closed under the rotation action")
        remaining.pop(hit)
    ctx = PairingContext.natural(group)
    zvar = FracPoly.variable(space, z)
    coords = {}
    n = group.order
    for l in group.elements():
        total = FracPoly.zero(space)
        for j, t in translates.items():
            total = total + (zvar + t).scale(root_of_unity(ctx.k, -pairing(ctx, l, j)))
        coords[l] = total.scale(Fraction(1, n))
    stab = Subgroup(group, [h for h in group.elements() if translates[h] == base])
    comp = perp(ctx, stab)
    for l, x in coords.items():
        if l not in comp and not x.is_zero():
            raise AssertionError("coordinate form supported off the complement")
    return CoordsReport(coords=coords, stabilizer=stab, support=comp, action=action, z=z)


# -- codimension-one factorization ---------------------------------------------------


@dataclass
class Codim1Report:
    index: int
    factor_polys: list
    factor_ladder: NormalFormSpec
    y_names: list
    transform: dict  # y name -> list of (coeff, x name)
    specialized: FracPoly
    verified: bool


def codim1_factor(spec: NormalFormSpec, i: int) -> Codim1Report:
    """Standard circulant factors of the normal form along the stratum where
    only w_i vanishes (units w_h, h != i, absorbed by setting w_h = 1)."""
    report = validate_normal_form(spec)
    if not report.valid:
        raise ValueError("specification fails validation")
    g = spec.group
    p = spec.moduli[i]
    k = spec.k
    ctx = PairingContext.natural(g)
    exps = spec.exponent_elements()
    ksub = report.exponent_subgroup
    stab = perp(ctx, ksub)
    gi = subgroup_from_generators(g, [g.generator(i)])
    big = subgroup_from_generators(g, list(stab.elements) + list(gi.elements))
    cosets = quotient(g, big)
    betas = []
    for rep in cosets.representatives:
        res = list(rep.residues)
        res[i] = 0
        betas.append(g.element(tuple(res)))

    poly = normal_form_poly(spec)
    w_names = spec.w_names()
    x_names = spec.x_names()
    subs = {w_names[h]: 1 for h in range(spec.r) if h != i}
    specialized = poly.substitute(subs) if subs else poly

    factor_space = VarSpace([(w_names[i], p)], list(x_names))
    y_defs = {}
    factor_polys = []
    for b_idx, beta in enumerate(betas):
        args = []
        for mu in range(p):
            comb = FracPoly.zero(factor_space)
            rows = []
            for m in range(k):
                lm = exps[m]
                if lm.residues[i] != mu:
                    continue
                phase = 0
                for h in range(spec.r):
                    if h == i:
                        continue
                    phase += (ctx.k // spec.moduli[h]) * beta.residues[h] * lm.residues[h]
                c = root_of_unity(ctx.k, phase)
                comb = comb + FracPoly.variable(factor_space, x_names[m]).scale(c)
                rows.append((c, x_names[m]))
            y_defs[f"y{b_idx}_{mu}"] = rows
            if mu == 0:
                args.append(comb)
            else:
                args.append(comb * FracPoly.monomial(factor_space, {w_names[i]: Fraction(mu, p)}))
        factor_polys.append(gcirc_det(AbelianGroup((p,)), args))
    total = factor_polys[0]
    for f in factor_polys[1:]:
        total = total * f
    verified = total == specialized.in_space(total.space.union(specialized.space))
    return Codim1Report(
        index=i,
        factor_polys=factor_polys,
        factor_ladder=cpk_spec(p),
        y_names=sorted(y_defs),
        transform=y_defs,
        specialized=specialized,
        verified=verified,
    )


# -- exponent cleaning ------------------------------------------------------------


@dataclass
class CleanedLadder:
    order: tuple[int, ...]  # input row indices, stage by stage
    delta: tuple[tuple[Fraction, ...], ...]
    beta: tuple[tuple[int, ...], ...]


def clean_exponents(gamma_raw, moduli) -> CleanedLadder:
    """Sort rows by successive termwise minima and split the increments into
    integer parts and fractional parts delta_{ji} in (1/p_i){0..p_i-1}.

    Fails (ValueError) when no termwise-minimal row exists at some stage.
    """
    moduli = tuple(int(p) for p in moduli)
    rows = [tuple(Fraction(x) for x in row) for row in gamma_raw]
    for row in rows:
        for e, p in zip(row, moduli):
            if e < 0 or p % e.denominator != 0:
                raise ValueError(f"exponent {e} incompatible with modulus {p}")
    remaining = list(range(len(rows)))
    prev = tuple(Fraction(0) for _ in moduli)
    order, deltas, betas = [], [], []
    while remaining:
        minimal = None
        for idx in remaining:
            if all(rows[idx][t] <= rows[j][t] for j in remaining for t in range(len(moduli))):
                minimal = idx
                break
        if minimal is None:
            raise ValueError("no termwise-minimal exponent row; not of invariant-compatible shape")
        inc = tuple(a - b for a, b in zip(rows[minimal], prev))
        delta = tuple(e - int(e) for e in inc)
        beta = tuple(int(e) for e in inc)
        deltas.append(delta)
        betas.append(beta)
        order.append(minimal)
        prev = rows[minimal]
        remaining.remove(minimal)
    return CleanedLadder(order=tuple(order), delta=tuple(deltas), beta=tuple(betas))
