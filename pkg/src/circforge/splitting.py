"""Truncated factorization of a monic polynomial in z into linear factors.

Given f monic of degree k in z whose other coefficients vanish at the
origin, the engine searches for roots b_1, ..., b_k (power series truncated
at a total-degree bound) with f = prod (z + b_i) modulo that bound, after
divisorial variables have been replaced by p-th powers to clear fractional
exponents.

The search lifts one root at a time, degree by degree: the Newton polygon
of the residual (with respect to z and the total degree of the remaining
variables) dictates the admissible degrees for the next homogeneous part,
and each admissible initial form yields one branch.  Edge equations are
solved by exact division (linear), homogeneous radicals (binomial and
quadratic), exponent-gcd substitution, square-free reduction, and monomial
root candidates with exactly solved scalars.  Anything beyond that is
reported as an obstruction rather than guessed at: the procedure is a
semi-decision by design, since no a-priori bound on the blow-ups needed is
available.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclo, cyclo_nth_root, root_of_unity
from .polyring import FracPoly, VarSpace, divide_exact, substitute_power, truncate

DEFAULT_DEGREE_BOUND = 12
DEFAULT_BRANCH_CAP = 64


def _default_bound() -> int:
    env = os.environ.get("CIRCFORGE_DEGREE_BOUND")
    return int(env) if env else DEFAULT_DEGREE_BOUND


class NoSplit(Exception):
    """No branch of the search closes by the degree bound."""

    def __init__(self, degree, reason: str):
        self.degree = degree
        self.reason = reason
        super().__init__(f"no splitting found (obstruction at degree {degree}): {reason}")


class Ambiguous(Exception):
    """The branch budget was exhausted before the search finished."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"branch cap {cap} exceeded")


@dataclass
class _SearchState:
    z: str
    bound: int
    cap: int
    branches: int = 0
    best_degree: Fraction = Fraction(0)
    best_reason: str = "no admissible initial part"

    def note_obstruction(self, degree, reason: str):
        if degree >= self.best_degree:
            self.best_degree = degree
            self.best_reason = reason

    def charge_branch(self):
        self.branches += 1
        if self.branches > self.cap:
            raise Ambiguous(self.cap)


def clear_denominators(f: FracPoly, powers) -> FracPoly:
    """Apply substitute_power to every divisorial variable of f."""
    g = f
    for name in list(f.space.div_names):
        p = powers if isinstance(powers, int) else powers[name]
        g = substitute_power(g, name, p)
    return g


def split_newton(
    f: FracPoly,
    z: str,
    powers=1,
    degree_bound: int | None = None,
    branch_cap: int | None = None,
) -> list[FracPoly]:
    """Roots b_1..b_k with f(w -> v^p, ..., z) = prod(z + b_i) mod degree bound.

    Raises NoSplit (with the obstruction degree) or Ambiguous.
    """
    d = _default_bound() if degree_bound is None else degree_bound
    cap = DEFAULT_BRANCH_CAP if branch_cap is None else branch_cap
    g = clear_denominators(f, powers)
    coeffs = g.coefficients_in(z)
    k = max(coeffs)
    if k < 1 or not coeffs[k].is_constant() or coeffs[k].constant_coefficient() != 1:
        raise ValueError("polynomial must be monic in z")
    for m, c in coeffs.items():
        if m < k and not c.constant_coefficient().is_zero():
            raise ValueError("non-leading coefficients must vanish at the origin")
    state = _SearchState(z=z, bound=d, cap=cap)
    roots = _find_roots(g, k, state)
    if roots is None:
        raise NoSplit(state.best_degree, state.best_reason)
    if not verify_split(f, powers, roots, d, z=z):
        raise NoSplit(state.best_degree, "candidate factorization failed verification")
    return roots


def verify_split(f: FracPoly, powers, roots, degree_bound: int | None = None, z: str = "z") -> bool:
    """Whether f (after clearing denominators) equals prod(z + b_i) mod the bound."""
    d = _default_bound() if degree_bound is None else degree_bound
    g = clear_denominators(f, powers)
    coeffs = g.coefficients_in(z)
    if len(roots) != max(coeffs):
        return False
    prod = FracPoly.constant(g.space, 1)
    zvar = FracPoly.variable(g.space, z)
    for b in roots:
        prod = truncate(prod * (zvar + b), d, exclude={z})
    return truncate(g - prod, d, exclude={z}).is_zero()


# -- the search ---------------------------------------------------------------


def _find_roots(g: FracPoly, k: int, state: _SearchState):
    if k == 0:
        return []
    zero = FracPoly.zero(g.space)
    for b in _root_candidates(g, zero, 1, state):
        rest = _find_roots(_deflate(g, b, state), k - 1, state)
        if rest is not None:
            return [b] + rest
    return None


def _psi_coefficients(g: FracPoly, b: FracPoly, state: _SearchState) -> dict:
    """Coefficients of Y in g(z = -b - Y), truncated past the degree bound."""
    aux = "$Y"
    space = g.space.union(VarSpace((), (aux,)))
    shifted = g.substitute({state.z: -(b.in_space(space)) - FracPoly.variable(space, aux)}, target_space=space)
    return {m: truncate(c, state.bound) for m, c in shifted.coefficients_in(aux).items() if not c.is_zero()}


def _root_candidates(g: FracPoly, b: FracPoly, delta_min, state: _SearchState):
    psi = _psi_coefficients(g, b, state)
    c0 = psi.get(0)
    if c0 is None or c0.is_zero() or c0.order() > state.bound:
        yield b
        return
    points = sorted((m, c.order()) for m, c in psi.items())
    for a_pt, b_pt in _lower_hull_edges(points):
        (ma, oa), (mb, ob) = a_pt, b_pt
        slope = Fraction(oa - ob, mb - ma)
        if slope <= 0:
            continue
        if slope.denominator != 1:
            state.note_obstruction(b.total_degree() or 0, f"fractional degree {slope} forced for the next part")
            continue
        if slope < delta_min:
            continue
        if slope > state.bound:
            state.note_obstruction(c0.order(), "residual order exceeds all admissible part degrees")
            continue
        delta = int(slope)
        ins = []
        for m in range(ma, mb + 1):
            want = oa - delta * (m - ma)
            cm = psi.get(m)
            part = cm.homogeneous_parts().get(Fraction(want), None) if cm is not None else None
            if part is not None and not part.is_zero():
                ins.append((m - ma, part))
        for h in _solve_edge(ins, delta, g.space, state):
            state.charge_branch()
            yield from _root_candidates(g, b + h, delta + 1, state)
    state.note_obstruction(c0.order(), "no branch closes at this degree")


def _lower_hull_edges(points):
    """Edges of the lower convex hull of integer points (m, order)."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return list(zip(hull, hull[1:]))


def _solve_edge(ins, delta: int, space: VarSpace, state: _SearchState):
    """Nonzero homogeneous degree-delta roots of sum_m form_m * Y^m.

    Linear and binomial edges are solved directly, quadratics through the
    discriminant; longer edges are attacked by recursing on the gcd of the
    exponents (Y -> Y^d) and by stripping repeated factors via the
    derivative gcd before giving up.
    """
    if not ins:
        return []
    terms = {m: f for m, f in ins}
    n = max(terms)
    if n == 0 or 0 not in terms:
        return []
    if n == 1:
        h = divide_exact(-terms[0], terms[1])
        return [h] if h is not None else []
    if set(terms) == {0, n}:
        f = divide_exact(-terms[0], terms[n])
        if f is None:
            return []
        g = _form_nth_root(f, n)
        if g is None:
            state.note_obstruction(delta, f"initial form is not an exact {n}-th power")
            return []
        return [g.scale(root_of_unity(n, t)) for t in range(n)]
    d = 0
    for m in terms:
        d = gcd(d, m)
    if d > 1:
        inner = {m // d: f for m, f in terms.items()}
        out = []
        for w in _solve_edge(sorted(inner.items()), delta * d, space, state):
            g = _form_nth_root(w, d)
            if g is None:
                state.note_obstruction(delta, f"edge sub-root is not an exact {d}-th power")
                continue
            out.extend(g.scale(root_of_unity(d, t)) for t in range(d))
        return out
    if n == 2:
        a0, a1, a2 = terms[0], terms[1], terms[2]
        disc = a1 * a1 - a0 * a2 * 4
        if disc.is_zero():
            h = divide_exact(-a1, a2 * 2)
            return [h] if h is not None else []
        sq = _form_nth_root(disc, 2)
        if sq is None:
            state.note_obstruction(delta, "quadratic edge discriminant is not a square")
            return []
        out = []
        for s in (sq, -sq):
            h = divide_exact(-a1 + s, a2 * 2)
            if h is not None and not h.is_zero():
                out.append(h)
        return out
    reduced = _strip_repeated_factors(terms, space)
    if reduced is not None and reduced and max(reduced) < n:
        return _solve_edge(sorted(reduced.items()), delta, space, state)
    mono = _monomial_root_candidates(terms, delta, space)
    if mono:
        return mono
    state.note_obstruction(delta, f"edge equation of extent {n} with interior terms is unsupported")
    return []


def _monomial_root_candidates(terms: dict, delta: int, space: VarSpace):
    """Roots of the form scalar * monomial, found by sweeping the monomial
    divisors of constant/lead and solving for the scalar exactly.

    Covers edges whose roots all have monomial initial forms (the product
    circulant shapes); the scalar conditions are intersected through a
    univariate gcd over the cyclotomic field.
    """
    n = max(terms)
    const, lead = terms[0], terms[n]
    if len(const.terms) != 1 or len(lead.terms) != 1:
        return []
    ratio = divide_exact(const, lead)
    if ratio is None or len(ratio.terms) != 1:
        return []
    (rkey, _rc), = ratio.terms.items()
    out = []
    aux = "$T"
    space0 = ratio.space
    for f in terms.values():
        space0 = space0.union(f.space)
    tspace = space0.union(VarSpace((), (aux,)))
    for key in _divisors_of_degree(rkey, delta, ratio.space):
        mono = FracPoly(ratio.space, {key: Cyclo.one()})
        cand = FracPoly.monomial(tspace, {aux: 1}) * mono.in_space(tspace)
        val = FracPoly.zero(tspace)
        for m, f in terms.items():
            val = val + f.in_space(tspace) * cand ** m
        buckets = val.coefficients_in(aux)
        # per residual monomial, a univariate condition on the scalar
        conditions: dict = {}
        for tdeg, coeffpoly in buckets.items():
            for key2, c in coeffpoly.terms.items():
                conditions.setdefault(key2, {})[tdeg] = c
        uni = None
        for cond in conditions.values():
            vec = [cond.get(i, Cyclo.zero()) for i in range(max(cond) + 1)]
            uni = vec if uni is None else _cyclo_poly_gcd(uni, vec)
            if uni is not None and len(uni) == 1:
                break
        for c in _cyclo_poly_roots(uni):
            h = mono.scale(c)
            check = FracPoly.zero(space0)
            for m, f in terms.items():
                check = check + f.in_space(space0) * h.in_space(space0) ** m
            if check.is_zero() and not any(h == o for o in out):
                out.append(h)
    return out


def _divisors_of_degree(key, delta: int, space: VarSpace):
    ranges = []
    for e in key:
        e = int(e)
        ranges.append(range(0, e + 1))
    def rec(i, left, acc):
        if i == len(ranges):
            if left == 0:
                yield tuple(acc)
            return
        for v in ranges[i]:
            if v <= left:
                yield from rec(i + 1, left - v, acc + [v])
    yield from rec(0, delta, [])


def _cyclo_poly_gcd(a: list, b: list):
    """Monic gcd of univariate polynomials with cyclotomic coefficients."""
    def trim(p):
        while p and p[-1].is_zero():
            p = p[:-1]
        return p
    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = b[-1].inverse()
        r = list(a)
        while len(r) >= len(b) and trim(r):
            r = trim(r)
            if len(r) < len(b):
                break
            q = r[-1] * inv
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = r[shift + i] - q * c
            r = trim(r)
        a, b = b, trim(r)
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _cyclo_poly_roots(p):
    """Nonzero roots of a univariate cyclotomic polynomial: linear,
    quadratic, and binomial cases."""
    if not p or len(p) == 1:
        return []
    while p and p[0].is_zero():
        p = p[1:]  # drop zero roots
    if len(p) <= 1:
        return []
    if len(p) == 2:
        return [-(p[0] * p[1].inverse())]
    if len(p) == 3:
        a0, a1, a2 = p
        disc = a1 * a1 - a0 * a2 * 4
        sq = cyclo_nth_root(disc, 2)
        if sq is None:
            return []
        inv = (a2 * 2).inverse()
        roots = [(-a1 + sq) * inv, (-a1 - sq) * inv]
        return [r for r in roots if not r.is_zero()]
    if all(c.is_zero() for c in p[1:-1]):
        d = len(p) - 1
        base = cyclo_nth_root(-(p[0] * p[-1].inverse()), d)
        if base is None:
            return []
        return [base * root_of_unity(d, t) for t in range(d)]
    return []


def _strip_repeated_factors(terms: dict, space: VarSpace):
    """Square-free part (in Y) of an edge polynomial, or None.

    Pseudo-Euclid against the Y-derivative with monomial content stripping;
    the root set is unchanged, only multiplicities drop.
    """
    deriv = {m - 1: f.scale(m) for m, f in terms.items() if m >= 1}
    g = _poly_gcd_y(terms, deriv, space)
    if g is None or max(g) == 0:
        return None
    quot = _poly_div_y(terms, g)
    return quot


def _poly_gcd_y(a: dict, b: dict, space: VarSpace, rounds: int = 24):
    a, b = dict(a), dict(b)
    while b:
        if max(b) == 0:
            return {0: FracPoly.constant(space, 1)}
        r = _pseudo_rem_y(a, b)
        if r is None:
            return None
        a, b = b, _strip_monomial_content(r)
        rounds -= 1
        if rounds <= 0:
            return None
    return _make_monic_y(_strip_monomial_content(a))


def _make_monic_y(p: dict):
    """Divide out the leading coefficient when every division is exact."""
    if not p:
        return p
    lead = p[max(p)]
    out = {}
    for m, f in p.items():
        q = divide_exact(f, lead)
        if q is None:
            return p
        out[m] = q
    return out


def _pseudo_rem_y(a: dict, b: dict):
    da, db = max(a), max(b)
    if da < db:
        return dict(a)
    lead = b[db]
    work = dict(a)
    for _ in range(da - db + 1):
        if not work:
            return {}
        dw = max(work)
        if dw < db:
            break
        lw = work[dw]
        nxt: dict = {}
        for m, f in work.items():
            if m == dw:
                continue
            nxt[m] = f * lead
        for m, f in b.items():
            if m == db:
                continue
            shift = dw - db + m
            cur = nxt.get(shift)
            term = lw * f
            val = -term if cur is None else cur - term
            if not val.is_zero():
                nxt[shift] = val
            elif shift in nxt:
                del nxt[shift]
        work = nxt
    return work


def _strip_monomial_content(p: dict):
    if not p:
        return p
    forms = list(p.values())
    space = forms[0].space
    nvars = len(space.names)
    mins = None
    for f in forms:
        for key in f.terms:
            if mins is None:
                mins = list(key)
            else:
                mins = [min(a, b) for a, b in zip(mins, key)]
    if mins is None or all(e == 0 for e in mins):
        return p
    mono = FracPoly(space, {tuple(mins): 1})
    out = {}
    for m, f in p.items():
        q = divide_exact(f, mono)
        if q is None:
            return p
        out[m] = q
    return out


def _poly_div_y(a: dict, b: dict):
    """Exact quotient of polynomials in Y with form coefficients, or None."""
    da, db = max(a), max(b)
    if da < db:
        return None
    work = dict(a)
    quot: dict = {}
    for dw in range(da, db - 1, -1):
        coeff = work.get(dw)
        if coeff is None:
            continue
        q = divide_exact(coeff, b[db])
        if q is None:
            return None
        quot[dw - db] = q
        for m, f in b.items():
            shift = dw - db + m
            cur = work.get(shift, None)
            term = q * f
            val = -term if cur is None else cur - term
            if val is None or val.is_zero():
                work.pop(shift, None)
            else:
                work[shift] = val
    if any(not f.is_zero() for f in work.values()):
        return None
    return quot


def _form_nth_root(f: FracPoly, n: int):
    """Exact n-th root of a homogeneous polynomial, or None."""
    if f.is_zero():
        return f
    lead_key = max(f.terms)
    lead = FracPoly(f.space, {lead_key: f.terms[lead_key]})
    g0 = _monomial_nth_root(lead, n)
    if g0 is None:
        return None
    g = g0
    denom = g0 ** (n - 1) * n
    for _ in range(len(f.terms) * n + 8):
        r = f - g ** n
        if r.is_zero():
            return g
        rkey = max(r.terms)
        corr = divide_exact(FracPoly(r.space, {rkey: r.terms[rkey]}), denom)
        if corr is None or corr.total_degree() != g0.total_degree():
            return None
        g = g + corr
    return None


def _monomial_nth_root(mono: FracPoly, n: int):
    (key, coeff), = mono.terms.items()
    new = []
    for i, e in enumerate(key):
        q = Fraction(e, n)
        if i >= mono.space.ndiv and q.denominator != 1:
            return None
        if i < mono.space.ndiv and mono.space.div_bounds[i] % q.denominator != 0:
            return None
        new.append(q if i < mono.space.ndiv else int(q))
    c = cyclo_nth_root(coeff, n)
    if c is None:
        return None
    return FracPoly(mono.space, {tuple(new): c})


def _deflate(g: FracPoly, b: FracPoly, state: _SearchState) -> FracPoly:
    """Quotient of g by (z + b), coefficients truncated at the degree bound."""
    coeffs = g.coefficients_in(state.z)
    k = max(coeffs)
    zero = FracPoly.zero(g.space)
    q = {k - 1: coeffs.get(k, zero)}
    for m in range(k - 1, 0, -1):
        q[m - 1] = truncate(coeffs.get(m, zero) - b * q[m], state.bound)
    zvar = FracPoly.variable(g.space, state.z)
    out = FracPoly.zero(g.space)
    for m, c in q.items():
        out = out + c * zvar ** m
    return out
