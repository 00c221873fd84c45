"""Sparse multivariate polynomials over Q(e) with fractional divisorial exponents.

A variable space splits into divisorial variables (each with a declared
denominator bound p, exponents in (1/p) * Z>=0) and free variables (integer
exponents, negative allowed for the Laurent fragments used by chart
transitions).  Coefficients are exact cyclotomic numbers.

Total degree counts fractional exponents at face value, matching the
weighted-order bookkeeping used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .abelian import AbelianGroup, GroupElement
from .cyclotomic import Cyclo, root_of_unity


class VarSpace:
    """Named divisorial variables (with denominator bounds) plus free variables."""

    __slots__ = ("div_names", "div_bounds", "free_names", "_index")

    def __init__(self, divisorial=(), free=()):
        names = []
        bounds = []
        for item in divisorial:
            if isinstance(item, str):
                names.append(item)
                bounds.append(1)
            else:
                name, bound = item
                names.append(name)
                bounds.append(int(bound))
        self.div_names = tuple(names)
        self.div_bounds = tuple(bounds)
        self.free_names = tuple(free)
        if any(b < 1 for b in self.div_bounds):
            raise ValueError("denominator bounds must be >= 1")
        all_names = self.div_names + self.free_names
        if len(set(all_names)) != len(all_names):
            raise ValueError("variable names must be distinct")
        self._index = {n: i for i, n in enumerate(all_names)}

    @property
    def names(self):
        return self.div_names + self.free_names

    @property
    def ndiv(self):
        return len(self.div_names)

    def bound(self, name: str) -> int:
        return self.div_bounds[self.div_names.index(name)]

    def is_divisorial(self, name: str) -> bool:
        return name in self.div_names

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other):
        return (
            isinstance(other, VarSpace)
            and self.div_names == other.div_names
            and self.div_bounds == other.div_bounds
            and self.free_names == other.free_names
        )

    def __hash__(self):
        return hash((self.div_names, self.div_bounds, self.free_names))

    def __repr__(self):
        div = ", ".join(f"{n}(1/{b})" for n, b in zip(self.div_names, self.div_bounds))
        return f"VarSpace([{div}]; [{', '.join(self.free_names)}])"

    def union(self, other: "VarSpace") -> "VarSpace":
        """Merge two spaces; shared divisorial names take the lcm bound."""
        div = list(zip(self.div_names, self.div_bounds))
        seen = dict(div)
        for n, b in zip(other.div_names, other.div_bounds):
            if n in seen:
                seen[n] = lcm(seen[n], b)
            elif n in self.free_names:
                raise ValueError(f"variable {n} is divisorial in one space and free in the other")
            else:
                div.append((n, b))
                seen[n] = b
        div = [(n, seen[n]) for n, _ in div]
        free = list(self.free_names)
        for n in other.free_names:
            if n in seen:
                raise ValueError(f"variable {n} is divisorial in one space and free in the other")
            if n not in free:
                free.append(n)
        return VarSpace(div, free)


def _check_exponent(space: VarSpace, pos: int, e):
    if pos < space.ndiv:
        e = Fraction(e)
        if e < 0:
            raise ValueError(f"negative exponent on divisorial variable {space.names[pos]}")
        if space.div_bounds[pos] % e.denominator != 0:
            raise ValueError(
                f"exponent {e} on {space.names[pos]} has denominator outside 1/{space.div_bounds[pos]}"
            )
        return e
    if isinstance(e, Fraction):
        if e.denominator != 1:
            raise ValueError(f"fractional exponent {e} on free variable {space.names[pos]}")
        e = e.numerator
    return int(e)


class FracPoly:
    """Polynomial with canonical term map {exponent vector: nonzero Cyclo}."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict | None = None):
        self.space = space
        clean = {}
        if terms:
            for key, coeff in terms.items():
                coeff = coeff if isinstance(coeff, Cyclo) else Cyclo.rational(coeff)
                if coeff.is_zero():
                    continue
                key = tuple(_check_exponent(space, i, e) for i, e in enumerate(key))
                if key in clean:
                    coeff = clean[key] + coeff
                    if coeff.is_zero():
                        del clean[key]
                        continue
                clean[key] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def _raw(space: VarSpace, terms: dict) -> "FracPoly":
        # terms already canonical: validated keys, no zero coefficients
        out = object.__new__(FracPoly)
        out.space = space
        out.terms = terms
        return out

    @staticmethod
    def zero(space: VarSpace) -> "FracPoly":
        return FracPoly(space, {})

    @staticmethod
    def constant(space: VarSpace, c) -> "FracPoly":
        n = len(space.names)
        return FracPoly(space, {(Fraction(0),) * space.ndiv + (0,) * (n - space.ndiv): c})

    @staticmethod
    def variable(space: VarSpace, name: str) -> "FracPoly":
        return FracPoly.monomial(space, {name: 1})

    @staticmethod
    def monomial(space: VarSpace, exps: dict, coeff=1) -> "FracPoly":
        for n in exps:
            if n not in space:
                raise ValueError(f"variable {n} not in the space")
        key = []
        for i, n in enumerate(space.names):
            e = exps.get(n, 0)
            key.append(Fraction(e) if i < space.ndiv else e)
        return FracPoly(space, {tuple(key): coeff})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(self._term_degree(k) == 0 and all(e == 0 for e in k) for k in self.terms)

    def constant_coefficient(self) -> Cyclo:
        n = len(self.space.names)
        key = (Fraction(0),) * self.space.ndiv + (0,) * (n - self.space.ndiv)
        return self.terms.get(key, Cyclo.zero())

    def _term_degree(self, key) -> Fraction:
        return sum(key, Fraction(0))

    def total_degree(self):
        """Maximal face-value term degree (None for the zero polynomial)."""
        if not self.terms:
            return None
        return max(self._term_degree(k) for k in self.terms)

    def order(self, exclude: frozenset | set = frozenset()):
        """Minimal term degree, optionally ignoring some variables."""
        if not self.terms:
            return None
        idx = [i for i, n in enumerate(self.space.names) if n not in exclude]
        return min(sum((k[i] for i in idx), Fraction(0)) for k in self.terms)

    def degree_in(self, name: str):
        if not self.terms:
            return None
        i = self.space._index[name]
        return max(k[i] for k in self.terms)

    def sorted_terms(self):
        """Deterministic term order: ascending total degree, then exponents."""
        return sorted(self.terms.items(), key=lambda kv: (self._term_degree(kv[0]), kv[0]))

    def homogeneous_parts(self, exclude: frozenset | set = frozenset()) -> dict:
        """Split into {degree: part}, degree over variables not excluded."""
        idx = [i for i, n in enumerate(self.space.names) if n not in exclude]
        parts: dict = {}
        for key, coeff in self.terms.items():
            d = sum((key[i] for i in idx), Fraction(0))
            parts.setdefault(d, {})[key] = coeff
        return {d: FracPoly(self.space, t) for d, t in sorted(parts.items())}

    def coefficients_in(self, name: str) -> dict:
        """{exponent of name: coefficient polynomial without name}.

        Requires integer exponents on name (it may be divisorial).
        """
        i = self.space._index[name]
        out: dict = {}
        for key, coeff in self.terms.items():
            e = key[i]
            if Fraction(e).denominator != 1:
                raise ValueError(f"non-integer exponent on {name}")
            newkey = list(key)
            newkey[i] = Fraction(0) if i < self.space.ndiv else 0
            k2 = tuple(newkey)
            bucket = out.setdefault(int(e), {})
            cur = bucket.get(k2)
            bucket[k2] = coeff if cur is None else cur + coeff
        return {e: FracPoly(self.space, t) for e, t in out.items()}

    # -- space handling -----------------------------------------------------

    def in_space(self, space: VarSpace) -> "FracPoly":
        """Re-express in a larger (or reordered) space containing all variables."""
        if space == self.space:
            return self
        pos = []
        for n in self.space.names:
            if n not in space:
                raise ValueError(f"target space is missing variable {n}")
            pos.append(space._index[n])
        n_all = len(space.names)
        terms = {}
        zero_key = [Fraction(0)] * space.ndiv + [0] * (n_all - space.ndiv)
        for key, coeff in self.terms.items():
            new = list(zero_key)
            for p, e in zip(pos, key):
                new[p] = Fraction(e) if p < space.ndiv else int(e)
            terms[tuple(new)] = coeff
        return FracPoly._raw(space, terms)

    @staticmethod
    def _aligned(a: "FracPoly", b: "FracPoly"):
        if a.space == b.space:
            return a, b
        space = a.space.union(b.space)
        return a.in_space(space), b.in_space(space)

    def _coerce(self, x):
        if isinstance(x, FracPoly):
            return x
        if isinstance(x, (int, Fraction, Cyclo)):
            return FracPoly.constant(self.space, x)
        raise TypeError(f"cannot coerce {type(x).__name__} to FracPoly")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        a, b = FracPoly._aligned(self, other)
        terms = dict(a.terms)
        for key, coeff in b.terms.items():
            cur = terms.get(key)
            s = coeff if cur is None else cur + coeff
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return FracPoly._raw(a.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return FracPoly._raw(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = FracPoly._aligned(self, other)
        terms: dict = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(k1, k2))
                c = c1 * c2
                cur = terms.get(key)
                s = c if cur is None else cur + c
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return FracPoly._raw(a.space, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only via monomial division")
        acc = FracPoly.constant(self.space, 1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def scale(self, c) -> "FracPoly":
        c = c if isinstance(c, Cyclo) else Cyclo.rational(c)
        if c.is_zero():
            return FracPoly._raw(self.space, {})
        return FracPoly._raw(self.space, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            other = FracPoly.constant(self.space, other)
        if not isinstance(other, FracPoly):
            return NotImplemented
        a, b = FracPoly._aligned(self, other)
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[k] == b.terms[k] for k in a.terms)

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    # -- calculus and substitution -------------------------------------------

    def derivative(self, name: str) -> "FracPoly":
        i = self.space._index[name]
        terms = {}
        for key, coeff in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            new = list(key)
            new[i] = e - 1
            terms[tuple(new)] = coeff * Fraction(e)
        return FracPoly(self.space, terms)

    def substitute(self, mapping: dict, target_space: VarSpace | None = None) -> "FracPoly":
        """Simultaneous substitution name -> polynomial (or scalar).

        Unlisted variables persist.  Fractional or negative powers of a
        substituted variable require the image to be a one-term monomial
        whose exponents stay legal; coefficients are then raised through
        cyclotomic roots of unity only when the power is integral, so a
        fractional power additionally requires coefficient 1.
        """
        space = target_space
        if space is None:
            space = VarSpace((), ())
            keep_div = [
                (n, b)
                for n, b in zip(self.space.div_names, self.space.div_bounds)
                if n not in mapping
            ]
            keep_free = [n for n in self.space.free_names if n not in mapping]
            space = VarSpace(keep_div, keep_free)
            for val in mapping.values():
                if isinstance(val, FracPoly):
                    space = space.union(val.space)
        images = {}
        for name, val in mapping.items():
            if name not in self.space:
                raise ValueError(f"substituted variable {name} not in the space")
            images[name] = val if isinstance(val, FracPoly) else FracPoly.constant(space, val)
        out = FracPoly.zero(space)
        for key, coeff in self.terms.items():
            term = FracPoly.constant(space, coeff)
            for i, e in enumerate(key):
                if e == 0:
                    continue
                name = self.space.names[i]
                if name in images:
                    term = term * _poly_power(images[name].in_space(space), e)
                else:
                    term = term * FracPoly.monomial(space, {name: e})
            out = out + term
        return out

    def rename(self, mapping: dict) -> "FracPoly":
        """Rename variables (keeping kinds and bounds)."""
        div = [(mapping.get(n, n), b) for n, b in zip(self.space.div_names, self.space.div_bounds)]
        free = [mapping.get(n, n) for n in self.space.free_names]
        space = VarSpace(div, free)
        return FracPoly(space, dict(self.terms))

    def __repr__(self):
        return f"FracPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, coeff in self.sorted_terms():
            mono = []
            for i, e in enumerate(key):
                if e == 0:
                    continue
                name = self.space.names[i]
                if e == 1:
                    mono.append(name)
                else:
                    mono.append(f"{name}^{e}" if Fraction(e).denominator == 1 else f"{name}^({e})")
            mono_s = "*".join(mono)
            if coeff.is_rational():
                q = coeff.as_rational()
                if not mono_s:
                    c_s = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
                elif q == 1:
                    c_s = mono_s
                elif q == -1:
                    c_s = f"-{mono_s}"
                else:
                    qs = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
                    c_s = f"{qs}*{mono_s}"
            else:
                c_s = f"({coeff})*{mono_s}" if mono_s else f"({coeff})"
            chunks.append(c_s)
        out = chunks[0]
        for c in chunks[1:]:
            out += f" - {c[1:]}" if c.startswith("-") else f" + {c}"
        return out


def _poly_power(p: FracPoly, e) -> FracPoly:
    e = Fraction(e)
    if e.denominator == 1 and e >= 0:
        return p ** int(e)
    if len(p.terms) != 1:
        raise ValueError(f"cannot raise a {len(p.terms)}-term polynomial to power {e}")
    (key, coeff), = p.terms.items()
    if e.denominator != 1 and coeff != Cyclo.one():
        raise ValueError(f"fractional power {e} of a monomial with coefficient {coeff}")
    new = []
    for i, ke in enumerate(key):
        new.append(_check_exponent(p.space, i, Fraction(ke) * e))
    c = coeff ** int(e) if e.denominator == 1 else Cyclo.one()
    return FracPoly(p.space, {tuple(new): c})


# -- named operations --------------------------------------------------------


def substitute_power(f: FracPoly, name: str, p: int, new_name: str | None = None) -> FracPoly:
    """Replace the divisorial variable name by new_name**p (clearing denominators)."""
    if p < 1:
        raise ValueError("power must be positive")
    if not f.space.is_divisorial(name):
        raise ValueError(f"{name} is not a divisorial variable")
    i = f.space._index[name]
    for key in f.terms:
        if (Fraction(key[i]) * p).denominator != 1:
            raise ValueError(f"power {p} does not clear the denominators of {name}")
    if new_name is None:
        new_name = "v" + name[1:] if name.startswith("w") else f"v_{name}"
    keep_div = [(n, b) for n, b in zip(f.space.div_names, f.space.div_bounds) if n != name]
    space = VarSpace(keep_div, f.space.free_names + (new_name,))
    image = FracPoly.monomial(space, {new_name: p})
    return f.substitute({name: image}, target_space=space)


def strict_transform(f: FracPoly, name: str) -> tuple[FracPoly, Fraction]:
    """Divide out the largest power of name; returns (quotient, multiplicity)."""
    if f.is_zero():
        raise ValueError("strict transform of the zero polynomial")
    i = f.space._index[name]
    mult = min(Fraction(key[i]) for key in f.terms)
    if mult == 0:
        return f, Fraction(0)
    terms = {}
    for key, coeff in f.terms.items():
        new = list(key)
        new[i] = key[i] - mult if i < f.space.ndiv else int(key[i] - mult)
        terms[tuple(new)] = coeff
    return FracPoly._raw(f.space, terms), mult


def truncate(f: FracPoly, d, exclude: frozenset | set = frozenset()) -> FracPoly:
    """Drop terms of total degree > d (face-value degrees; exclude is ignored in the count)."""
    if Fraction(d) < 0:
        raise ValueError("degree bound must be >= 0")
    idx = [i for i, n in enumerate(f.space.names) if n not in exclude]
    terms = {k: c for k, c in f.terms.items() if sum((k[i] for i in idx), Fraction(0)) <= d}
    return FracPoly._raw(f.space, terms)


def divide_exact(f: FracPoly, g: FracPoly):
    """Exact quotient f / g in the polynomial ring, or None.

    Plain long division against the single divisor g using the
    deterministic term order; sufficient for the homogeneous and monomial
    divisions needed here.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f, g = FracPoly._aligned(f, g)
    lead_key, lead_coeff = max(g.sorted_terms(), key=lambda kv: (g._term_degree(kv[0]), kv[0]))
    quot = FracPoly.zero(f.space)
    rem = f
    lead_inv = lead_coeff.inverse()
    nd = f.space.ndiv
    guard = 0
    while not rem.is_zero():
        guard += 1
        if guard > 10000:
            return None
        rkey, rcoeff = max(rem.sorted_terms(), key=lambda kv: (rem._term_degree(kv[0]), kv[0]))
        diff = [rkey[i] - lead_key[i] for i in range(len(rkey))]
        if any(e < 0 for e in diff):
            return None
        try:
            mono = FracPoly(f.space, {tuple(diff): rcoeff * lead_inv})
        except ValueError:
            return None
        quot = quot + mono
        rem = rem - mono * g
    return quot


@dataclass(frozen=True)
class DiagonalAction:
    """Diagonal action of Z_{p_1} x ... x Z_{p_r}: generator i scales each
    variable v by e_{p_i}^(weights[v][i])."""

    group: AbelianGroup
    weights: dict

    def __post_init__(self):
        for name, w in self.weights.items():
            if len(w) != self.group.rank:
                raise ValueError(f"weight vector for {name} has wrong length")
        object.__setattr__(self, "weights", {n: tuple(int(x) for x in w) for n, w in self.weights.items()})

    def covers(self, f: FracPoly) -> bool:
        used = set()
        for key in f.terms:
            for i, e in enumerate(key):
                if e != 0:
                    used.add(f.space.names[i])
        return used <= set(self.weights)

    def term_weight(self, space: VarSpace, key, i: int) -> Fraction:
        """Phase exponent of a term under generator i (a fraction of full turns
        over p_i)."""
        total = Fraction(0)
        for pos, e in enumerate(key):
            if e == 0:
                continue
            name = space.names[pos]
            if name not in self.weights:
                raise ValueError(f"variable {name} not covered by the action")
            total += Fraction(e) * self.weights[name][i]
        return total

    def phase(self, space: VarSpace, key, g: GroupElement) -> Cyclo:
        out = Cyclo.one()
        for i, (gi, p) in enumerate(zip(g.residues, self.group.moduli)):
            if gi == 0:
                continue
            w = self.term_weight(space, key, i) * gi
            out = out * root_of_unity(p * w.denominator, w.numerator)
        return out


def apply_group(f: FracPoly, action: DiagonalAction, g: GroupElement) -> FracPoly:
    """Ring automorphism scaling each term by its character value at g."""
    if g.group != action.group:
        raise ValueError("element of a different group")
    terms = {}
    for key, coeff in f.terms.items():
        terms[key] = coeff * action.phase(f.space, key, g)
    return FracPoly._raw(f.space, terms)


def is_invariant(f: FracPoly, action: DiagonalAction) -> bool:
    return all(apply_group(f, action, action.group.generator(i)) == f for i in range(action.group.rank))


def semi_invariant_split(f: FracPoly, action: DiagonalAction, i: int) -> list[FracPoly]:
    """Decompose f = sum of p_i parts, part m scaled by e_{p_i}^m under
    generator i.  Terms with fractional phase are rejected."""
    p = action.group.moduli[i]
    buckets: list[dict] = [dict() for _ in range(p)]
    for key, coeff in f.terms.items():
        w = action.term_weight(f.space, key, i)
        if w.denominator != 1:
            raise ValueError(f"term with fractional weight {w} cannot be bucketed mod {p}")
        buckets[w.numerator % p][key] = coeff
    return [FracPoly._raw(f.space, b) for b in buckets]


def semi_invariant_weight(f: FracPoly, action: DiagonalAction):
    """Weight vector (per generator) if f is semi-invariant, else None."""
    if f.is_zero():
        return (0,) * action.group.rank
    out = []
    for i, p in enumerate(action.group.moduli):
        ws = set()
        for key in f.terms:
            w = action.term_weight(f.space, key, i)
            if w.denominator != 1:
                return None
            ws.add(w.numerator % p)
        if len(ws) > 1:
            return None
        out.append(ws.pop())
    return tuple(out)
