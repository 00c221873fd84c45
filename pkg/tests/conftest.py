from fractions import Fraction

import mpmath

from circforge import AbelianGroup, Cyclo


def cyclo_numeric(c: Cyclo, dps: int = 30) -> mpmath.mpc:
    """Independent numerical evaluation of a cyclotomic number."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(0)
        for i, q in enumerate(c.coeffs):
            if q:
                z += mpmath.mpf(q.numerator) / q.denominator * mpmath.e ** (
                    2j * mpmath.pi * i / c.order
                )
        return z


def numerically_zero(c: Cyclo, dps: int = 30) -> bool:
    with mpmath.workdps(dps):
        return abs(cyclo_numeric(c, dps)) < mpmath.mpf(10) ** (-(dps - 5))


def groups_of_order_up_to(n: int):
    """All abelian groups of order <= n, one per isomorphism class."""
    out = [AbelianGroup(())]
    seen = {()}
    for order in range(2, n + 1):
        for mods in _factorizations(order):
            key = tuple(sorted(mods))
            if key not in seen:
                seen.add(key)
                out.append(AbelianGroup(key))
    # distinct isomorphism classes only: keep prime-power cyclic factorizations
    canonical = {}
    for g in out:
        inv = _iso_key(g)
        canonical.setdefault(inv, g)
    return list(canonical.values())


def _factorizations(n: int, minimum: int = 2):
    if n == 1:
        yield ()
        return
    for d in range(minimum, n + 1):
        if n % d == 0:
            for rest in _factorizations(n // d, d):
                yield (d,) + rest


def _iso_key(g: AbelianGroup):
    # order statistics identify small abelian groups
    from collections import Counter

    counts = Counter()
    for e in g.elements():
        o = 1
        cur = e
        while not cur.is_identity():
            cur = cur + e
            o += 1
        counts[o] += 1
    return tuple(sorted(counts.items()))


def binomial_series(alpha: Fraction, n: int):
    """Coefficients of (1 + x)^alpha up to degree n."""
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for i in range(1, n + 1):
        c = c * (alpha - (i - 1)) / i
        coeffs.append(c)
    return coeffs
