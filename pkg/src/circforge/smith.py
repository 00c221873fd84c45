"""Integer matrix normal forms: Smith form, kernel lattices, integer solves.

Matrices are numpy arrays with dtype=object so that all arithmetic stays in
exact Python integers.
"""

from __future__ import annotations

import numpy as np


def _as_int_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return m


def smith_normal_form(a):
    """Return (d, u, v) with d = u @ a @ v diagonal, u and v unimodular.

    The diagonal entries satisfy d[0] | d[1] | ... and are nonnegative.
    """
    d = _as_int_matrix(a).copy()
    m, n = d.shape
    u = np.eye(m, dtype=object)
    v = np.eye(n, dtype=object)

    def pivot_smallest(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i, j] != 0 and (best is None or abs(d[i, j]) < abs(d[best[0], best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pos = pivot_smallest(t)
        if pos is None:
            break
        i, j = pos
        d[[t, i], :] = d[[i, t], :]
        u[[t, i], :] = u[[i, t], :]
        d[:, [t, j]] = d[:, [j, t]]
        v[:, [t, j]] = v[:, [j, t]]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i, t] != 0:
                    q = d[i, t] // d[t, t]
                    d[i, :] -= q * d[t, :]
                    u[i, :] -= q * u[t, :]
                    if d[i, t] != 0:
                        d[[t, i], :] = d[[i, t], :]
                        u[[t, i], :] = u[[i, t], :]
                        dirty = True
            for j in range(t + 1, n):
                if d[t, j] != 0:
                    q = d[t, j] // d[t, t]
                    d[:, j] -= q * d[:, t]
                    v[:, j] -= q * v[:, t]
                    if d[t, j] != 0:
                        d[:, [t, j]] = d[:, [j, t]]
                        v[:, [t, j]] = v[:, [j, t]]
                        dirty = True
            if not dirty:
                # Enforce divisibility of the remaining block by the pivot.
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if d[i, j] % d[t, t] != 0:
                            d[t, :] += d[i, :]
                            u[t, :] += u[i, :]
                            dirty = True
                            break
                    if dirty:
                        break
        t += 1
    for i in range(min(m, n)):
        if d[i, i] < 0:
            d[i, :] = -d[i, :]
            u[i, :] = -u[i, :]
    return d, u, v


def kernel_basis(a):
    """Basis (as rows) of the integer lattice {x : a @ x = 0}."""
    a = _as_int_matrix(a)
    d, _u, v = smith_normal_form(a)
    n = a.shape[1]
    rank = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    cols = [v[:, j] for j in range(rank, n)]
    if not cols:
        return np.zeros((0, n), dtype=object)
    return np.array([list(c) for c in cols], dtype=object)


def solve_integer(a, b):
    """One integer solution x of a @ x = b, or None if none exists."""
    a = _as_int_matrix(a)
    bb = np.array(list(b), dtype=object)
    d, u, v = smith_normal_form(a)
    c = u @ bb
    n = a.shape[1]
    y = np.zeros(n, dtype=object)
    for i in range(a.shape[0]):
        di = d[i, i] if i < min(d.shape) else 0
        if di == 0:
            if i < len(c) and c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return v @ y


def cokernel_invariant_factors(a) -> list[int]:
    """Invariant factors (> 1) of Z^m / column-lattice(a), ascending."""
    a = _as_int_matrix(a)
    m = a.shape[0]
    d, _u, _v = smith_normal_form(a)
    diag = [int(d[i, i]) for i in range(min(d.shape))]
    rank = sum(1 for x in diag if x != 0)
    if rank < m:
        raise ValueError("cokernel is infinite")
    return [x for x in diag if x > 1]


def in_lattice(basis_rows, vec) -> bool:
    """Whether vec lies in the integer row span of basis_rows."""
    basis = _as_int_matrix(basis_rows) if len(basis_rows) else None
    v = np.array(list(vec), dtype=object)
    if basis is None or basis.shape[0] == 0:
        return all(x == 0 for x in v)
    return solve_integer(basis.T, v) is not None
