"""Exact dense linear algebra over F_p and Q.

Everything is deterministic: reduced row echelon form with leftmost-pivot
choice, so the bases produced by kernel_basis and quotient are canonical
and reproducible bit-for-bit across runs.
"""

from __future__ import annotations

import numpy as np

from .fields import FieldSpec


def rref(field: FieldSpec, m: np.ndarray):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    a = field.normalize(np.array(m, copy=True))
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        # leftmost column, topmost nonzero entry: deterministic pivot rule
        col = a[r:, c]
        nz = np.nonzero(col != field.zero)[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(a[r, c])
        if inv != field.one:
            a[r] = field.normalize(a[r] * inv)
        rows = np.nonzero(a[:, c] != field.zero)[0]
        rows = rows[rows != r]
        if len(rows):
            factors = a[rows, c].reshape(-1, 1)
            a[rows] = field.normalize(a[rows] - factors * a[r].reshape(1, -1))
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def rank(field: FieldSpec, m: np.ndarray) -> int:
    return len(rref(field, m)[1])


def kernel_basis(field: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Columns span ker(m); the basis is the canonical one read off the RREF:
    one column per free coordinate, identity on the free coordinates."""
    r, pivots = rref(field, m)
    ncols = m.shape[1]
    free = [j for j in range(ncols) if j not in pivots]
    k = field.zeros(ncols, len(free))
    for idx, j in enumerate(free):
        k[j, idx] = field.one
        for i, p in enumerate(pivots):
            k[p, idx] = field.neg(r[i, j])
    return k


def solve(field: FieldSpec, m: np.ndarray, b: np.ndarray):
    """Some solution of m x = b (free variables set to 0), or None."""
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if m.shape[0] != b.shape[0]:
        raise ValueError(f"solve shape mismatch {m.shape} vs {b.shape}")
    aug = np.concatenate([field.normalize(m), field.normalize(b)], axis=1)
    r, pivots = rref(field, aug)
    ncols = m.shape[1]
    if any(p >= ncols for p in pivots):
        return None
    x = field.zeros(ncols, b.shape[1])
    for i, p in enumerate(pivots):
        x[p, :] = r[i, ncols:]
    return x


def quotient(field: FieldSpec, ambient_dim: int, subspace: np.ndarray):
    """Projection/section pair presenting ambient / span(columns of subspace).

    projection has full row rank ambient_dim - rank(subspace),
    projection @ subspace = 0 and projection @ section = identity.  The
    quotient basis is the image of the non-pivot coordinates (echelon rule).
    """
    if subspace.shape[0] != ambient_dim:
        raise ValueError("subspace columns must live in the ambient space")
    r, pivots = rref(field, subspace.T)
    free = [j for j in range(ambient_dim) if j not in pivots]
    # x = sum_i x_{p_i} r_i mod span, so project onto the free coordinates
    full = field.eye(ambient_dim)
    for i, p in enumerate(pivots):
        full = field.normalize(full - np.outer(r[i], field.eye(ambient_dim)[p]))
    projection = full[free, :] if free else field.zeros(0, ambient_dim)
    section = field.zeros(ambient_dim, len(free))
    for idx, j in enumerate(free):
        section[j, idx] = field.one
    return projection, section


def column_space_basis(field: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Canonical (RREF of the transpose) basis of the column space, as columns."""
    r, _ = rref(field, m.T)
    return r.T


def invert(field: FieldSpec, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape[1] != n:
        raise ValueError("only square matrices are invertible")
    x = solve(field, m, field.eye(n))
    if x is None or rank(field, m) != n:
        raise ValueError("matrix is singular")
    return x


def is_invertible(field: FieldSpec, m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and rank(field, m) == m.shape[0]


def vstack(field: FieldSpec, blocks) -> np.ndarray:
    blocks = [b for b in blocks]
    if not blocks:
        return field.zeros(0, 0)
    ncols = blocks[0].shape[1]
    out = field.zeros(sum(b.shape[0] for b in blocks), ncols)
    r = 0
    for b in blocks:
        out[r : r + b.shape[0], :] = b
        r += b.shape[0]
    return out


def hstack(field: FieldSpec, blocks) -> np.ndarray:
    blocks = [b for b in blocks]
    if not blocks:
        return field.zeros(0, 0)
    nrows = blocks[0].shape[0]
    out = field.zeros(nrows, sum(b.shape[1] for b in blocks))
    c = 0
    for b in blocks:
        out[:, c : c + b.shape[1]] = b
        c += b.shape[1]
    return out


def block_diag(field: FieldSpec, blocks) -> np.ndarray:
    blocks = [b for b in blocks]
    out = field.zeros(sum(b.shape[0] for b in blocks), sum(b.shape[1] for b in blocks))
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def kron(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return field.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return field.normalize(np.kron(a, b))
