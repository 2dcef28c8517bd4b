"""Exact linear algebra over Gaussian rationals: null spaces by elimination."""
from __future__ import annotations

from .scalars import QQi


def nullspace(rows, ncols: int):
    """Basis of {x : A x = 0} for A given as a list of QQi rows.

    Returns a list of length-ncols QQi vectors in reduced form (free
    variable set to one, pivots solved).
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivots = []  # (row, col)
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = QQi(1) / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [QQi(0)] * ncols
        vec[free] = QQi(1)
        for r, c in pivots:
            vec[c] = -mat[r][free]
        basis.append(vec)
    return basis
