"""
Exact dense linear algebra over a Field on numpy arrays.
"""

from typing import List, Tuple

import numpy as np

from .errors import DimensionMismatchError, IdealCalcError
from .field import Field


def rref(field: Field, matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    Args:
        field: coefficient field
        matrix: 2-d array with entries already in the field

    Returns:
        (R, pivot_columns)
    """
    A = np.array(matrix, dtype=field.dtype, copy=True)
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = [i for i in range(r, rows) if A[i, c] != 0]
        if not nonzero:
            continue
        pr = nonzero[0]
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = field.reduce(A[r] * field.inv(A[r, c]))
        factors = A[:, c].copy()
        factors[r] = field.zero
        if any(f != 0 for f in factors):
            A = field.reduce(A - np.outer(factors, A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(field: Field, matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(field, matrix)[1])


def nullspace(field: Field, matrix: np.ndarray) -> np.ndarray:
    """Columns form a basis of {v : matrix @ v = 0}."""
    rows, cols = matrix.shape
    if rows == 0:
        return field.eye(cols)
    R, pivots = rref(field, matrix)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros((cols, len(free)))
    for k, f in enumerate(free):
        basis[f, k] = field.one
        for i, pc in enumerate(pivots):
            basis[pc, k] = field.neg(R[i, f])
    return basis


def solve(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Return X with A @ X = B; raises if the system is inconsistent."""
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatchError(f"cannot solve {A.shape} against {B.shape}")
    n = A.shape[1]
    if A.shape[0] == 0:
        return field.zeros((n, B.shape[1]))
    R, pivots = rref(field, np.hstack([A, B]))
    X = field.zeros((n, B.shape[1]))
    for i, pc in enumerate(pivots):
        if pc >= n:
            raise IdealCalcError("inconsistent linear system")
        X[pc] = R[i, n:]
    return X


def inverse(field: Field, A: np.ndarray) -> np.ndarray:
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"matrix {A.shape} is not square")
    if rank(field, A) != A.shape[0]:
        raise IdealCalcError("matrix is singular")
    return solve(field, A, field.eye(A.shape[0]))


def column_space_basis(field: Field, matrix: np.ndarray) -> np.ndarray:
    """Linearly independent subset of the columns spanning the column space."""
    if matrix.shape[1] == 0 or matrix.shape[0] == 0:
        return field.zeros((matrix.shape[0], 0))
    _, pivots = rref(field, matrix)
    return matrix[:, pivots]


def complement_basis(field: Field, subspace: np.ndarray, dim: int) -> np.ndarray:
    """Standard basis vectors completing the columns of `subspace` to a basis of k^dim."""
    stacked = np.hstack([subspace, field.eye(dim)]) if subspace.size else field.eye(dim)
    _, pivots = rref(field, stacked)
    offset = subspace.shape[1] if subspace.size else 0
    chosen = [p - offset for p in pivots if p >= offset]
    return field.eye(dim)[:, chosen]


def in_column_space(field: Field, space: np.ndarray, vectors: np.ndarray) -> bool:
    if vectors.size == 0:
        return True
    if space.size == 0:
        return not np.any(vectors != 0)
    return rank(field, np.hstack([space, vectors])) == rank(field, space)
