"""Matrix helpers over exact Gaussian rationals, with numpy for the float path.

Exact matrices are tuples of tuples of QI; vectors are tuples of QI.  The
float backend uses numpy arrays directly.  Dispatch is by type so the same
call sites serve both backends.
"""

from __future__ import annotations

import numpy as np

from .scalars import QI, as_scalar, conj, is_exact


def qi_matrix(rows) -> tuple:
    return tuple(tuple(as_scalar(x) if is_exact(x) else x for x in row) for row in rows)


def qi_vector(xs) -> tuple:
    return tuple(as_scalar(x) if is_exact(x) else x for x in xs)


def identity(n: int) -> tuple:
    return tuple(tuple(QI(1 if i == j else 0) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> tuple:
    return tuple(tuple(QI(0) for _ in range(n)) for _ in range(m))


def is_exact_matrix(m) -> bool:
    return not isinstance(m, np.ndarray)


def mat_shape(m):
    if isinstance(m, np.ndarray):
        return m.shape
    return (len(m), len(m[0]) if m else 0)


def mat_add(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return to_numpy(a) + to_numpy(b)
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    if isinstance(a, np.ndarray) or isinstance(c, (float, complex)):
        return complex(c.to_complex() if isinstance(c, QI) else c) * to_numpy(a)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_neg(a):
    return mat_scale(QI(-1) if is_exact_matrix(a) else -1.0, a)


def mat_mul(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return to_numpy(a) @ to_numpy(b)
    n = len(b)
    cols = len(b[0])
    return tuple(
        tuple(sum((ra[k] * b[k][j] for k in range(n)), QI(0)) for j in range(cols))
        for ra in a)


def mat_vec(a, v):
    if isinstance(a, np.ndarray) or isinstance(v, np.ndarray):
        return to_numpy(a) @ to_numpy_vec(v)
    return tuple(sum((ra[k] * v[k] for k in range(len(v))), QI(0)) for ra in a)


def vec_mat(v, a):
    """Row vector times matrix."""
    if isinstance(a, np.ndarray) or isinstance(v, np.ndarray):
        return to_numpy_vec(v) @ to_numpy(a)
    m = len(a)
    return tuple(sum((v[i] * a[i][j] for i in range(m)), QI(0)) for j in range(len(a[0])))


def mat_transpose(a):
    if isinstance(a, np.ndarray):
        return a.T
    return tuple(zip(*a)) if a else a


def mat_conj(a):
    if isinstance(a, np.ndarray):
        return a.conj()
    return tuple(tuple(conj(x) for x in row) for row in a)


def vec_conj(v):
    if isinstance(v, np.ndarray):
        return v.conj()
    return tuple(conj(x) for x in v)


def mat_kron(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.kron(to_numpy(a), to_numpy(b))
    mb, nb = mat_shape(b)
    return tuple(
        tuple(a[i // mb][j // nb] * b[i % mb][j % nb]
              for j in range(len(a[0]) * nb))
        for i in range(len(a) * mb))


def mat_blockdiag(blocks):
    blocks = list(blocks)
    if any(isinstance(b, np.ndarray) for b in blocks):
        blocks = [to_numpy(b) for b in blocks]
        n = sum(b.shape[0] for b in blocks)
        m = sum(b.shape[1] for b in blocks)
        out = np.zeros((n, m), dtype=complex)
        i = j = 0
        for b in blocks:
            out[i:i + b.shape[0], j:j + b.shape[1]] = b
            i += b.shape[0]
            j += b.shape[1]
        return out
    rows = []
    total_cols = sum(mat_shape(b)[1] for b in blocks)
    col_off = 0
    for b in blocks:
        r, c = mat_shape(b)
        for i in range(r):
            row = [QI(0)] * total_cols
            for j in range(c):
                row[col_off + j] = b[i][j]
            rows.append(tuple(row))
        col_off += c
    return tuple(rows)


def mat_det(a):
    if isinstance(a, np.ndarray):
        return np.linalg.det(a)
    rows = [list(r) for r in a]
    n = len(rows)
    det = QI(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return QI(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = QI(1) / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def mat_inv(a):
    if isinstance(a, np.ndarray):
        return np.linalg.inv(a)
    n = len(a)
    aug = [list(row) + [QI(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular exact matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = QI(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def to_numpy(a):
    if isinstance(a, np.ndarray):
        return a
    return np.array([[x.to_complex() if isinstance(x, QI) else complex(x) for x in row]
                     for row in a], dtype=complex)


def to_numpy_vec(v):
    if isinstance(v, np.ndarray):
        return v
    return np.array([x.to_complex() if isinstance(x, QI) else complex(x) for x in v],
                    dtype=complex)


def from_int_matrix(a):
    return tuple(tuple(QI(x) for x in row) for row in a)


def mat_equal(a, b, tol: float = 0.0) -> bool:
    if is_exact_matrix(a) and is_exact_matrix(b) and tol == 0.0:
        return a == b
    return bool(np.max(np.abs(to_numpy(a) - to_numpy(b))) <= tol)


# -- exact linear solving ---------------------------------------------------

def row_reduce(rows: list[list[QI]]) -> list[list[QI]]:
    """In-place reduced row echelon form over the Gaussian rationals."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    lead = 0
    for r in range(nrows):
        if lead >= ncols:
            break
        piv = next((k for k in range(r, nrows) if rows[k][lead]), None)
        while piv is None:
            lead += 1
            if lead >= ncols:
                return rows
            piv = next((k for k in range(r, nrows) if rows[k][lead]), None)
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = QI(1) / rows[r][lead]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][lead]:
                f = rows[k][lead]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        lead += 1
    return rows


def solve_exact(columns: list[list[QI]], rhs: list[QI]):
    """Solve sum_i a_i * columns[i] = rhs exactly.

    Returns a coefficient list, or None when the system is inconsistent.
    """
    m = len(rhs)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [rhs[i]] for i in range(m)]
    aug = row_reduce(aug)
    sol = [QI(0)] * k
    for row in aug:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            continue
        if lead == k:
            return None
        sol[lead] = row[k]
    # verify (cheap; guards the free-variable convention)
    for i in range(m):
        acc = QI(0)
        for j in range(k):
            acc = acc + sol[j] * columns[j][i]
        if acc != rhs[i]:
            return None
    return sol


def nullspace_dim(rows: list[list[QI]]) -> int:
    """Dimension of the right nullspace of the given exact matrix."""
    if not rows:
        return 0
    ncols = len(rows[0])
    reduced = row_reduce([list(r) for r in rows])
    rank = sum(1 for row in reduced if any(row))
    return ncols - rank
