"""Small dense exact matrices over the Scalar field.

Matrices are tuples of tuples of Scalar, which keeps them hashable and safe
to share.  Sizes here stay tiny (2..16), so plain Gaussian elimination with
exact arithmetic is entirely adequate.
"""

from __future__ import annotations

from .scalar import ONE, ZERO, Scalar


class SingularMatrixError(ArithmeticError):
    pass


def mat(rows):
    return tuple(tuple(x for x in row) for row in rows)


def identity(n):
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def zeros(n, m=None):
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = tuple(zip(*b))
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(m):
            col = bt[j]
            acc = ZERO
            for t in range(k):
                x = row_a[t]
                if x.num:
                    y = col[t]
                    if y.num:
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_transpose(a):
    return tuple(zip(*a))


def kron(a, b):
    nb = len(b)
    out = []
    for ra in a:
        for rb in b:
            row = []
            for x in ra:
                for y in rb:
                    row.append(x * y)
            out.append(tuple(row))
    return tuple(out)


def mat_eq(a, b):
    return a == b


def is_zero_matrix(a):
    return all(not x.num for row in a for x in row)


def first_nonzero(a):
    """(i, j, value) of the first nonzero entry in row-major order, or None."""
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x.num:
                return i, j, x
    return None


def mat_inv(a):
    n = len(a)
    work = [list(row) for row in a]
    inv = [list(row) for row in identity(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col].num:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("matrix is singular over the scalar field")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col].inv()
        work[col] = [x * p for x in work[col]]
        inv[col] = [x * p for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col].num:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def solve_right_nullspace(a):
    """A basis of {x : a @ x = 0} as column vectors (tuples)."""
    n, m = len(a), len(a[0])
    work = [list(row) for row in a]
    pivots = []
    row = 0
    for col in range(m):
        pivot = None
        for r in range(row, n):
            if work[r][col].num:
                pivot = r
                break
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        p = work[row][col].inv()
        work[row] = [x * p for x in work[row]]
        for r in range(n):
            if r != row and work[r][col].num:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * m
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(tuple(vec))
    return basis


def mat_apply_entrywise(a, fn):
    return tuple(tuple(fn(x) for x in row) for row in a)
