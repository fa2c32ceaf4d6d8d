"""Explicit matrices over a table field: SL_2 twists, block embeddings, torus elements.

Matrices are tuples of row tuples of encoded field elements.
"""

from __future__ import annotations

from ..errors import PreconditionError


def mat(rows):
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(F, n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(F, A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                if A[i][t] and B[t][j]:
                    s = F.add(s, F.mul(A[i][t], B[t][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def det(F, A):
    """Determinant by cofactor expansion (sizes here are at most 5)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        if not A[0][j]:
            continue
        minor = tuple(tuple(r[c] for c in range(n) if c != j) for r in A[1:])
        term = F.mul(A[0][j], det(F, minor))
        total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
    return total


def diag(values):
    n = len(values)
    return tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))


def is_diagonal(A):
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(len(A)) if i != j)


def inv_diag(F, D):
    return diag([F.inv(D[i][i]) for i in range(len(D))])


def sl2(F, a, b, c, d):
    A = mat([[a, b], [c, d]])
    if det(F, A) != 1:
        raise PreconditionError(f"matrix {A} is not in SL_2")
    return A


def upper(F, t):
    return mat([[1, t], [0, 1]])


def lower(F, t):
    return mat([[1, 0], [t, 1]])


def torus2(F, a):
    return mat([[a, 0], [0, F.inv(a)]])


def inverse2(F, A):
    """Inverse of a determinant-1 2x2 matrix."""
    (a, b), (c, d) = A
    return mat([[d, F.neg(b)], [F.neg(c), a]])


def transpose(A):
    return tuple(zip(*A))


def apply_twist(F, A, tw):
    """``A^tw``: Frobenius entrywise, then transpose-inverse when ``tw`` involves tau."""
    if tw.field.q != F.q:
        raise ValueError(f"twist over {tw.field} applied to a matrix over F_{F.q}")
    out = tuple(tuple(F.frobenius(x, tw.frob) for x in r) for r in A)
    if tw.sign == -1:
        out = transpose(inverse2(F, out))
    return out


def embed_block(F, A, k, n):
    """Place the 2x2 matrix ``A`` at rows/columns ``k, k+1`` of the ``n x n`` identity."""
    M = [list(r) for r in identity(F, n)]
    for r in range(2):
        for c in range(2):
            M[k + r][k + c] = A[r][c]
    return mat(M)


def embed_edge(F, A, side, tw=None):
    """Image of ``A`` in SL_3 under the first (top-left) or second (bottom-right) block embedding."""
    if len(A) != 2 or det(F, A) != 1:
        raise PreconditionError("embed_edge needs a 2x2 matrix of determinant 1")
    if tw is not None:
        A = apply_twist(F, A, tw)
    if side not in ("first", "second"):
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    out = embed_block(F, A, 0 if side == "first" else 1, 3)
    assert det(F, out) == 1
    return out


def key(A, q):
    """Integer code of a matrix (base-q digits, row-major)."""
    code = 0
    for r in A:
        for x in r:
            code = code * q + x
    return code
