"""Exact integer linear algebra: Smith normal form over Z, Howell form over Z/N.

All routines work on plain lists of Python ints, so there is no overflow
and no dependency on a computer algebra system.  Matrices are lists of
rows.
"""

from __future__ import annotations

from math import gcd


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def determinant(a):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a):
    """Smith normal form with transforms.

    Returns ``(diag, U, V)`` where ``U`` (m x m) and ``V`` (n x n) are
    unimodular and ``U * A * V`` is the m x n diagonal matrix carrying
    ``diag`` (length ``min(m, n)``, non-negative, each entry dividing the
    next, zeros last).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(row) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def combine_rows(i, j, s, t, u, v):
        # rows (i, j) <- [[s, t], [u, v]] * rows (i, j); determinant must be +-1
        for M in (A, U):
            ri, rj = M[i], M[j]
            M[i] = [s * x + t * y for x, y in zip(ri, rj)]
            M[j] = [u * x + v * y for x, y in zip(ri, rj)]

    def combine_cols(i, j, s, t, u, v):
        for M in (A, V):
            for row in M:
                x, y = row[i], row[j]
                row[i] = s * x + t * y
                row[j] = u * x + v * y

    for k in range(min(m, n)):
        # choose a nonzero entry of smallest magnitude as pivot
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        while True:
            changed = False
            for i in range(k + 1, m):
                if A[i][k] % A[k][k] == 0:
                    f = A[i][k] // A[k][k]
                    if f:
                        combine_rows(k, i, 1, 0, -f, 1)
                elif A[i][k]:
                    g, s, t = xgcd(A[k][k], A[i][k])
                    p, r = A[k][k] // g, A[i][k] // g
                    combine_rows(k, i, s, t, -r, p)
                    changed = True
            for j in range(k + 1, n):
                if A[k][j] % A[k][k] == 0:
                    f = A[k][j] // A[k][k]
                    if f:
                        combine_cols(k, j, 1, 0, -f, 1)
                elif A[k][j]:
                    g, s, t = xgcd(A[k][k], A[k][j])
                    p, r = A[k][k] // g, A[k][j] // g
                    combine_cols(k, j, s, t, -r, p)
                    changed = True
            if changed:
                continue
            # pivot must divide the rest of the block
            d = A[k][k]
            bad = next(
                (i for i in range(k + 1, m) if any(A[i][j] % d for j in range(k + 1, n))),
                None,
            )
            if bad is None:
                break
            for M in (A, U):
                M[k] = [x + y for x, y in zip(M[k], M[bad])]
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def kernel_mod(a, modulus):
    """Kernel of ``x -> A x`` on ``(Z/N)^n`` via the Smith form.

    Returns ``(generators, orders)``: the i-th generator has exact additive
    order ``orders[i]`` and the kernel is the internal direct sum of the
    cyclic groups they generate.  Orders are listed in divisibility order
    and trivial summands are dropped.
    """
    n = len(a[0]) if a else 0
    diag, _, V = smith_normal_form(a)
    diag = diag + [0] * (n - len(diag))
    gens, orders = [], []
    for i, d in enumerate(diag):
        order = gcd(d, modulus)
        if order == 1:
            continue
        step = modulus // order
        gens.append([(V[r][i] * step) % modulus for r in range(n)])
        orders.append(order)
    return gens, orders


def howell_form(rows, modulus, ncols=None):
    """Howell normal form of the row span of ``rows`` in ``(Z/N)^k``.

    This is the Hermite form of the full-rank lattice ``span(rows) + N Z^k``
    with the rows ``N e_i`` removed.  The result is unique for a given
    subgroup and has the Howell property: the rows whose pivot lies in
    column ``>= c`` generate every element whose first ``c`` entries vanish.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    N = modulus
    work = [[x % N for x in r] for r in rows]
    work = [r for r in work if any(r)]
    result = []
    for c in range(ncols):
        pivot = [0] * ncols
        pivot[c] = N
        rest = []
        for r in work:
            if r[c] == 0:
                rest.append(r)
                continue
            g, s, t = xgcd(pivot[c], r[c])
            p, q = pivot[c] // g, r[c] // g
            new_pivot = [s * x + t * y for x, y in zip(pivot, r)]
            other = [q * x - p * y for x, y in zip(pivot, r)]
            pivot = [new_pivot[j] if j <= c else new_pivot[j] % N for j in range(ncols)]
            other = [x % N for x in other]
            if any(other):
                rest.append(other)
        work = rest
        if pivot[c] != N:
            result.append(pivot)
    for i, row in enumerate(result):
        c = _pivot_col(row)
        p = row[c]
        for h in range(i):
            f = result[h][c] // p
            if f:
                result[h] = [(x - f * y) % N for x, y in zip(result[h], row)]
    return [tuple(r) for r in result]


def _pivot_col(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def howell_reduce(vector, howell_rows, modulus):
    """Reduce ``vector`` by a Howell basis.

    Returns ``(remainder, coefficients)`` with
    ``vector == remainder + sum(c_i * row_i) (mod N)``.  The remainder is
    zero exactly when the vector lies in the span.
    """
    N = modulus
    v = [x % N for x in vector]
    coeffs = []
    for row in howell_rows:
        c = _pivot_col(row)
        f = v[c] // row[c]
        coeffs.append(f)
        if f:
            v = [(x - f * y) % N for x, y in zip(v, row)]
    return v, coeffs


def lattice_kernel_mod(rows, modulus):
    """Integer generators of ``{c in Z^r : sum c_i rows_i == 0 mod N}``.

    The lattice always contains ``N Z^r``.
    """
    r = len(rows)
    if r == 0:
        return []
    k = len(rows[0])
    if k == 0:
        return [[modulus * int(i == j) for j in range(r)] for i in range(r)]
    # c G == 0 mod N  <=>  G^T c^T == 0 mod N
    diag, _, V = smith_normal_form(transpose(rows))
    diag = diag + [0] * (r - len(diag))
    gens = []
    for i, d in enumerate(diag):
        step = modulus // gcd(d, modulus)
        gens.append([V[row][i] * step for row in range(r)])
    return gens


def abelian_invariants(relations, ngens):
    """Invariant factors (> 1) of ``Z^ngens / span(relations)``.

    A zero invariant factor marks a free summand.
    """
    if ngens == 0:
        return []
    if not relations:
        return [0] * ngens
    diag, _, _ = smith_normal_form(relations)
    diag = diag + [0] * (ngens - len(diag))
    return [d for d in diag if d != 1]
