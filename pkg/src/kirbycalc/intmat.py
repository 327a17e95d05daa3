"""Exact integer matrix helpers.

Matrices are tuples of row tuples of Python ints.  Nothing here touches
floating point.
"""
from fractions import Fraction
from math import gcd

from . import kernels


def as_matrix(rows):
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r, c):
    return tuple((0,) * c for _ in range(r))


def transpose(a, ncols=None):
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, x):
    return tuple(sum(p * q for p, q in zip(row, x)) for row in a)


def congruence(q, u):
    """``u^T q u``."""
    if not u:
        return ()
    return matmul(matmul(transpose(u), q), u)


def columns(a):
    return [list(col) for col in transpose(a)]


def from_columns(cols, nrows):
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(col[i] for col in cols) for i in range(nrows))


def det(a):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a):
    return sum(1 for d in kernels.smith_diagonal(a) if d)


def invariant_factors(a):
    """Nonzero Smith invariants d_1 | d_2 | ..., all positive."""
    return [d for d in kernels.smith_diagonal(a) if d]


def kernel_basis(a, ncols):
    """Columns spanning the integer kernel {x : a x = 0} as a Z-basis."""
    return [tuple(col) for col in kernels.kernel_basis(a, ncols)]


def solve_rational(a, b):
    """Solve a x = b over Q for square invertible a."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    for k in range(n):
        p = next(i for i in range(k, n) if m[i][k] != 0)
        m[k], m[p] = m[p], m[k]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] / m[i][i] for i in range(n)]


def inverse_rational(a):
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[p] = m[p], m[k]
        pivot = m[k][k]
        m[k] = [x / pivot for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def inverse_unimodular(a):
    inv = inverse_rational(a)
    if any(v.denominator != 1 for row in inv for v in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(v) for v in row) for row in inv)


def ext_gcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_unit_dot(a):
    """An integer vector f with sum(a_i f_i) == 1; requires gcd(a) == 1."""
    g, coeffs = 0, []
    for v in a:
        g2, x, y = ext_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    if g != 1:
        raise ValueError("entries are not coprime")
    return tuple(coeffs)


class SmithDecomposition:
    """``p @ a @ q == s`` with unimodular p, q and their inverses."""

    def __init__(self, s, p, p_inv, q, q_inv):
        self.s, self.p, self.p_inv, self.q, self.q_inv = s, p, p_inv, q, q_inv

    @property
    def diagonal(self):
        return [self.s[i][i] for i in range(min(len(self.s), len(self.q)))]


def smith_decomposition(a, ncols=None):
    """Smith normal form with both transforms tracked (pure Python)."""
    r = len(a)
    c = len(a[0]) if r else (ncols or 0)
    m = [list(row) for row in a]
    p = [list(row) for row in identity(r)]
    p_inv = [list(row) for row in identity(r)]
    q = [list(row) for row in identity(c)]
    q_inv = [list(row) for row in identity(c)]

    def row_add(i, k, f):
        # row i += f * row k, on m and p; p_inv gets col k -= f * col i
        m[i] = [x + f * y for x, y in zip(m[i], m[k])]
        p[i] = [x + f * y for x, y in zip(p[i], p[k])]
        for row in p_inv:
            row[k] -= f * row[i]

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        p[i], p[k] = p[k], p[i]
        for row in p_inv:
            row[i], row[k] = row[k], row[i]

    def row_neg(i):
        m[i] = [-x for x in m[i]]
        p[i] = [-x for x in p[i]]
        for row in p_inv:
            row[i] = -row[i]

    def col_add(j, k, f):
        # col j += f * col k, on m and q; q_inv gets row k -= f * row j
        for row in m:
            row[j] += f * row[k]
        for row in q:
            row[j] += f * row[k]
        q_inv[k] = [x - f * y for x, y in zip(q_inv[k], q_inv[j])]

    def col_swap(j, k):
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in q:
            row[j], row[k] = row[k], row[j]
        q_inv[j], q_inv[k] = q_inv[k], q_inv[j]

    for t in range(min(r, c)):
        while True:
            cand = [(abs(m[i][j]), i, j) for i in range(t, r) for j in range(t, c) if m[i][j]]
            if not cand:
                break
            _, bi, bj = min(cand)
            row_swap(t, bi)
            col_swap(t, bj)
            clean = True
            for i in range(t + 1, r):
                if m[i][t]:
                    row_add(i, t, -(m[i][t] // m[t][t]))
                    clean = clean and m[i][t] == 0
            for j in range(t + 1, c):
                if m[t][j]:
                    col_add(j, t, -(m[t][j] // m[t][t]))
                    clean = clean and m[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, r)
                        if any(m[i][j] % m[t][t] for j in range(t + 1, c))), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if t < r and t < c and m[t][t] < 0:
            row_neg(t)
    return SmithDecomposition(as_matrix(m), as_matrix(p), as_matrix(p_inv),
                              as_matrix(q), as_matrix(q_inv))


def kernel_basis_smith(a, ncols):
    """Kernel basis from the Smith column transform (independent route)."""
    dec = smith_decomposition(a, ncols)
    k = sum(1 for d in dec.diagonal if d)
    return [tuple(dec.q[i][j] for i in range(ncols)) for j in range(k, ncols)]


def complete_basis(cols, n):
    """Unimodular n x n matrix whose first columns are ``cols``.

    ``cols`` must span a primitive sublattice of Z^n.
    """
    k = len(cols)
    if k == 0:
        return identity(n)
    b = from_columns(cols, n)
    dec = smith_decomposition(b, k)
    if any(d != 1 for d in dec.diagonal):
        raise ValueError("columns do not span a primitive sublattice")
    # p b q = [I; 0]  =>  b = p_inv [q_inv; 0]
    block = [[0] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            block[i][j] = dec.q_inv[i][j]
    for i in range(k, n):
        block[i][i] = 1
    return matmul(dec.p_inv, as_matrix(block))


def minors_gcd(cols, n):
    """gcd of maximal minors of the n x k matrix with the given columns."""
    from itertools import combinations
    k = len(cols)
    g = 0
    for rows in combinations(range(n), k):
        g = gcd(g, det([[cols[j][i] for j in range(k)] for i in rows]))
        if g == 1:
            return 1
    return g
