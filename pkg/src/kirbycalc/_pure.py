"""Pure-Python versions of the compiled kernels in ``_speedups.pyx``.

These are the reference semantics.  They work on Python integers, so they
never overflow; ``kirbycalc.kernels`` falls back to them whenever the
compiled module is missing or an input is too large for 64-bit arithmetic.
"""
from itertools import product


def _floordiv(a, b):
    return a // b


def smith_diagonal(flat, r, c):
    a = [list(flat[i * c:(i + 1) * c]) for i in range(r)]
    m = min(r, c)
    diag = [0] * m
    for t in range(m):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = abs(a[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                return diag
            _, bi, bj = best
            a[t], a[bi] = a[bi], a[t]
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            clean = True
            p = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            offender = next((i for i in range(t + 1, r)
                             if any(a[i][j] % p for j in range(t + 1, c))), None)
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        diag[t] = abs(a[t][t])
    return diag


def kernel_basis(flat, r, c):
    """Integer kernel basis of an r x c matrix by column elimination.

    Rows are eliminated one at a time.  A row with a +-1 entry in a free
    column is preferred (first such row, first such column); otherwise the
    first nonzero row is reduced to a single entry by Euclid steps.  The
    columns of the accumulated unimodular transform that never became
    pivots form the basis.
    """
    a = [list(flat[i * c:(i + 1) * c]) for i in range(r)]
    u = [[int(i == j) for j in range(c)] for i in range(c)]
    pivot = [False] * c
    done = [False] * r

    def col_axpy(mat, dst, src, q):
        for row in mat:
            row[dst] -= q * row[src]

    while True:
        row = col = None
        for i in range(r):
            if done[i]:
                continue
            for j in range(c):
                if not pivot[j] and abs(a[i][j]) == 1:
                    row, col = i, j
                    break
            if row is not None:
                break
        if row is None:
            for i in range(r):
                if done[i]:
                    continue
                if not any(a[i][j] for j in range(c) if not pivot[j]):
                    done[i] = True
                    continue
                while True:
                    best = None
                    for j in range(c):
                        if not pivot[j]:
                            v = abs(a[i][j])
                            if v and (best is None or v < best):
                                best, col = v, j
                    again = False
                    for l in range(c):
                        if l != col and not pivot[l] and a[i][l]:
                            q = a[i][l] // a[i][col]
                            col_axpy(a, l, col, q)
                            col_axpy(u, l, col, q)
                            if a[i][l]:
                                again = True
                    if not again:
                        break
                row = i
                break
            if row is None:
                break
        else:
            piv = a[row][col]
            for l in range(c):
                if l != col and not pivot[l] and a[row][l]:
                    q = a[row][l] * piv
                    col_axpy(a, l, col, q)
                    col_axpy(u, l, col, q)
        done[row] = True
        pivot[col] = True
    return [[u[i][j] for i in range(c)] for j in range(c) if not pivot[j]]


def _value(Q, x):
    return sum(xi * sum(q * xj for q, xj in zip(row, x)) for xi, row in zip(x, Q) if xi)


def _canonical(x):
    for v in x:
        if v:
            return v > 0
    return False


def box_vectors(Q, bounds, lo, hi, canonical):
    out = []
    for x in product(*[range(-b, b + 1) for b in bounds]):
        if not any(x) or (canonical and not _canonical(x)):
            continue
        v = _value(Q, x)
        if lo <= v <= hi:
            out.append((v, x))
    return out


def norm_counts(Q, bounds, lo, hi, canonical):
    hist = {}
    for v, _ in box_vectors(Q, bounds, lo, hi, canonical):
        hist[v] = hist.get(v, 0) + 1
    return dict(sorted(hist.items()))


def first_in_shells(Q, bounds, target):
    rmax = max(bounds, default=0)
    for r in range(1, rmax + 1):
        ranges = [range(min(r, b), -min(r, b) - 1, -1) for b in bounds]
        best, best_l1 = None, None
        for x in product(*ranges):
            if max(abs(v) for v in x) != r or not _canonical(x):
                continue
            if _value(Q, x) == target:
                l1 = sum(abs(v) for v in x)
                if best is None or l1 < best_l1:
                    best, best_l1 = x, l1
        if best is not None:
            return best
    return None
