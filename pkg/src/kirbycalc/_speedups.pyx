# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for exact small-integer linear algebra.

Every routine works on 64-bit integers.  Arithmetic in the Smith and kernel
routines is overflow checked and raises ``OverflowError``; the box
enumerators rely on the caller (``kirbycalc.kernels``) to certify that no
quadratic value can overflow.  Semantics must stay identical to
``kirbycalc._pure``.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    """
    static int kc_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int kc_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static int kc_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int kc_mul(long long a, long long b, long long *r) nogil
    int kc_sub(long long a, long long b, long long *r) nogil
    int kc_add(long long a, long long b, long long *r) nogil


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int _row_axpy(long long *a, int c, int dst, int src, long long q) nogil:
    # row dst -= q * row src
    cdef int j
    cdef long long t
    for j in range(c):
        if kc_mul(q, a[src * c + j], &t) or kc_sub(a[dst * c + j], t, &a[dst * c + j]):
            return 1
    return 0


cdef int _col_axpy(long long *a, int r, int c, int dst, int src, long long q) nogil:
    # col dst -= q * col src
    cdef int i
    cdef long long t
    for i in range(r):
        if kc_mul(q, a[i * c + src], &t) or kc_sub(a[i * c + dst], t, &a[i * c + dst]):
            return 1
    return 0


cdef void _swap_rows(long long *a, int c, int i, int k) nogil:
    cdef int j
    cdef long long t
    if i == k:
        return
    for j in range(c):
        t = a[i * c + j]
        a[i * c + j] = a[k * c + j]
        a[k * c + j] = t


cdef void _swap_cols(long long *a, int r, int c, int j, int k) nogil:
    cdef int i
    cdef long long t
    if j == k:
        return
    for i in range(r):
        t = a[i * c + j]
        a[i * c + j] = a[i * c + k]
        a[i * c + k] = t


cdef int _smith_inplace(long long *a, int r, int c, long long *diag) nogil:
    """Diagonalize ``a`` in place; write |d_0| | |d_1| | ... into diag."""
    cdef int t, i, j, bi, bj, clean
    cdef int m = r if r < c else c
    cdef long long best, v, q
    for t in range(m):
        diag[t] = 0
    for t in range(m):
        while True:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, r):
                for j in range(t, c):
                    v = _abs(a[i * c + j])
                    if v != 0 and (best == 0 or v < best):
                        best = v
                        bi = i
                        bj = j
            if bi < 0:
                return 0
            _swap_rows(a, c, t, bi)
            _swap_cols(a, r, c, t, bj)
            clean = 1
            for i in range(t + 1, r):
                if a[i * c + t] != 0:
                    q = _floordiv(a[i * c + t], a[t * c + t])
                    if _row_axpy(a, c, i, t, q):
                        return 1
                    if a[i * c + t] != 0:
                        clean = 0
            for j in range(t + 1, c):
                if a[t * c + j] != 0:
                    q = _floordiv(a[t * c + j], a[t * c + t])
                    if _col_axpy(a, r, c, j, t, q):
                        return 1
                    if a[t * c + j] != 0:
                        clean = 0
            if not clean:
                continue
            # divisibility: fold an offending row into row t and go again
            bi = -1
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i * c + j] % a[t * c + t] != 0:
                        bi = i
                        break
                if bi >= 0:
                    break
            if bi < 0:
                break
            if _row_axpy(a, c, t, bi, -1):
                return 1
        diag[t] = _abs(a[t * c + t])
    return 0


def smith_diagonal(rows, int r, int c):
    """Smith diagonal of an r x c matrix given as a flat sequence."""
    cdef int m = r if r < c else c
    cdef long long *a = <long long *> malloc(max(r * c, 1) * sizeof(long long))
    cdef long long *d = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef int k, status
    try:
        for k in range(r * c):
            a[k] = rows[k]
        status = _smith_inplace(a, r, c, d)
        if status:
            raise OverflowError("int64 overflow in Smith reduction")
        return [d[k] for k in range(m)]
    finally:
        free(a)
        free(d)


def smith_diagonal_batch(long long[:, :, :] mats, long long[:, :] out, unsigned char[:] overflow):
    """Smith diagonals for a stack of matrices; flags overflowed entries."""
    cdef Py_ssize_t n = mats.shape[0], idx
    cdef int r = mats.shape[1], c = mats.shape[2], i, j
    cdef int m = r if r < c else c
    cdef long long *a = <long long *> malloc(max(r * c, 1) * sizeof(long long))
    cdef long long *d = <long long *> malloc(max(m, 1) * sizeof(long long))
    try:
        with nogil:
            for idx in range(n):
                for i in range(r):
                    for j in range(c):
                        a[i * c + j] = mats[idx, i, j]
                overflow[idx] = _smith_inplace(a, r, c, d)
                for i in range(m):
                    out[idx, i] = d[i]
    finally:
        free(a)
        free(d)


cdef int _kernel_inplace(long long *a, long long *u, int r, int c,
                         unsigned char *pivot, unsigned char *done) nogil:
    """Unit-pivot column elimination; see kirbycalc._pure.kernel_basis."""
    cdef int i, j, l, row, col, any_nz
    cdef long long piv, q, best, v
    for j in range(c):
        pivot[j] = 0
    for i in range(r):
        done[i] = 0
    while True:
        row = -1
        col = -1
        for i in range(r):
            if done[i]:
                continue
            for j in range(c):
                if not pivot[j] and _abs(a[i * c + j]) == 1:
                    row = i
                    col = j
                    break
            if row >= 0:
                break
        if row < 0:
            for i in range(r):
                if done[i]:
                    continue
                any_nz = 0
                for j in range(c):
                    if not pivot[j] and a[i * c + j] != 0:
                        any_nz = 1
                        break
                if not any_nz:
                    done[i] = 1
                    continue
                # Euclid across the free columns of this row
                while True:
                    best = 0
                    col = -1
                    for j in range(c):
                        if not pivot[j]:
                            v = _abs(a[i * c + j])
                            if v != 0 and (best == 0 or v < best):
                                best = v
                                col = j
                    any_nz = 0
                    for l in range(c):
                        if l != col and not pivot[l] and a[i * c + l] != 0:
                            q = _floordiv(a[i * c + l], a[i * c + col])
                            if _col_axpy(a, r, c, l, col, q) or _col_axpy(u, c, c, l, col, q):
                                return 1
                            if a[i * c + l] != 0:
                                any_nz = 1
                    if not any_nz:
                        break
                row = i
                break
            if row < 0:
                return 0
        else:
            piv = a[row * c + col]
            for l in range(c):
                if l != col and not pivot[l] and a[row * c + l] != 0:
                    q = a[row * c + l] * piv
                    if _col_axpy(a, r, c, l, col, q) or _col_axpy(u, c, c, l, col, q):
                        return 1
        done[row] = 1
        pivot[col] = 1


def kernel_basis(rows, int r, int c):
    """Kernel basis columns (as lists) of an r x c matrix given flat."""
    cdef long long *a = <long long *> malloc(max(r * c, 1) * sizeof(long long))
    cdef long long *u = <long long *> malloc(max(c * c, 1) * sizeof(long long))
    cdef unsigned char *pivot = <unsigned char *> malloc(max(c, 1))
    cdef unsigned char *done = <unsigned char *> malloc(max(r, 1))
    cdef int i, j, status
    try:
        for i in range(r * c):
            a[i] = rows[i]
        for i in range(c):
            for j in range(c):
                u[i * c + j] = 1 if i == j else 0
        status = _kernel_inplace(a, u, r, c, pivot, done)
        if status:
            raise OverflowError("int64 overflow in kernel reduction")
        return [[u[i * c + j] for i in range(c)] for j in range(c) if not pivot[j]]
    finally:
        free(a)
        free(u)
        free(pivot)
        free(done)


def kernel_basis_batch(long long[:, :, :] mats, long long[:, :, :] basis,
                       long long[:] nullity, unsigned char[:] overflow):
    """Batch kernel bases; basis[idx, :, :nullity[idx]] holds the columns."""
    cdef Py_ssize_t n = mats.shape[0], idx
    cdef int r = mats.shape[1], c = mats.shape[2], i, j, k
    cdef long long *a = <long long *> malloc(max(r * c, 1) * sizeof(long long))
    cdef long long *u = <long long *> malloc(max(c * c, 1) * sizeof(long long))
    cdef unsigned char *pivot = <unsigned char *> malloc(max(c, 1))
    cdef unsigned char *done = <unsigned char *> malloc(max(r, 1))
    try:
        with nogil:
            for idx in range(n):
                for i in range(r):
                    for j in range(c):
                        a[i * c + j] = mats[idx, i, j]
                for i in range(c):
                    for j in range(c):
                        u[i * c + j] = 1 if i == j else 0
                        basis[idx, i, j] = 0
                overflow[idx] = _kernel_inplace(a, u, r, c, pivot, done)
                k = 0
                for j in range(c):
                    if not pivot[j]:
                        for i in range(c):
                            basis[idx, i, k] = u[i * c + j]
                        k += 1
                nullity[idx] = k
    finally:
        free(a)
        free(u)
        free(pivot)
        free(done)


cdef inline long long _qvalue(long long *q, long long *x, int n) nogil:
    cdef long long s = 0, row
    cdef int i, j
    for i in range(n):
        if x[i] == 0:
            continue
        row = 0
        for j in range(n):
            row += q[i * n + j] * x[j]
        s += x[i] * row
    return s


cdef inline int _canonical(long long *x, int n) nogil:
    cdef int i
    for i in range(n):
        if x[i] != 0:
            return x[i] > 0
    return 0


cdef long long *_load_matrix(Q, int n) except NULL:
    cdef long long *q = <long long *> malloc(max(n * n, 1) * sizeof(long long))
    cdef int i, j
    for i in range(n):
        for j in range(n):
            q[i * n + j] = Q[i][j]
    return q


def box_vectors(Q, bounds, long long lo, long long hi, bint canonical):
    """All nonzero x with |x_i| <= bounds[i] and lo <= x^T Q x <= hi.

    Returned as (value, tuple) pairs in ascending lexicographic order.
    """
    cdef int n = len(bounds), i
    cdef long long *q = _load_matrix(Q, n)
    cdef long long *x = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *b = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long v
    out = []
    try:
        if n == 0:
            return out
        for i in range(n):
            b[i] = bounds[i]
            x[i] = -b[i]
        while True:
            if not canonical or _canonical(x, n):
                v = _qvalue(q, x, n)
                if lo <= v <= hi:
                    for i in range(n):
                        if x[i] != 0:
                            out.append((v, tuple([x[i] for i in range(n)])))
                            break
            i = n - 1
            while i >= 0 and x[i] == b[i]:
                x[i] = -b[i]
                i -= 1
            if i < 0:
                break
            x[i] += 1
        return out
    finally:
        free(q)
        free(x)
        free(b)


def norm_counts(Q, bounds, long long lo, long long hi, bint canonical):
    """Histogram {value: count} of nonzero box vectors with lo <= value <= hi."""
    cdef int n = len(bounds), i, nz
    cdef long long *q = _load_matrix(Q, n)
    cdef long long *x = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *b = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long v
    cdef long long width = hi - lo + 1
    cdef long long *hist
    if width < 1 or width > 1000000:
        free(q); free(x); free(b)
        raise ValueError("histogram window out of range")
    hist = <long long *> malloc(width * sizeof(long long))
    try:
        for i in range(width):
            hist[i] = 0
        if n > 0:
            for i in range(n):
                b[i] = bounds[i]
                x[i] = -b[i]
            with nogil:
                while True:
                    nz = 0
                    for i in range(n):
                        if x[i] != 0:
                            nz = 1
                            break
                    if nz and (not canonical or _canonical(x, n)):
                        v = _qvalue(q, x, n)
                        if lo <= v <= hi:
                            hist[v - lo] += 1
                    i = n - 1
                    while i >= 0 and x[i] == b[i]:
                        x[i] = -b[i]
                        i -= 1
                    if i < 0:
                        break
                    x[i] += 1
        return {lo + i: hist[i] for i in range(width) if hist[i]}
    finally:
        free(q)
        free(x)
        free(b)
        free(hist)


def first_in_shells(Q, bounds, long long target):
    """First canonical x with x^T Q x == target, by sup-norm shell.

    Within a shell the hit of least l1 norm wins, ties going to the
    lexicographically largest.
    """
    cdef int n = len(bounds), i, on_shell
    cdef long long *q = _load_matrix(Q, n)
    cdef long long *x = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *b = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long rmax = 0, r, v, l1, best_l1
    best = None
    try:
        for i in range(n):
            if bounds[i] > rmax:
                rmax = bounds[i]
        for r in range(1, rmax + 1):
            for i in range(n):
                b[i] = r if bounds[i] > r else bounds[i]
                x[i] = b[i]
            while True:
                on_shell = 0
                for i in range(n):
                    if _abs(x[i]) == r:
                        on_shell = 1
                        break
                if on_shell and _canonical(x, n):
                    v = _qvalue(q, x, n)
                    if v == target:
                        l1 = 0
                        for i in range(n):
                            l1 += _abs(x[i])
                        if best is None or l1 < best_l1:
                            best = tuple([x[i] for i in range(n)])
                            best_l1 = l1
                i = n - 1
                while i >= 0 and x[i] == -b[i]:
                    x[i] = b[i]
                    i -= 1
                if i < 0:
                    break
                x[i] -= 1
            if best is not None:
                return best
        return None
    finally:
        free(q)
        free(x)
        free(b)
