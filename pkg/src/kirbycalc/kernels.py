"""Backend selection for the hot loops.

The compiled ``_speedups`` extension is used when it imports and the inputs
fit in 64-bit arithmetic; otherwise the pure-Python twins in ``_pure`` run.
Set ``KIRBYCALC_PURE=1`` to force the pure backend (used by the benchmark
and the backend-equivalence tests).
"""
import os

import numpy as np

from . import _pure

try:
    if os.environ.get("KIRBYCALC_PURE"):
        raise ImportError("pure backend forced")
    from . import _speedups
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None

BACKEND = "compiled" if _speedups is not None else "python"

# inputs must stay well below 2**63 so a few products cannot wrap
_ENTRY_LIMIT = 1 << 40
_VALUE_LIMIT = 1 << 62


def _fits(flat):
    return all(-_ENTRY_LIMIT < v < _ENTRY_LIMIT for v in flat)


def _box_fits(Q, bounds):
    n = len(bounds)
    total = sum(abs(Q[i][j]) * bounds[i] * bounds[j] for i in range(n) for j in range(n))
    return total < _VALUE_LIMIT


def _flatten(rows):
    return [int(v) for row in rows for v in row]


def smith_diagonal(rows, ncols=None):
    """Invariant-factor diagonal (nonnegative, divisibility ordered)."""
    rows = [list(r) for r in rows]
    r = len(rows)
    c = len(rows[0]) if rows else (ncols or 0)
    flat = _flatten(rows)
    if _speedups is not None and _fits(flat):
        try:
            return _speedups.smith_diagonal(flat, r, c)
        except OverflowError:
            pass
    return _pure.smith_diagonal(flat, r, c)


def kernel_basis(rows, ncols):
    """Kernel basis columns of a matrix with ``ncols`` columns."""
    rows = [list(r) for r in rows]
    r = len(rows)
    flat = _flatten(rows)
    if _speedups is not None and _fits(flat):
        try:
            return _speedups.kernel_basis(flat, r, ncols)
        except OverflowError:
            pass
    return _pure.kernel_basis(flat, r, ncols)


def _fits_int64(values):
    return all(-_VALUE_LIMIT < v < _VALUE_LIMIT for v in values)


def smith_diagonal_batch(mats):
    """Smith diagonals for an (N, r, c) int64 array.

    The result is int64 unless some diagonal entry does not fit, in which
    case it is an object array of Python ints.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    n, r, c = mats.shape
    out = np.zeros((n, min(r, c)), dtype=np.int64)
    if _speedups is None:
        todo = range(n)
    else:
        flags = np.zeros(n, dtype=np.uint8)
        _speedups.smith_diagonal_batch(mats, out, flags)
        todo = np.flatnonzero(flags)
    for idx in todo:
        d = _pure.smith_diagonal(mats[idx].ravel().tolist(), r, c)
        if out.dtype != object and not _fits_int64(d):
            out = out.astype(object)
        out[idx] = d
    return out


def kernel_basis_batch(mats):
    """Kernel bases for an (N, r, c) int64 array.

    Returns ``(basis, nullity)`` where ``basis[i, :, :nullity[i]]`` holds the
    basis columns of matrix ``i``.  As with ``smith_diagonal_batch`` the
    basis falls back to an object array when entries outgrow int64.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    n, r, c = mats.shape
    basis = np.zeros((n, c, c), dtype=np.int64)
    nullity = np.zeros(n, dtype=np.int64)
    if _speedups is None:
        todo = range(n)
    else:
        flags = np.zeros(n, dtype=np.uint8)
        _speedups.kernel_basis_batch(mats, basis, nullity, flags)
        todo = np.flatnonzero(flags)
    for idx in todo:
        cols = _pure.kernel_basis(mats[idx].ravel().tolist(), r, c)
        if basis.dtype != object and not all(_fits_int64(col) for col in cols):
            basis = basis.astype(object)
        basis[idx] = 0
        for k, col in enumerate(cols):
            basis[idx, :, k] = col
        nullity[idx] = len(cols)
    return basis, nullity


def box_vectors(Q, bounds, lo, hi, canonical=False):
    """(value, vector) for nonzero box vectors with lo <= x^T Q x <= hi."""
    bounds = [int(b) for b in bounds]
    if _speedups is not None and _box_fits(Q, bounds) and -_VALUE_LIMIT < lo <= hi < _VALUE_LIMIT:
        return _speedups.box_vectors(Q, bounds, lo, hi, canonical)
    return _pure.box_vectors(Q, bounds, lo, hi, canonical)


def norm_counts(Q, bounds, lo, hi, canonical=False):
    bounds = [int(b) for b in bounds]
    if _speedups is not None and _box_fits(Q, bounds) and hi - lo < 1_000_000:
        return _speedups.norm_counts(Q, bounds, lo, hi, canonical)
    return _pure.norm_counts(Q, bounds, lo, hi, canonical)


def first_in_shells(Q, bounds, target):
    """First canonical vector of value ``target`` in sup-norm shell order."""
    bounds = [int(b) for b in bounds]
    if _speedups is not None and _box_fits(Q, bounds) and abs(target) < _VALUE_LIMIT:
        return _speedups.first_in_shells(Q, bounds, target)
    return _pure.first_in_shells(Q, bounds, target)
