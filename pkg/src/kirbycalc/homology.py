"""Homology and intersection form of an algebraic handle decomposition.

With dotted circles as 1-handles and framed knots as 2-handles, the
cellular boundary map from 2-chains to 1-chains is the dotted-by-framed
block ``D`` of the linking matrix.  H1 is the cokernel of ``D``; H2 of the
2-handlebody is its kernel, and the intersection form is the framed block
``Q`` restricted to that kernel, ``B^T Q B`` for a kernel basis ``B``.
"""
from dataclasses import dataclass

import numpy as np

from . import intmat, kernels
from .diagram import DiagramError, require_valid
from .forms import SymmetricIntMatrix


@dataclass(frozen=True)
class H1Group:
    """Finitely generated abelian group Z^free + sum Z/t."""

    torsion: tuple = ()
    free_rank: int = 0

    @property
    def trivial(self):
        return not self.torsion and not self.free_rank

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologySummary:
    euler: int
    h1: H1Group
    h2_rank: int
    form: SymmetricIntMatrix
    basis: tuple = ()
    framed_ids: tuple = ()
    warnings: tuple = ()

    @property
    def h1_invariant_factors(self):
        return self.h1.torsion, self.h1.free_rank

    def same_invariants(self, other):
        return (self.euler, self.h1, self.h2_rank, self.form) == \
            (other.euler, other.h1, other.h2_rank, other.form)


def euler_characteristic(hd):
    return hd.n0 - len(hd.dotted_ids) + len(hd.framed_ids) - hd.n3 + hd.n4


def boundary_matrix(hd):
    """Rows: dotted circles; columns: framed knots; entries: linking."""
    return hd.submatrix(hd.dotted_ids, hd.framed_ids)


def h1_of_matrix(d, nrows):
    diag = kernels.smith_diagonal(d, None)
    nonzero = [v for v in diag if v]
    return H1Group(tuple(v for v in nonzero if v > 1), nrows - len(nonzero))


def h1(hd):
    require_valid(hd)
    return h1_of_matrix(boundary_matrix(hd), len(hd.dotted_ids))


def homology(hd):
    require_valid(hd)
    dotted, framed = hd.dotted_ids, hd.framed_ids
    d = boundary_matrix(hd)
    q = hd.submatrix(framed, framed)
    basis = intmat.kernel_basis(d, len(framed))
    b = intmat.from_columns(basis, len(framed))
    form = SymmetricIntMatrix(intmat.congruence(q, b) if basis else ())
    warnings = ()
    if hd.n3:
        warnings = ("3-handles present: form computed on the 2-handlebody only",)
    return HomologySummary(
        euler=euler_characteristic(hd),
        h1=h1_of_matrix(d, len(dotted)),
        h2_rank=len(basis),
        form=form,
        basis=tuple(basis),
        framed_ids=tuple(framed),
        warnings=warnings,
    )


def form_determinant(hd):
    if hd.dotted_ids:
        raise DiagramError("form determinant needs a diagram without dotted circles")
    framed = hd.framed_ids
    return intmat.det(hd.submatrix(framed, framed))


def h1_batch(mats):
    """Vectorized H1 for a stack of boundary matrices of shape (N, r, c).

    Returns ``(diagonals, free_ranks)``: Smith diagonals (zeros last) and
    the free rank r - rank of each cokernel.
    """
    mats = np.asarray(mats, dtype=np.int64)
    diag = kernels.smith_diagonal_batch(mats)
    free = mats.shape[1] - np.count_nonzero(diag, axis=1)
    return diag, free


def kernel_batch(mats):
    """Vectorized 2-cycle bases; see ``kernels.kernel_basis_batch``."""
    return kernels.kernel_basis_batch(mats)
