import random

import numpy as np
import pytest

from kirbycalc import constructions, forms, intmat
from kirbycalc.diagram import DiagramError, HandleDecomposition, empty, framed
from kirbycalc.homology import (H1Group, euler_characteristic, form_determinant, h1,
                                h1_batch, homology, kernel_batch)
import helpers


def test_euler_examples():
    assert euler_characteristic(empty()) == 1
    assert euler_characteristic(constructions.cork_w(1).hd) == 1
    assert euler_characteristic(constructions.cp_chain(5).hd) == 5
    assert euler_characteristic(empty().replace(n3=1, n4=1)) == 1


def test_h1_examples():
    assert h1(constructions.cork_w(1).hd).trivial
    assert h1(constructions.bp_ball(5).hd) == H1Group((5,), 0)
    assert h1(constructions.t2xb2_block().hd) == H1Group((), 2)
    assert str(H1Group((5,), 2)) == "Z^2 + Z/5"
    assert str(H1Group()) == "0"
    assert str(H1Group((), 1)) == "Z"


def test_plug_forms():
    assert homology(constructions.plug_ambient(1, 2)).form == [[-8, 1], [1, -1]]
    blk = constructions.plug_w(1, 2)
    after = constructions.attach_external(blk, [("e", -1, {"b": 1})])
    from kirbycalc import surgery
    after = surgery.plug_twist(after, "d", "b")
    assert homology(after).form == [[-8, -3], [-3, -2]]


def test_t2_block_form():
    h = homology(constructions.t2xb2_block().hd)
    assert h.h2_rank == 1 and h.form == [[0]]


def test_form_determinant():
    assert form_determinant(constructions.cp_chain(5).hd) in (25, -25)
    assert form_determinant(constructions.cp_chain(2).hd) == -4
    assert form_determinant(empty()) == 1
    with pytest.raises(DiagramError):
        form_determinant(constructions.cork_w(1).hd)


def test_three_handle_warning():
    h = homology(empty().replace(n3=1))
    assert h.warnings


def test_invalid_diagram_rejected():
    bad = HandleDecomposition((framed("k", 1),), ((2,),))
    with pytest.raises(DiagramError):
        homology(bad)


def test_form_is_kernel_restriction():
    rng = random.Random(3)
    for _ in range(300):
        hd = helpers.random_diagram(rng, 6, 4)
        h = homology(hd)
        d = hd.submatrix(hd.dotted_ids, hd.framed_ids)
        q = hd.submatrix(hd.framed_ids, hd.framed_ids)
        for col in h.basis:
            assert all(sum(a * b for a, b in zip(row, col)) == 0 for row in d)
        want = len(hd.framed_ids) - (intmat.rank(d) if d else 0)
        assert h.h2_rank == want
        b = intmat.from_columns(list(h.basis), len(hd.framed_ids))
        if h.basis:
            assert h.form == intmat.congruence(q, b)
        # independent Smith route gives the same lattice
        other = intmat.kernel_basis_smith(d, len(hd.framed_ids)) if d else None
        if other is not None and h.basis:
            assert intmat.minors_gcd(list(h.basis), len(hd.framed_ids)) == 1
            assert len(other) == h.h2_rank


def test_euler_matches_betti_numbers():
    rng = random.Random(4)
    for _ in range(300):
        hd = helpers.random_diagram(rng, 6, 4)
        h = homology(hd)
        # chi = 1 - b1 + b2 for a 2-handlebody
        assert h.euler == 1 - h.h1.free_rank + h.h2_rank


def test_batch_matches_single():
    rng = np.random.default_rng(5)
    mats = rng.integers(-5, 6, size=(500, 2, 3))
    diag, free = h1_batch(mats)
    basis, nullity = kernel_batch(mats)
    for m, dg, fr, b, k in zip(mats, diag, free, basis, nullity):
        single = intmat.invariant_factors(m.tolist())
        assert [int(v) for v in dg if v] == [v for v in single if v]
        assert fr == 2 - intmat.rank(m.tolist())
        cols = intmat.kernel_basis(m.tolist(), 3)
        assert k == len(cols)
        assert [list(b[:, j]) for j in range(k)] == [list(c) for c in cols]


def test_positron_matches_cork_homology():
    a = homology(constructions.positron(1).hd)
    b = homology(constructions.cork_w(1).hd)
    assert a.same_invariants(b)
    assert (a.euler, a.h1.trivial, a.h2_rank) == (1, True, 0)
