import random

import pytest
from hypothesis import given, settings, strategies as st

from kirbycalc import legendrian as lg
import helpers

SAUCER = "lcusp 0 / rcusp 0"
TREFOIL = "lcusp 0 / lcusp 1 / cross 2 / cross 2 / cross 2 / rcusp 1 / rcusp 0"


def test_parse_saucer_and_trefoil():
    s = lg.parse_front(SAUCER)
    assert s.events == (("lcusp", 0), ("rcusp", 0)) and s.components == 1
    t = lg.parse_front(TREFOIL)
    inv = lg.classical_invariants(t)
    assert t.components == 1 and inv.cusps == 4 and inv.writhe == 3


def test_parse_newlines_and_comments():
    assert lg.parse_front(lg.SAUCER) == lg.parse_front(SAUCER)
    assert lg.parse_front("# unknot\nlcusp 0\n\nrcusp 0  # close\n").events == (("lcusp", 0), ("rcusp", 0))


@pytest.mark.parametrize("text, fragment", [
    ("rcusp 0", "underflow"),
    ("lcusp 0 / cross 1 / rcusp 0", "underflow"),
    ("lcusp 0", "open component"),
    ("lcusp 3 / rcusp 0", "outside"),
    ("hop 1", "cannot parse"),
    ("lcusp x", "bad position"),
    ("", "empty"),
    ("lcusp 0 / rcusp 0 / orient 2 -", "missing component"),
    ("lcusp 0 / rcusp 0 / orient 0 ?", "usage"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(lg.FrontError, match=fragment):
        lg.parse_front(text)


def test_saucer_and_trefoil_tb():
    s = lg.classical_invariants(lg.parse_front(SAUCER))
    assert (s.tb, s.rot) == (-1, 0)
    assert lg.classical_invariants(lg.parse_front(TREFOIL)).tb == 1


def test_zigzag_lowers_tb_and_shifts_rot():
    base = lg.parse_front(TREFOIL)
    a = lg.classical_invariants(base)
    for down in (True, False):
        z = lg.classical_invariants(lg.zigzag(base, 2, 1, down))
        assert z.tb == a.tb - 1 and abs(z.rot - a.rot) == 1
    up = lg.classical_invariants(lg.zigzag(base, 2, 1, True))
    dn = lg.classical_invariants(lg.zigzag(base, 2, 1, False))
    assert up.rot != dn.rot


def test_orientation_reversal_negates_rotation():
    f = lg.zigzag(lg.parse_front(SAUCER), 1, 0, True)
    g = lg.parse_front(lg.serialize_front(f) + "orient 0 -\n")
    a, b = lg.classical_invariants(f), lg.classical_invariants(g)
    assert a.tb == b.tb and a.rot == -b.rot != 0


def test_multicomponent_invariants():
    # two nested saucers: separate components with no crossings
    f = lg.parse_front("lcusp 0 / lcusp 2 / rcusp 2 / rcusp 0")
    assert f.components == 2
    inv = lg.component_invariants(f)
    assert [i.tb for i in inv] == [-1, -1]
    with pytest.raises(lg.FrontError, match="components"):
        lg.classical_invariants(f)
    assert lg.classical_invariants(f, 1).tb == -1


def test_linking_of_clasped_saucers():
    f = lg.parse_front("lcusp 0 / lcusp 2 / cross 1 / cross 1 / rcusp 2 / rcusp 0")
    assert f.components == 2
    assert abs(lg.linking_number(f, 0, 1)) == 1
    assert [i.tb for i in lg.component_invariants(f)] == [-1, -1]


def test_stein_examples():
    saucer, trefoil = lg.parse_front(SAUCER), lg.parse_front(TREFOIL)
    rep = lg.stein_check([(saucer, -2), (saucer, -1), (trefoil, 0)])
    assert [h.ok for h in rep.handles] == [True, False, True]
    assert [h.margin for h in rep.handles] == [0, -1, 0]
    assert not rep.ok
    assert lg.stein_check([(trefoil, -5)]).ok


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_round_trip(seed):
    f = helpers.random_front(random.Random(seed))
    assert lg.parse_front(lg.serialize_front(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_tb_plus_rot_odd(seed):
    f = helpers.random_front(random.Random(seed))
    for inv in lg.component_invariants(f):
        assert (inv.tb + inv.rot) % 2 == 1
        assert inv.cusps % 2 == 0 and inv.tb == inv.writhe - inv.cusps // 2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_zigzag_changes(seed):
    rng = random.Random(seed)
    f = helpers.random_front(rng)
    at = rng.randint(1, len(f))
    n = sum({"lcusp": 2, "rcusp": -2, "cross": 0}[k] for k, _ in f.events[:at])
    if not n:
        return
    pos = rng.randrange(n)
    comp = lg.strand_component(f, at, pos)
    g = lg.zigzag(f, at, pos, rng.random() < 0.5)
    a, b = lg.component_invariants(f)[comp], lg.component_invariants(g)[comp]
    assert (b.tb - a.tb, abs(b.rot - a.rot)) == (-1, 1)


def test_zigzag_bad_strand():
    with pytest.raises(lg.FrontError):
        lg.zigzag(lg.parse_front(SAUCER), 1, 5)
