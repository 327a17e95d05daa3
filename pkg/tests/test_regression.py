from types import SimpleNamespace

from kirbycalc import constructions, regression
from kirbycalc.diagram import HandleDecomposition, dotted, framed


SMALL = regression.Ranges(m=range(1, 3), n=range(2, 4), parity_m=range(1, 5),
                          phi_p=range(0, 4), phi_det_p=range(0, 6), chain_p=range(2, 5))


def test_default_run_passes():
    rep = regression.run_all(SMALL)
    assert rep.ok, rep.lines()
    assert len(rep.results) == 6 and all(ln.startswith("PASS") for ln in rep.lines())


def test_expected_value_helpers_match_builders():
    for m in (1, 2, 3):
        for n in (2, 3):
            f0, f1 = regression._plug_pair(regression.default_builders(), m, n)
            assert f0 == regression.plug_before(m, n) and f1 == regression.plug_after(m, n)


def _broken_plug(m, n):
    # wrong linking between the meridian and the dotted circle
    blk = constructions.plug_w(m, n)
    links = {k: v for k, v in blk.hd.links().items() if set(k) != {"a", "d"}}
    links[("a", "d")] = 2
    hd = blk.hd.replace(links=links)
    return constructions.BlockModel(hd, blk.roles, blk.label)


def test_broken_plug_is_caught():
    b = regression.default_builders()
    b.plug_w = _broken_plug
    res = regression.check_plug_matrices(SMALL, b)
    assert not res.ok and "m=1" in res.detail


def test_broken_chain_is_caught():
    def bad_chain(p):
        blk = constructions.cp_chain(p)
        comps = [framed(c.id, -(p + 1)) if c.id == "c1" else c for c in blk.hd.components]
        return constructions.BlockModel(blk.hd.replace(components=comps), blk.roles, blk.label)

    b = regression.default_builders()
    b.cp_chain = bad_chain
    assert not regression.check_chains(SMALL, b).ok


def test_broken_ball_is_caught():
    def bad_ball(p):
        hd = HandleDecomposition.build([dotted("D"), framed("K", p - 1)], {("D", "K"): p + 1})
        return constructions.BlockModel(hd, {"dot": "D", "knot": "K"}, "B")

    b = regression.default_builders()
    b.bp_ball = bad_ball
    assert not regression.check_chains(SMALL, b).ok


def test_broken_phi_is_caught():
    b = SimpleNamespace(**vars(regression.default_builders()))
    b.phi_matrix = lambda p: [[1, 0, 0], [0, 0, 1], [0, -1, p + 1]]
    assert not regression.check_phi(SMALL, b).ok


def test_result_line_format():
    assert regression.CheckResult("x", True).line() == "PASS x"
    assert regression.CheckResult("x", False, "why").line() == "FAIL x: why"
