"""Regression of the exact algebraic facts behind the plug, parity,
log-transform and rational blow-down computations.

Each check returns ``CheckResult`` lines; ``run_all`` collects them.  The
block constructors are injectable so a deliberately broken construction
can be fed in as a negative control.
"""
from dataclasses import dataclass, field
import time
from types import SimpleNamespace

from . import constructions, forms, intmat, surgery
from .homology import homology


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Ranges:
    m: range = range(1, 6)
    n: range = range(2, 6)
    parity_m: range = range(1, 11)
    phi_p: range = range(0, 11)
    phi_det_p: range = range(0, 51)
    chain_p: range = range(2, 13)


def default_builders():
    return SimpleNamespace(
        plug_w=constructions.plug_w,
        cp_chain=constructions.cp_chain,
        bp_ball=constructions.bp_ball,
        phi_matrix=surgery.phi_matrix,
    )


# expected values, written out independently of the constructions

def plug_before(m, n):
    return [[-2 * n - m * n * n, 1], [1, -1]]


def plug_after(m, n):
    return [[-2 * n - m * n * n, -1 - m * n], [-1 - m * n, -1 - m]]


def enlargement_forms(m, n):
    return ([[-1, 0, 0], [0, -m, 1], [0, 1, 0]],
            [[-2 * n - n * n * m, 1, 1], [1, 0, 0], [1, 0, -1]])


def displayed_phi(p):
    return [[1, 0, 0], [0, 0, 1], [0, -1, p]]


DIAG_1_M1_M1 = forms.diag_form([1, -1, -1])


def _plug_pair(builders, m, n):
    block = builders.plug_w(m, n)
    before = constructions.attach_external(block, [("e", -1, {block["partner"]: 1})])
    after = surgery.plug_twist(before, block["dot"], block["partner"])
    return homology(before).form, homology(after).form


def check_plug_matrices(ranges, builders):
    bad = []
    for m in ranges.m:
        for n in ranges.n:
            try:
                f0, f1 = _plug_pair(builders, m, n)
            except ValueError as exc:
                bad.append(f"(m={m}, n={n}) {exc}")
                continue
            if f0 != plug_before(m, n) or f1 != plug_after(m, n):
                bad.append(f"(m={m}, n={n}) got {f0.tolist()} / {f1.tolist()}")
    return CheckResult("plug intersection forms", not bad, "; ".join(bad[:3]))


def check_plug_distinct(ranges, builders, budget=None):
    bad = []
    for m in ranges.m:
        for n in ranges.n:
            try:
                f0, f1 = _plug_pair(builders, m, n)
            except ValueError as exc:
                bad.append(f"(m={m}, n={n}) {exc}")
                continue
            v = forms.congruent(f0, f1, budget)
            rep = forms.represents(f1, -1)
            if not (isinstance(v, forms.Distinct) and v.invariant == "represents(-1)"
                    and v.certified and rep.exhaustive and not rep.found):
                bad.append(f"(m={m}, n={n}) verdict {v}")
    return CheckResult("plug forms not isomorphic", not bad, "; ".join(bad[:3]))


def check_enlargement(ranges, budget=None):
    bad = []
    for m in ranges.m:
        for n in ranges.n:
            for q in enlargement_forms(m, n):
                v = forms.congruent(q, DIAG_1_M1_M1, budget)
                if not (isinstance(v, forms.Equivalent) and forms.is_witness(q, DIAG_1_M1_M1, v.witness)):
                    bad.append(f"(m={m}, n={n}) {q}: {v}")
    return CheckResult("enlargement forms ~ <1>+<-1>+<-1>", not bad, "; ".join(bad[:3]))


def check_parity(ranges, budget=None):
    bad = []
    hyp = [[0, 1], [1, 0]]
    odd = forms.diag_form([1, -1])
    for m in ranges.parity_m:
        q = [[0, 1], [1, -m]]
        target = hyp if m % 2 == 0 else odd
        v = forms.congruent(q, target, budget)
        if not (isinstance(v, forms.Equivalent) and forms.is_witness(q, target, v.witness)):
            bad.append(f"m={m}: {v}")
    return CheckResult("[[0,1],[1,-m]] parity classification", not bad, "; ".join(bad[:3]))


def check_phi(ranges, builders):
    bad = []
    for p in ranges.phi_p:
        if intmat.as_matrix(builders.phi_matrix(p)) != intmat.as_matrix(displayed_phi(p)):
            bad.append(f"p={p}: {builders.phi_matrix(p)}")
    for p in ranges.phi_det_p:
        if intmat.det(builders.phi_matrix(p)) != 1:
            bad.append(f"det at p={p}")
    return CheckResult("phi_p matrix and determinant", not bad, "; ".join(bad[:3]))


def check_chains(ranges, builders):
    bad = []
    for p in ranges.chain_p:
        try:
            chain = builders.cp_chain(p)
            hc = homology(chain.hd)
            q = hc.form
            if forms.definiteness(q) != "negative":
                bad.append(f"C_{p} not negative definite")
            if forms.signature(q) != -(p - 1) or abs(forms.determinant(q)) != p * p:
                bad.append(f"C_{p} sigma={forms.signature(q)} det={forms.determinant(q)}")
            hb = homology(builders.bp_ball(p).hd)
            if hb.h1.torsion != (p,) or hb.h1.free_rank or hb.h2_rank:
                bad.append(f"B_{p} H1={hb.h1} b2={hb.h2_rank}")
            out = homology(surgery.rational_blowdown(chain.hd, chain["chain"]))
            d_chi, d_b2 = out.euler - hc.euler, out.h2_rank - hc.h2_rank
            d_sig = (forms.signature(out.form) if out.h2_rank else 0) - forms.signature(q)
            if (d_chi, d_b2, d_sig) != (-(p - 1), -(p - 1), p - 1):
                bad.append(f"p={p}: deltas {(d_chi, d_b2, d_sig)}")
        except ValueError as exc:
            bad.append(f"p={p}: {exc}")
    return CheckResult("C_p / B_p and rational blow-down", not bad, "; ".join(bad[:3]))


@dataclass
class RegressionReport:
    results: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def lines(self):
        return [r.line() for r in self.results]


def run_all(ranges=None, builders=None, budget=None):
    ranges = ranges or Ranges()
    builders = builders or default_builders()
    t0 = time.perf_counter()
    results = [
        check_plug_matrices(ranges, builders),
        check_plug_distinct(ranges, builders, budget),
        check_enlargement(ranges, budget),
        check_parity(ranges, budget),
        check_phi(ranges, builders),
        check_chains(ranges, builders),
    ]
    return RegressionReport(results, time.perf_counter() - t0)
