"""Cork and plug twists, stabilization, rational blow-down, log transforms.

The surgeries here return a different manifold, so their output carries no
``manifold`` name.
"""
from dataclasses import dataclass

from . import forms, intmat
from .diagram import DiagramError, dotted, framed
from .homology import HomologySummary, homology
from .moves import MoveError, dot_zero_swap


def _swap_kinds(hd, d, k):
    comps = []
    for c in hd.components:
        if c.id == d:
            comps.append(framed(d, 0))
        elif c.id == k:
            comps.append(dotted(k))
        else:
            comps.append(c)
    out = hd.replace(components=comps, name=None)
    for other in out.dotted_ids:
        if other != k and out.lk(k, other):
            raise MoveError(f"{k!r} links dotted circle {other!r}; the swap would link dotted circles")
    return out


def _check_pair(hd, d, k):
    for cid in (d, k):
        if cid not in hd:
            raise MoveError(f"no component named {cid!r}")
    cd, ck = hd.component(d), hd.component(k)
    if cd.dotted and ck.framed:
        return d, k
    if ck.dotted and cd.framed:
        # twisting an already twisted block: roles are reversed
        return k, d
    raise MoveError(f"need one dotted and one framed component, got {d!r} and {k!r}")


def cork_twist(hd, d, k):
    """Exchange the dot and the 0 of a cork skeleton (lk = +-1)."""
    d, k = _check_pair(hd, d, k)
    if hd.framing(k) != 0:
        raise MoveError(f"cork partner {k!r} must be 0-framed, has {hd.framing(k)}")
    if abs(hd.lk(d, k)) != 1:
        raise MoveError(f"cork skeleton needs lk({d}, {k}) = +-1, got {hd.lk(d, k)}")
    return _swap_kinds(hd, d, k)


def plug_twist(hd, d, b):
    """Exchange the dot and the 0-framed partner of a plug (any linking)."""
    d, b = _check_pair(hd, d, b)
    if hd.framing(b) != 0:
        raise MoveError(f"plug partner {b!r} must be 0-framed, has {hd.framing(b)}")
    return _swap_kinds(hd, d, b)


def stabilize(hd, d):
    """Turn dotted ``d`` into a 0-framed 2-handle."""
    if d not in hd or not hd.component(d).dotted:
        raise MoveError(f"{d!r} must be a dotted circle")
    return dot_zero_swap(hd, d)


@dataclass(frozen=True)
class StabilizationReport:
    meridian: str | None
    summand: forms.SymmetricIntMatrix | None
    parity: str | None
    verdict: object = None

    @property
    def hyperbolic(self):
        return self.parity == "even"


HYPERBOLIC = forms.SymmetricIntMatrix([[0, 1], [1, 0]])
ODD_PAIR = forms.diag_form([1, -1])


def stabilization_report(hd, d, meridian=None):
    """Classify the summand created by stabilizing at ``d``.

    The summand is spanned by the new 0-framed handle and a meridian of the
    dotted circle (a framed component linking it once; the first such one
    when not given).  It is [[0, +-1], [+-1, f]], hyperbolic iff f is even.
    """
    if meridian is None:
        meridian = next((c for c in hd.framed_ids if abs(hd.lk(c, d)) == 1), None)
    if meridian is None:
        return StabilizationReport(None, None, None)
    e = hd.lk(meridian, d)
    if abs(e) != 1:
        raise MoveError(f"{meridian!r} is not a meridian of {d!r}")
    summand = forms.SymmetricIntMatrix([[0, e], [e, hd.framing(meridian)]])
    par = forms.parity(summand)
    target = HYPERBOLIC if par == "even" else ODD_PAIR
    return StabilizationReport(meridian, summand, par, forms.congruent(summand, target))


def _chain_p(hd, chain):
    p = len(chain) + 1
    if len(set(chain)) != len(chain):
        raise MoveError("chain repeats a component")
    for cid in chain:
        if cid not in hd or not hd.component(cid).framed:
            raise MoveError(f"chain member {cid!r} must be a framed component")
    want = [-p - 2] + [-2] * (p - 2)
    got = [hd.framing(c) for c in chain]
    if got != want:
        raise MoveError(f"chain framings {got} do not match C_{p} pattern {want}")
    for i, a in enumerate(chain):
        for j, b in enumerate(chain):
            if i < j:
                expect = 1 if j == i + 1 else 0
                if hd.lk(a, b) != expect:
                    raise MoveError(f"lk({a}, {b}) = {hd.lk(a, b)}, chain needs {expect}")
    return p


def _fresh(hd, base):
    cid, k = base, 1
    while cid in hd:
        k += 1
        cid = f"{base}{k}"
    return cid


def rational_blowdown(hd, chain, dot_id="D", partner_id="K"):
    """Replace a C_p chain by the rational ball B_p.

    External components may link only the first chain member; a component
    linking it lam times links the new dotted circle lam times and the new
    2-handle not at all.
    """
    chain = list(chain)
    if not chain:
        raise MoveError("empty chain")
    p = _chain_p(hd, chain)
    end = chain[0]
    members = set(chain)
    for c in hd.components:
        if c.id in members:
            continue
        for j, cid in enumerate(chain):
            if hd.lk(c.id, cid) and (j > 0 or c.dotted):
                raise MoveError(f"{c.id!r} links chain member {cid!r}; only framed "
                                f"components linking {end!r} are supported")
    rest = [c for c in hd.components if c.id not in members]
    D = _fresh(hd.replace(components=rest), dot_id)
    K = _fresh(hd.replace(components=rest), partner_id)
    links = {k: v for k, v in hd.links().items() if k[0] not in members and k[1] not in members}
    links[(D, K)] = p
    for c in rest:
        lam = hd.lk(c.id, end)
        if lam:
            links[(c.id, D)] = lam
    comps = rest + [dotted(D), framed(K, p - 1)]
    return hd.replace(components=comps, links=links, name=None)


def blowdown_replay_script(chain, new_id="e"):
    """Move script realizing the blow-down of a C_p chain by elementary moves.

    Blow up a +1 unknot on the far end, blow down the -1 knots this creates
    one after another, slide the first member over the new knot, then turn
    the resulting 0-framed knot into a dotted circle.
    """
    chain = list(chain)
    lines = [f"blowup {new_id} + lk {chain[-1]}:1"]
    lines += [f"blowdown {cid}" for cid in reversed(chain[1:])]
    lines += [f"slide {chain[0]} over {new_id} +", f"dotswap {chain[0]}"]
    return "\n".join(lines) + "\n"


def phi_matrix(p):
    """Automorphism of H1(T^3) used to reglue T^2 x B^2 with multiplicity p."""
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"multiplicity must be a nonnegative integer, got {p!r}")
    return ((1, 0, 0), (0, 0, 1), (0, -1, p))


def phi_inverse(p):
    return intmat.inverse_unimodular(phi_matrix(p))


def log_transform(hd, block, p, curves=None, direction="inverse"):
    """Logarithmic transform bookkeeping on a T^2 x B^2 block.

    ``block`` is ``(d1, d2, t)``: two unlinked dotted circles and a 0-framed
    knot.  ``curves`` maps each external component linking the block to its
    (alpha, beta, gamma) coordinates, which must equal its current linking
    with (d1, d2, t).  The coordinates are pushed through phi_p^-1 (or phi_p
    with ``direction="forward"``) and the linking is rewritten to match.
    Returns ``(new_hd, new_curves)``.
    """
    d1, d2, t = block
    for cid in (d1, d2):
        if cid not in hd or not hd.component(cid).dotted:
            raise MoveError(f"block member {cid!r} must be dotted")
    if t not in hd or not hd.component(t).framed or hd.framing(t) != 0:
        raise MoveError(f"block member {t!r} must be 0-framed")
    if hd.lk(d1, t) or hd.lk(d2, t):
        raise MoveError("block does not match the T^2 x B^2 skeleton")
    if direction == "inverse":
        mat = phi_inverse(p)
    elif direction == "forward":
        mat = phi_matrix(p)
    else:
        raise ValueError(f"direction must be 'inverse' or 'forward', got {direction!r}")
    curves = dict(curves or {})
    members = {d1, d2, t}
    new_curves = {}
    links = {k: v for k, v in hd.links().items() if not (members & set(k))}
    for c in hd.components:
        if c.id in members:
            continue
        current = (hd.lk(c.id, d1), hd.lk(c.id, d2), hd.lk(c.id, t))
        if c.id not in curves:
            if any(current):
                raise MoveError(f"{c.id!r} links the block but has no curve data")
            continue
        coords = tuple(curves[c.id])
        if coords != current:
            raise MoveError(f"curve data {coords} for {c.id!r} disagrees with its linking {current}")
        if c.dotted and coords[2]:
            raise MoveError(f"dotted {c.id!r} cannot link the 0-framed block member")
        new = intmat.matvec(mat, coords)
        if c.dotted and (new[0] or new[1]):
            raise MoveError(f"transformed curve of dotted {c.id!r} would link dotted circles")
        new_curves[c.id] = new
        for cid, v in zip((d1, d2, t), new):
            if v:
                links[(c.id, cid)] = v
    return hd.replace(links=links, name=None), new_curves


@dataclass(frozen=True)
class TwistReport:
    before: HomologySummary
    after: HomologySummary
    verdict: object

    @property
    def same_homology(self):
        return (self.before.euler, self.before.h1, self.before.h2_rank) == \
            (self.after.euler, self.after.h1, self.after.h2_rank)


def twist_report(before, after, budget=None):
    hb, ha = homology(before), homology(after)
    return TwistReport(hb, ha, forms.congruent(hb.form, ha.form, budget))
