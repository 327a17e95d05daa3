"""Kirby moves on linking data, and a small scripting language for them.

Sign conventions, used everywhere in the package:

* sliding framed ``i`` over framed ``j`` with sign s replaces i by i + s*j:
  framing(i) += framing(j) + 2 s lk(i, j) and lk(i, c) += s lk(j, c);
* blowing down an eps-framed unknot ``u`` (eps = +-1) subtracts
  eps * lk(i, u) * lk(j, u) from every remaining entry, framings included.
"""
from dataclasses import dataclass, field
import re

from .diagram import DiagramError, framed, dotted, require_valid
from .homology import euler_characteristic


class MoveError(DiagramError):
    """A move's precondition failed."""


def _require(hd, cid, kind=None):
    if cid not in hd:
        raise MoveError(f"no component named {cid!r}")
    c = hd.component(cid)
    if kind == "framed" and not c.framed:
        raise MoveError(f"{cid!r} must be a framed component")
    if kind == "dotted" and not c.dotted:
        raise MoveError(f"{cid!r} must be a dotted circle")
    return c


def _check_sign(sign):
    if sign not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {sign!r}")


def _with_matrix(hd, comps, m, **counts):
    """Rebuild from a dense matrix over ``comps`` (framings read off the diagonal)."""
    comps = [framed(c.id, m[i][i]) if c.framed else c for i, c in enumerate(comps)]
    links = {(comps[i].id, comps[j].id): m[i][j]
             for i in range(len(comps)) for j in range(i + 1, len(comps)) if m[i][j]}
    return hd.replace(components=comps, links=links, **counts)


def slide_2_over_2(hd, i, j, sign=1):
    """Handle slide of framed ``i`` over framed ``j``."""
    _check_sign(sign)
    if i == j:
        raise MoveError("cannot slide a handle over itself")
    _require(hd, i, "framed")
    _require(hd, j, "framed")
    m = [list(row) for row in hd.matrix]
    a, b = hd.index(i), hd.index(j)
    n = len(m)
    new_ii = m[a][a] + m[b][b] + 2 * sign * m[a][b]
    row = [m[a][c] + sign * m[b][c] for c in range(n)]
    row[a] = new_ii
    for c in range(n):
        m[a][c] = m[c][a] = row[c]
    return _with_matrix(hd, hd.components, m)


def slide_2_over_1(hd, i, d, sign=1):
    """Slide framed ``i`` over dotted ``d``: only lk(i, d) moves, by ``sign``."""
    _check_sign(sign)
    _require(hd, i, "framed")
    _require(hd, d, "dotted")
    links = hd.links()
    key = (i, d) if hd.index(i) < hd.index(d) else (d, i)
    links[key] = links.get(key, 0) + sign
    return hd.replace(links={k: v for k, v in links.items() if v})


def blow_up(hd, new_id, sign=-1, v=None):
    """Add a ``sign``-framed unknot linking framed components per ``v``.

    Entries among the linked components change by sign * v_a * v_b, so that
    ``blow_down(result, new_id)`` returns ``hd`` exactly.  With ``v`` empty
    this is a connected sum with +-CP^2.
    """
    _check_sign(sign)
    if new_id in hd:
        raise MoveError(f"id {new_id!r} already in use")
    v = {k: int(x) for k, x in (v or {}).items() if x}
    for cid in v:
        _require(hd, cid, "framed")
    n = len(hd.components)
    m = [list(row) + [0] for row in hd.matrix] + [[0] * (n + 1)]
    vec = [v.get(c.id, 0) for c in hd.components]
    for a in range(n):
        for b in range(n):
            m[a][b] += sign * vec[a] * vec[b]
        m[a][n] = m[n][a] = vec[a]
    m[n][n] = sign
    comps = list(hd.components) + [framed(new_id, sign)]
    return _with_matrix(hd, comps, m)


def blow_down(hd, u):
    """Remove a +-1-framed unknot ``u`` that links no dotted circle."""
    c = _require(hd, u, "framed")
    eps = c.framing
    if eps not in (1, -1):
        raise MoveError(f"{u!r} has framing {eps}; only +-1-framed unknots blow down")
    for d in hd.dotted_ids:
        if hd.lk(u, d):
            raise MoveError(f"{u!r} links dotted circle {d!r}")
    k = hd.index(u)
    keep = [i for i in range(len(hd.components)) if i != k]
    col = [hd.matrix[i][k] for i in range(len(hd.components))]
    m = [[hd.matrix[i][j] - eps * col[i] * col[j] for j in keep] for i in keep]
    return _with_matrix(hd, [hd.components[i] for i in keep], m)


def cancel_pair(hd, d, k, trace=None):
    """Cancel dotted ``d`` against framed ``k`` with lk(k, d) = +-1.

    Every other framed component is first slid over ``k`` until it no longer
    links ``d``; the slides performed are appended to ``trace`` (a list) as
    ``(i, k, sign)`` triples.
    """
    _require(hd, d, "dotted")
    _require(hd, k, "framed")
    e = hd.lk(k, d)
    if abs(e) != 1:
        raise MoveError(f"cannot cancel: lk({k}, {d}) = {e}, need +-1")
    for i in hd.framed_ids:
        if i == k:
            continue
        count = -hd.lk(i, d) * e
        sign = 1 if count > 0 else -1
        for _ in range(abs(count)):
            hd = slide_2_over_2(hd, i, k, sign)
            if trace is not None:
                trace.append((i, k, sign))
    comps = [c for c in hd.components if c.id not in (d, k)]
    return hd.replace(components=comps)


def dot_zero_swap(hd, cid):
    """Exchange a dotted circle with a 0-framed unknot (or back)."""
    c = _require(hd, cid)
    if c.framed and c.framing != 0:
        raise MoveError(f"{cid!r} has framing {c.framing}; only 0-framed knots become dotted")
    new = framed(cid, 0) if c.dotted else dotted(cid)
    comps = [new if x.id == cid else x for x in hd.components]
    out = hd.replace(components=comps)
    # the dotted circles must stay an unlink
    if new.dotted:
        for other in hd.dotted_ids:
            if hd.lk(cid, other):
                raise MoveError(f"{cid!r} links dotted circle {other!r}")
    return out


# -- scripts --------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    verb: str
    args: tuple
    lineno: int = 0
    text: str = ""


@dataclass(frozen=True)
class MoveScript:
    moves: tuple = ()

    def __len__(self):
        return len(self.moves)


@dataclass(frozen=True)
class TraceEntry:
    index: int
    move: str
    components: int
    euler: int
    violation: str | None = None
    detail: tuple = ()


@dataclass
class Trace:
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def format(self):
        lines = []
        for e in self.entries:
            status = f"FAILED: {e.violation}" if e.violation else "ok"
            lines.append(f"[{e.index}] {e.move}: components={e.components} chi={e.euler} {status}")
            for sub in e.detail:
                lines.append(f"    {sub}")
        return "\n".join(lines)


class ScriptError(MoveError):
    def __init__(self, index, message, trace):
        super().__init__(f"move {index}: {message}")
        self.index = index
        self.trace = trace


class ScriptSyntaxError(DiagramError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_SIGN = {"+": 1, "-": -1}


def parse_script(text):
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        verb, args = toks[0], toks[1:]
        try:
            parsed = _parse_move(verb, args)
        except (ValueError, IndexError, KeyError) as exc:
            raise ScriptSyntaxError(lineno, f"cannot parse {line!r}: {exc}") from None
        moves.append(Move(verb, parsed, lineno, line))
    return MoveScript(tuple(moves))


def _parse_move(verb, args):
    if verb in ("slide", "slide1"):
        if len(args) != 4 or args[1] != "over":
            raise ValueError(f"usage: {verb} <i> over <j> <+|->")
        return args[0], args[2], _SIGN[args[3]]
    if verb == "blowup":
        if len(args) < 2:
            raise ValueError("usage: blowup <id> <+|-> [lk <id>:<int> ...]")
        v = {}
        rest = args[2:]
        if rest:
            if rest[0] != "lk":
                raise ValueError("expected 'lk' before linking data")
            for tok in rest[1:]:
                cid, val = tok.rsplit(":", 1)
                v[cid] = int(val)
        return args[0], _SIGN[args[1]], v
    if verb in ("blowdown", "dotswap"):
        if len(args) != 1:
            raise ValueError(f"usage: {verb} <id>")
        return (args[0],)
    if verb in ("cancel", "corktwist", "plugtwist"):
        if len(args) != 2:
            raise ValueError(f"usage: {verb} <d> <k>")
        return args[0], args[1]
    if verb == "rbd":
        if len(args) != 1:
            raise ValueError("usage: rbd <id1,...,idn>")
        return (tuple(args[0].split(",")),)
    if verb == "logt":
        if len(args) < 2:
            raise ValueError("usage: logt <d1,d2,t> <p> [<id>:<a>,<b>,<c> ...]")
        block = tuple(args[0].split(","))
        if len(block) != 3:
            raise ValueError("logt block needs three ids")
        curves = {}
        for tok in args[2:]:
            cid, vals = tok.split(":", 1)
            curves[cid] = tuple(int(x) for x in vals.split(","))
        return block, int(args[1]), curves
    raise ValueError(f"unknown move {verb!r}")


def _run(hd, move, detail):
    from . import surgery
    verb, a = move.verb, move.args
    if verb == "slide":
        return slide_2_over_2(hd, *a)
    if verb == "slide1":
        return slide_2_over_1(hd, *a)
    if verb == "blowup":
        return blow_up(hd, a[0], a[1], a[2])
    if verb == "blowdown":
        return blow_down(hd, a[0])
    if verb == "cancel":
        slides = []
        out = cancel_pair(hd, a[0], a[1], trace=slides)
        detail.extend(f"slide {i} over {k} {'+' if s > 0 else '-'}" for i, k, s in slides)
        return out
    if verb == "dotswap":
        return dot_zero_swap(hd, a[0])
    if verb == "corktwist":
        return surgery.cork_twist(hd, *a)
    if verb == "plugtwist":
        return surgery.plug_twist(hd, *a)
    if verb == "rbd":
        return surgery.rational_blowdown(hd, list(a[0]))
    if verb == "logt":
        out, _ = surgery.log_transform(hd, a[0], a[1], a[2])
        return out
    raise MoveError(f"unknown move {verb!r}")


def apply_script(hd, script):
    """Apply moves left to right; returns ``(hd, trace)``.

    On the first failing move a ``ScriptError`` carrying the trace up to and
    including the failure is raised.
    """
    if isinstance(script, str):
        script = parse_script(script)
    require_valid(hd)
    trace = Trace()
    for idx, move in enumerate(script.moves):
        detail = []
        try:
            hd = _run(hd, move, detail)
        except DiagramError as exc:
            trace.entries.append(TraceEntry(idx, move.text or move.verb, len(hd.components),
                                            euler_characteristic(hd), str(exc), tuple(detail)))
            raise ScriptError(idx, str(exc), trace) from exc
        trace.entries.append(TraceEntry(idx, move.text or move.verb, len(hd.components),
                                        euler_characteristic(hd), None, tuple(detail)))
    return hd, trace
