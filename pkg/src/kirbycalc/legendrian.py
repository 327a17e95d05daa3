"""Legendrian fronts as slice events, with tb, rotation and the Stein test.

A front is read left to right as a sequence of events acting on horizontal
strands numbered from the top (0):

    lcusp <pos>   two new strands appear at pos, pos+1
    rcusp <pos>   strands pos and pos+1 close up
    cross <pos>   strands pos and pos+1 cross

Events are separated by newlines or '/'.  A line ``orient <k> <+|->``
reverses (``-``) or keeps (``+``) the default orientation of component k,
where components are numbered by their first left cusp and the default
sends the upper strand of that cusp to the right.

Fronts carry no over/under data: at a crossing the strand of lesser slope
is in front.  A crossing is positive when both strands run the same way in
x, and tb = writhe - cusps/2, rot = (downward cusps - upward cusps)/2.
"""
from dataclasses import dataclass, field

EVENTS = ("lcusp", "rcusp", "cross")


class FrontError(ValueError):
    pass


class FrontSyntaxError(FrontError):
    def __init__(self, lineno, message):
        super().__init__(f"event {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class LegendrianFront:
    events: tuple
    reversed_components: frozenset = frozenset()
    # filled in by _trace
    components: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.events)

    def __post_init__(self):
        object.__setattr__(self, "components", _trace(self.events).ncomp)
        bad = [k for k in self.reversed_components if not 0 <= k < self.components]
        if bad:
            raise FrontError(f"orient refers to missing component {min(bad)}")


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    writhe: int
    cusps: int


@dataclass
class _Traced:
    ncomp: int = 0
    comp_of_arc: list = field(default_factory=list)
    root_arc: list = field(default_factory=list)
    cusps: list = field(default_factory=list)      # (kind, top arc, bottom arc)
    crossings: list = field(default_factory=list)  # (arc, arc)
    links: list = field(default_factory=list)      # arc pairs joined at a cusp


def _trace(events):
    strands = []
    arcs = 0
    t = _Traced()
    for idx, (kind, pos) in enumerate(events, 1):
        if kind == "lcusp":
            if not 0 <= pos <= len(strands):
                raise FrontSyntaxError(idx, f"lcusp {pos} outside 0..{len(strands)}")
            top, bot = arcs, arcs + 1
            arcs += 2
            strands[pos:pos] = [top, bot]
            t.cusps.append(("l", top, bot))
            t.links.append((top, bot))
            continue
        if not 0 <= pos or pos + 1 >= len(strands):
            raise FrontSyntaxError(idx, f"strand underflow: {kind} {pos} with {len(strands)} strands")
        top, bot = strands[pos], strands[pos + 1]
        if kind == "rcusp":
            del strands[pos:pos + 2]
            t.cusps.append(("r", top, bot))
            t.links.append((top, bot))
        else:
            strands[pos], strands[pos + 1] = bot, top
            t.crossings.append((top, bot))
    if strands:
        raise FrontError(f"open component: {len(strands)} strands left at the end")

    parent = list(range(arcs))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.links:
        parent[find(a)] = find(b)
    label = {}
    for kind, top, _ in t.cusps:
        if kind == "l" and find(top) not in label:
            label[find(top)] = len(label)
            t.root_arc.append(top)
    t.ncomp = len(label)
    t.comp_of_arc = [label[find(a)] for a in range(arcs)]
    return t


def _directions(front, t):
    """x-direction (+1 right, -1 left) of every arc."""
    nbr = {}
    for a, b in t.links:
        nbr.setdefault(a, []).append(b)
        nbr.setdefault(b, []).append(a)
    dirs = {}
    for k, root in enumerate(t.root_arc):
        dirs[root] = -1 if k in front.reversed_components else 1
        stack = [root]
        while stack:
            a = stack.pop()
            for b in nbr.get(a, ()):
                if b not in dirs:
                    dirs[b] = -dirs[a]
                    stack.append(b)
                elif dirs[b] == dirs[a]:
                    raise FrontError("unoriented front: cusp joins strands running the same way")
    return dirs


def parse_front(text):
    events = []
    reverse = set()
    chunks = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        chunks.extend(line.split("/"))
    for idx, chunk in enumerate(chunks, 1):
        toks = chunk.split()
        if not toks:
            continue
        if toks[0] == "orient":
            if len(toks) != 3 or toks[2] not in "+-" or len(toks[2]) != 1:
                raise FrontSyntaxError(idx, "usage: orient <component> <+|->")
            try:
                k = int(toks[1])
            except ValueError:
                raise FrontSyntaxError(idx, f"bad component index {toks[1]!r}") from None
            if toks[2] == "-":
                reverse.add(k)
            else:
                reverse.discard(k)
            continue
        if toks[0] not in EVENTS or len(toks) != 2:
            raise FrontSyntaxError(idx, f"cannot parse {chunk.strip()!r}")
        try:
            pos = int(toks[1])
        except ValueError:
            raise FrontSyntaxError(idx, f"bad position {toks[1]!r}") from None
        events.append((toks[0], pos))
    if not events:
        raise FrontError("empty front")
    return LegendrianFront(tuple(events), frozenset(reverse))


def serialize_front(front):
    lines = [f"{kind} {pos}" for kind, pos in front.events]
    lines += [f"orient {k} -" for k in sorted(front.reversed_components)]
    return "\n".join(lines) + "\n"


def component_invariants(front):
    """ClassicalInvariants for each component, in component order."""
    t = _trace(front.events)
    dirs = _directions(front, t)
    writhe = [0] * t.ncomp
    cusps = [0] * t.ncomp
    down = [0] * t.ncomp
    for a, b in t.crossings:
        ca = t.comp_of_arc[a]
        if ca == t.comp_of_arc[b]:
            writhe[ca] += 1 if dirs[a] == dirs[b] else -1
    for kind, top, _ in t.cusps:
        c = t.comp_of_arc[top]
        cusps[c] += 1
        # a left cusp whose upper strand runs right is traversed upward
        going_down = (dirs[top] == 1) == (kind == "r")
        down[c] += 1 if going_down else -1
    return [ClassicalInvariants(w - k // 2, d // 2, w, k)
            for w, k, d in zip(writhe, cusps, down)]


def classical_invariants(front, component=None):
    inv = component_invariants(front)
    if component is None:
        if len(inv) != 1:
            raise FrontError(f"front has {len(inv)} components; pick one")
        return inv[0]
    return inv[component]


def linking_number(front, i, j):
    """Half the signed count of crossings between components i and j."""
    t = _trace(front.events)
    dirs = _directions(front, t)
    total = 0
    for a, b in t.crossings:
        if {t.comp_of_arc[a], t.comp_of_arc[b]} == {i, j} and i != j:
            total += 1 if dirs[a] == dirs[b] else -1
    return total // 2


def zigzag(front, at, pos, down=True):
    """Insert a stabilization on strand ``pos`` just after event ``at``."""
    ev = list(front.events)
    pre = ev[:at]
    n = len(_strands_after(pre))
    if not 0 <= pos < n:
        raise FrontError(f"no strand {pos} after {at} events")
    if down:
        extra = [("lcusp", pos + 1), ("rcusp", pos)]
    else:
        extra = [("lcusp", pos), ("rcusp", pos + 1)]
    return LegendrianFront(tuple(pre + extra + ev[at:]), front.reversed_components)


def _strands_after(events):
    count = 0
    for kind, _ in events:
        count += {"lcusp": 2, "rcusp": -2, "cross": 0}[kind]
    return range(count)


def strand_component(front, at, pos):
    """Component of the strand at position ``pos`` after ``at`` events."""
    t = _trace(front.events)
    strands = []
    arcs = 0
    for kind, p in front.events[:at]:
        if kind == "lcusp":
            strands[p:p] = [arcs, arcs + 1]
            arcs += 2
        elif kind == "rcusp":
            del strands[p:p + 2]
        else:
            strands[p], strands[p + 1] = strands[p + 1], strands[p]
    return t.comp_of_arc[strands[pos]]


@dataclass(frozen=True)
class SteinHandle:
    tb: int
    framing: int
    margin: int
    ok: bool


@dataclass(frozen=True)
class SteinReport:
    handles: tuple

    @property
    def ok(self):
        return all(h.ok for h in self.handles)


def stein_check(assignments):
    """Each (front, framing) passes iff framing <= tb - 1.

    This is the strict form of the framing condition.  A non-strict
    statement (framing <= tb) also circulates; it is not what is tested here.
    """
    out = []
    for front, framing in assignments:
        tb = classical_invariants(front).tb
        margin = tb - 1 - framing
        out.append(SteinHandle(tb, framing, margin, margin >= 0))
    return SteinReport(tuple(out))


SAUCER = "lcusp 0\nrcusp 0\n"
TREFOIL = "lcusp 0\nlcusp 1\ncross 2\ncross 2\ncross 2\nrcusp 1\nrcusp 0\n"
