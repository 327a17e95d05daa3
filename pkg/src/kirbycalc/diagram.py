"""Algebraic handle decompositions and their text format.

A decomposition is a list of dotted circles (1-handles) and framed knots
(2-handles) together with the full symmetric linking matrix, plus the counts
of 0-, 3- and 4-handles.  Only algebraic linking numbers are recorded.

File format (line oriented, ``#`` starts a comment)::

    manifold <name>
    handles 0:<n0> 3:<n3> 4:<n4>
    component <id> dotted
    component <id> framed <int>
    lk <idA> <idB> <int>
"""
from dataclasses import dataclass, field
import re

DOTTED = "dotted"
FRAMED = "framed"

ID_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.'\-]*$")


class DiagramError(ValueError):
    """A decomposition is malformed or a request does not apply to it."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Component:
    id: str
    kind: str
    framing: int | None = None

    @property
    def dotted(self):
        return self.kind == DOTTED

    @property
    def framed(self):
        return self.kind == FRAMED


def natural_key(s):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", s) if t]


@dataclass(frozen=True, eq=False)
class HandleDecomposition:
    """Immutable algebraic handle decomposition.

    ``matrix`` is indexed by position in ``components``.  The constructor
    does not enforce the invariants; use :func:`validate` for that, or
    :meth:`build` to get a consistent matrix from sparse data.

    Equality ignores component order and the ``name`` label.
    """

    components: tuple = ()
    matrix: tuple = ()
    n0: int = 1
    n3: int = 0
    n4: int = 0
    name: str | None = None
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.id: i for i, c in enumerate(self.components)})

    @classmethod
    def build(cls, components, links=None, n0=1, n3=0, n4=0, name=None):
        """Assemble from components and a sparse ``{(a, b): lk}`` mapping.

        Diagonal entries come from the framings; links are symmetrized.
        """
        components = tuple(components)
        index = {c.id: i for i, c in enumerate(components)}
        n = len(components)
        m = [[0] * n for _ in range(n)]
        for i, c in enumerate(components):
            if c.framed:
                m[i][i] = c.framing
        for (a, b), v in (links or {}).items():
            if a == b:
                raise DiagramError(f"self-linking of {a} must come from its framing")
            i, j = index[a], index[b]
            m[i][j] = m[j][i] = int(v)
        return cls(components, tuple(map(tuple, m)), n0, n3, n4, name)

    # -- lookup -----------------------------------------------------------
    @property
    def ids(self):
        return [c.id for c in self.components]

    def index(self, cid):
        try:
            return self._index[cid]
        except KeyError:
            raise DiagramError(f"no component named {cid!r}") from None

    def __contains__(self, cid):
        return cid in self._index

    def component(self, cid):
        return self.components[self.index(cid)]

    def lk(self, a, b):
        return self.matrix[self.index(a)][self.index(b)]

    def framing(self, cid):
        return self.component(cid).framing

    @property
    def dotted_ids(self):
        return [c.id for c in self.components if c.dotted]

    @property
    def framed_ids(self):
        return [c.id for c in self.components if c.framed]

    def links(self):
        """Sparse off-diagonal linking ``{(a, b): lk}`` with a before b."""
        out = {}
        n = len(self.components)
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j]:
                    out[(self.components[i].id, self.components[j].id)] = self.matrix[i][j]
        return out

    def submatrix(self, row_ids, col_ids):
        rows = [self.index(a) for a in row_ids]
        cols = [self.index(b) for b in col_ids]
        return tuple(tuple(self.matrix[i][j] for j in cols) for i in rows)

    # -- rebuilding -------------------------------------------------------
    def replace(self, components=None, links=None, **counts):
        """Copy with new components/links; unspecified parts are kept."""
        comps = tuple(self.components if components is None else components)
        if links is None:
            links = {k: v for k, v in self.links().items() if k[0] in
                     {c.id for c in comps} and k[1] in {c.id for c in comps}}
        kw = dict(n0=self.n0, n3=self.n3, n4=self.n4, name=self.name)
        kw.update(counts)
        return HandleDecomposition.build(comps, links, **kw)

    def canonical(self):
        order = sorted(range(len(self.components)), key=lambda i: natural_key(self.components[i].id))
        comps = tuple(self.components[i] for i in order)
        mat = tuple(tuple(self.matrix[i][j] for j in order) for i in order)
        return comps, mat, self.n0, self.n3, self.n4

    def __eq__(self, other):
        if not isinstance(other, HandleDecomposition):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


def empty(name=None):
    """The 4-ball: one 0-handle and nothing else."""
    return HandleDecomposition((), (), 1, 0, 0, name)


def dotted(cid):
    return Component(cid, DOTTED)


def framed(cid, framing):
    return Component(cid, FRAMED, int(framing))


# -- validation -----------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(hd):
    """List every violated invariant as ``(name, ids)`` pairs."""
    out = []
    seen = set()
    for c in hd.components:
        if c.id in seen:
            out.append(("duplicate id", (c.id,)))
        seen.add(c.id)
        if c.dotted and c.framing is not None:
            out.append(("dotted framing", (c.id,)))
        if c.framed and c.framing is None:
            out.append(("missing framing", (c.id,)))
        if c.kind not in (DOTTED, FRAMED):
            out.append(("unknown kind", (c.id,)))
    n = len(hd.components)
    m = hd.matrix
    if len(m) != n or any(len(row) != n for row in m):
        out.append(("matrix shape", ()))
        return ValidationReport(tuple(out))
    for i, c in enumerate(hd.components):
        for j in range(i + 1, n):
            d = hd.components[j]
            if m[i][j] != m[j][i]:
                out.append(("asymmetric linking", (c.id, d.id)))
            if c.dotted and d.dotted and (m[i][j] or m[j][i]):
                out.append(("dotted-dotted linking", (c.id, d.id)))
        if c.dotted and m[i][i]:
            out.append(("dotted self-linking", (c.id,)))
        if c.framed and c.framing is not None and m[i][i] != c.framing:
            out.append(("diagonal mismatch", (c.id,)))
    if hd.n0 < 1:
        out.append(("no 0-handle", ()))
    if hd.n3 < 0 or hd.n4 < 0:
        out.append(("negative handle count", ()))
    return ValidationReport(tuple(out))


def require_valid(hd):
    report = validate(hd)
    if not report.ok:
        name, ids = report.violations[0]
        raise DiagramError(f"invalid decomposition: {name} {' '.join(ids)}".rstrip())
    return hd


# -- text format ----------------------------------------------------------

def _int(tok, lineno):
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise DiagramSyntaxError(lineno, f"expected an integer, got {tok!r}")
    return int(tok)


def _id(tok, lineno):
    if not ID_RE.match(tok):
        raise DiagramSyntaxError(lineno, f"bad component id {tok!r}")
    return tok


def parse_diagram(text):
    """Parse the diagram format into a validated decomposition."""
    name = None
    counts = {0: 1, 3: 0, 4: 0}
    comps = []
    comp_line = {}
    link_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if head == "manifold":
            if len(args) != 1:
                raise DiagramSyntaxError(lineno, "usage: manifold <name>")
            name = args[0]
        elif head == "handles":
            for a in args:
                m = re.fullmatch(r"([034]):(\d+)", a)
                if not m:
                    raise DiagramSyntaxError(lineno, f"bad handle count {a!r}")
                counts[int(m.group(1))] = int(m.group(2))
        elif head == "component":
            if len(args) < 2:
                raise DiagramSyntaxError(lineno, "usage: component <id> dotted|framed <int>")
            cid = _id(args[0], lineno)
            if cid in comp_line:
                raise DiagramSyntaxError(lineno, f"duplicate id {cid!r} (first on line {comp_line[cid]})")
            if args[1] == "dotted":
                if len(args) != 2:
                    raise DiagramSyntaxError(lineno, f"dotted component {cid!r} cannot carry a framing")
                comps.append(dotted(cid))
            elif args[1] == "framed":
                if len(args) != 3:
                    raise DiagramSyntaxError(lineno, f"framed component {cid!r} needs one integer framing")
                comps.append(framed(cid, _int(args[2], lineno)))
            else:
                raise DiagramSyntaxError(lineno, f"unknown component kind {args[1]!r}")
            comp_line[cid] = lineno
        elif head == "lk":
            if len(args) != 3:
                raise DiagramSyntaxError(lineno, "usage: lk <idA> <idB> <int>")
            link_lines.append((lineno, _id(args[0], lineno), _id(args[1], lineno), _int(args[2], lineno)))
        else:
            raise DiagramSyntaxError(lineno, f"unknown directive {head!r}")
    if counts[0] < 1:
        raise DiagramSyntaxError(0, "at least one 0-handle is required")
    kinds = {c.id: c for c in comps}
    links = {}
    seen = {}
    for lineno, a, b, v in link_lines:
        for x in (a, b):
            if x not in kinds:
                raise DiagramSyntaxError(lineno, f"unknown component {x!r}")
        key = tuple(sorted((a, b)))
        if key in seen:
            raise DiagramSyntaxError(lineno, f"duplicate linking declaration for {a} {b} "
                                             f"(first on line {seen[key]})")
        seen[key] = lineno
        if a == b:
            if kinds[a].dotted:
                if v:
                    raise DiagramSyntaxError(lineno, f"dotted self-linking forbidden for {a!r}")
            elif v != kinds[a].framing:
                raise DiagramSyntaxError(lineno, f"self-linking {v} of {a!r} disagrees with framing "
                                                 f"{kinds[a].framing}")
            continue
        if kinds[a].dotted and kinds[b].dotted and v:
            raise DiagramSyntaxError(lineno, f"dotted circles {a!r} and {b!r} cannot link")
        if v:
            links[key] = v
    return HandleDecomposition.build(comps, links, counts[0], counts[3], counts[4], name)


def serialize(hd):
    """Canonical text: components and links sorted by id."""
    require_valid(hd)
    lines = []
    if hd.name:
        lines.append(f"manifold {hd.name}")
    lines.append(f"handles 0:{hd.n0} 3:{hd.n3} 4:{hd.n4}")
    comps = sorted(hd.components, key=lambda c: natural_key(c.id))
    for c in comps:
        if c.dotted:
            lines.append(f"component {c.id} dotted")
        else:
            lines.append(f"component {c.id} framed {c.framing}")
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            v = hd.lk(a.id, b.id)
            if v:
                lines.append(f"lk {a.id} {b.id} {v}")
    return "\n".join(lines) + "\n"
