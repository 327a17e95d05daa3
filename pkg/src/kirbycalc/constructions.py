"""Algebraic models of the standard building blocks.

Only linking numbers and framings are modelled, so blocks that differ by
how their attaching circles are knotted (W_n for different n, or W_n and
its positron cousin) share one skeleton and keep ``n`` as a label.
"""
from dataclasses import dataclass, field

from .diagram import DiagramError, HandleDecomposition, dotted, framed

RECONSTRUCTED = ("reconstructed linking data: chosen to reproduce the stated "
                 "intersection forms, not read off a drawn diagram")


@dataclass(frozen=True)
class BlockModel:
    hd: HandleDecomposition
    roles: dict = field(default_factory=dict)
    label: str = ""
    notes: tuple = ()

    def __post_init__(self):
        for role, cid in self.roles.items():
            ids = cid if isinstance(cid, tuple) else (cid,)
            if not all(c in self.hd for c in ids):
                raise DiagramError(f"role {role!r} names missing component {cid!r}")

    def __getitem__(self, role):
        return self.roles[role]


def _positive(name, value, least=1):
    if not isinstance(value, int) or value < least:
        raise ValueError(f"{name} must be an integer >= {least}, got {value!r}")


def cork_w(n):
    """Mazur-type cork: dotted d, 0-framed k, lk = 1."""
    _positive("n", n)
    hd = HandleDecomposition.build([dotted("d"), framed("k", 0)], {("d", "k"): 1}, name=f"W_{n}")
    return BlockModel(hd, {"dot": "d", "partner": "k"}, f"W_{n}",
                      ("n is a label; the twisting parameter is not visible in linking data",))


def positron(n):
    _positive("n", n)
    hd = HandleDecomposition.build([dotted("d"), framed("k", 0)], {("d", "k"): 1},
                                   name=f"Wbar_{n}")
    return BlockModel(hd, {"dot": "d", "partner": "k"}, f"Wbar_{n}",
                      ("n is a label; the twisting parameter is not visible in linking data",))


def plug_w(m, n):
    """Plug skeleton: dotted d, meridian a (-m), partner b (0) linking d n times."""
    _positive("m", m)
    _positive("n", n)
    hd = HandleDecomposition.build(
        [dotted("d"), framed("a", -m), framed("b", 0)],
        {("a", "d"): 1, ("b", "d"): n, ("a", "b"): 1},
        name=f"W_{m},{n}",
    )
    return BlockModel(hd, {"dot": "d", "partner": "b", "meridian": "a"}, f"W_{m},{n}",
                      (RECONSTRUCTED,))


def cp_chain(p):
    """Linear plumbing -(p+2), -2, ..., -2 with p-1 unknots."""
    _positive("p", p, 2)
    comps = [framed("c1", -p - 2)] + [framed(f"c{i}", -2) for i in range(2, p)]
    links = {(f"c{i}", f"c{i + 1}"): 1 for i in range(1, p - 1)}
    hd = HandleDecomposition.build(comps, links, name=f"C_{p}")
    return BlockModel(hd, {"end": "c1", "chain": tuple(c.id for c in comps)}, f"C_{p}")


def bp_ball(p):
    """Rational ball: dotted D, framed K with lk(K, D) = p and framing p - 1."""
    _positive("p", p, 2)
    hd = HandleDecomposition.build([dotted("D"), framed("K", p - 1)], {("D", "K"): p},
                                   name=f"B_{p}")
    return BlockModel(hd, {"dot": "D", "partner": "K"}, f"B_{p}",
                      ("framing p-1 of K is a convention; no computed invariant depends on it",))


def t2xb2_block():
    hd = HandleDecomposition.build([dotted("d1"), dotted("d2"), framed("t", 0)], {},
                                   name="T2xB2")
    return BlockModel(hd, {"alpha": "d1", "beta": "d2", "gamma": "t"}, "T2xB2")


def fishtail_block():
    base = t2xb2_block()
    hd = base.hd.replace(components=list(base.hd.components) + [framed("v", -1)],
                         links={("t", "v"): 1}, name="fishtail")
    roles = dict(base.roles, vanishing="v")
    return BlockModel(hd, roles, "fishtail",
                      ("vanishing-cycle linking is an algebraic model only",))


def attach_external(block, extras=()):
    """Add framed components over the common 0-handle.

    ``extras`` is a sequence of ``(id, framing, {other_id: lk})``; links may
    point at block components or earlier extras.
    """
    hd = block.hd if isinstance(block, BlockModel) else block
    comps = list(hd.components)
    links = dict(hd.links())
    ids = {c.id for c in comps}
    for cid, fr, lks in extras:
        if cid in ids:
            raise DiagramError(f"id {cid!r} already in use")
        comps.append(framed(cid, fr))
        ids.add(cid)
        for other, v in dict(lks).items():
            if other not in ids or other == cid:
                raise DiagramError(f"cannot link {cid!r} to {other!r}")
            if v:
                links[(other, cid)] = v
    return hd.replace(components=comps, links=links)


def plug_ambient(m, n):
    """W_{m,n} plus a -1-framed knot linking the partner once."""
    return attach_external(plug_w(m, n), [("e", -1, {"b": 1})])


BUILDERS = {
    "cork": cork_w,
    "positron": positron,
    "plug": plug_w,
    "cp": cp_chain,
    "bp": bp_ball,
    "t2": t2xb2_block,
    "fishtail": fishtail_block,
}
