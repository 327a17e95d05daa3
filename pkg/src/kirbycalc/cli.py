"""kirbycalc command line.

Exit codes: 0 success, 1 a check or comparison failed, 2 bad input.
"""
import argparse
import re
import sys

from . import constructions, forms, intmat, legendrian, regression, surgery
from .diagram import DiagramError, parse_diagram, serialize, validate
from .homology import homology
from .moves import ScriptError, apply_script, parse_script

OK, FAILED, BAD_INPUT = 0, 1, 2
NEGATIVE_LITERAL = re.compile(r"^-\d[\d,;\s-]*$")


class InputError(Exception):
    pass


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diagram(path):
    hd = parse_diagram(_read(path))
    report = validate(hd)
    if not report.ok:
        raise InputError(f"{path}: invalid diagram: " + "; ".join(report.violations))
    return hd


def _matrix(text):
    try:
        return forms.parse_matrix(text)
    except ValueError as exc:
        raise InputError(f"bad matrix {text!r}: {exc}") from None


def _budget(args):
    if getattr(args, "budget", None) is None:
        return forms.DEFAULT_BUDGET
    if args.budget < 1:
        raise InputError("--budget must be positive")
    return forms.Budget(coeff_bound=args.budget)


def _fmt_form(q):
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in q) + "]"


def _form_lines(q):
    q = forms.as_form(q)
    lines = [f"form: {_fmt_form(q)}"]
    if q.n == 0:
        return lines + ["parity: even", "signature: 0", "determinant: 1"]
    lines.append(f"parity: {forms.parity(q)}")
    p, n, z = forms.inertia(q)
    lines.append(f"signature: {p - n}" + (f" (degenerate, nullity {z})" if z else ""))
    lines.append(f"determinant: {forms.determinant(q)}")
    return lines


def _verdict_line(v):
    if isinstance(v, forms.Equivalent):
        return f"Equivalent ({v.stage}) witness {_fmt_form(v.witness)}"
    if isinstance(v, forms.Distinct):
        a, b = v.values
        return f"Distinct: {v.invariant} differs ({a} vs {b})"
    return f"Unknown: {v.reason}"


def cmd_invariants(args):
    hd = _diagram(args.file)
    h = homology(hd)
    lines = []
    if hd.name:
        lines.append(f"manifold: {hd.name}")
    lines += [f"euler: {h.euler}", f"H1: {h.h1}", f"H2 rank: {h.h2_rank}"]
    lines += _form_lines(h.form)
    lines += [f"warning: {w}" for w in h.warnings]
    _write("\n".join(lines) + "\n", args.output)
    return OK


def cmd_apply(args):
    hd = _diagram(args.file)
    script = parse_script(_read(args.script))
    try:
        out, trace = apply_script(hd, script)
    except ScriptError as exc:
        sys.stderr.write(exc.trace.format() + "\n")
        raise InputError(str(exc)) from None
    if len(trace):
        sys.stderr.write(trace.format() + "\n")
    _write(serialize(out), args.output)
    return OK


DIAGRAM_KEYWORDS = ("manifold", "handles", "component", "lk")


def _form_or_diagram(path):
    """A bare matrix literal file gives a form; anything else a diagram."""
    text = _read(path)
    body = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln]
    if len(body) == 1 and body[0].split()[0] not in DIAGRAM_KEYWORDS:
        return None, _matrix(body[0])
    hd = parse_diagram(text)
    report = validate(hd)
    if not report.ok:
        raise InputError(f"{path}: invalid diagram: " + "; ".join(report.violations))
    return hd, homology(hd).form


def cmd_homeo_check(args):
    hd_a, qa = _form_or_diagram(args.file_a)
    hd_b, qb = _form_or_diagram(args.file_b)
    rows = []
    if hd_a is not None and hd_b is not None:
        ha, hb = homology(hd_a), homology(hd_b)
        rows.append(("euler", ha.euler, hb.euler))
        rows.append(("H1", str(ha.h1), str(hb.h1)))
        rows.append(("H2 rank", ha.h2_rank, hb.h2_rank))
    rows.append(("form rank", qa.n, qb.n))
    if qa.n == qb.n:
        rows.append(("parity", forms.parity(qa), forms.parity(qb)))
        rows.append(("inertia", forms.inertia(qa), forms.inertia(qb)))
    ok = True
    lines = []
    for name, a, b in rows:
        same = a == b
        ok &= same
        lines.append(f"{'same' if same else 'DIFF'} {name}: {a} | {b}")
    verdict = forms.congruent(qa, qb, _budget(args))
    lines.append(f"form: {_verdict_line(verdict)}")
    ok &= isinstance(verdict, forms.Equivalent)
    lines.append("necessary conditions: " + ("pass" if ok else "fail"))
    _write("\n".join(lines) + "\n", args.output)
    return OK if ok else FAILED


def cmd_form(args):
    q = _matrix(args.matrix)
    if args.op == "sig":
        try:
            text = str(forms.signature(q))
        except forms.DegenerateFormError as exc:
            raise InputError(str(exc)) from None
    elif args.op == "parity":
        text = forms.parity(q)
    elif args.op == "equiv":
        if args.other is None:
            raise InputError("form equiv needs a second matrix")
        v = forms.congruent(q, _matrix(args.other), _budget(args))
        _write(_verdict_line(v) + "\n", args.output)
        return OK if isinstance(v, forms.Equivalent) else FAILED
    else:
        if args.other is None:
            raise InputError("form represents needs a target value")
        try:
            target = int(args.other)
        except ValueError:
            raise InputError(f"bad target {args.other!r}") from None
        if args.bound is not None and args.bound < 1:
            raise InputError("--bound must be positive")
        r = forms.represents(q, target, args.bound)
        scope = "exhaustive" if r.exhaustive else f"within |x_i| <= {r.bounds[0] if r.bounds else 0}"
        if r.found:
            text = f"x = {r.vector} ({scope})"
        else:
            text = f"none ({scope})"
        _write(text + "\n", args.output)
        return OK if r.found else FAILED
    _write(text + "\n", args.output)
    return OK


CONSTRUCT_ARITY = {"cork": 1, "positron": 1, "plug": 2, "cp": 1, "bp": 1, "t2": 0, "fishtail": 0}


def cmd_construct(args):
    want = CONSTRUCT_ARITY[args.kind]
    if len(args.params) != want:
        raise InputError(f"construct {args.kind} takes {want} integer parameter(s)")
    try:
        params = [int(v) for v in args.params]
        block = constructions.BUILDERS[args.kind](*params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(serialize(block.hd), args.output)
    return OK


def cmd_rbd(args):
    hd = _diagram(args.file)
    out = surgery.rational_blowdown(hd, args.chain.split(","))
    _write(serialize(out), args.output)
    return OK


def cmd_phi(args):
    if args.p < 0:
        raise InputError("p must be nonnegative")
    mat = surgery.phi_inverse(args.p) if args.inverse else surgery.phi_matrix(args.p)
    _write("\n".join(" ".join(f"{v:3d}" for v in row) for row in mat) + "\n", args.output)
    return OK


def _curves(tokens):
    curves = {}
    for tok in tokens:
        try:
            cid, vals = tok.split(":", 1)
            coords = tuple(int(x) for x in vals.split(","))
        except ValueError:
            raise InputError(f"bad curve {tok!r}; expected id:a,b,c") from None
        if len(coords) != 3:
            raise InputError(f"curve {tok!r} needs three coordinates")
        curves[cid] = coords
    return curves


def cmd_logt(args):
    hd = _diagram(args.file)
    block = tuple(args.block.split(","))
    if len(block) != 3:
        raise InputError("block must be d1,d2,t")
    if args.p < 0:
        raise InputError("p must be nonnegative")
    out, curves = surgery.log_transform(hd, block, args.p, _curves(args.curves),
                                        "forward" if args.forward else "inverse")
    for cid in sorted(curves):
        sys.stderr.write(f"{cid}: {curves[cid]}\n")
    _write(serialize(out), args.output)
    return OK


def cmd_tb(args):
    front = legendrian.parse_front(_read(args.file))
    lines = []
    for k, inv in enumerate(legendrian.component_invariants(front)):
        lines.append(f"component {k}: tb={inv.tb} rot={inv.rot} writhe={inv.writhe} cusps={inv.cusps}")
    _write("\n".join(lines) + "\n", args.output)
    return OK


def cmd_stein(args):
    pairs = []
    for tok in args.handles:
        path, sep, fr = tok.rpartition(":")
        if not sep:
            raise InputError(f"bad handle {tok!r}; expected FRONT:FRAMING")
        try:
            framing = int(fr)
        except ValueError:
            raise InputError(f"bad framing in {tok!r}") from None
        pairs.append((path, legendrian.parse_front(_read(path)), framing))
    report = legendrian.stein_check([(f, fr) for _, f, fr in pairs])
    lines = []
    for (path, _, _), h in zip(pairs, report.handles):
        lines.append(f"{'pass' if h.ok else 'fail'} {path}: tb={h.tb} framing={h.framing} "
                     f"margin={h.margin}")
    lines.append("stein: " + ("pass" if report.ok else "fail"))
    _write("\n".join(lines) + "\n", args.output)
    return OK if report.ok else FAILED


def _parse_range(tokens):
    ranges = regression.Ranges()
    for tok in tokens or ():
        key, sep, val = tok.partition(":")
        try:
            top = int(val)
        except ValueError:
            raise InputError(f"bad range {tok!r}; expected m:M or n:N") from None
        if key == "m" and top >= 1:
            ranges.m = range(1, top + 1)
        elif key == "n" and top >= 2:
            ranges.n = range(2, top + 1)
        else:
            raise InputError(f"bad range {tok!r}; need m:M with M >= 1, n:N with N >= 2")
    return ranges


def cmd_verify_paper(args, builders=None):
    report = regression.run_all(_parse_range(args.range), builders, _budget(args))
    lines = report.lines()
    lines.append(("all checks pass" if report.ok else "verification FAILED"))
    _write("\n".join(lines) + "\n", args.output)
    return OK if report.ok else FAILED


def build_parser():
    p = argparse.ArgumentParser(prog="kirbycalc", description="Algebraic Kirby calculus toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", metavar="FILE")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("invariants", cmd_invariants, "homology and intersection form of a diagram")
    sp.add_argument("file")
    sp = add("apply", cmd_apply, "apply a move script")
    sp.add_argument("file")
    sp.add_argument("script")
    sp = add("homeo-check", cmd_homeo_check, "compare invariants of two diagrams or forms")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--budget", type=int, metavar="N")
    sp = add("form", cmd_form, "quadratic form queries")
    sp.add_argument("op", choices=["sig", "parity", "equiv", "represents"])
    sp.add_argument("matrix")
    sp.add_argument("other", nargs="?")
    sp.add_argument("--budget", type=int, metavar="N")
    sp.add_argument("--bound", type=int, metavar="B")
    sp = add("construct", cmd_construct, "emit a standard block")
    sp.add_argument("kind", choices=sorted(CONSTRUCT_ARITY))
    sp.add_argument("params", nargs="*")
    sp = add("rbd", cmd_rbd, "rational blow-down of a C_p chain")
    sp.add_argument("file")
    sp.add_argument("chain", help="comma-separated chain ids, starting at the -(p+2) end")
    sp = add("phi", cmd_phi, "print the regluing matrix phi_p")
    sp.add_argument("p", type=int)
    sp.add_argument("--inverse", action="store_true")
    sp = add("logt", cmd_logt, "logarithmic transform of a T^2 x B^2 block")
    sp.add_argument("file")
    sp.add_argument("block", help="d1,d2,t")
    sp.add_argument("p", type=int)
    sp.add_argument("curves", nargs="*", help="id:a,b,c")
    sp.add_argument("--forward", action="store_true", help="use phi_p instead of its inverse")
    sp = add("tb", cmd_tb, "classical invariants of a Legendrian front")
    sp.add_argument("file")
    sp = add("stein", cmd_stein, "Stein framing test")
    sp.add_argument("handles", nargs="+", metavar="FRONT:FRAMING")
    sp = add("verify-paper", cmd_verify_paper, "run the built-in regression")
    sp.add_argument("--range", nargs="+", metavar="m:M|n:N")
    sp.add_argument("--budget", type=int, metavar="N")
    return p


def _protect_negatives(argv):
    # argparse reads "-8,1;1,-1" as an option; a leading space makes it positional
    return [" " + a if NEGATIVE_LITERAL.match(a) else a for a in argv]


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_protect_negatives(argv))
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.fn(args)
    except (InputError, DiagramError, legendrian.FrontError, ValueError) as exc:
        sys.stderr.write(f"kirbycalc: {exc}\n")
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
