"""Integral symmetric bilinear forms: invariants and congruence over Z.

``congruent`` answers in three stages:

1. an invariant screen (size, rank, determinant, inertia, Smith invariants,
   small represented values of definite forms, parity) that can only prove
   two forms different;
2. for indefinite unimodular forms, the classification by rank, signature
   and type, with an explicit witness obtained by reducing both forms to
   the standard diagonal (odd) or hyperbolic (even) form;
3. a bounded column-by-column search for a transformation matrix.

Every ``Equivalent`` verdict carries a witness ``U`` with ``U^T Q1 U == Q2``
and ``det U == +-1``, checked by exact multiplication before it is returned.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import intmat, kernels


class DegenerateFormError(ValueError):
    pass


class SymmetricIntMatrix:
    """Symmetric integer matrix; compares equal to nested sequences."""

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        rows = intmat.as_matrix(rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        self.rows = rows

    @property
    def n(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def __eq__(self, other):
        if isinstance(other, SymmetricIntMatrix):
            return self.rows == other.rows
        try:
            return self.rows == intmat.as_matrix(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymmetricIntMatrix({[list(r) for r in self.rows]})"

    def tolist(self):
        return [list(r) for r in self.rows]


def as_form(q):
    return q if isinstance(q, SymmetricIntMatrix) else SymmetricIntMatrix(q)


def diag_form(values):
    values = list(values)
    return SymmetricIntMatrix([[v if i == j else 0 for j in range(len(values))]
                               for i, v in enumerate(values)])


def block_sum(*forms):
    forms = [as_form(f) for f in forms]
    n = sum(f.n for f in forms)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.n):
            for j in range(f.n):
                rows[off + i][off + j] = f[i][j]
        off += f.n
    return SymmetricIntMatrix(rows)


def parse_matrix(text):
    """Parse ``"a,b;b,c"`` (rows separated by ``;``) into a form."""
    text = text.strip()
    if not text:
        return SymmetricIntMatrix(())
    rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
    return SymmetricIntMatrix(rows)


def format_matrix(q):
    return ";".join(",".join(str(v) for v in row) for row in as_form(q))


# -- invariants -------------------------------------------------------------

def inertia(q):
    """(positive, negative, zero) counts by rational congruence diagonalization."""
    m = [[Fraction(v) for v in row] for row in as_form(q)]
    pos = neg = zero = 0
    while m:
        n = len(m)
        k = next((i for i in range(n) if m[i][i] != 0), None)
        if k is not None:
            p = m[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            m = [[m[i][j] - m[i][k] * m[k][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
        if pair is None:
            zero += n
            break
        # zero diagonal, b = m[i][j] != 0: the 2x2 block is hyperbolic
        i, j = pair
        b = m[i][j]
        pos += 1
        neg += 1
        rest = [t for t in range(n) if t not in pair]
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        m = [[m[s][t] - (m[s][i] * m[j][t] + m[s][j] * m[i][t]) / b for t in rest] for s in rest]
    return pos, neg, zero


def signature(q):
    pos, neg, zero = inertia(q)
    if zero:
        raise DegenerateFormError("signature is only defined here for nondegenerate forms")
    return pos - neg


def determinant(q):
    return intmat.det(as_form(q).rows)


def parity(q):
    """'even' iff every diagonal entry is even."""
    return "even" if all(row[i] % 2 == 0 for i, row in enumerate(as_form(q))) else "odd"


def definiteness(q):
    pos, neg, zero = inertia(q)
    n = pos + neg + zero
    if n and pos == n:
        return "positive"
    if n and neg == n:
        return "negative"
    if zero:
        return "degenerate"
    return "indefinite"


def smith_invariants(q):
    return intmat.invariant_factors(as_form(q).rows)


def definite_bounds(q, target):
    """Coordinate box containing every x with x^T q x == target, q definite.

    Uses |x_j|^2 <= target * (q^-1)_jj for a positive definite q, from
    Cauchy-Schwarz in the q-inner product; the negative case is mirrored.
    """
    q = as_form(q)
    kind = definiteness(q)
    if kind == "negative":
        q = SymmetricIntMatrix([[-v for v in row] for row in q])
        target = -target
    elif kind != "positive":
        raise ValueError("form is not definite")
    if target <= 0:
        return (0,) * q.n
    inv = intmat.inverse_rational(q.rows)
    out = []
    for j in range(q.n):
        v = target * inv[j][j]
        out.append(isqrt(v.numerator * v.denominator) // v.denominator)
    return tuple(out)


@dataclass(frozen=True)
class Representation:
    vector: tuple | None
    exhaustive: bool
    bounds: tuple

    @property
    def found(self):
        return self.vector is not None


DEFAULT_BOUND = 8


def represents(q, target, bound=None):
    """Search for a nonzero x with x^T q x == target.

    Definite forms get an internally computed box that provably contains
    every solution, so a miss is a certificate (``exhaustive=True``).  Other
    forms are searched within ``bound`` only.  The vector returned has
    the least sup-norm, then the least l1 norm, then is lexicographically
    largest, with its first nonzero coordinate positive.
    """
    q = as_form(q)
    if q.n == 0:
        return Representation(None, True, ())
    kind = definiteness(q)
    if kind in ("positive", "negative"):
        sign = 1 if kind == "positive" else -1
        if target * sign <= 0:
            return Representation(None, True, (0,) * q.n)
        bounds = definite_bounds(q, target)
        return Representation(kernels.first_in_shells(q.rows, bounds, target), True, bounds)
    if bound is None:
        bound = DEFAULT_BOUND
    if bound < 1:
        raise ValueError("bound must be at least 1")
    bounds = (bound,) * q.n
    return Representation(kernels.first_in_shells(q.rows, bounds, target), False, bounds)


# -- congruence -------------------------------------------------------------

@dataclass(frozen=True)
class Equivalent:
    witness: tuple
    stage: str = "identity"

    verdict = "Equivalent"


@dataclass(frozen=True)
class Distinct:
    invariant: str
    values: tuple
    certified: bool = True

    verdict = "Distinct"


@dataclass(frozen=True)
class Unknown:
    reason: str

    verdict = "Unknown"


@dataclass(frozen=True)
class Budget:
    """Stage-3 search limits.

    ``coeff_bound`` caps the absolute value of every witness entry;
    ``node_limit`` caps the number of partial transformations explored.
    """

    coeff_bound: int = 16
    node_limit: int = 200_000


DEFAULT_BUDGET = Budget()

REPRESENTATION_WINDOW = 4


def is_witness(q1, q2, u):
    u = intmat.as_matrix(u)
    return abs(intmat.det(u)) == 1 and intmat.congruence(as_form(q1).rows, u) == as_form(q2).rows


def invariant_screen(q1, q2):
    """First invariant that differs, as a Distinct verdict, or None."""
    q1, q2 = as_form(q1), as_form(q2)
    checks = [
        ("size", lambda q: q.n),
        ("rank", lambda q: intmat.rank(q.rows)),
        ("determinant", determinant),
        ("inertia", inertia),
        ("smith invariants", smith_invariants),
    ]
    for name, fn in checks:
        a, b = fn(q1), fn(q2)
        if a != b:
            return Distinct(name, (a, b))
    kind = definiteness(q1)
    if kind in ("positive", "negative"):
        sign = 1 if kind == "positive" else -1
        w = REPRESENTATION_WINDOW
        lo, hi = (1, w) if sign > 0 else (-w, -1)
        t = w * sign
        c1 = kernels.norm_counts(q1.rows, definite_bounds(q1, t), lo, hi, True)
        c2 = kernels.norm_counts(q2.rows, definite_bounds(q2, t), lo, hi, True)
        for k in range(1, w + 1):
            v = k * sign
            if (v in c1) != (v in c2):
                return Distinct(f"represents({v})", (v in c1, v in c2))
        for k in range(1, w + 1):
            v = k * sign
            if c1.get(v, 0) != c2.get(v, 0):
                return Distinct(f"representation count({v})", (c1.get(v, 0), c2.get(v, 0)))
    a, b = parity(q1), parity(q2)
    if a != b:
        return Distinct("parity", (a, b))
    return None


def congruent(q1, q2, budget=None):
    """Decide whether some unimodular U has U^T q1 U == q2."""
    budget = budget or DEFAULT_BUDGET
    q1, q2 = as_form(q1), as_form(q2)
    if q1 == q2:
        return Equivalent(intmat.identity(q1.n), "identity")
    screened = invariant_screen(q1, q2)
    if screened is not None:
        return screened
    if abs(determinant(q1)) == 1 and definiteness(q1) == "indefinite":
        s1, s2 = standard_basis(q1), standard_basis(q2)
        if s1 is not None and s2 is not None and s1[1] == s2[1]:
            u = intmat.matmul(s1[0], intmat.inverse_unimodular(s2[0]))
            if is_witness(q1, q2, u):
                return Equivalent(u, "classification")
    return isometry_search(q1, q2, budget)


# -- standard forms of indefinite unimodular lattices --------------------------

SHELL_RADII = (2, 4, 8, 16, 24)


def _unit_candidates(g, eps):
    """Vectors of value eps in growing boxes, in shell order."""
    seen = set()
    for r in SHELL_RADII:
        found = kernels.box_vectors(g, (r,) * len(g), eps, eps, True)
        found = sorted((x for _, x in found), key=lambda x: (max(map(abs, x)), [-v for v in x]))
        for x in found:
            if x not in seen:
                seen.add(x)
                yield x


def _isotropic(g):
    for r in SHELL_RADII:
        x = kernels.first_in_shells(g, (r,) * len(g), 0)
        if x is not None:
            return x
    return None


def _split(g, vecs):
    """Complement of span(vecs) in a lattice with unimodular restriction.

    Returns a basis (as coordinate columns) of the orthogonal complement.
    """
    n = len(g)
    m = intmat.complete_basis([list(v) for v in vecs], n)
    k = len(vecs)
    sub = intmat.congruence(g, intmat.from_columns([list(v) for v in vecs], n))
    sub_inv = intmat.inverse_unimodular(sub)
    out = []
    for j in range(k, n):
        w = [m[i][j] for i in range(n)]
        gw = intmat.matvec(g, w)
        coeffs = intmat.matvec(sub_inv, [sum(a * b for a, b in zip(v, gw)) for v in vecs])
        out.append([w[i] - sum(c * v[i] for c, v in zip(coeffs, vecs)) for i in range(n)])
    return out


def _to_global(basis, local):
    return [sum(b[i] * x for b, x in zip(basis, local)) for i in range(len(basis[0]))]


def gram_reduce(g):
    """Greedy reduction by elementary basis changes b_i += k b_j.

    A step is taken only when it strictly lowers the sum of absolute
    entries, so the loop terminates.  Returns ``(U, U^T g U)``.
    """
    g = [list(r) for r in g]
    n = len(g)
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def cost(i, j, k):
        # change in sum |entries| from b_i += k b_j
        new_ii = g[i][i] + 2 * k * g[i][j] + k * k * g[j][j]
        delta = abs(new_ii) - abs(g[i][i])
        for c in range(n):
            if c != i:
                delta += 2 * (abs(g[i][c] + k * g[j][c]) - abs(g[i][c]))
        return delta

    improved = True
    while improved:
        improved = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                ks = {1, -1}
                if g[j][j]:
                    ks.add(-round(Fraction(g[i][j], g[j][j])))
                if g[i][j]:
                    ks.add(-round(Fraction(g[i][i], 2 * g[i][j])))
                ks.discard(0)
                best = min(sorted(ks), key=lambda k: cost(i, j, k))
                if cost(i, j, best) < 0:
                    k = best
                    new_ii = g[i][i] + 2 * k * g[i][j] + k * k * g[j][j]
                    for c in range(n):
                        g[i][c] += k * g[j][c]
                    for c in range(n):
                        g[c][i] = g[i][c]
                    g[i][i] = new_ii
                    for r in range(n):
                        u[r][i] += k * u[r][j]
                    improved = True
    return u, g


def _local(g, basis):
    """Gram matrix of a sublattice after reduction, with the reduced basis."""
    gl = intmat.congruence(g, intmat.from_columns(basis, len(g)))
    r, gl = gram_reduce(gl)
    basis = [_to_global(basis, [r[k][j] for k in range(len(r))]) for j in range(len(r))]
    return gl, basis


def _reduce_odd(g, basis, out_pos, out_neg):
    """Peel unit vectors off an odd unimodular lattice until it is empty."""
    n = len(basis)
    if n == 0:
        return True
    gl, basis = _local(g, basis)
    for eps in (1, -1):
        for y in _unit_candidates(gl, eps):
            comp = _split(gl, [y]) if n > 1 else []
            comp_g = intmat.congruence(gl, intmat.from_columns(comp, n)) if comp else ()
            if comp and parity(comp_g) == "even":
                continue
            v = _to_global(basis, y)
            (out_pos if eps == 1 else out_neg).append(v)
            return _reduce_odd(g, [_to_global(basis, c) for c in comp], out_pos, out_neg)
    return False


def _reduce_even(g, basis, out):
    n = len(basis)
    if n == 0:
        return True
    gl, basis = _local(g, basis)
    if definiteness(gl) != "indefinite":
        return False
    e = _isotropic(gl)
    if e is None:
        return False
    f = list(intmat.solve_unit_dot(intmat.matvec(gl, e)))
    ff = sum(a * b for a, b in zip(f, intmat.matvec(gl, f)))
    f = [fi - (ff // 2) * ei for fi, ei in zip(f, e)]
    comp = _split(gl, [list(e), f]) if n > 2 else []
    out.append((_to_global(basis, e), _to_global(basis, f)))
    return _reduce_even(g, [_to_global(basis, c) for c in comp], out)


def standard_basis(q):
    """Basis change to a standard form for unimodular q.

    Returns ``(U, S)`` with ``U^T q U == S`` where S is diag(+1.., -1..) for
    odd q, or a sum of hyperbolic planes [[0, 1], [1, 0]] for even q.
    Returns None when the reduction does not apply or gets stuck (even
    forms with an E8 part, or unit vectors outside the search radii).
    """
    q = as_form(q)
    n = q.n
    if abs(determinant(q)) != 1:
        return None
    basis = [[int(i == j) for i in range(n)] for j in range(n)]
    if parity(q) == "odd":
        pos, neg = [], []
        if not _reduce_odd(q.rows, basis, pos, neg):
            return None
        cols = pos + neg
        s = diag_form([1] * len(pos) + [-1] * len(neg))
    else:
        pairs = []
        if not _reduce_even(q.rows, basis, pairs):
            return None
        cols = [v for pair in pairs for v in pair]
        s = block_sum(*[SymmetricIntMatrix([[0, 1], [1, 0]])] * len(pairs))
    u = intmat.from_columns(cols, n)
    if intmat.congruence(q.rows, u) != s.rows or abs(intmat.det(u)) != 1:
        return None
    return u, s


# -- bounded witness search ----------------------------------------------------

def isometry_search(q1, q2, budget=None):
    """Column-by-column search for U with U^T q1 U == q2.

    Column i ranges over vectors x with x^T q1 x == q2[i][i] inside the
    coefficient box, ordered by sup-norm then descending lexicographically,
    and must pair correctly with the columns already chosen.  The first hit
    in this order is returned.  For definite forms whose solution boxes lie
    inside the coefficient bound the search is exhaustive, so a miss proves
    the forms distinct.
    """
    budget = budget or DEFAULT_BUDGET
    q1, q2 = as_form(q1), as_form(q2)
    n = q1.n
    if n == 0:
        return Equivalent((), "identity")
    cb = budget.coeff_bound
    definite = definiteness(q1) in ("positive", "negative")
    exhaustive = True
    cands = []
    for i in range(n):
        t = q2[i][i]
        full = definite
        if definite:
            box = definite_bounds(q1, t)
            if any(b > cb for b in box):
                full = False
                box = tuple(min(b, cb) for b in box)
        else:
            box = (cb,) * n
        exhaustive = exhaustive and full
        found = [x for _, x in kernels.box_vectors(q1.rows, box, t, t, False)]
        found.sort(key=lambda x: (max(map(abs, x)), [-v for v in x]))
        cands.append(found)
        if not found:
            if full:
                return Distinct(f"represents({t})", (False, True))
            return Unknown(f"no vector of value {t} within coefficient bound {cb}")

    images = [None] * n
    chosen = [None] * n
    nodes = 0
    check_partial = n <= 4

    def dfs(i):
        nonlocal nodes
        if i == n:
            return abs(intmat.det(intmat.from_columns(chosen, n))) == 1
        for x in cands[i]:
            nodes += 1
            if nodes > budget.node_limit:
                raise _BudgetExceeded
            if any(sum(a * b for a, b in zip(x, images[j])) != q2[i][j] for j in range(i)):
                continue
            chosen[i] = list(x)
            if check_partial and i + 1 < n and intmat.minors_gcd(chosen[:i + 1], n) != 1:
                continue
            images[i] = intmat.matvec(q1.rows, x)
            if dfs(i + 1):
                return True
        return False

    try:
        hit = dfs(0)
    except _BudgetExceeded:
        return Unknown(f"node limit {budget.node_limit} reached")
    if hit:
        u = intmat.from_columns(chosen, n)
        assert is_witness(q1, q2, u)
        return Equivalent(u, "search")
    if exhaustive:
        return Distinct("isometry search", ("exhausted", cb))
    return Unknown(f"no witness with entries bounded by {cb}")


class _BudgetExceeded(Exception):
    pass
