"""Random generators and brute-force oracles shared by the tests."""
from collections import deque
import itertools
import math

import numpy as np

from kirbycalc.diagram import HandleDecomposition, dotted, framed
from kirbycalc.legendrian import LegendrianFront


def random_diagram(rng, max_components=6, max_entry=4, min_components=0):
    """Valid decomposition with at most ``max_components`` components."""
    n = rng.randint(min_components, max_components)
    comps = []
    for i in range(n):
        if rng.random() < 0.35:
            comps.append(dotted(f"d{i}"))
        else:
            comps.append(framed(f"k{i}", rng.randint(-max_entry, max_entry)))
    links = {}
    for a, b in itertools.combinations(comps, 2):
        if a.dotted and b.dotted:
            continue
        v = rng.randint(-max_entry, max_entry)
        if v and rng.random() < 0.6:
            links[(a.id, b.id)] = v
    return HandleDecomposition.build(comps, links)


def random_symmetric(rng, n, bound):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return rows


def elementary_generators(n):
    """Transvections I + s e_ij, sign changes and swaps."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for s in (1, -1):
                    g = [[int(a == b) for b in range(n)] for a in range(n)]
                    g[i][j] = s
                    gens.append(g)
    for i in range(n):
        g = [[int(a == b) for b in range(n)] for a in range(n)]
        g[i][i] = -1
        gens.append(g)
    for i, j in itertools.combinations(range(n), 2):
        g = [[int(a == b) for b in range(n)] for a in range(n)]
        g[i][i] = g[j][j] = 0
        g[i][j] = g[j][i] = 1
        gens.append(g)
    return gens


def _congr(q, u):
    n = len(q)
    qu = [[sum(q[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return tuple(tuple(sum(u[k][i] * qu[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def random_word(rng, n, length):
    gens = elementary_generators(n)
    u = [[int(a == b) for b in range(n)] for a in range(n)]
    for _ in range(length):
        g = rng.choice(gens)
        u = [[sum(u[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return u


def word_reach(q, depth):
    """Every form U^T q U with U a word of length <= depth in the generators."""
    q = tuple(tuple(r) for r in q)
    gens = elementary_generators(len(q))
    seen = {q}
    frontier = deque([(q, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if d == depth:
            continue
        for g in gens:
            nxt = _congr(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, d + 1))
    return seen


# -- determinantal divisors (oracle for Smith forms) -----------------------------

def _minor_stack(a, rows, cols):
    k = len(rows)
    if k == 1:
        return a[:, rows[0], cols[0]]
    if k == 2:
        return (a[:, rows[0], cols[0]] * a[:, rows[1], cols[1]]
                - a[:, rows[0], cols[1]] * a[:, rows[1], cols[0]])
    total = 0
    for j, c in enumerate(cols):
        rest = cols[:j] + cols[j + 1:]
        total = total + (-1) ** j * a[:, rows[0], c] * _minor_stack(a, rows[1:], rest)
    return total


def minors_gcd_batch(a, k):
    """gcd of all k x k minors for each matrix in an (N, r, c) stack."""
    n, r, c = a.shape
    g = np.zeros(n, dtype=np.int64)
    for rows in itertools.combinations(range(r), k):
        for cols in itertools.combinations(range(c), k):
            g = np.gcd(g, _minor_stack(a, rows, cols))
    return g


def smith_oracle(a):
    """Invariant factors (zeros last) from determinantal divisors."""
    n, r, c = a.shape
    m = min(r, c)
    out = np.zeros((n, m), dtype=np.int64)
    prev = np.ones(n, dtype=np.int64)
    for k in range(1, m + 1):
        dk = minors_gcd_batch(a, k)
        nz = dk != 0
        out[nz, k - 1] = dk[nz] // prev[nz]
        prev = np.where(nz, dk, 1)
    return out


def all_matrices(r, c, lo=-3, hi=3, chunk=500_000):
    base = hi - lo + 1
    total = base ** (r * c)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((len(idx), r * c), dtype=np.int64)
        for k in range(r * c):
            digits[:, k] = idx % base + lo
            idx //= base
        yield digits.reshape(-1, r, c)


# -- fronts -----------------------------------------------------------------

def random_front(rng, max_events=14):
    """Random valid front: events keep the strand count legal and end at 0."""
    events = []
    strands = 0
    budget = rng.randint(1, max_events)
    while budget > 0 or strands:
        opts = []
        if budget > 0 and strands < 6:
            opts.append("lcusp")
        if strands >= 2:
            opts += ["rcusp", "cross", "cross"] if budget > 0 else ["rcusp"]
        kind = rng.choice(opts)
        budget -= 1
        if kind == "lcusp":
            pos = rng.randint(0, strands)
            strands += 2
        else:
            pos = rng.randint(0, strands - 2)
            if kind == "rcusp":
                strands -= 2
        events.append((kind, pos))
    return LegendrianFront(tuple(events))


def gcd_all(values):
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
