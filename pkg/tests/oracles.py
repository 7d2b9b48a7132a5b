"""Independent reference computations used to cross-check the library.

Each oracle takes a different route from the production code: Cramer's
rule instead of row reduction, explicit coset sets instead of bit masks,
float angles instead of determinant signs, a fixed direction grid instead
of the chirotope search.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from hyperfan import ratgeom as rg


def cramer(columns, w):
    """Coefficients of w in the basis `columns` (square, invertible) by Cramer's rule."""
    n = len(w)
    cols = [list(c) for c in columns]
    d = rg.determinant([[cols[j][i] for j in range(n)] for i in range(n)])
    out = []
    for k in range(n):
        swapped = [w if j == k else cols[j] for j in range(n)]
        out.append(rg.determinant([[swapped[j][i] for j in range(n)] for i in range(n)]) / d)
    return out


def cones_with_w_in_relint(fan, w):
    """Every derived cone whose relative interior holds w, by brute force over maximal cones."""
    w = rg.as_vector(w)
    found = set()
    if rg.is_zero(w):
        return {frozenset()}
    for c in fan.maximal_cones:
        coeffs = cramer([fan.rays[i] for i in c], w)
        if all(x >= 0 for x in coeffs):
            found.add(frozenset(i for i, x in zip(c, coeffs) if x > 0))
    return found


def subsets_of_maximal(fan):
    out = set()
    for c in fan.maximal_cones:
        for k in range(len(c) + 1):
            out.update(frozenset(s) for s in itertools.combinations(c, k))
    return out


def euler_domain_oracle(fan):
    n = fan.ambient_dim
    return sum((-1) ** (n - len(s)) for s in subsets_of_maximal(fan))


def glued_cells_by_cosets(fan):
    """Cells of the reflection gluing as explicit (cone, coset-as-a-set) pairs."""
    m = fan.m
    group = list(itertools.product((0, 1), repeat=m))
    cells = set()
    for s in subsets_of_maximal(fan):
        sub = [g for g in group if all(g[i] == 0 for i in range(m) if i not in s)]
        for g in group:
            coset = frozenset(tuple((a + b) % 2 for a, b in zip(g, h)) for h in sub)
            cells.add((s, coset))
    return cells


def glued_counts_oracle(fan):
    n = fan.ambient_dim
    counts = [0] * (n + 1)
    for s, _ in glued_cells_by_cosets(fan):
        counts[n - len(s)] += 1
    return counts


def euler_glued_oracle(fan):
    return sum((-1) ** k * c for k, c in enumerate(glued_counts_oracle(fan)))


def is_plane_fan_by_angles(vectors) -> bool:
    """Cyclic vectors bound a complete plane fan: all turns in (0, pi) one way, total one full turn."""
    k = len(vectors)
    if k < 3:
        return False
    ang = [math.atan2(float(v[1]), float(v[0])) for v in vectors]
    for seq in (ang, [-a for a in ang]):
        turns = [(seq[(i + 1) % k] - seq[i]) % (2 * math.pi) for i in range(k)]
        if all(1e-9 < t < math.pi - 1e-9 for t in turns) and abs(sum(turns) - 2 * math.pi) < 1e-6:
            return True
    return False


# one direction on each of 8 lines, in angular order, and their negatives:
# any cyclic arrangement of at most 8 lines is realized by some choice
GRID_LINES = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1)]
GRID = GRID_LINES + [(-x, -y) for x, y in GRID_LINES]


def grid_realization(tiling):
    """Exhaustive search over GRID for curve vectors making every face a complete fan.

    The first curve is fixed to (1, 0) (rotate and negate).  Exact for up to
    8 curves, since face conditions only see the cyclic order of lines.
    """
    curves = sorted({e.curve for e in tiling.edges.values()})
    faces = [tiling.face_curves(f) for f in sorted(tiling.faces)]
    pos = {c: i for i, c in enumerate(curves)}
    due = [[] for _ in curves]
    for seq in faces:
        due[max(pos[c] for c in seq)].append(seq)
    assign = {}

    def go(k):
        if k == len(curves):
            return True
        choices = [(1, 0)] if k == 0 else GRID
        for d in choices:
            assign[curves[k]] = d
            if all(is_plane_fan_by_angles([assign[c] for c in seq]) for seq in due[k]) and go(k + 1):
                return True
        del assign[curves[k]]
        return False

    return dict(assign) if go(0) else None


def twisting_classes(twists, lattice_basis, bound=3):
    """Classes of (twists + L) meet span(L) modulo L, by enumerating small combinations.

    Returned as canonical fractional coordinate tuples in the given basis of L.
    """
    basis = [rg.as_vector(b) for b in lattice_basis]
    twists = [rg.as_vector(t) for t in twists]
    n = len(basis[0]) if basis else len(twists[0])
    classes = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(twists)):
        x = rg.combo(coeffs, twists, n)
        c = rg.solve_linear(basis, x) if basis else ([] if rg.is_zero(x) else None)
        if c is None:
            continue
        classes.add(tuple(v - math.floor(v) for v in c))
    return classes


def unimodular(rng, n, steps=6):
    """Random integer matrix of determinant +-1, as rows."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5 and n > 1:
        m[0], m[1] = m[1], m[0]
    return m


def apply(m, v):
    return tuple(sum(Fraction(a) * b for a, b in zip(row, v)) for row in m)


def random_skeleton(rng, max_vertices=6, extra=4):
    """Connected multigraph with loops, as (vertices, edges id -> (tail, head))."""
    nv = rng.randint(1, max_vertices)
    verts = [f"R{i}" for i in range(nv)]
    edges = {}
    for i in range(1, nv):
        j = rng.randrange(i)
        edges[f"t{i}"] = (verts[i], verts[j]) if rng.random() < 0.5 else (verts[j], verts[i])
    for k in range(rng.randint(1, extra)):
        edges[f"x{k}"] = (rng.choice(verts), rng.choice(verts))
    return verts, edges


def random_spanning_tree(rng, verts, edges):
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    tree = set()
    ids = sorted(edges)
    rng.shuffle(ids)
    for e in ids:
        a, b = (find(x) for x in edges[e])
        if a != b:
            parent[a] = b
            tree.add(e)
    return frozenset(tree)


def _moves(edges, here):
    out = [(e, 1, b) for e, (a, b) in sorted(edges.items()) if a == here]
    return out + [(e, -1, a) for e, (a, b) in sorted(edges.items()) if b == here]


def random_closed_walk(rng, edges, start, steps=8):
    """A random walk from start, closed up along a shortest path back to start."""
    here, out = start, []
    for _ in range(steps):
        e, s, here = rng.choice(_moves(edges, here))
        out.append((e, s))
    prev = {here: None}
    queue = [here]
    while start not in prev:
        v = queue.pop(0)
        for e, s, w in _moves(edges, v):
            if w not in prev:
                prev[w] = (v, e, s)
                queue.append(w)
    back = []
    v = start
    while prev[v] is not None:
        u, e, s = prev[v]
        back.append((e, s))
        v = u
    return out + back[::-1]


def edge_counts(walk):
    """Net number of traversals of each edge."""
    z = {}
    for e, s in walk:
        z[e] = z.get(e, 0) + s
    return z


def random_rational_vector(rng, n, den=6):
    return tuple(Fraction(rng.randint(-12, 12), rng.randint(1, den)) for _ in range(n))
