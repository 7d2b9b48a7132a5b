"""Closed manifolds assembled from domains.

Two constructions live here.  The reflection gluing takes 2^m copies of the
domain of an m-ray fan, indexed by (Z2)^m, and identifies copies across
each facet.  A general 2D tiling is a combinatorial surface cut by curves
into faces, each curve carrying a plane vector; it is admissible when
every face sees a complete fan.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from . import ratgeom as rg
from .errors import CapacityError, PreconditionError
from .fan import Fan, angle_key
from .lattice import lattice_basis, reduce_mod_lattice
from .monodromy import MonodromySpec, SkeletonGraph, monodromy_of_loop
from .report import ValidationReport

MAX_SEARCH_CURVES = 10


def _mask(cone) -> int:
    out = 0
    for i in cone:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class ClosedComplex:
    """Cells are pairs (cone S, coset of G_S) with G_S generated by e_i, i in S.

    A coset is stored by its representative with the bits of S cleared.
    """

    fan: Fan

    @property
    def n(self) -> int:
        return self.fan.ambient_dim

    @property
    def m(self) -> int:
        return self.fan.m

    @functools.cached_property
    def cells(self) -> tuple:
        out = []
        for s in sorted(self.fan.derived_cones, key=lambda c: (len(c), sorted(c))):
            ms = _mask(s)
            for alpha in range(1 << self.m):
                if alpha & ms == 0:
                    out.append((s, alpha))
        return tuple(out)

    def dim(self, cell) -> int:
        return self.n - len(cell[0])

    def cell_counts(self) -> list[int]:
        counts = [0] * (self.n + 1)
        for c in self.cells:
            counts[self.dim(c)] += 1
        return counts

    def euler_from_cells(self) -> int:
        return sum((-1) ** self.dim(c) for c in self.cells)

    def in_closure(self, lower, upper) -> bool:
        """lower lies in the closure of upper."""
        (s_lo, a_lo), (s_up, a_up) = lower, upper
        return s_up <= s_lo and (a_up & ~_mask(s_lo)) == a_lo

    def top_adjacency(self) -> dict:
        adj = {a: set() for a in range(1 << self.m)}
        for s, alpha in self.cells:
            if len(s) == 1:
                (i,) = s
                adj[alpha].add(alpha | 1 << i)
                adj[alpha | 1 << i].add(alpha)
        return adj

    def connected(self) -> bool:
        adj = self.top_adjacency()
        seen, stack = {0}, [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == len(adj)

    def collapse(self) -> dict:
        """Number of glued cells over each cone; the quotient by (Z2)^m."""
        out: dict = {}
        for s, _ in self.cells:
            out[s] = out.get(s, 0) + 1
        return out


def reflection_glue(f: Fan) -> ClosedComplex:
    f.require_valid()
    return ClosedComplex(f)


def euler_closed(c: ClosedComplex) -> int:
    """Closed form: sum over cones S of (-1)^(n-|S|) 2^(m-|S|)."""
    return sum((-1) ** (c.n - len(s)) * 2 ** (c.m - len(s)) for s in c.fan.derived_cones)


# 2D tilings


@dataclass(frozen=True)
class TEdge:
    curve: str
    ends: tuple


@dataclass(frozen=True)
class TFace:
    """Boundary walk: edges[i] runs from corners[i] to corners[i+1]."""

    corners: tuple
    edges: tuple


@dataclass(frozen=True)
class Tiling2D:
    curves: dict  # id -> vector or None
    edges: dict  # id -> TEdge
    faces: dict  # id -> TFace
    closed: bool = True
    monodromy: Optional[MonodromySpec] = None

    def __post_init__(self):
        object.__setattr__(self, "curves", {k: (None if v is None else rg.as_vector(v)) for k, v in self.curves.items()})
        object.__setattr__(self, "edges", {k: TEdge(e.curve, tuple(e.ends)) for k, e in self.edges.items()})
        object.__setattr__(self, "faces", {k: TFace(tuple(f.corners), tuple(f.edges)) for k, f in self.faces.items()})

    @property
    def vertices(self) -> list:
        vs = set()
        for e in self.edges.values():
            vs.update(e.ends)
        for f in self.faces.values():
            vs.update(f.corners)
        return sorted(vs)

    @property
    def has_vectors(self) -> bool:
        return all(v is not None for v in self.curves.values())

    def with_vectors(self, vectors: dict) -> "Tiling2D":
        return replace(self, curves={c: vectors.get(c) for c in self.curves}, monodromy=self.monodromy)

    def without_vectors(self) -> "Tiling2D":
        return replace(self, curves={c: None for c in self.curves}, monodromy=None)

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_curves(self, face: str) -> list:
        return [self.edges[e].curve for e in self.faces[face].edges]

    def skeleton(self, tree=None) -> SkeletonGraph:
        """Faces as vertices, tiling edges between the faces on their two sides."""
        sides: dict = {}
        for fid in sorted(self.faces):
            for e in self.faces[fid].edges:
                sides.setdefault(e, []).append(fid)
        edges = {e: (s[0], s[-1]) for e, s in sides.items() if len(s) == 2}
        return SkeletonGraph(tuple(sorted(self.faces)), edges, tree)


def check_surface(t: Tiling2D) -> ValidationReport:
    """Combinatorial well-formedness only (condition id "surface")."""
    rep = ValidationReport()
    bad = lambda msg, w=None: rep.add("surface", msg, w)  # noqa: E731
    for eid, e in t.edges.items():
        if e.curve not in t.curves:
            bad(f"edge {eid} lies on unknown curve {e.curve}", eid)
        if len(e.ends) != 2 or e.ends[0] == e.ends[1]:
            bad(f"edge {eid} must join two distinct vertices", eid)
    if rep.violations:
        return rep

    sides = {e: 0 for e in t.edges}
    corners: dict = {}  # vertex -> list of (face, half-edge, half-edge)
    for fid, f in sorted(t.faces.items()):
        k = len(f.edges)
        if k == 0 or len(f.corners) != k:
            bad(f"face {fid} needs matching nonempty corner and edge lists", fid)
            continue
        ok = True
        for i, eid in enumerate(f.edges):
            if eid not in t.edges:
                bad(f"face {fid} uses unknown edge {eid}", fid)
                ok = False
                continue
            sides[eid] += 1
            if set(t.edges[eid].ends) != {f.corners[i], f.corners[(i + 1) % k]}:
                bad(f"face {fid}: edge {eid} does not join corners {f.corners[i]} and {f.corners[(i + 1) % k]}", fid)
                ok = False
        if not ok:
            continue
        for i in range(k):
            v = f.corners[i]
            e_in, e_out = f.edges[i - 1], f.edges[i]
            if t.edges[e_in].curve == t.edges[e_out].curve:
                bad(f"face {fid} has a corner at {v} between two edges of curve {t.edges[e_in].curve}", (fid, v))
            corners.setdefault(v, []).append((fid, (e_in, v), (e_out, v)))

    for eid, count in sides.items():
        if count == 0 or count > 2 or (t.closed and count != 2):
            bad(f"edge {eid} borders {count} face side(s)", eid)

    half_edges: dict = {}
    for eid, e in t.edges.items():
        for v in e.ends:
            half_edges.setdefault(v, []).append((eid, v))
    for v in sorted(set(half_edges) | set(corners)):
        hes = half_edges.get(v, [])
        per_curve: dict = {}
        for eid, _ in hes:
            c = t.edges[eid].curve
            per_curve[c] = per_curve.get(c, 0) + 1
        need = (lambda x, full: x == full) if t.closed else (lambda x, full: x <= full)
        if len(per_curve) > 2 or (t.closed and len(per_curve) != 2) or not all(need(x, 2) for x in per_curve.values()):
            bad(f"vertex {v} is not a transversal crossing of two curves", (v, per_curve))
            continue
        uses: dict = {h: 0 for h in hes}
        for _, a, b in corners.get(v, []):
            for h in (a, b):
                uses[h] = uses.get(h, 0) + 1
        if any(not need(x, 2) for x in uses.values()):
            bad(f"corners at vertex {v} do not close up around it", v)
            continue
        if t.closed:
            cs = corners.get(v, [])
            if len(cs) != 4 or not _single_cycle([(a, b) for _, a, b in cs]):
                bad(f"vertex {v} does not have exactly four corners forming one cycle", v)
    return rep


def _single_cycle(pairs) -> bool:
    adj: dict = {}
    for a, b in pairs:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(adj)


def fan_condition(vectors: Sequence) -> Optional[str]:
    """None if the cyclic vector sequence is a complete fan of the plane, else the reason."""
    k = len(vectors)
    if k < 3:
        return f"{k} rays cannot form a complete fan of the plane"
    dets = [rg.det2(vectors[i], vectors[(i + 1) % k]) for i in range(k)]
    if any(d == 0 for d in dets):
        return "two consecutive vectors are parallel"
    if not (all(d > 0 for d in dets) or all(d < 0 for d in dets)):
        return "consecutive turns change direction"
    if dets[0] < 0:
        vectors = [(x, -y) for x, y in vectors]
    ref = (1, 0)
    winding = sum(
        1
        for i in range(k)
        if rg.det2(vectors[i], ref) > 0 and rg.det2(ref, vectors[(i + 1) % k]) >= 0
    )
    if winding != 1:
        return f"vectors wind {winding} times around the origin"
    return None


def validate_tiling2d(t: Tiling2D) -> ValidationReport:
    """Condition ids: "surface", "face-fan", "vertex"."""
    missing = sorted(c for c, v in t.curves.items() if v is None)
    if missing:
        raise PreconditionError(f"curves without vectors: {', '.join(missing)}")
    for c, v in t.curves.items():
        if len(v) != 2:
            raise PreconditionError(f"curve {c} needs a plane vector")
    rep = check_surface(t)
    if not rep.valid:
        return rep
    face_ok = {}
    for fid, f in sorted(t.faces.items()):
        reason = fan_condition([t.curves[c] for c in t.face_curves(fid)])
        face_ok[fid] = reason is None
        if reason:
            rep.add("face-fan", f"face {fid}: {reason}", fid)
    at_vertex: dict = {}
    for fid, f in t.faces.items():
        for i, v in enumerate(f.corners):
            at_vertex.setdefault(v, []).append((fid, i))
    for v in t.vertices:
        curves = sorted({t.edges[e].curve for e, ed in t.edges.items() if v in ed.ends})
        if len(curves) != 2:
            continue
        a, b = (t.curves[c] for c in curves)
        if rg.det2(a, b) == 0:
            rep.add("vertex", f"curves {curves[0]} and {curves[1]} cross at {v} with parallel vectors", v)
            continue
        for fid, i in at_vertex.get(v, []):
            f = t.faces[fid]
            pair = {t.edges[f.edges[i - 1]].curve, t.edges[f.edges[i]].curve}
            if face_ok[fid] and pair != set(curves):
                rep.add("vertex", f"face {fid} does not contain the cone of {curves} at {v}", (fid, v))
    return rep


def tiling_from_fan(f: Fan) -> Tiling2D:
    """The reflection gluing of a 2D fan written out as a tiling."""
    f.require_valid()
    if f.ambient_dim != 2:
        raise PreconditionError("tilings are two-dimensional")
    m = f.m
    order = sorted(range(m), key=lambda i: angle_key(f.rays[i]))
    pos = {r: k for k, r in enumerate(order)}

    def vname(i, j, alpha):
        i, j = min(i, j), max(i, j)
        return f"v{i}.{j}:{alpha & ~(1 << i) & ~(1 << j)}"

    def ename(i, alpha):
        return f"e{i}:{alpha & ~(1 << i)}"

    edges, faces = {}, {}
    for alpha in range(1 << m):
        corners, es = [], []
        for k, r in enumerate(order):
            prev = order[k - 1]
            nxt = order[(k + 1) % m]
            corners.append(vname(prev, r, alpha))
            es.append(ename(r, alpha))
            edges[ename(r, alpha)] = (r, (vname(prev, r, alpha), vname(r, nxt, alpha)))
        faces[f"f{alpha}"] = TFace(tuple(corners), tuple(es))
    # curves: components of the ray-i edges, linked through the crossings
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for alpha in range(1 << m):
        for r in range(m):
            for other in (order[pos[r] - 1], order[(pos[r] + 1) % m]):
                parent[find(ename(r, alpha))] = find(ename(r, alpha ^ (1 << other)))
    comps: dict = {}
    for e in sorted(edges, key=lambda e: (edges[e][0], int(e.split(":")[1]))):
        comps.setdefault(find(e), []).append(e)
    curve_of, curves, counter = {}, {}, {}
    for root, members in sorted(comps.items(), key=lambda kv: (edges[kv[1][0]][0], kv[1][0])):
        r = edges[members[0]][0]
        k = counter.get(r, 0)
        counter[r] = k + 1
        cid = f"c{r}" if k == 0 else f"c{r}.{k}"
        curves[cid] = f.rays[r]
        for e in members:
            curve_of[e] = cid
    tedges = {e: TEdge(curve_of[e], ends) for e, (_, ends) in edges.items()}
    return Tiling2D(curves, tedges, faces)


# realizability search


@dataclass(frozen=True)
class Realization:
    feasible: bool
    witness: Optional[dict]
    explored: int


def _slot_directions(count: int) -> list:
    return [(1, 0)] + [(count - 2 * j, 1) for j in range(1, count)]


def _search_order(curves: list, face_curves: list) -> list:
    order, placed = [], set()
    remaining = list(curves)
    while remaining:
        def score(c):
            done = sum(1 for fc in face_curves if c in fc and fc <= placed | {c})
            touch = sum(1 for fc in face_curves if c in fc and fc & placed)
            return (-done, -touch, c)

        best = min(remaining, key=score)
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def realizable_2d(t: Tiling2D, max_curves: int = MAX_SEARCH_CURVES) -> Realization:
    """Exhaustive search over the rank-two oriented matroids of the curve vectors.

    Each curve gets a line through the origin (a slot in a cyclic order of
    lines, ties allowed) and a sign.  Whether a face sees a complete fan
    depends only on this data, so instantiating every slot by some rational
    direction decides the question exactly.  The first curve is pinned to
    slot 0 with sign + (rotation symmetry).
    """
    rep = check_surface(t)
    if not rep.valid:
        raise PreconditionError("tiling is not a valid combinatorial surface")
    curves = sorted({e.curve for e in t.edges.values()})
    if len(curves) > max_curves:
        raise CapacityError(f"{len(curves)} curves exceed the search bound {max_curves}")
    face_seq = [t.face_curves(f) for f in sorted(t.faces)]
    face_sets = [frozenset(s) for s in face_seq]
    order = _search_order(curves, face_sets)
    rank = {c: k for k, c in enumerate(order)}
    due: list = [[] for _ in order]
    for seq, fs in zip(face_seq, face_sets):
        due[max(rank[c] for c in fs)].append(seq)
    explored = 0

    def vectors(slots):
        dirs = _slot_directions(len(slots))
        out = {}
        for d, members in zip(dirs, slots):
            for c, sign in members:
                out[c] = d if sign > 0 else (-d[0], -d[1])
        return out

    def consistent(slots, k):
        vs = vectors(slots)
        return all(fan_condition([vs[c] for c in seq]) is None for seq in due[k])

    def search(k, slots):
        nonlocal explored
        explored += 1
        if not consistent(slots, k):
            return None
        if k + 1 == len(order):
            return vectors(slots)
        c = order[k + 1]
        for j in range(len(slots)):
            for sign in (1, -1):
                trial = [list(s) for s in slots]
                trial[j].append((c, sign))
                found = search(k + 1, trial)
                if found:
                    return found
        for j in range(1, len(slots) + 1):
            for sign in (1, -1):
                trial = [list(s) for s in slots]
                trial.insert(j, [(c, sign)])
                found = search(k + 1, trial)
                if found:
                    return found
        return None

    if not order:
        return Realization(True, {}, 0)
    found = search(0, [[(order[0], 1)]])
    if found is None:
        return Realization(False, None, explored)
    witness = {c: rg.as_vector(found[c]) for c in curves}
    for c in t.curves:
        witness.setdefault(c, t.curves[c] if t.curves[c] is not None else rg.vec(1, 0))
    assert validate_tiling2d(t.with_vectors(witness)).valid
    return Realization(True, witness, explored)


# isomorphisms


@dataclass(frozen=True)
class IsoCandidate:
    faces: dict
    edges: dict
    curves: dict
    linear: tuple  # 2x2 matrix, rows

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(rg.as_vector(r) for r in self.linear))


def _check_bijection(name, mapping, source, target):
    if set(mapping) != set(source):
        raise PreconditionError(f"{name} map must be defined exactly on the source {name}")
    if set(mapping.values()) != set(target) or len(set(mapping.values())) != len(mapping):
        raise PreconditionError(f"{name} map is not a bijection onto the target {name}")


def _cyclic_tokens(corners, edges):
    out = []
    for c, e in zip(corners, edges):
        out.extend((("v", c), ("e", e)))
    return out


def _same_cycle(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    for seq in (b, b[::-1]):
        for s in range(len(seq)):
            if seq[s:] + seq[:s] == a:
                return True
    return False


def verify_isomorphism(
    ta: Tiling2D,
    tb: Tiling2D,
    iso: IsoCandidate,
    mon_a: Optional[MonodromySpec] = None,
    mon_b: Optional[MonodromySpec] = None,
) -> bool:
    """Check that iso transports faces, boundary structure, curve vectors and monodromy."""
    mon_a = mon_a if mon_a is not None else ta.monodromy
    mon_b = mon_b if mon_b is not None else tb.monodromy
    for t in (ta, tb):
        if not validate_tiling2d(t).valid:
            raise PreconditionError("both tilings must be valid")
    _check_bijection("faces", iso.faces, ta.faces, tb.faces)
    _check_bijection("edges", iso.edges, ta.edges, tb.edges)
    _check_bijection("curves", iso.curves, ta.curves, tb.curves)
    if len(iso.linear) != 2 or any(len(r) != 2 for r in iso.linear) or rg.determinant(iso.linear) == 0:
        raise PreconditionError("linear identification must be an invertible 2x2 matrix")
    if (mon_a is None) != (mon_b is None):
        raise PreconditionError("monodromy must be given for both tilings or neither")

    for e, ed in ta.edges.items():
        if tb.edges[iso.edges[e]].curve != iso.curves[ed.curve]:
            return False
    vmap = {}
    for v in ta.vertices:
        candidates = None
        for e, ed in ta.edges.items():
            if v in ed.ends:
                ends = set(tb.edges[iso.edges[e]].ends)
                candidates = ends if candidates is None else candidates & ends
        if not candidates or len(candidates) != 1:
            return False
        vmap[v] = candidates.pop()
    if len(set(vmap.values())) != len(vmap):
        return False
    for fid, f in ta.faces.items():
        g = tb.faces[iso.faces[fid]]
        mapped = _cyclic_tokens([vmap[c] for c in f.corners], [iso.edges[e] for e in f.edges])
        if not _same_cycle(mapped, _cyclic_tokens(g.corners, g.edges)):
            return False
    for c, v in ta.curves.items():
        if rg.mat_vec(iso.linear, v) != tb.curves[iso.curves[c]]:
            return False
    if mon_a is None:
        return True

    la, lb = mon_a.lattice, mon_b.lattice
    image = [rg.mat_vec(iso.linear, b) for b in la.basis]
    if la.rank != lb.rank or not all(lb.contains(v) for v in image):
        return False
    if lattice_basis(image, 2) != lattice_basis(list(lb.basis), 2):
        return False
    for g in mon_a.graph.generators:
        cycle = mon_a.graph.fundamental_cycle(g)
        lhs = monodromy_of_loop(mon_a, cycle)
        try:
            rhs = monodromy_of_loop(mon_b, [iso.edges[e] for e, _ in cycle])
        except (KeyError, PreconditionError):
            return False
        if reduce_mod_lattice(rg.mat_vec(iso.linear, lhs.representative), lb) != rhs:
            return False
    return True
