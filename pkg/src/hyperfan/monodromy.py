"""Monodromy data on a skeleton graph and its consistency conditions.

The skeleton has one vertex per regular orbit and one edge per corank-one
orbit; an edge whose two ends sit on the same vertex is a twisted edge.
A spanning tree is fixed, and monodromy is prescribed on the non-tree
edges (the generators), as classes in Q^n / L.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import ratgeom as rg
from .errors import PreconditionError
from .lattice import (
    Lattice,
    QuotientElement,
    in_generated_group,
    integer_left_kernel,
    lattice_basis,
    reduce_mod_lattice,
    zero,
)
from .report import ValidationReport

__all__ = [
    "Lattice",
    "QuotientElement",
    "reduce_mod_lattice",
    "SkeletonGraph",
    "MonodromySpec",
    "MalformedTwist",
    "parse_step",
    "monodromy_of_loop",
    "check_M1_M2",
    "twisting_group",
    "twisting_group_order",
    "check_twisting_in_image",
]


class MalformedTwist(PreconditionError):
    pass


def parse_step(ref) -> tuple:
    """'e1' -> ('e1', None), '-e1' -> ('e1', -1), ('e1', 1) unchanged."""
    if isinstance(ref, tuple):
        return ref
    if ref.startswith("-"):
        return ref[1:], -1
    if ref.startswith("+"):
        return ref[1:], 1
    return ref, None


@dataclass(frozen=True)
class SkeletonGraph:
    vertices: tuple
    edges: dict  # id -> (tail, head)
    tree: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", {k: tuple(v) for k, v in self.edges.items()})
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PreconditionError("repeated skeleton vertex")
        for e, (a, b) in self.edges.items():
            if a not in vs or b not in vs:
                raise PreconditionError(f"edge {e} has an unknown end")
        if self.tree is None:
            object.__setattr__(self, "tree", self._bfs_tree())
        else:
            object.__setattr__(self, "tree", frozenset(self.tree))
        self._check_tree()

    def _bfs_tree(self) -> frozenset:
        if not self.vertices:
            return frozenset()
        seen = {self.vertices[0]}
        chosen = []
        queue = deque([self.vertices[0]])
        while queue:
            v = queue.popleft()
            for e, (a, b) in self.edges.items():
                if a == b or v not in (a, b):
                    continue
                other = b if a == v else a
                if other not in seen:
                    seen.add(other)
                    chosen.append(e)
                    queue.append(other)
        return frozenset(chosen)

    def _check_tree(self):
        for e in self.tree:
            if e not in self.edges:
                raise PreconditionError(f"tree edge {e} is not an edge")
            if self.twisted(e):
                raise PreconditionError(f"tree edge {e} is a loop")
        if len(self.tree) != max(len(self.vertices) - 1, 0):
            raise PreconditionError("tree does not have |V| - 1 edges (graph disconnected or tree malformed)")
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.tree:
            a, b = (find(x) for x in self.edges[e])
            if a == b:
                raise PreconditionError("tree contains a cycle")
            parent[a] = b

    def twisted(self, e: str) -> bool:
        a, b = self.edges[e]
        return a == b

    @property
    def generators(self) -> tuple:
        return tuple(e for e in self.edges if e not in self.tree)

    def with_tree(self, tree: Iterable[str]) -> "SkeletonGraph":
        return SkeletonGraph(self.vertices, self.edges, frozenset(tree))

    def tree_path(self, start: str, goal: str) -> list:
        """Signed steps along the tree from start to goal."""
        prev = {start: None}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if v == goal:
                break
            for e in sorted(self.tree):
                a, b = self.edges[e]
                for here, there, sign in ((a, b, 1), (b, a, -1)):
                    if here == v and there not in prev:
                        prev[there] = (v, e, sign)
                        queue.append(there)
        steps = []
        v = goal
        while prev[v] is not None:
            u, e, sign = prev[v]
            steps.append((e, sign))
            v = u
        return steps[::-1]

    def fundamental_cycle(self, g: str) -> list:
        a, b = self.edges[g]
        return [(g, 1)] + self.tree_path(b, a)

    def resolve_walk(self, refs: Sequence) -> list:
        """Turn edge references into signed steps and check the walk is closed.

        Unsigned references are oriented to continue the walk; the start
        vertex is inferred from the first step.
        """
        steps = [parse_step(r) for r in refs]
        for e, _ in steps:
            if e not in self.edges:
                raise PreconditionError(f"unknown edge {e}")
        if not steps:
            return []
        e0, s0 = steps[0]
        starts = [s0] if s0 is not None else [1, -1]
        last_error = None
        for first in starts:
            try:
                return self._walk(steps, first)
            except PreconditionError as err:
                last_error = err
        raise last_error

    def _walk(self, steps, first_sign) -> list:
        out = []
        e0 = steps[0][0]
        a, b = self.edges[e0]
        start = a if first_sign == 1 else b
        here = start
        for k, (e, sign) in enumerate(steps):
            if k == 0:
                sign = first_sign
            a, b = self.edges[e]
            if sign is None:
                sign = 1 if a == here else (-1 if b == here else 0)
            if sign == 1 and a == here:
                here = b
            elif sign == -1 and b == here:
                here = a
            else:
                raise PreconditionError(f"walk breaks at edge {e}")
            out.append((e, sign))
        if here != start:
            raise PreconditionError("walk is not closed")
        return out


@dataclass(frozen=True)
class MonodromySpec:
    graph: SkeletonGraph
    lattice: Lattice
    values: dict = field(default_factory=dict)  # generator -> QuotientElement

    def __post_init__(self):
        vals = {}
        for g, v in self.values.items():
            if g not in self.graph.edges:
                raise PreconditionError(f"value given for unknown edge {g}")
            if g in self.graph.tree:
                raise PreconditionError(f"value given for tree edge {g}")
            rep = v.representative if isinstance(v, QuotientElement) else v
            vals[g] = reduce_mod_lattice(rep, self.lattice)
        for g in self.graph.generators:
            vals.setdefault(g, zero(self.lattice))
        object.__setattr__(self, "values", vals)

    def evaluate(self, loop: Sequence) -> QuotientElement:
        return monodromy_of_loop(self, loop)

    def rebased(self, tree: Iterable[str]) -> "MonodromySpec":
        """The same homomorphism described relative to another spanning tree."""
        g2 = self.graph.with_tree(tree)
        vals = {g: self.evaluate(g2.fundamental_cycle(g)) for g in g2.generators}
        return MonodromySpec(g2, self.lattice, vals)


def monodromy_of_loop(spec: MonodromySpec, loop: Sequence) -> QuotientElement:
    steps = spec.graph.resolve_walk(loop)
    total = zero(spec.lattice)
    for e, sign in steps:
        if e in spec.graph.tree:
            continue
        total = total + spec.values[e] if sign == 1 else total - spec.values[e]
    return total


def _check_twist(w, lattice: Lattice) -> tuple:
    w = rg.as_vector(w)
    if lattice.contains(w) or not lattice.contains(rg.scale(2, w)):
        raise MalformedTwist(f"twist element {rg.fmt(w)} needs 2w in L and w not in L")
    return w


def check_M1_M2(spec: MonodromySpec, point_data: dict) -> ValidationReport:
    """point_data: {"M1": [{"id", "loop"}], "M2": [{"id", "loop", "w"}]}."""
    rep = ValidationReport()
    for item in point_data.get("M1", []):
        loop = item["loop"]
        if len(loop) != 4:
            raise PreconditionError(f"point {item.get('id')}: expected 4 adjacent edges, got {len(loop)}")
        mu = monodromy_of_loop(spec, loop)
        if not mu.is_zero:
            rep.add("M1", f"loop around {item.get('id')} has monodromy {rg.fmt(mu.representative)}, expected 0", mu.representative)
    for item in point_data.get("M2", []):
        w = _check_twist(item["w"], spec.lattice)
        mu = monodromy_of_loop(spec, item["loop"])
        target = reduce_mod_lattice(w, spec.lattice)
        if mu != target:
            rep.add("M2", f"loop around {item.get('id')} has monodromy {rg.fmt(mu.representative)}, expected {rg.fmt(target.representative)}", mu.representative)
    return rep


def _twisting_relations(isotropy_part: Sequence, lattice: Lattice):
    """Integer matrix R whose rows express the basis of L in a basis of (iso + L) meet span(L)."""
    k, n = lattice.rank, lattice.ambient_dim
    gens = lattice_basis(list(isotropy_part) + list(lattice.basis), n)
    normals = lattice.normal_functionals()
    if normals:
        m = [[rg.dot(f, g) for f in normals] for g in gens]
        kernel = integer_left_kernel(m)
    else:
        kernel = [[int(i == j) for j in range(len(gens))] for i in range(len(gens))]
    inner = [rg.combo(c, gens, n) for c in kernel]
    coords = [tuple(lattice.span_coords(v)) for v in inner]
    basis = lattice_basis(coords, k)
    rows = []
    for i in range(k):
        e = tuple(int(i == j) for j in range(k))
        c = rg.solve_linear(basis, e)
        rows.append([int(x) for x in c])
    return rows


def _rank_mod2(rows: Sequence[Sequence[int]]) -> int:
    a = [[x % 2 for x in r] for r in rows]
    rank = 0
    width = len(a[0]) if a else 0
    for c in range(width):
        p = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                a[i] = [(x + y) % 2 for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def twisting_group(isotropy_part: Sequence, lattice: Lattice) -> int:
    """Z2-rank of the classes of order two in (iso meet span L) / L."""
    if lattice.rank == 0:
        return 0
    rows = _twisting_relations(isotropy_part, lattice)
    return lattice.rank - _rank_mod2(rows)


def twisting_group_order(isotropy_part: Sequence, lattice: Lattice) -> int:
    """Order of the whole finite group (iso meet span L) / L."""
    if lattice.rank == 0:
        return 1
    return abs(int(rg.determinant(_twisting_relations(isotropy_part, lattice))))


def check_twisting_in_image(spec: MonodromySpec, twist_classes: Sequence) -> bool:
    n = spec.lattice.ambient_dim
    gens = [v.representative for v in spec.values.values()] + list(spec.lattice.basis)
    for w in twist_classes:
        rep = w.representative if isinstance(w, QuotientElement) else rg.as_vector(w)
        if not in_generated_group(gens, rep, n):
            return False
    return True
