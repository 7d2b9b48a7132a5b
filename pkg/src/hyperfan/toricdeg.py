"""Toric degree bookkeeping and the classification data for high toric degree.

HERT tuples are always ordered (h, e, r, t).  Toric degree n-1 actions are
described by marked graphs (a circle or an interval of singular orbits);
toric degree n-2 actions by a typed 2-dimensional quotient plus reduction
data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import ratgeom as rg
from .domain import HERT
from .errors import PreconditionError
from .lattice import Lattice
from .monodromy import MonodromySpec, SkeletonGraph, twisting_group
from .report import ValidationReport


def validate_hert(h: int, e: int, r: int, t: int, n: int) -> bool:
    return min(h, e, r, t) >= 0 and h + 2 * e + r + t == n


def toric_degree(hert: HERT, n: Optional[int] = None) -> int:
    if n is not None and not validate_hert(hert.h, hert.e, hert.r, hert.t, n):
        raise PreconditionError(f"HERT {hert} is inconsistent with n={n}")
    return hert.e + hert.t


def allowed_transitions(hert: HERT) -> set:
    """HERT values that may sit next to an orbit with this HERT."""
    h, e, r, t = hert.h, hert.e, hert.r, hert.t
    out = set()
    if r > 0:
        out.add(HERT(h + 1, e, r - 1, t))
        if t > 0:
            out.add(HERT(h, e + 1, r - 1, t - 1))
    if e >= 1:
        out.add(HERT(h + 1, e - 1, r, t + 1))
    if h >= 1:
        out.add(HERT(h - 1, e, r + 1, t))
    return out


def validate_orbit_poset(orbits: dict, closure: Sequence, n: int) -> ValidationReport:
    """orbits: id -> HERT; closure: pairs (K, H) meaning K lies in the closure of H.

    Condition ids: "hert", "dimension", "t-semicontinuity", "toric-degree",
    "regular-closure".
    """
    rep = ValidationReport()
    for a, b in closure:
        if a not in orbits or b not in orbits:
            raise PreconditionError(f"closure pair ({a}, {b}) names an unknown orbit")
    for oid, x in sorted(orbits.items()):
        if not validate_hert(x.h, x.e, x.r, x.t, n):
            rep.add("hert", f"orbit {oid} has HERT {x} with h+2e+r+t != {n}", oid)
    for a, b in closure:
        if orbits[a].orbit_dim >= orbits[b].orbit_dim:
            rep.add("dimension", f"orbit {a} in the closure of {b} is not of lower dimension", (a, b))
        if orbits[a].t > orbits[b].t:
            rep.add("t-semicontinuity", f"t({a}) = {orbits[a].t} exceeds t({b}) = {orbits[b].t}", (a, b))
    degrees = Counter(x.e + x.t for x in orbits.values())
    if len(degrees) > 1:
        common = min(degrees, key=lambda d: (-degrees[d], d))
        for oid, x in sorted(orbits.items()):
            if x.e + x.t != common:
                rep.add("toric-degree", f"orbit {oid} has e+t = {x.e + x.t}, others have {common}", oid)
    above: dict = {o: set() for o in orbits}
    for a, b in closure:
        above[a].add(b)
    changed = True
    while changed:
        changed = False
        for o in orbits:
            extra = set().union(*(above[b] for b in above[o])) - above[o] if above[o] else set()
            if extra:
                above[o] |= extra
                changed = True
    regular = {o for o, x in orbits.items() if x.h == 0 and x.e == 0}
    for o in sorted(orbits):
        if o not in regular and not (above[o] & regular):
            rep.add("regular-closure", f"orbit {o} is not in the closure of any regular orbit", o)
    return rep


# the ten local types of toric degree n-2


@dataclass(frozen=True)
class SingularityType:
    numeral: str
    letter: str
    h: int
    e: int
    r: int
    k: int  # rank of the twisting group

    def t(self, n: int) -> int:
        return n - 2 - self.e

    def hert(self, n: int) -> HERT:
        return HERT(self.h, self.e, self.r, self.t(n))

    def legal(self, n: int) -> bool:
        t = self.t(n)
        return t >= 0 and self.k <= min(self.h, t)


SINGULARITY_TYPES = {
    s.numeral: s
    for s in (
        SingularityType("I", "h", 1, 0, 1, 0),
        SingularityType("II", "h_t", 1, 0, 1, 1),
        SingularityType("III", "e", 0, 1, 1, 0),
        SingularityType("IV", "h-h", 2, 0, 0, 0),
        SingularityType("V", "h-h_t", 2, 0, 0, 1),
        SingularityType("VI", "(h-h)_t", 2, 0, 0, 1),
        SingularityType("VII", "e-h", 1, 1, 0, 0),
        SingularityType("VIII", "h_t-h_t", 2, 0, 0, 2),
        SingularityType("IX", "e-h_t", 1, 1, 0, 1),
        SingularityType("X", "e-e", 0, 2, 0, 0),
    )
}
EDGE_TYPE_OF_LETTER = {"h": "I", "h_t": "II", "e": "III"}
BOUNDARY_LETTERS = {"h_t", "e"}

# letters of the edges ending at a vertex of each type
VERTEX_SIGNATURES = {
    "IV": Counter({"h": 4}),
    "V": Counter({"h_t": 2, "h": 1}),
    "VI": Counter({"h": 2}),
    "VII": Counter({"e": 2, "h": 1}),
    "VIII": Counter({"h_t": 2}),
    "IX": Counter({"e": 1, "h_t": 1}),
    "X": Counter({"e": 2}),
}


def type_isotropy_model(numeral: str, n: int) -> tuple:
    """A lattice of rank n-2 with isotropy generators realizing the type's twisting rank."""
    ty = SINGULARITY_TYPES[numeral]
    if not ty.legal(n):
        raise PreconditionError(f"type {numeral} is not allowed for n={n}")
    basis = [tuple(int(i == j) for i in range(n)) for j in range(2, n)]
    twists = [rg.scale("1/2", basis[i]) for i in range(ty.k)]
    return Lattice(n, tuple(basis)), twists


# toric degree n-1: marked graphs


@dataclass(frozen=True)
class Mark:
    vector: tuple
    couple: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "vector", rg.as_vector(self.vector))
        if self.couple is not None:
            object.__setattr__(self, "couple", rg.as_vector(self.couple))


@dataclass(frozen=True)
class MarkedGraph:
    shape: str
    marks: tuple
    lattice: Lattice
    monodromy: Optional[tuple] = None

    def __post_init__(self):
        if self.shape not in ("circle", "interval"):
            raise PreconditionError(f"unknown shape {self.shape!r}")
        object.__setattr__(self, "marks", tuple(self.marks))
        if self.monodromy is not None:
            object.__setattr__(self, "monodromy", rg.as_vector(self.monodromy))

    @property
    def n(self) -> int:
        return self.lattice.ambient_dim

    def reversed(self) -> "MarkedGraph":
        mu = None if self.monodromy is None else rg.neg(self.monodromy)
        return MarkedGraph(self.shape, self.marks[::-1], self.lattice, mu)

    def end_kinds(self) -> tuple:
        """'elbolic' for a couple, 'twisted' for a single vector, per interval end."""
        return tuple("elbolic" if m.couple is not None else "twisted" for m in (self.marks[0], self.marks[-1]))

    def skeleton_spec(self) -> MonodromySpec:
        """Regular arcs as vertices, marked orbits as edges; the circle's last edge carries the monodromy."""
        if self.shape != "circle":
            raise PreconditionError("only circle graphs carry monodromy")
        m = len(self.marks)
        verts = tuple(f"R{i}" for i in range(m))
        edges = {f"z{i}": (f"R{(i - 1) % m}", f"R{i}") for i in range(m)}
        tree = frozenset(f"z{i}" for i in range(1, m))
        graph = SkeletonGraph(verts, edges, tree)
        mu = self.monodromy or (0,) * self.n
        return MonodromySpec(graph, self.lattice, {"z0": mu})


def validate_marked_graph(g: MarkedGraph, n: int) -> ValidationReport:
    """Condition ids "Ci" to "Civ"."""
    rep = ValidationReport()
    m = len(g.marks)
    if g.shape == "circle" and (m < 2 or m % 2):
        rep.add("Ci", f"a circle needs an even positive number of vertices, got {m}", m)
    if g.shape == "interval" and m < 2:
        rep.add("Ci", f"an interval needs both ends marked, got {m} vertices", m)
    for i, mk in enumerate(g.marks):
        is_end = g.shape == "interval" and i in (0, m - 1)
        if mk.couple is not None and not is_end:
            rep.add("Cii", f"vertex {i} carries a couple but is not an interval end", i)
        for v in (mk.vector, mk.couple):
            if v is not None and len(v) != n:
                rep.add("Cii", f"vertex {i} has a vector of the wrong dimension", i)
    if g.monodromy is not None and g.shape != "circle":
        rep.add("Cii", "monodromy is only defined on a circle")
    if g.lattice.ambient_dim != n or g.lattice.rank != n - 1:
        rep.add("Ciii", f"lattice must have rank {n - 1} in dimension {n}", g.lattice.rank)
        return rep
    if any(v.condition == "Cii" and "dimension" in v.detail for v in rep.violations):
        return rep
    (normal,) = g.lattice.normal_functionals()
    sides = []
    for i, mk in enumerate(g.marks):
        side = rg.dot(normal, mk.vector)
        sides.append(side)
        if side == 0:
            rep.add("Civ", f"mark of vertex {i} lies in the span of the lattice", i)
        if mk.couple is not None and not g.lattice.is_primitive(mk.couple):
            rep.add("Civ", f"second vector of the couple at vertex {i} is not primitive in the lattice", i)
    pairs = list(zip(range(m), range(1, m)))
    if g.shape == "circle" and m >= 2:
        pairs.append((m - 1, 0))
    for i, j in pairs:
        if sides[i] != 0 and sides[j] != 0 and (sides[i] > 0) == (sides[j] > 0):
            rep.add("Civ", f"consecutive marks {i} and {j} lie on the same side of the lattice span", (i, j))
    return rep


@dataclass(frozen=True)
class Classification:
    case: str
    manifold: Optional[str]

    def __str__(self) -> str:
        return f"case {self.case}: {self.manifold or 'unnamed'}"


def classify_marked_graph(g: MarkedGraph, n: int) -> Classification:
    rep = validate_marked_graph(g, n)
    if not rep.valid:
        raise PreconditionError("invalid marked graph: " + "; ".join(rep.lines()[1:]))
    if g.shape == "circle":
        return Classification("a", f"T^{n}")
    kinds = g.end_kinds()
    if kinds == ("elbolic", "elbolic"):
        if n == 2:
            return Classification("b", "S^2")
        if n == 3:
            w1, w2 = g.marks[0].couple, g.marks[-1].couple
            same = w1 == w2 or w1 == rg.neg(w2)
            return Classification("b", "S^2 x S^1" if same else "lens")
        return Classification("b", None)
    if "elbolic" in kinds:
        return Classification("c", "RP^2" if n == 2 else None)
    return Classification("d", "Klein bottle" if n == 2 else None)


# toric degree n-2: typed quotients


@dataclass(frozen=True)
class QEdge:
    letter: str
    boundary: bool
    ends: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))


@dataclass(frozen=True)
class TypedQuotient:
    n: int
    vertices: dict  # id -> type numeral
    edges: dict  # id -> QEdge
    faces: dict  # id -> tuple of edge ids
    gluings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "faces", {k: tuple(v) for k, v in self.faces.items()})
        object.__setattr__(self, "gluings", tuple(tuple(p) for p in self.gluings))

    def stratum_type(self, sid: str) -> Optional[SingularityType]:
        if sid in self.vertices:
            return SINGULARITY_TYPES.get(self.vertices[sid])
        if sid in self.edges:
            return SINGULARITY_TYPES.get(EDGE_TYPE_OF_LETTER.get(self.edges[sid].letter))
        return None


def validate_typed_quotient(q: TypedQuotient) -> ValidationReport:
    """Condition ids: "type", "position", "sides", "vertex", "gluing"."""
    rep = ValidationReport()
    n = q.n
    for vid, numeral in sorted(q.vertices.items()):
        ty = SINGULARITY_TYPES.get(numeral)
        if ty is None or numeral not in VERTEX_SIGNATURES:
            rep.add("type", f"vertex {vid} has unknown vertex type {numeral!r}", vid)
        elif not ty.legal(n):
            rep.add("type", f"vertex {vid} has type {numeral} ({ty.letter}), not allowed for n={n}", vid)
    for eid, e in sorted(q.edges.items()):
        numeral = EDGE_TYPE_OF_LETTER.get(e.letter)
        if numeral is None:
            rep.add("type", f"edge {eid} has unknown letter {e.letter!r}", eid)
            continue
        if not SINGULARITY_TYPES[numeral].legal(n):
            rep.add("type", f"edge {eid} has type {numeral}, not allowed for n={n}", eid)
        if e.boundary != (e.letter in BOUNDARY_LETTERS):
            where = "boundary" if e.boundary else "interior"
            rep.add("position", f"{where} edge {eid} cannot carry letter {e.letter}", eid)
        if len(e.ends) not in (0, 2):
            rep.add("vertex", f"edge {eid} must have two ends or none", eid)
        for v in e.ends:
            if v not in q.vertices:
                rep.add("vertex", f"edge {eid} ends at unknown vertex {v}", eid)
    count = Counter()
    for fid, boundary in sorted(q.faces.items()):
        for eid in boundary:
            if eid not in q.edges:
                rep.add("sides", f"face {fid} uses unknown edge {eid}", fid)
            count[eid] += 1
    for eid, e in sorted(q.edges.items()):
        want = 1 if e.boundary else 2
        if count[eid] != want:
            rep.add("sides", f"edge {eid} borders {count[eid]} face side(s), expected {want}", eid)
    for vid, numeral in sorted(q.vertices.items()):
        sig = VERTEX_SIGNATURES.get(numeral)
        if sig is None:
            continue
        seen = Counter()
        for e in q.edges.values():
            seen[e.letter] += sum(1 for v in e.ends if v == vid)
        seen = +seen
        if seen != sig:
            rep.add("vertex", f"vertex {vid} of type {numeral} meets edges {dict(seen)}, expected {dict(sig)}", vid)
    for a, b in q.gluings:
        if a not in q.edges or b not in q.edges:
            rep.add("gluing", f"gluing ({a}, {b}) names an unknown edge", (a, b))
        elif q.edges[a].letter != q.edges[b].letter:
            rep.add("gluing", f"gluing ({a}, {b}) joins letters {q.edges[a].letter} and {q.edges[b].letter}", (a, b))
    return rep


@dataclass(frozen=True)
class Isotropy:
    circles: tuple = ()
    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(rg.as_vector(c) for c in self.circles))
        object.__setattr__(self, "twists", tuple(rg.as_vector(c) for c in self.twists))


@dataclass(frozen=True)
class ReductionData:
    lattice: Lattice
    vectors: dict = field(default_factory=dict)  # hyperbolic edge -> v
    couples: dict = field(default_factory=dict)  # elbolic edge -> (v, w)
    isotropy: dict = field(default_factory=dict)  # stratum -> Isotropy
    lifted: Optional[MonodromySpec] = None
    reduced: dict = field(default_factory=dict)  # generator -> vector

    def __post_init__(self):
        object.__setattr__(self, "vectors", {k: rg.as_vector(v) for k, v in self.vectors.items()})
        object.__setattr__(self, "couples", {k: (rg.as_vector(v), rg.as_vector(w)) for k, (v, w) in self.couples.items()})
        object.__setattr__(self, "reduced", {k: rg.as_vector(v) for k, v in self.reduced.items()})


def validate_reduction_data(q: TypedQuotient, d: ReductionData) -> ValidationReport:
    """Condition ids: "lattice", "transverse", "primitive", "isotropy", "monodromy-lift".

    Isotropy is checked only for strata that declare it.
    """
    if not validate_typed_quotient(q).valid:
        raise PreconditionError("typed quotient is invalid")
    rep = ValidationReport()
    n, lat = q.n, d.lattice
    if lat.ambient_dim != n or lat.rank != n - 2:
        rep.add("lattice", f"isotropy lattice must have rank {n - 2} in dimension {n}", lat.rank)
        return rep
    for eid, e in sorted(q.edges.items()):
        if e.letter in ("h", "h_t"):
            v = d.vectors.get(eid)
            if v is None:
                rep.add("transverse", f"hyperbolic edge {eid} has no associated vector", eid)
            elif lat.in_span(v):
                rep.add("transverse", f"vector of edge {eid} lies in the span of the lattice", eid)
        else:
            c = d.couples.get(eid)
            if c is None:
                rep.add("transverse", f"elbolic edge {eid} has no vector couple", eid)
                continue
            v, w = c
            if lat.in_span(v):
                rep.add("transverse", f"first vector of the couple on {eid} lies in the span of the lattice", eid)
            if not lat.is_primitive(w):
                rep.add("primitive", f"second vector of the couple on {eid} is not primitive in the lattice", eid)
    for sid in sorted(set(d.vectors) | set(d.couples)):
        if sid not in q.edges:
            rep.add("transverse", f"data given for unknown edge {sid}", sid)
    for sid, iso in sorted(d.isotropy.items()):
        ty = q.stratum_type(sid)
        if ty is None:
            e_want, k_want = 0, 0
            if sid not in q.faces:
                rep.add("isotropy", f"isotropy given for unknown stratum {sid}", sid)
                continue
        else:
            e_want, k_want = ty.e, ty.k
        if len(iso.circles) != e_want:
            rep.add("isotropy", f"stratum {sid} needs {e_want} circle factor(s), got {len(iso.circles)}", sid)
        elif iso.circles and (not rg.independent(list(iso.circles)) or not all(lat.is_primitive(c) for c in iso.circles)):
            rep.add("isotropy", f"circle factors of {sid} must be independent primitive lattice vectors", sid)
        elif sid in d.couples and iso.circles:
            w = d.couples[sid][1]
            if iso.circles[0] not in (w, rg.neg(w)):
                rep.add("isotropy", f"circle factor of {sid} differs from its couple", sid)
        k = twisting_group(list(iso.twists), lat)
        if k != k_want:
            rep.add("isotropy", f"stratum {sid} has twisting rank {k}, its type requires {k_want}", sid)
    if d.lifted is not None:
        if d.lifted.lattice != lat:
            rep.add("monodromy-lift", "lifted monodromy uses a different lattice")
        else:
            for g in d.lifted.graph.generators:
                red = d.reduced.get(g)
                lift = d.lifted.values[g].representative
                if red is None:
                    rep.add("monodromy-lift", f"no reduced value for generator {g}", g)
                elif not lat.in_span(rg.sub(lift, red)):
                    rep.add("monodromy-lift", f"generator {g} lifts to {rg.fmt(lift)}, which does not project to {rg.fmt(red)}", g)
    return rep
