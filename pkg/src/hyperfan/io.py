"""JSON documents: parsing, validation of shape, canonical serialization.

Every document starts with ``"format": "hyperfan/1"`` and a ``"kind"``.
Rationals are written as strings "p/q" or "p"; JSON integers are accepted
on input, JSON floats and decimal strings are rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import HyperfanError, ParseError
from .fan import Fan
from .glue import IsoCandidate, TEdge, TFace, Tiling2D
from .lattice import Lattice
from .monodromy import MonodromySpec, SkeletonGraph
from .toricdeg import Isotropy, Mark, MarkedGraph, QEdge, ReductionData, TypedQuotient

FORMAT = "hyperfan/1"
KINDS = ("fan", "tiling2d", "monodromy-spec", "marked-graph", "typed-quotient", "reduction-data", "iso-candidate")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass
class Document:
    kind: str
    body: Any
    extras: dict = field(default_factory=dict)


# scalars


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x.strip()):
        num, _, den = x.strip().partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {x!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"expected a rational as an integer or 'p/q' string, got {x!r}")


def parse_vector(x, n=None) -> tuple:
    if not isinstance(x, list):
        raise ParseError(f"expected a vector, got {x!r}")
    v = tuple(parse_rational(c) for c in x)
    if n is not None and len(v) != n:
        raise ParseError(f"vector {x!r} should have {n} entries")
    return v


def _req(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return val


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}")
    return x


def _str_list(x) -> list:
    if not isinstance(x, list) or not all(isinstance(s, str) for s in x):
        raise ParseError(f"expected a list of identifiers, got {x!r}")
    return list(x)


def r2s(x: Fraction) -> str:
    return str(x)


def v2j(v) -> list:
    return [r2s(c) for c in v]


# per-kind readers and writers


def _read_fan(d):
    n = _int(_req(d, "dim"))
    rays = [parse_vector(r, n) for r in _req(d, "rays", list)]
    cones = [[_int(i) for i in c] for c in _req(d, "cones", list)]
    return Fan(n, tuple(rays), tuple(tuple(c) for c in cones))


def _write_fan(f: Fan) -> dict:
    return {"dim": f.ambient_dim, "rays": [v2j(r) for r in f.rays], "cones": [list(c) for c in f.maximal_cones]}


def _read_lattice(x, n) -> Lattice:
    return Lattice(n, tuple(parse_vector(b, n) for b in (x or [])))


def _read_mono(d) -> MonodromySpec:
    n = _int(_req(d, "dim"))
    lat = _read_lattice(d.get("lattice", []), n)
    edges = {}
    for eid, ends in _req(d, "edges", dict).items():
        if not isinstance(ends, list) or len(ends) != 2:
            raise ParseError(f"skeleton edge {eid} needs [tail, head]")
        edges[eid] = tuple(ends)
    tree = d.get("tree")
    graph = SkeletonGraph(tuple(_str_list(_req(d, "vertices"))), edges, None if tree is None else frozenset(_str_list(tree)))
    values = {g: parse_vector(v, n) for g, v in d.get("values", {}).items()}
    return MonodromySpec(graph, lat, values)


def _write_mono(s: MonodromySpec) -> dict:
    return {
        "dim": s.lattice.ambient_dim,
        "lattice": [v2j(b) for b in s.lattice.basis],
        "vertices": list(s.graph.vertices),
        "edges": {e: list(s.graph.edges[e]) for e in sorted(s.graph.edges)},
        "tree": sorted(s.graph.tree),
        "values": {g: v2j(s.values[g].representative) for g in sorted(s.values)},
    }


def _read_tiling(d) -> Tiling2D:
    curves = {c: (None if v is None else parse_vector(v, 2)) for c, v in _req(d, "curves", dict).items()}
    edges = {}
    for eid, e in _req(d, "edges", dict).items():
        edges[eid] = TEdge(_req(e, "curve", str), tuple(_str_list(_req(e, "ends"))))
    faces = {}
    for fid, f in _req(d, "faces", dict).items():
        faces[fid] = TFace(tuple(_str_list(_req(f, "corners"))), tuple(_str_list(_req(f, "edges"))))
    closed = d.get("closed", True)
    if not isinstance(closed, bool):
        raise ParseError("field 'closed' must be a boolean")
    mono = _read_mono(d["monodromy"]) if "monodromy" in d else None
    return Tiling2D(curves, edges, faces, closed, mono)


def _write_tiling(t: Tiling2D) -> dict:
    out = {
        "closed": t.closed,
        "curves": {c: (None if t.curves[c] is None else v2j(t.curves[c])) for c in sorted(t.curves)},
        "edges": {e: {"curve": t.edges[e].curve, "ends": list(t.edges[e].ends)} for e in sorted(t.edges)},
        "faces": {f: {"corners": list(t.faces[f].corners), "edges": list(t.faces[f].edges)} for f in sorted(t.faces)},
    }
    if t.monodromy is not None:
        out["monodromy"] = _write_mono(t.monodromy)
    return out


def _read_mono_doc(d):
    spec = _read_mono(d)
    n = spec.lattice.ambient_dim
    extras = {}
    if "points" in d:
        pts = _req(d, "points", dict)
        extras["points"] = {
            "M1": [{"id": _req(p, "id", str), "loop": _str_list(_req(p, "loop"))} for p in pts.get("M1", [])],
            "M2": [
                {"id": _req(p, "id", str), "loop": _str_list(_req(p, "loop")), "w": parse_vector(_req(p, "w"), n)}
                for p in pts.get("M2", [])
            ],
        }
    if "twists" in d:
        extras["twists"] = [parse_vector(w, n) for w in _req(d, "twists", list)]
    return spec, extras


def _write_mono_doc(spec, extras) -> dict:
    out = _write_mono(spec)
    if "points" in extras:
        pts = extras["points"]
        out["points"] = {
            "M1": [{"id": p["id"], "loop": list(p["loop"])} for p in pts.get("M1", [])],
            "M2": [{"id": p["id"], "loop": list(p["loop"]), "w": v2j(p["w"])} for p in pts.get("M2", [])],
        }
    if "twists" in extras:
        out["twists"] = [v2j(w) for w in extras["twists"]]
    return out


def _read_graph(d) -> MarkedGraph:
    n = _int(_req(d, "dim"))
    marks = []
    for m in _req(d, "marks", list):
        couple = m.get("couple") if isinstance(m, dict) else None
        marks.append(Mark(parse_vector(_req(m, "vector"), n), None if couple is None else parse_vector(couple, n)))
    mono = d.get("monodromy")
    return MarkedGraph(_req(d, "shape", str), tuple(marks), _read_lattice(d.get("lattice", []), n), None if mono is None else parse_vector(mono, n))


def _write_graph(g: MarkedGraph) -> dict:
    marks = []
    for m in g.marks:
        item = {"vector": v2j(m.vector)}
        if m.couple is not None:
            item["couple"] = v2j(m.couple)
        marks.append(item)
    out = {"dim": g.n, "shape": g.shape, "lattice": [v2j(b) for b in g.lattice.basis], "marks": marks}
    if g.monodromy is not None:
        out["monodromy"] = v2j(g.monodromy)
    return out


def _read_quotient(d) -> TypedQuotient:
    n = _int(_req(d, "dim"))
    verts = {k: v for k, v in _req(d, "vertices", dict).items()}
    if not all(isinstance(v, str) for v in verts.values()):
        raise ParseError("vertex types must be strings")
    edges = {}
    for eid, e in _req(d, "edges", dict).items():
        boundary = _req(e, "boundary", bool)
        edges[eid] = QEdge(_req(e, "letter", str), boundary, tuple(_str_list(e.get("ends", []))))
    faces = {f: tuple(_str_list(b)) for f, b in _req(d, "faces", dict).items()}
    gluings = []
    for p in d.get("gluings", []):
        p = _str_list(p)
        if len(p) != 2:
            raise ParseError("a gluing pairs exactly two edges")
        gluings.append(tuple(p))
    return TypedQuotient(n, verts, edges, faces, tuple(gluings))


def _write_quotient(q: TypedQuotient) -> dict:
    return {
        "dim": q.n,
        "vertices": {v: q.vertices[v] for v in sorted(q.vertices)},
        "edges": {
            e: {"letter": q.edges[e].letter, "boundary": q.edges[e].boundary, "ends": list(q.edges[e].ends)}
            for e in sorted(q.edges)
        },
        "faces": {f: list(q.faces[f]) for f in sorted(q.faces)},
        "gluings": [list(p) for p in q.gluings],
    }


def _read_reduction(d):
    q = _read_quotient(_req(d, "quotient", dict))
    n = q.n
    lat = _read_lattice(d.get("lattice", []), n)
    vectors = {e: parse_vector(v, n) for e, v in d.get("vectors", {}).items()}
    couples = {e: (parse_vector(_req(c, "vector"), n), parse_vector(_req(c, "couple"), n)) for e, c in d.get("couples", {}).items()}
    iso = {
        s: Isotropy(tuple(parse_vector(c, n) for c in i.get("circles", [])), tuple(parse_vector(c, n) for c in i.get("twists", [])))
        for s, i in d.get("isotropy", {}).items()
    }
    lifted, reduced = None, {}
    if "monodromy" in d:
        m = _req(d, "monodromy", dict)
        lifted = _read_mono(_req(m, "lifted", dict))
        reduced = {g: parse_vector(v, n) for g, v in m.get("reduced", {}).items()}
    return q, ReductionData(lat, vectors, couples, iso, lifted, reduced)


def _write_reduction(body) -> dict:
    q, d = body
    out = {
        "quotient": _write_quotient(q),
        "lattice": [v2j(b) for b in d.lattice.basis],
        "vectors": {e: v2j(d.vectors[e]) for e in sorted(d.vectors)},
        "couples": {e: {"vector": v2j(d.couples[e][0]), "couple": v2j(d.couples[e][1])} for e in sorted(d.couples)},
        "isotropy": {
            s: {"circles": [v2j(c) for c in d.isotropy[s].circles], "twists": [v2j(c) for c in d.isotropy[s].twists]}
            for s in sorted(d.isotropy)
        },
    }
    if d.lifted is not None:
        out["monodromy"] = {"lifted": _write_mono(d.lifted), "reduced": {g: v2j(d.reduced[g]) for g in sorted(d.reduced)}}
    return out


def _read_iso(d) -> IsoCandidate:
    maps = []
    for key in ("faces", "edges", "curves"):
        m = _req(d, key, dict)
        if not all(isinstance(v, str) for v in m.values()):
            raise ParseError(f"{key} map must send identifiers to identifiers")
        maps.append(dict(m))
    linear = [parse_vector(r, 2) for r in _req(d, "linear", list)]
    if len(linear) != 2:
        raise ParseError("linear identification must be a 2x2 matrix")
    return IsoCandidate(*maps, tuple(linear))


def _write_iso(i: IsoCandidate) -> dict:
    return {
        "faces": {k: i.faces[k] for k in sorted(i.faces)},
        "edges": {k: i.edges[k] for k in sorted(i.edges)},
        "curves": {k: i.curves[k] for k in sorted(i.curves)},
        "linear": [v2j(r) for r in i.linear],
    }


def parse_document(text: str) -> Document:
    def no_float(s):
        raise ParseError(f"decimal number {s} is not allowed; write rationals as 'p/q' strings")

    try:
        raw = json.loads(text, parse_float=no_float)
    except json.JSONDecodeError as err:
        raise ParseError(f"not valid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    if raw.get("format") != FORMAT:
        raise ParseError(f"expected \"format\": \"{FORMAT}\"")
    kind = raw.get("kind")
    try:
        if kind == "fan":
            return Document(kind, _read_fan(raw))
        if kind == "tiling2d":
            return Document(kind, _read_tiling(raw))
        if kind == "monodromy-spec":
            spec, extras = _read_mono_doc(raw)
            return Document(kind, spec, extras)
        if kind == "marked-graph":
            return Document(kind, _read_graph(raw))
        if kind == "typed-quotient":
            return Document(kind, _read_quotient(raw))
        if kind == "reduction-data":
            return Document(kind, _read_reduction(raw))
        if kind == "iso-candidate":
            return Document(kind, _read_iso(raw))
    except ParseError:
        raise
    except (HyperfanError, TypeError, AttributeError, KeyError) as err:
        raise ParseError(f"malformed {kind} document: {err}") from err
    raise ParseError(f"unknown document kind {kind!r}")


def to_json(doc: Document) -> dict:
    writers = {
        "fan": _write_fan,
        "tiling2d": _write_tiling,
        "marked-graph": _write_graph,
        "typed-quotient": _write_quotient,
        "reduction-data": _write_reduction,
        "iso-candidate": _write_iso,
    }
    if doc.kind == "monodromy-spec":
        body = _write_mono_doc(doc.body, doc.extras)
    else:
        body = writers[doc.kind](doc.body)
    return {"format": FORMAT, "kind": doc.kind, **body}


def _is_scalar(x) -> bool:
    return x is None or isinstance(x, (str, int, bool))


def _dump(x, level: int) -> str:
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_dump(v, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if all(_is_scalar(y) for y in x):
            return "[" + ", ".join(json.dumps(y, ensure_ascii=False) for y in x) + "]"
        return "[\n" + ",\n".join(pad + _dump(y, level + 1) for y in x) + "\n" + end + "]"
    return json.dumps(x, ensure_ascii=False)


def serialize(doc: Document) -> str:
    return _dump(to_json(doc), 0) + "\n"


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def save(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
