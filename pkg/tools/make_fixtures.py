"""Regenerate the JSON fixtures under src/hyperfan/data.

    python tools/make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

from hyperfan import fan as fm
from hyperfan import ratgeom as rg
from hyperfan.glue import IsoCandidate, TEdge, TFace, Tiling2D, tiling_from_fan
from hyperfan.io import Document, save
from hyperfan.lattice import Lattice
from hyperfan.monodromy import MonodromySpec, SkeletonGraph
from hyperfan.toricdeg import Isotropy, Mark, MarkedGraph, QEdge, ReductionData, TypedQuotient

OUT = Path(__file__).resolve().parents[1] / "src" / "hyperfan" / "data"


def tiling(curves, edges, faces, closed=True, mono=None):
    return Tiling2D(
        curves,
        {e: TEdge(c, ends) for e, (c, ends) in edges.items()},
        {f: TFace(tuple(cs), tuple(es)) for f, (cs, es) in faces.items()},
        closed,
        mono,
    )


def sphere12():
    """Two crossing loops F1, F2 (meeting at p and q) with a small loop F3 around p and F4 around q."""
    edges = {
        "x1": ("F1", ("p", "a1")), "x2": ("F1", ("a1", "c1")), "x3": ("F1", ("c1", "q")),
        "x4": ("F1", ("q", "c2")), "x5": ("F1", ("c2", "a2")), "x6": ("F1", ("a2", "p")),
        "y1": ("F2", ("p", "b1")), "y2": ("F2", ("b1", "d1")), "y3": ("F2", ("d1", "q")),
        "y4": ("F2", ("q", "d2")), "y5": ("F2", ("d2", "b2")), "y6": ("F2", ("b2", "p")),
        "s1": ("F3", ("a1", "b1")), "s2": ("F3", ("b1", "a2")), "s3": ("F3", ("a2", "b2")), "s4": ("F3", ("b2", "a1")),
        "t1": ("F4", ("c1", "d1")), "t2": ("F4", ("d1", "c2")), "t3": ("F4", ("c2", "d2")), "t4": ("F4", ("d2", "c1")),
    }
    faces = {
        "I1": (["p", "a1", "b1"], ["x1", "s1", "y1"]),
        "I2": (["p", "b1", "a2"], ["y1", "s2", "x6"]),
        "I3": (["p", "a2", "b2"], ["x6", "s3", "y6"]),
        "I4": (["p", "b2", "a1"], ["y6", "s4", "x1"]),
        "M1": (["a1", "c1", "d1", "b1"], ["x2", "t1", "y2", "s1"]),
        "M2": (["b1", "d1", "c2", "a2"], ["y2", "t2", "x5", "s2"]),
        "M3": (["a2", "c2", "d2", "b2"], ["x5", "t3", "y5", "s3"]),
        "M4": (["b2", "d2", "c1", "a1"], ["y5", "t4", "x2", "s4"]),
        "O1": (["c1", "q", "d1"], ["x3", "y3", "t1"]),
        "O2": (["d1", "q", "c2"], ["y3", "x4", "t2"]),
        "O3": (["c2", "q", "d2"], ["x4", "y4", "t3"]),
        "O4": (["d2", "q", "c1"], ["y4", "x3", "t4"]),
    }
    return edges, faces


def impossible3():
    edges, faces = sphere12()
    keep = {"O1": faces["I1"], "O2": faces["M1"], "O3": faces["O1"]}
    used = {e for _, es in keep.values() for e in es}
    return tiling({c: None for c in ("F1", "F2", "F3", "F4")}, {e: edges[e] for e in sorted(used)}, keep, closed=False)


def impossible6():
    edges = {
        "u1": ("F1", ("p", "a1")), "u2": ("F1", ("a1", "s5")), "u3": ("F1", ("s5", "t6")),
        "u4": ("F1", ("t6", "c1")), "u5": ("F1", ("c1", "q")),
        "l1": ("F2", ("p", "b1")), "l2": ("F2", ("b1", "s6")), "l3": ("F2", ("s6", "t5")),
        "l4": ("F2", ("t5", "d1")), "l5": ("F2", ("d1", "q")),
        "k3": ("F3", ("a1", "b1")), "k4": ("F4", ("c1", "d1")),
        "f5a": ("F5", ("s5", "x")), "f5b": ("F5", ("x", "t5")),
        "f6a": ("F6", ("s6", "x")), "f6b": ("F6", ("x", "t6")),
    }
    faces = {
        "O1": (["p", "a1", "b1"], ["u1", "k3", "l1"]),
        "O2": (["a1", "s5", "x", "s6", "b1"], ["u2", "f5a", "f6a", "l2", "k3"]),
        "O3": (["s5", "t6", "x"], ["u3", "f6b", "f5a"]),
        "O4": (["s6", "x", "t5"], ["f6a", "f5b", "l3"]),
        "O5": (["t6", "c1", "d1", "t5", "x"], ["u4", "k4", "l4", "f5b", "f6b"]),
        "O6": (["c1", "q", "d1"], ["u5", "l5", "k4"]),
    }
    return tiling({f"F{i}": None for i in range(1, 7)}, edges, faces, closed=False)


def bigon():
    edges = {"a": ("A", ("p", "q")), "b": ("B", ("q", "p"))}
    faces = {"D": (["p", "q"], ["a", "b"])}
    return tiling({"A": (1, 0), "B": (0, 1)}, edges, faces, closed=False)


def trivial_monodromy(t: Tiling2D) -> MonodromySpec:
    g = t.skeleton()
    return MonodromySpec(g, Lattice(2, ()), {})


def rotate(t: Tiling2D, m) -> Tiling2D:
    return Tiling2D({c: rg.mat_vec(m, v) for c, v in t.curves.items()}, t.edges, t.faces, t.closed, t.monodromy)


def mono_docs():
    ring = SkeletonGraph(
        ("R0", "R1", "R2", "R3"),
        {"s0": ("R0", "R1"), "s1": ("R1", "R2"), "s2": ("R2", "R3"), "s3": ("R3", "R0")},
        frozenset({"s0", "s1", "s2"}),
    )
    lat = Lattice(2, ((0, 1),))
    pts = {"M1": [{"id": "q", "loop": ["s0", "s1", "s2", "s3"]}], "M2": []}
    ok = Document("monodromy-spec", MonodromySpec(ring, lat, {"s3": (0, 1)}), {"points": pts})
    bad = Document("monodromy-spec", MonodromySpec(ring, lat, {"s3": ("1/3", 0)}), {"points": pts})
    twisted = SkeletonGraph(("R0",), {"g": ("R0", "R0")}, frozenset())
    lat1 = Lattice(2, ((1, 0),))
    tw = Document(
        "monodromy-spec",
        MonodromySpec(twisted, lat1, {"g": ("1/2", 0)}),
        {"points": {"M1": [], "M2": [{"id": "z", "loop": ["g"], "w": rg.vec("1/2", 0)}]}, "twists": [rg.vec("1/2", 0)]},
    )
    return {"m1_pass.mono": ok, "m1_fail.mono": bad, "twist.mono": tw}


def graph_docs():
    l2 = Lattice(2, ((0, 1),))
    l3 = Lattice(3, ((0, 1, 0), (0, 0, 1)))
    g = {
        "circle_t2.graph": MarkedGraph("circle", (Mark((1, 0)), Mark((-1, 0))), l2, rg.vec(0, "1/3")),
        "interval_s2.graph": MarkedGraph("interval", (Mark((1, 0), (0, 1)), Mark((-1, 0), (0, -1))), l2),
        "interval_rp2.graph": MarkedGraph("interval", (Mark((1, 0)), Mark((-1, 0), (0, 1))), l2),
        "interval_klein.graph": MarkedGraph("interval", (Mark((1, 0)), Mark((-1, 1)), Mark((1, 1)), Mark((-2, 0))), l2),
        "circle_odd.graph": MarkedGraph("circle", (Mark((1, 0)), Mark((-1, 0)), Mark((1, 1))), l2),
        "interval_inspan.graph": MarkedGraph("interval", (Mark((0, 1)), Mark((-1, 0))), l2),
        "interval_s2xs1.graph": MarkedGraph("interval", (Mark((1, 0, 0), (0, 1, 0)), Mark((-1, 0, 0), (0, -1, 0))), l3),
        "interval_lens.graph": MarkedGraph("interval", (Mark((1, 0, 0), (0, 1, 0)), Mark((-1, 0, 0), (0, 1, 1))), l3),
    }
    return {k: Document("marked-graph", v) for k, v in g.items()}


def quotient_docs():
    disk = TypedQuotient(3, {}, {"b": QEdge("e", True)}, {"D": ("b",)})
    corner = lambda n: TypedQuotient(  # noqa: E731
        n, {"x1": "X", "x2": "X"},
        {"b1": QEdge("e", True, ("x1", "x2")), "b2": QEdge("e", True, ("x2", "x1"))},
        {"D": ("b1", "b2")},
    )
    split = TypedQuotient(
        3, {"v1": "VII", "v2": "VII"},
        {"b1": QEdge("e", True, ("v1", "v2")), "b2": QEdge("e", True, ("v2", "v1")), "c": QEdge("h", False, ("v1", "v2"))},
        {"A": ("b1", "c"), "B": ("c", "b2")},
    )
    return {
        "disk_e_n3.quot": Document("typed-quotient", disk),
        "corner_x_n3.quot": Document("typed-quotient", corner(3)),
        "corner_x_n4.quot": Document("typed-quotient", corner(4)),
        "disk_split_n3.quot": Document("typed-quotient", split),
    }


def reduction_docs():
    disk = TypedQuotient(3, {}, {"b": QEdge("e", True)}, {"D": ("b",)})
    lat = Lattice(3, ((0, 0, 1),))
    loop = SkeletonGraph(("D",), {"g": ("D", "D")}, frozenset())
    lifted = MonodromySpec(loop, lat, {"g": ("1/2", "1/3", "1/5")})

    def data(w, reduced):
        return ReductionData(
            lat, {}, {"b": ((1, 0, 0), w)}, {"b": Isotropy(((0, 0, 1),), ())}, lifted, {"g": reduced}
        )

    good = data((0, 0, 1), rg.vec("1/2", "1/3", 0))
    return {
        "reduce_ok.red": Document("reduction-data", (disk, good)),
        "reduce_nonprimitive.red": Document("reduction-data", (disk, data((0, 0, 2), rg.vec("1/2", "1/3", 0)))),
        "reduce_badlift.red": Document("reduction-data", (disk, data((0, 0, 1), rg.vec("1/2", 0, 0)))),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    tri = fm.triangle_fan()
    docs = {
        "triangle.fan": Document("fan", tri),
        "square.fan": Document("fan", fm.cross_fan(2)),
        "octant.fan": Document("fan", fm.cross_fan(3)),
        "line.fan": Document("fan", fm.cross_fan(1)),
        "hexagon.fan": Document("fan", fm.polygon_fan(6)),
        "triangle_incomplete.fan": Document("fan", fm.Fan(2, tri.rays, ((0, 1), (1, 2)))),
        "overlap.fan": Document("fan", fm.Fan(2, ((1, 0), (0, 1), (1, 1)), ((0, 1), (0, 2)))),
    }
    s8 = tiling_from_fan(tri)
    s8 = Tiling2D(s8.curves, s8.edges, s8.faces, True, trivial_monodromy(s8))
    rot = ((0, -1), (1, 0))
    s8r = rotate(s8, rot)
    changed = Tiling2D({**s8.curves, "c0": rg.vec(2, 0)}, s8.edges, s8.faces, True, s8.monodromy)
    e12, f12 = sphere12()
    docs.update({
        "sphere8.tiling": Document("tiling2d", s8),
        "sphere8_bare.tiling": Document("tiling2d", s8.without_vectors()),
        "sphere8_rot.tiling": Document("tiling2d", s8r),
        "sphere8_changed.tiling": Document("tiling2d", changed),
        "impossible3.tiling": Document("tiling2d", impossible3()),
        "impossible6.tiling": Document("tiling2d", impossible6()),
        "sphere12.tiling": Document("tiling2d", tiling({c: None for c in ("F1", "F2", "F3", "F4")}, e12, f12)),
        "bigon.tiling": Document("tiling2d", bigon()),
    })
    ident = {k: k for k in s8.faces}, {k: k for k in s8.edges}, {k: k for k in s8.curves}
    docs["sphere8_identity.iso"] = Document("iso-candidate", IsoCandidate(*ident, ((1, 0), (0, 1))))
    docs["sphere8_rot90.iso"] = Document("iso-candidate", IsoCandidate(*ident, rot))
    docs.update(mono_docs())
    docs.update(graph_docs())
    docs.update(quotient_docs())
    docs.update(reduction_docs())
    for name, doc in sorted(docs.items()):
        save(doc, OUT / name)
        print("wrote", name)


if __name__ == "__main__":
    main()
