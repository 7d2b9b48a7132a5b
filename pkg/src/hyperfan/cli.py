"""Command-line front end.

Exit codes: 0 success, 1 validation failure (report printed), 2 bad input.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

from . import io
from .domain import domain_from_fan, euler_domain
from .errors import HyperfanError, ParseError
from .fan import dual_complex, f_vector, locate
from .glue import euler_closed, realizable_2d, reflection_glue, validate_tiling2d, verify_isomorphism
from .monodromy import check_M1_M2, check_twisting_in_image
from .ratgeom import fmt
from .report import ValidationReport
from .svg import emit_svg
from .toricdeg import (
    HERT,
    classify_marked_graph,
    toric_degree,
    validate_hert,
    validate_marked_graph,
    validate_reduction_data,
    validate_typed_quotient,
)


class InputError(Exception):
    pass


# "-1,-2" would otherwise be taken for an option
_NUMERIC_LIST = re.compile(r"^-[0-9/+-]*,[0-9/,+-]*$")


def _load(path: str, kind: str) -> io.Document:
    try:
        doc = io.load(path)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    if doc.kind != kind:
        raise InputError(f"{path} holds a {doc.kind} document, expected {kind}")
    return doc


def _cone(c) -> str:
    return "{" + ", ".join(str(i) for i in sorted(c)) + "}"


def _report(rep: ValidationReport) -> int:
    print("\n".join(rep.lines()))
    return 0 if rep.valid else 1


def _valid_fan(path: str):
    f = _load(path, "fan").body
    if not f.valid:
        _report(f.report)
        return None
    return f


def cmd_fan_validate(a) -> int:
    return _report(_load(a.file, "fan").body.report)


def cmd_fan_locate(a) -> int:
    try:
        w = tuple(io.parse_rational(x) for x in a.vector.strip().split(","))
    except ParseError as err:
        raise InputError(str(err)) from err
    f = _valid_fan(a.file)
    if f is None:
        return 1
    if len(w) != f.ambient_dim:
        raise InputError(f"vector needs {f.ambient_dim} entries")
    print(_cone(locate(f, w)))
    return 0


def cmd_fan_dual(a) -> int:
    f = _valid_fan(a.file)
    if f is None:
        return 1
    faces = dual_complex(f)
    print("f-vector: " + " ".join(map(str, f_vector(f))))
    for k in range(1, f.ambient_dim + 1):
        print(f"{k - 1}-simplices: " + " ".join(_cone(c) for c in sorted((c for c in faces if len(c) == k), key=sorted)))
    return 0


def cmd_domain_build(a) -> int:
    f = _valid_fan(a.file)
    if f is None:
        return 1
    d = domain_from_fan(f)
    print("cells by dimension: " + " ".join(map(str, d.cells_by_dim())))
    print(f"euler characteristic: {euler_domain(d)}")
    print("polytopal: " + ("true" if d.polytopal else "unknown"))
    for cell in sorted(d.cones, key=lambda c: (-len(c), sorted(c))):
        facets = d.facets_of(cell)
        line = f"cell {_cone(cell)} dim {d.dim(cell)}"
        if facets:
            line += " boundary " + " ".join(_cone(x) for x in facets)
        print(line)
    return 0


def cmd_glue_reflect(a) -> int:
    f = _valid_fan(a.file)
    if f is None:
        return 1
    c = reflection_glue(f)
    print("cells by dimension: " + " ".join(map(str, c.cell_counts())))
    print("connected: " + ("yes" if c.connected() else "no"))
    print(f"euler characteristic: {euler_closed(c)}")
    return 0


def cmd_glue_euler(a) -> int:
    f = _valid_fan(a.file)
    if f is None:
        return 1
    c = reflection_glue(f)
    print(f"closed form: {euler_closed(c)}")
    print(f"cell count: {c.euler_from_cells()}")
    return 0


def cmd_tiling_validate(a) -> int:
    return _report(validate_tiling2d(_load(a.file, "tiling2d").body))


def cmd_tiling_realize(a) -> int:
    r = realizable_2d(_load(a.file, "tiling2d").body)
    if not r.feasible:
        print("infeasible")
        print(f"search nodes explored: {r.explored}")
        return 1
    print("feasible")
    for c in sorted(r.witness):
        print(f"  {c} = {fmt(r.witness[c])}")
    return 0


def cmd_tiling_iso(a) -> int:
    ta = _load(a.file_a, "tiling2d").body
    tb = _load(a.file_b, "tiling2d").body
    iso = _load(a.iso_file, "iso-candidate").body
    ok = verify_isomorphism(ta, tb, iso)
    print("isomorphic" if ok else "not isomorphic")
    return 0 if ok else 1


def cmd_mono_check(a) -> int:
    doc = _load(a.file, "monodromy-spec")
    rep = check_M1_M2(doc.body, doc.extras.get("points", {}))
    twists = doc.extras.get("twists", [])
    if twists and not check_twisting_in_image(doc.body, twists):
        rep.add("twist", "some twisting class is outside the subgroup generated by the monodromy")
    return _report(rep)


def cmd_hert_degree(a) -> int:
    h, e, r, t, n = a.h, a.e, a.r, a.t, a.n
    if min(h, e, r, t, n) < 0:
        raise InputError("HERT components must be nonnegative")
    if not validate_hert(h, e, r, t, n):
        print(f"invalid HERT: h+2e+r+t = {h + 2 * e + r + t}, expected {n}")
        return 1
    print(toric_degree(HERT(h, e, r, t), n))
    return 0


def cmd_graph_classify(a) -> int:
    g = _load(a.file, "marked-graph").body
    rep = validate_marked_graph(g, g.n)
    if not rep.valid:
        return _report(rep)
    print(classify_marked_graph(g, g.n))
    return 0


def cmd_quotient_validate(a) -> int:
    return _report(validate_typed_quotient(_load(a.file, "typed-quotient").body))


def cmd_reduce_validate(a) -> int:
    q, d = _load(a.file, "reduction-data").body
    qrep = validate_typed_quotient(q)
    if not qrep.valid:
        return _report(qrep)
    return _report(validate_reduction_data(q, d))


def cmd_plot(a) -> int:
    try:
        doc = io.load(a.file)
    except OSError as err:
        raise InputError(f"cannot read {a.file}: {err.strerror}") from err
    emit_svg(doc, a.output)
    print(f"wrote {a.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperfan", description="Exact tools for complete fans, domains, gluings and toric degree data.")
    sub = p.add_subparsers(dest="group", metavar="command")
    sub.required = True

    def group(name, help_text):
        g = sub.add_parser(name, help=help_text)
        s = g.add_subparsers(dest="action", metavar="action")
        s.required = True
        return s

    fan = group("fan", "complete fans")
    x = fan.add_parser("validate", help="check the fan conditions")
    x.add_argument("file")
    x.set_defaults(func=cmd_fan_validate)
    x = fan.add_parser("locate", help="cone whose relative interior holds a vector")
    x.add_argument("file")
    x.add_argument("vector", help="comma separated rationals, e.g. 1,-2/3")
    x.set_defaults(func=cmd_fan_locate)
    x = fan.add_parser("dual", help="dual simplicial complex")
    x.add_argument("file")
    x.set_defaults(func=cmd_fan_dual)

    dom = group("domain", "domains dual to fans")
    x = dom.add_parser("build", help="face poset of the domain")
    x.add_argument("file")
    x.set_defaults(func=cmd_domain_build)

    glue = group("glue", "reflection gluing")
    for name, fn in (("reflect", cmd_glue_reflect), ("euler", cmd_glue_euler)):
        x = glue.add_parser(name)
        x.add_argument("file")
        x.set_defaults(func=fn)

    til = group("tiling", "2D tilings")
    for name, fn in (("validate", cmd_tiling_validate), ("realize", cmd_tiling_realize)):
        x = til.add_parser(name)
        x.add_argument("file")
        x.set_defaults(func=fn)
    x = til.add_parser("iso", help="check an isomorphism candidate")
    x.add_argument("file_a")
    x.add_argument("file_b")
    x.add_argument("iso_file")
    x.set_defaults(func=cmd_tiling_iso)

    mono = group("mono", "monodromy")
    x = mono.add_parser("check")
    x.add_argument("file")
    x.set_defaults(func=cmd_mono_check)

    hert = group("hert", "HERT invariants")
    x = hert.add_parser("degree", help="toric degree e+t")
    for name in ("h", "e", "r", "t", "n"):
        x.add_argument(name, type=int)
    x.set_defaults(func=cmd_hert_degree)

    graph = group("graph", "marked graphs")
    x = graph.add_parser("classify")
    x.add_argument("file")
    x.set_defaults(func=cmd_graph_classify)

    quot = group("quotient", "typed quotients")
    x = quot.add_parser("validate")
    x.add_argument("file")
    x.set_defaults(func=cmd_quotient_validate)

    red = group("reduce", "reduction data")
    x = red.add_parser("validate")
    x.add_argument("file")
    x.set_defaults(func=cmd_reduce_validate)

    x = sub.add_parser("plot", help="draw a plane fan or tiling as SVG")
    x.add_argument("file")
    x.add_argument("-o", "--output", required=True)
    x.set_defaults(func=cmd_plot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = [" " + tok if _NUMERIC_LIST.match(tok) else tok for tok in argv]
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return args.func(args)
    except (InputError, HyperfanError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


run = main


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
