import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfan import cli, fixtures, io
from hyperfan import fan as fm
from hyperfan.errors import ParseError


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return str(fixtures.path(name))


@pytest.mark.parametrize("name", fixtures.names())
def test_round_trip(name):
    text = fixtures.path(name).read_text()
    doc = io.parse_document(text)
    again = io.serialize(doc)
    assert again == text
    assert io.serialize(io.parse_document(again)) == again


def test_rationals():
    assert io.parse_rational("3/4") == io.parse_rational(" 6/8 ")
    assert io.parse_rational(-2) == -2
    for bad in ("0.5", "1e3", True, 1.5, "1/0", "x"):
        with pytest.raises(ParseError):
            io.parse_rational(bad)


def test_floats_rejected_in_documents():
    doc = {"format": io.FORMAT, "kind": "fan", "dim": 2, "rays": [[1.0, 0], [0, 1], [-1, -1]], "cones": [[0, 1]]}
    with pytest.raises(ParseError):
        io.parse_document(json.dumps(doc))


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "fan"},
        {"format": "other/1", "kind": "fan"},
        {"format": io.FORMAT, "kind": "nope"},
        {"format": io.FORMAT, "kind": "fan", "dim": 2, "rays": [[1, 0]]},
    ],
)
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        io.parse_document(json.dumps(doc))


def test_not_json():
    with pytest.raises(ParseError):
        io.parse_document("{")


@given(st.integers(3, 8), st.integers(0, 10**6))
def test_random_fan_round_trip(m, seed):
    f = fm.random_fan_2d(random.Random(seed), m)
    text = io.serialize(io.Document("fan", f))
    back = io.parse_document(text)
    assert back.body == f
    assert io.serialize(back) == text


# command line


def test_fan_commands(capsys):
    assert run(capsys, "fan", "validate", fx("triangle.fan"))[:2] == (0, "valid\n")
    code, out, _ = run(capsys, "fan", "validate", fx("triangle_incomplete.fan"))
    assert code == 1 and out.startswith("invalid") and "[complete]" in out
    assert run(capsys, "fan", "locate", fx("triangle.fan"), "-1,-2")[:2] == (0, "{0, 2}\n")
    assert run(capsys, "fan", "locate", fx("triangle.fan"), "0,0")[:2] == (0, "{}\n")
    assert run(capsys, "fan", "locate", fx("triangle.fan"), "1/2,0")[:2] == (0, "{0}\n")
    code, out, _ = run(capsys, "fan", "dual", fx("octant.fan"))
    assert code == 0 and "f-vector: 1 6 12 8" in out


def test_domain_and_glue(capsys):
    code, out, _ = run(capsys, "domain", "build", fx("octant.fan"))
    assert code == 0 and "cells by dimension: 8 12 6 1" in out and "euler characteristic: 1" in out
    code, out, _ = run(capsys, "glue", "reflect", fx("triangle.fan"))
    assert code == 0 and "cells by dimension: 6 12 8" in out and "euler characteristic: 2" in out
    code, out, _ = run(capsys, "glue", "euler", fx("hexagon.fan"))
    assert out == "closed form: -32\ncell count: -32\n"


def test_tiling_commands(capsys):
    assert run(capsys, "tiling", "validate", fx("sphere8.tiling"))[:2] == (0, "valid\n")
    code, out, _ = run(capsys, "tiling", "realize", fx("impossible3.tiling"))
    assert code == 1 and out.startswith("infeasible\n")
    code, out, _ = run(capsys, "tiling", "realize", fx("sphere8_bare.tiling"))
    assert code == 0 and out.startswith("feasible\n")
    args = fx("sphere8.tiling"), fx("sphere8_rot.tiling"), fx("sphere8_rot90.iso")
    assert run(capsys, "tiling", "iso", *args)[:2] == (0, "isomorphic\n")
    args = fx("sphere8.tiling"), fx("sphere8_changed.tiling"), fx("sphere8_identity.iso")
    assert run(capsys, "tiling", "iso", *args)[:2] == (1, "not isomorphic\n")


def test_invariant_commands(capsys):
    assert run(capsys, "hert", "degree", 1, 0, 1, 1, 3)[:2] == (0, "1\n")
    code, out, _ = run(capsys, "hert", "degree", 2, 1, 0, 0, 3)
    assert code == 1 and out.startswith("invalid HERT")
    assert run(capsys, "mono", "check", fx("m1_pass.mono"))[0] == 0
    assert run(capsys, "mono", "check", fx("m1_fail.mono"))[0] == 1
    assert run(capsys, "graph", "classify", fx("interval_klein.graph"))[:2] == (0, "case d: Klein bottle\n")
    code, out, _ = run(capsys, "graph", "classify", fx("circle_odd.graph"))
    assert code == 1 and "[Ci]" in out
    assert run(capsys, "quotient", "validate", fx("corner_x_n4.quot"))[0] == 0
    assert run(capsys, "quotient", "validate", fx("corner_x_n3.quot"))[0] == 1
    assert run(capsys, "reduce", "validate", fx("reduce_ok.red"))[0] == 0
    assert run(capsys, "reduce", "validate", fx("reduce_badlift.red"))[0] == 1


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "fan", "validate", tmp_path / "missing.fan")[0] == 2
    assert run(capsys, "fan", "validate", fx("sphere8.tiling"))[0] == 2
    assert run(capsys, "fan", "locate", fx("triangle.fan"), "1,2,3")[0] == 2
    assert run(capsys, "fan", "locate", fx("triangle.fan"), "0.5,1")[0] == 2
    bad = tmp_path / "bad.fan"
    bad.write_text('{"format": "hyperfan/1", "kind": "fan", "dim": 2, "rays": [[0.5, 1]], "cones": []}')
    code, _, err = run(capsys, "fan", "validate", bad)
    assert code == 2 and err.startswith("error:")


def test_plot(capsys, tmp_path):
    out = tmp_path / "t.svg"
    assert run(capsys, "plot", fx("triangle.fan"), "-o", out)[0] == 0
    assert out.read_text().startswith("<?xml")
    assert run(capsys, "plot", fx("octant.fan"), "-o", tmp_path / "o.svg")[0] == 2
    assert run(capsys, "plot", fx("m1_pass.mono"), "-o", tmp_path / "m.svg")[0] == 2
