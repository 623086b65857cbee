import json
import os
from pathlib import Path

import pytest

import plumbhf

FIXTURES = Path(os.environ.get("PLUMBHF_FIXTURES", Path(__file__).resolve().parents[2] / "tests" / "fixtures"))


def sector(report, label=None):
    for s in report["sectors"]:
        if (label is None and s["torsion"]) or (label is not None and s["label"] == label and not s["torsion"]):
            return s
    raise KeyError(label)


def test_version():
    assert plumbhf.version().count(".") == 2


def test_classify_y2():
    c = plumbhf.classify(FIXTURES / "y2.json")
    assert c["schema"] == 1
    assert c["supported"]
    assert c["graph"]["bad_vertices"] == ["a"]
    assert list(c["graph"]["kernel"].values()) == [10, 5, 4, 1, 2]


def test_unsupported_and_parse_errors():
    assert not plumbhf.classify(FIXTURES / "bad.json")["supported"]
    with pytest.raises(plumbhf.UnsupportedGraph):
        plumbhf.hf(FIXTURES / "bad.json")
    with pytest.raises(plumbhf.ParseError):
        plumbhf.hf("{")
    with pytest.raises(plumbhf.ParseError):
        plumbhf.hf(FIXTURES / "missing.json")
    assert issubclass(plumbhf.UnsupportedGraph, plumbhf.Error)


def test_y2_basic_vectors():
    found = set()
    for s in plumbhf.basic_vectors(FIXTURES / "y2.json")["sectors"]:
        for v in s["basic"]:
            found.add(tuple(v.values()))
    assert found == {(1, 0, -1, -8, 0), (1, 0, -1, -6, 0), (1, 0, -1, -4, 0)}


def test_y2_report():
    r = plumbhf.hf(FIXTURES / "y2.json", alexander=plumbhf.torus_knot_alexander(2))
    t = sector(r)
    assert [s["kind"] for s in t["summands"]] == ["tower", "even-tower"]
    assert t["d_half"] == "1/2"
    assert t["d_minus_half"] == "3/2"
    for label in (1, -1):
        (s,) = sector(r, label)["summands"]
        assert s["kind"] == "cyclic" and s["length"] == 1
    assert r["mismatches"] == []


def test_graph_as_dict_and_even_bottom():
    g = {"vertices": [{"id": "v", "weight": 0}], "edges": []}
    r = plumbhf.hf(g, even_bottoms={"0": "-1/2"})
    assert sector(r)["d_minus_half"] == "-1/2"
    d = plumbhf.d_invariants(g, dual=g)
    assert len(d["sectors"]) == 1
    assert d["sectors"][0]["d_half"] == "1/2"
    assert d["sectors"][0]["d_minus_half"] == "-1/2"


def test_figure2_d_invariant():
    d = plumbhf.d_invariants(FIXTURES / "fig2.json", dual=FIXTURES / "fig2_dual.json")
    assert d["sectors"][0]["d_minus_half"] == "23/2"


def test_deterministic():
    a = plumbhf.hf(FIXTURES / "y3.json", jobs=1)
    b = plumbhf.hf(FIXTURES / "y3.json", jobs=3)
    assert json.dumps(a) == json.dumps(b)


def test_cross_check():
    r = plumbhf.cross_check(FIXTURES / "y2.json")
    assert r["mismatches"] == []
    assert r["comparisons"] > 0
    g = plumbhf.random_tree(5)
    assert 1 <= len(g["vertices"]) <= 5
    assert plumbhf.cross_check(g)["mismatches"] == []
