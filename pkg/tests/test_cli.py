import io
import json
from pathlib import Path

import pytest

from titsfaces.cli import run

SYSTEMS = Path(__file__).resolve().parent.parent / "scripts" / "systems"


def call(*argv, stdin=None):
    out = io.StringIO()
    code = run(list(argv), stdout=out, stdin=io.StringIO(stdin) if stdin is not None else None)
    return code, out.getvalue()


def call_json(*argv, stdin=None):
    code, text = call(*argv, stdin=stdin)
    return code, json.loads(text)


def system(name):
    return str(SYSTEMS / f"{name}.json")


def test_classify_a2_from_stdin():
    doc = json.dumps({"n": 2, "cartan": [["2", "-1"], ["-1", "2"]]})
    code, out = call_json("classify", "-", stdin=doc)
    assert code == 0
    assert out == {"command": "classify", "result": {"components": [{"indices": [1, 2], "type": "Fin"}]}}


def test_classify_hexagon():
    code, out = call_json("classify", system("hexagon_a"))
    assert code == 0
    assert [c["type"] for c in out["result"]["components"]] == ["Ind"]


def test_facial_special_case_d():
    code, out = call_json("facial", "special", system("hexagon_d"))
    assert code == 0
    assert out["result"]["count"] == 5
    assert out["result"]["sets"] == [[], [1, 2, 4, 5], [1, 3, 4, 6], [2, 3, 5, 6], [1, 2, 3, 4, 5, 6]]


def test_facial_arrangement_case_d():
    code, out = call_json("facial", "arrangement", system("hexagon_d"))
    assert code == 0
    assert out["result"]["count"] == 12 == len(out["result"]["sign_vectors"])
    assert "+++---" in out["result"]["sign_vectors"]


@pytest.mark.parametrize("name, special, total", [("hexagon_a", 29, 64), ("hexagon_b", 17, 50), ("hexagon_c", 13, 40)])
def test_facial_counts(name, special, total):
    assert call_json("facial", "special", system(name))[1]["result"]["count"] == special
    assert call_json("facial", "list", system(name))[1]["result"]["count"] == total


def test_tits_normalize_chamber_point():
    code, out = call_json("tits", "normalize", system("hexagon_b"), "1,1,1,1,1,1,1")
    assert code == 0
    assert out["result"]["sigma"] == []


def test_nonspecial_face_is_an_input_error():
    code, out = call_json("tits", "face", system("hexagon_b"), "{1,2,3}")
    assert code == 2
    assert out["field"] == "face"


def test_search_bound_exit_code():
    code, out = call_json("--cap", "0", "tits", "normalize", system("hexagon_a"), "--", "-1,2,1,1,1,1,1,1")
    assert code == 3
    assert out["bound"] == 0


@pytest.mark.parametrize(
    "doc, field",
    [
        ("not json", "system"),
        (json.dumps({"n": 2, "cartan": [["2", "-1"]]}), "n"),
        (json.dumps({"n": 2, "cartan": [["2", "x"], ["-1", "2"]]}), "cartan[0][1]"),
    ],
)
def test_malformed_systems(doc, field):
    code, out = call_json("classify", "-", stdin=doc)
    assert code == 2
    assert out["field"].startswith(field)


def test_subcone_cross_section_and_dot():
    code, out = call_json("subcone", "cross-section", system("a2_hexagonal"))
    assert code == 0
    code, dot = call("--dot", "subcone", "cross-section", system("a2_hexagonal"))
    assert code == 0
    assert dot.startswith("digraph") and dot.count("->") >= 4


def test_subcone_typemap():
    code, out = call_json("subcone", "typemap", system("a2_hexagonal"), "F5")
    assert code == 0
    labels = [t["face"] for t in out["result"]["types"]]
    assert labels == ["F0", "F5", "F10", "F12", "F13"]
    edge = out["result"]["types"][1]
    assert edge["lower"] == edge["upper"] == []


def test_output_is_deterministic():
    argv = ("imaginary", "k", system("hexagon_d"))
    assert call(*argv) == call(*argv)


def test_selftest_passes():
    code, out = call_json("selftest")
    assert code == 0 and out["passed"] is True
