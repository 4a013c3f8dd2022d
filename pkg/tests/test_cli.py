import json

import pytest

from ntrunc.cli import main
from ntrunc.document import parse_document
from ntrunc.complexes import betti
from ntrunc.verify import sub_seed


def write(tmp_path, name, raw):
    path = tmp_path / name
    path.write_text(raw if isinstance(raw, str) else json.dumps(raw))
    return str(path)


def point_doc(n=1, matrix=((1,),), src=1, tgt=1):
    flat = [v for row in matrix for v in row]
    return {"version": 1, "p": 5, "n": n,
            "objects": {"X": {"dims": [[0, src]]}, "Y": {"dims": [[0, tgt]]}},
            "maps": {"f": {"source": "X", "target": "Y", "degree": 0,
                           "comps": [{"degree": 0, "shape": [tgt, src], "data": flat}]}}}


def test_selftest_zero_cases(capsys):
    assert main(["selftest", "--cases", "0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("selftest seed=0") and out.endswith("overall: PASS\n")


def test_mono_on_identity(tmp_path, capsys):
    path = write(tmp_path, "id.json", point_doc())
    assert main(["mono", path, "--map", "f", "--m", "1"]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_predicate_false_exits_one(tmp_path, capsys):
    path = write(tmp_path, "z.json", point_doc(matrix=((0,),)))
    assert main(["epi", path, "--map", "f", "--m", "1"]) == 1
    assert capsys.readouterr().out.strip() == "false"


def test_factorize_rank_one(tmp_path, capsys):
    path = write(tmp_path, "r1.json", point_doc(matrix=((1, 2), (2, 4)), src=2, tgt=2))
    assert main(["factorize", path, "--map", "f", "--kind", "1n"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert betti(doc.objects["Z"], [0])[0] == 1
    assert {"Z.e", "Z.m", "Z.eta"} <= set(doc.maps)


def test_bad_document_exits_two(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    assert main(["validate", path]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_not_in_heart_exits_two(tmp_path, capsys):
    raw = point_doc()
    raw["objects"]["X"]["dims"] = [[-1, 1]]
    raw["maps"]["f"]["comps"] = []
    path = write(tmp_path, "out.json", raw)
    assert main(["ker", path, "--map", "f"]) == 2
    assert "cohomology outside" in capsys.readouterr().err


def test_gen_validate_cohomology_round_trip(tmp_path, capsys):
    assert main(["gen", "--seed", "3", "--window", "-1..0", "--n", "2"]) == 0
    text = capsys.readouterr().out
    path = write(tmp_path, "g.json", text)
    assert main(["validate", path]) == 0
    assert capsys.readouterr().out.startswith("ok: 2 objects, 1 maps")
    assert main(["cohomology", path]) == 0
    assert capsys.readouterr().out.count(":") == 2


@pytest.mark.parametrize("argv", [
    ["cone", "{p}", "--map", "f"],
    ["truncate", "{p}", "--object", "X", "--kind", "ge", "--k", "0"],
    ["omega", "{p}", "--object", "X"],
    ["sigma", "{p}", "--map", "f"],
    ["ker", "{p}", "--map", "f"],
    ["coker", "{p}", "--map", "f"],
    ["factorize", "{p}", "--map", "f", "--kind", "n1"],
])
def test_constructions_emit_documents(tmp_path, capsys, argv):
    assert main(["gen", "--seed", "5", "--n", "2"]) == 0
    path = write(tmp_path, "g.json", capsys.readouterr().out)
    assert main([a.format(p=path) for a in argv]) == 0
    parse_document(capsys.readouterr().out)


def test_checks_on_generated_document(tmp_path, capsys):
    main(["gen", "--seed", "8", "--n", "2"])
    path = write(tmp_path, "g.json", capsys.readouterr().out)
    assert main(["adjunction", path, "--objects", "X", "Y"]) == 0
    capsys.readouterr()
    assert main(["ker", path, "--map", "f", "--name", "K"]) == 0
    kpath = write(tmp_path, "k.json", capsys.readouterr().out)
    kdoc = parse_document(open(kpath).read())
    assert "K.k" in kdoc.maps
    assert main(["conflation", kpath, "--map", "K.k"]) in (0, 1)
    capsys.readouterr()


def test_les_and_octahedron(tmp_path, capsys):
    raw = {"version": 1, "p": 5, "n": 2,
           "objects": {"X": {"dims": [[0, 1]]},
                       "E": {"dims": [[-1, 1], [0, 1]],
                             "diffs": [{"degree": -1, "shape": [1, 1], "data": [1]}]},
                       "Z": {"dims": [[-1, 1]]}},
           "maps": {"f": {"source": "X", "target": "E", "degree": 0,
                          "comps": [{"degree": 0, "shape": [1, 1], "data": [1]}]},
                    "g": {"source": "E", "target": "Z", "degree": 0,
                          "comps": [{"degree": -1, "shape": [1, 1], "data": [1]}]},
                    "h": {"source": "X", "target": "Z", "degree": -1, "comps": []}}}
    path = write(tmp_path, "ext.json", raw)
    assert main(["conflation", path, "--triple", "f,g,h"]) == 0
    capsys.readouterr()
    assert main(["les", path, "--triple", "f,g,h", "--test", "Z", "--range", "-2..1"]) == 0
    capsys.readouterr()
    assert main(["octahedron", path, "--maps", "f", "g"]) == 0


def test_selftest_replay(capsys):
    seed = sub_seed(0, "lt2", 0)
    assert main(["selftest", "--replay", str(seed), "--check", "lt2", "--n", "1", "--p", "2"]) == 0
    assert capsys.readouterr().out.strip() == "PASS"
    assert main(["selftest", "--replay", "1", "--check", "lt2"]) == 2


def test_selftest_json_and_unknown_check(capsys):
    assert main(["selftest", "--cases", "2", "--check", "classical", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] and doc["checks"][0]["cases"] == 2
    assert main(["selftest", "--check", "nope"]) == 2
