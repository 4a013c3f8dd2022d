import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ntrunc.complexes import GradedMap, point, random_chain_map, random_complex
from ntrunc.document import Document, DocumentError, emit_document, parse_document

MINIMAL = '{"version": 1, "p": 5, "n": 1, "objects": {"X": {"dims": [[0, 1]]}}}'


def doc_with(objects=None, maps=None, **top):
    raw = {"version": 1, "p": 5, "n": 2, "objects": objects or {}, "maps": maps or {}}
    raw.update(top)
    return json.dumps(raw)


def test_minimal_document():
    doc = parse_document(MINIMAL)
    assert doc.p == 5 and doc.n == 1 and doc.objects["X"] == point(5, 0)


def test_d_squared_error_names_degree():
    X = {"dims": [[0, 1], [1, 1], [2, 1]],
         "diffs": [{"degree": 0, "shape": [1, 1], "data": [1]},
                   {"degree": 1, "shape": [1, 1], "data": [1]}]}
    with pytest.raises(DocumentError, match="d∘d ≠ 0 at degree 0 of object X"):
        parse_document(doc_with({"X": X}))


def test_syntax_error_has_position():
    with pytest.raises(DocumentError) as info:
        parse_document('{"version": 1,\n  "p": }')
    assert info.value.line == 2 and info.value.column is not None


@pytest.mark.parametrize("raw, pattern", [
    (doc_with(version=2), "unsupported version"),
    (doc_with(p=6), "prime"),
    (doc_with(n=0), "n must be"),
    (doc_with({"X": {"dims": [[0, -1]]}}), "negative"),
    (doc_with({"X": {"dims": [[0, 1], [1, 1]], "diffs": [{"degree": 0, "shape": [2, 1], "data": [1, 1]}]}}),
     "shape mismatch"),
    (doc_with({"X": {"dims": [[0, 1]]}}, {"f": {"source": "X", "target": "Y", "comps": []}}), "unknown object"),
    (doc_with({"X": {"dims": [[0, 1]], "diffs": [{"degree": 0, "shape": [0, 1], "data": [1]}]}}), "entries"),
    ("[1, 2]", "top level"),
])
def test_semantic_errors(raw, pattern):
    with pytest.raises(DocumentError, match=pattern):
        parse_document(raw)


def test_map_must_commute():
    X = {"dims": [[-1, 1], [0, 1]], "diffs": [{"degree": -1, "shape": [1, 1], "data": [1]}]}
    Y = {"dims": [[-1, 1], [0, 1]]}
    f = {"source": "X", "target": "Y", "degree": 0, "comps": [{"degree": 0, "shape": [1, 1], "data": [1]}]}
    with pytest.raises(DocumentError, match="not a chain map"):
        parse_document(doc_with({"X": X, "Y": Y}, {"f": f}))


def test_graded_maps_round_trip():
    X = random_complex(1, 2, (-1, 0), 5)
    Y = random_complex(2, 2, (-1, 0), 5)
    doc = Document(5, 2)
    doc.add_object("X", X)
    doc.add_object("Y", Y)
    h = GradedMap(X, Y, -1, {0: np.ones((Y.dim(-1), X.dim(0)), dtype=np.int64)})
    doc.add_map("h", h)
    back = parse_document(emit_document(doc))
    assert back.maps["h"].degree == -1 and back.maps["h"].equals(h)


def test_unnamed_endpoint_rejected():
    doc = Document(5, 1)
    with pytest.raises(ValueError):
        doc.add_map("f", random_chain_map(point(5), point(5), seed=0))


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]))
def test_round_trip(seed, p):
    rng = np.random.default_rng(seed)
    X = random_complex(0, 3, (-2, 1), p, rng=rng)
    Y = random_complex(0, 3, (-2, 1), p, rng=rng)
    doc = Document(p, 2)
    doc.add_object("X", X)
    doc.add_object("Y", Y)
    doc.add_map("f", random_chain_map(X, Y, rng=rng))
    text = emit_document(doc)
    back = parse_document(text)
    assert back.objects == doc.objects
    assert back.maps["f"].equals(doc.maps["f"])
    assert emit_document(back) == text
