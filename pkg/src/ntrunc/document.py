"""Versioned JSON documents holding named complexes and maps.

Layout::

    {"version": 1, "p": 5, "n": 2,
     "objects": {"X": {"dims": [[-1, 1], [0, 2]],
                       "diffs": [{"degree": -1, "shape": [2, 1], "data": [1, 0]}]}},
     "maps": {"f": {"source": "X", "target": "Y", "degree": 0,
                    "comps": [{"degree": 0, "shape": [1, 2], "data": [1, 1]}]}}}

Matrices are row-major with an explicit shape, so empty matrices survive a
round trip.  :func:`emit_document` writes one canonical form: fixed key order,
names sorted, degrees ascending, one object or map per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .complexes import ChainMap, Complex, GradedMap, graded_differential

VERSION = 1


class DocumentError(ValueError):
    """Syntax errors carry ``line``/``column``; semantic ones name the violated invariant."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Document:
    p: int
    n: int
    objects: dict[str, Complex] = field(default_factory=dict)
    maps: dict[str, GradedMap] = field(default_factory=dict)

    def object_name(self, X: Complex) -> str | None:
        for name, Y in self.objects.items():
            if Y is X:
                return name
        for name, Y in self.objects.items():
            if Y == X:
                return name
        return None

    def add_object(self, name: str, X: Complex) -> str:
        self.objects[name] = X
        return name

    def add_map(self, name: str, f: GradedMap, source: str | None = None, target: str | None = None) -> None:
        """Store ``f``, registering its endpoints under the given names if new."""
        for X, label in ((f.source, source), (f.target, target)):
            if label is not None:
                self.objects.setdefault(label, X)
            elif self.object_name(X) is None:
                raise ValueError(f"endpoint of {name} has no name in the document")
        self.maps[name] = f


# -- parsing -------------------------------------------------------------------------------

def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _matrix(entry, where: str, p: int) -> tuple[int, np.ndarray]:
    if not isinstance(entry, dict):
        raise DocumentError(f"{where}: expected an object with degree, shape and data")
    for key in ("degree", "shape", "data"):
        if key not in entry:
            raise DocumentError(f"{where}: missing field {key!r}")
    deg = _int(entry["degree"], f"{where}.degree")
    shape = entry["shape"]
    if not isinstance(shape, list) or len(shape) != 2:
        raise DocumentError(f"{where}.shape: expected [rows, cols]")
    r, c = (_int(v, f"{where}.shape") for v in shape)
    if r < 0 or c < 0:
        raise DocumentError(f"{where}.shape: negative size")
    data = entry["data"]
    if not isinstance(data, list):
        raise DocumentError(f"{where}.data: expected a list")
    if len(data) != r * c:
        raise DocumentError(f"{where}.data: {len(data)} entries for shape {r}x{c}")
    vals = [_int(v, f"{where}.data") for v in data]
    return deg, la.reduce(np.array(vals, dtype=np.int64).reshape(r, c), p)


def _complex(name: str, body, p: int) -> Complex:
    where = f"objects.{name}"
    if not isinstance(body, dict):
        raise DocumentError(f"{where}: expected an object")
    dims_raw = body.get("dims", [])
    if not isinstance(dims_raw, list):
        raise DocumentError(f"{where}.dims: expected a list of [degree, dim] pairs")
    dims: dict[int, int] = {}
    for k, pair in enumerate(dims_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError(f"{where}.dims[{k}]: expected [degree, dim]")
        deg, dim = _int(pair[0], f"{where}.dims[{k}]"), _int(pair[1], f"{where}.dims[{k}]")
        if dim < 0:
            raise DocumentError(f"{where}.dims[{k}]: negative dimension")
        if deg in dims:
            raise DocumentError(f"{where}.dims: degree {deg} listed twice")
        dims[deg] = dim
    diffs: dict[int, np.ndarray] = {}
    for k, entry in enumerate(body.get("diffs", [])):
        deg, M = _matrix(entry, f"{where}.diffs[{k}]", p)
        want = (dims.get(deg + 1, 0), dims.get(deg, 0))
        if M.shape != want:
            raise DocumentError(f"shape mismatch: differential at degree {deg} of object {name} is "
                                f"{M.shape[0]}x{M.shape[1]}, dims require {want[0]}x{want[1]}")
        if deg in diffs:
            raise DocumentError(f"{where}.diffs: degree {deg} listed twice")
        diffs[deg] = M
    X = Complex(p, dims, diffs)
    for i in sorted(X.diffs):
        if (i + 1) in X.diffs and la.matmul(X.diffs[i + 1], X.diffs[i], p).any():
            raise DocumentError(f"d∘d ≠ 0 at degree {i} of object {name}")
    return X


def _map(name: str, body, objects: dict[str, Complex], p: int) -> GradedMap:
    where = f"maps.{name}"
    if not isinstance(body, dict):
        raise DocumentError(f"{where}: expected an object")
    for key in ("source", "target"):
        ref = body.get(key)
        if ref not in objects:
            raise DocumentError(f"{where}.{key}: unknown object {json.dumps(ref)}")
    X, Y = objects[body["source"]], objects[body["target"]]
    k = _int(body.get("degree", 0), f"{where}.degree")
    comps = {}
    for j, entry in enumerate(body.get("comps", [])):
        deg, M = _matrix(entry, f"{where}.comps[{j}]", p)
        want = (Y.dim(deg + k), X.dim(deg))
        if M.shape != want:
            raise DocumentError(f"shape mismatch: component at degree {deg} of map {name} is "
                                f"{M.shape[0]}x{M.shape[1]}, endpoints require {want[0]}x{want[1]}")
        comps[deg] = M
    f = ChainMap(X, Y, comps) if k == 0 else GradedMap(X, Y, k, comps)
    if k == 0:
        bad = graded_differential(f)
        if not bad.is_zero():
            i = min(bad.comps)
            raise DocumentError(f"map {name} is not a chain map: d∘f ≠ f∘d at degree {i}")
    return f


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise DocumentError("top level must be an object")
    version = raw.get("version")
    if version != VERSION:
        raise DocumentError(f"unsupported version {json.dumps(version)} (expected {VERSION})")
    p = _int(raw.get("p"), "p")
    try:
        la.check_prime(p)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    n = _int(raw.get("n", 1), "n")
    if n < 1:
        raise DocumentError("n must be a positive integer")
    objs_raw = raw.get("objects", {})
    maps_raw = raw.get("maps", {})
    if not isinstance(objs_raw, dict) or not isinstance(maps_raw, dict):
        raise DocumentError("objects and maps must be name-keyed objects")
    doc = Document(p, n)
    for name, body in objs_raw.items():
        doc.objects[name] = _complex(name, body, p)
    for name, body in maps_raw.items():
        doc.maps[name] = _map(name, body, doc.objects, p)
    return doc


# -- emitting -------------------------------------------------------------------------------

def _matrix_json(deg: int, M: np.ndarray) -> dict:
    return {"degree": deg, "shape": [int(M.shape[0]), int(M.shape[1])], "data": [int(v) for v in M.reshape(-1)]}


def complex_json(X: Complex) -> dict:
    return {"dims": [[i, n] for i, n in X.dims.items()],
            "diffs": [_matrix_json(i, M) for i, M in sorted(X.diffs.items())]}


def map_json(f: GradedMap, source: str, target: str) -> dict:
    return {"source": source, "target": target, "degree": f.degree,
            "comps": [_matrix_json(i, M) for i, M in sorted(f.comps.items())]}


def emit_document(doc: Document) -> str:
    def line(key, value):
        return f"    {json.dumps(key, ensure_ascii=False)}: {json.dumps(value, ensure_ascii=False)}"

    objs = [line(k, complex_json(doc.objects[k])) for k in sorted(doc.objects)]
    maps = []
    for k in sorted(doc.maps):
        f = doc.maps[k]
        s, t = doc.object_name(f.source), doc.object_name(f.target)
        if s is None or t is None:
            raise ValueError(f"map {k} has an unnamed endpoint")
        maps.append(line(k, map_json(f, s, t)))

    def block(items):
        return "{\n" + ",\n".join(items) + "\n  }" if items else "{}"

    return (f'{{\n  "version": {VERSION},\n  "p": {doc.p},\n  "n": {doc.n},\n'
            f'  "objects": {block(objs)},\n  "maps": {block(maps)}\n}}\n')
