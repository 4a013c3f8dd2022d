"""Command-line front end.

Exit codes: 0 success or check passed, 1 check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import exactla as la
from .complexes import betti, cone, random_chain_map, random_complex, truncate
from .document import Document, DocumentError, emit_document, parse_document
from .factorize import check_factorization, factorize
from .heart import (
    HeartContext, NotInHeart, ThreeTerm, exactness_check, hcoker, hker, is_m_epi, is_m_mono,
    loop_structure_map, omega, sigma, susp_structure_map,
)
from .verify import (
    CHECKS, PreconditionError, SuiteParams, adjunction_check, les_check, octahedron_check,
    property_suite, render_json, render_text, representability_check, run_case,
)


class UsageError(Exception):
    pass


def _read(path: str) -> Document:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_document(text)


def _ctx(doc: Document, args) -> HeartContext:
    n = args.n if getattr(args, "n", None) is not None else doc.n
    return HeartContext(n, doc.p)


def _object(doc: Document, name: str):
    if name not in doc.objects:
        raise UsageError(f"no object named {name!r}")
    return doc.objects[name]


def _map(doc: Document, name: str):
    if name not in doc.maps:
        raise UsageError(f"no map named {name!r}")
    return doc.maps[name]


def _chain_map(doc: Document, name: str):
    f = _map(doc, name)
    if f.degree != 0:
        raise UsageError(f"map {name!r} has degree {f.degree}; a chain map is required")
    return f


def _names(doc: Document, f) -> tuple[str, str]:
    return doc.object_name(f.source), doc.object_name(f.target)


def _out_doc(doc: Document, ctx: HeartContext) -> Document:
    return Document(doc.p, ctx.n)


def _keep_endpoints(src: Document, out: Document, f) -> tuple[str, str]:
    s, t = _names(src, f)
    out.objects.setdefault(s, f.source)
    out.objects.setdefault(t, f.target)
    return s, t


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"range must look like a..b, got {text!r}") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _bool_out(flag: bool) -> int:
    print("true" if flag else "false")
    return 0 if flag else 1


# -- commands ---------------------------------------------------------------------------------

def cmd_validate(args) -> int:
    doc = _read(args.doc)
    print(f"ok: {len(doc.objects)} objects, {len(doc.maps)} maps over F_{doc.p}, n = {doc.n}")
    return 0


def cmd_cohomology(args) -> int:
    doc = _read(args.doc)
    names = [args.object] if args.object else sorted(doc.objects)
    for name in names:
        X = _object(doc, name)
        dims = {i: h for i, h in betti(X).items() if h}
        body = ", ".join(f"H^{i}={h}" for i, h in dims.items()) or "0"
        print(f"{name}: {body}")
    return 0


def cmd_cone(args) -> int:
    doc = _read(args.doc)
    f = _chain_map(doc, args.map)
    out = _out_doc(doc, _ctx(doc, args))
    s, t = _keep_endpoints(doc, out, f)
    cd = cone(f)
    out.add_object(args.name, cd.cone)
    out.add_map(f"{args.name}.incl", cd.incl)
    out.add_object(f"{s}[1]", cd.proj.target)
    out.add_map(f"{args.name}.proj", cd.proj)
    sys.stdout.write(emit_document(out))
    return 0


def cmd_truncate(args) -> int:
    doc = _read(args.doc)
    X = _object(doc, args.object)
    out = Document(doc.p, doc.n)
    out.add_object(args.object, X)
    t = truncate(X, args.kind, args.k)
    out.add_object(args.name, t.obj)
    out.add_map(f"{args.name}.structure", t.structure)
    sys.stdout.write(emit_document(out))
    return 0


def _loop_like(args, functor, structure, label: str) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    out = _out_doc(doc, ctx)
    if bool(args.object) == bool(args.map):
        raise UsageError("give exactly one of --object or --map")
    if args.object:
        X = _object(doc, args.object)
        from .heart import require_heart
        require_heart(ctx, X)
        out.add_object(args.object, X)
        LX = functor(ctx, X)
        out.add_object(f"{label}{args.object}", LX)
        out.add_map(f"h.{label}{args.object}", structure(ctx, X))
    else:
        f = _chain_map(doc, args.map)
        from .heart import require_heart
        require_heart(ctx, f.source, f.target)
        s, t = _names(doc, f)
        g = functor(ctx, f)
        out.add_object(f"{label}{s}", g.source)
        out.add_object(f"{label}{t}", g.target)
        out.add_map(f"{label}{args.map}", g)
    sys.stdout.write(emit_document(out))
    return 0


def cmd_omega(args) -> int:
    return _loop_like(args, omega, loop_structure_map, "Omega")


def cmd_sigma(args) -> int:
    return _loop_like(args, sigma, susp_structure_map, "Sigma")


def cmd_ker(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    f = _chain_map(doc, args.map)
    out = _out_doc(doc, ctx)
    _keep_endpoints(doc, out, f)
    K = hker(ctx, f)
    out.add_map(args.map, f)
    out.add_object(args.name, K.obj)
    out.add_map(f"{args.name}.k", K.k)
    out.add_map(f"{args.name}.h", K.h)
    sys.stdout.write(emit_document(out))
    return 0


def cmd_coker(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    f = _chain_map(doc, args.map)
    out = _out_doc(doc, ctx)
    _keep_endpoints(doc, out, f)
    C = hcoker(ctx, f)
    out.add_map(args.map, f)
    out.add_object(args.name, C.obj)
    out.add_map(f"{args.name}.q", C.q)
    out.add_map(f"{args.name}.h", C.h)
    sys.stdout.write(emit_document(out))
    return 0


def cmd_mono(args) -> int:
    doc = _read(args.doc)
    return _bool_out(is_m_mono(_ctx(doc, args), _chain_map(doc, args.map), args.m))


def cmd_epi(args) -> int:
    doc = _read(args.doc)
    return _bool_out(is_m_epi(_ctx(doc, args), _chain_map(doc, args.map), args.m))


def cmd_factorize(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    f = _chain_map(doc, args.map)
    F = factorize(ctx, f, args.kind)
    out = _out_doc(doc, ctx)
    s, t = _keep_endpoints(doc, out, f)
    if F.f.source is not f.source:
        s = out.add_object(f"{s}.normalized", F.f.source)
    if F.f.target is not f.target:
        t = out.add_object(f"{t}.normalized", F.f.target)
    out.add_object(args.name, F.Z)
    out.add_map(f"{args.name}.e", F.e)
    out.add_map(f"{args.name}.m", F.m)
    out.add_map(f"{args.name}.eta", F.eta)
    for note in F.notes:
        print(f"note: {note}", file=sys.stderr)
    sys.stdout.write(emit_document(out))
    return 0 if check_factorization(ctx, F).ok else 1


def _triple(doc: Document, ctx: HeartContext, args) -> ThreeTerm:
    if args.triple:
        names = args.triple.split(",")
        if len(names) != 3:
            raise UsageError("--triple takes f,g,h")
        f, g, h = (_map(doc, x) for x in names)
        T = ThreeTerm(f, g, h)
        if not T.is_valid():
            raise UsageError("the given triple is not a 3-term homotopy complex: D(h) ≠ -g∘f")
        return T
    if not args.map:
        raise UsageError("give --map (an n-mono) or --triple f,g,h")
    f = _chain_map(doc, args.map)
    if not is_m_mono(ctx, f, ctx.n):
        raise PreconditionError(f"map {args.map} is not an n-monomorphism (n = {ctx.n})")
    return hcoker(ctx, f).triple


def cmd_conflation(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    T = _triple(doc, ctx, args)
    e = exactness_check(ctx, T)
    print(f"left_exact: {str(e.left_exact).lower()}")
    print(f"right_exact: {str(e.right_exact).lower()}")
    print(f"short_exact: {str(e.short_exact).lower()}")
    return 0 if e.short_exact else 1


def cmd_les(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    T = _triple(doc, ctx, args)
    W = _object(doc, args.test)
    lo, hi = _parse_range(args.range) if args.range else (-ctx.n, 1)
    report = les_check(ctx, T, W, range(lo, hi + 1))
    sys.stdout.write(render_text([report]))
    return 0 if report.passed else 1


def cmd_octahedron(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    f, f_ = _chain_map(doc, args.maps[0]), _chain_map(doc, args.maps[1])
    if f.target != f_.source:
        raise UsageError("maps are not composable")
    report = octahedron_check(ctx, f, f_)
    sys.stdout.write(render_text([report]))
    return 0 if report.passed else 1


def cmd_adjunction(args) -> int:
    doc = _read(args.doc)
    ctx = _ctx(doc, args)
    X, Y = _object(doc, args.objects[0]), _object(doc, args.objects[1])
    from .heart import require_heart
    require_heart(ctx, X, Y)
    reports = [adjunction_check(ctx, X, Y), representability_check(ctx, X, Y)]
    sys.stdout.write(render_text(reports))
    return 0 if all(r.passed for r in reports) else 1


def cmd_gen(args) -> int:
    lo, hi = _parse_range(args.window)
    la.check_prime(args.p)
    rng = np.random.default_rng(args.seed)
    doc = Document(args.p, args.n)
    X = random_complex(0, args.max_dim, (lo, hi), args.p, rng=rng)
    Y = random_complex(0, args.max_dim, (lo, hi), args.p, rng=rng)
    doc.add_object("X", X)
    doc.add_object("Y", Y)
    doc.add_map("f", random_chain_map(X, Y, rng=rng))
    sys.stdout.write(emit_document(doc))
    return 0


def cmd_selftest(args) -> int:
    checks = tuple(args.check.split(",")) if args.check else tuple(CHECKS)
    for c in checks:
        if c not in CHECKS:
            raise UsageError(f"unknown check {c!r}; known: {', '.join(CHECKS)}")
    if args.replay is not None:
        if len(checks) != 1 or len(_int_list(args.n)) != 1 or len(_int_list(args.p)) != 1:
            raise UsageError("--replay needs one --check, one --n and one --p")
        fails = run_case(checks[0], args.replay, _int_list(args.n)[0], _int_list(args.p)[0], args.max_dim)
        for msg in fails:
            print(f"failure: {msg}")
        print("PASS" if not fails else "FAIL")
        return 0 if not fails else 1
    params = SuiteParams(_int_list(args.n), _int_list(args.p), args.max_dim, args.cases, checks)
    for p in params.p_list:
        la.check_prime(p)
    t0 = time.perf_counter()
    reports = property_suite(args.seed, params, jobs=args.jobs)
    if args.timings:
        for r in reports:
            print(f"{r.name}: {r.elapsed:.2f}s", file=sys.stderr)
        print(f"total: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    render = render_json if args.json else render_text
    sys.stdout.write(render(reports, args.seed))
    return 0 if all(r.passed for r in reports) else 1


# -- parser -------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ntrunc", description="Complexes over F_p and the n-extended heart.")
    sub = ap.add_subparsers(dest="command", required=True)

    def doc_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("doc", help="document path, or - for standard input")
        sp.add_argument("--n", type=int, help="override the document's n")
        sp.set_defaults(fn=fn)
        return sp

    doc_cmd("validate", cmd_validate, "parse and validate a document")
    sp = doc_cmd("cohomology", cmd_cohomology, "cohomology dimensions of objects")
    sp.add_argument("--object")
    sp = doc_cmd("cone", cmd_cone, "mapping cone of a chain map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name", default="Cone")
    sp = doc_cmd("truncate", cmd_truncate, "smart truncation of an object")
    sp.add_argument("--object", required=True)
    sp.add_argument("--kind", choices=("le", "ge"), required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--name", default="T")
    for name, fn in (("omega", cmd_omega), ("sigma", cmd_sigma)):
        sp = doc_cmd(name, fn, f"{name} of an object or a map")
        sp.add_argument("--object")
        sp.add_argument("--map")
    sp = doc_cmd("ker", cmd_ker, "homotopy kernel of a map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name", default="K")
    sp = doc_cmd("coker", cmd_coker, "homotopy cokernel of a map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--name", default="C")
    for name, fn in (("mono", cmd_mono), ("epi", cmd_epi)):
        sp = doc_cmd(name, fn, f"is the map an m-{name}?")
        sp.add_argument("--map", required=True)
        sp.add_argument("--m", type=int, required=True)
    sp = doc_cmd("factorize", cmd_factorize, "[1,n]- or [n,1]-factorization of a map")
    sp.add_argument("--map", required=True)
    sp.add_argument("--kind", choices=("1n", "n1"), default="1n")
    sp.add_argument("--name", default="Z")
    sp = doc_cmd("conflation", cmd_conflation, "exactness of a 3-term complex (or the cokernel triangle of an n-mono)")
    sp.add_argument("--map")
    sp.add_argument("--triple", help="f,g,h")
    sp = doc_cmd("les", cmd_les, "long exact Hom sequences of a conflation")
    sp.add_argument("--map")
    sp.add_argument("--triple", help="f,g,h")
    sp.add_argument("--test", required=True, help="test object")
    sp.add_argument("--range", help="degrees a..b (default -n..1)")
    sp = doc_cmd("octahedron", cmd_octahedron, "octahedron of a composable pair")
    sp.add_argument("--maps", nargs=2, required=True, metavar=("F", "F2"))
    sp = doc_cmd("adjunction", cmd_adjunction, "Sigma-Omega adjunction and representability")
    sp.add_argument("--objects", nargs=2, required=True, metavar=("X", "Y"))

    sp = sub.add_parser("gen", help="random document with objects X, Y and a chain map f")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--window", default="-1..0")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--p", type=int, default=la.DEFAULT_PRIME)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("selftest", help="seeded property suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--n", default="1,2,3")
    sp.add_argument("--p", default="2,5")
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--check", help="comma-separated subset of checks")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true", help="structured output")
    sp.add_argument("--timings", action="store_true", help="per-check timings on stderr")
    sp.add_argument("--replay", type=int, help="rerun one case from its failure seed")
    sp.set_defaults(fn=cmd_selftest)
    return ap


def _glue_ranges(argv: list[str]) -> list[str]:
    # "--range -2..1" would read "-2..1" as an option; glue it to its flag
    out, it = [], iter(argv)
    for a in it:
        if a in ("--range", "--window"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(list(sys.argv[1:] if argv is None else argv)))
    try:
        return args.fn(args)
    except (DocumentError, UsageError, NotInHeart, PreconditionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
