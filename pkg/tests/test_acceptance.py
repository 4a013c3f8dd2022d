"""Acceptance criteria 1-10, run at their stated case counts.

Each test records one ``criterion N: PASS|FAIL`` line, shown in the pytest
terminal summary.  Run this file directly to print the lines without pytest.
"""

import time

import pytest

from ntrunc.verify import SuiteParams, property_suite, render_text

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 20240601
COUNTS = {
    "factorization": 200,
    "uniqueness": 50,
    "classical": 100,
    "les": 100,
    "adjunction": 100,
    "lt2": 100,
    "abelian_axioms": 100,
    "mono_pushout": 100,
    "octahedron": 50,
    "truncatedness": 100,
}
PARAMS = SuiteParams(n_list=(1, 2, 3), p_list=(2, 5), max_dim=3, checks=tuple(COUNTS))


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:>2} ({title}): {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)


_cache = {}


def suite():
    if "reports" not in _cache:
        t0 = time.perf_counter()
        reports = property_suite(SEED, PARAMS, counts=COUNTS)
        _cache["elapsed"] = time.perf_counter() - t0
        _cache["reports"] = {r.name: r for r in reports}
        _cache["text"] = render_text(reports, SEED)
    return _cache["reports"]


def summary(*names):
    reps = [suite()[n] for n in names]
    ok = all(r.passed for r in reps)
    detail = ", ".join(f"{r.name} {r.cases - len({s for s, _ in r.failures})}/{r.cases}" for r in reps)
    return ok, detail, reps


def check(number, title, *names, extra_ok=True, extra=""):
    ok, detail, reps = summary(*names)
    for r in reps:
        assert r.cases == COUNTS[r.name]
    ok = ok and extra_ok
    record(number, title, ok, detail + (f", {extra}" if extra else ""))
    failures = [f"{r.name}: {s}: {m}" for r in reps for s, m in r.failures]
    assert ok, "\n".join(failures[:20]) or extra


def test_criterion_01_factorization():
    rep = suite()["factorization"]
    check(1, "factorization theorem", "factorization",
          extra_ok=rep.elapsed < 60, extra=f"{rep.elapsed:.1f}s (limit 60s)")


def test_criterion_02_uniqueness():
    check(2, "uniqueness of factorization", "uniqueness")


def test_criterion_03_classical():
    check(3, "n = 1 classical image", "classical")


def test_criterion_04_les():
    check(4, "long exact sequences", "les")


def test_criterion_05_adjunction():
    check(5, "adjunction and representability", "adjunction")


def test_criterion_06_lt2():
    check(6, "LT2 sign", "lt2")


def test_criterion_07_abelian():
    check(7, "abelian axioms and n-mono pushouts", "abelian_axioms", "mono_pushout")


def test_criterion_08_octahedron():
    check(8, "octahedron", "octahedron")


def test_criterion_09_truncatedness():
    check(9, "n-truncatedness", "truncatedness")


def test_criterion_10_determinism():
    suite()
    first = _cache["text"]
    again = render_text(property_suite(SEED, PARAMS, counts=COUNTS), SEED)
    parallel = render_text(property_suite(SEED, PARAMS, jobs=2, counts=COUNTS), SEED)
    ok = first == again == parallel
    record(10, "determinism", ok, "serial, serial, jobs=2 reports byte-identical" if ok else "reports differ")
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
