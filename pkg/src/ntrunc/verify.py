"""Randomized checks of the heart's structure theorems, and the property suite.

Every check returns a :class:`Report`.  The suite derives one sub-seed per
(check, case index) with a keyed hash, so a case's data never depends on
which other cases ran, or in which order.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import exactla as la
from .complexes import (
    ChainMap, Complex, GradedMap, as_chain_map, cone, direct_sum, identity_map, induced_cohomology_map,
    interval, point, random_chain_map, zero_map,
)
from .factorize import (
    check_factorization, cokernel_comparison, compare_factorizations, factor_1n, factor_n1,
    random_quasi_isomorphism, transport,
)
from .heart import (
    HeartContext, ThreeTerm, cone_comparison, exactness_check, fiber_product, hcoker, hker,
    in_heart, is_heart_cartesian, is_heart_cocartesian, is_m_epi, is_m_mono, loop_structure_map,
    octahedron, omega, pushout, random_heart_map, random_heart_object, sigma,
    standard_left_triangle, susp_structure_map,
)
from .homcomplex import (
    MapSystem, hom_classes, hom_cohomology_dims, post_composition_on_classes,
    pre_composition_on_classes, quasi_inverse, solve_homotopy,
)


@dataclass
class Report:
    name: str
    cases: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, seed, description: str) -> None:
        self.failures.append((str(seed), description))

    def merge(self, other: Report) -> None:
        self.cases += other.cases
        self.failures.extend(other.failures)


class PreconditionError(ValueError):
    pass


def _single(name: str, failures: Sequence[str], seed="-") -> Report:
    r = Report(name, 1)
    for msg in failures:
        r.fail(seed, msg)
    return r


# -- connecting maps and long exact sequences ---------------------------------------------------

def connecting_class(ctx: HeartContext, T: ThreeTerm) -> GradedMap:
    """``delta : Z -> X`` of degree 1: the cone projection after a homotopy inverse of ``c``."""
    if not exactness_check(ctx, T).short_exact:
        raise PreconditionError("the 3-term complex is not short exact")
    c = cone_comparison(T)
    q = quasi_inverse(c)
    if q is None:
        raise RuntimeError("c is a quasi-isomorphism but no homotopy inverse was found")
    proj = cone(T.f).proj
    d = proj @ q.g
    return GradedMap(T.g.target, T.f.source, 1, d.comps)


def _exact_at(alpha: np.ndarray, beta: np.ndarray, middle: int, p: int) -> bool:
    """``A -alpha-> M -beta-> B`` is exact at ``M`` (``dim M = middle``)."""
    if la.matmul(beta, alpha, p).any():
        return False
    return la.rank(alpha, p) + la.rank(beta, p) == middle


def les_check(ctx: HeartContext, T: ThreeTerm, test: Complex, degrees: Sequence[int] | None = None) -> Report:
    """Exactness of the covariant and contravariant Hom sequences of a conflation."""
    degrees = list(range(-ctx.n, 2)) if degrees is None else list(degrees)
    report = Report("les", 1)
    delta = connecting_class(ctx, T)
    X, Y, Z = T.f.source, T.f.target, T.g.target
    p = ctx.p
    W = test
    # covariant: H^i(W,X) -> H^i(W,Y) -> H^i(W,Z) -> H^{i+1}(W,X)
    cov = {}
    for i in set(degrees) | {i + 1 for i in degrees}:
        cov[i] = (post_composition_on_classes(W, T.f, i), post_composition_on_classes(W, T.g, i),
                  post_composition_on_classes(W, delta, i))
    for i in degrees:
        a, b, g = cov[i]
        a1 = cov[i + 1][0]
        if not _exact_at(a, b, b.shape[1], p):
            report.fail("-", f"covariant sequence not exact at H^{i}(Hom(T, Y))")
        if not _exact_at(b, g, g.shape[1], p):
            report.fail("-", f"covariant sequence not exact at H^{i}(Hom(T, Z))")
        if not _exact_at(g, a1, a1.shape[1], p):
            report.fail("-", f"covariant sequence not exact at H^{i + 1}(Hom(T, X))")
    # contravariant: H^i(Z,W) -> H^i(Y,W) -> H^i(X,W) -> H^{i+1}(Z,W)
    con = {}
    for i in set(degrees) | {i + 1 for i in degrees}:
        con[i] = (pre_composition_on_classes(T.g, W, i), pre_composition_on_classes(T.f, W, i),
                  pre_composition_on_classes(delta, W, i))
    for i in degrees:
        g_, f_, d_ = con[i]
        g1 = con[i + 1][0]
        if not _exact_at(g_, f_, f_.shape[1], p):
            report.fail("-", f"contravariant sequence not exact at H^{i}(Hom(Y, T))")
        if not _exact_at(f_, d_, d_.shape[1], p):
            report.fail("-", f"contravariant sequence not exact at H^{i}(Hom(X, T))")
        if not _exact_at(d_, g1, g1.shape[1], p):
            report.fail("-", f"contravariant sequence not exact at H^{i + 1}(Hom(Z, T))")
    return report


# -- loop / suspension --------------------------------------------------------------------------

def _bijective(M: np.ndarray, p: int) -> bool:
    return M.shape[0] == M.shape[1] and la.rank(M, p) == M.shape[0]


def _adjunction_matrices(ctx: HeartContext, X: Complex, Y: Complex):
    hX = susp_structure_map(ctx, X)
    hY = loop_structure_map(ctx, Y)
    SX = hX.target
    OY = hY.source
    P = pre_composition_on_classes(hX, Y, 0)     # H^0(SX, Y) -> H^-1(X, Y)
    Q = post_composition_on_classes(X, hY, 0)    # H^0(X, OY) -> H^-1(X, Y)
    return SX, OY, P, Q


def adjunction_check(ctx: HeartContext, X: Complex, Y: Complex, f: ChainMap | None = None) -> Report:
    """``H^0(Sigma X, Y) = H^-1(X, Y) = H^0(X, Omega Y)`` through ``h^X`` and ``h_Y``.

    ``f : X' -> X`` (optional) is used for one naturality square in the first variable.
    """
    report = Report("adjunction", 1)
    p = ctx.p
    SX, OY, P, Q = _adjunction_matrices(ctx, X, Y)
    a = hom_cohomology_dims(SX, Y, [0])[0]
    b = hom_cohomology_dims(X, Y, [-1])[-1]
    c = hom_cohomology_dims(X, OY, [0])[0]
    if not a == b == c:
        report.fail("-", f"dimensions differ: H^0(Sigma X, Y)={a}, H^-1(X, Y)={b}, H^0(X, Omega Y)={c}")
        return report
    if not _bijective(P, p):
        report.fail("-", "precomposition with h^X is not a bijection onto H^-1(X, Y)")
    if not _bijective(Q, p):
        report.fail("-", "postcomposition with h_Y is not a bijection onto H^-1(X, Y)")
    if f is not None and report.passed:
        X_ = f.source
        _, _, P_, Q_ = _adjunction_matrices(ctx, X_, Y)
        Sf = sigma(ctx, f)
        sf = pre_composition_on_classes(Sf, Y, 0)        # H^0(SX, Y) -> H^0(SX', Y)
        of = pre_composition_on_classes(f, OY, 0)        # H^0(X, OY) -> H^0(X', OY)
        phi = la.matmul(la.inverse(P, p), Q, p)
        phi_ = la.matmul(la.inverse(P_, p), Q_, p)
        if not np.array_equal(la.matmul(phi_, of, p), la.matmul(sf, phi, p)):
            report.fail("-", "adjunction bijection is not natural in the first variable")
    return report


def representability_check(ctx: HeartContext, T: Complex, X: Complex) -> Report:
    """``H^0(Hom(T, Omega X)) -> H^-1(Hom(T, X))``, ``phi -> h_X o phi``, is bijective."""
    report = Report("representability", 1)
    M = post_composition_on_classes(T, loop_structure_map(ctx, X), 0)
    if not _bijective(M, ctx.p):
        report.fail("-", f"h_X o - is not a bijection (matrix {M.shape[0]}x{M.shape[1]}, rank {la.rank(M, ctx.p)})")
    return report


def lt2_sign_check(ctx: HeartContext, f: ChainMap) -> Report:
    """Rotating the standard left triangle of ``f`` produces ``f3`` with ``-f3 ~ Omega f``."""
    report = Report("lt2", 1)
    L = standard_left_triangle(ctx, f)
    if not all(r.is_zero() for r in L.residuals()):
        report.fail("-", "standard left triangle identities fail")
        return report
    A1, A0 = f.source, f.target
    A2 = L.f1.source
    OA0 = L.f2.source
    hA1 = loop_structure_map(ctx, A1)
    OA1 = hA1.source
    S = MapSystem(ctx.p)
    S.unknown("f3", OA1, OA0, 0)
    S.unknown("h", OA1, A2, -1)
    S.unknown("eta", OA1, A1, -2)
    T = MapSystem.term
    S.equation(OA1, OA0, 1, [T("f3", d=True)])
    S.equation(OA1, A2, 0, [T("h", d=True), T("f3", left=L.f2)])
    S.equation(OA1, A1, -1, [T("eta", d=True), T("h", -1, left=L.f1), T("f3", left=L.h_f1)], -hA1)
    sol = S.solve()
    if sol is None:
        report.fail("-", "no f3 completes the rotated triangle")
        return report
    f3 = as_chain_map(sol["f3"])
    if solve_homotopy(-f3, omega(ctx, f)) is None:
        report.fail("-", "-f3 is not homotopic to Omega f")
    return report


# -- abelian structure ---------------------------------------------------------------------------

def abelian_axiom_check(ctx: HeartContext, f: ChainMap, direction: str = "mono") -> Report:
    """n-monos have short exact cokernel triangles; n-epis have short exact kernel triangles."""
    report = Report("abelian_axioms", 1)
    if direction == "mono":
        if not is_m_mono(ctx, f, ctx.n):
            raise PreconditionError("f is not an n-monomorphism")
        T = hcoker(ctx, f).triple
    elif direction == "epi":
        if not is_m_epi(ctx, f, ctx.n):
            raise PreconditionError("f is not an n-epimorphism")
        T = hker(ctx, f).triple
    else:
        raise ValueError(f"direction must be 'mono' or 'epi', got {direction!r}")
    if not exactness_check(ctx, T).short_exact:
        report.fail("-", f"the {'cokernel' if direction == 'mono' else 'kernel'} triangle is not short exact")
    return report


def mono_pushout_check(ctx: HeartContext, f: ChainMap, a: ChainMap) -> Report:
    """The pushout of an n-mono along any map is an n-mono."""
    report = Report("mono_pushout", 1)
    if not is_m_mono(ctx, f, ctx.n):
        raise PreconditionError("f is not an n-monomorphism")
    if f.source != a.source:
        raise PreconditionError("f and a must share their source")
    sq = pushout(ctx, f, a)
    if not sq.is_valid():
        report.fail("-", "pushout square homotopy is wrong")
    elif not is_heart_cocartesian(ctx, sq):
        report.fail("-", "pushout square is not homotopy cocartesian")
    if not is_m_mono(ctx, sq.a_, ctx.n):
        report.fail("-", "the edge opposite f is not an n-monomorphism")
    return report


def octahedron_check(ctx: HeartContext, f: ChainMap, f_: ChainMap) -> Report:
    report = Report("octahedron", 1)
    o = octahedron(ctx, f, f_)
    bad = [i for i, r in enumerate(o.residuals()) if not r.is_zero()]
    if bad:
        report.fail("-", f"nonzero identity residuals at positions {bad}")
    if not exactness_check(ctx, o.column()).left_exact:
        report.fail("-", "(u, v, h) is not left exact")
    if not is_heart_cartesian(ctx, o.square):
        report.fail("-", "bottom-left square is not homotopy cartesian")
    return report


def truncatedness_check(ctx: HeartContext, X: Complex, Y: Complex) -> Report:
    """``H^i(Hom(X, Y)) = 0`` for ``i <= -n``.

    The definition only asks for vanishing below ``-n``; complexes over a field
    with cohomology in ``[-n+1, 0]`` also vanish at ``-n`` itself.
    """
    report = Report("truncatedness", 1)
    if X.is_zero() or Y.is_zero():
        return report
    lo = Y.lo - X.hi
    dims = hom_cohomology_dims(X, Y, range(lo, -ctx.n + 1))
    bad = {i: d for i, d in dims.items() if d}
    if bad:
        report.fail("-", f"nonzero H^i(Hom) at i <= -n: {bad}")
    return report


# -- random instance builders ---------------------------------------------------------------------

def random_n_mono(ctx: HeartContext, rng: np.random.Generator, max_dim: int, strategy: int) -> ChainMap:
    """An n-mono: a random map that happens to be one, a kernel map, or the m of a factorization."""
    if strategy == 0:
        for _ in range(8):
            f = random_heart_map(ctx, rng, max_dim=max_dim)
            if is_m_mono(ctx, f, ctx.n):
                return f
    if strategy in (0, 1):
        return hker(ctx, random_heart_map(ctx, rng, max_dim=max_dim)).k
    return factor_1n(ctx, random_heart_map(ctx, rng, max_dim=max_dim)).m


def random_n_epi(ctx: HeartContext, rng: np.random.Generator, max_dim: int, strategy: int) -> ChainMap:
    if strategy == 0:
        for _ in range(8):
            f = random_heart_map(ctx, rng, max_dim=max_dim)
            if is_m_epi(ctx, f, ctx.n):
                return f
    if strategy in (0, 1):
        return hcoker(ctx, random_heart_map(ctx, rng, max_dim=max_dim)).q
    return factor_n1(ctx, random_heart_map(ctx, rng, max_dim=max_dim)).e


def random_conflation(ctx: HeartContext, rng: np.random.Generator, max_dim: int, strategy: int) -> ThreeTerm:
    return hcoker(ctx, random_n_mono(ctx, rng, max_dim, strategy)).triple


# -- suite cases -------------------------------------------------------------------------------------
# Each case takes (ctx, rng, max_dim, index) and returns a list of failure descriptions.
# All randomness comes from rng, so a case is replayable from its seed alone.

def _strategy(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 3))


def case_factorization(ctx, rng, max_dim, index):
    f = random_heart_map(ctx, rng, max_dim=max_dim)
    out = []
    for F in (factor_1n(ctx, f), factor_n1(ctx, f)):
        r = check_factorization(ctx, F)
        if not F.eta.is_zero() or not (F.m @ F.e).equals(F.f):
            out.append(f"[{F.kind}] m o e != f")
        if not r.e_ok:
            out.append(f"[{F.kind}] e fails its epi condition")
        if not r.m_ok:
            out.append(f"[{F.kind}] m fails its mono condition")
    return out


def case_uniqueness(ctx, rng, max_dim, index):
    f = random_heart_map(ctx, rng, max_dim=max_dim)
    F = factor_1n(ctx, f)
    phi = random_quasi_isomorphism(F.Z, rng)
    F2 = transport(F, phi)
    F3 = factor_1n(ctx, f, basis_rng=rng)
    out = []
    if F2 is None:
        return ["transport: phi has no homotopy inverse"]
    for label, G in (("transported", F2), ("rebased", F3)):
        s1, s2 = (int(x) for x in rng.integers(0, 2**31, size=2))
        c1 = compare_factorizations(ctx, F, G, seed=s1)
        c2 = compare_factorizations(ctx, F, G, seed=s2)
        if c1 is None or c2 is None:
            out.append(f"[{label}] no comparison found")
            continue
        if not (c1.holds(F, G) and c2.holds(F, G)):
            out.append(f"[{label}] comparison identities fail")
        if quasi_inverse(c1.t) is None:
            out.append(f"[{label}] t is not a homotopy equivalence")
        if solve_homotopy(c1.t, c2.t) is None:
            out.append(f"[{label}] two comparisons are not homotopic")
        if label == "transported" and solve_homotopy(c1.t, phi) is None:
            out.append("[transported] t is not homotopic to the transport map")
    return out


def case_classical(ctx, rng, max_dim, index):
    ctx = HeartContext(1, ctx.p)
    a, b = (int(x) for x in rng.integers(0, max_dim + 1, size=2))
    M = la.random_matrix(rng, b, a, ctx.p)
    f = ChainMap(point(ctx.p, 0, a), point(ctx.p, 0, b), {0: M})
    F = factor_1n(ctx, f)
    got = hom_cohomology_dims(point(ctx.p), F.Z, [0])[0]
    want = la.rref(M, ctx.p)[2] if M.size else 0
    return [] if got == want else [f"dim H^0(Z) = {got}, rank f = {want}"]


def case_les(ctx, rng, max_dim, index):
    T = random_conflation(ctx, rng, max_dim, _strategy(rng))
    W = random_heart_object(ctx, rng, max_dim)
    return [d for _, d in les_check(ctx, T, W).failures]


def case_adjunction(ctx, rng, max_dim, index):
    X = random_heart_object(ctx, rng, max_dim)
    Y = random_heart_object(ctx, rng, max_dim)
    f = random_heart_map(ctx, rng, Y=X, max_dim=max_dim)
    out = [d for _, d in adjunction_check(ctx, X, Y, f).failures]
    out += [d for _, d in representability_check(ctx, X, Y).failures]
    return out


def case_lt2(ctx, rng, max_dim, index):
    return [d for _, d in lt2_sign_check(ctx, random_heart_map(ctx, rng, max_dim=max_dim)).failures]


def case_abelian_axioms(ctx, rng, max_dim, index):
    out = [d for _, d in abelian_axiom_check(ctx, random_n_mono(ctx, rng, max_dim, _strategy(rng)), "mono").failures]
    out += [d for _, d in abelian_axiom_check(ctx, random_n_epi(ctx, rng, max_dim, _strategy(rng)), "epi").failures]
    return out


def case_mono_pushout(ctx, rng, max_dim, index):
    f = random_n_mono(ctx, rng, max_dim, _strategy(rng))
    a = random_heart_map(ctx, rng, X=f.source, max_dim=max_dim)
    return [d for _, d in mono_pushout_check(ctx, f, a).failures]


def case_octahedron(ctx, rng, max_dim, index):
    f = random_heart_map(ctx, rng, max_dim=max_dim)
    f_ = random_heart_map(ctx, rng, X=f.target, max_dim=max_dim)
    return [d for _, d in octahedron_check(ctx, f, f_).failures]


def case_truncatedness(ctx, rng, max_dim, index):
    X = random_heart_object(ctx, rng, max_dim)
    Y = random_heart_object(ctx, rng, max_dim)
    return [d for _, d in truncatedness_check(ctx, X, Y).failures]


def case_heart_invariants(ctx, rng, max_dim, index):
    """Module-level invariants: kernel maps are n-monos, exactness consistency,
    composition of n-epis, cokernel of m versus cokernel of f, degenerate factorizations."""
    out = []
    f = random_heart_map(ctx, rng, max_dim=max_dim)
    if not is_m_mono(ctx, hker(ctx, f).k, ctx.n):
        out.append("kernel map is not an n-mono")
    for T in (hker(ctx, f).triple, hcoker(ctx, f).triple, random_conflation(ctx, rng, max_dim, _strategy(rng))):
        e = exactness_check(ctx, T)
        if e.short_exact != (e.left_exact and e.right_exact):
            out.append(f"exactness report inconsistent: {e}")
    e1 = random_n_epi(ctx, rng, max_dim, _strategy(rng))
    g = random_heart_map(ctx, rng, Y=e1.target, max_dim=max_dim)
    e2 = hcoker(ctx, g).q if rng.random() < 0.5 else factor_n1(ctx, as_chain_map(hcoker(ctx, g).q)).e
    if not is_m_epi(ctx, as_chain_map(e2 @ e1), ctx.n):
        out.append("composite of n-epis is not an n-epi")
    F = factor_1n(ctx, f)
    if quasi_inverse(cokernel_comparison(ctx, F)) is None:
        out.append("hcoker(m) is not equivalent to hcoker(f)")
    if is_m_mono(ctx, F.f, ctx.n) != (quasi_inverse(F.e) is not None):
        out.append("f n-mono does not match e quasi-isomorphism")
    if is_m_epi(ctx, F.f, 1) != (quasi_inverse(F.m) is not None):
        out.append("f 1-epi does not match m quasi-isomorphism")
    return out


Case = Callable[[HeartContext, np.random.Generator, int, int], list]

CHECKS: dict[str, Case] = {
    "factorization": case_factorization,
    "uniqueness": case_uniqueness,
    "classical": case_classical,
    "les": case_les,
    "adjunction": case_adjunction,
    "lt2": case_lt2,
    "abelian_axioms": case_abelian_axioms,
    "mono_pushout": case_mono_pushout,
    "octahedron": case_octahedron,
    "truncatedness": case_truncatedness,
    "heart_invariants": case_heart_invariants,
}


# -- the suite -----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteParams:
    n_list: tuple[int, ...] = (1, 2, 3)
    p_list: tuple[int, ...] = (2, 5)
    max_dim: int = 3
    cases: int = 100
    checks: tuple[str, ...] = tuple(CHECKS)


def sub_seed(seed: int, name: str, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}/{name}/{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def case_context(params: SuiteParams, index: int) -> HeartContext:
    n = params.n_list[index % len(params.n_list)]
    p = params.p_list[(index // len(params.n_list)) % len(params.p_list)]
    return HeartContext(n, p)


def run_case(name: str, case_seed: int, n: int, p: int, max_dim: int, index: int = 0) -> list[str]:
    """Run one case; exceptions are reported as failures."""
    ctx = HeartContext(n, p)
    rng = np.random.default_rng(case_seed)
    try:
        return list(CHECKS[name](ctx, rng, max_dim, index))
    except Exception as exc:  # a crash is a failed case, not a crashed suite
        return [f"exception {type(exc).__name__}: {exc}"]


def _run_batch(args) -> list[list[str]]:
    name, seed, params, indices = args
    out = []
    for i in indices:
        ctx = case_context(params, i)
        out.append(run_case(name, sub_seed(seed, name, i), ctx.n, ctx.p, params.max_dim, i))
    return out


def property_suite(seed: int, params: SuiteParams = SuiteParams(), jobs: int = 1,
                   counts: dict[str, int] | None = None) -> list[Report]:
    """Run every check; the result depends only on ``seed`` and ``params``."""
    reports = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for name in params.checks:
            if name not in CHECKS:
                raise ValueError(f"unknown check {name!r}")
            cases = params.cases if counts is None else counts.get(name, params.cases)
            t0 = time.perf_counter()
            report = Report(name, cases)
            if pool is None:
                results = _run_batch((name, seed, params, range(cases)))
            else:
                chunks = [range(s, min(cases, s + 8)) for s in range(0, cases, 8)]
                results = [r for batch in pool.map(_run_batch, [(name, seed, params, c) for c in chunks])
                           for r in batch]
            for i, fails in enumerate(results):
                ctx = case_context(params, i)
                for msg in fails:
                    report.fail(f"{sub_seed(seed, name, i)} (case {i}, n={ctx.n}, p={ctx.p})", msg)
            report.elapsed = time.perf_counter() - t0
            reports.append(report)
    finally:
        if pool is not None:
            pool.shutdown()
    return reports


# -- rendering -----------------------------------------------------------------------------------------

def render_text(reports: Sequence[Report], seed: int | None = None) -> str:
    """Line-oriented report; timings are left out so equal runs give equal bytes."""
    lines = [f"selftest seed={seed}" if seed is not None else "report"]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: {r.cases - len({s for s, _ in r.failures})}/{r.cases} cases passed")
        for s, msg in r.failures:
            lines.append(f"  failure seed={s}: {msg}")
    ok = all(r.passed for r in reports)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_json(reports: Sequence[Report], seed: int | None = None) -> str:
    doc = {
        "version": 1,
        "seed": seed,
        "checks": [
            {"name": r.name, "cases": r.cases, "passed": r.passed,
             "failures": [{"seed": s, "description": d} for s, d in r.failures]}
            for r in reports
        ],
        "passed": all(r.passed for r in reports),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
