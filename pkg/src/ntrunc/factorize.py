"""[1,n]- and [n,1]-factorizations of heart morphisms and their comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .complexes import (
    ChainMap, Complex, GradedMap, as_chain_map, cone, descend_through_quotient, direct_sum,
    graded_differential, into_cocone, lift_through_subcomplex, out_of_cone,
    random_chain_map, truncate, zero_map,
)
from .heart import HeartContext, hcoker, hker, is_m_epi, is_m_mono, require_heart
from .homcomplex import MapSystem, quasi_inverse

KINDS = ("1n", "n1")


@dataclass(frozen=True)
class Factorization:
    """``f ~ m o e`` through ``Z`` with ``D(eta) = f - m o e``."""

    e: ChainMap
    m: ChainMap
    eta: GradedMap
    kind: str
    f: ChainMap
    notes: tuple[str, ...] = field(default=())

    @property
    def Z(self) -> Complex:
        return self.e.target

    def residual(self) -> GradedMap:
        return graded_differential(self.eta) - (self.f - self.m @ self.e)


@dataclass(frozen=True)
class FactorizationReport:
    commutes: bool
    e_ok: bool
    m_ok: bool

    @property
    def ok(self) -> bool:
        return self.commutes and self.e_ok and self.m_ok


def check_factorization(ctx: HeartContext, F: Factorization) -> FactorizationReport:
    """``[1,n]``: e a 1-epi and m an n-mono; ``[n,1]``: e an n-epi and m a 1-mono."""
    commutes = F.residual().is_zero()
    if F.kind == "1n":
        return FactorizationReport(commutes, is_m_epi(ctx, F.e, 1), is_m_mono(ctx, F.m, ctx.n))
    return FactorizationReport(commutes, is_m_epi(ctx, F.e, ctx.n), is_m_mono(ctx, F.m, 1))


def normalize_source(ctx: HeartContext, f: ChainMap) -> tuple[ChainMap, list[str]]:
    """Replace the source by its ``tau_{<=0}`` when it has chains above degree 0."""
    X = f.source
    if X.is_zero() or X.hi <= 0:
        return f, []
    t = truncate(X, "le", 0)
    return as_chain_map(f @ t.structure), [f"source replaced by its tau<=0 (chains up to degree {X.hi})"]


def normalize_target(ctx: HeartContext, f: ChainMap) -> tuple[ChainMap, list[str]]:
    """Replace the target by its ``tau_{>=-n+1}`` when it has chains below the heart."""
    Y = f.target
    if Y.is_zero() or Y.lo >= ctx.bottom:
        return f, []
    t = truncate(Y, "ge", ctx.bottom)
    return as_chain_map(t.structure @ f), [f"target replaced by its tau>={ctx.bottom} (chains down to degree {Y.lo})"]


def factor_1n(ctx: HeartContext, f: ChainMap, basis_rng: np.random.Generator | None = None) -> Factorization:
    """``Z = hker(q)`` for the cokernel ``q`` of ``f``; ``e(x) = (f x, h^f x)``, ``m(y, c) = y``."""
    require_heart(ctx, f.source, f.target)
    f, notes = normalize_source(ctx, f)
    C = hcoker(ctx, f, basis_rng)
    K = hker(ctx, C.q, basis_rng)
    e = _lift_into_kernel(into_cocone(C.q, f, C.h), K)
    eta = zero_map(f.source, f.target, -1)
    return Factorization(e, K.k, eta, "1n", f, tuple(notes))


def _lift_into_kernel(raw: GradedMap, K) -> ChainMap:
    # the kernel object is a truncation of the cocone; rebuild its inclusion
    coc = raw.target
    inc = ChainMap(K.obj, coc, {i: np.vstack([K.k.comp(i), K.h.comp(i)]) for i in K.obj.degrees})
    e = lift_through_subcomplex(raw, inc)
    if e is None:
        raise AssertionError("e must land in tau<=0 of the cocone when the source lives in degrees <= 0")
    return as_chain_map(e)


def factor_n1(ctx: HeartContext, f: ChainMap, basis_rng: np.random.Generator | None = None) -> Factorization:
    """``Z = hcoker(k)`` for the kernel ``k`` of ``f``; ``m`` induced by ``(z, x) -> -h_f z + f x``."""
    require_heart(ctx, f.source, f.target)
    f, notes = normalize_target(ctx, f)
    K = hker(ctx, f, basis_rng)
    C = hcoker(ctx, K.k, basis_rng)
    c = out_of_cone(K.k, K.h, f)
    m = descend_through_quotient(c, C.proj)
    if m is None:
        raise AssertionError("m must factor through tau>= of the cone when the target lives in the heart window")
    eta = zero_map(f.source, f.target, -1)
    return Factorization(C.q, as_chain_map(m), eta, "n1", f, tuple(notes))


def factorize(ctx: HeartContext, f: ChainMap, kind: str = "1n", basis_rng=None) -> Factorization:
    if kind == "1n":
        return factor_1n(ctx, f, basis_rng)
    if kind == "n1":
        return factor_n1(ctx, f, basis_rng)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


# -- comparisons -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorComparison:
    """``t : Z -> Z'`` with ``D(h_e) = e' - t e``, ``D(h_m) = m - m' t`` and
    ``D(zeta) = m' h_e - h_m e + eta' - eta``."""

    t: ChainMap
    h_e: GradedMap
    h_m: GradedMap
    zeta: GradedMap

    def residuals(self, F: Factorization, F_: Factorization) -> list[GradedMap]:
        D = graded_differential
        return [
            D(self.t),
            D(self.h_e) - (F_.e - self.t @ F.e),
            D(self.h_m) - (F.m - F_.m @ self.t),
            D(self.zeta) - (F_.m @ self.h_e - self.h_m @ F.e + F_.eta - F.eta),
        ]

    def holds(self, F: Factorization, F_: Factorization) -> bool:
        return all(r.is_zero() for r in self.residuals(F, F_))


def compare_factorizations(ctx: HeartContext, F: Factorization, F_: Factorization,
                           seed: int | None = None) -> FactorComparison | None:
    """Solve jointly for ``(t, h_e, h_m, zeta)``.

    Without a seed the particular solution of the elimination is returned;
    with a seed the solution is drawn uniformly from the affine solution space.
    """
    if F.f.source != F_.f.source or F.f.target != F_.f.target:
        raise ValueError("factorizations of different maps")
    X, Y = F.f.source, F.f.target
    Z, Z_ = F.Z, F_.Z
    S = MapSystem(ctx.p)
    S.unknown("t", Z, Z_, 0)
    S.unknown("h_e", X, Z_, -1)
    S.unknown("h_m", Z, Y, -1)
    S.unknown("zeta", X, Y, -2)
    T = MapSystem.term
    S.equation(Z, Z_, 1, [T("t", d=True)])
    S.equation(X, Z_, 0, [T("h_e", d=True), T("t", right=F.e)], F_.e)
    S.equation(Z, Y, 0, [T("h_m", d=True), T("t", left=F_.m)], F.m)
    S.equation(X, Y, -1, [T("zeta", d=True), T("h_e", -1, left=F_.m), T("h_m", right=F.e)],
               F_.eta - F.eta)
    sol = S.solve(None if seed is None else np.random.default_rng(seed))
    if sol is None:
        return None
    return FactorComparison(as_chain_map(sol["t"]), sol["h_e"], sol["h_m"], sol["zeta"])


def transport(F: Factorization, phi: ChainMap) -> Factorization | None:
    """Move ``F`` along a quasi-isomorphism ``phi : Z -> Z~``.

    ``e' = phi e``, ``m' = m psi`` and ``eta' = eta + m h_s e`` where
    ``(psi, h_s, h_t)`` is a homotopy inverse of ``phi``.
    """
    q = quasi_inverse(phi)
    if q is None:
        return None
    psi, h_s, _ = q
    eta = F.eta + F.m @ h_s @ F.e
    return Factorization(as_chain_map(phi @ F.e), as_chain_map(F.m @ psi), eta, F.kind, F.f, F.notes)


def random_quasi_isomorphism(Z: Complex, rng: np.random.Generator, max_dim: int = 2) -> ChainMap:
    """``z -> (z, r z)`` into ``Z (+) Cone(id_W)`` for a random acyclic ``Cone(id_W)``."""
    from .complexes import identity_map, random_complex

    lo = Z.lo if Z.lo is not None else 0
    hi = Z.hi if Z.hi is not None else 0
    W = random_complex(0, max_dim, (lo - 1, hi), Z.p, rng=rng)
    A = cone(identity_map(W)).cone
    r = random_chain_map(Z, A, rng=rng)
    S = direct_sum(Z, A)
    return as_chain_map(S.incl[0] + S.incl[1] @ r)


def cokernel_comparison(ctx: HeartContext, F: Factorization) -> ChainMap:
    """The map ``hcoker(f) -> hcoker(m)`` induced by ``(x, y) -> (e x, y)`` on cones."""
    if not F.residual().is_zero() or not F.eta.is_zero():
        raise ValueError("needs a strictly commuting factorization")
    Cf, Cm = hcoker(ctx, F.f), hcoker(ctx, F.m)
    X, Y = F.f.source, F.f.target
    cf, cm = cone(F.f).cone, cone(F.m).cone
    comps = {}
    for i in cf.degrees:
        top = np.hstack([F.e.comp(i + 1), la.zeros(F.Z.dim(i + 1), Y.dim(i))])
        bot = np.hstack([la.zeros(Y.dim(i), X.dim(i + 1)), la.identity(Y.dim(i))])
        comps[i] = np.vstack([top, bot])
    Phi = ChainMap(cf, cm, comps)
    out = descend_through_quotient(Cm.proj @ Phi, Cf.proj)
    assert out is not None
    return as_chain_map(out)
