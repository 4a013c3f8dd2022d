"""The n-extended heart: complexes with cohomology in degrees ``[-n+1, 0]``.

Homotopies follow one convention throughout: a 3-term homotopy complex
``X -f-> Y -g-> Z`` carries ``h`` of degree -1 with ``D(h) = -g o f``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .complexes import (
    ChainMap, Complex, GradedMap, as_chain_map, betti, cocone, cone, descend_through_quotient,
    direct_sum, graded_differential, identity_map, induced_cohomology_map, into_cocone,
    lift_through_subcomplex, out_of_cone, shift, shift_map, truncate, zero_map,
)
from .homcomplex import solve_homotopy


class NotInHeart(ValueError):
    pass


@dataclass(frozen=True)
class HeartContext:
    n: int
    p: int = la.DEFAULT_PRIME

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        la.check_prime(self.p)

    @property
    def bottom(self) -> int:
        """Lowest degree where heart objects may carry cohomology."""
        return -self.n + 1


def in_heart(ctx: HeartContext, X: Complex) -> bool:
    return all(h == 0 for i, h in betti(X).items() if not ctx.bottom <= i <= 0)


def require_heart(ctx: HeartContext, *objs: Complex) -> None:
    for X in objs:
        if X.p != ctx.p:
            raise ValueError(f"object lives over F_{X.p}, context is F_{ctx.p}")
        if not in_heart(ctx, X):
            bad = {i: h for i, h in betti(X).items() if h and not ctx.bottom <= i <= 0}
            raise NotInHeart(f"cohomology outside [{ctx.bottom}, 0]: {bad}")


# -- loop and suspension -------------------------------------------------------------

def omega(ctx: HeartContext, x):
    """``tau_{<=0}(X[-1])`` on objects; the restricted shift on chain maps."""
    if isinstance(x, Complex):
        return truncate(shift(x, -1), "le", 0).obj
    f = x
    ts = truncate(shift(f.source, -1), "le", 0)
    tt = truncate(shift(f.target, -1), "le", 0)
    g = lift_through_subcomplex(shift_map(f, -1) @ ts.structure, tt.structure)
    assert g is not None, "a chain map sends cocycles to cocycles"
    return as_chain_map(g)


def sigma(ctx: HeartContext, x):
    """``tau_{>=-n+1}(X[1])`` on objects; the induced quotient map on chain maps."""
    if isinstance(x, Complex):
        return truncate(shift(x, 1), "ge", ctx.bottom).obj
    f = x
    ts = truncate(shift(f.source, 1), "ge", ctx.bottom)
    tt = truncate(shift(f.target, 1), "ge", ctx.bottom)
    g = descend_through_quotient(tt.structure @ shift_map(f, 1), ts.structure)
    assert g is not None, "a chain map sends coboundaries to coboundaries"
    return as_chain_map(g)


def loop_structure_map(ctx: HeartContext, X: Complex) -> GradedMap:
    """``h_X : Omega X -> X`` of degree -1: the truncation inclusion read in ``X``."""
    t = truncate(shift(X, -1), "le", 0)
    return GradedMap(t.obj, X, -1, t.structure.comps)


def susp_structure_map(ctx: HeartContext, X: Complex) -> GradedMap:
    """``h^X : X -> Sigma X`` of degree -1: the truncation projection read from ``X``."""
    t = truncate(shift(X, 1), "ge", ctx.bottom)
    return GradedMap(X, t.obj, -1, {i + 1: M for i, M in t.structure.comps.items()})


# -- 3-term complexes ------------------------------------------------------------------

@dataclass(frozen=True)
class ThreeTerm:
    f: ChainMap
    g: ChainMap
    h: GradedMap

    def residual(self) -> GradedMap:
        """``D(h) + g o f``; zero for a valid 3-term complex."""
        return graded_differential(self.h) + self.g @ self.f

    def is_valid(self) -> bool:
        return self.h.degree == -1 and self.residual().is_zero()


@dataclass(frozen=True)
class Exactness:
    left_exact: bool
    right_exact: bool
    short_exact: bool


def cone_comparison(T: ThreeTerm) -> ChainMap:
    """``c : Cone(f) -> Z``, ``c(x, y) = -h(x) + g(y)``."""
    return as_chain_map(out_of_cone(T.f, T.h, T.g))


def cocone_comparison(T: ThreeTerm) -> ChainMap:
    """``l : X -> Cone(g)[-1]``, ``l(x) = (f x, h x)``."""
    return as_chain_map(into_cocone(T.g, T.f, T.h))


def _iso_in_degrees(f: ChainMap, keep) -> bool:
    p = f.p
    degs = set(f.source.degrees) | set(f.target.degrees)
    for i in sorted(degs):
        if not keep(i):
            continue
        M = induced_cohomology_map(f, i)
        if M.shape[0] != M.shape[1] or la.rank(M, p) != M.shape[0]:
            return False
    return True


def exactness_check(ctx: HeartContext, T: ThreeTerm) -> Exactness:
    if not T.is_valid():
        raise ValueError("not a 3-term homotopy complex: D(h) != -g o f")
    c = cone_comparison(T)
    l = cocone_comparison(T)
    left = _iso_in_degrees(l, lambda i: i <= 0)
    right = _iso_in_degrees(c, lambda i: i >= ctx.bottom)
    short = _iso_in_degrees(c, lambda i: True)
    return Exactness(left, right, short)


@dataclass(frozen=True)
class Kernel:
    obj: Complex
    k: ChainMap        # K -> X
    h: GradedMap       # K -> Y, degree -1, D(h) = -f o k
    f: ChainMap

    @property
    def triple(self) -> ThreeTerm:
        return ThreeTerm(self.k, self.f, self.h)


@dataclass(frozen=True)
class Cokernel:
    obj: Complex
    q: ChainMap        # Y -> C
    h: GradedMap       # X -> C, degree -1, D(h) = -q o f
    f: ChainMap
    proj: ChainMap     # Cone(f) -> C, the truncation projection

    @property
    def triple(self) -> ThreeTerm:
        return ThreeTerm(self.f, self.q, self.h)


def hker(ctx: HeartContext, f: ChainMap, basis_rng: np.random.Generator | None = None) -> Kernel:
    """``tau_{<=0}(Cone(f)[-1])`` with ``k(x, y) = x`` and ``h_f(x, y) = y``."""
    require_heart(ctx, f.source, f.target)
    X, Y = f.source, f.target
    t = truncate(cocone(f), "le", 0, basis_rng)
    inc = t.structure
    k_comps, h_comps = {}, {}
    for i in t.obj.degrees:
        a = X.dim(i)
        M = inc.comp(i)
        k_comps[i] = M[:a]
        h_comps[i] = M[a:]
    return Kernel(t.obj, ChainMap(t.obj, X, k_comps), GradedMap(t.obj, Y, -1, h_comps), f)


def hcoker(ctx: HeartContext, f: ChainMap, basis_rng: np.random.Generator | None = None) -> Cokernel:
    """``tau_{>=-n+1}(Cone f)`` with ``q(y) = pi(0, y)`` and ``h^f(x) = -pi(x, 0)``."""
    require_heart(ctx, f.source, f.target)
    X = f.source
    cd = cone(f)
    t = truncate(cd.cone, "ge", ctx.bottom, basis_rng)
    pi = t.structure
    q = pi @ cd.incl
    h_comps = {}
    for i in X.degrees:
        P = pi.comp(i - 1)
        h_comps[i] = -P[:, :X.dim(i)]
    return Cokernel(t.obj, as_chain_map(q), GradedMap(X, t.obj, -1, h_comps), f, pi)


def kernel_cokernel_triangles(ctx: HeartContext, f: ChainMap):
    K, C = hker(ctx, f), hcoker(ctx, f)
    return (K.triple, exactness_check(ctx, K.triple)), (C.triple, exactness_check(ctx, C.triple))


# -- mono / epi ----------------------------------------------------------------------------

def _check_m(ctx: HeartContext, m: int) -> None:
    if not 1 <= m <= ctx.n:
        raise ValueError(f"m must lie in 1..{ctx.n}, got {m}")


def _cohomology_ranks(f: ChainMap):
    p = f.p
    degs = sorted(set(f.source.degrees) | set(f.target.degrees))
    for i in degs:
        M = induced_cohomology_map(f, i)
        yield i, M.shape, la.rank(M, p)


def is_m_mono(ctx: HeartContext, f: ChainMap, m: int) -> bool:
    """``H^{-m+1}(f)`` injective and ``H^i(f)`` bijective for ``i <= -m``."""
    _check_m(ctx, m)
    require_heart(ctx, f.source, f.target)
    for i, (r, c), rk in _cohomology_ranks(f):
        if i == -m + 1 and rk != c:
            return False
        if i <= -m and not (r == c == rk):
            return False
    return True


def is_m_epi(ctx: HeartContext, f: ChainMap, m: int) -> bool:
    """``H^{-n+m}(f)`` surjective and ``H^i(f)`` bijective for ``i >= -n+m+1``."""
    _check_m(ctx, m)
    require_heart(ctx, f.source, f.target)
    edge = -ctx.n + m
    for i, (r, c), rk in _cohomology_ranks(f):
        if i == edge and rk != r:
            return False
        if i > edge and not (r == c == rk):
            return False
    return True


# -- squares ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Square:
    """``B -g-> B'``, ``B -a-> A``, ``A -f-> A'``, ``B' -a'-> A'`` with ``D(s) = f a - a' g``."""

    a: ChainMap
    g: ChainMap
    f: ChainMap
    a_: ChainMap
    s: GradedMap

    def residual(self) -> GradedMap:
        return graded_differential(self.s) - (self.f @ self.a - self.a_ @ self.g)

    def is_valid(self) -> bool:
        return self.s.degree == -1 and self.residual().is_zero()

    def as_three_term(self) -> ThreeTerm:
        """``B -> A (+) B' -> A'`` with maps ``(a, g)`` and ``[f, -a']`` and homotopy ``-s``."""
        S = direct_sum(self.a.target, self.g.target)
        u = S.incl[0] @ self.a + S.incl[1] @ self.g
        v = self.f @ S.proj[0] - self.a_ @ S.proj[1]
        return ThreeTerm(as_chain_map(u), as_chain_map(v), -self.s)


def fiber_product(ctx: HeartContext, f: ChainMap, a_: ChainMap) -> Square:
    """Homotopy fiber product of ``A -f-> A' <-a'- B'`` via the kernel of ``f p_A - a' p_B'``."""
    S = direct_sum(f.source, a_.source)
    phi = as_chain_map(f @ S.proj[0] - a_ @ S.proj[1])
    K = hker(ctx, phi)
    a = as_chain_map(S.proj[0] @ K.k)
    g = as_chain_map(S.proj[1] @ K.k)
    return Square(a, g, f, a_, -K.h)


def pushout(ctx: HeartContext, f: ChainMap, a: ChainMap) -> Square:
    """Homotopy pushout of ``Y <-f- X -a-> X'``.

    Returned as the square ``X -a-> X'``, ``X -f-> Y``, ``Y -b-> C``, ``X' -f'-> C``
    with ``D(s) = b f - f' a``, ``b = -q i_Y`` and ``f' = q i_X'``.
    """
    S = direct_sum(f.target, a.target)
    psi = as_chain_map(S.incl[0] @ f + S.incl[1] @ a)
    C = hcoker(ctx, psi)
    b = as_chain_map(-(C.q @ S.incl[0]))
    f_ = as_chain_map(C.q @ S.incl[1])
    return Square(f, a, b, f_, C.h)


def is_heart_cartesian(ctx: HeartContext, sq: Square) -> bool:
    return exactness_check(ctx, sq.as_three_term()).left_exact


def is_heart_cocartesian(ctx: HeartContext, sq: Square) -> bool:
    return exactness_check(ctx, sq.as_three_term()).right_exact


# -- morphisms of 3-term complexes -------------------------------------------------------------

@dataclass(frozen=True)
class ThreeTermMorphism:
    """``(x, y, z, s, s', t)`` from ``source`` to ``target``."""

    x: ChainMap
    y: ChainMap
    z: ChainMap
    s: GradedMap
    s_: GradedMap
    t: GradedMap

    def residuals(self, src: ThreeTerm, dst: ThreeTerm) -> list[GradedMap]:
        D = graded_differential
        return [
            D(self.x), D(self.y), D(self.z),
            D(self.s) - (dst.f @ self.x - self.y @ src.f),
            D(self.s_) - (dst.g @ self.y - self.z @ src.g),
            D(self.t) - (self.z @ src.h - self.s_ @ src.f - dst.g @ self.s - dst.h @ self.x),
        ]

    def holds(self, src: ThreeTerm, dst: ThreeTerm) -> bool:
        return all(r.is_zero() for r in self.residuals(src, dst))


def morphism_witness(src: ThreeTerm, dst: ThreeTerm, x, y, z, s, s_) -> GradedMap | None:
    """Solve for ``t`` completing ``(x, y, z, s, s')`` to a morphism."""
    rhs = z @ src.h - s_ @ src.f - dst.g @ s - dst.h @ x
    return solve_homotopy(zero_map(rhs.source, rhs.target, rhs.degree), rhs)


# -- standard triangles ------------------------------------------------------------------------

@dataclass(frozen=True)
class LeftTriangle:
    """``Omega A0 -f2-> A2 -f1-> A1 -f0-> A0``.

    Stored homotopies satisfy ``D(h_f0) = -f0 f1``, ``D(h_f1) = -f1 f2`` and
    ``D(eta) = f0 h_f1 - h_f0 f2 - h_A0`` with ``h_A0`` the loop structure map.
    """

    f0: ChainMap
    f1: ChainMap
    f2: ChainMap
    h_f0: GradedMap
    h_f1: GradedMap
    eta: GradedMap
    h_A0: GradedMap

    def residuals(self) -> list[GradedMap]:
        D = graded_differential
        return [
            D(self.h_f0) + self.f0 @ self.f1,
            D(self.h_f1) + self.f1 @ self.f2,
            D(self.eta) - (self.f0 @ self.h_f1 - self.h_f0 @ self.f2 - self.h_A0),
        ]


@dataclass(frozen=True)
class RightTriangle:
    """``A0 -f0-> A1 -f1-> A2 -f2-> Sigma A0``.

    Stored homotopies satisfy ``D(h_f0) = -f1 f0``, ``D(h_f1) = -f2 f1`` and
    ``D(eta) = h^A0 + f2 h_f0 - h_f1 f0`` with ``h^A0`` the suspension structure map.
    """

    f0: ChainMap
    f1: ChainMap
    f2: ChainMap
    h_f0: GradedMap
    h_f1: GradedMap
    eta: GradedMap
    h_A0: GradedMap

    def residuals(self) -> list[GradedMap]:
        D = graded_differential
        return [
            D(self.h_f0) + self.f1 @ self.f0,
            D(self.h_f1) + self.f2 @ self.f1,
            D(self.eta) - (self.h_A0 + self.f2 @ self.h_f0 - self.h_f1 @ self.f0),
        ]


# Sign of the connecting map Omega A0 -> hker(f0), a -> (0, CONNECT_SIGN * a).
CONNECT_SIGN = -1


def standard_left_triangle(ctx: HeartContext, f: ChainMap) -> LeftTriangle:
    K = hker(ctx, f)
    A1, A0 = f.source, f.target
    lt = truncate(shift(A0, -1), "le", 0)
    coc = cocone(f)
    comps = {i: np.vstack([la.zeros(A1.dim(i), M.shape[1]), CONNECT_SIGN * M])
             for i, M in lt.structure.comps.items()}
    into = ChainMap(lt.obj, coc, comps)
    f2 = lift_through_subcomplex(into, truncate(coc, "le", 0).structure)
    assert f2 is not None
    f2 = ChainMap(lt.obj, K.obj, f2.comps)
    h_A0 = loop_structure_map(ctx, A0)
    return LeftTriangle(f, K.k, f2, K.h, zero_map(lt.obj, A1, -1), zero_map(lt.obj, A0, -2), h_A0)


def standard_right_triangle(ctx: HeartContext, f: ChainMap) -> RightTriangle:
    C = hcoker(ctx, f)
    cd = cone(f)
    A0 = f.source
    st = truncate(shift(A0, 1), "ge", ctx.bottom)
    f2 = descend_through_quotient(st.structure @ cd.proj, C.proj)
    assert f2 is not None
    f2 = as_chain_map(f2)
    return RightTriangle(f, C.q, f2, C.h, zero_map(f.target, st.obj, -1), zero_map(A0, st.obj, -2),
                         susp_structure_map(ctx, A0))


def standard_triangles(ctx: HeartContext, f: ChainMap) -> tuple[LeftTriangle, RightTriangle]:
    return standard_left_triangle(ctx, f), standard_right_triangle(ctx, f)


# -- octahedron ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Octahedron:
    ker_f: Kernel
    ker_f_: Kernel
    square: Square            # K -> A, K -> Ker f', s'
    K: Complex
    k: ChainMap               # K -> A
    u: ChainMap               # Ker f -> K
    v: ChainMap               # K -> Ker f'
    h: GradedMap              # Ker f -> Ker f', degree -1
    s: GradedMap              # Ker f -> A, degree -1
    s_: GradedMap             # K -> A', degree -1
    h__: GradedMap            # K -> A'', degree -1
    t: GradedMap              # Ker f -> A', degree -2
    t_: GradedMap             # Ker f -> A'', degree -2

    def column(self) -> ThreeTerm:
        return ThreeTerm(self.u, self.v, self.h)

    def morphisms(self):
        """The three morphisms of 3-term complexes with their endpoints."""
        kf, kf_ = self.ker_f, self.ker_f_
        f, f_ = kf.f, kf_.f
        mid = ThreeTerm(self.k, as_chain_map(f_ @ f), self.h__)
        Kf = kf.obj
        A = f.source
        A__ = f_.target
        m1 = ThreeTermMorphism(identity_map(Kf), self.k, kf_.k, self.s, self.s_, self.t)
        m2 = ThreeTermMorphism(self.v, f, identity_map(A__), -self.s_,
                               zero_map(A, A__, -1), zero_map(self.K, A__, -2))
        m3 = ThreeTermMorphism(self.u, identity_map(A), f_, -self.s,
                               zero_map(A, A__, -1), self.t_)
        return [(m1, self.column(), kf.triple), (m2, mid, kf_.triple), (m3, kf.triple, mid)]

    def residuals(self) -> list[GradedMap]:
        out = [graded_differential(self.h) + self.v @ self.u, self.square.residual()]
        for m, src, dst in self.morphisms():
            out.extend(m.residuals(src, dst))
        return out


class SolverFailure(RuntimeError):
    pass


def octahedron(ctx: HeartContext, f: ChainMap, f_: ChainMap) -> Octahedron:
    kf, kf_ = hker(ctx, f), hker(ctx, f_)
    sq = fiber_product(ctx, f, kf_.k)
    K = sq.a.source
    S = direct_sum(f.source, kf_.obj)
    phi = as_chain_map(f @ S.proj[0] - kf_.k @ S.proj[1])
    # u(z) = (k_f z, 0, h_f z) into the cocone of phi, then into its truncation
    raw = into_cocone(phi, S.incl[0] @ kf.k, kf.h)
    u = lift_through_subcomplex(raw, truncate(cocone(phi), "le", 0).structure)
    if u is None:
        raise SolverFailure("u does not land in the truncated cocone")
    u = ChainMap(kf.obj, K, u.comps)
    v = sq.g
    h = zero_map(kf.obj, kf_.obj, -1)
    s = zero_map(kf.obj, f.source, -1)
    s_ = sq.s
    h__ = kf_.h @ v - f_ @ s_
    col = ThreeTerm(u, v, h)
    t = morphism_witness(col, kf.triple, identity_map(kf.obj), sq.a, kf_.k, s, s_)
    mid = ThreeTerm(sq.a, as_chain_map(f_ @ f), h__)
    t_ = morphism_witness(kf.triple, mid, u, identity_map(f.source), f_, -s,
                          zero_map(f.source, f_.target, -1))
    if t is None or t_ is None:
        raise SolverFailure("no degree -2 witness for the octahedron morphisms")
    return Octahedron(kf, kf_, sq, K, sq.a, u, v, h, s, s_, h__, t, t_)


# -- random heart data -------------------------------------------------------------------------

def random_heart_object(ctx: HeartContext, rng: np.random.Generator, max_dim: int = 3,
                        pad: bool = True) -> Complex:
    """A random complex supported in ``[-n+1, 0]``, optionally plus a contractible summand.

    The summand ``k^a = k^a`` sits in degrees ``j, j+1`` with ``j`` in ``[-n, 0]``,
    so it can poke one degree outside the heart window at either end.
    """
    from .complexes import interval, random_complex

    X = random_complex(0, max_dim, (ctx.bottom, 0), ctx.p, rng=rng)
    if pad and max_dim > 0 and rng.random() < 0.5:
        a = int(rng.integers(1, max_dim + 1))
        j = int(rng.integers(-ctx.n, 1))
        X = direct_sum(X, interval(ctx.p, j, la.identity(a))).obj
    return X


def random_heart_map(ctx: HeartContext, rng: np.random.Generator, X: Complex | None = None,
                     Y: Complex | None = None, max_dim: int = 3) -> ChainMap:
    from .complexes import random_chain_map

    X = X if X is not None else random_heart_object(ctx, rng, max_dim)
    Y = Y if Y is not None else random_heart_object(ctx, rng, max_dim)
    return random_chain_map(X, Y, rng=rng)
