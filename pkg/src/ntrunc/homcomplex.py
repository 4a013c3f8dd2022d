"""The hom complex Hom(X, Y) and linear solvers over it.

A graded map of degree ``k`` is encoded as one coordinate vector: its
components are listed by ascending source degree, each flattened row-major.
With that layout ``vec(A @ phi @ B) = kron(A, B.T) @ vec(phi)``, which is how
every composition and differential below becomes an explicit matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import exactla as la
from .complexes import ChainMap, Complex, GradedMap, zero_map


class MapSpace:
    """Coordinates on the space of degree-``degree`` graded maps ``source -> target``."""

    __slots__ = ("source", "target", "degree", "blocks", "size")

    def __init__(self, source: Complex, target: Complex, degree: int):
        self.source, self.target, self.degree = source, target, int(degree)
        self.blocks: dict[int, tuple[int, int, int]] = {}  # i -> (offset, rows, cols)
        off = 0
        for i in source.degrees:
            r, c = target.dim(i + self.degree), source.dim(i)
            if r and c:
                self.blocks[i] = (off, r, c)
                off += r * c
        self.size = off

    def encode(self, phi: GradedMap) -> np.ndarray:
        if phi.degree != self.degree:
            raise ValueError("degree mismatch")
        v = np.zeros(self.size, dtype=np.int64)
        for i, (off, r, c) in self.blocks.items():
            M = phi.comps.get(i)
            if M is not None:
                v[off:off + r * c] = M.reshape(-1)
        return v

    def decode(self, v: np.ndarray) -> GradedMap:
        comps = {i: np.asarray(v[off:off + r * c]).reshape(r, c)
                 for i, (off, r, c) in self.blocks.items()}
        if self.degree == 0:
            return ChainMap(self.source, self.target, comps)
        return GradedMap(self.source, self.target, self.degree, comps)


def _identity_or(M: np.ndarray | None, n: int) -> np.ndarray:
    return la.identity(n) if M is None else M


def composition_matrix(space: MapSpace, left: GradedMap | None = None,
                       right: GradedMap | None = None) -> tuple[np.ndarray, MapSpace]:
    """Matrix of ``phi -> left o phi o right`` on ``space`` and its codomain space."""
    S = right.source if right is not None else space.source
    T = left.target if left is not None else space.target
    b = right.degree if right is not None else 0
    a = left.degree if left is not None else 0
    k = space.degree
    out = MapSpace(S, T, k + a + b)
    M = la.zeros(out.size, space.size)
    for i, (oo, orows, ocols) in out.blocks.items():
        j = i + b
        src = space.blocks.get(j)
        if src is None:
            continue
        io, irows, icols = src
        L = _identity_or(None if left is None else left.comp(j + k), irows)
        R = _identity_or(None if right is None else right.comp(i), icols)
        if not L.any() or not R.any():
            continue
        M[oo:oo + orows * ocols, io:io + irows * icols] = np.kron(L, R.T)
    p = space.source.p
    return M % p, out


def hom_differential_matrix(X: Complex, Y: Complex, k: int) -> np.ndarray:
    """Matrix of ``D : Hom^k(X, Y) -> Hom^{k+1}(X, Y)``."""
    src, dst = MapSpace(X, Y, k), MapSpace(X, Y, k + 1)
    M = la.zeros(dst.size, src.size)
    sign = -1 if k % 2 == 0 else 1
    for i, (oo, r, c) in dst.blocks.items():
        blk = src.blocks.get(i)
        if blk is not None and (i + k) in Y.diffs:
            io, ir, ic = blk
            M[oo:oo + r * c, io:io + ir * ic] += np.kron(Y.diffs[i + k], la.identity(ic))
        blk = src.blocks.get(i + 1)
        if blk is not None and i in X.diffs:
            io, ir, ic = blk
            M[oo:oo + r * c, io:io + ir * ic] += sign * np.kron(la.identity(ir), X.diffs[i].T)
    return M % X.p


class HomComplex:
    """``Hom(X, Y)`` as an explicit complex over all degrees where it is nonzero."""

    def __init__(self, X: Complex, Y: Complex):
        self.source, self.target = X, Y
        self.spaces: dict[int, MapSpace] = {}
        if X.is_zero() or Y.is_zero():
            self.as_complex = Complex(X.p)
            return
        lo, hi = Y.lo - X.hi, Y.hi - X.lo
        for k in range(lo - 1, hi + 2):
            self.spaces[k] = MapSpace(X, Y, k)
        dims = {k: s.size for k, s in self.spaces.items()}
        diffs = {k: hom_differential_matrix(X, Y, k) for k in range(lo, hi)}
        self.as_complex = Complex(X.p, dims, diffs)

    def space(self, k: int) -> MapSpace:
        s = self.spaces.get(k)
        return s if s is not None else MapSpace(self.source, self.target, k)

    def encode(self, phi: GradedMap) -> np.ndarray:
        return self.space(phi.degree).encode(phi)

    def decode(self, k: int, v: np.ndarray) -> GradedMap:
        return self.space(k).decode(v)


def hom_complex(X: Complex, Y: Complex) -> HomComplex:
    return HomComplex(X, Y)


def hom_cohomology_dims(X: Complex, Y: Complex, degrees: Sequence[int] | None = None) -> dict[int, int]:
    """``dim H^i(Hom(X, Y))``; all nonzero degrees when ``degrees`` is omitted."""
    p = X.p
    if degrees is None:
        if X.is_zero() or Y.is_zero():
            return {}
        degrees = range(Y.lo - X.hi, Y.hi - X.lo + 1)
    out = {}
    for k in degrees:
        n = MapSpace(X, Y, k).size
        out[k] = n - la.rank(hom_differential_matrix(X, Y, k), p) - la.rank(hom_differential_matrix(X, Y, k - 1), p)
    return out


@dataclass(frozen=True)
class HomClasses:
    """``H^k(Hom(X, Y))`` presented as a subquotient of ``Hom^k``."""

    space: MapSpace
    proj: np.ndarray
    section: np.ndarray
    dim: int


def hom_classes(X: Complex, Y: Complex, k: int) -> HomClasses:
    p = X.p
    space = MapSpace(X, Y, k)
    Z = la.kernel_basis(hom_differential_matrix(X, Y, k), p)
    B = hom_differential_matrix(X, Y, k - 1)
    sq = la.subquotient(space.size, Z, B, p)
    return HomClasses(space, sq.proj, sq.section, sq.dim)


def induced_hom_map(src: HomClasses, dst: HomClasses, op: np.ndarray, p: int) -> np.ndarray:
    """Matrix of a cochain-level operator ``op`` on the cohomology classes."""
    if src.dim == 0 or dst.dim == 0:
        return la.zeros(dst.dim, src.dim)
    return la.matmul(dst.proj, la.matmul(op, src.section, p), p)


def post_composition_on_classes(T: Complex, g: GradedMap, k: int) -> np.ndarray:
    """``H^k(Hom(T, Y)) -> H^{k+|g|}(Hom(T, Y'))``, ``phi -> g o phi``, for closed ``g``."""
    src = hom_classes(T, g.source, k)
    op, _ = composition_matrix(src.space, left=g)
    dst = hom_classes(T, g.target, k + g.degree)
    return induced_hom_map(src, dst, op, T.p)


def pre_composition_on_classes(g: GradedMap, W: Complex, k: int) -> np.ndarray:
    """``H^k(Hom(Y, W)) -> H^{k+|g|}(Hom(X, W))``, ``phi -> phi o g``, for closed ``g``."""
    src = hom_classes(g.target, W, k)
    op, _ = composition_matrix(src.space, right=g)
    dst = hom_classes(g.source, W, k + g.degree)
    return induced_hom_map(src, dst, op, W.p)


# -- linear systems in graded maps ----------------------------------------------

@dataclass
class _Term:
    coeff: int
    unknown: str
    left: GradedMap | None
    right: GradedMap | None
    differentiated: bool


@dataclass
class _Equation:
    space: MapSpace
    terms: list[_Term]
    rhs: GradedMap | None


@dataclass
class MapSystem:
    """Linear equations whose unknowns are graded maps.

    Each equation reads ``sum coeff * L o U o R (or L o D(U) o R) = rhs``.
    """

    p: int
    unknowns: dict[str, MapSpace] = field(default_factory=dict)
    equations: list[_Equation] = field(default_factory=list)

    def unknown(self, name: str, source: Complex, target: Complex, degree: int) -> str:
        self.unknowns[name] = MapSpace(source, target, degree)
        return name

    @staticmethod
    def term(unknown: str, coeff: int = 1, left: GradedMap | None = None,
             right: GradedMap | None = None, d: bool = False) -> _Term:
        return _Term(coeff, unknown, left, right, d)

    def equation(self, source: Complex, target: Complex, degree: int,
                 terms: Sequence[_Term], rhs: GradedMap | None = None) -> None:
        self.equations.append(_Equation(MapSpace(source, target, degree), list(terms), rhs))

    def _columns(self) -> dict[str, int]:
        offs, off = {}, 0
        for name, sp in self.unknowns.items():
            offs[name] = off
            off += sp.size
        return offs

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        p = self.p
        offs = self._columns()
        ncols = sum(sp.size for sp in self.unknowns.values())
        rows_M, rows_B = [], []
        for eq in self.equations:
            M = la.zeros(eq.space.size, ncols)
            for t in eq.terms:
                sp = self.unknowns[t.unknown]
                op = None
                base = sp
                if t.differentiated:
                    op = hom_differential_matrix(sp.source, sp.target, sp.degree)
                    base = MapSpace(sp.source, sp.target, sp.degree + 1)
                C, out = composition_matrix(base, t.left, t.right)
                if out.degree != eq.space.degree:
                    raise ValueError(f"term of degree {out.degree} in an equation of degree {eq.space.degree}")
                if op is not None:
                    C = la.matmul(C, op, p)
                o = offs[t.unknown]
                M[:, o:o + sp.size] += t.coeff * C
            rows_M.append(M % p)
            rows_B.append(eq.space.encode(eq.rhs) if eq.rhs is not None else np.zeros(eq.space.size, np.int64))
        if not rows_M:
            return la.zeros(0, ncols), la.zeros(0, 1)
        return np.vstack(rows_M), np.concatenate(rows_B).reshape(-1, 1) % p

    def solve(self, rng: np.random.Generator | None = None) -> dict[str, GradedMap] | None:
        """One solution, or ``None``; ``rng`` samples uniformly from all solutions."""
        M, B = self.matrices()
        sol = la.solve_affine(M, B, self.p)
        if sol is None:
            return None
        x = sol.particular if rng is None else sol.sample(rng, self.p)
        x = x[:, 0]
        out, offs = {}, self._columns()
        for name, sp in self.unknowns.items():
            out[name] = sp.decode(x[offs[name]:offs[name] + sp.size])
        return out


def solve_homotopy(f: GradedMap, g: GradedMap) -> GradedMap | None:
    """``h`` of degree ``|f| - 1`` with ``D(h) = g - f``, or ``None``."""
    if f.degree != g.degree or f.source != g.source or f.target != g.target:
        raise ValueError("maps must share source, target and degree")
    k = f.degree - 1
    space = MapSpace(f.source, f.target, k)
    diff = g - f
    if space.size == 0:
        return zero_map(f.source, f.target, k) if diff.is_zero() else None
    M = hom_differential_matrix(f.source, f.target, k)
    rhs = MapSpace(f.source, f.target, k + 1).encode(diff)
    x = la.solve_linear(M, rhs, f.p)
    return None if x is None else space.decode(x[:, 0])


def is_nullhomotopic(phi: GradedMap) -> bool:
    return solve_homotopy(zero_map(phi.source, phi.target, phi.degree), phi) is not None


# -- deformation retracts onto cohomology ------------------------------------------

@dataclass(frozen=True)
class Retract:
    """``X`` retracted onto its cohomology ``H`` (zero differential).

    ``incl o proj`` is homotopic to the identity via ``h``:
    ``D(h) = id - incl o proj`` and ``proj o incl = id``.
    """

    X: Complex
    H: Complex
    incl: ChainMap
    proj: ChainMap
    h: GradedMap


def retract(X: Complex) -> Retract:
    """Split each ``X^i`` as boundaries + cohomology + a complement of the cocycles."""
    p = X.p
    pivots = {i: la.rref(X.d(i), p)[1] if X.dim(i) and X.dim(i + 1) else [] for i in X.degrees}
    incl, proj, hdims, h = {}, {}, {}, {}
    for i in X.degrees:
        n = X.dim(i)
        Z = la.kernel_basis(X.d(i), p) if X.dim(i + 1) else la.identity(n)
        prev = pivots.get(i - 1, [])
        B = X.d(i - 1)[:, prev] if prev else la.zeros(n, 0)
        sq = la.subquotient(n, Z, B, p)
        C = la.identity(n)[:, pivots[i]]
        P = np.hstack([B, sq.section, C])
        Q = la.inverse(P, p)
        assert Q is not None, "boundary, cohomology and complement bases must span"
        nb, nh = B.shape[1], sq.dim
        hdims[i] = nh
        incl[i] = sq.section
        proj[i] = Q[nb:nb + nh]
        if nb:
            h[i] = la.matmul(la.identity(X.dim(i - 1))[:, prev], Q[:nb], p)
    H = Complex(p, hdims)
    return Retract(X, H, ChainMap(H, X, incl), ChainMap(X, H, proj), GradedMap(X, X, -1, h))


def cohomology_matrix(f: ChainMap, rs: Retract | None = None, rt: Retract | None = None) -> dict[int, np.ndarray]:
    """``H(f)`` in the bases fixed by the retracts of source and target."""
    rs = rs or retract(f.source)
    rt = rt or retract(f.target)
    return {i: (rt.proj @ f @ rs.incl).comp(i) for i in sorted(set(rs.H.degrees) | set(rt.H.degrees))}


@dataclass(frozen=True)
class QuasiInverse:
    g: ChainMap
    h_s: GradedMap   # D(h_s) = id - g o f
    h_t: GradedMap   # D(h_t) = id - f o g

    def __iter__(self):
        return iter((self.g, self.h_s, self.h_t))


def quasi_inverse(f: ChainMap) -> QuasiInverse | None:
    """A homotopy inverse of ``f`` with both homotopies, if ``f`` is a quasi-isomorphism."""
    p = f.p
    X, Y = f.source, f.target
    if X.dims == Y.dims:
        # an isomorphism of complexes inverts strictly
        inv = {i: la.inverse(f.comp(i), p) for i in X.degrees}
        if all(M is not None for M in inv.values()):
            return QuasiInverse(ChainMap(Y, X, inv), zero_map(X, X, -1), zero_map(Y, Y, -1))
    rs, rt = retract(X), retract(Y)
    if rs.H.dims != rt.H.dims:
        return None
    Hf = cohomology_matrix(f, rs, rt)
    inv = {}
    for i, M in Hf.items():
        Mi = la.inverse(M, p)
        if Mi is None:
            return None
        inv[i] = Mi
    Hinv = ChainMap(rt.H, rs.H, inv)
    g = rs.incl @ Hinv @ rt.proj
    h_s = (identity(X) - g @ f) @ rs.h
    # f o incl_X o H(f)^-1 - incl_Y is closed with zero class, hence h_Y o (it) bounds it
    u = rt.h @ (f @ rs.incl @ Hinv - rt.incl)
    h_t = rt.h - u @ rt.proj
    return QuasiInverse(g, h_s, h_t)


def identity(X: Complex) -> ChainMap:
    return ChainMap(X, X, {i: la.identity(n) for i, n in X.dims.items()})


def homotopy_equivalent(X: Complex, Y: Complex) -> bool:
    """Over a field, bounded complexes are homotopy equivalent iff their cohomology dims agree."""
    return retract(X).H.dims == retract(Y).H.dims
