"""Bounded cochain complexes of finite-dimensional F_p vector spaces.

Sign conventions (fixed once, used everywhere):

* differentials raise degree by one;
* ``X[k]`` has ``X[k]^i = X^{i+k}`` and differential ``(-1)^k d_X``;
* ``Cone(f)^i = X^{i+1} (+) Y^i`` with differential ``[[-d_X, 0], [f, d_Y]]``;
* a graded map ``phi`` of degree ``k`` has ``D(phi) = d o phi - (-1)^k phi o d``.

Composition of graded maps is plain composition of components; ``D`` is a
derivation for it: ``D(g f) = D(g) f + (-1)^|g| g D(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import exactla as la


class Complex:
    """A bounded cochain complex.

    ``dims`` maps degree to dimension; ``diffs[i]`` is the matrix of
    ``d^i : X^i -> X^{i+1}`` with shape ``(dim(i+1), dim(i))``.  Degrees with
    dimension zero are dropped, and so are differentials touching them.
    The constructor does not check ``d o d = 0``; see :func:`validate`.
    """

    __slots__ = ("p", "dims", "diffs")

    def __init__(self, p: int, dims: Mapping[int, int] | None = None,
                 diffs: Mapping[int, np.ndarray] | None = None):
        self.p = int(p)
        self.dims = {int(i): int(n) for i, n in sorted((dims or {}).items()) if n}
        if any(n < 0 for n in self.dims.values()):
            raise ValueError("negative dimension")
        self.diffs: dict[int, np.ndarray] = {}
        for i, M in sorted((diffs or {}).items()):
            i = int(i)
            M = la.reduce(M, self.p)
            shape = (self.dim(i + 1), self.dim(i))
            if M.size == 0 and 0 in shape:
                continue
            if M.shape != shape:
                raise ValueError(f"differential at degree {i} has shape {M.shape}, expected {shape}")
            if M.any():
                self.diffs[i] = M

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def d(self, i: int) -> np.ndarray:
        M = self.diffs.get(i)
        if M is None:
            return la.zeros(self.dim(i + 1), self.dim(i))
        return M

    @property
    def degrees(self) -> list[int]:
        return list(self.dims)

    @property
    def lo(self) -> int | None:
        return min(self.dims) if self.dims else None

    @property
    def hi(self) -> int | None:
        return max(self.dims) if self.dims else None

    def is_zero(self) -> bool:
        return not self.dims

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.p == other.p and self.dims == other.dims
                and self.diffs.keys() == other.diffs.keys()
                and all(np.array_equal(self.diffs[i], other.diffs[i]) for i in self.diffs))

    __hash__ = None

    def __repr__(self) -> str:
        parts = ", ".join(f"{i}:{n}" for i, n in self.dims.items())
        return f"Complex(p={self.p}, dims={{{parts}}})"


def zero_complex(p: int) -> Complex:
    return Complex(p)


def point(p: int, degree: int = 0, dim: int = 1) -> Complex:
    """``k^dim`` concentrated in a single degree."""
    return Complex(p, {degree: dim})


def interval(p: int, lo: int, matrix) -> Complex:
    """Two-term complex ``k^a -> k^b`` in degrees ``lo, lo + 1``."""
    M = la.reduce(matrix, p)
    return Complex(p, {lo: M.shape[1], lo + 1: M.shape[0]}, {lo: M})


@dataclass(frozen=True)
class Violation:
    degree: int
    message: str

    def __str__(self) -> str:
        return f"degree {self.degree}: {self.message}"


def validate(X: Complex) -> Violation | None:
    """``None`` if ``X`` is a complex, else the first failing degree."""
    for i in sorted(X.diffs):
        M = X.diffs[i]
        if M.shape != (X.dim(i + 1), X.dim(i)):
            return Violation(i, f"differential has shape {M.shape}")
    for i in X.degrees:
        if i + 1 in X.diffs and i in X.diffs:
            if la.matmul(X.d(i + 1), X.d(i), X.p).any():
                return Violation(i, f"d^{i + 1} o d^{i} != 0")
    return None


class GradedMap:
    """A degree-``k`` graded map; ``comps[i]`` maps ``X^i`` to ``Y^{i+k}``."""

    __slots__ = ("source", "target", "degree", "comps")

    def __init__(self, source: Complex, target: Complex, degree: int,
                 comps: Mapping[int, np.ndarray] | None = None):
        if source.p != target.p:
            raise ValueError("source and target live over different fields")
        self.source = source
        self.target = target
        self.degree = int(degree)
        p = source.p
        self.comps: dict[int, np.ndarray] = {}
        for i, M in sorted((comps or {}).items()):
            i = int(i)
            shape = (target.dim(i + self.degree), source.dim(i))
            M = la.reduce(M, p)
            if M.size == 0 and 0 in shape:
                continue
            if M.shape != shape:
                raise ValueError(f"component {i} has shape {M.shape}, expected {shape}")
            if M.any():
                self.comps[i] = M

    @property
    def p(self) -> int:
        return self.source.p

    def comp(self, i: int) -> np.ndarray:
        M = self.comps.get(i)
        if M is None:
            return la.zeros(self.target.dim(i + self.degree), self.source.dim(i))
        return M

    def _new(self, degree, comps):
        if degree == 0 and isinstance(self, ChainMap):
            return ChainMap(self.source, self.target, comps)
        return GradedMap(self.source, self.target, degree, comps)

    def _check_parallel(self, other: GradedMap):
        if (other.source is not self.source and other.source != self.source) or \
           (other.target is not self.target and other.target != self.target) or \
           other.degree != self.degree:
            raise ValueError("maps are not parallel")

    def __add__(self, other: GradedMap) -> GradedMap:
        self._check_parallel(other)
        keys = set(self.comps) | set(other.comps)
        out = {i: self.comp(i) + other.comp(i) for i in keys}
        if isinstance(self, ChainMap) and isinstance(other, ChainMap):
            return ChainMap(self.source, self.target, out)
        return GradedMap(self.source, self.target, self.degree, out)

    def __neg__(self) -> GradedMap:
        return self._new(self.degree, {i: -M for i, M in self.comps.items()})

    def __sub__(self, other: GradedMap) -> GradedMap:
        return self + (-other)

    def __rmul__(self, c: int) -> GradedMap:
        return self._new(self.degree, {i: int(c) * M for i, M in self.comps.items()})

    def __matmul__(self, other: GradedMap) -> GradedMap:
        """Composition ``self o other``."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("maps are not composable")
        p = self.p
        k = other.degree
        out = {}
        for i, M in other.comps.items():
            L = self.comps.get(i + k)
            if L is not None:
                out[i] = la.matmul(L, M, p)
        degree = self.degree + other.degree
        if isinstance(self, ChainMap) and isinstance(other, ChainMap):
            return ChainMap(other.source, self.target, out)
        return GradedMap(other.source, self.target, degree, out)

    def is_zero(self) -> bool:
        return not self.comps

    def equals(self, other: GradedMap) -> bool:
        return self.degree == other.degree and (self - other).is_zero()

    def is_closed(self) -> bool:
        return graded_differential(self).is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, {self.source!r} -> {self.target!r})"


class ChainMap(GradedMap):
    """A degree-0 graded map; commutation is checked by :meth:`is_closed`."""

    __slots__ = ()

    def __init__(self, source: Complex, target: Complex,
                 comps: Mapping[int, np.ndarray] | None = None):
        super().__init__(source, target, 0, comps)


def as_chain_map(phi: GradedMap) -> ChainMap:
    if phi.degree != 0:
        raise ValueError("only degree-0 maps can be chain maps")
    return ChainMap(phi.source, phi.target, phi.comps)


def identity_map(X: Complex) -> ChainMap:
    return ChainMap(X, X, {i: la.identity(n) for i, n in X.dims.items()})


def zero_map(X: Complex, Y: Complex, degree: int = 0) -> GradedMap:
    if degree == 0:
        return ChainMap(X, Y)
    return GradedMap(X, Y, degree)


def graded_differential(phi: GradedMap) -> GradedMap:
    """``D(phi) = d_Y o phi - (-1)^k phi o d_X``, a map of degree ``k + 1``."""
    X, Y, k, p = phi.source, phi.target, phi.degree, phi.p
    sign = -1 if k % 2 == 0 else 1
    out = {}
    degs = set(X.degrees) | {i - 1 for i in X.degrees}
    for i in degs:
        acc = la.zeros(Y.dim(i + k + 1), X.dim(i))
        if acc.size == 0:
            continue
        M = phi.comps.get(i)
        if M is not None and (i + k) in Y.diffs:
            acc += la.matmul(Y.diffs[i + k], M, p)
        N = phi.comps.get(i + 1)
        if N is not None and i in X.diffs:
            acc += sign * la.matmul(N, X.diffs[i], p)
        out[i] = acc
    return GradedMap(X, Y, k + 1, out)


def is_chain_map(f: GradedMap) -> bool:
    return f.degree == 0 and graded_differential(f).is_zero()


# -- shifts, sums, cones -----------------------------------------------------

def shift(X: Complex, k: int) -> Complex:
    sign = -1 if k % 2 else 1
    return Complex(X.p, {i - k: n for i, n in X.dims.items()},
                   {i - k: sign * M for i, M in X.diffs.items()})


def shift_map(phi: GradedMap, k: int, source: Complex | None = None,
              target: Complex | None = None) -> GradedMap:
    """``phi[k]`` with the sign ``(-1)^(k |phi|)``, so that ``D`` commutes with shifting."""
    S = source if source is not None else shift(phi.source, k)
    T = target if target is not None else shift(phi.target, k)
    sign = -1 if (k * phi.degree) % 2 else 1
    comps = {i - k: sign * M for i, M in phi.comps.items()}
    if phi.degree == 0:
        return ChainMap(S, T, comps)
    return GradedMap(S, T, phi.degree, comps)


@dataclass(frozen=True)
class DirectSum:
    obj: Complex
    incl: tuple[ChainMap, ...]
    proj: tuple[ChainMap, ...]


def direct_sum(*summands: Complex) -> DirectSum:
    """Direct sum with its structure inclusions and projections."""
    p = summands[0].p
    degs = sorted(set().union(*(S.dims for S in summands)))
    dims = {i: sum(S.dim(i) for S in summands) for i in degs}
    diffs = {}
    for i in degs:
        blocks = [[S.d(i) if a == b else la.zeros(T.dim(i + 1), S.dim(i))
                   for b, S in enumerate(summands)] for a, T in enumerate(summands)]
        diffs[i] = np.block(blocks) if dims.get(i + 1, 0) and dims[i] else la.zeros(dims.get(i + 1, 0), dims[i])
    obj = Complex(p, dims, diffs)
    incl, proj = [], []
    for a, S in enumerate(summands):
        ic, pc = {}, {}
        for i in S.degrees:
            off = sum(T.dim(i) for T in summands[:a])
            E = la.zeros(dims[i], S.dim(i))
            E[off:off + S.dim(i)] = la.identity(S.dim(i))
            ic[i], pc[i] = E, E.T.copy()
        incl.append(ChainMap(S, obj, ic))
        proj.append(ChainMap(obj, S, pc))
    return DirectSum(obj, tuple(incl), tuple(proj))


def direct_sum_map(*maps: GradedMap) -> GradedMap:
    """Block-diagonal sum of maps of a common degree."""
    src = direct_sum(*(m.source for m in maps))
    tgt = direct_sum(*(m.target for m in maps))
    total = zero_map(src.obj, tgt.obj, maps[0].degree)
    for m, i, q in zip(maps, tgt.incl, src.proj):
        total = total + (i @ m @ q)
    return total


@dataclass(frozen=True)
class ConeData:
    """``Cone(f)`` with ``incl : Y -> Cone f`` and ``proj : Cone f -> X[1]``."""

    cone: Complex
    incl: ChainMap
    proj: ChainMap
    f: ChainMap


def cone(f: ChainMap) -> ConeData:
    X, Y, p = f.source, f.target, f.p
    degs = sorted({i - 1 for i in X.degrees} | set(Y.degrees))
    dims = {i: X.dim(i + 1) + Y.dim(i) for i in degs}
    diffs = {}
    for i in degs:
        top = np.hstack([(-X.d(i + 1)) % p, la.zeros(X.dim(i + 2), Y.dim(i))])
        bot = np.hstack([f.comp(i + 1), Y.d(i)])
        diffs[i] = np.vstack([top, bot])
    C = Complex(p, dims, diffs)
    Xs = shift(X, 1)
    incl, proj = {}, {}
    for i in degs:
        a, b = X.dim(i + 1), Y.dim(i)
        incl[i] = np.vstack([la.zeros(a, b), la.identity(b)])
        proj[i] = np.hstack([la.identity(a), la.zeros(a, b)])
    return ConeData(C, ChainMap(Y, C, incl), ChainMap(C, Xs, proj), f)


def cocone(f: ChainMap) -> Complex:
    """``Cone(f)[-1]``: degree ``i`` is ``X^i (+) Y^{i-1}``."""
    return shift(cone(f).cone, -1)


def into_cocone(f: ChainMap, x: GradedMap, h: GradedMap, target: Complex | None = None) -> GradedMap:
    """The map ``w -> (x w, h w)`` into ``Cone(f)[-1]``.

    It is closed exactly when ``x`` is closed and ``D(h) = -f o x``.
    """
    W = x.source
    T = target if target is not None else cocone(f)
    k = x.degree
    comps = {}
    for i in W.degrees:
        comps[i] = np.vstack([x.comp(i), h.comp(i)])
    if k == 0:
        return ChainMap(W, T, comps)
    return GradedMap(W, T, k, comps)


def out_of_cone(f: ChainMap, h: GradedMap, y: GradedMap, source: Complex | None = None) -> GradedMap:
    """The map ``(a, b) -> -h a + y b`` out of ``Cone(f)``.

    It is closed exactly when ``y`` is closed and ``D(h) = -y o f``.
    """
    C = source if source is not None else cone(f).cone
    X, Y = f.source, f.target
    k = y.degree
    comps = {}
    for i in C.degrees:
        comps[i] = np.hstack([(-h.comp(i + 1)) % f.p, y.comp(i)])
    if k == 0:
        return ChainMap(C, y.target, comps)
    return GradedMap(C, y.target, k, comps)


# -- truncations ---------------------------------------------------------------

@dataclass(frozen=True)
class Truncation:
    obj: Complex
    structure: ChainMap    # inclusion T -> X (le) or projection X -> T (ge)
    kind: str
    k: int


def truncate(X: Complex, kind: str, k: int, basis_rng: np.random.Generator | None = None) -> Truncation:
    """Smart truncation ``tau_{<=k}`` (subcomplex) or ``tau_{>=k}`` (quotient).

    ``basis_rng`` randomizes the basis chosen for the new space at degree
    ``k``; every choice gives an isomorphic complex.
    """
    p = X.p
    if kind == "le":
        K = la.kernel_basis(X.d(k), p)
        if basis_rng is not None and K.shape[1]:
            K = la.matmul(K, la.random_invertible(basis_rng, K.shape[1], p), p)
        dims = {i: n for i, n in X.dims.items() if i < k}
        dims[k] = K.shape[1]
        diffs = {i: M for i, M in X.diffs.items() if i < k - 1}
        if X.dim(k - 1) and K.shape[1]:
            C = la.solve_linear(K, X.d(k - 1), p)
            assert C is not None, "image of d^{k-1} must lie in ker d^k"
            diffs[k - 1] = C
        T = Complex(p, dims, diffs)
        comps = {i: la.identity(n) for i, n in X.dims.items() if i < k}
        comps[k] = K
        return Truncation(T, ChainMap(T, X, comps), kind, k)
    if kind == "ge":
        sq = la.subquotient(X.dim(k), la.identity(X.dim(k)), X.d(k - 1), p)
        P, S = sq.proj, sq.section
        if basis_rng is not None and sq.dim:
            G = la.random_invertible(basis_rng, sq.dim, p)
            Ginv = la.inverse(G, p)
            P, S = la.matmul(G, P, p), la.matmul(S, Ginv, p)
        dims = {i: n for i, n in X.dims.items() if i > k}
        dims[k] = sq.dim
        diffs = {i: M for i, M in X.diffs.items() if i > k}
        if X.dim(k + 1) and sq.dim:
            diffs[k] = la.matmul(X.d(k), S, p)
        T = Complex(p, dims, diffs)
        comps = {i: la.identity(n) for i, n in X.dims.items() if i > k}
        comps[k] = P
        return Truncation(T, ChainMap(X, T, comps), kind, k)
    raise ValueError(f"kind must be 'le' or 'ge', got {kind!r}")


def lift_through_subcomplex(f: GradedMap, incl: ChainMap) -> GradedMap | None:
    """``g`` with ``incl o g = f`` when ``incl`` is injective in each degree."""
    p = f.p
    comps = {}
    for i, M in f.comps.items():
        sol = la.solve_linear(incl.comp(i + f.degree), M, p)
        if sol is None:
            return None
        comps[i] = sol
    if f.degree == 0:
        return ChainMap(f.source, incl.source, comps)
    return GradedMap(f.source, incl.source, f.degree, comps)


def descend_through_quotient(f: GradedMap, proj: ChainMap) -> GradedMap | None:
    """``g`` with ``g o proj = f`` when ``proj`` is surjective in each degree."""
    p = f.p
    comps = {}
    for i in proj.target.degrees:
        P = proj.comp(i)
        M = f.comp(i)
        sol = la.solve_linear(P.T, M.T, p)
        if sol is None:
            return None
        comps[i] = sol.T
    # components where proj is not surjective onto nothing must vanish
    for i, M in f.comps.items():
        if proj.target.dim(i) == 0 and M.any():
            return None
    if f.degree == 0:
        return ChainMap(proj.target, f.target, comps)
    return GradedMap(proj.target, f.target, f.degree, comps)


# -- cohomology ------------------------------------------------------------------

@dataclass(frozen=True)
class Cohomology:
    degree: int
    dim: int
    cocycles: np.ndarray       # columns: basis of ker d^i
    coboundaries: np.ndarray   # columns: spanning set of im d^{i-1}
    proj: np.ndarray           # cocycle (ambient coords) -> class coords
    section: np.ndarray        # class coords -> representative cocycle


def cohomology(X: Complex, i: int) -> Cohomology:
    p = X.p
    Z = la.kernel_basis(X.d(i), p)
    B = X.d(i - 1)
    sq = la.subquotient(X.dim(i), Z, B, p)
    return Cohomology(i, sq.dim, Z, B, sq.proj, sq.section)


def betti(X: Complex, degrees: Iterable[int] | None = None) -> dict[int, int]:
    """Cohomology dimensions, by default over the chain support of ``X``."""
    p = X.p
    degs = X.degrees if degrees is None else degrees
    out = {}
    for i in degs:
        out[i] = X.dim(i) - la.rank(X.d(i), p) - la.rank(X.d(i - 1), p)
    return out


def cohomology_dim(X: Complex, i: int) -> int:
    return betti(X, [i])[i]


def is_acyclic(X: Complex) -> bool:
    return not any(betti(X).values())


def induced_cohomology_map(f: GradedMap, i: int) -> np.ndarray:
    """Matrix of ``H^i(X) -> H^{i+k}(Y)`` for a closed map of degree ``k``."""
    HX = cohomology(f.source, i)
    HY = cohomology(f.target, i + f.degree)
    if HX.dim == 0 or HY.dim == 0:
        return la.zeros(HY.dim, HX.dim)
    img = la.matmul(f.comp(i), HX.section, f.p)
    return la.matmul(HY.proj, img, f.p)


def cohomology_support(*objs: Complex) -> list[int]:
    degs: set[int] = set()
    for X in objs:
        degs.update(X.degrees)
    return sorted(degs)


def is_quasi_isomorphism(f: ChainMap) -> bool:
    p = f.p
    for i in cohomology_support(f.source, f.target):
        M = induced_cohomology_map(f, i)
        if M.shape[0] != M.shape[1] or la.rank(M, p) != M.shape[0]:
            return False
    return True


# -- random generation -------------------------------------------------------------

def random_complex(seed: int, max_dim: int, degree_window: tuple[int, int], p: int = la.DEFAULT_PRIME,
                   rng: np.random.Generator | None = None) -> Complex:
    """A random complex supported in ``degree_window`` (inclusive).

    Built from the top degree down: each ``d^i`` factors through a random
    subspace of ``ker d^{i+1}``, so ``d o d = 0`` holds by construction.
    """
    la.check_prime(p)
    rng = rng if rng is not None else np.random.default_rng(seed)
    lo, hi = degree_window
    if max_dim <= 0 or hi < lo:
        return Complex(p)
    dims = {i: int(rng.integers(0, max_dim + 1)) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(hi - 1, lo - 1, -1):
        a, b = dims[i], dims[i + 1]
        if a == 0 or b == 0:
            continue
        K = la.kernel_basis(diffs[i + 1], p) if (i + 1) in diffs else la.identity(b)
        r = int(rng.integers(0, min(a, K.shape[1]) + 1))
        if r == 0:
            continue
        mix = la.random_matrix(rng, K.shape[1], r, p)
        diffs[i] = la.matmul(la.matmul(K, mix, p), la.random_matrix(rng, r, a, p), p)
    return Complex(p, dims, diffs)


def random_chain_map(X: Complex, Y: Complex, seed: int | None = None,
                     rng: np.random.Generator | None = None) -> ChainMap:
    """Uniform sample from the space of chain maps ``X -> Y``."""
    from .homcomplex import MapSpace, hom_differential_matrix

    rng = rng if rng is not None else np.random.default_rng(seed)
    space = MapSpace(X, Y, 0)
    if space.size == 0:
        return ChainMap(X, Y)
    K = la.kernel_basis(hom_differential_matrix(X, Y, 0), X.p)
    coeffs = la.random_matrix(rng, K.shape[1], 1, X.p)
    return as_chain_map(space.decode(la.matmul(K, coeffs, X.p)[:, 0]))
