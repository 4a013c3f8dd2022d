"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are kept reduced
into ``[0, p)``.  Every routine takes the modulus explicitly, so arrays stay
ordinary numpy objects and can be shared freely between threads.

Products of two reduced entries stay below ``2**62`` because ``p < 2**31``,
so int64 arithmetic never overflows before the next reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 5
_MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not (2 <= p < _MAX_PRIME) or not is_prime(p):
        raise ValueError(f"modulus must be a prime in [2, 2^31), got {p}")
    return p


def reduce(M, p: int) -> np.ndarray:
    """Return ``M`` as an int64 array reduced mod ``p`` (always a copy)."""
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0)
    return A % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    if A.shape[1] * (p - 1) ** 2 < 2**63:
        return (A @ B) % p
    # wide products with large p: accumulate in chunks to stay in int64
    out = zeros(A.shape[0], B.shape[1])
    step = max(1, (2**62) // ((p - 1) ** 2))
    for s in range(0, A.shape[1], step):
        out = (out + A[:, s : s + step] @ B[s : s + step]) % p
    return out


def rref(M, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form of ``M`` over F_p.

    Returns ``(R, pivots, rank)``.  The pivot in each column is the first
    nonzero entry at or below the current row, so the result is a
    deterministic function of the input.
    """
    A = reduce(M, p)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(col[hit], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A, pivots, r


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return rref(M, p)[2]


def _kernel_from_rref(R: np.ndarray, pivots: list[int], cols: int, p: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    K = zeros(cols, len(free))
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, fc]) % p
    return K


def kernel_basis(M, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : M x = 0}``."""
    M = reduce(M, p)
    rows, cols = M.shape
    if rows == 0:
        return identity(cols)
    R, pivots, _ = rref(M, p)
    return _kernel_from_rref(R, pivots, cols, p)


def column_space_basis(M, p: int) -> np.ndarray:
    """Independent columns of ``M`` (the pivot columns) spanning its image."""
    M = reduce(M, p)
    if M.size == 0:
        return zeros(M.shape[0], 0)
    _, pivots, _ = rref(M, p)
    return M[:, pivots]


@dataclass(frozen=True)
class AffineSolution:
    """All solutions of ``M X = B`` as ``particular + kernel @ coeffs``."""

    particular: np.ndarray
    kernel: np.ndarray

    def sample(self, rng: np.random.Generator, p: int) -> np.ndarray:
        k = self.kernel.shape[1]
        if k == 0:
            return self.particular.copy()
        coeffs = rng.integers(0, p, size=(k, self.particular.shape[1]), dtype=np.int64)
        return (self.particular + matmul(self.kernel, coeffs, p)) % p


def solve_affine(M, B, p: int) -> AffineSolution | None:
    """Solve ``M X = B``; ``None`` when some column of ``B`` is unreachable."""
    M = reduce(M, p)
    B = np.asarray(B)
    B = reduce(B.reshape(-1, 1) if B.ndim == 1 else B, p)
    if M.shape[0] != B.shape[0]:
        raise ValueError(f"row mismatch: M has {M.shape[0]} rows, B has {B.shape[0]}")
    rows, cols = M.shape
    nb = B.shape[1]
    if rows == 0:
        return AffineSolution(zeros(cols, nb), identity(cols))
    R, pivots, r = rref(np.hstack([M, B]), p)
    if any(pc >= cols for pc in pivots):
        return None
    X = zeros(cols, nb)
    for i, pc in enumerate(pivots):
        X[pc] = R[i, cols:]
    return AffineSolution(X, _kernel_from_rref(R[:, :cols], pivots, cols, p))


def solve_linear(M, B, p: int) -> np.ndarray | None:
    """A solution ``X`` of ``M X = B`` (free variables set to 0), or ``None``."""
    sol = solve_affine(M, B, p)
    return None if sol is None else sol.particular


def inverse(M, p: int) -> np.ndarray | None:
    M = reduce(M, p)
    n, m = M.shape
    if n != m:
        return None
    sol = solve_affine(M, identity(n), p)
    if sol is None or sol.kernel.shape[1]:
        return None
    return sol.particular


@dataclass(frozen=True)
class Subquotient:
    """A basis of ``sub / inside``.

    ``proj`` sends an ambient vector lying in ``span(sub)`` to its class
    coordinates; ``section`` lists ambient representatives of the chosen
    basis classes, so ``proj @ section`` is the identity.
    """

    proj: np.ndarray
    section: np.ndarray
    dim: int


def _as_columns(A: np.ndarray, rows: int) -> np.ndarray:
    if A.ndim == 2 and A.shape[0] == rows:
        return A
    if A.size == 0:
        return zeros(rows, 0)
    return A.reshape(rows, -1)


def subquotient(ambient_dim: int, sub, inside, p: int) -> Subquotient:
    sub = _as_columns(reduce(sub, p), ambient_dim)
    inside = _as_columns(reduce(inside, p), ambient_dim)
    B = column_space_basis(inside, p)
    nb = B.shape[1]
    if nb and solve_linear(sub, B, p) is None:
        raise ValueError("subquotient: `inside` is not contained in `sub`")
    # extend the basis of `inside` by pivot columns of [B | sub]
    _, pivots, _ = rref(np.hstack([B, sub]), p) if ambient_dim else (None, [], 0)
    extra = [c - nb for c in pivots if c >= nb]
    S = sub[:, extra]
    dim = S.shape[1]
    full = np.hstack([B, S])
    if full.shape[1] == 0:
        return Subquotient(zeros(0, ambient_dim), zeros(ambient_dim, 0), 0)
    # left inverse L of `full`: L @ full = I
    Lt = solve_linear(full.T, identity(full.shape[1]), p)
    assert Lt is not None
    proj = Lt.T[nb:] % p
    return Subquotient(proj, S, dim)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    while True:
        M = random_matrix(rng, n, n, p)
        if rank(M, p) == n:
            return M
