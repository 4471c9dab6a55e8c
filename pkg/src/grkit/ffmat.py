"""Dense linear algebra and subspace combinatorics over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are kept reduced
modulo ``p``.  Linear maps act on column vectors (``m @ v``) everywhere in the
package.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

MAX_PRIME = 1 << 15

#: default cap on the number of subspaces a single enumeration may produce
#: (admits every subspace of F_2^7)
DEFAULT_SUBSPACE_CAP = 1 << 15


class EnumerationBudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cost cap."""

    def __init__(self, estimate: int, cap: int, what: str = "subspaces"):
        self.estimate = estimate
        self.cap = cap
        self.what = what
        super().__init__(f"enumeration of ~{estimate} {what} exceeds cap {cap}")


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or p > MAX_PRIME or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be a prime below {MAX_PRIME}, got {p}")
    return p


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def inv(x: int, p: int) -> int:
    if x % p == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(int(x), -1, p)


def asmat(rows, p: int, shape: Optional[tuple] = None) -> np.ndarray:
    """Coerce nested sequences (or an array) to a reduced int64 matrix."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim != 2:
        if a.size:
            raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
        a = a.reshape((0, 0))
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def _rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    invt = _inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * invt[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank.  The input is not modified."""
    a, piv = _rref(m, p)
    return a, len(piv)


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(_rref(m, p)[1])


def kernel_matrix(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {v : m v = 0}; shape (cols, nullity)."""
    rows, cols = m.shape
    a, piv = _rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-a[i, f]) % p
    return k


def kernel_basis(m: np.ndarray, p: int) -> "Subspace":
    return Subspace(kernel_matrix(m, p).T, p, ambient_dim=m.shape[1])


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Some x with a @ x = b (mod p), or None when the system is inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug, piv = _rref(np.hstack([a % p, b % p]), p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = aug[i, n:]
    return x


def inverse(a: np.ndarray, p: int) -> Optional[np.ndarray]:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug, piv = _rref(np.hstack([a % p, identity(n)]), p)
    if piv != list(range(n)):
        return None
    return aug[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


class Subspace:
    """A subspace of F_p^n stored by its canonical RREF basis (rows).

    Equality and hashing are structural on the canonical basis, so two
    ``Subspace`` objects compare equal exactly when they are the same subspace.
    """

    __slots__ = ("ambient_dim", "basis", "p", "pivots", "_key")

    def __init__(self, rows, p: int, ambient_dim: Optional[int] = None, *, reduced: bool = False):
        a = np.array(rows, dtype=np.int64)
        if ambient_dim is None:
            if a.ndim != 2:
                raise ValueError("ambient_dim required for an empty spanning set")
            ambient_dim = a.shape[1]
        a = a.reshape((-1, ambient_dim)) if a.size else zeros(0, ambient_dim)
        if reduced:
            basis = a % p
            piv = [int(np.flatnonzero(row)[0]) for row in basis]
        else:
            r, piv = _rref(a, p)
            basis = r[: len(piv)]
        basis.setflags(write=False)
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.p = p
        self.pivots = tuple(piv)
        self._key = (ambient_dim, p, basis.shape[0], basis.tobytes())

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(zeros(0, n), p, n, reduced=True)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(identity(n), p, n, reduced=True)

    @classmethod
    def from_columns(cls, cols: np.ndarray, p: int) -> "Subspace":
        return cls(cols.T, p, ambient_dim=cols.shape[0])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, p={self.p}, basis={self.basis.tolist()})"

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim or other.p != self.p:
            raise ValueError("subspaces live in different ambient spaces")

    def coords(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates (columns) of column ``vectors`` known to lie in the subspace."""
        return vectors[list(self.pivots), :] % self.p

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Residues of column vectors after eliminating against the basis."""
        v = vectors % self.p
        if self.dim == 0 or v.size == 0:
            return v
        return (v - self.basis.T @ v[list(self.pivots), :]) % self.p

    def contains_vectors(self, vectors: np.ndarray) -> bool:
        return not self.reduce(vectors).any()

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim > self.dim:
            return False
        return self.contains_vectors(other.basis.T)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        # x in U cap V  <=>  x = B_U^T a = B_V^T b
        stacked = np.hstack([self.basis.T, (-other.basis.T) % self.p])
        k = kernel_matrix(stacked, self.p)
        vecs = matmul(self.basis.T, k[: self.dim], self.p)
        return Subspace(vecs.T, self.p, self.ambient_dim)

    def complement_positions(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def image(self, m: np.ndarray) -> "Subspace":
        if m.shape[1] != self.ambient_dim:
            raise ValueError("map does not act on this ambient space")
        return Subspace(matmul(m, self.basis.T, self.p).T, self.p, m.shape[0])


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    return u.intersection(v)


def subspace_contains(u: Subspace, v: Subspace) -> bool:
    """True when ``v`` is a subspace of ``u``."""
    return u.contains(v)


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, p: int, dim: Optional[int] = None) -> int:
    if dim is not None:
        return gaussian_binomial(n, dim, p)
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def _rref_matrices(n: int, k: int, p: int) -> Iterator[np.ndarray]:
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
        base = zeros(k, n)
        for r, pc in enumerate(piv):
            base[r, pc] = 1
        if not free:
            yield base.copy()
            continue
        fr = np.array([f[0] for f in free])
        fc = np.array([f[1] for f in free])
        for vals in itertools.product(range(p), repeat=len(free)):
            m = base.copy()
            m[fr, fc] = vals
            yield m


def enumerate_subspaces(
    ambient_dim: int,
    p: int,
    containing: Optional[Subspace] = None,
    dim: Optional[int] = None,
    cap: int = DEFAULT_SUBSPACE_CAP,
) -> Iterator[Subspace]:
    """Yield every subspace of F_p^n exactly once, in canonical form.

    With ``containing`` only the superspaces of that subspace are produced;
    they are built from subspaces of the quotient, not by filtering.  ``dim``
    restricts to one dimension.
    """
    n = ambient_dim
    base_dim = 0 if containing is None else containing.dim
    m = n - base_dim
    qdim = None if dim is None else dim - base_dim
    if qdim is not None and (qdim < 0 or qdim > m):
        return
    estimate = count_subspaces(m, p, qdim)
    if estimate > cap:
        raise EnumerationBudgetExceeded(estimate, cap)
    dims = range(m + 1) if qdim is None else (qdim,)
    if containing is None:
        for k in dims:
            for b in _rref_matrices(n, k, p):
                yield Subspace(b, p, n, reduced=True)
        return
    comp = containing.complement_positions()
    for k in dims:
        for b in _rref_matrices(m, k, p):
            lifted = zeros(k, n)
            lifted[:, comp] = b
            yield Subspace(np.vstack([containing.basis, lifted]), p, n)
