"""Dimension-vector calculus: Cartan matrix, Euler form and Coxeter orbits.

Vectors are row vectors multiplied on the right, ``dim tau M = (dim M) Phi``.
All arithmetic is exact (Python integers and Fractions).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .quiverrep import Quiver

IntMatrix = tuple  # tuple of row tuples of int
DimensionVector = tuple


class LeftCategory(ValueError):
    """A Coxeter translate stopped being a positive vector."""

    def __init__(self, step: int, vector: tuple):
        self.step = step
        self.vector = vector
        super().__init__(f"translate at step {step} is not positive: {vector}")


def _matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _transpose(a):
    return tuple(zip(*a))


def _inverse(a) -> IntMatrix:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("inverse is not integral")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


def cartan_matrix(q: Quiver) -> IntMatrix:
    """C[i][j] = number of paths from vertex j+1 to vertex i+1."""
    n = q.vertex_count
    return tuple(tuple(q.path_count(j, i) for j in range(1, n + 1)) for i in range(1, n + 1))


@dataclass(frozen=True)
class CoxeterData:
    cartan: IntMatrix
    coxeter: IntMatrix
    coxeter_inverse: IntMatrix


def coxeter_data(q: Quiver) -> CoxeterData:
    c = cartan_matrix(q)
    cinv_t = _transpose(_inverse(c))
    phi = tuple(tuple(-x for x in row) for row in _matmul(cinv_t, c))
    phi_inv = _inverse(phi)
    return CoxeterData(c, phi, phi_inv)


def euler_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != q.vertex_count or len(y) != q.vertex_count:
        raise ValueError("dimension vectors do not match the quiver")
    val = sum(a * b for a, b in zip(x, y))
    for s, t in q.arrows:
        val -= x[s - 1] * y[t - 1]
    return val


def tits_form(q: Quiver, x: Sequence[int]) -> int:
    return euler_form(q, x, x)


def _vecmat(x, m) -> tuple:
    return tuple(sum(x[k] * m[k][j] for k in range(len(x))) for j in range(len(m[0])))


def translate_dim(q: Quiver, x: Sequence[int], k: int) -> DimensionVector:
    """x Phi^k; raises LeftCategory when an intermediate vector is not positive."""
    data = coxeter_data(q)
    m = data.coxeter if k > 0 else data.coxeter_inverse
    v = tuple(x)
    for step in range(1, abs(k) + 1):
        v = _vecmat(v, m)
        if any(c < 0 for c in v) or not any(v):
            raise LeftCategory(step if k > 0 else -step, v)
    return v


def coxeter_orbit(q: Quiver, x: Sequence[int], kmin: int, kmax: int) -> Iterator[tuple]:
    """Rows (k, x Phi^k, total, signal) for k in [kmin, kmax].

    ``signal`` is empty while the vector is positive and ``left-category``
    once some translate on the way from 0 to k was not.
    """
    data = coxeter_data(q)
    rows = {0: (tuple(x), "")}
    for direction, m in ((1, data.coxeter), (-1, data.coxeter_inverse)):
        v, sig = tuple(x), ""
        bound = kmax if direction > 0 else -kmin
        for step in range(1, bound + 1):
            v = _vecmat(v, m)
            if any(c < 0 for c in v) or not any(v):
                sig = "left-category"
            rows[direction * step] = (v, sig)
    for k in range(kmin, kmax + 1):
        v, sig = rows[k]
        yield k, v, sum(v), sig


def reflect_dim(q: Quiver, x: Sequence[int], v: int) -> DimensionVector:
    """Simple reflection s_v: x_v -> sum over incident arrows of x_other - x_v."""
    y = list(x)
    total = 0
    for s, t in q.arrows:
        if s == v and t != v:
            total += x[t - 1]
        elif t == v and s != v:
            total += x[s - 1]
    y[v - 1] = total - x[v - 1]
    return tuple(y)


def is_regular_vector(q: Quiver, x: Sequence[int], depth: int = 8) -> bool:
    """All Coxeter translates x Phi^k, |k| <= depth, are positive."""
    try:
        translate_dim(q, x, depth)
        translate_dim(q, x, -depth)
    except LeftCategory:
        return False
    return True


def quasi_length_decompositions(q: Quiver, first: int = 1, ymax: int = 4, rmax: int = 5) -> list[tuple]:
    """Solutions of sum_{i<r} y Phi^{-i} = x with x_1 = ``first`` and r >= 2.

    ``y`` ranges over positive root candidates (Tits form <= 1) in the box
    [0, ymax]^n whose Coxeter orbit stays positive; returns (x, y, r) triples.
    """
    import itertools

    out = []
    for y in itertools.product(range(ymax + 1), repeat=q.vertex_count):
        if not any(y) or tits_form(q, y) > 1 or not is_regular_vector(q, y):
            continue
        acc, cur = tuple(y), tuple(y)
        for r in range(2, rmax + 1):
            cur = translate_dim(q, cur, -1)
            acc = tuple(a + b for a, b in zip(acc, cur))
            if acc[0] == first:
                out.append((acc, tuple(y), r))
    return sorted(set(out))
