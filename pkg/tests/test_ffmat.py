"""Exact F_p linear algebra: RREF, kernels, solving and the subspace lattice."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grkit import ffmat
from grkit.ffmat import EnumerationBudgetExceeded, Subspace


@st.composite
def matrices(draw, p=None, max_rows=5, max_cols=5):
    p = p or draw(st.sampled_from([2, 3, 5, 7]))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(flat, dtype=np.int64).reshape(r, c), p


def naive_rank(m, p):
    """Rank by brute force: size of the row space is p^rank."""
    rows = [tuple(r) for r in m]
    span = {tuple([0] * m.shape[1])}
    for r in rows:
        span = {tuple((a + c * b) % p for a, b in zip(v, r)) for v in span for c in range(p)}
    return round(np.log(len(span)) / np.log(p))


def test_rref_empty_matrix():
    r, k = ffmat.rref(np.zeros((0, 0), dtype=np.int64), 2)
    assert r.shape == (0, 0) and k == 0


def test_rref_identity():
    r, k = ffmat.rref(np.eye(3, dtype=np.int64), 2)
    assert k == 3 and np.array_equal(r, np.eye(3, dtype=np.int64))


def test_rref_hand_example():
    r, k = ffmat.rref(np.array([[1, 1], [1, 1]]), 2)
    assert k == 1 and r.tolist() == [[1, 1], [0, 0]]


def test_kernel_examples():
    assert ffmat.kernel_basis(np.zeros((2, 3), dtype=np.int64), 2).dim == 3
    assert ffmat.kernel_basis(np.eye(2, dtype=np.int64), 2).dim == 0
    k = ffmat.kernel_basis(np.array([[1, 0, 1]]), 2)
    assert k == Subspace(np.array([[0, 1, 0], [1, 0, 1]]), 2)


def test_solve_examples():
    b = np.array([[1, 0], [2, 1]])
    assert np.array_equal(ffmat.solve(np.eye(2, dtype=np.int64), b, 3), b)
    assert ffmat.solve(np.zeros((2, 2), dtype=np.int64), np.array([[1], [0]]), 2) is None
    x = ffmat.solve(np.array([[1, 1], [0, 1]]), np.array([[0], [1]]), 2)
    assert x.tolist() == [[1], [1]]


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (4, 67)])
def test_subspace_counts_over_f2(n, count):
    assert sum(1 for _ in ffmat.enumerate_subspaces(n, 2)) == count


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", range(0, 6))
def test_enumeration_matches_gaussian_binomials(n, p):
    seen = set()
    by_dim = {}
    for u in ffmat.enumerate_subspaces(n, p):
        assert u not in seen
        seen.add(u)
        by_dim[u.dim] = by_dim.get(u.dim, 0) + 1
    for k in range(n + 1):
        # product formula, written independently of the library helper
        num = np.prod([p ** (n - i) - 1 for i in range(k)], dtype=object) if k else 1
        den = np.prod([p ** (i + 1) - 1 for i in range(k)], dtype=object) if k else 1
        assert by_dim[k] == num // den


def test_enumeration_containing_gives_superspaces():
    u = Subspace(np.array([[1, 1, 0]]), 2)
    sup = list(ffmat.enumerate_subspaces(3, 2, containing=u))
    assert len(sup) == 5 and all(s.contains(u) for s in sup)


def test_enumeration_budget_is_loud():
    with pytest.raises(EnumerationBudgetExceeded):
        list(ffmat.enumerate_subspaces(8, 3, cap=100))


def test_lattice_examples():
    u = Subspace(np.array([[1, 0]]), 2)
    v = Subspace(np.array([[1, 1]]), 2)
    z = Subspace.zero(2, 2)
    assert u.sum(z) == u and u.intersection(u) == u
    assert u.sum(v) == Subspace.full(2, 2)
    assert u.intersection(v) == z
    with pytest.raises(ValueError):
        u.sum(Subspace.zero(3, 2))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_idempotent(mp):
    m, p = mp
    r, _ = ffmat.rref(m, p)
    r2, _ = ffmat.rref(r, p)
    assert np.array_equal(r, r2)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    assert ffmat.rank(m, p) + ffmat.kernel_basis(m, p).dim == m.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_rank_against_row_space_size(mp):
    m, p = mp
    if m.size == 0:
        return
    assert ffmat.rank(m, p) == naive_rank(m, p)


@settings(max_examples=60, deadline=None)
@given(matrices(p=3, max_rows=3, max_cols=4), matrices(p=3, max_rows=3, max_cols=4))
def test_dimension_formula(a, b):
    (ma, p), (mb, _) = a, b
    if ma.shape[1] != mb.shape[1] or ma.shape[1] == 0:
        return
    u, v = Subspace(ma, p, ma.shape[1]), Subspace(mb, p, mb.shape[1])
    assert u.sum(v).dim + u.intersection(v).dim == u.dim + v.dim
    assert u.sum(v).contains(u) and u.contains(u.intersection(v))


@settings(max_examples=40, deadline=None)
@given(matrices(p=5, max_rows=4, max_cols=4))
def test_inverse_roundtrip(mp):
    m, p = mp
    if m.shape[0] != m.shape[1] or m.size == 0:
        return
    inv = ffmat.inverse(m, p)
    if inv is None:
        assert ffmat.rank(m, p) < m.shape[0]
    else:
        assert np.array_equal(ffmat.matmul(m, inv, p), np.eye(m.shape[0], dtype=np.int64))


def test_check_prime_rejects_composites():
    for bad in (1, 4, 9, 1 << 16):
        with pytest.raises(ValueError):
            ffmat.check_prime(bad)
    assert ffmat.check_prime(7) == 7


def test_canonical_equality_ignores_basis_choice():
    for p in (2, 3):
        for rows in itertools.product(range(p), repeat=3):
            m = np.array([rows, [1, 0, 0]])
            shuffled = np.array([[1, 0, 0], [(2 * x) % p for x in rows]]) if p == 3 else m[::-1]
            assert Subspace(m, p, 3) == Subspace(shuffled, p, 3)
