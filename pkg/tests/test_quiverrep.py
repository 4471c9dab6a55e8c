"""Representations, Hom spaces and sub/quotient constructions."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grkit import models
from grkit.ffmat import Subspace
from grkit.numerics import euler_form
from grkit.quiverrep import (
    KRONECKER, W, ClosureError, QuiverMismatch, Representation, apply_morphism_properties,
    compose, direct_sum, full_subrep, generated_subrep, hom_space, image_subrep, is_morphism,
    quotient_rep, subrep_from_subspaces, zero_subrep,
)


def mod(text, p=2):
    return models.build(models.parse_model_id(text, p), p)


@st.composite
def w_reps(draw, p=2, max_dim=2):
    dims = [draw(st.integers(0, max_dim)) for _ in range(3)]
    maps = []
    for s, t in W.arrows:
        n = dims[t - 1] * dims[s - 1]
        maps.append(draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)))
    return Representation(W, p, dims, maps)


def identity(m):
    return tuple(np.eye(d, dtype=np.int64) for d in m.dims)


def zero_map(m, n):
    return tuple(np.zeros((b, a), dtype=np.int64) for a, b in zip(m.dims, n.dims))


def brute_hom_dim(m, n):
    """dim Hom by counting every per-vertex matrix tuple (tiny modules only)."""
    p = m.p
    sizes = [a * b for a, b in zip(m.dims, n.dims)]
    count = 0
    for flat in np.ndindex(*([p] * sum(sizes))):
        phi, off = [], 0
        for v, s in enumerate(sizes):
            phi.append(np.array(flat[off:off + s], dtype=np.int64).reshape(n.dims[v], m.dims[v]))
            off += s
        count += is_morphism(tuple(phi), m, n)
    return round(np.log(count) / np.log(p))


@pytest.mark.parametrize("v", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3])
def test_simple_endomorphisms(v, p):
    s = Representation.simple(W, p, v)
    assert hom_space(s, s).dim == 1


def test_hom_from_s3_to_p2():
    h = hom_space(mod("S_3"), mod("P_2"))
    assert h.dim == 2 == brute_hom_dim(mod("S_3"), mod("P_2"))


@pytest.mark.parametrize("p", [2, 3])
def test_h1_maps_to_its_translate(p):
    for x, y in models.projective_line(p):
        h = mod(f"H(1)@({x}:{y})", p)
        assert hom_space(h, mod(f"tau(H(1)@({x}:{y}))", p)).dim >= 1


def test_hom_rejects_quiver_mismatch():
    with pytest.raises(QuiverMismatch):
        hom_space(Representation.simple(W, 2, 1), Representation.simple(KRONECKER, 2, 1))


def test_morphism_classification():
    p2 = mod("P_2")
    assert apply_morphism_properties(identity(p2), p2, p2) == "iso"
    assert apply_morphism_properties(zero_map(p2, p2), p2, p2) == "neither"
    p3 = mod("P_3")
    kinds = {apply_morphism_properties(phi, p3, p2) for phi in hom_space(p3, p2).basis}
    assert kinds == {"injective"}


def test_direct_sum_examples():
    s1, s2 = Representation.simple(W, 2, 1), Representation.simple(W, 2, 2)
    assert direct_sum(s1, s2).dims == (1, 1, 0)
    m = mod("P_1")
    assert direct_sum(m, Representation.zero(W, 2)) == m


@settings(max_examples=25, deadline=None)
@given(w_reps(), w_reps(), w_reps())
def test_hom_is_additive(a, b, c):
    assert hom_space(direct_sum(a, b), c).dim == hom_space(a, c).dim + hom_space(b, c).dim
    assert hom_space(c, direct_sum(a, b)).dim == hom_space(c, a).dim + hom_space(c, b).dim


@settings(max_examples=25, deadline=None)
@given(w_reps(max_dim=1), w_reps(max_dim=1))
def test_hom_matches_brute_force(a, b):
    assert hom_space(a, b).dim == brute_hom_dim(a, b)


@settings(max_examples=25, deadline=None)
@given(w_reps(p=3), w_reps(p=3))
def test_hom_basis_elements_commute(a, b):
    h = hom_space(a, b)
    assert all(is_morphism(phi, a, b) for phi in h.basis)
    assert all(is_morphism(h.element([1] * h.dim), a, b) for _ in [0])


def test_euler_form_bounds_hom(universe5):
    reps = [e.rep for e in universe5]
    for a in reps:
        for b in reps:
            assert euler_form(W, a.dims, b.dims) <= hom_space(a, b).dim


def test_sub_extremes():
    m = mod("P_1")
    assert full_subrep(m).rep == m
    assert zero_subrep(m).rep.is_zero()
    q, _ = quotient_rep(m, zero_subrep(m))
    assert q.dims == m.dims
    q, _ = quotient_rep(m, full_subrep(m))
    assert q.is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_h1_has_unique_proper_submodule(p):
    from itertools import product
    from grkit.ffmat import enumerate_subspaces
    for x, y in models.projective_line(p):
        h = mod(f"H(1)@({x}:{y})", p)
        found = []
        for parts in product(*(list(enumerate_subspaces(d, p)) for d in h.dims)):
            try:
                s = subrep_from_subspaces(h, parts)
            except ClosureError:
                continue
            if 0 < s.total < h.total:
                found.append(s.dims)
        assert found == [(0, 0, 1)]


def test_closure_violation_names_the_arrow():
    m = mod("P_2")
    parts = [Subspace.zero(0, 2), Subspace.full(1, 2), Subspace.zero(2, 2)]
    with pytest.raises(ClosureError):
        subrep_from_subspaces(m, parts)


def test_quotient_of_p2_by_p3():
    p2, p3 = mod("P_2"), mod("P_3")
    phi = hom_space(p3, p2).basis[0]
    sub = image_subrep(phi, p3, p2)
    q, proj = quotient_rep(p2, sub)
    assert q.dims == (0, 1, 1)
    assert is_morphism(proj, p2, q)
    assert apply_morphism_properties(proj, p2, q) == "surjective"


@settings(max_examples=30, deadline=None)
@given(w_reps(p=3), st.data())
def test_short_exact_sequences(m, data):
    gens = {v: [data.draw(st.lists(st.integers(0, 2), min_size=d, max_size=d))]
            for v, d in zip((1, 2, 3), m.dims) if d}
    sub = generated_subrep(m, gens)
    q, proj = quotient_rep(m, sub)
    assert tuple(a + b for a, b in zip(sub.dims, q.dims)) == m.dims
    assert is_morphism(sub.inclusion, sub.rep, m) and is_morphism(proj, m, q)
    comp = compose(proj, sub.inclusion, m.p)
    assert all(not c.any() for c in comp)


@settings(max_examples=30, deadline=None)
@given(w_reps(p=2), st.data())
def test_generated_subrep_is_monotone_and_idempotent(m, data):
    def draw_gens():
        return {v: [data.draw(st.lists(st.integers(0, 1), min_size=d, max_size=d))]
                for v, d in zip((1, 2, 3), m.dims) if d}
    g1, g2 = draw_gens(), draw_gens()
    a = generated_subrep(m, g1)
    both = {v: g1.get(v, []) + g2.get(v, []) for v in (1, 2, 3)}
    b = generated_subrep(m, both)
    assert b.contains(a)
    again = {v: list(a.parts[v - 1].basis) for v in (1, 2, 3)}
    assert generated_subrep(m, again).key() == a.key()


@settings(max_examples=30, deadline=None)
@given(w_reps(p=3))
def test_json_round_trip(m):
    assert Representation.from_json(m.to_json()) == m
