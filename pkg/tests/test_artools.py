"""Reflection functors and the Auslander-Reiten translate."""
import pytest

from grkit import artools, models
from grkit.numerics import reflect_dim, translate_dim
from grkit.quiverrep import W, Representation
from grkit.structure import is_indecomposable, iso_test


def mod(text, p=2):
    return models.build(models.parse_model_id(text, p), p)


def test_reflection_examples():
    assert artools.reflect_at_sink(Representation.simple(W, 2, 3), 3).is_zero()
    assert artools.reflect_at_sink(mod("P_2"), 3).dims == (0, 1, 0)
    with pytest.raises(artools.NotASink):
        artools.reflect_at_sink(mod("P_2"), 2)
    with pytest.raises(artools.NotASource):
        artools.reflect_at_source(mod("P_2"), 3)


def test_reflection_dims_follow_the_reflection_formula(universe5):
    for e in universe5:
        m = e.rep
        if m.dims != (0, 0, 1):
            assert artools.reflect_at_sink(m, 3).dims == reflect_dim(W, m.dims, 3)
        if m.dims != (1, 0, 0):
            assert artools.reflect_at_source(m, 1).dims == reflect_dim(W, m.dims, 1)


def test_reflections_preserve_indecomposability(universe4):
    for e in universe4:
        if e.dims != (0, 0, 1):
            assert is_indecomposable(artools.reflect_at_sink(e.rep, 3)).indecomposable


def test_translate_examples():
    assert artools.tau_minus(mod("P_3")).dims == (0, 2, 3)
    for x, y in models.projective_line(2):
        h = mod(f"H(1)@({x}:{y})")
        assert artools.tau_minus(h).dims == (1, 2, 3)
        assert artools.tau_plus(h).dims == (1, 1, 1)
    with pytest.raises(artools.InjectiveSignal):
        artools.tau_minus(mod("I_1"))
    with pytest.raises(artools.ProjectiveSignal):
        artools.tau_plus(mod("P_2"))


def test_translate_iterates():
    m = mod("P_1")
    assert artools.tau_iterate(m, 0) is m
    assert iso_test(artools.tau_iterate(mod("H_4"), 2), mod("H^1")) is not None
    x = artools.tau_iterate(mod("P_3"), -1)
    w = is_indecomposable(x)
    assert x.dims == (0, 2, 3) and w.indecomposable and w.confidence == "certified"


def test_translate_round_trip(universe5):
    for e in universe5:
        try:
            y = artools.tau_minus(e.rep)
        except artools.InjectiveSignal:
            continue
        assert y.dims == translate_dim(W, e.dims, -1)
        assert iso_test(artools.tau_plus(y), e.rep) is not None


def test_catalog_dims_follow_inverse_coxeter():
    for mid, rep, _ in models.catalog(2, {"a": 2, "shift": 1}):
        try:
            y = artools.tau_minus(rep)
        except artools.InjectiveSignal:
            continue
        assert y.dims == translate_dim(W, rep.dims, -1), str(mid)


def test_kronecker_translate_moves_preprojectives():
    p = 3
    for n in range(3):
        m = mod(f"K:preproj({n + 1})", p)
        assert iso_test(artools.tau_minus(m), mod(f"K:preproj({n + 3})", p)) is not None
