"""Named modules, the model-id grammar and the catalog."""
import pytest

from grkit import artools, models
from grkit.grmeasure import gr_measure
from grkit.numerics import translate_dim
from grkit.quiverrep import W
from grkit.structure import IsoClassRegistry, is_indecomposable, iso_test


def mod(text, p=2):
    return models.build(models.parse_model_id(text, p), p)


@pytest.mark.parametrize("text,dims", [
    ("P_1", (1, 1, 2)), ("P_2", (0, 1, 2)), ("P_3", (0, 0, 1)),
    ("I_3", (2, 2, 1)), ("I_2", (1, 1, 0)), ("S_2", (0, 1, 0)),
    ("H_2", (0, 2, 3)), ("H^2", (0, 3, 2)), ("H(2)@(1:1)", (0, 2, 2)),
    ("tau^-1(P_3)", (0, 2, 3)), ("K:preproj(3)", (3, 4)), ("K:preinj(3)", (4, 3)),
    ("K:reg(2)@(0:1)", (2, 2)),
])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_dimension_vectors(text, dims, p):
    m = mod(text, p)
    assert m.dims == dims
    assert is_indecomposable(m).indecomposable


@pytest.mark.parametrize("p", [2, 3])
def test_h1_classes_are_indexed_by_the_projective_line(p):
    reg = IsoClassRegistry(W, p)
    ids = {reg.classify(mod(f"H(1)@({x}:{y})", p)) for x, y in models.projective_line(p)}
    assert len(ids) == p + 1


def test_h2_is_inverse_translate_of_p3():
    for p in (2, 3):
        assert iso_test(mod("H_2", p), artools.tau_minus(mod("P_3", p))) is not None


def test_simple_has_measure_one(wreg):
    assert gr_measure(mod("S_2"), wreg).measure.elements == (1,)


def test_point_normalization():
    assert models.parse_model_id("H(1)@(2:4)", 3).point == (1, 2)
    assert models.parse_model_id("H(1)@(0:2)", 3).point == (0, 1)
    with pytest.raises(models.ModelError):
        models.parse_model_id("H(1)@(0:0)", 3)


@pytest.mark.parametrize("bad", ["Q_1", "P_4", "K:H_1", "W:S_1@(1:0)", "tau(", "H(0)"])
def test_grammar_errors(bad):
    with pytest.raises(models.ModelError):
        models.parse_model_id(bad, 2)


def test_shift_round_trips_through_str():
    for text in ["W:tau^-2(P_3)", "W:tau(H(2)@(1:1))", "K:preinj(4)"]:
        mid = models.parse_model_id(text, 2)
        assert models.parse_model_id(str(mid), 2) == models.parse_model_id(text, 2)
        assert mod(str(mid)).dims == mod(text).dims


def test_translated_models_follow_coxeter():
    for text, ks in [("P_3", (-2, -1)), ("H(1)@(1:1)", (-2, -1, 1, 2)), ("H^2", (-1, 1))]:
        for k in ks:
            m = mod(f"tau^{k}({text})")
            assert m.dims == translate_dim(W, mod(text).dims, k)


def test_catalog_golden_counts():
    c = models.catalog(2, {"a": 2, "shift": 1})
    assert (len(c), len(c.duplicates)) == (38, 15)
    again = models.catalog(2, {"a": 2, "shift": 1})
    assert [str(m) for m, _, _ in c] == [str(m) for m, _, _ in again]


def test_catalog_entries_are_pairwise_non_isomorphic():
    c = models.catalog(2, {"a": 1, "shift": 1})
    reps = [rep for _, rep, _ in c]
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert iso_test(a, b) is None


def test_empty_caps_give_empty_catalog():
    assert len(models.catalog(2, {})) == 0
