"""Gabriel-Roiter measures for representations of small quivers over prime fields."""
from .grmeasure import GRMeasure, gr_measure, gr_submodules, measure_compare
from .models import build, parse_model_id
from .quiverrep import KRONECKER, W, Quiver, Representation
from .structure import IsoClassRegistry, exhaustive_universe, is_indecomposable, iso_test

__version__ = "0.1.0"

__all__ = [
    "GRMeasure", "IsoClassRegistry", "KRONECKER", "Quiver", "Representation", "W", "build",
    "exhaustive_universe", "gr_measure", "gr_submodules", "is_indecomposable", "iso_test",
    "measure_compare", "parse_model_id",
]
