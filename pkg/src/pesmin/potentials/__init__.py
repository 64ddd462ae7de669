from .base import (CountingPotential, EvaluationError, PesEvaluation, Potential,
                   as_coords, ensure_counting, numerical_force, numerical_gradient)
from .catalog import (SUITE_2D, SUITE_4D, CatalogPotential, UnknownFunctionError,
                      catalog_lookup, catalog_names)
from .external import ExternalPotential, ProtocolError
from .leps import Leps1, Leps2, LepsParams, leps1, leps2
from .registry import resolve_surface

__all__ = [
    "Potential", "PesEvaluation", "CountingPotential", "EvaluationError",
    "as_coords", "ensure_counting", "numerical_gradient", "numerical_force",
    "CatalogPotential", "UnknownFunctionError", "catalog_lookup", "catalog_names",
    "SUITE_2D", "SUITE_4D",
    "LepsParams", "Leps1", "Leps2", "leps1", "leps2",
    "ExternalPotential", "ProtocolError", "resolve_surface",
]
