"""Conditional (GRH) bounds for generators of ideal class groups."""

from .numberfield import FieldError, NumberField, new_field
from .search import BoundReport, bdydf, bound
from .splitting import IdealNormTable

__all__ = ["BoundReport", "FieldError", "IdealNormTable", "NumberField", "bdydf", "bound",
           "new_field"]
