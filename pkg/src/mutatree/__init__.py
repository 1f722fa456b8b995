"""Generating functions and brute-force counts for mutations in ordered trees."""

from .models import (
    MutationModel,
    ModelTables,
    asymptotic_form,
    coeff_new_type,
    coeff_trees,
    coeff_vertices,
    proportion,
    series_tables,
)
from .powerseries import Series
from .treealg import CatalanContext, build_context, uplift

__all__ = [
    "CatalanContext",
    "ModelTables",
    "MutationModel",
    "Series",
    "asymptotic_form",
    "build_context",
    "coeff_new_type",
    "coeff_trees",
    "coeff_vertices",
    "proportion",
    "series_tables",
    "uplift",
]

__version__ = "0.1.0"
