"""Verification engine for skeletal modular tensor category data.

Subpackages cover the category data model and its coherence checks, the
fusion-tree graphical calculus with the bending operators, the doubled
category, the diagonal algebra with its invariant form, and the sphere
sewing combinatorics with an independent geometric oracle.
"""

from .fusion_data import (
    CategoryData,
    CategoryDataError,
    FusionRing,
    Label,
    builtin_category,
    emit_category,
    load_category,
    loads_category,
    quantum_dimension,
    verify_coherence,
)
from .report import Report, emit_report

__all__ = [
    "CategoryData",
    "CategoryDataError",
    "FusionRing",
    "Label",
    "builtin_category",
    "emit_category",
    "load_category",
    "loads_category",
    "quantum_dimension",
    "verify_coherence",
    "Report",
    "emit_report",
]

__version__ = "0.1.0"
