"""Determinant polynomial families, their root tables and structural checks."""

from src.services.primitive.entries import EntryPolys, entry_polys
from src.services.primitive.families import (
    FamilyName,
    PolyFamily,
    build_family,
    expected_degree,
    f_iterate_poly,
    tridiagonal_rows,
)
from src.services.primitive.roots import (
    Bracket,
    RootEntry,
    RootTable,
    isolate_family_roots,
    primitive_roots,
    weak_brackets,
    weak_guides,
)
from src.services.primitive.signs import verify_interlacing, verify_sign_theorems

__all__ = [
    "Bracket",
    "EntryPolys",
    "FamilyName",
    "PolyFamily",
    "RootEntry",
    "RootTable",
    "build_family",
    "entry_polys",
    "expected_degree",
    "f_iterate_poly",
    "isolate_family_roots",
    "primitive_roots",
    "tridiagonal_rows",
    "verify_interlacing",
    "verify_sign_theorems",
    "weak_brackets",
    "weak_guides",
]
