"""Counting first-order logic over graphs."""

from .builders import (
    FormulaBuilder,
    build_phi,
    build_phi_graph,
    build_psi,
    extension_axiom,
    has_extension_property,
    indexed_partitions,
    satisfies_extension_axiom,
)
from .formula import (
    FALSE,
    TRUE,
    And,
    Const,
    Edge,
    Eq,
    Exists,
    Formula,
    Not,
    Or,
    dag_size,
    evaluate,
    exists_exactly,
    forall,
    implies,
    width,
)
from .syntax import format_formula, parse_formula, same

__all__ = [
    "FALSE", "TRUE", "And", "Const", "Edge", "Eq", "Exists", "Formula", "FormulaBuilder", "Not",
    "Or", "build_phi", "build_phi_graph", "build_psi", "dag_size", "evaluate", "exists_exactly",
    "extension_axiom", "forall", "format_formula", "has_extension_property", "implies",
    "indexed_partitions", "parse_formula", "same", "satisfies_extension_axiom", "width",
]
