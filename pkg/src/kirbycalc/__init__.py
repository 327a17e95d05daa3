"""Algebraic Kirby calculus: handle decompositions, moves, homology,
integral quadratic forms, cork/plug twists, rational blow-down,
logarithmic transforms and Legendrian fronts."""
from .diagram import (DiagramError, HandleDecomposition, dotted, framed,
                      parse_diagram, serialize, validate)
from .forms import (Budget, Distinct, Equivalent, SymmetricIntMatrix, Unknown,
                    congruent, diag_form, parity, represents, signature)
from .homology import HomologySummary, euler_characteristic, h1
from .kernels import BACKEND
from .moves import apply_script, parse_script

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Budget", "DiagramError", "Distinct", "Equivalent",
    "HandleDecomposition", "SymmetricIntMatrix", "Unknown", "apply_script",
    "congruent", "diag_form", "dotted", "euler_characteristic", "framed", "h1",
    "HomologySummary", "parity", "parse_diagram", "parse_script", "represents",
    "serialize", "signature", "validate",
]
