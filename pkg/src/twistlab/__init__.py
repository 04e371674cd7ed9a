"""twistlab: finite logical matrices, twist algebras and definability checks."""

from .algebra import (
    AlgebraError, CheckResult, Equation, EvaluationError, FiniteAlgebra, Morphism, QuasiEquation,
    SignatureError, check_equation, check_quasiequation, direct_product, eval_term, find_isomorphism,
    generated_subalgebra, make_algebra,
)
from .classes import classify
from .definability import binary_clone, check_definition, is_definable
from .formula import FormulaSyntaxError, parse, render
from .matrices import LogicalMatrix, check_theses, connective_table, entails, is_valid, named_matrix
from .representation import box_image, diamond_image, roundtrip_check, verify_representation
from .twist import (
    TwistError, TwistSpec, check_closed_forms, check_universe_equivalence, enumerate_pi1_full_subalgebras,
    twist_build,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "CheckResult", "Equation", "EvaluationError", "FiniteAlgebra", "FormulaSyntaxError",
    "LogicalMatrix", "Morphism", "QuasiEquation", "SignatureError", "TwistError", "TwistSpec",
    "binary_clone", "box_image", "check_closed_forms", "check_definition", "check_equation",
    "check_quasiequation", "check_theses", "check_universe_equivalence", "classify", "connective_table",
    "diamond_image", "direct_product", "entails", "enumerate_pi1_full_subalgebras", "eval_term",
    "find_isomorphism", "generated_subalgebra", "is_definable", "is_valid", "make_algebra", "named_matrix",
    "parse", "render", "roundtrip_check", "twist_build", "verify_representation",
]
