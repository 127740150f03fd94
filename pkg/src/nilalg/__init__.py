"""Finite-dimensional nilpotent Lie algebras over Q and GF(p): structure, multipliers, isomorphism."""

from .construct import (CATALOG_NAMES, DerivationAction, abelian, catalog, central_product, direct_sum,
                        free_nilpotent_class2, gh5, heisenberg, l5_9, recognize_dim1_derived, semidirect_sum,
                        seven_dim, stem_decompose)
from .errors import LieAlgError, ParseError
from .fileformat import algebra_from_json, algebra_to_json, load_algebra, parse_algebra, serialize_algebra
from .isomorph import (BasisChange, Inconclusive, NotIsomorphic, apply_basis_change, check_isomorphism,
                       find_isomorphism, fingerprint, random_basis_change)
from .liealg import (LieAlgebra, center, derived, hypothesis_check, jacobi_check, lower_central_series,
                     nilpotency_class, series, t_invariant, t_of_derived, upper_central_series)
from .linalg import Matrix, Subspace
from .multiplier import ce_h2_dim, invariant_bundle, tail_multiplier
from .normal_form import NormalForm, read_normal_form
from .reduction import parse_script, run_reduction
from .scalar import GF, QQ, Scalar, parse_field
from .theorem_a import theorem_a_classify

__version__ = "0.1.0"

__all__ = [
    "CATALOG_NAMES", "DerivationAction", "abelian", "catalog", "central_product", "direct_sum",
    "free_nilpotent_class2", "gh5", "heisenberg", "l5_9", "recognize_dim1_derived", "semidirect_sum",
    "seven_dim", "stem_decompose", "LieAlgError", "ParseError", "algebra_from_json", "algebra_to_json",
    "load_algebra", "parse_algebra", "serialize_algebra", "BasisChange", "Inconclusive", "NotIsomorphic",
    "apply_basis_change", "check_isomorphism", "find_isomorphism", "fingerprint", "random_basis_change",
    "LieAlgebra", "center", "derived", "hypothesis_check", "jacobi_check", "lower_central_series",
    "nilpotency_class", "series", "t_invariant", "t_of_derived", "upper_central_series", "Matrix", "Subspace",
    "ce_h2_dim", "invariant_bundle", "tail_multiplier", "NormalForm", "read_normal_form", "parse_script",
    "run_reduction", "GF", "QQ", "Scalar", "parse_field", "theorem_a_classify",
]
