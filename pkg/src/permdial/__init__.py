"""permdial: exact computer algebra for perm algebras and tensor dialgebras."""

from .algebras import (FiniteAlgebra, algebra_from_json, algebra_mul,
                       algebra_to_json, catalog_algebra, group_algebra_c2,
                       make_algebra, matrix_algebra, perm_quotient,
                       perm_window_algebra, rationals_algebra, tensor_algebra,
                       truncated_poly, validate_associative, validate_perm,
                       validate_unit)
from .dialgebras import (Dialgebra, DialgebraElement, dialgebra_from_associative,
                         dialgebra_from_json, dialgebra_mul, dialgebra_to_json,
                         find_bar_units, is_bar_unit, kp_dialgebra,
                         kp_window_dialgebra, validate_dialgebra)
from .operators import (LinOp, bracket, inner_Ad, inner_ad, is_algebra_derivation,
                        is_derivation, is_diderivation, is_left_derivation,
                        is_right_derivation, mult_left, mult_right)
from .poly import Poly, perm_circ, poly_eval0, poly_mul
from .reports import Report, Violation
from .scalars import Scalar, as_scalar, format_scalar, parse_scalar
from .solver import (ConstraintSystem, SubspaceBasis, algebra_derivation_space,
                     center_space, derivation_space, diderivation_space,
                     nullspace, span_contains, span_rank)
from .util import ContractViolation, FormatError

__version__ = "0.1.0"
