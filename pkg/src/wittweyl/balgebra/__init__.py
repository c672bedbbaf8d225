"""The algebras B_{P,Q}(R), their structure polynomials and structural checks."""

from .core import (CTABLE, DEFAULT_C_BOUND, Algebra, AlgElement, BAlgebraCtx, BElement,
                   CTable, TensorAlgebra, TensorBElement, c_typical, commutator, compute_c,
                   lambda_coeff, nf_commutator, nf_mul, partitions, swap_cache,
                   tensor_nf_mul)
from .weyl import compute_c_weyl_oracle, has_integer_coefficients, routes_agree
from .checks import (c_relations_hold, exp_commutation_series_check, family_commutes,
                     frobenius_family, frobenius_subalgebra_check, opposite_check,
                     relations_hold, self_commutes, shift_check, tensor_shift_check,
                     triple_tensor_check)

__all__ = [name for name in dir() if not name.startswith("_")]
