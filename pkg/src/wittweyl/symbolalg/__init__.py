"""Quotient algebras A_{((a,b))_{p^m,p^n}} over fields of characteristic p."""

from .algebra import (AlgebraMismatch, CharMismatch, IndexOutOfRange, LengthMismatch,
                      QuotElement, SymbolAlgebra, generic_field, generic_symbol_algebra,
                      make_symbol_algebra, quot_commutator, quot_mul, typical_set)
from .linalg import Echelon, kernel, rank
from .centralizer import (center, centralizer, centralizer_formula_check, monotone_profiles,
                          power_generators, predicted_exponents, predicted_monomials,
                          subalgebra_span)
from .simplicity import (ReductionTrace, Step, ZeroInput, random_element, replay,
                         simplicity_reduce, triples_decrease)
from .matrices import Matrix, MatrixRep, SplitFailure, regular_representation, split_zero_symbol
from .theorems import (ZeroB, ad_power_identity_check, azumaya_desk_check,
                       classical_symbol_iso_check, commutator_power_direct,
                       commutator_power_formula, falling_factorial_check,
                       fv_adjoint_structure_check, fv_symbol_reduction, power_commutator_check,
                       power_commutator_vanishing_check, power_subalgebra_span_check,
                       symbol_opposite_check, symbol_shift_check, symbol_triple_check)

__all__ = [name for name in dir() if not name.startswith("_")]
