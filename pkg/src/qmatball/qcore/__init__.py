"""Numeric and symbolic kernel: Laurent scalars, tensor-leg expressions, matrix-free norms."""
from .laurent import LaurentScalar, Q, ONE, ZERO, scalar_eval, minus_q_power
from .expr import (CIRCLE, FOCK, TensorExpression, circle_eval, lift_circle, q_limit,
                   simplify, tau_eval)
from .atoms import atom_matrix, compile_word, word_matrix
from .operator import CompiledOperator, LinearCombination, Space, apply, compile_expr, random_vectors
from .norms import (NormNotConverged, dq_series_check, essential_norm_estimate,
                    essential_norm_schedule, estimate_norm, lanczos_norm, num_equal, operator_norm,
                    power_norm, residual)
from .backend import BACKEND

__all__ = [
    "LaurentScalar", "Q", "ONE", "ZERO", "scalar_eval", "minus_q_power",
    "CIRCLE", "FOCK", "TensorExpression", "circle_eval", "lift_circle", "q_limit", "simplify", "tau_eval",
    "atom_matrix", "compile_word", "word_matrix",
    "CompiledOperator", "LinearCombination", "Space", "apply", "compile_expr", "random_vectors",
    "NormNotConverged", "dq_series_check", "essential_norm_estimate", "essential_norm_schedule",
    "estimate_norm", "lanczos_norm", "num_equal", "operator_norm", "power_norm", "residual", "BACKEND",
]
