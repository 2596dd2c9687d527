"""Exact counting of eta-product relations (quiddity cycles) over Z/NZ.

The package computes, with exact integer arithmetic throughout, the number
of sequences (c_1, ..., c_n) over Z/NZ whose product of generators
eta(c) = [[c, -1], [1, 0]] equals a prescribed matrix: closed formulas and
recursions on one side, and an independent dynamic-programming enumeration
oracle over SL2(Z/N) on the other, with cross-verification suites tying
them together.
"""

from .matrices import (
    Mat2,
    bracket,
    eta,
    is_epsilon_quiddity,
    lambda_diag,
    lambda_of,
    reduce_32,
    reduce_43,
    reduce_53,
    twist,
)
from .oracle import (
    BudgetError,
    CountTable,
    count_all_targets,
    count_fixed_second,
    count_quiddity,
    count_sigma,
    kernel_name,
)
from .formulas import (
    FormulaResult,
    count_ideal_product_pairs,
    count_quiddity_even,
    count_quiddity_formula,
    count_quiddity_odd,
    field_cycle_count,
    ideal_pair_count,
    level_size,
    q_binom2,
    q_int,
    sigma_closed,
)
from .recursion import (
    PiTable,
    SigmaTable,
    class_aggregate_check,
    class_of,
    pi_recursive,
    residue_classes,
    sigma_recursive,
    sigma_reduction_check,
    step1_weight,
    step2_weight,
    tau_recursive,
    valuation_class_check,
)
from .ring import (
    NonUnitError,
    Residue,
    RingCtx,
    UnsupportedRingError,
    crt_combine,
    crt_split,
    inverse,
    ring,
    val_p,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CountTable",
    "FormulaResult",
    "Mat2",
    "NonUnitError",
    "PiTable",
    "Residue",
    "RingCtx",
    "SigmaTable",
    "UnsupportedRingError",
    "bracket",
    "class_aggregate_check",
    "class_of",
    "count_all_targets",
    "count_fixed_second",
    "count_ideal_product_pairs",
    "count_quiddity",
    "count_quiddity_even",
    "count_quiddity_formula",
    "count_quiddity_odd",
    "count_sigma",
    "crt_combine",
    "crt_split",
    "eta",
    "field_cycle_count",
    "ideal_pair_count",
    "inverse",
    "is_epsilon_quiddity",
    "kernel_name",
    "lambda_diag",
    "lambda_of",
    "level_size",
    "pi_recursive",
    "q_binom2",
    "q_int",
    "reduce_32",
    "reduce_43",
    "reduce_53",
    "residue_classes",
    "ring",
    "sigma_closed",
    "sigma_recursive",
    "sigma_reduction_check",
    "step1_weight",
    "step2_weight",
    "tau_recursive",
    "twist",
    "val_p",
    "valuation_class_check",
]
