"""Collatz permutations and their u/d types."""
from .census import (
    CensusRow,
    Classification,
    brute_force_census,
    c_residue_report,
    census,
    check_prepend_closure,
    classify,
    et_list,
)
from .core import collatz_perm, collatz_step, rank_permutation, trace, trace_type, type_from_permutation
from .geometry import (
    asymptotic_permutation,
    crude_abscissa_bound,
    intersection,
    max_intersection_abscissa,
    permutation_at,
)
from .type_algebra import (
    AffineForm,
    Congruence,
    LineFamily,
    congruence,
    enumerate_types,
    fibonacci,
    prepend,
    sigma_to_affine,
    suffix_lines,
    validate_type,
)
from .witness import (
    WitnessSchedule,
    discrete_log_pow2,
    first_valid_witness,
    start_value,
    validate_witness,
    witness_schedule,
)

__version__ = "0.1.0"
