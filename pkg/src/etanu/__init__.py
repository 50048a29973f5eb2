"""Finite groups acting compatibly on each other.

This package realizes the finitely presented group built from a compatible
action pair (G, H) as an explicit permutation group, extracts its tensor
subgroup, derivative subgroups and transport maps, and machine-checks a
battery of structural facts about them over a catalog of small groups.
"""

from .abelian import (
    AbelianGroup,
    IntegerMatrix,
    abelian_invariants_from_relations,
    abelian_structure,
    abelianization,
    smith_normal_form,
    tensor_Z,
)
from .actions import (
    ActionPair,
    check_compatibility,
    derivative,
    enumerate_compatible_actions,
    normality_check,
    nu_setup,
    trivial_actions,
    validate_actions,
)
from .catalog import builtin_group, builtin_pair, default_catalog
from .checks import CheckResult, build_tensor_report, run_all_checks
from .coset import KERNEL_NAME, CosetTable, coset_enumerate, perms_from_table
from .errors import (
    DegreeMismatch,
    EnumerationLimitExceeded,
    EtanuError,
    InfiniteAbelianization,
    InvariantViolation,
    NonAbelianInput,
    OrderLimitExceeded,
    PairTooLarge,
    SearchBudgetExceeded,
)
from .eta import (
    EtaRealization,
    TensorReport,
    decomposition_check,
    diagonal_subgroup,
    eta_presentation,
    lambda_mu,
    nu_presentation,
    realize,
    tensors,
)
from .perms import (
    Permutation,
    PermutationGroup,
    regular_representation,
    schreier_sims,
    subgroup_generated,
    table_from_perm_group,
)
from .suite import run_suite, search_extremal
from .tables import (
    GroupTable,
    Homomorphism,
    conjugacy_class_sizes,
    derived_subgroup,
    exponent,
    fingerprint,
)
from .words import Presentation, Word, cayley_presentation, free_reduce, parse_presentation

__version__ = "0.1.0"
