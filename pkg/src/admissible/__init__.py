"""Admissible permutations between the step and weight classes of dyadic atoms."""

from .exceptions import DomainError, InvariantError, NotAdmissibleError, RefusalError
from .numeric import (
    DyadicIndex,
    binomial,
    binomial_row,
    bits,
    count_weight_upto,
    from_bits,
    istep,
    pascal_row,
    quantile_value,
    sbc,
    sbc_row,
    signs,
    walk_value,
    weight,
    weight_distribution,
)
from .permutations import (
    PermutationTable,
    SigmaSystem,
    admissible_count,
    enumerate_admissible,
    f,
    from_sigma,
    g,
    h,
    inv_f,
    is_admissible,
    natural_encoding,
    nonpersistence_witness,
    sigma_decomposition,
    verify_lower_bound_identity,
)
from .tame import TameRelation, beta_rank, card, enumerate_rel, ew, member, size

__version__ = "0.1.0"
