"""Exact slopes, minimal slopes and canonical filtrations of Euclidean lattices."""

from .lattice import (
    Lattice,
    PowerRoot,
    SlopeValue,
    Sublattice,
    Subspace,
    compare,
    direct_sum,
    dual,
    index,
    intersect,
    orthogonal_complement,
    project,
    quotient,
    scale_gram,
    sharp,
    slope,
    slope_of,
    tensor,
)
from .slope_engine import (
    Filtration,
    MinSlopeResult,
    canonical_filtration,
    codestabilizing,
    destabilizing,
    first_minimum,
    is_semistable,
    max_slope,
    min_slope_bruteforce,
    parallelogram_check,
    quotient_minslope_check,
)
from .group_rep import (
    GroupAction,
    IsotypicDecomposition,
    commutant,
    invariant_subspaces,
    isotypic_decompose,
    min_slope_invariant,
    naive_automorphisms,
    validate_action,
)
from .tensor_conjecture import (
    ConjectureReport,
    SplitSubspace,
    TheoremAudit,
    audit_all_splits,
    conjecture_check,
    min_slope_tensor,
    product_action,
    reduction_predicates,
    split_invariant_subspaces,
    theorem_audit,
)
from .corpus import CorpusEntry, corpus, corpus_names

__version__ = "0.1.0"
