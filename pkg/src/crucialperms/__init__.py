"""Crucial power-free permutations: constructions, verification, search.

A factor of a permutation is a contiguous run of symbols; a k-power is a
factor splitting into k adjacent order-isomorphic blocks of length at
least two.  This package builds arbitrarily long right-crucial and
bicrucial k-power-free permutations, verifies cruciality by direct
computation over all extension classes, and scans short lengths
exhaustively.
"""

from .core import (
    LEFT,
    RIGHT,
    SIDES,
    DuplicateSymbol,
    OutOfRange,
    Perm,
    ZeroScale,
    affine_map,
    complement,
    extensions,
    factor_at,
    is_order_isomorphic,
    normalize,
    reverse,
    validate_permutation,
)
from .powers import (
    BadExponent,
    PowerWitness,
    count_factor_patterns,
    find_k_power,
    is_k_power_free,
    witness_valid,
)
from .levels import (
    DESCENT_ASCENT,
    FREE,
    LAST_ASCENT,
    LOWER,
    MEDIUM_ASC,
    MEDIUM_DESC,
    ROLE_CYCLE,
    UPPER,
    BoundaryConstraint,
    ConditionReport,
    HasLengthFourSquare,
    LevelDecomposition,
    NoValidPhase,
    UnsatisfiableConstraint,
    check_conditions,
    hml_compose,
    level_decompose,
    square_free_generate,
)
from .constructions import (
    KINDS,
    BadParameters,
    ConstructionSpec,
    GenerationFailed,
    b_perm,
    build,
    f_perm,
    h_perm,
    n_block,
    ps_perms,
    q_block,
    r_perm,
    rtilde_perm,
    t_block,
    w_block,
)
from .cruciality import (
    BICRUCIAL,
    AuditResult,
    CrucialityReport,
    ExtensionOutcome,
    FactorPairHit,
    check_bicrucial,
    check_crucial,
    lemma_factor_audit,
)
from .search import (
    CheckpointCorrupt,
    SearchCheckpoint,
    SearchFindings,
    enumerate_power_free,
    fresh_checkpoint,
    load_checkpoint,
    resume,
    save_checkpoint,
    scan_crucial,
)

__version__ = "0.1.0"

__all__ = [
    "LEFT",
    "RIGHT",
    "SIDES",
    "BICRUCIAL",
    "Perm",
    "DuplicateSymbol",
    "OutOfRange",
    "ZeroScale",
    "BadExponent",
    "affine_map",
    "complement",
    "extensions",
    "factor_at",
    "is_order_isomorphic",
    "normalize",
    "reverse",
    "validate_permutation",
    "PowerWitness",
    "count_factor_patterns",
    "find_k_power",
    "is_k_power_free",
    "witness_valid",
    "LOWER",
    "MEDIUM_ASC",
    "UPPER",
    "MEDIUM_DESC",
    "ROLE_CYCLE",
    "FREE",
    "LAST_ASCENT",
    "DESCENT_ASCENT",
    "BoundaryConstraint",
    "ConditionReport",
    "HasLengthFourSquare",
    "LevelDecomposition",
    "NoValidPhase",
    "UnsatisfiableConstraint",
    "check_conditions",
    "hml_compose",
    "level_decompose",
    "square_free_generate",
    "KINDS",
    "BadParameters",
    "GenerationFailed",
    "ConstructionSpec",
    "build",
    "t_block",
    "n_block",
    "q_block",
    "w_block",
    "r_perm",
    "f_perm",
    "rtilde_perm",
    "ps_perms",
    "h_perm",
    "b_perm",
    "AuditResult",
    "CrucialityReport",
    "ExtensionOutcome",
    "FactorPairHit",
    "check_bicrucial",
    "check_crucial",
    "lemma_factor_audit",
    "CheckpointCorrupt",
    "SearchCheckpoint",
    "SearchFindings",
    "enumerate_power_free",
    "fresh_checkpoint",
    "load_checkpoint",
    "resume",
    "save_checkpoint",
    "scan_crucial",
]
