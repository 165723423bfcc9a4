"""Fuzzy implicative association rule mining.

Rules are modeled as logical conditionals: a t-norm T evaluates the
antecedent conjunction, a fuzzy implication function I evaluates the
conditional, and the generalized modus ponens T(x, I(x, y)) evaluates the
inference. Because that expression need not be symmetric, support becomes
directional, and swapping antecedent and consequent can change a rule's
quality. The package certifies operator pairs numerically, mines rules with
a level-wise Apriori search over precomputed membership matrices, and ships
the similarity metric and desk-scale experiments that compare operator
choices.
"""

from .analysis import (
    SimilarityResult,
    SweepRow,
    ThresholdRow,
    gen_synthetic_ab,
    param_sweep,
    similarity,
    threshold_sweep,
)
from .data import (
    ColumnKind,
    Dataset,
    Literal,
    MembershipMatrix,
    build_partitions,
    export_mu_csv,
    fnv1a64,
    fuzzify,
    load_csv,
)
from .errors import (
    ConfigurationError,
    ImplimineError,
    IngestionError,
    UsageError,
)
from .miner import (
    Itemset,
    MinerConfig,
    RuleSet,
    brute_force_mine,
    frequent_itemsets,
    generate_rules,
    mine,
    prune_redundant,
    ruleset_from_json_text,
)
from .operators import (
    DEFAULT_IP_P,
    DEFAULT_SS_LAMBDA,
    IDENTITY_TOLERANCE,
    PROPERTY_TOLERANCE,
    ImplicationKind,
    ImplicationSpec,
    OperatorPair,
    PropertyReport,
    TNormKind,
    TNormSpec,
    adequate_pairs,
    certify,
    check_axioms,
    check_mtc,
    check_tc,
    gmp,
    implication,
    is_adequate,
    tnorm,
    tnorm_nary,
)
from .partitions import (
    DEFAULT_GRID,
    CrispCategory,
    CrispInterval,
    FuzzyPartition,
    GridSpec,
    Triangular,
    build_crisp_partition,
    build_numeric_partition,
    crispify,
    membership,
    partition_from_dict,
    partition_to_dict,
    partitions_from_json,
    partitions_to_json,
    triangular_membership,
)
from .rules import (
    QualityReport,
    Rule,
    is_refinement,
    mu_ant,
    mu_con,
    mu_eval,
    mu_rule,
    quality,
)

__version__ = "0.1.0"

__all__ = [
    "ColumnKind",
    "ConfigurationError",
    "CrispCategory",
    "CrispInterval",
    "DEFAULT_GRID",
    "DEFAULT_IP_P",
    "DEFAULT_SS_LAMBDA",
    "Dataset",
    "FuzzyPartition",
    "GridSpec",
    "IDENTITY_TOLERANCE",
    "ImplicationKind",
    "ImplicationSpec",
    "ImplimineError",
    "IngestionError",
    "Itemset",
    "Literal",
    "MembershipMatrix",
    "MinerConfig",
    "OperatorPair",
    "PROPERTY_TOLERANCE",
    "PropertyReport",
    "QualityReport",
    "Rule",
    "RuleSet",
    "SimilarityResult",
    "SweepRow",
    "TNormKind",
    "TNormSpec",
    "ThresholdRow",
    "Triangular",
    "UsageError",
    "adequate_pairs",
    "brute_force_mine",
    "build_crisp_partition",
    "build_numeric_partition",
    "build_partitions",
    "certify",
    "check_axioms",
    "check_mtc",
    "check_tc",
    "crispify",
    "export_mu_csv",
    "fnv1a64",
    "frequent_itemsets",
    "fuzzify",
    "gen_synthetic_ab",
    "generate_rules",
    "gmp",
    "implication",
    "is_adequate",
    "is_refinement",
    "load_csv",
    "membership",
    "mine",
    "mu_ant",
    "mu_con",
    "mu_eval",
    "mu_rule",
    "param_sweep",
    "partition_from_dict",
    "partition_to_dict",
    "partitions_from_json",
    "partitions_to_json",
    "prune_redundant",
    "quality",
    "ruleset_from_json_text",
    "similarity",
    "threshold_sweep",
    "tnorm",
    "tnorm_nary",
    "triangular_membership",
]
