"""Two-criterion Choquet aggregation: evaluation, axiom checking, fitting."""

from choqfit.axioms import (
    DEFAULT_BUDGET,
    AxiomReport,
    check_a3,
    check_a4,
    check_a5,
    check_a5_sequences,
    check_all,
    check_bi_independence,
    check_essentiality,
    check_struct,
    check_triple_cancellation,
    check_weak_order,
    check_weak_separability,
    replay_witness,
)
from choqfit.capacity import (
    Capacity,
    CapacityCheck,
    all_subsets,
    choquet,
    comonotonic,
    validate_capacity,
)
from choqfit.feasible import (
    FeasibilityResult,
    FeasibilitySystem,
    Row,
    order_system,
    solve_main,
)
from choqfit.fitting import (
    AdditiveCone,
    AgreementReport,
    FitError,
    Representation,
    agreement,
    align_regions,
    extend_extremes,
    extract_capacity,
    fit,
    fit_cone_additive,
    fit_one_essential,
    join_cones,
    representation_from_dict,
    uniqueness_case,
)
from choqfit.fourier_motzkin import solve_exact
from choqfit.instances import induce
from choqfit.regions import (
    RegionLabeling,
    classify_regions,
    cone_mask,
    essential_on,
    solvability_gaps,
)
from choqfit.relation import (
    CoordinateOrder,
    MergeMap,
    PreferenceRelation,
    ProductSpace,
    RelationFormatError,
    coordinate_order,
    expand_values,
    load_relation,
    merge_duplicates,
    relation_from_dict,
    relation_to_dict,
    save_relation,
)
from choqfit.scans import ScanContext, octuple_witness, pair_rod_witness, transpose_relation

__version__ = "0.1.0"

__all__ = [
    "AdditiveCone",
    "agreement",
    "AgreementReport",
    "align_regions",
    "all_subsets",
    "AxiomReport",
    "Capacity",
    "CapacityCheck",
    "check_a3",
    "check_a4",
    "check_a5",
    "check_a5_sequences",
    "check_all",
    "check_bi_independence",
    "check_essentiality",
    "check_struct",
    "check_triple_cancellation",
    "check_weak_order",
    "check_weak_separability",
    "choquet",
    "classify_regions",
    "comonotonic",
    "cone_mask",
    "coordinate_order",
    "CoordinateOrder",
    "DEFAULT_BUDGET",
    "essential_on",
    "expand_values",
    "extend_extremes",
    "extract_capacity",
    "FeasibilityResult",
    "FeasibilitySystem",
    "fit",
    "fit_cone_additive",
    "fit_one_essential",
    "FitError",
    "induce",
    "join_cones",
    "load_relation",
    "merge_duplicates",
    "MergeMap",
    "octuple_witness",
    "order_system",
    "pair_rod_witness",
    "PreferenceRelation",
    "ProductSpace",
    "RegionLabeling",
    "relation_from_dict",
    "relation_to_dict",
    "RelationFormatError",
    "replay_witness",
    "Representation",
    "representation_from_dict",
    "Row",
    "save_relation",
    "ScanContext",
    "solvability_gaps",
    "solve_exact",
    "solve_main",
    "transpose_relation",
    "uniqueness_case",
    "__version__",
]
