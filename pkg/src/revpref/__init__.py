"""Exact revealed-preference analysis of purchase datasets.

Consistency tests (GARP, SARP, e-GARP, homotheticity, objective concave
expected utility), exact goodness-of-fit indices (critical-cost
efficiency, per-observation budget waste, minimum removal, surplus
measure, money pump), rationalizing-utility construction, constructive
consistency-restoring perturbation, robust welfare comparisons, and
compensation levels. All arithmetic is exact rational.
"""

from .afriat import (
    DEFAULT_LOSS_TOLERANCE,
    MoneyPumpCycle,
    afriat_estar,
    afriat_index,
    afriat_loss,
    afriat_loss_bracket,
    construct_utility,
    money_pump,
    money_pump_cost,
    perturb_to_garp,
)
from .classes import ProbabilityVector, check_homothetic, check_oceu
from .dataset import (
    Bundle,
    Observation,
    PriceVector,
    PurchaseDataset,
    parse_csv,
    serialize_csv,
)
from .errors import (
    CapExceeded,
    DatasetError,
    InternalCheckError,
    RevprefError,
    StrongCycleError,
)
from .indices import (
    MEAN_SHORTFALL,
    Aggregator,
    RemovalSet,
    feasible_breakpoint_minimum,
    houtman_maks_index,
    houtman_maks_minsets,
    swaps_index,
    upper_contour_measure,
    varian_index,
)
from .orders import PreferenceOrder, is_admissible, optimize_preorders, order_efficiency
from .rational import as_fraction, format_rational
from .relations import (
    BreakpointGrid,
    CycleClass,
    CycleWitness,
    EfficiencyVector,
    GarpResult,
    RelationMatrix,
    breakpoints,
    check_e_garp,
    check_garp,
    check_sarp,
    classify_cycles,
    direct_relations,
    is_e_acyclic,
    reach_with_virtual,
    transitive_closure,
)
from .report import (
    IndexReport,
    Note,
    PanelSummary,
    average_ranks,
    build_index_report,
    panel_summary,
    spearman,
)
from .synth import GeneratorSpec, UtilityFamily, synthesize
from .utility import BudgetOptimum, PiecewiseConcaveUtility, maximize_on_budget
from .welfare import (
    CompensationResult,
    CompensationRegion,
    RobustQueryResult,
    Sharpness,
    Verdict,
    compensation_levels,
    compensation_regions,
    counterfactual_bundle,
    median_bundle,
    robust_pref_afriat,
    robust_pref_hm,
    robust_pref_varian,
    robust_query,
    sharpness_compare,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
