"""Finite-window analysis of integer sequences and their distributions."""

from .density import (
    APSet,
    CoverCertificate,
    DensityEstimate,
    FACTORIAL_LADDER,
    MeasurabilityReport,
    PRIMORIAL_LADDER,
    Predicate,
    ap_predicate,
    ap_union_density,
    asymptotic_density_profile,
    blocks_predicate,
    buck_measurability_check,
    buck_upper,
    count_in_window,
    primes_predicate,
    residue_saturation,
    squares_predicate,
    window_level_set,
)
from .dist import (
    EDF,
    IndependenceReport,
    MomentSummary,
    chebyshev_check,
    convolve_edf,
    correlation,
    edf,
    edf_sup_distance,
    interval_independence_stat,
    linearity_check,
    moments,
    region_density,
    statistical_independence_stat,
    stieltjes_mean,
    sup_norm,
    uniform_edf,
)
from .errors import (
    CapacityError,
    ConfigError,
    ContinuityBudgetError,
    DegenerateWindowError,
    DiagnosticError,
    DomainError,
    GateError,
    MeaseqError,
    ResolutionError,
    SpecificationError,
    WindowRangeError,
)
from .experiments import (
    ExperimentReport,
    clt_experiment,
    composed_independence_check,
    kolmogorov_distance,
    metric_ud_experiment,
    niven_ud_test,
    normal_cdf,
    pair_swap_indices,
    resample_invariance,
    vdc_family,
    vdc_family_primes,
    weak_law_experiment,
)
from .polyadic import (
    ContinuityProfile,
    DyadicRational,
    ExceptionalSet,
    HaarTrace,
    OmegaPoint,
    extend_eval,
    haar_integral,
    p_continuity_profile,
    period_mean,
    periodize,
    polyadic_distance,
    sample_omega,
    weak_continuity_profile,
)
from .seqgen import (
    AdditiveFunctionSpec,
    AdditiveSequence,
    BaseChain,
    CallableSequence,
    PeriodicTable,
    SequenceWindow,
    SimpleSequence,
    SimpleSpec,
    VdcSequence,
    apply_pointwise,
    gen_additive,
    gen_simple,
    gen_vdc,
    subsequence,
)

__version__ = "0.1.0"
