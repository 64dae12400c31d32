"""Slotted random-access simulator: repetition-based ALOHA variants on the
Gaussian multiple access channel with an MRC+SIC receiver."""

from .distributions import (
    DegreeDistribution,
    avg_degree,
    fixed_l3,
    from_name,
    ideal_soliton,
    modified_soliton,
    sample_degree,
    sample_degrees,
)
from .frame_graph import (
    FrameGraph,
    ResidualState,
    build_frame,
    degree_one_slots,
    peel,
)
from .schemes import (
    ChannelConfig,
    InfeasibleOperatingPointError,
    SchemeConfig,
    TransmitProfile,
    TuningParameterError,
    build_profile,
    es_from_reference,
    hat_es_from_rate,
    pa_powers,
    rate_irsa,
    rate_rs,
)
from .decoder import (
    DecodeResult,
    decode_frame,
    effective_sinr,
    irsa_peeling_oracle,
)
from .metrics import (
    TrialMetrics,
    c_ref,
    gamma_irsa_min,
    gamma_pa_analytic,
    jensen_bound_rs,
    trial_metrics,
)
from .harness import (
    CompareRow,
    MuTuning,
    RsTuning,
    SweepRecord,
    SweepSpec,
    compare_rs_pa,
    run_sweep,
    run_trial,
    run_tuned_pa_sweep,
    run_tuned_rs_sweep,
    tune_mu,
    tune_rs,
)

__version__ = "0.1.0"
