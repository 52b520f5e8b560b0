"""Adaptive continuum-armed bandits: CAB1.1, MeDZO, GPO, and rate theory."""

__version__ = "0.1.0"

from .envs import (
    BanditProblem,
    HolderParams,
    MeanPayoffFunction,
    NoiseModel,
    constant_function,
    global_max,
    holder_check,
    make_test_function,
    piecewise_linear,
    sample_reward,
    single_peak,
)
from .measures import (
    ArmMeasure,
    MeasureSet,
    disc,
    empirical_measure,
    measure_mean,
    sample_measure,
    uniform_measure,
)
from .moss import moss_bound, moss_init, moss_run, moss_select, moss_update
from .traces import RunTrace
from .cab1 import cab1_bound, cab11_nonadaptive, cab11_run, kstar
from .medzo import (
    AnytimeResult,
    MedzoResult,
    MedzoSchedule,
    anytime_bound,
    anytime_medzo,
    medzo_bound,
    medzo_run,
    medzo_sqrt_bound,
    schedule,
)
from .gpo import GpoResult, cum_to_simple, gpo_bound, gpo_lemma_cases, gpo_run
from .rates import (
    LowerBoundFamily,
    adaptive_lower_bound,
    globreg_check,
    lowerbound_family,
    m_of_gamma,
    minimax_exponent,
    proof_preset,
    satisfies_rate_inequation,
    theta,
)
from .harness import (
    ExperimentConfig,
    appendix_e_suite,
    checkpoints,
    fmt9,
    make_rng,
    run_experiment,
    run_gpo_experiment,
    write_experiment,
    write_gpo_experiment,
)
from .util import derive_seed
