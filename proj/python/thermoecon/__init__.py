"""Exchange-economy dynamics and entropy toolkit."""

from thermoecon._core import (
    CanonicalPoint,
    ConfigError,
    Economy,
    EntropyModel,
    GoodVector,
    MacroState,
    MicroState,
    NumericError,
    SamplingError,
    Trajectory,
    accessible,
    calibrated_entropy,
    conserved_quantities,
    coolness,
    equal_split_state,
    equilibrium_amounts,
    estimate_coolness_from_pot,
    financial_contact_session,
    financial_equilibrium,
    flanking_states,
    free_energy,
    good_values,
    legendre_entropy,
    log_partition,
    log_utility,
    macro_state_of,
    match_money,
    plan_transition,
    run_axiom_suite,
    run_scenario,
    sample_budget_line,
    scale_economy,
    set_contact,
    simulate,
    single_component_macro,
    stationary_sample,
    thermo_integrate_log_z,
    trading_contact_session,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
