"""Dark-soliton qubit entanglement simulator."""

from ._dsq import (
    Basis,
    DensityMatrix4,
    DriveParams,
    ModelParams,
    NumericError,
    ParameterError,
    Rates,
    ValidationError,
    RateSet,
    WannierConvention,
    __version__,
    analytic_undriven,
    concurrence,
    coupling_amplitude,
    derive_nu,
    dicke_transform,
    dispersion,
    evolve,
    multi_soliton_experiment,
    pt_spectrum,
    qubit_gap,
    rate_set,
    rates_from,
    relax_impurity,
    resonant_wavevector,
    run_scenario,
    rwa_report,
    steady_concurrence_formula,
    steady_state,
    undriven_concurrence_formula,
    validate_params,
    wannier_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
