"""Two-phase interface stability toolkit.

Thin Python surface over the C++ core: boundary-symbol evaluation,
growth-rate root finding, zero counting, per-mode transmission solves,
approximate-eigenvalue residual experiments and linearized modal evolution.
"""

from ._rtstab import (  # noqa: F401
    ContourTooCoarse,
    DegenerateInput,
    Diagnostics,
    DispersionCurve,
    EpsilonTooLarge,
    FluidParams,
    GridField,
    GridSpec,
    GrowthSummary,
    GrowthTable,
    GrowthTableEntry,
    ModeProfile,
    NoConvergence,
    OutOfBand,
    OverflowGuardError,
    RateProvenance,
    Rectangle,
    SimulationRun,
    SingularSystem,
    StableConfiguration,
    WindowFunction,
    ZeroCount,
    ZeroOnBoundary,
    analyticity_floor,
    apply_symbol_multiplier,
    asymptotic_constants,
    build_growth_table,
    build_heps,
    build_window,
    count_zeros_rhp,
    cutoff_wavenumber,
    diagnostics,
    dispersion_curve,
    dispersion_from_profile,
    eta,
    evolve,
    growth_rate,
    k_of_zeta,
    make_pure_mode,
    make_run,
    make_white_noise,
    max_growth,
    omega,
    phi,
    pressure_split,
    psi,
    residual_check,
    rightmost_root,
    solve_mode,
    sqrt_principal,
    symbol_s,
    witness_residual,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
