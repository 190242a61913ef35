"""Longitudinal solitons in a micropolar (Cosserat) medium."""

from ._core import (
    BlowUpError,
    CflError,
    CouplingMatrix,
    DomainError,
    MaterialParams,
    NoSolitonError,
    NotHyperbolicError,
    SolitonSolution,
    admissible_speed_windows,
    axial_to_skew,
    cfl_limit,
    coupling_matrix,
    dispersion_residual,
    eigenvalues,
    make_soliton,
    polar_decompose,
    rotation_exp,
    rotation_variation,
    run_checks,
    simulate_soliton,
    skew_to_axial,
    soliton_fields,
    solve_velocity,
    wave_number,
)

__all__ = [name for name in dir() if not name.startswith("_")]
