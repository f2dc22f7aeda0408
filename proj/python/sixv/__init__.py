"""Reflecting-end six-vertex model: exact enumeration, determinants, asymptotics and Monte Carlo."""

from ._core import (
    DomainError,
    arc_nw,
    arctic_curve,
    build_weights,
    contact_point,
    default_digits,
    enumerate_correlations,
    enumerate_extended,
    enumerate_Z,
    free_energy_rate,
    gamma_inverse,
    gamma_map,
    h_rate,
    hN_determinant,
    homogeneous_Z,
    monte_carlo,
    partial_inhom_Z,
    path_count,
    saddle_pair,
    tangent_line,
    tau_sequence,
    tsuchiya_Z,
    v_closed,
    v_numeric,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
