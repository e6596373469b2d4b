"""Klein-Gordon expanding-cavity numerics: python bindings over the C++ core."""

from ._core import (  # noqa: F401
    AsymptoticPolicy,
    Branch,
    ComplexSample,
    ModeData,
    MovingState,
    PhysicalConfig,
    SpectralExpansion,
    antiparticle_overlaps,
    evolve_static,
    expand_initial_state,
    j_imag_scaled,
    kg_current,
    kg_density,
    mode_velocity,
    oscillation_estimate,
    phase_phi,
    phi_static,
    precision_diagnostic,
    scaled_jt_yt,
    schrodinger_moving,
    truncation_estimate,
    wall_position,
    z_arg,
)

__all__ = [
    "AsymptoticPolicy",
    "Branch",
    "ComplexSample",
    "ModeData",
    "MovingState",
    "PhysicalConfig",
    "SpectralExpansion",
    "antiparticle_overlaps",
    "evolve_static",
    "expand_initial_state",
    "j_imag_scaled",
    "kg_current",
    "kg_density",
    "mode_velocity",
    "oscillation_estimate",
    "phase_phi",
    "phi_static",
    "precision_diagnostic",
    "scaled_jt_yt",
    "schrodinger_moving",
    "truncation_estimate",
    "wall_position",
    "z_arg",
]
