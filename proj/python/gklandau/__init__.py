"""Landau-level Hamiltonians, Wigner transforms and Gazeau-Klauder coherent
states on truncated Fock bases.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    ConvergenceError,
    GkCsLabel,
    ModelParams,
    NumericError,
    ParameterError,
    ResolutionError,
    SpaceMismatchError,
    TruncationError,
    action_continuous,
    action_identity_discrete,
    bch_defect,
    build_h1,
    build_h2,
    commutator,
    continuous_norm,
    cs_coefficients,
    cs_overlap,
    discrete_norm,
    displacement_qp,
    displacement_u,
    erf,
    erfc,
    evolution_check,
    evolve,
    family_norm_sq,
    fd_oscillator_levels,
    gauss_laguerre,
    gk_relabel,
    helicity_hamiltonians,
    helicity_ops,
    hermite_fn,
    hs_gram,
    infinitesimal_displacement,
    inverse_wigner,
    invert_action,
    ladder,
    matrix_exponential,
    quadratures,
    resolution_of_identity_check,
    run_suite,
    shifted_spectrum,
    sigma_weight,
    spectrum_h1,
    tensor_decompose_h,
    two_mode_cs,
    two_mode_closed_amplitude,
    u_matrix_element,
    wigner_dyad,
)

__version__ = "0.1.0"
