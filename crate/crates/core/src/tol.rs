//! Numerical tolerances and size caps, collected in one place so the
//! relationships between them stay visible. Loosening any of these to make a
//! test pass is the wrong fix; they encode how accurate each construction is
//! expected to be on a double-precision grid.

/// Gate matrices are built from closed-form entries; unitarity holds to
/// round-off, so anything above this is a construction bug.
pub const GATE_UNITARITY_TOL: f64 = 1e-12;

/// |Σ|μ|² - 1| up to this is treated as round-off drift and renormalized
/// (with a warning); beyond it the projection set is rejected as inconsistent.
pub const MU_NORM_TOL: f64 = 1e-6;

/// Budget for Hermite-Gauss tail mass falling outside the grid. Grids that
/// clip more than this distort overlaps in the sixth digit and are rejected.
pub const HG_TAIL_BUDGET: f64 = 1e-8;

/// On-grid trapezoid norm of a freshly built mode function (after the tail
/// check the values are renormalized, so this is essentially exact).
pub const GRID_NORM_TOL: f64 = 1e-9;

/// Pairwise trapezoid orthogonality of Hermite-Gauss modes on a default
/// grid. Limited by quadrature error, not by the mode construction.
pub const MODE_ORTHONORMALITY_TOL: f64 = 1e-6;

/// Schmidt weights must arrive normalized to this before use.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Moment matrices must be Hermitian (normal part) / symmetric (anomalous
/// part) to this at construction.
pub const MOMENT_SYMMETRY_TOL: f64 = 1e-12;

/// Physical Gaussian states have every symplectic eigenvalue ≥ 1/2; this
/// slack absorbs round-off from the Schur solve.
pub const PHYSICALITY_SLACK: f64 = 1e-9;

/// Spectral densities are real bilinear forms of a Hermitian matrix; the
/// imaginary residue is pure round-off.
pub const SPECTRAL_IMAG_TOL: f64 = 1e-10;

/// Mode-resolved diagonal + two-mode interference must reassemble the full
/// spectral density pointwise to this (the module's core identity).
pub const SPECTRAL_DECOMP_TOL: f64 = 1e-8;

/// L² reconstruction error allowed for the truncated Schmidt expansion of a
/// two-photon amplitude (all modes kept).
pub const JSA_RECONSTRUCTION_TOL: f64 = 1e-8;

/// Gaussian fit of the sinc phase-matching lobe, sinc(x) ≈ exp(-αx²).
/// Fixes the Gaussian-variant width via Δω = sqrt(2/α)/τ.
pub const SINC_GAUSS_ALPHA: f64 = 0.193;

/// Hard cap on truncated Fock-space dimension (memory guard).
pub const FOCK_DIM_LIMIT: usize = 1_000_000;

/// Most modes a truncated Fock space will ever carry (SF + two signal + two
/// idler covers every oracle scenario).
pub const FOCK_MODE_LIMIT: usize = 6;

/// Largest space for which the full gate unitary is materialized densely.
pub const FOCK_DENSE_LIMIT: usize = 4096;

/// Truncation leak budget for oracle seed states. Above this the cutoff is
/// too small for the requested gain and comparisons are meaningless.
pub const FOCK_LEAK_BUDGET: f64 = 1e-8;

/// Relative agreement demanded between the Fock oracle and the moment
/// engine (floor of 1 on the scale, so near-zero observables compare
/// absolutely).
pub const ORACLE_REL_TOL: f64 = 1e-6;

/// A cascade of two full-conversion gates must hand the selected mode
/// through unchanged to this tolerance.
pub const CASCADE_TOL: f64 = 1e-9;

// The caps only make sense in this order; keep the orderings pinned so a
// careless edit to one constant fails the build instead of skewing results.
const _: () = {
    assert!(GATE_UNITARITY_TOL < MU_NORM_TOL);
    assert!(GRID_NORM_TOL < MODE_ORTHONORMALITY_TOL);
    assert!(HG_TAIL_BUDGET <= 1e-6);
    assert!(SPECTRAL_IMAG_TOL < SPECTRAL_DECOMP_TOL);
    assert!(FOCK_DENSE_LIMIT < FOCK_DIM_LIMIT);
    assert!(FOCK_LEAK_BUDGET < ORACLE_REL_TOL);
    assert!(0.0 < SINC_GAUSS_ALPHA && SINC_GAUSS_ALPHA < 1.0);
};
