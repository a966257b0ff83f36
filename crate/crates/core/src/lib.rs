//! Simulation engine for a pulsed frequency converter acting as a
//! mode-selective gate on squeezed light.
//!
//! The pieces, roughly in dependency order:
//!
//! * [`grid`]: frequency grids and complex mode functions on them.
//! * [`schmidt`]: Hermite-Gauss mode families and squeezer spectra.
//! * [`jsa`]: two-photon transfer amplitudes and their SVD mode structure.
//! * [`gate`]: the converter's unitary action on mode operators.
//! * [`moments`]: Gaussian second-moment propagation and observables.
//! * [`spectra`]: spectral densities, interference terms, phase sweeps.
//! * [`fock`]: truncated Fock-space oracle for end-to-end validation.
//!
//! All tolerances and caps live in [`tol`] so numbers are set in one place.

pub mod error;
pub mod fock;
pub mod gate;
pub mod grid;
pub mod jsa;
pub mod moments;
pub mod schmidt;
pub mod spectra;
pub mod tol;

/// Complex double, the scalar type used throughout.
pub type C64 = num_complex::Complex<f64>;

// downstream crates build matrices for [`moments::GaussianMoments`] and
// should use the same linear-algebra version this crate was built with
pub use nalgebra;
pub use num_complex;

pub use error::{Error, Result};
pub use fock::{
    apply_gate as fock_apply_gate, gate_unitary, squeeze_state, ComparisonReport, FockObservables,
    FockSpace, FockState, OracleScenario, SqueezeOp,
};
pub use gate::{
    decompose_gate, multimode_gate, projections, residual_mode, single_mode_gate, GateConfig,
    GateMatrix, ProjectionSet,
};
pub use grid::{FrequencyGrid, ModeFunction};
pub use jsa::{
    gaussian_pump, schmidt_decompose_jsa, sum_frequency_mode, two_photon_amplitude,
    DispersionParams, JsaGrid, JsaSchmidt, PhaseMatching,
};
pub use moments::{
    conservation_report, select_cascade, ConservationReport, GaussianMoments, ModeLabel,
    Observables,
};
pub use schmidt::{
    geometric_schmidt_weights, hermite_gauss_mode, mode_photon_number, mode_weight_fractions,
    HermitePhase, SchmidtSpectrum,
};
pub use spectra::{
    diagonal_density, interference_term, phase_sweep, spectral_density, weight_redistribution,
    PhaseSweep, SpectralDensity, WeightTable,
};
