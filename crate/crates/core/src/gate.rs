//! Mode-resolved scattering matrices of the pulse gate.
//!
//! The gate couples the sum-frequency channel C to the signal combination
//! D = Σ μ_n A_n picked out by the pump envelope; the conversion angle Θ
//! plays the role of a beamsplitter angle between C and D. Row/column 0 of
//! every matrix here is the C channel, rows 1.. are the matched input modes
//! in the order the projections were supplied.

use crate::error::{Error, Result};
use crate::grid::ModeFunction;
use crate::tol;
use crate::C64;
use nalgebra::DMatrix;

/// Unitary mode-mixing matrix produced by the gate (row 0 = SF channel).
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    entries: DMatrix<C64>,
}

impl GateMatrix {
    fn checked(entries: DMatrix<C64>) -> Result<Self> {
        let m = Self { entries };
        let defect = m.unitarity_defect();
        if defect > tol::GATE_UNITARITY_TOL {
            return Err(Error::Invariant(format!(
                "gate matrix unitarity defect {defect:.3e} exceeds {:.1e}",
                tol::GATE_UNITARITY_TOL
            )));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// ‖U†U − 1‖∞, elementwise.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.entries.nrows();
        let gram = self.entries.adjoint() * &self.entries;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Matrix product, outer `self` applied after `first`.
    pub fn compose(&self, first: &GateMatrix) -> Result<GateMatrix> {
        if self.dim() != first.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}-dim with {}-dim gate",
                self.dim(),
                first.dim()
            )));
        }
        GateMatrix::checked(&self.entries * &first.entries)
    }
}

/// Two-channel rotation between the SF mode and a single matched mode:
/// C → cosΘ C + sinΘ D, D → −sinΘ C + cosΘ D.
pub fn single_mode_gate(theta: f64) -> GateMatrix {
    let (s, c) = theta.sin_cos();
    let entries = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(c, 0.0),
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
            C64::new(c, 0.0),
        ],
    );
    // rotation matrices are unitary by construction
    GateMatrix { entries }
}

/// Validates a projection vector: Σ|μ|² must equal 1 within
/// [`tol::MU_NORM_TOL`]. Small drift is renormalized (warned), larger
/// deviation is rejected. Returns the normalized vector.
pub(crate) fn normalized_projections(projections: &[C64]) -> Result<Vec<C64>> {
    if projections.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one projection coefficient".into(),
        ));
    }
    let sum_sq: f64 = projections.iter().map(|m| m.norm_sqr()).sum();
    let defect = (sum_sq - 1.0).abs();
    if defect > tol::MU_NORM_TOL {
        return Err(Error::Normalization(format!(
            "projection weights sum to {sum_sq}, expected 1 within {:.1e}",
            tol::MU_NORM_TOL
        )));
    }
    if defect > 0.0 && sum_sq > 0.0 {
        if defect > 1e-12 {
            log::warn!("renormalizing projection drift of {defect:.3e}");
        }
        let scale = 1.0 / sum_sq.sqrt();
        return Ok(projections.iter().map(|m| m * scale).collect());
    }
    Ok(projections.to_vec())
}

/// Gate acting on M matched modes at once. Dim = 1 + M; with the matched
/// amplitudes μ normalized, the rows are
///   row 0:  cosΘ, μ_1 sinΘ, …, μ_M sinΘ
///   row n: −μ_n* sinΘ, δ_nm + μ_n* μ_m (cosΘ − 1)
/// which reduces to [`single_mode_gate`] for M = 1, μ = 1.
pub fn multimode_gate(theta: f64, projections: &[C64]) -> Result<GateMatrix> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument("theta must be finite".into()));
    }
    let mu = normalized_projections(projections)?;
    let m = mu.len();
    let (s, c) = theta.sin_cos();
    let mut u = DMatrix::<C64>::zeros(1 + m, 1 + m);
    u[(0, 0)] = C64::new(c, 0.0);
    for (k, mu_k) in mu.iter().enumerate() {
        u[(0, 1 + k)] = mu_k * s;
        u[(1 + k, 0)] = -mu_k.conj() * s;
        for (j, mu_j) in mu.iter().enumerate() {
            let delta = if k == j {
                C64::new(1.0, 0.0)
            } else {
                C64::default()
            };
            u[(1 + k, 1 + j)] = delta + mu_k.conj() * mu_j * (c - 1.0);
        }
    }
    GateMatrix::checked(u)
}

/// Gate description used by scenario runners: angle, matched amplitudes and
/// which Schmidt orders they attach to.
#[derive(Clone, Debug)]
pub struct GateConfig {
    theta: f64,
    projections: Vec<C64>,
    matched_orders: Vec<usize>,
}

impl GateConfig {
    pub fn new(theta: f64, projections: Vec<C64>, matched_orders: Vec<usize>) -> Result<Self> {
        if projections.len() != matched_orders.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} projections for {} matched orders",
                projections.len(),
                matched_orders.len()
            )));
        }
        let mut seen = matched_orders.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != matched_orders.len() {
            return Err(Error::InvalidArgument(
                "matched orders must be distinct".into(),
            ));
        }
        let projections = normalized_projections(&projections)?;
        if !theta.is_finite() {
            return Err(Error::InvalidArgument("theta must be finite".into()));
        }
        Ok(Self {
            theta,
            projections,
            matched_orders,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn projections(&self) -> &[C64] {
        &self.projections
    }

    pub fn matched_orders(&self) -> &[usize] {
        &self.matched_orders
    }

    pub fn matrix(&self) -> Result<GateMatrix> {
        multimode_gate(self.theta, &self.projections)
    }
}

/// Projection of the gate's signal mode Φ onto a set of (orthonormal) input
/// modes: μ_n = ⟨u_n|Φ⟩, plus whatever weight the set failed to capture.
#[derive(Clone, Debug)]
pub struct ProjectionSet {
    pub coefficients: Vec<C64>,
    /// 1 − Σ|μ_n|²; callers should extend the mode set when this is large.
    pub unmatched: f64,
}

pub fn projections(signal_mode: &ModeFunction, modes: &[ModeFunction]) -> Result<ProjectionSet> {
    if modes.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one mode to project onto".into(),
        ));
    }
    let coefficients: Vec<C64> = modes
        .iter()
        .map(|u| u.overlap(signal_mode))
        .collect::<Result<_>>()?;
    let captured: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    Ok(ProjectionSet {
        coefficients,
        unmatched: 1.0 - captured,
    })
}

/// The signal-space direction the gate cannot see (two matched modes):
/// Φ_R = −μ_2* u_1 + μ_1* u_2, normalized.
pub fn residual_mode(projections: &[C64], modes: &[ModeFunction]) -> Result<ModeFunction> {
    if projections.len() != 2 || modes.len() != 2 {
        return Err(Error::InvalidArgument(
            "the residual mode is defined for exactly two matched modes".into(),
        ));
    }
    let mu = normalized_projections(projections)?;
    let grid = *modes[0].grid();
    if modes[1].grid() != &grid {
        return Err(Error::GridMismatch(
            "matched modes must share a grid".into(),
        ));
    }
    let values: Vec<C64> = modes[0]
        .values()
        .iter()
        .zip(modes[1].values())
        .map(|(u1, u2)| -mu[1].conj() * u1 + mu[0].conj() * u2)
        .collect();
    ModeFunction::new(grid, values)?.normalized()
}

/// Splits the two-matched-mode gate into (embedding, rotation, extraction):
/// a basis change into (C, D, R), the Θ-rotation acting on (C, D) only, and
/// the inverse basis change. extraction · rotation · embedding equals
/// [`multimode_gate`].
pub fn decompose_gate(
    theta: f64,
    projections: &[C64],
) -> Result<(GateMatrix, GateMatrix, GateMatrix)> {
    if projections.len() != 2 {
        return Err(Error::InvalidArgument(
            "gate decomposition is defined for exactly two matched modes".into(),
        ));
    }
    let mu = normalized_projections(projections)?;
    let one = C64::new(1.0, 0.0);
    let zero = C64::default();

    // (C, A1, A2) → (C, D, R)
    let embedding = DMatrix::from_row_slice(
        3,
        3,
        &[
            one,
            zero,
            zero,
            zero,
            mu[0],
            mu[1],
            zero,
            -mu[1].conj(),
            mu[0].conj(),
        ],
    );
    let (s, c) = theta.sin_cos();
    let rotation = DMatrix::from_row_slice(
        3,
        3,
        &[
            C64::new(c, 0.0),
            C64::new(s, 0.0),
            zero,
            C64::new(-s, 0.0),
            C64::new(c, 0.0),
            zero,
            zero,
            zero,
            one,
        ],
    );
    let extraction = embedding.adjoint();
    Ok((
        GateMatrix::checked(embedding)?,
        GateMatrix::checked(rotation)?,
        GateMatrix::checked(extraction)?,
    ))
}
