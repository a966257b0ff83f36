//! Second-moment ("Gaussian") state engine.
//!
//! Zero-mean Gaussian states are carried as the pair
//!   normal[m][n]    = ⟨a_m† a_n⟩   (Hermitian, PSD)
//!   anomalous[m][n] = ⟨a_m a_n⟩    (symmetric)
//! and mode-mixing unitaries act by congruence. Fourth-order observables
//! (photon-number variances, covariances, noise figures) come from Wick
//! pairings of these two matrices, which is exact for Gaussian states.

use crate::error::{Error, Result};
use crate::gate::{multimode_gate, GateMatrix};
use crate::schmidt::SchmidtSpectrum;
use crate::tol;
use crate::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Physical role of a state mode. Keeps index bookkeeping honest across the
/// gate (row 0 of a gate always maps onto a `SumFrequency` mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeLabel {
    SumFrequency,
    /// Signal Schmidt mode of the given order.
    Signal(usize),
    /// Idler twin of the signal mode with the same order.
    Idler(usize),
    /// Auxiliary vacuum channel.
    Vacuum,
}

#[derive(Clone, Debug)]
pub struct GaussianMoments {
    labels: Vec<ModeLabel>,
    normal: DMatrix<C64>,
    anomalous: DMatrix<C64>,
}

impl GaussianMoments {
    /// Builds from explicit matrices, enforcing the symmetry structure.
    pub fn from_parts(
        labels: Vec<ModeLabel>,
        normal: DMatrix<C64>,
        anomalous: DMatrix<C64>,
    ) -> Result<Self> {
        let n = labels.len();
        if normal.nrows() != n
            || normal.ncols() != n
            || anomalous.nrows() != n
            || anomalous.ncols() != n
        {
            return Err(Error::DimensionMismatch(format!(
                "labels/matrices disagree: {n} labels, normal {}x{}, anomalous {}x{}",
                normal.nrows(),
                normal.ncols(),
                anomalous.nrows(),
                anomalous.ncols()
            )));
        }
        let mut herm = 0.0f64;
        let mut symm = 0.0f64;
        let mut scale = 1.0f64;
        for i in 0..n {
            for j in 0..n {
                herm = herm.max((normal[(i, j)] - normal[(j, i)].conj()).norm());
                symm = symm.max((anomalous[(i, j)] - anomalous[(j, i)]).norm());
                scale = scale
                    .max(normal[(i, j)].norm())
                    .max(anomalous[(i, j)].norm());
            }
        }
        // tolerance scales with the moment magnitude: bright states carry
        // proportionally larger transport roundoff
        if herm > tol::MOMENT_SYMMETRY_TOL * scale {
            return Err(Error::Invariant(format!(
                "normal moment matrix is not Hermitian (defect {herm:.3e})"
            )));
        }
        if symm > tol::MOMENT_SYMMETRY_TOL * scale {
            return Err(Error::Invariant(format!(
                "anomalous moment matrix is not symmetric (defect {symm:.3e})"
            )));
        }
        Ok(Self {
            labels,
            normal,
            anomalous,
        })
    }

    pub fn vacuum(labels: Vec<ModeLabel>) -> Self {
        let n = labels.len();
        Self {
            labels,
            normal: DMatrix::zeros(n, n),
            anomalous: DMatrix::zeros(n, n),
        }
    }

    /// Independent squeezed-vacuum modes, one per Schmidt order:
    /// ⟨A_n†A_n⟩ = sinh²(g_n), ⟨A_nA_n⟩ = sinh(g_n)cosh(g_n) (real squeezing
    /// phase). With `include_sf` the SF channel sits at index 0 in vacuum,
    /// so gate rows map onto state indices directly.
    pub fn squeezed_vacuum(spectrum: &SchmidtSpectrum, include_sf: bool) -> Self {
        let k = spectrum.mode_count();
        let offset = usize::from(include_sf);
        let n = k + offset;
        let mut labels = Vec::with_capacity(n);
        if include_sf {
            labels.push(ModeLabel::SumFrequency);
        }
        labels.extend((0..k).map(ModeLabel::Signal));
        let mut normal = DMatrix::zeros(n, n);
        let mut anomalous = DMatrix::zeros(n, n);
        for m in 0..k {
            let g = spectrum.mode_gain(m);
            normal[(offset + m, offset + m)] = C64::new(g.sinh() * g.sinh(), 0.0);
            anomalous[(offset + m, offset + m)] = C64::new(g.sinh() * g.cosh(), 0.0);
        }
        Self {
            labels,
            normal,
            anomalous,
        }
    }

    /// Twin-beam source: K signal/idler pairs with
    /// ⟨A_n†A_n⟩ = ⟨B_n†B_n⟩ = sinh²(g_n) and ⟨A_nB_n⟩ = sinh(g_n)cosh(g_n).
    /// Layout: signals 0..K, idlers K..2K.
    pub fn twin_beam(spectrum: &SchmidtSpectrum) -> Self {
        let k = spectrum.mode_count();
        let n = 2 * k;
        let mut labels = Vec::with_capacity(n);
        labels.extend((0..k).map(ModeLabel::Signal));
        labels.extend((0..k).map(ModeLabel::Idler));
        let mut normal = DMatrix::zeros(n, n);
        let mut anomalous = DMatrix::zeros(n, n);
        for m in 0..k {
            let g = spectrum.mode_gain(m);
            let nn = C64::new(g.sinh() * g.sinh(), 0.0);
            let sc = C64::new(g.sinh() * g.cosh(), 0.0);
            normal[(m, m)] = nn;
            normal[(k + m, k + m)] = nn;
            anomalous[(m, k + m)] = sc;
            anomalous[(k + m, m)] = sc;
        }
        Self {
            labels,
            normal,
            anomalous,
        }
    }

    /// Same state with a vacuum SF channel prepended at index 0.
    pub fn with_sf_channel(&self) -> Self {
        let n = self.mode_count();
        let mut labels = Vec::with_capacity(n + 1);
        labels.push(ModeLabel::SumFrequency);
        labels.extend_from_slice(&self.labels);
        let mut normal = DMatrix::zeros(n + 1, n + 1);
        let mut anomalous = DMatrix::zeros(n + 1, n + 1);
        normal.view_mut((1, 1), (n, n)).copy_from(&self.normal);
        anomalous
            .view_mut((1, 1), (n, n))
            .copy_from(&self.anomalous);
        Self {
            labels,
            normal,
            anomalous,
        }
    }

    pub fn mode_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: ModeLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn normal(&self) -> &DMatrix<C64> {
        &self.normal
    }

    pub fn anomalous(&self) -> &DMatrix<C64> {
        &self.anomalous
    }

    /// Applies the mode transformation a'_i = Σ_j U_ij a_j, where gate row r
    /// acts on state mode `mode_map[r]` and every unmapped mode rides along
    /// unchanged. The moments transform as M → U* M Uᵀ, S → U S Uᵀ.
    pub fn apply_gate(&self, gate: &GateMatrix, mode_map: &[usize]) -> Result<Self> {
        let n = self.mode_count();
        let d = gate.dim();
        if mode_map.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "gate has {d} channels but mode_map lists {}",
                mode_map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &m in mode_map {
            if m >= n {
                return Err(Error::DimensionMismatch(format!(
                    "mode_map entry {m} out of range for {n}-mode state"
                )));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidArgument(format!(
                    "mode_map maps two gate channels onto state mode {m}"
                )));
            }
        }

        let mut u = DMatrix::<C64>::identity(n, n);
        for (r, &tr) in mode_map.iter().enumerate() {
            for (c, &tc) in mode_map.iter().enumerate() {
                u[(tr, tc)] = gate.entries()[(r, c)];
            }
        }
        let u_t = u.transpose();
        let u_conj = u.map(|z| z.conj());
        let normal = &u_conj * &self.normal * &u_t;
        let anomalous = &u * &self.anomalous * &u_t;
        Self::from_parts(self.labels.clone(), normal, anomalous)
    }

    pub fn photon_number(&self, mode: usize) -> f64 {
        self.normal[(mode, mode)].re
    }

    pub fn photon_numbers(&self) -> Vec<f64> {
        (0..self.mode_count())
            .map(|m| self.photon_number(m))
            .collect()
    }

    pub fn total_photons(&self) -> f64 {
        (0..self.mode_count()).map(|m| self.photon_number(m)).sum()
    }

    /// Var[N_m] = M_mm + M_mm² + |S_mm|² (Wick, zero-mean Gaussian).
    pub fn photon_number_variance(&self, mode: usize) -> f64 {
        let n = self.normal[(mode, mode)].re;
        n + n * n + self.anomalous[(mode, mode)].norm_sqr()
    }

    /// Cov[N_i, N_j] = |M_ij|² + |S_ij|² for i ≠ j, the variance otherwise.
    pub fn photon_covariance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.photon_number_variance(i);
        }
        self.normal[(i, j)].norm_sqr() + self.anomalous[(i, j)].norm_sqr()
    }

    /// Var[N_a − N_b].
    pub fn number_difference_variance(&self, a: usize, b: usize) -> f64 {
        self.photon_number_variance(a) + self.photon_number_variance(b)
            - 2.0 * self.photon_covariance(a, b)
    }

    /// Noise reduction factor Var[N_a − N_b] / (⟨N_a⟩ + ⟨N_b⟩). Undefined
    /// when both modes are vacuum.
    pub fn noise_reduction_factor(&self, a: usize, b: usize) -> Result<f64> {
        let denom = self.photon_number(a) + self.photon_number(b);
        if denom < 1e-12 {
            return Err(Error::InvalidArgument(
                "noise reduction factor undefined for two vacuum modes".into(),
            ));
        }
        Ok(self.number_difference_variance(a, b) / denom)
    }

    /// (Var[X], Var[P]) with vacuum at (1/2, 1/2):
    /// Var[X] = 1/2 + M_nn + Re S_nn, Var[P] = 1/2 + M_nn − Re S_nn.
    pub fn quadrature_variances(&self, mode: usize) -> (f64, f64) {
        let n = self.normal[(mode, mode)].re;
        let s = self.anomalous[(mode, mode)].re;
        (0.5 + n + s, 0.5 + n - s)
    }

    pub fn uncertainty_product(&self, mode: usize) -> f64 {
        let (x, p) = self.quadrature_variances(mode);
        x * p
    }

    /// Photons in the pump-selected signal combination D = Σ μ_k A_k over
    /// the listed state modes: ⟨D†D⟩ = μ† M_sub μ.
    pub fn combination_photons(&self, coefficients: &[C64], modes: &[usize]) -> Result<f64> {
        if coefficients.len() != modes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients over {} modes",
                coefficients.len(),
                modes.len()
            )));
        }
        let mut acc = C64::default();
        for (ci, &mi) in coefficients.iter().zip(modes) {
            for (cj, &mj) in coefficients.iter().zip(modes) {
                acc += ci.conj() * self.normal[(mi, mj)] * cj;
            }
        }
        Ok(acc.re)
    }

    /// Symmetrized quadrature covariance in (x…, p…) ordering; vacuum = I/2.
    pub fn quadrature_covariance(&self) -> DMatrix<f64> {
        let n = self.mode_count();
        let mut sigma = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let m = self.normal[(i, j)];
                let s = self.anomalous[(i, j)];
                let delta = if i == j { 0.5 } else { 0.0 };
                sigma[(i, j)] = delta + m.re + s.re;
                sigma[(n + i, n + j)] = delta + m.re - s.re;
                sigma[(i, n + j)] = s.im + m.im;
                sigma[(n + j, i)] = s.im + m.im;
            }
        }
        sigma
    }

    /// Minimum symplectic eigenvalue of the quadrature covariance. Physical
    /// states satisfy ν_min ≥ 1/2; returns an invariant error below
    /// 1/2 − [`tol::PHYSICALITY_SLACK`]·max(1, ‖σ‖), the norm factor
    /// covering eigensolver roundoff on strongly squeezed states.
    pub fn check_physical(&self) -> Result<f64> {
        let n = self.mode_count();
        let sigma = self.quadrature_covariance();
        // σ must be positive definite before the symplectic spectrum means
        // anything: for indefinite σ the eigenvalues of Ωσ stray off the
        // imaginary axis and their moduli no longer bound ν.
        let spectrum = sigma.clone().symmetric_eigen().eigenvalues;
        let min_eig = spectrum.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let max_eig = spectrum.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if min_eig <= 0.0 {
            return Err(Error::Invariant(format!(
                "state is unphysical: covariance has eigenvalue {min_eig:.3e}"
            )));
        }
        // Ω σ with Ω = [[0, I], [−I, 0]]: swap block rows, negate the lower.
        let mut omega_sigma = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..2 * n {
            for i in 0..n {
                omega_sigma[(i, j)] = sigma[(n + i, j)];
                omega_sigma[(n + i, j)] = -sigma[(i, j)];
            }
        }
        // eigenvalues come in ±iν pairs; ν_min is the smallest modulus
        let eigs = omega_sigma.complex_eigenvalues();
        let nu_min = eigs.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if nu_min < 0.5 - tol::PHYSICALITY_SLACK * max_eig.max(1.0) {
            return Err(Error::Invariant(format!(
                "state is unphysical: minimum symplectic eigenvalue {nu_min} < 1/2"
            )));
        }
        Ok(nu_min)
    }

    pub fn observables(&self) -> Observables {
        let photon_numbers = self.photon_numbers();
        let total: f64 = photon_numbers.iter().sum();
        let weight_fractions = if total > 0.0 {
            Some(photon_numbers.iter().map(|n| n / total).collect())
        } else {
            None
        };
        Observables {
            labels: self.labels.clone(),
            quadrature_variances: (0..self.mode_count())
                .map(|m| {
                    let (x, p) = self.quadrature_variances(m);
                    [x, p]
                })
                .collect(),
            photon_number_variances: (0..self.mode_count())
                .map(|m| self.photon_number_variance(m))
                .collect(),
            photon_numbers,
            weight_fractions,
            total_photons: total,
        }
    }
}

/// Plain-data snapshot of per-mode observables, serializable for the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Observables {
    pub labels: Vec<ModeLabel>,
    pub photon_numbers: Vec<f64>,
    pub weight_fractions: Option<Vec<f64>>,
    pub photon_number_variances: Vec<f64>,
    /// [Var X, Var P] per mode, vacuum = [1/2, 1/2].
    pub quadrature_variances: Vec<[f64; 2]>,
    pub total_photons: f64,
}

/// Photon bookkeeping across a gate application. Both residuals vanish for
/// a unitary gate; `spectator_drift` confirms unmapped modes were untouched.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConservationReport {
    pub sf_photons_in: f64,
    pub sf_photons_out: f64,
    pub signal_combination_in: f64,
    pub signal_combination_out: f64,
    /// (N_SF + N_D)_out − (N_SF + N_D)_in.
    pub sf_exchange_residual: f64,
    /// (Σ N_k − N_D)_out − (Σ N_k − N_D)_in over matched modes.
    pub residual_channel_residual: f64,
    pub spectator_drift: f64,
}

/// Checks the two conservation laws of the gate between an input state and
/// the state returned by `apply_gate` with the same `mode_map` (entry 0 =
/// SF channel, 1.. = matched modes).
pub fn conservation_report(
    input: &GaussianMoments,
    output: &GaussianMoments,
    projections: &[C64],
    mode_map: &[usize],
) -> Result<ConservationReport> {
    if mode_map.len() != projections.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "mode_map has {} entries for {} projections (+1 SF)",
            mode_map.len(),
            projections.len()
        )));
    }
    if input.mode_count() != output.mode_count() {
        return Err(Error::DimensionMismatch(
            "input and output states differ in mode count".into(),
        ));
    }
    let sf = mode_map[0];
    let matched = &mode_map[1..];
    let sf_in = input.photon_number(sf);
    let sf_out = output.photon_number(sf);
    let d_in = input.combination_photons(projections, matched)?;
    let d_out = output.combination_photons(projections, matched)?;
    let sum_in: f64 = matched.iter().map(|&m| input.photon_number(m)).sum();
    let sum_out: f64 = matched.iter().map(|&m| output.photon_number(m)).sum();

    let mut spectator_drift = 0.0f64;
    for m in 0..input.mode_count() {
        if !mode_map.contains(&m) {
            spectator_drift =
                spectator_drift.max((output.photon_number(m) - input.photon_number(m)).abs());
        }
    }

    Ok(ConservationReport {
        sf_photons_in: sf_in,
        sf_photons_out: sf_out,
        signal_combination_in: d_in,
        signal_combination_out: d_out,
        sf_exchange_residual: (sf_out + d_out) - (sf_in + d_in),
        residual_channel_residual: (sum_out - d_out) - (sum_in - d_in),
        spectator_drift,
    })
}

/// Picks one Schmidt order out of a multimode squeezed seed with two
/// full-conversion gates: the first lifts the selected order into the SF
/// channel, the second drops the SF channel into a fresh output mode.
/// Returns the two-mode final stage (SF back in vacuum, output mode at
/// index 1 carrying the selected order's squeezed state).
pub fn select_cascade(
    spectrum: &SchmidtSpectrum,
    order: usize,
    theta: f64,
) -> Result<GaussianMoments> {
    if (theta - std::f64::consts::FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "the cascade only isolates a mode at full conversion (theta = pi/2), got {theta}"
        )));
    }
    let m = spectrum.mode_count();
    if order >= m {
        return Err(Error::InvalidArgument(format!(
            "selected order {order} out of range for {m} modes"
        )));
    }
    let input = GaussianMoments::squeezed_vacuum(spectrum, true);
    let mut mu = vec![C64::default(); m];
    mu[order] = C64::new(1.0, 0.0);
    let gate1 = multimode_gate(theta, &mu)?;
    let map: Vec<usize> = (0..=m).collect();
    let stage1 = input.apply_gate(&gate1, &map)?;

    // at full conversion the SF output is exactly the selected mode's state
    // and decouples from everything left behind; verify before carving it out
    let mut cross = 0.0f64;
    for k in 1..=m {
        cross = cross
            .max(stage1.normal[(0, k)].norm())
            .max(stage1.anomalous[(0, k)].norm());
    }
    if cross > tol::MOMENT_SYMMETRY_TOL {
        return Err(Error::Invariant(format!(
            "SF channel failed to decouple after stage 1 (residual coupling {cross:.3e})"
        )));
    }

    let labels = vec![ModeLabel::SumFrequency, ModeLabel::Signal(order)];
    let mut normal = DMatrix::zeros(2, 2);
    let mut anomalous = DMatrix::zeros(2, 2);
    normal[(0, 0)] = stage1.normal[(0, 0)];
    anomalous[(0, 0)] = stage1.anomalous[(0, 0)];
    let stage2_in = GaussianMoments::from_parts(labels, normal, anomalous)?;
    let gate2 = multimode_gate(theta, &[C64::new(1.0, 0.0)])?;
    stage2_in.apply_gate(&gate2, &[0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{multimode_gate, single_mode_gate};
    use approx::assert_relative_eq;

    fn single_mode_spectrum(g: f64) -> SchmidtSpectrum {
        SchmidtSpectrum::new(g, vec![1.0], 0.0, 1.0).unwrap()
    }

    #[test]
    fn squeezed_vacuum_moments() {
        let g = 0.8f64;
        let st = GaussianMoments::squeezed_vacuum(&single_mode_spectrum(g), true);
        assert_eq!(
            st.labels(),
            &[ModeLabel::SumFrequency, ModeLabel::Signal(0)]
        );
        assert_relative_eq!(st.photon_number(1), g.sinh().powi(2), epsilon = 1e-14);
        assert_relative_eq!(
            st.anomalous()[(1, 1)].re,
            g.sinh() * g.cosh(),
            epsilon = 1e-14
        );
        assert_relative_eq!(st.photon_number(0), 0.0);
        // quadratures of a squeezed mode: e^{±2g}/2
        let (x, p) = st.quadrature_variances(1);
        assert_relative_eq!(x, (2.0 * g).exp() / 2.0, epsilon = 1e-12);
        assert_relative_eq!(p, (-2.0 * g).exp() / 2.0, epsilon = 1e-12);
        assert_relative_eq!(st.uncertainty_product(1), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn purity_identity_for_squeezed_modes() {
        // For every gain: M(M+1) = S² on the diagonal.
        for &g in &[0.05, 0.3, 1.0, 2.2, 4.39] {
            let st = GaussianMoments::squeezed_vacuum(&single_mode_spectrum(g), false);
            let m = st.normal()[(0, 0)].re;
            let s = st.anomalous()[(0, 0)].re;
            assert_relative_eq!(m * (m + 1.0), s * s, max_relative = 1e-9);
        }
    }

    #[test]
    fn full_conversion_moves_the_squeezed_state_onto_the_sf_mode() {
        let g = 0.8f64;
        let st = GaussianMoments::squeezed_vacuum(&single_mode_spectrum(g), true);
        let gate = single_mode_gate(std::f64::consts::FRAC_PI_2);
        let out = st.apply_gate(&gate, &[0, 1]).unwrap();
        assert_relative_eq!(out.photon_number(0), g.sinh().powi(2), epsilon = 1e-12);
        assert!(out.photon_number(1).abs() < 1e-12);
        // anomalous moment rides along with +sin²Θ coefficient
        assert_relative_eq!(
            out.anomalous()[(0, 0)].re,
            g.sinh() * g.cosh(),
            epsilon = 1e-12
        );
        let (x, p) = out.quadrature_variances(0);
        assert_relative_eq!(x, (2.0 * g).exp() / 2.0, epsilon = 1e-12);
        assert_relative_eq!(p, (-2.0 * g).exp() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn trace_over_gated_modes_is_preserved() {
        let spec = SchmidtSpectrum::geometric(1.5, 0.6, 3, 0.0, 1.0).unwrap();
        let st = GaussianMoments::squeezed_vacuum(&spec, true);
        let mu = [
            C64::from_polar(0.7, 0.3),
            C64::from_polar((1.0 - 0.49f64).sqrt(), -1.1),
        ];
        let gate = multimode_gate(1.3, &mu).unwrap();
        let out = st.apply_gate(&gate, &[0, 1, 3]).unwrap();
        let before: f64 = [0usize, 1, 3].iter().map(|&m| st.photon_number(m)).sum();
        let after: f64 = [0usize, 1, 3].iter().map(|&m| out.photon_number(m)).sum();
        assert_relative_eq!(before, after, epsilon = 1e-12);
        // spectator mode untouched
        assert_relative_eq!(out.photon_number(2), st.photon_number(2), epsilon = 1e-14);
    }

    #[test]
    fn conservation_report_residuals_vanish() {
        let spec = SchmidtSpectrum::geometric(2.0, 0.5, 4, 0.0, 1.0).unwrap();
        let st = GaussianMoments::squeezed_vacuum(&spec, true);
        let mu = [C64::from_polar(0.6, 1.0), C64::from_polar(0.8, -0.4)];
        let gate = multimode_gate(0.77, &mu).unwrap();
        let map = [0usize, 2, 4];
        let out = st.apply_gate(&gate, &map).unwrap();
        let rep = conservation_report(&st, &out, &mu, &map).unwrap();
        assert!(rep.sf_exchange_residual.abs() < 1e-12, "{rep:?}");
        assert!(rep.residual_channel_residual.abs() < 1e-12, "{rep:?}");
        assert!(rep.spectator_drift < 1e-14);
    }

    #[test]
    fn twin_beam_number_difference_is_noiseless() {
        let spec = SchmidtSpectrum::new(1.0, vec![1.0], 0.0, 1.0).unwrap();
        let tb = GaussianMoments::twin_beam(&spec);
        let n = 1.0f64.sinh().powi(2);
        assert_relative_eq!(tb.photon_number(0), n, epsilon = 1e-14);
        assert_relative_eq!(tb.photon_number(1), n, epsilon = 1e-14);
        // Var[N_A − N_B] = 0 and NRF = 0 for ideal twins
        assert!(tb.number_difference_variance(0, 1).abs() < 1e-12);
        assert!(tb.noise_reduction_factor(0, 1).unwrap().abs() < 1e-12);
        // each beam alone is thermal: Var[N] = N + N² (S_AA = 0)
        assert_relative_eq!(tb.photon_number_variance(0), n * (1.0 + n), epsilon = 1e-12);
    }

    #[test]
    fn nrf_rejects_vacuum_pairs() {
        let st = GaussianMoments::vacuum(vec![ModeLabel::Signal(0), ModeLabel::Signal(1)]);
        assert!(st.noise_reduction_factor(0, 1).is_err());
    }

    #[test]
    fn vacuum_and_squeezed_states_are_physical() {
        let st = GaussianMoments::vacuum(vec![ModeLabel::Vacuum; 3]);
        assert_relative_eq!(st.check_physical().unwrap(), 0.5, epsilon = 1e-12);
        let spec = SchmidtSpectrum::geometric(2.5, 0.7, 4, 0.0, 1.0).unwrap();
        let sq = GaussianMoments::squeezed_vacuum(&spec, true);
        let nu = sq.check_physical().unwrap();
        assert!(
            (nu - 0.5).abs() < 1e-9,
            "pure squeezed state must sit on the boundary, ν={nu}"
        );
        let tb = GaussianMoments::twin_beam(&spec);
        assert!((tb.check_physical().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn unphysical_input_is_caught() {
        // ⟨a a⟩ too large for the occupation: violates ν ≥ 1/2
        let labels = vec![ModeLabel::Signal(0)];
        let normal = DMatrix::from_element(1, 1, C64::new(0.1, 0.0));
        let anomalous = DMatrix::from_element(1, 1, C64::new(0.9, 0.0));
        let st = GaussianMoments::from_parts(labels, normal, anomalous).unwrap();
        assert!(st.check_physical().is_err());
    }

    #[test]
    fn mode_map_validation() {
        let st = GaussianMoments::vacuum(vec![ModeLabel::Vacuum; 3]);
        let gate = single_mode_gate(0.4);
        assert!(st.apply_gate(&gate, &[0]).is_err());
        assert!(st.apply_gate(&gate, &[0, 7]).is_err());
        assert!(st.apply_gate(&gate, &[1, 1]).is_err());
        assert!(st.apply_gate(&gate, &[0, 2]).is_ok());
    }

    #[test]
    fn observables_snapshot_serializes() {
        let spec = SchmidtSpectrum::geometric(1.0, 0.5, 2, 0.0, 1.0).unwrap();
        let obs = GaussianMoments::squeezed_vacuum(&spec, true).observables();
        let json = serde_json::to_string(&obs).unwrap();
        let back: Observables = serde_json::from_str(&json).unwrap();
        assert_eq!(back.labels, obs.labels);
        assert_relative_eq!(back.total_photons, obs.total_photons);
    }

    #[test]
    fn cascade_isolates_one_order() {
        let spec = SchmidtSpectrum::geometric(2.0, 0.6, 6, 0.0, 1.0).unwrap();
        let theta = std::f64::consts::FRAC_PI_2;
        let out = select_cascade(&spec, 2, theta).unwrap();
        let g = spec.mode_gain(2);
        let idx = out.index_of(ModeLabel::Signal(2)).unwrap();
        assert!((out.photon_number(idx) - g.sinh().powi(2)).abs() < tol::CASCADE_TOL);
        let (vx, vp) = out.quadrature_variances(idx);
        assert!((vx - (2.0 * g).exp() / 2.0).abs() < tol::CASCADE_TOL);
        assert!((vp - (-2.0 * g).exp() / 2.0).abs() < tol::CASCADE_TOL);
        // SF channel hands everything over
        assert!(out.photon_number(0) < tol::CASCADE_TOL);
        // partial conversion can't isolate anything
        assert!(select_cascade(&spec, 2, 1.2).is_err());
    }
}
