//! Frequency-resolved photon-number densities and mode-weight tables.
//!
//! The full density 𝒩(ω) = Σ_{n,m} u_n(ω) u_m*(ω) ⟨A_m†A_n⟩ is the ground
//! truth; the mode-diagonal part plus the two-mode interference term must
//! reassemble it pointwise, which is the main identity tested against this
//! module.

use crate::error::{Error, Result};
use crate::gate::GateConfig;
use crate::grid::{FrequencyGrid, ModeFunction};
use crate::moments::{GaussianMoments, ModeLabel};
use crate::schmidt::{mode_weight_fractions, SchmidtSpectrum};
use crate::tol;
use crate::C64;
use serde::{Deserialize, Serialize};

/// Real, non-negative density of photons over frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDensity {
    grid: FrequencyGrid,
    values: Vec<f64>,
}

impl SpectralDensity {
    pub fn new(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} points but {} samples supplied",
                grid.count(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// ∫ 𝒩 dω; equals the summed mode occupations when the modes are
    /// orthonormal on the grid.
    pub fn integral(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the largest sample.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        best
    }

    /// Rescaled so the peak is 1 (figure normalization). Errors when the
    /// density has no positive mass.
    pub fn normalized_by_max(&self) -> Result<Self> {
        let m = self.max();
        if m.is_nan() || m <= 0.0 {
            return Err(Error::Normalization(
                "cannot peak-normalize a non-positive density".into(),
            ));
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v / m).collect(),
        })
    }
}

/// Full spectral density of the listed (state-mode, mode-function) pairs.
/// All mode functions must share one grid; the result is real to round-off
/// because the normal matrix is Hermitian.
pub fn spectral_density(
    state: &GaussianMoments,
    modes: &[(usize, ModeFunction)],
) -> Result<SpectralDensity> {
    if modes.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one mode to resolve a spectrum".into(),
        ));
    }
    let grid = *modes[0].1.grid();
    for (_, f) in modes {
        if f.grid() != &grid {
            return Err(Error::GridMismatch(
                "all mode functions must share one grid".into(),
            ));
        }
    }
    for &(m, _) in modes {
        if m >= state.mode_count() {
            return Err(Error::DimensionMismatch(format!(
                "state has {} modes, index {m} requested",
                state.mode_count()
            )));
        }
    }

    let k = modes.len();
    let mut values = vec![0.0f64; grid.count()];
    let mut scale = 0.0f64;
    let mut worst_im = 0.0f64;
    for (w, value) in values.iter_mut().enumerate() {
        let mut acc = C64::default();
        for n in 0..k {
            let un = modes[n].1.values()[w];
            for m in 0..k {
                let um = modes[m].1.values()[w];
                acc += un * um.conj() * state.normal()[(modes[m].0, modes[n].0)];
            }
        }
        scale = scale.max(acc.re.abs());
        worst_im = worst_im.max(acc.im.abs());
        *value = acc.re;
    }
    if worst_im > tol::SPECTRAL_IMAG_TOL * scale.max(1.0) {
        return Err(Error::Invariant(format!(
            "spectral density picked up an imaginary part {worst_im:.3e} (scale {scale:.3e})"
        )));
    }
    SpectralDensity::new(grid, values)
}

/// Two-mode interference contribution to the post-gate spectral density for
/// a gate matched onto exactly two modes with uncorrelated occupations
/// N_in: I(ω) = 2 Re{u_1*(ω) u_2(ω) μ_1 μ_2*} (cosΘ−1) Σ_k (1+|μ_k|²(cosΘ−1)) N_k.
///
/// The μ product follows from the gate matrix itself (transport of the
/// off-diagonal moment), so the diagonal + interference decomposition is an
/// identity for every (Θ, μ).
pub fn interference_term(
    config: &GateConfig,
    seed_photons: &[f64],
    modes: &[ModeFunction],
) -> Result<SpectralDensity> {
    if config.projections().len() != 2 || modes.len() != 2 || seed_photons.len() != 2 {
        return Err(Error::InvalidArgument(
            "interference term is defined for exactly two matched modes".into(),
        ));
    }
    let grid = *modes[0].grid();
    if modes[1].grid() != &grid {
        return Err(Error::GridMismatch(
            "matched modes must share a grid".into(),
        ));
    }
    let mu = config.projections();
    let c = config.theta().cos();
    let weight: f64 = (0..2)
        .map(|k| (1.0 + mu[k].norm_sqr() * (c - 1.0)) * seed_photons[k])
        .sum();
    let prefactor = mu[0] * mu[1].conj() * (c - 1.0) * weight;
    let values = modes[0]
        .values()
        .iter()
        .zip(modes[1].values())
        .map(|(u1, u2)| 2.0 * (u1.conj() * u2 * prefactor).re)
        .collect();
    SpectralDensity::new(grid, values)
}

/// Mode-diagonal part of the density: Σ_n |u_n(ω)|² M_nn.
pub fn diagonal_density(
    state: &GaussianMoments,
    modes: &[(usize, ModeFunction)],
) -> Result<SpectralDensity> {
    if modes.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one mode to resolve a spectrum".into(),
        ));
    }
    let grid = *modes[0].1.grid();
    let mut values = vec![0.0f64; grid.count()];
    for (mode_idx, f) in modes {
        if f.grid() != &grid {
            return Err(Error::GridMismatch(
                "all mode functions must share one grid".into(),
            ));
        }
        let occ = state.photon_number(*mode_idx);
        for (w, v) in f.values().iter().enumerate() {
            values[w] += v.norm_sqr() * occ;
        }
    }
    SpectralDensity::new(grid, values)
}

/// Matrix of peak-normalized output spectra, one row per relative phase.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseSweep {
    pub phases: Vec<f64>,
    pub omegas: Vec<f64>,
    /// rows[p][w]: normalized density at phase p, frequency w.
    pub rows: Vec<Vec<f64>>,
}

/// Sweeps the relative phase Δφ between two equally-weighted matched modes
/// and records the peak-normalized output spectrum of the whole Schmidt set.
///
/// Δφ is the *total* interference phase: the iⁿ phases of the two mode
/// orders are folded into arg μ_2 so that the interference term carries
/// exactly cos Δφ.
pub fn phase_sweep(
    spectrum: &SchmidtSpectrum,
    orders: (usize, usize),
    theta: f64,
    phases: &[f64],
    grid: &FrequencyGrid,
) -> Result<PhaseSweep> {
    let (n1, n2) = orders;
    let k = spectrum.mode_count();
    if n1 >= k || n2 >= k || n1 == n2 {
        return Err(Error::InvalidArgument(format!(
            "matched orders ({n1},{n2}) invalid for a {k}-mode spectrum"
        )));
    }
    if phases.is_empty() {
        return Err(Error::InvalidArgument("empty phase list".into()));
    }
    let modes = spectrum.mode_functions(grid)?;
    let seed = GaussianMoments::squeezed_vacuum(spectrum, true);
    let half = 1.0 / 2.0f64.sqrt();
    // arg(conj(u_n1) u_n2) contributes (n2-n1)·π/2; compensate so the total
    // interference phase equals Δφ.
    let fold = (n2 as f64 - n1 as f64) * std::f64::consts::FRAC_PI_2;

    let pairs: Vec<(usize, ModeFunction)> = (0..k).map(|n| (1 + n, modes[n].clone())).collect();
    let mut rows = Vec::with_capacity(phases.len());
    for &dphi in phases {
        let mu = vec![C64::new(half, 0.0), C64::from_polar(half, fold - dphi)];
        let config = GateConfig::new(theta, mu, vec![n1, n2])?;
        let gate = config.matrix()?;
        let out = seed.apply_gate(&gate, &[0, 1 + n1, 1 + n2])?;
        let density = spectral_density(&out, &pairs)?.normalized_by_max()?;
        rows.push(density.values().to_vec());
    }
    Ok(PhaseSweep {
        phases: phases.to_vec(),
        omegas: grid.points().collect(),
        rows,
    })
}

/// Photon-weight fractions of the signal Schmidt modes before and after a
/// gate, keyed by mode order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightTable {
    pub orders: Vec<usize>,
    pub input: Vec<f64>,
    pub output: Vec<f64>,
}

pub fn weight_redistribution(
    input: &GaussianMoments,
    output: &GaussianMoments,
) -> Result<WeightTable> {
    if input.mode_count() != output.mode_count() {
        return Err(Error::DimensionMismatch(
            "weight table needs matching mode sets".into(),
        ));
    }
    let mut orders = Vec::new();
    let mut n_in = Vec::new();
    let mut n_out = Vec::new();
    for (idx, label) in input.labels().iter().enumerate() {
        if let ModeLabel::Signal(order) = label {
            orders.push(*order);
            n_in.push(input.photon_number(idx));
            n_out.push(output.photon_number(idx));
        }
    }
    if orders.is_empty() {
        return Err(Error::InvalidArgument(
            "state has no signal modes to tabulate".into(),
        ));
    }
    Ok(WeightTable {
        orders,
        input: mode_weight_fractions(&n_in)?,
        output: mode_weight_fractions(&n_out)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::multimode_gate;
    use approx::assert_relative_eq;

    fn test_spectrum(gain: f64, count: usize) -> SchmidtSpectrum {
        SchmidtSpectrum::geometric(gain, 0.8, count, 0.0, 1.0).unwrap()
    }

    fn default_grid() -> FrequencyGrid {
        FrequencyGrid::default_for_width(1.0).unwrap()
    }

    #[test]
    fn density_integrates_to_total_occupation() {
        let spec = test_spectrum(1.2, 5);
        let grid = default_grid();
        let modes = spec.mode_functions(&grid).unwrap();
        let st = GaussianMoments::squeezed_vacuum(&spec, false);
        let pairs: Vec<_> = modes.into_iter().enumerate().collect();
        let density = spectral_density(&st, &pairs).unwrap();
        let total: f64 = st.total_photons();
        assert_relative_eq!(density.integral(), total, max_relative = 1e-6);
        assert!(density.values().iter().all(|v| *v >= -1e-12));
    }

    #[test]
    fn diagonal_equals_full_density_for_diagonal_moments() {
        let spec = test_spectrum(0.9, 4);
        let grid = default_grid();
        let modes = spec.mode_functions(&grid).unwrap();
        let st = GaussianMoments::squeezed_vacuum(&spec, false);
        let pairs: Vec<_> = modes.into_iter().enumerate().collect();
        let full = spectral_density(&st, &pairs).unwrap();
        let diag = diagonal_density(&st, &pairs).unwrap();
        for (a, b) in full.values().iter().zip(diag.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn decomposition_identity_holds_pointwise() {
        // full post-gate density == diagonal part + interference term
        let spec = test_spectrum(1.4, 4);
        let grid = default_grid();
        let modes = spec.mode_functions(&grid).unwrap();
        let seed = GaussianMoments::squeezed_vacuum(&spec, true);
        let (n1, n2) = (0usize, 1usize);
        let mu = vec![
            C64::from_polar(1.0 / 2.0f64.sqrt(), 0.25),
            C64::from_polar(1.0 / 2.0f64.sqrt(), -1.0),
        ];
        let config = GateConfig::new(1.9, mu.clone(), vec![n1, n2]).unwrap();
        let gate = multimode_gate(config.theta(), config.projections()).unwrap();
        let out = seed.apply_gate(&gate, &[0, 1 + n1, 1 + n2]).unwrap();

        let pairs: Vec<_> = (0..spec.mode_count())
            .map(|n| (1 + n, modes[n].clone()))
            .collect();
        let full = spectral_density(&out, &pairs).unwrap();
        let diag = diagonal_density(&out, &pairs).unwrap();
        let seed_n = [seed.photon_number(1 + n1), seed.photon_number(1 + n2)];
        let interference =
            interference_term(&config, &seed_n, &[modes[n1].clone(), modes[n2].clone()]).unwrap();
        for w in 0..grid.count() {
            let lhs = full.values()[w];
            let rhs = diag.values()[w] + interference.values()[w];
            assert!(
                (lhs - rhs).abs() < tol::SPECTRAL_DECOMP_TOL,
                "decomposition broke at sample {w}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn interference_vanishes_where_it_should() {
        let spec = test_spectrum(1.0, 3);
        let grid = default_grid();
        let modes = spec.mode_functions(&grid).unwrap();
        let pair = [modes[0].clone(), modes[1].clone()];
        let half = 1.0 / 2.0f64.sqrt();
        let mu = vec![C64::new(half, 0.0), C64::new(half, 0.0)];
        let seed_n = [1.3, 0.4];
        // full cycle: cosΘ = 1 kills the prefactor
        let cfg = GateConfig::new(2.0 * std::f64::consts::PI, mu.clone(), vec![0, 1]).unwrap();
        let i1 = interference_term(&cfg, &seed_n, &pair).unwrap();
        assert!(i1.values().iter().all(|v| v.abs() < 1e-12));
        // swap angle with equal weights: Σ_k (1 + |μ_k|²(cosΘ-1)) N_k = 0
        let cfg = GateConfig::new(std::f64::consts::PI, mu, vec![0, 1]).unwrap();
        let i2 = interference_term(&cfg, &seed_n, &pair).unwrap();
        assert!(i2.values().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn phase_sweep_flips_lobes_between_zero_and_pi() {
        let spec = test_spectrum(2.0, 4);
        let grid = default_grid();
        let phases = [0.0, std::f64::consts::PI];
        let sweep =
            phase_sweep(&spec, (0, 1), std::f64::consts::FRAC_PI_2, &phases, &grid).unwrap();
        let mid = grid.count() / 2;
        let peak0 = sweep.rows[0]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        let peak1 = sweep.rows[1]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        // asymmetric single-lobe profiles whose peak side flips with Δφ
        assert!(peak0 != mid && peak1 != mid);
        assert!(
            (peak0 < mid) != (peak1 < mid),
            "peaks {peak0} and {peak1} sit on the same side of {mid}"
        );
    }

    #[test]
    fn weight_table_tracks_blocking() {
        let spec = test_spectrum(2.0, 5);
        let seed = GaussianMoments::squeezed_vacuum(&spec, true);
        let gate = crate::gate::single_mode_gate(std::f64::consts::FRAC_PI_2);
        let out = seed.apply_gate(&gate, &[0, 1]).unwrap();
        let table = weight_redistribution(&seed, &out).unwrap();
        assert_eq!(table.orders, vec![0, 1, 2, 3, 4]);
        assert!(table.output[0] < 1e-12, "blocked mode kept weight");
        assert_relative_eq!(table.output.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }
}
