//! Two-photon transfer amplitudes of the frequency converter and their
//! Schmidt decomposition.
//!
//! Frequencies are offsets from the respective carrier: ν_s for the signal
//! side, ν_o for the upconverted side. With a pump envelope Φ the amplitude
//! is F(ν_s, ν_o) = Φ(ν_s − ν_o) · f(ν_o), where f is the phase-matching
//! factor along the crystal: e^{ix} sinc(x) with x = τ ν_o / 2 for the exact
//! form (τ = group-delay mismatch over the crystal), or its Gaussian stand-in
//! exp(−ν_o²/(2Δω²)) with Δω = sqrt(2/α)/τ from the lobe fit
//! sinc(x) ≈ exp(−α x²).

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, ModeFunction};
use crate::tol;
use crate::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Crystal/pump parameters that shape the transfer amplitude.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DispersionParams {
    /// Pump spectral width σ (frequency units).
    pump_width: f64,
    /// Group-delay mismatch τ = L·|k'_p − k'_o| between pump and output
    /// (inverse frequency units).
    group_delay_mismatch: f64,
    /// Gaussian fit coefficient for the sinc lobe; see [`tol::SINC_GAUSS_ALPHA`].
    alpha: f64,
}

impl DispersionParams {
    pub fn new(pump_width: f64, group_delay_mismatch: f64) -> Result<Self> {
        Self::with_alpha(pump_width, group_delay_mismatch, tol::SINC_GAUSS_ALPHA)
    }

    pub fn with_alpha(pump_width: f64, group_delay_mismatch: f64, alpha: f64) -> Result<Self> {
        if !pump_width.is_finite() || pump_width <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "pump width must be positive, got {pump_width}"
            )));
        }
        if !group_delay_mismatch.is_finite() || group_delay_mismatch <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "group-delay mismatch must be positive, got {group_delay_mismatch}"
            )));
        }
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "sinc-fit alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(Self {
            pump_width,
            group_delay_mismatch,
            alpha,
        })
    }

    pub fn pump_width(&self) -> f64 {
        self.pump_width
    }

    pub fn group_delay_mismatch(&self) -> f64 {
        self.group_delay_mismatch
    }

    /// Acceptance bandwidth Δω of the converter, i.e. the width of the
    /// Gaussian fitted to the phase-matching lobe.
    pub fn acceptance_width(&self) -> f64 {
        (2.0 / self.alpha).sqrt() / self.group_delay_mismatch
    }

    /// σ/Δω: large values mean a broadband pump against a narrow acceptance,
    /// i.e. a nearly separable amplitude and single-mode operation.
    pub fn factorization_ratio(&self) -> f64 {
        self.pump_width / self.acceptance_width()
    }

    /// Grids that comfortably contain the amplitude for the given
    /// phase-matching variant (512 points per axis).
    pub fn default_grids(&self, pm: PhaseMatching) -> Result<(FrequencyGrid, FrequencyGrid)> {
        let dw = self.acceptance_width();
        let out_half = match pm {
            // cover the slowly decaying sinc side lobes
            PhaseMatching::Sinc => {
                (16.0 * std::f64::consts::PI / self.group_delay_mismatch).max(6.0 * dw)
            }
            PhaseMatching::Gaussian => 6.0 * dw,
        };
        let sig_half = 4.0 * self.pump_width + out_half;
        Ok((
            FrequencyGrid::symmetric(sig_half, 512)?,
            FrequencyGrid::symmetric(out_half, 512)?,
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseMatching {
    /// Exact e^{ix} sinc(x) longitudinal factor.
    Sinc,
    /// Gaussian lobe fit (real, separable-friendly).
    Gaussian,
}

/// Gaussian pump envelope of the given spectral width (unnormalized; the
/// amplitude is normalized after assembly).
pub fn gaussian_pump(width: f64) -> impl Fn(f64) -> C64 {
    move |nu: f64| C64::new((-nu * nu / (2.0 * width * width)).exp(), 0.0)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Two-photon transfer amplitude sampled on a (signal × output) grid,
/// L²-normalized with trapezoid weights.
#[derive(Clone, Debug)]
pub struct JsaGrid {
    signal: FrequencyGrid,
    output: FrequencyGrid,
    /// values[(i, j)] = F(ν_s(i), ν_o(j)).
    values: DMatrix<C64>,
}

impl JsaGrid {
    pub fn signal_grid(&self) -> &FrequencyGrid {
        &self.signal
    }

    pub fn output_grid(&self) -> &FrequencyGrid {
        &self.output
    }

    pub fn values(&self) -> &DMatrix<C64> {
        &self.values
    }

    /// |F|² on the grid, row i = signal index.
    pub fn density(&self) -> Vec<Vec<f64>> {
        (0..self.signal.count())
            .map(|i| {
                (0..self.output.count())
                    .map(|j| self.values[(i, j)].norm_sqr())
                    .collect()
            })
            .collect()
    }

    /// Discrete L² norm (should be 1 after construction).
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.signal.count() {
            for j in 0..self.output.count() {
                acc += self.signal.quad_weight(i)
                    * self.output.quad_weight(j)
                    * self.values[(i, j)].norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Assembles and normalizes the amplitude for a given pump envelope.
pub fn two_photon_amplitude<P: Fn(f64) -> C64>(
    pump: P,
    disp: &DispersionParams,
    signal: &FrequencyGrid,
    output: &FrequencyGrid,
    pm: PhaseMatching,
) -> Result<JsaGrid> {
    let tau = disp.group_delay_mismatch();
    let dw = disp.acceptance_width();
    let mut values = DMatrix::<C64>::zeros(signal.count(), output.count());
    for (j, nu_o) in output.points().enumerate() {
        let matching = match pm {
            PhaseMatching::Sinc => {
                let x = 0.5 * tau * nu_o;
                C64::from_polar(1.0, x) * sinc(x)
            }
            PhaseMatching::Gaussian => C64::new((-nu_o * nu_o / (2.0 * dw * dw)).exp(), 0.0),
        };
        for (i, nu_s) in signal.points().enumerate() {
            values[(i, j)] = pump(nu_s - nu_o) * matching;
        }
    }

    let mut norm_sq = 0.0;
    for i in 0..signal.count() {
        for j in 0..output.count() {
            norm_sq += signal.quad_weight(i) * output.quad_weight(j) * values[(i, j)].norm_sqr();
        }
    }
    if !norm_sq.is_finite() || norm_sq <= 0.0 {
        return Err(Error::Normalization(
            "two-photon amplitude has no finite mass on this grid".into(),
        ));
    }
    values /= C64::new(norm_sq.sqrt(), 0.0);
    Ok(JsaGrid {
        signal: *signal,
        output: *output,
        values,
    })
}

/// Schmidt data of a transfer amplitude: descending coefficients with
/// Σ c² = 1 (all of them) and the leading mode pairs as grid functions.
#[derive(Clone, Debug)]
pub struct JsaSchmidt {
    pub coefficients: Vec<f64>,
    pub signal_modes: Vec<ModeFunction>,
    pub output_modes: Vec<ModeFunction>,
}

impl JsaSchmidt {
    /// Effective mode number K = 1/Σ c⁴.
    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.purity()
    }

    /// Σ c⁴, the purity of either reduced side.
    pub fn purity(&self) -> f64 {
        self.coefficients.iter().map(|c| c.powi(4)).sum()
    }

    /// L² error of the kept-mode expansion against the full amplitude.
    pub fn reconstruction_error(&self, jsa: &JsaGrid) -> Result<f64> {
        let kept = self.signal_modes.len();
        if kept == 0 {
            return Err(Error::InvalidArgument("no modes kept".into()));
        }
        let ns = jsa.signal_grid().count();
        let no = jsa.output_grid().count();
        let mut err = 0.0;
        for i in 0..ns {
            for j in 0..no {
                let mut rec = C64::default();
                for k in 0..kept {
                    rec += self.coefficients[k]
                        * self.signal_modes[k].values()[i]
                        * self.output_modes[k].values()[j].conj();
                }
                let d = jsa.values()[(i, j)] - rec;
                err += jsa.signal_grid().quad_weight(i)
                    * jsa.output_grid().quad_weight(j)
                    * d.norm_sqr();
            }
        }
        Ok(err.sqrt())
    }
}

/// SVD-based Schmidt decomposition. Quadrature weights are folded in so the
/// discrete problem is an L² isometry: F(ν_s, ν_o) = Σ c_k u_k(ν_s) v_k*(ν_o)
/// with u, v orthonormal under the trapezoid inner product.
pub fn schmidt_decompose_jsa(jsa: &JsaGrid, max_modes: usize) -> Result<JsaSchmidt> {
    if max_modes == 0 {
        return Err(Error::InvalidArgument(
            "must keep at least one Schmidt mode".into(),
        ));
    }
    let ns = jsa.signal_grid().count();
    let no = jsa.output_grid().count();
    let mut weighted = jsa.values().clone();
    for i in 0..ns {
        let wi = jsa.signal_grid().quad_weight(i).sqrt();
        for j in 0..no {
            weighted[(i, j)] *= wi * jsa.output_grid().quad_weight(j).sqrt();
        }
    }

    let svd = weighted.svd(true, true);
    let u = svd
        .u
        .as_ref()
        .ok_or_else(|| Error::Invariant("SVD did not return left singular vectors".into()))?;
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Invariant("SVD did not return right singular vectors".into()))?;

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let coefficients: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let total: f64 = coefficients.iter().map(|c| c * c).sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::Invariant(format!(
            "Schmidt coefficients lost normalization: Σc² = {total}"
        )));
    }

    let kept = max_modes.min(order.len());
    let mut signal_modes = Vec::with_capacity(kept);
    let mut output_modes = Vec::with_capacity(kept);
    for &k in order.iter().take(kept) {
        let su: Vec<C64> = (0..ns)
            .map(|i| u[(i, k)] / jsa.signal_grid().quad_weight(i).sqrt())
            .collect();
        // F = Σ c u (v_t row), so the output mode in the c u v* convention
        // is the conjugated v_t row
        let sv: Vec<C64> = (0..no)
            .map(|j| v_t[(k, j)].conj() / jsa.output_grid().quad_weight(j).sqrt())
            .collect();
        signal_modes.push(ModeFunction::new(*jsa.signal_grid(), su)?);
        output_modes.push(ModeFunction::new(*jsa.output_grid(), sv)?);
    }
    Ok(JsaSchmidt {
        coefficients,
        signal_modes,
        output_modes,
    })
}

/// Mode the converter emits into: a normalized Gaussian of width Δω at the
/// output carrier, peak value (πΔω²)^{-1/4}.
pub fn sum_frequency_mode(disp: &DispersionParams, grid: &FrequencyGrid) -> Result<ModeFunction> {
    let dw = disp.acceptance_width();
    let peak = (std::f64::consts::PI * dw * dw).powf(-0.25);
    let values: Vec<C64> = grid
        .points()
        .map(|nu| C64::new(peak * (-nu * nu / (2.0 * dw * dw)).exp(), 0.0))
        .collect();
    let f = ModeFunction::new(*grid, values)?;
    let tail = (1.0 - f.norm_squared()).abs();
    if tail > tol::HG_TAIL_BUDGET {
        return Err(Error::GridTooNarrow(format!(
            "output grid keeps {tail:.3e} of the converter mode off-grid"
        )));
    }
    f.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(ratio: f64) -> DispersionParams {
        // fix Δω = 1 by construction: τ = sqrt(2/α), σ = ratio
        let tau = (2.0 / tol::SINC_GAUSS_ALPHA).sqrt();
        DispersionParams::new(ratio, tau).unwrap()
    }

    #[test]
    fn ratio_definition() {
        let p = params(1.0);
        assert_relative_eq!(p.acceptance_width(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.factorization_ratio(), 1.0, epsilon = 1e-12);
        let p10 = params(10.0);
        assert_relative_eq!(p10.factorization_ratio(), 10.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(DispersionParams::new(0.0, 1.0).is_err());
        assert!(DispersionParams::new(1.0, -2.0).is_err());
        assert!(DispersionParams::with_alpha(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn amplitude_is_normalized() {
        let p = params(2.0);
        let (sg, og) = p.default_grids(PhaseMatching::Gaussian).unwrap();
        let jsa = two_photon_amplitude(
            gaussian_pump(p.pump_width()),
            &p,
            &sg,
            &og,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        assert_relative_eq!(jsa.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn broadband_pump_gives_separable_amplitude() {
        let p = params(10.0);
        let (sg, og) = p.default_grids(PhaseMatching::Gaussian).unwrap();
        let jsa = two_photon_amplitude(
            gaussian_pump(p.pump_width()),
            &p,
            &sg,
            &og,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        let schmidt = schmidt_decompose_jsa(&jsa, 4).unwrap();
        assert!(
            schmidt.coefficients[0].powi(2) > 0.99,
            "leading weight {}",
            schmidt.coefficients[0].powi(2)
        );
        // output mode matches the converter's Gaussian acceptance mode
        let sf = sum_frequency_mode(&p, &og).unwrap();
        let ov = schmidt.output_modes[0].overlap(&sf).unwrap().norm();
        assert!(ov * ov > 0.99, "|overlap|² = {}", ov * ov);
    }

    #[test]
    fn narrowband_pump_is_highly_multimode() {
        let p = params(0.1);
        let (sg, og) = p.default_grids(PhaseMatching::Gaussian).unwrap();
        let jsa = two_photon_amplitude(
            gaussian_pump(p.pump_width()),
            &p,
            &sg,
            &og,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        let schmidt = schmidt_decompose_jsa(&jsa, 1).unwrap();
        assert!(
            schmidt.schmidt_number() > 5.0,
            "K = {}",
            schmidt.schmidt_number()
        );
    }

    #[test]
    fn schmidt_expansion_reconstructs_the_amplitude() {
        let p = params(1.0);
        let sg = FrequencyGrid::symmetric(8.0, 128).unwrap();
        let og = FrequencyGrid::symmetric(8.0, 128).unwrap();
        let jsa = two_photon_amplitude(
            gaussian_pump(p.pump_width()),
            &p,
            &sg,
            &og,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        let schmidt = schmidt_decompose_jsa(&jsa, 128).unwrap();
        let err = schmidt.reconstruction_error(&jsa).unwrap();
        assert!(
            err < tol::JSA_RECONSTRUCTION_TOL,
            "reconstruction error {err}"
        );
        // modes orthonormal under the trapezoid product
        for a in 0..4 {
            for b in 0..4 {
                let ov = schmidt.signal_modes[a]
                    .overlap(&schmidt.signal_modes[b])
                    .unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ov.norm() - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn purity_matches_gram_trace_route() {
        // independent of the SVD: Σc⁴ = ‖A A†‖_F² for the weighted matrix A
        let p = params(0.5);
        let (sg, og) = p.default_grids(PhaseMatching::Gaussian).unwrap();
        let jsa = two_photon_amplitude(
            gaussian_pump(p.pump_width()),
            &p,
            &sg,
            &og,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        let mut weighted = jsa.values().clone();
        for i in 0..sg.count() {
            let wi = sg.quad_weight(i).sqrt();
            for j in 0..og.count() {
                weighted[(i, j)] *= wi * og.quad_weight(j).sqrt();
            }
        }
        let gram = &weighted * weighted.adjoint();
        let purity_gram: f64 = gram.iter().map(|z| z.norm_sqr()).sum();
        let schmidt = schmidt_decompose_jsa(&jsa, 1).unwrap();
        assert_relative_eq!(schmidt.purity(), purity_gram, max_relative = 1e-9);
    }

    #[test]
    fn sinc_and_gaussian_variants_agree_when_nearly_separable() {
        let p = params(3.0);
        for pm in [PhaseMatching::Sinc, PhaseMatching::Gaussian] {
            let (sg, og) = p.default_grids(pm).unwrap();
            let jsa =
                two_photon_amplitude(gaussian_pump(p.pump_width()), &p, &sg, &og, pm).unwrap();
            assert_relative_eq!(jsa.norm(), 1.0, epsilon = 1e-10);
        }
        let k = |pm| {
            let (sg, og) = p.default_grids(pm).unwrap();
            let jsa =
                two_photon_amplitude(gaussian_pump(p.pump_width()), &p, &sg, &og, pm).unwrap();
            schmidt_decompose_jsa(&jsa, 1).unwrap().schmidt_number()
        };
        let (ks, kg) = (k(PhaseMatching::Sinc), k(PhaseMatching::Gaussian));
        assert!(
            (ks - kg).abs() / kg < 0.10,
            "sinc K = {ks}, gaussian K = {kg}"
        );
    }

    #[test]
    fn sum_frequency_mode_peak_value() {
        let p = params(1.0);
        // odd point count so ν = 0 is sampled
        let grid = FrequencyGrid::symmetric(8.0, 1025).unwrap();
        let sf = sum_frequency_mode(&p, &grid).unwrap();
        let dw = p.acceptance_width();
        let expect = (std::f64::consts::PI * dw * dw).powf(-0.25);
        let peak = sf.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert_relative_eq!(peak, expect, max_relative = 1e-7);
        assert_relative_eq!(sf.norm(), 1.0, epsilon = 1e-12);
    }
}
