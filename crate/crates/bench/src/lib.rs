//! Shared fixtures for the criterion benchmarks: one mid-size seed and gate
//! so the two bench targets measure the same workload shapes the CLI runs.

use pulsegate_core::{
    DispersionParams, GaussianMoments, JsaGrid, PhaseMatching, SchmidtSpectrum, C64,
};

/// Eight-mode geometric seed at the scale of the scenario presets.
pub fn bench_spectrum() -> SchmidtSpectrum {
    SchmidtSpectrum::geometric(2.0, 0.8, 8, 0.0, 1.0).expect("valid fixture")
}

/// Equal-magnitude projections over all eight orders with a phase ramp, so
/// nothing collapses to a real special case.
pub fn bench_projections() -> Vec<C64> {
    let w = (8.0f64).sqrt().recip();
    (0..8).map(|k| C64::from_polar(w, 0.3 * k as f64)).collect()
}

/// SF channel plus the eight squeezed orders.
pub fn bench_state() -> GaussianMoments {
    GaussianMoments::squeezed_vacuum(&bench_spectrum(), true)
}

/// Sinc-lobe amplitude on the default 512x512 grids at σ/Δω = 1.
pub fn bench_amplitude() -> (DispersionParams, JsaGrid) {
    let disp = DispersionParams::new(1.0, 3.219113899898252).expect("valid fixture");
    let pm = PhaseMatching::Sinc;
    let (signal, output) = disp.default_grids(pm).expect("valid fixture");
    let jsa = pulsegate_core::two_photon_amplitude(
        pulsegate_core::gaussian_pump(disp.pump_width()),
        &disp,
        &signal,
        &output,
        pm,
    )
    .expect("valid fixture");
    (disp, jsa)
}
