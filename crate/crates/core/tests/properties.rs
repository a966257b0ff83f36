//! Randomized invariants. Each property encodes a structural guarantee the
//! rest of the code leans on; shrinking gives a minimal counterexample if
//! one ever breaks.

use proptest::prelude::*;
use pulsegate_core::nalgebra::DMatrix;
use pulsegate_core::{
    geometric_schmidt_weights, hermite_gauss_mode, interference_term, multimode_gate,
    schmidt_decompose_jsa, two_photon_amplitude, DispersionParams, FrequencyGrid, GateConfig,
    GaussianMoments, HermitePhase, ModeLabel, PhaseMatching, SchmidtSpectrum, C64,
};
use std::f64::consts::{PI, TAU};

fn normalized_mu(raw: &[(f64, f64)]) -> Option<Vec<C64>> {
    let mu: Vec<C64> = raw.iter().map(|&(re, im)| C64::new(re, im)).collect();
    let norm = mu.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 0.1 {
        return None;
    }
    Some(mu.iter().map(|z| z / norm).collect())
}

fn squeezed(gains: &[f64]) -> GaussianMoments {
    let n = gains.len() + 1;
    let mut labels = vec![ModeLabel::SumFrequency];
    labels.extend((0..gains.len()).map(ModeLabel::Signal));
    let mut normal = DMatrix::<C64>::zeros(n, n);
    let mut anomalous = DMatrix::<C64>::zeros(n, n);
    for (i, &g) in gains.iter().enumerate() {
        normal[(1 + i, 1 + i)] = C64::new(g.sinh() * g.sinh(), 0.0);
        anomalous[(1 + i, 1 + i)] = C64::new(g.sinh() * g.cosh(), 0.0);
    }
    GaussianMoments::from_parts(labels, normal, anomalous).unwrap()
}

proptest! {
    #[test]
    fn gate_is_always_unitary(
        theta in 0.0..TAU,
        raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=4),
    ) {
        let Some(mu) = normalized_mu(&raw) else { return Ok(()); };
        let gate = multimode_gate(theta, &mu).unwrap();
        prop_assert!(gate.unitarity_defect() <= pulsegate_core::tol::GATE_UNITARITY_TOL);
    }

    #[test]
    fn gate_angles_compose_at_matrix_level(
        a in 0.0..TAU,
        b in 0.0..TAU,
        raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=3),
    ) {
        let Some(mu) = normalized_mu(&raw) else { return Ok(()); };
        let one = multimode_gate(a, &mu).unwrap();
        let two = multimode_gate(b, &mu).unwrap();
        let both = two.compose(&one).unwrap();
        let direct = multimode_gate(a + b, &mu).unwrap();
        let diff = (both.entries() - direct.entries())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        prop_assert!(diff < 1e-12, "composition defect {diff}");
    }

    #[test]
    fn evolved_states_stay_physical_and_conserve_photons(
        theta in 0.0..TAU,
        raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=3),
        gains in prop::collection::vec(0.0..1.8f64, 4),
    ) {
        let Some(mu) = normalized_mu(&raw) else { return Ok(()); };
        let state = squeezed(&gains[..mu.len() + 1]); // one spectator mode
        let gate = multimode_gate(theta, &mu).unwrap();
        let map: Vec<usize> = (0..=mu.len()).collect();
        let out = state.apply_gate(&gate, &map).unwrap();
        let nu = out.check_physical().unwrap();
        prop_assert!(nu >= 0.5 - pulsegate_core::tol::PHYSICALITY_SLACK);
        let drift = (out.total_photons() - state.total_photons()).abs();
        prop_assert!(drift < 1e-9 * state.total_photons().max(1.0), "drift {drift}");
    }

    #[test]
    fn full_swap_exchanges_photon_numbers(
        g1 in 0.0..2.0f64,
        g2 in 0.0..2.0f64,
        phase in 0.0..TAU,
    ) {
        let state = squeezed(&[g1, g2]);
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let mu = [C64::new(w, 0.0), C64::from_polar(w, phase)];
        let out = state
            .apply_gate(&multimode_gate(PI, &mu).unwrap(), &[0, 1, 2])
            .unwrap();
        let scale = g1.sinh().powi(2).max(g2.sinh().powi(2)).max(1.0);
        prop_assert!((out.photon_number(1) - g2.sinh().powi(2)).abs() < 1e-10 * scale);
        prop_assert!((out.photon_number(2) - g1.sinh().powi(2)).abs() < 1e-10 * scale);
        prop_assert!(out.photon_number(0) < 1e-10 * scale);
    }

    #[test]
    fn interference_vanishes_without_conversion(
        raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2),
        n1 in 0.0..20.0f64,
        n2 in 0.0..20.0f64,
    ) {
        let Some(mu) = normalized_mu(&raw) else { return Ok(()); };
        let grid = FrequencyGrid::symmetric(8.0, 256).unwrap();
        let u0 = hermite_gauss_mode(0, &grid, 0.0, 1.0, HermitePhase::PowersOfI).unwrap();
        let u1 = hermite_gauss_mode(1, &grid, 0.0, 1.0, HermitePhase::PowersOfI).unwrap();
        let config = GateConfig::new(TAU, mu, vec![0, 1]).unwrap();
        let term = interference_term(&config, &[n1, n2], &[u0, u1]).unwrap();
        let peak = term.values().iter().map(|v| v.abs()).fold(0.0, f64::max);
        prop_assert!(peak < 1e-12 * (n1 + n2).max(1.0), "leftover interference {peak}");
    }

    #[test]
    fn geometric_weights_are_a_distribution(
        ratio in 0.0..0.95f64,
        count in 1..12usize,
    ) {
        let w = geometric_schmidt_weights(ratio, count).unwrap();
        let sum: f64 = w.iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        for pair in w.windows(2) {
            prop_assert!(pair[0] >= pair[1]);
        }
        // and they build a valid spectrum
        let spec = SchmidtSpectrum::new(1.0, w, 0.0, 1.0).unwrap();
        prop_assert!(spec.mode_count() == count);
    }
}

proptest! {
    // grids keep these cases heavier; fewer of them is plenty
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hermite_modes_stay_orthonormal(
        center in -1.0..1.0f64,
        width in 0.4..2.5f64,
    ) {
        let half = 10.0 * width + center.abs();
        let grid = FrequencyGrid::symmetric(half, 1024).unwrap();
        let modes: Vec<_> = (0..5)
            .map(|n| hermite_gauss_mode(n, &grid, center, width, HermitePhase::PowersOfI).unwrap())
            .collect();
        for (i, a) in modes.iter().enumerate() {
            for (j, b) in modes.iter().enumerate() {
                let ov = a.overlap(b).unwrap().norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!(
                    (ov - expect).abs() < pulsegate_core::tol::MODE_ORTHONORMALITY_TOL,
                    "orders ({i},{j}): overlap {ov}"
                );
            }
        }
    }

    #[test]
    fn jsa_schmidt_coefficients_are_a_distribution(
        ratio in 0.15..6.0f64,
    ) {
        let tau = (2.0 / pulsegate_core::tol::SINC_GAUSS_ALPHA).sqrt();
        let p = DispersionParams::new(ratio, tau).unwrap();
        let dw = p.acceptance_width();
        let sig = FrequencyGrid::symmetric(4.0 * (ratio + dw), 96).unwrap();
        let out = FrequencyGrid::symmetric(6.0 * dw, 96).unwrap();
        let jsa = two_photon_amplitude(
            pulsegate_core::gaussian_pump(ratio),
            &p,
            &sig,
            &out,
            PhaseMatching::Gaussian,
        )
        .unwrap();
        let schmidt = schmidt_decompose_jsa(&jsa, 4).unwrap();
        let total: f64 = schmidt.coefficients.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() < 1e-6, "sum of squares {total}");
        for pair in schmidt.coefficients.windows(2) {
            prop_assert!(pair[0] >= pair[1] - 1e-12);
        }
        prop_assert!(schmidt.schmidt_number() >= 1.0 - 1e-9);
    }
}
