use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use pulsegate_core::{
    conservation_report, diagonal_density, gaussian_pump, interference_term, multimode_gate,
    phase_sweep, schmidt_decompose_jsa, select_cascade, spectral_density, sum_frequency_mode,
    two_photon_amplitude, weight_redistribution, ConservationReport, GaussianMoments, ModeFunction,
    ModeLabel, Observables, PhaseMatching,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{self, PmSpec, ScenarioConfig, SeedKind};
use crate::error::{CliError, Result};
use crate::out::{header, Emitter};
use crate::RunArgs;

/// Gate row 0 plus the state indices of the matched Schmidt orders.
fn mode_map(state: &GaussianMoments, orders: &[usize]) -> Result<Vec<usize>> {
    let sf = state
        .index_of(ModeLabel::SumFrequency)
        .ok_or_else(|| CliError::Config("seed state carries no SF channel".into()))?;
    let mut map = vec![sf];
    for &order in orders {
        let idx = state.index_of(ModeLabel::Signal(order)).ok_or_else(|| {
            CliError::Config(format!("seed has no Schmidt order {order} to match"))
        })?;
        map.push(idx);
    }
    Ok(map)
}

/// (state index, mode function) pairs for every signal Schmidt order.
fn signal_pairs(
    state: &GaussianMoments,
    modes: &[ModeFunction],
) -> Result<Vec<(usize, ModeFunction)>> {
    modes
        .iter()
        .enumerate()
        .map(|(n, f)| {
            state
                .index_of(ModeLabel::Signal(n))
                .map(|idx| (idx, f.clone()))
                .ok_or_else(|| CliError::Config(format!("state lost Schmidt order {n}")))
        })
        .collect()
}

fn announce(command: &str, source: &str, args: &RunArgs, names: &[String]) {
    println!("{command}: {source} -> {}", args.out.display());
    for name in names {
        println!("  {name}");
    }
}

#[derive(Serialize)]
struct GateRunReport {
    input: Observables,
    output: Observables,
    conservation: ConservationReport,
    gate_unitarity_defect: f64,
}

/// Shared body of `block` and `swap`: seed, one gate pass, weight table,
/// input/output spectra.
pub fn gate_run(command: &str, preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let spectrum = cfg.spectrum()?;
    let state_in = cfg.input_state()?;
    let gate_cfg = cfg.gate_config()?;
    let map = mode_map(&state_in, gate_cfg.matched_orders())?;
    let gate = gate_cfg.matrix()?;
    let state_out = state_in.apply_gate(&gate, &map)?;
    state_out.check_physical()?;
    let conservation = conservation_report(&state_in, &state_out, gate_cfg.projections(), &map)?;
    log::info!(
        "conservation residuals: exchange {:.3e}, residual channel {:.3e}",
        conservation.sf_exchange_residual,
        conservation.residual_channel_residual
    );

    let mut emitter = Emitter::new(&args.out, args.format, command, &loaded)?;

    let weights = weight_redistribution(&state_in, &state_out)?;
    let weight_rows: Vec<Vec<f64>> = (0..weights.orders.len())
        .map(|i| {
            vec![
                weights.orders[i] as f64,
                weights.input[i],
                weights.output[i],
            ]
        })
        .collect();
    emitter.write_table(
        "weights",
        &header(&["order", "input_fraction", "output_fraction"]),
        &weight_rows,
    )?;

    let grid = cfg.frequency_grid()?;
    let modes = spectrum.mode_functions(&grid)?;
    let pairs = signal_pairs(&state_in, &modes)?;
    let density_in = spectral_density(&state_in, &pairs)?;
    let density_out = spectral_density(&state_out, &pairs)?;
    let spectrum_rows: Vec<Vec<f64>> = grid
        .points()
        .zip(density_in.values().iter().zip(density_out.values()))
        .map(|(omega, (&v_in, &v_out))| vec![omega, v_in, v_out])
        .collect();
    emitter.write_table(
        "spectrum",
        &header(&[
            "omega [pump widths]",
            "input_density [photons per unit omega]",
            "output_density [photons per unit omega]",
        ]),
        &spectrum_rows,
    )?;

    emitter.write_json(
        "observables",
        &GateRunReport {
            input: state_in.observables(),
            output: state_out.observables(),
            conservation,
            gate_unitarity_defect: gate.unitarity_defect(),
        },
    )?;

    let names = emitter.finish()?;
    announce(command, &loaded.source, args, &names);
    Ok(())
}

/// Output spectrum split into its mode-diagonal and interference parts for
/// a gate matched onto exactly two orders.
pub fn spectrum(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let spectrum = cfg.spectrum()?;
    let state_in = cfg.input_state()?;
    let gate_cfg = cfg.gate_config()?;
    if gate_cfg.matched_orders().len() != 2 {
        return Err(CliError::Config(
            "the spectrum decomposition needs exactly two matched orders".into(),
        ));
    }
    let map = mode_map(&state_in, gate_cfg.matched_orders())?;
    let state_out = state_in.apply_gate(&gate_cfg.matrix()?, &map)?;
    state_out.check_physical()?;

    let grid = cfg.frequency_grid()?;
    let modes = spectrum.mode_functions(&grid)?;
    let pairs = signal_pairs(&state_out, &modes)?;
    let full = spectral_density(&state_out, &pairs)?;
    let diagonal = diagonal_density(&state_out, &pairs)?;
    let orders = gate_cfg.matched_orders();
    let seed_photons = [
        state_in.photon_number(map[1]),
        state_in.photon_number(map[2]),
    ];
    let matched_modes = [modes[orders[0]].clone(), modes[orders[1]].clone()];
    let interference = interference_term(&gate_cfg, &seed_photons, &matched_modes)?;

    let mut worst_residual = 0.0f64;
    let rows: Vec<Vec<f64>> = grid
        .points()
        .enumerate()
        .map(|(w, omega)| {
            let f = full.values()[w];
            let d = diagonal.values()[w];
            let i = interference.values()[w];
            worst_residual = worst_residual.max((f - d - i).abs());
            vec![omega, f, d, i]
        })
        .collect();
    log::info!("decomposition residual {worst_residual:.3e}");

    let mut emitter = Emitter::new(&args.out, args.format, "spectrum", &loaded)?;
    emitter.write_table(
        "decomposition",
        &header(&[
            "omega [pump widths]",
            "full_density [photons per unit omega]",
            "diagonal [photons per unit omega]",
            "interference [photons per unit omega]",
        ]),
        &rows,
    )?;

    #[derive(Serialize)]
    struct DecompositionReport {
        input: Observables,
        output: Observables,
        max_decomposition_residual: f64,
    }
    emitter.write_json(
        "observables",
        &DecompositionReport {
            input: state_in.observables(),
            output: state_out.observables(),
            max_decomposition_residual: worst_residual,
        },
    )?;

    let names = emitter.finish()?;
    announce("spectrum", &loaded.source, args, &names);
    Ok(())
}

/// Interference phase sweep between two equally weighted matched orders;
/// emits the peak-normalized spectral map plus a side-balance summary.
pub fn sweep_phase(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let spectrum = cfg.spectrum()?;
    let gate = cfg.gate()?;
    if gate.matched_orders.len() != 2 {
        return Err(CliError::Config(
            "a phase sweep needs exactly two matched orders".into(),
        ));
    }
    let orders = (gate.matched_orders[0], gate.matched_orders[1]);
    let phases = cfg.sweep()?.values()?;
    let grid = cfg.frequency_grid()?;
    let result = phase_sweep(&spectrum, orders, gate.theta, &phases, &grid)?;

    let mut map_header = vec!["delta_phi [rad]".to_string()];
    for omega in &result.omegas {
        map_header.push(format!("w={omega}"));
    }
    let map_rows: Vec<Vec<f64>> = result
        .phases
        .iter()
        .zip(&result.rows)
        .map(|(&phi, row)| {
            let mut cells = Vec::with_capacity(1 + row.len());
            cells.push(phi);
            cells.extend_from_slice(row);
            cells
        })
        .collect();

    // fraction of normalized weight sitting at ω>0 minus ω<0; flips sign
    // when the interference lobe crosses the center
    let balance_rows: Vec<Vec<f64>> = result
        .phases
        .iter()
        .zip(&result.rows)
        .map(|(&phi, row)| {
            let mut pos = 0.0f64;
            let mut neg = 0.0f64;
            for (w, &v) in row.iter().enumerate() {
                let omega = result.omegas[w];
                if omega > 0.0 {
                    pos += v;
                } else if omega < 0.0 {
                    neg += v;
                }
            }
            vec![phi, (pos - neg) / (pos + neg)]
        })
        .collect();

    let mut emitter = Emitter::new(&args.out, args.format, "phase-sweep", &loaded)?;
    emitter.write_table("sweep", &map_header, &map_rows)?;
    emitter.write_table(
        "balance",
        &header(&["delta_phi [rad]", "side_balance [-1..1]"]),
        &balance_rows,
    )?;
    let names = emitter.finish()?;
    announce("phase-sweep", &loaded.source, args, &names);
    Ok(())
}

/// Gate-angle sweep; tracks how photons leave the matched orders and show
/// up in the SF channel. Rows run on the rayon pool, output stays ordered.
pub fn sweep_theta(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let state_in = cfg.input_state()?;
    let gate_cfg = cfg.gate_config()?;
    let map = mode_map(&state_in, gate_cfg.matched_orders())?;
    let thetas = cfg.sweep()?.values()?;

    let mu = gate_cfg.projections().to_vec();
    let fractions: Vec<f64> = mu.iter().map(|m| m.norm_sqr()).collect();
    let n_in: Vec<f64> = map[1..]
        .iter()
        .map(|&idx| state_in.photon_number(idx))
        .collect();
    for (i, &n) in n_in.iter().enumerate() {
        if n <= 0.0 {
            return Err(CliError::Config(format!(
                "matched order {} carries no photons; fractions are undefined",
                gate_cfg.matched_orders()[i]
            )));
        }
    }
    let matched_total: f64 = n_in.iter().sum();

    let rows: Vec<Vec<f64>> = thetas
        .par_iter()
        .map(|&theta| -> Result<Vec<f64>> {
            let gate = multimode_gate(theta, &mu)?;
            let out = state_in.apply_gate(&gate, &map)?;
            let mut row = vec![theta, out.photon_number(map[0]) / matched_total];
            for (i, &idx) in map[1..].iter().enumerate() {
                let n_out = out.photon_number(idx);
                row.push(n_out / n_in[i]);
                // photons moved through the matched projection only
                row.push((n_out - (1.0 - fractions[i]) * n_in[i]) / n_in[i]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table_header = vec![
        "theta [rad]".to_string(),
        "sf_fraction [N_SF / matched N_in]".to_string(),
    ];
    for &order in gate_cfg.matched_orders() {
        table_header.push(format!("retained_fraction_order{order}"));
        table_header.push(format!("matched_exchange_order{order}"));
    }

    let mut emitter = Emitter::new(&args.out, args.format, "theta-sweep", &loaded)?;
    emitter.write_table("sweep", &table_header, &rows)?;
    let names = emitter.finish()?;
    announce("theta-sweep", &loaded.source, args, &names);
    Ok(())
}

/// Twin-beam run: one gate pass over the signal modes, before/after pair
/// correlation statistics.
pub fn twin(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    if cfg.seed()?.kind != SeedKind::Twin {
        return Err(CliError::Config(
            "the twin command needs `seed.kind = \"twin\"`".into(),
        ));
    }
    let spectrum = cfg.spectrum()?;
    let state_in = cfg.input_state()?;
    let gate_cfg = cfg.gate_config()?;
    let map = mode_map(&state_in, gate_cfg.matched_orders())?;
    let gate = gate_cfg.matrix()?;
    let state_out = state_in.apply_gate(&gate, &map)?;
    state_out.check_physical()?;
    let conservation = conservation_report(&state_in, &state_out, gate_cfg.projections(), &map)?;

    let k = spectrum.mode_count();
    let mut photon_rows = Vec::with_capacity(k);
    let mut correlation_rows = Vec::with_capacity(k * k);
    for s in 0..k {
        let si = state_in
            .index_of(ModeLabel::Signal(s))
            .expect("twin seed carries all signal orders");
        let ii = state_in
            .index_of(ModeLabel::Idler(s))
            .expect("twin seed carries all idler orders");
        photon_rows.push(vec![
            s as f64,
            state_in.photon_number(si),
            state_out.photon_number(si),
            state_in.photon_number(ii),
            state_out.photon_number(ii),
        ]);
        for i in 0..k {
            let ij = state_in
                .index_of(ModeLabel::Idler(i))
                .expect("twin seed carries all idler orders");
            correlation_rows.push(vec![
                s as f64,
                i as f64,
                state_in.number_difference_variance(si, ij),
                state_out.number_difference_variance(si, ij),
                state_in.noise_reduction_factor(si, ij)?,
                state_out.noise_reduction_factor(si, ij)?,
            ]);
        }
    }

    let mut emitter = Emitter::new(&args.out, args.format, "twin", &loaded)?;
    emitter.write_table(
        "photons",
        &header(&[
            "order",
            "signal_in [photons]",
            "signal_out [photons]",
            "idler_in [photons]",
            "idler_out [photons]",
        ]),
        &photon_rows,
    )?;
    emitter.write_table(
        "correlations",
        &header(&[
            "signal_order",
            "idler_order",
            "diff_variance_in [photons^2]",
            "diff_variance_out [photons^2]",
            "nrf_in",
            "nrf_out",
        ]),
        &correlation_rows,
    )?;
    emitter.write_json(
        "observables",
        &GateRunReport {
            input: state_in.observables(),
            output: state_out.observables(),
            conservation,
            gate_unitarity_defect: gate.unitarity_defect(),
        },
    )?;
    let names = emitter.finish()?;
    announce("twin", &loaded.source, args, &names);
    Ok(())
}

#[derive(Serialize)]
struct SelectReport {
    order: usize,
    theta: f64,
    mode_gain: f64,
    photons: f64,
    expected_photons: f64,
    photon_deviation: f64,
    var_x: f64,
    expected_var_x: f64,
    var_x_deviation: f64,
    var_p: f64,
    expected_var_p: f64,
    var_p_deviation: f64,
    uncertainty_product: f64,
    sf_leftover_photons: f64,
}

/// Two-gate cascade that isolates one Schmidt order; reports the extracted
/// state against the closed-form single-mode expectation.
pub fn select(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let selection = cfg.select()?;
    let theta = match &cfg.gate {
        Some(gate) => gate.theta,
        None => FRAC_PI_2,
    };
    let spectrum = cfg.spectrum()?;
    let state = select_cascade(&spectrum, selection.order, theta)?;
    let idx = state
        .index_of(ModeLabel::Signal(selection.order))
        .expect("cascade output carries the selected order");
    let photons = state.photon_number(idx);
    let (var_x, var_p) = state.quadrature_variances(idx);
    let gain = spectrum.mode_gain(selection.order);
    let expected_photons = gain.sinh().powi(2);
    let expected_var_x = (2.0 * gain).exp() / 2.0;
    let expected_var_p = (-2.0 * gain).exp() / 2.0;
    let report = SelectReport {
        order: selection.order,
        theta,
        mode_gain: gain,
        photons,
        expected_photons,
        photon_deviation: (photons - expected_photons).abs(),
        var_x,
        expected_var_x,
        var_x_deviation: (var_x - expected_var_x).abs(),
        var_p,
        expected_var_p,
        var_p_deviation: (var_p - expected_var_p).abs(),
        uncertainty_product: state.uncertainty_product(idx),
        sf_leftover_photons: state.photon_number(0),
    };

    let mut emitter = Emitter::new(&args.out, args.format, "select", &loaded)?;
    emitter.write_json("selected", &report)?;
    let names = emitter.finish()?;
    announce("select", &loaded.source, args, &names);
    println!(
        "  order {}: {:.6} photons (closed form {:.6})",
        report.order, report.photons, report.expected_photons
    );
    Ok(())
}

#[derive(Serialize)]
struct JsaSummary {
    pump_width: f64,
    group_delay_mismatch: f64,
    phase_matching: &'static str,
    acceptance_width: f64,
    factorization_ratio: f64,
    schmidt_number: f64,
    purity: f64,
    leading_weight: f64,
    kept_modes: usize,
    reconstruction_error: f64,
}

fn pm_name(pm: PmSpec) -> &'static str {
    match pm {
        PmSpec::Sinc => "sinc",
        PmSpec::Gaussian => "gaussian",
    }
}

/// Builds the two-photon transfer amplitude, factorizes it, and reports how
/// single-mode the converter is; optionally sweeps the σ/Δω ratio.
pub fn jsa(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let section = cfg.jsa()?;
    let disp = section.dispersion()?;
    let pm: PhaseMatching = section.phase_matching.into();
    let (signal_grid, output_grid) = disp.default_grids(pm)?;
    let amplitude = two_photon_amplitude(
        gaussian_pump(disp.pump_width()),
        &disp,
        &signal_grid,
        &output_grid,
        pm,
    )?;
    let schmidt = schmidt_decompose_jsa(&amplitude, section.max_modes)?;
    let summary = JsaSummary {
        pump_width: disp.pump_width(),
        group_delay_mismatch: disp.group_delay_mismatch(),
        phase_matching: pm_name(section.phase_matching),
        acceptance_width: disp.acceptance_width(),
        factorization_ratio: disp.factorization_ratio(),
        schmidt_number: schmidt.schmidt_number(),
        purity: schmidt.purity(),
        leading_weight: schmidt.coefficients[0].powi(2),
        kept_modes: schmidt.signal_modes.len(),
        reconstruction_error: schmidt.reconstruction_error(&amplitude)?,
    };

    let mut emitter = Emitter::new(&args.out, args.format, "jsa", &loaded)?;
    emitter.write_json("summary", &summary)?;

    let weight_rows: Vec<Vec<f64>> = schmidt
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, &c)| vec![k as f64, c, c * c])
        .collect();
    emitter.write_table(
        "schmidt_weights",
        &header(&["k", "coefficient", "weight"]),
        &weight_rows,
    )?;

    let sf_mode = sum_frequency_mode(&disp, &output_grid)?;
    let sf_rows: Vec<Vec<f64>> = output_grid
        .points()
        .zip(sf_mode.values())
        .map(|(omega, v)| vec![omega, v.re, v.im, v.norm_sqr()])
        .collect();
    emitter.write_table(
        "sf_mode",
        &header(&[
            "omega [acceptance units]",
            "re_amplitude",
            "im_amplitude",
            "density",
        ]),
        &sf_rows,
    )?;

    if !section.ratios.is_empty() {
        let sweep_rows: Vec<Vec<f64>> = section
            .ratios
            .par_iter()
            .map(|&ratio| -> Result<Vec<f64>> {
                let disp_r = section.dispersion_at_ratio(ratio)?;
                let (sig, out) = disp_r.default_grids(pm)?;
                let amp = two_photon_amplitude(
                    gaussian_pump(disp_r.pump_width()),
                    &disp_r,
                    &sig,
                    &out,
                    pm,
                )?;
                // only the coefficient spectrum matters here, keep one pair
                let dec = schmidt_decompose_jsa(&amp, 1)?;
                Ok(vec![
                    ratio,
                    dec.schmidt_number(),
                    dec.purity(),
                    dec.coefficients[0].powi(2),
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        emitter.write_table(
            "ratio_sweep",
            &header(&[
                "factorization_ratio [sigma / acceptance width]",
                "schmidt_number",
                "purity",
                "leading_weight",
            ]),
            &sweep_rows,
        )?;
    }

    let names = emitter.finish()?;
    announce("jsa", &loaded.source, args, &names);
    println!(
        "  ratio {:.4}: K = {:.4}, leading weight {:.6}",
        summary.factorization_ratio, summary.schmidt_number, summary.leading_weight
    );
    Ok(())
}

/// Exact Fock-space cross-check of the moment engine. A disagreement is a
/// broken numerical guarantee, not a config problem, hence exit 3.
pub fn oracle(preset: &str, args: &RunArgs) -> Result<()> {
    let loaded = config::load(args.config.as_deref(), preset)?;
    let cfg = &loaded.config;
    let section = cfg.oracle()?;
    if section.scenarios.is_empty() {
        return Err(CliError::Config("oracle scenario list is empty".into()));
    }

    let mut reports = Vec::with_capacity(section.scenarios.len());
    for (i, scenario) in section.scenarios.iter().enumerate() {
        let report = scenario.compare_with_gaussian()?;
        println!(
            "  [{i}] {}: {} (max |err| {:.3e}, truncation leak {:.3e})",
            report.scenario,
            if report.all_pass { "pass" } else { "FAIL" },
            report.max_abs_err,
            report.leak
        );
        reports.push(report);
    }

    let mut emitter = Emitter::new(&args.out, args.format, "oracle", &loaded)?;
    emitter.write_json("oracle_report", &reports)?;
    let names = emitter.finish()?;
    announce("oracle", &loaded.source, args, &names);

    if reports.iter().any(|r| !r.all_pass) {
        return Err(CliError::Numerical(
            "oracle disagrees with the moment engine; see oracle_report.json".into(),
        ));
    }
    Ok(())
}

/// Checks a scenario file (or every embedded preset) without producing any
/// artifacts.
pub fn validate(path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let loaded = config::load(Some(p), "")?;
            validate_config(&loaded.config)?;
            println!("{}: ok", loaded.source);
        }
        None => {
            for (name, _) in config::PRESETS {
                let loaded = config::load(None, name)?;
                validate_config(&loaded.config)?;
                println!("{}: ok", loaded.source);
            }
        }
    }
    Ok(())
}

fn validate_config(cfg: &ScenarioConfig) -> Result<()> {
    let mut sections = 0usize;
    let mut seed_modes = None;
    if cfg.seed.is_some() {
        let spectrum = cfg.spectrum()?;
        cfg.input_state()?.check_physical()?;
        seed_modes = Some(spectrum.mode_count());
        sections += 1;
    }
    if cfg.gate.is_some() {
        let gate_cfg = cfg.gate_config()?;
        gate_cfg.matrix()?;
        if let Some(k) = seed_modes {
            for &order in gate_cfg.matched_orders() {
                if order >= k {
                    return Err(CliError::Config(format!(
                        "matched order {order} outside the {k}-mode seed"
                    )));
                }
            }
        }
        sections += 1;
    }
    if cfg.grid.is_some() {
        cfg.frequency_grid()?;
        sections += 1;
    }
    if let Some(sweep) = &cfg.sweep {
        sweep.values()?;
        sections += 1;
    }
    if let Some(section) = &cfg.jsa {
        let disp = section.dispersion()?;
        disp.default_grids(section.phase_matching.into())?;
        if section.max_modes == 0 {
            return Err(CliError::Config("jsa.max_modes must be at least 1".into()));
        }
        for &ratio in &section.ratios {
            section.dispersion_at_ratio(ratio)?;
        }
        sections += 1;
    }
    if let Some(section) = &cfg.oracle {
        if section.scenarios.is_empty() {
            return Err(CliError::Config("oracle scenario list is empty".into()));
        }
        for scenario in &section.scenarios {
            scenario.space()?;
        }
        sections += 1;
    }
    if let Some(section) = &cfg.select {
        let k =
            seed_modes.ok_or_else(|| CliError::Config("`select` needs a `seed` section".into()))?;
        if section.order >= k {
            return Err(CliError::Config(format!(
                "selected order {} outside the {k}-mode seed",
                section.order
            )));
        }
        sections += 1;
    }
    if sections == 0 {
        return Err(CliError::Config(
            "config has no usable section besides schema_version".into(),
        ));
    }
    Ok(())
}
