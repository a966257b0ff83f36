//! Brute-force oracle: truncated multimode Fock space with exact state
//! vectors. Everything here is deliberately independent of the moment
//! engine so the two routes can check each other.
//!
//! The gate generator conserves the total photon number over the active
//! modes, so its exponential is block diagonal over those sectors. Complex
//! projection phases are gauged away by the diagonal unitary
//! W = Π_k e^{iφ_k n_k}, leaving a real antisymmetric generator per sector
//! whose exponential is orthogonal; the gauge is undone around the matvec.

use crate::error::{Error, Result};
use crate::gate::{multimode_gate, normalized_projections};
use crate::moments::{GaussianMoments, ModeLabel};
use crate::schmidt::SchmidtSpectrum;
use crate::tol;
use crate::C64;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Occupation-number basis over `modes` modes, each truncated at `cutoff`
/// photons. Mode 0 is the most significant digit of the flat index.
#[derive(Clone, Debug)]
pub struct FockSpace {
    modes: usize,
    cutoff: usize,
    dim: usize,
    places: Vec<usize>,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 || modes > tol::FOCK_MODE_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "mode count must lie in 1..={}, got {modes}",
                tol::FOCK_MODE_LIMIT
            )));
        }
        if cutoff == 0 {
            return Err(Error::InvalidArgument(
                "cutoff must allow at least one photon".into(),
            ));
        }
        let base = cutoff + 1;
        let mut dim: usize = 1;
        for _ in 0..modes {
            dim = dim
                .checked_mul(base)
                .filter(|&d| d <= tol::FOCK_DIM_LIMIT)
                .ok_or_else(|| {
                    Error::SpaceTooLarge(format!(
                        "(cutoff+1)^modes = {base}^{modes} exceeds {}",
                        tol::FOCK_DIM_LIMIT
                    ))
                })?;
        }
        let places = (0..modes)
            .map(|k| base.pow((modes - 1 - k) as u32))
            .collect();
        Ok(Self {
            modes,
            cutoff,
            dim,
            places,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.places[mode]) % (self.cutoff + 1)
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.modes).map(|m| self.occupation(index, m)).collect()
    }

    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.modes {
            return Err(Error::DimensionMismatch(format!(
                "expected {} occupation numbers, got {}",
                self.modes,
                occupations.len()
            )));
        }
        let mut idx = 0;
        for (m, &n) in occupations.iter().enumerate() {
            if n > self.cutoff {
                return Err(Error::InvalidArgument(format!(
                    "occupation {n} exceeds cutoff {}",
                    self.cutoff
                )));
            }
            idx += n * self.places[m];
        }
        Ok(idx)
    }

    pub fn vacuum(&self) -> FockState {
        let mut amps = vec![C64::default(); self.dim];
        amps[0] = C64::new(1.0, 0.0);
        FockState {
            space: self.clone(),
            amps,
            leak: 0.0,
        }
    }
}

/// Normalized state vector over a [`FockSpace`]. `leak` records the
/// probability mass discarded by truncation when the state was built.
#[derive(Clone, Debug)]
pub struct FockState {
    space: FockSpace,
    amps: Vec<C64>,
    leak: f64,
}

impl FockState {
    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<C64> {
        Ok(self.amps[self.space.index_of(occupations)?])
    }

    pub fn leak(&self) -> f64 {
        self.leak
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Expectation values computed directly from the state vector, with
    /// explicit mean subtraction (no Gaussian assumptions anywhere).
    pub fn measure(&self) -> FockObservables {
        let m = self.space.modes;
        let mut mean = vec![0.0; m];
        let mut second = vec![vec![0.0; m]; m];
        let mut a1 = vec![C64::default(); m];
        let mut a2 = vec![C64::default(); m];
        let mut occ = vec![0usize; m];
        for (s, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for (k, o) in occ.iter_mut().enumerate() {
                *o = self.space.occupation(s, k);
            }
            for k in 0..m {
                mean[k] += p * occ[k] as f64;
                for j in k..m {
                    second[k][j] += p * (occ[k] * occ[j]) as f64;
                }
            }
            for k in 0..m {
                let n = occ[k];
                if n >= 1 {
                    a1[k] += self.amps[s - self.space.places[k]].conj() * amp * (n as f64).sqrt();
                }
                if n >= 2 {
                    a2[k] += self.amps[s - 2 * self.space.places[k]].conj()
                        * amp
                        * ((n * (n - 1)) as f64).sqrt();
                }
            }
        }

        let mut covariance = vec![vec![0.0; m]; m];
        for k in 0..m {
            for j in k..m {
                let c = second[k][j] - mean[k] * mean[j];
                covariance[k][j] = c;
                covariance[j][k] = c;
            }
        }
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut mean_x = vec![0.0; m];
        let mut mean_p = vec![0.0; m];
        let mut var_x = vec![0.0; m];
        let mut var_p = vec![0.0; m];
        for k in 0..m {
            mean_x[k] = sqrt2 * a1[k].re;
            mean_p[k] = sqrt2 * a1[k].im;
            var_x[k] = 0.5 + mean[k] + a2[k].re - mean_x[k] * mean_x[k];
            var_p[k] = 0.5 + mean[k] - a2[k].re - mean_p[k] * mean_p[k];
        }
        FockObservables {
            total_photons: mean.iter().sum(),
            mean_photons: mean,
            photon_covariances: covariance,
            mean_x,
            mean_p,
            var_x,
            var_p,
        }
    }
}

/// Photon-number and quadrature statistics of a Fock state.
#[derive(Clone, Debug, Serialize)]
pub struct FockObservables {
    pub mean_photons: Vec<f64>,
    /// Full covariance matrix of the mode photon numbers (diagonal holds the
    /// variances).
    pub photon_covariances: Vec<Vec<f64>>,
    pub mean_x: Vec<f64>,
    pub mean_p: Vec<f64>,
    pub var_x: Vec<f64>,
    pub var_p: Vec<f64>,
    pub total_photons: f64,
}

impl FockObservables {
    pub fn photon_variance(&self, mode: usize) -> f64 {
        self.photon_covariances[mode][mode]
    }

    pub fn number_difference_variance(&self, a: usize, b: usize) -> f64 {
        self.photon_covariances[a][a] + self.photon_covariances[b][b]
            - 2.0 * self.photon_covariances[a][b]
    }

    pub fn noise_reduction_factor(&self, a: usize, b: usize) -> Result<f64> {
        let total = self.mean_photons[a] + self.mean_photons[b];
        if total < 1e-12 {
            return Err(Error::InvalidArgument(
                "noise reduction factor undefined for empty beams".into(),
            ));
        }
        Ok(self.number_difference_variance(a, b) / total)
    }
}

/// Seed operations. Modes named here must be pairwise distinct; every mode
/// not named stays in vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqueezeOp {
    Single {
        mode: usize,
        gain: f64,
    },
    Twin {
        signal: usize,
        idler: usize,
        gain: f64,
    },
}

/// Vacuum amplitudes of exp((g/2)(a†² − a²)) truncated at `cutoff`, built
/// with extra headroom so the table itself is accurate to machine precision.
fn single_mode_table(gain: f64, cutoff: usize) -> Vec<f64> {
    let margin = cutoff + 8;
    let mut gen = DMatrix::<f64>::zeros(margin + 1, margin + 1);
    for n in 0..margin.saturating_sub(1) {
        let v = 0.5 * gain * (((n + 1) * (n + 2)) as f64).sqrt();
        gen[(n + 2, n)] = v;
        gen[(n, n + 2)] = -v;
    }
    let u = gen.exp();
    (0..=cutoff).map(|n| u[(n, 0)]).collect()
}

/// Vacuum amplitudes of exp(g(a†b† − ab)) on the pair ladder |n, n⟩.
fn twin_table(gain: f64, cutoff: usize) -> Vec<f64> {
    let margin = cutoff + 8;
    let mut gen = DMatrix::<f64>::zeros(margin + 1, margin + 1);
    for n in 0..margin {
        let v = gain * (n + 1) as f64;
        gen[(n + 1, n)] = v;
        gen[(n, n + 1)] = -v;
    }
    let u = gen.exp();
    (0..=cutoff).map(|n| u[(n, 0)]).collect()
}

/// Builds the (renormalized) product state of the given squeeze factors.
/// Fails with [`Error::TruncationLeak`] if the cutoff discards more mass
/// than [`tol::FOCK_LEAK_BUDGET`].
pub fn squeeze_state(space: &FockSpace, ops: &[SqueezeOp]) -> Result<FockState> {
    let mut used = vec![false; space.modes];
    let mut claim = |mode: usize| -> Result<()> {
        if mode >= space.modes {
            return Err(Error::InvalidArgument(format!(
                "squeeze references mode {mode} of a {}-mode space",
                space.modes
            )));
        }
        if used[mode] {
            return Err(Error::InvalidArgument(format!(
                "mode {mode} is claimed by two squeeze factors"
            )));
        }
        used[mode] = true;
        Ok(())
    };

    enum Factor {
        Single {
            mode: usize,
            table: Vec<f64>,
        },
        Twin {
            signal: usize,
            idler: usize,
            table: Vec<f64>,
        },
    }
    let mut factors = Vec::with_capacity(ops.len());
    let mut kept_mass = 1.0f64;
    for op in ops {
        match *op {
            SqueezeOp::Single { mode, gain } => {
                if !gain.is_finite() {
                    return Err(Error::InvalidArgument("squeeze gain must be finite".into()));
                }
                claim(mode)?;
                let table = single_mode_table(gain, space.cutoff);
                kept_mass *= table.iter().map(|c| c * c).sum::<f64>();
                factors.push(Factor::Single { mode, table });
            }
            SqueezeOp::Twin {
                signal,
                idler,
                gain,
            } => {
                if !gain.is_finite() {
                    return Err(Error::InvalidArgument("squeeze gain must be finite".into()));
                }
                claim(signal)?;
                claim(idler)?;
                let table = twin_table(gain, space.cutoff);
                kept_mass *= table.iter().map(|c| c * c).sum::<f64>();
                factors.push(Factor::Twin {
                    signal,
                    idler,
                    table,
                });
            }
        }
    }
    let leak = 1.0 - kept_mass;
    if leak > tol::FOCK_LEAK_BUDGET {
        return Err(Error::TruncationLeak {
            leak,
            budget: tol::FOCK_LEAK_BUDGET,
        });
    }

    let vacuum_modes: Vec<usize> = (0..space.modes).filter(|&m| !used[m]).collect();
    let mut amps = vec![C64::default(); space.dim];
    let scale = 1.0 / kept_mass.sqrt();
    'state: for (s, amp) in amps.iter_mut().enumerate() {
        for &m in &vacuum_modes {
            if space.occupation(s, m) != 0 {
                continue 'state;
            }
        }
        let mut value = scale;
        for f in &factors {
            match f {
                Factor::Single { mode, table } => value *= table[space.occupation(s, *mode)],
                Factor::Twin {
                    signal,
                    idler,
                    table,
                } => {
                    let n = space.occupation(s, *signal);
                    if n != space.occupation(s, *idler) {
                        continue 'state;
                    }
                    value *= table[n];
                }
            }
        }
        *amp = C64::new(value, 0.0);
    }
    Ok(FockState {
        space: space.clone(),
        amps,
        leak,
    })
}

/// One total-photon sector of the gauged gate exponential.
struct SectorBlock {
    /// Flat-index contribution of each sector state's active digits.
    offsets: Vec<usize>,
    /// Gauge phase w(s) of each sector state.
    phases: Vec<C64>,
    /// exp of the real antisymmetric sector generator (orthogonal).
    op: DMatrix<f64>,
}

struct GateBlocks {
    sectors: Vec<SectorBlock>,
    spectator_offsets: Vec<usize>,
}

fn build_gate_blocks(
    space: &FockSpace,
    theta: f64,
    projections: &[C64],
    active: &[usize],
) -> Result<GateBlocks> {
    let mu = normalized_projections(projections)?;
    if active.len() != mu.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} active modes cannot host 1 SF channel + {} projections",
            active.len(),
            mu.len()
        )));
    }
    let mut seen = vec![false; space.modes];
    for &m in active {
        if m >= space.modes {
            return Err(Error::InvalidArgument(format!(
                "active mode {m} out of range for a {}-mode space",
                space.modes
            )));
        }
        if seen[m] {
            return Err(Error::InvalidArgument(format!(
                "active mode {m} listed twice"
            )));
        }
        seen[m] = true;
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument("gate angle must be finite".into()));
    }

    let base = space.cutoff + 1;
    let a = active.len();
    let mags: Vec<f64> = mu.iter().map(|z| z.norm()).collect();
    let args: Vec<f64> = mu.iter().map(|z| z.arg()).collect();

    // enumerate active-digit tuples grouped by total photon number
    let local_dim = base.pow(a as u32);
    let max_n = a * space.cutoff;
    let mut sector_states: Vec<Vec<usize>> = vec![Vec::new(); max_n + 1];
    let mut sector_pos: Vec<u32> = vec![0; local_dim];
    let mut digits = vec![0usize; a];
    for (local, pos) in sector_pos.iter_mut().enumerate() {
        let mut rest = local;
        let mut total = 0;
        for d in digits.iter_mut().rev() {
            *d = rest % base;
            rest /= base;
            total += *d;
        }
        *pos = sector_states[total].len() as u32;
        sector_states[total].push(local);
    }

    let local_place = |slot: usize| base.pow((a - 1 - slot) as u32);
    let mut sectors = Vec::with_capacity(max_n + 1);
    for states in &sector_states {
        let len = states.len();
        let mut gen = DMatrix::<f64>::zeros(len, len);
        let mut offsets = Vec::with_capacity(len);
        let mut phases = Vec::with_capacity(len);
        for (pos, &local) in states.iter().enumerate() {
            let mut rest = local;
            for d in digits.iter_mut().rev() {
                *d = rest % base;
                rest /= base;
            }
            let n0 = digits[0];
            for k in 1..a {
                let nk = digits[k];
                if nk >= 1 && n0 < space.cutoff {
                    let target = local + local_place(0) - local_place(k);
                    let tpos = sector_pos[target] as usize;
                    let v = theta * mags[k - 1] * ((nk * (n0 + 1)) as f64).sqrt();
                    gen[(tpos, pos)] += v;
                    gen[(pos, tpos)] -= v;
                }
            }
            let mut offset = 0;
            let mut phase = 0.0;
            for k in 0..a {
                offset += digits[k] * space.places[active[k]];
                if k >= 1 {
                    phase += args[k - 1] * digits[k] as f64;
                }
            }
            offsets.push(offset);
            phases.push(C64::from_polar(1.0, phase));
        }
        sectors.push(SectorBlock {
            offsets,
            phases,
            op: gen.exp(),
        });
    }

    // spectator digit assignments as flat-index offsets
    let mut spectator_offsets = vec![0usize];
    for (m, &is_active) in seen.iter().enumerate() {
        if is_active {
            continue;
        }
        let mut next = Vec::with_capacity(spectator_offsets.len() * base);
        for &off in &spectator_offsets {
            for n in 0..base {
                next.push(off + n * space.places[m]);
            }
        }
        spectator_offsets = next;
    }
    Ok(GateBlocks {
        sectors,
        spectator_offsets,
    })
}

/// Applies the converter unitary exp(Θ(C†D − D†C)), D = Σ μ_k A_k, where
/// `active[0]` is the SF mode and `active[1..]` carry the projections.
/// Photon number over the active modes is conserved exactly; spectator
/// modes pass through untouched.
pub fn apply_gate(
    state: &FockState,
    theta: f64,
    projections: &[C64],
    active: &[usize],
) -> Result<FockState> {
    let blocks = build_gate_blocks(&state.space, theta, projections, active)?;
    let mut out = vec![C64::default(); state.space.dim];
    for sector in &blocks.sectors {
        let len = sector.offsets.len();
        let mut xr = DVector::<f64>::zeros(len);
        let mut xi = DVector::<f64>::zeros(len);
        for &spec in &blocks.spectator_offsets {
            for pos in 0..len {
                let z = state.amps[sector.offsets[pos] + spec] * sector.phases[pos];
                xr[pos] = z.re;
                xi[pos] = z.im;
            }
            let yr = &sector.op * &xr;
            let yi = &sector.op * &xi;
            for pos in 0..len {
                out[sector.offsets[pos] + spec] =
                    C64::new(yr[pos], yi[pos]) * sector.phases[pos].conj();
            }
        }
    }
    Ok(FockState {
        space: state.space.clone(),
        amps: out,
        leak: state.leak,
    })
}

/// Dense gate unitary, for small spaces only (cross-checks and spectra of
/// the exact operator).
pub fn gate_unitary(
    space: &FockSpace,
    theta: f64,
    projections: &[C64],
    active: &[usize],
) -> Result<DMatrix<C64>> {
    if space.dim > tol::FOCK_DENSE_LIMIT {
        return Err(Error::SpaceTooLarge(format!(
            "dense unitary capped at dim {}, space has {}",
            tol::FOCK_DENSE_LIMIT,
            space.dim
        )));
    }
    let blocks = build_gate_blocks(space, theta, projections, active)?;
    let mut u = DMatrix::<C64>::zeros(space.dim, space.dim);
    for sector in &blocks.sectors {
        let len = sector.offsets.len();
        for &spec in &blocks.spectator_offsets {
            for t in 0..len {
                for s in 0..len {
                    u[(sector.offsets[t] + spec, sector.offsets[s] + spec)] =
                        sector.phases[t].conj() * sector.op[(t, s)] * sector.phases[s];
                }
            }
        }
    }
    Ok(u)
}

/// End-to-end validation scenarios: seed, gate, measure, on both routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleScenario {
    /// One squeezed signal mode, perfectly matched projection.
    SingleModeMatch { gain: f64, theta: f64 },
    /// Two independently squeezed signal modes, complex projection weights.
    TwoModeMatch {
        gain_a: f64,
        gain_b: f64,
        /// |μ_a|²; the second weight is the complement.
        weight_a: f64,
        /// Relative phase of μ_b.
        mu_phase: f64,
        theta: f64,
    },
    /// Two twin-beam pairs; the gate addresses the two signal modes with
    /// equal weight and a relative phase, idlers ride along as spectators.
    TwinBeamSwap {
        gain: f64,
        theta: f64,
        relative_phase: f64,
    },
}

impl OracleScenario {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SingleModeMatch { .. } => "single_mode_match",
            Self::TwoModeMatch { .. } => "two_mode_match",
            Self::TwinBeamSwap { .. } => "twin_beam_swap",
        }
    }

    pub fn space(&self) -> Result<FockSpace> {
        match self {
            Self::SingleModeMatch { .. } => FockSpace::new(2, 24),
            Self::TwoModeMatch { .. } => FockSpace::new(3, 24),
            // five modes force a lower cutoff to stay under the dim cap;
            // twin gains stay small enough for the leak budget
            Self::TwinBeamSwap { .. } => FockSpace::new(5, 12),
        }
    }

    pub fn mode_names(&self) -> Vec<&'static str> {
        match self {
            Self::SingleModeMatch { .. } => vec!["sf", "s0"],
            Self::TwoModeMatch { .. } => vec!["sf", "s0", "s1"],
            Self::TwinBeamSwap { .. } => vec!["sf", "s0", "s1", "i0", "i1"],
        }
    }

    fn seeds(&self) -> Vec<SqueezeOp> {
        match *self {
            Self::SingleModeMatch { gain, .. } => vec![SqueezeOp::Single { mode: 1, gain }],
            Self::TwoModeMatch { gain_a, gain_b, .. } => vec![
                SqueezeOp::Single {
                    mode: 1,
                    gain: gain_a,
                },
                SqueezeOp::Single {
                    mode: 2,
                    gain: gain_b,
                },
            ],
            Self::TwinBeamSwap { gain, .. } => vec![
                SqueezeOp::Twin {
                    signal: 1,
                    idler: 3,
                    gain,
                },
                SqueezeOp::Twin {
                    signal: 2,
                    idler: 4,
                    gain,
                },
            ],
        }
    }

    fn theta(&self) -> f64 {
        match *self {
            Self::SingleModeMatch { theta, .. }
            | Self::TwoModeMatch { theta, .. }
            | Self::TwinBeamSwap { theta, .. } => theta,
        }
    }

    fn projections(&self) -> Result<Vec<C64>> {
        match *self {
            Self::SingleModeMatch { .. } => Ok(vec![C64::new(1.0, 0.0)]),
            Self::TwoModeMatch {
                weight_a, mu_phase, ..
            } => {
                if !(0.0..=1.0).contains(&weight_a) {
                    return Err(Error::InvalidArgument(format!(
                        "weight_a must lie in [0, 1], got {weight_a}"
                    )));
                }
                Ok(vec![
                    C64::new(weight_a.sqrt(), 0.0),
                    C64::from_polar((1.0 - weight_a).sqrt(), mu_phase),
                ])
            }
            Self::TwinBeamSwap { relative_phase, .. } => {
                let w = std::f64::consts::FRAC_1_SQRT_2;
                Ok(vec![C64::new(w, 0.0), C64::from_polar(w, relative_phase)])
            }
        }
    }

    fn active(&self) -> Vec<usize> {
        match self {
            Self::SingleModeMatch { .. } => vec![0, 1],
            Self::TwoModeMatch { .. } | Self::TwinBeamSwap { .. } => vec![0, 1, 2],
        }
    }

    /// Exact route: truncated state vector through the exponentiated gate.
    pub fn run_oracle(&self) -> Result<(FockObservables, f64)> {
        let space = self.space()?;
        let input = squeeze_state(&space, &self.seeds())?;
        let output = apply_gate(&input, self.theta(), &self.projections()?, &self.active())?;
        let leak = output.leak();
        Ok((output.measure(), leak))
    }

    /// Moment route: the same scenario through the Gaussian engine.
    pub fn gaussian_moments(&self) -> Result<GaussianMoments> {
        let input = match *self {
            Self::SingleModeMatch { gain, .. } => {
                let spectrum = SchmidtSpectrum::new(gain, vec![1.0], 0.0, 1.0)?;
                GaussianMoments::squeezed_vacuum(&spectrum, true)
            }
            Self::TwoModeMatch { gain_a, gain_b, .. } => {
                // independent gains don't fit one Schmidt spectrum, assemble directly
                let labels = vec![
                    ModeLabel::SumFrequency,
                    ModeLabel::Signal(0),
                    ModeLabel::Signal(1),
                ];
                let mut normal = DMatrix::<C64>::zeros(3, 3);
                let mut anomalous = DMatrix::<C64>::zeros(3, 3);
                for (i, g) in [gain_a, gain_b].into_iter().enumerate() {
                    normal[(1 + i, 1 + i)] = C64::new(g.sinh() * g.sinh(), 0.0);
                    anomalous[(1 + i, 1 + i)] = C64::new(g.sinh() * g.cosh(), 0.0);
                }
                GaussianMoments::from_parts(labels, normal, anomalous)?
            }
            Self::TwinBeamSwap { gain, .. } => {
                let spectrum = SchmidtSpectrum::new(
                    gain * std::f64::consts::SQRT_2,
                    vec![0.5, 0.5],
                    0.0,
                    1.0,
                )?;
                GaussianMoments::twin_beam(&spectrum).with_sf_channel()
            }
        };
        let gate = multimode_gate(self.theta(), &self.projections()?)?;
        input.apply_gate(&gate, &self.active())
    }

    /// Runs both routes and compares every shared observable.
    pub fn compare_with_gaussian(&self) -> Result<ComparisonReport> {
        let (oracle, leak) = self.run_oracle()?;
        let gaussian = self.gaussian_moments()?;
        let names = self.mode_names();
        let m = names.len();

        let mut entries = Vec::new();
        let mut push = |name: String, o: f64, g: f64| {
            let abs_err = (o - g).abs();
            let scale = 1.0f64.max(o.abs()).max(g.abs());
            entries.push(ComparisonEntry {
                pass: abs_err <= tol::ORACLE_REL_TOL * scale,
                name,
                oracle: o,
                gaussian: g,
                abs_err,
            });
        };

        for (k, mode_name) in names.iter().enumerate() {
            push(
                format!("mean_n[{mode_name}]"),
                oracle.mean_photons[k],
                gaussian.photon_number(k),
            );
            push(
                format!("var_n[{mode_name}]"),
                oracle.photon_variance(k),
                gaussian.photon_number_variance(k),
            );
            let (vx, vp) = gaussian.quadrature_variances(k);
            push(format!("var_x[{mode_name}]"), oracle.var_x[k], vx);
            push(format!("var_p[{mode_name}]"), oracle.var_p[k], vp);
        }
        for a in 0..m {
            for b in (a + 1)..m {
                push(
                    format!("cov_n[{},{}]", names[a], names[b]),
                    oracle.photon_covariances[a][b],
                    gaussian.photon_covariance(a, b),
                );
            }
        }
        push(
            "total_n".into(),
            oracle.total_photons,
            gaussian.total_photons(),
        );

        let max_abs_err = entries.iter().map(|e| e.abs_err).fold(0.0, f64::max);
        let all_pass = entries.iter().all(|e| e.pass);
        Ok(ComparisonReport {
            scenario: self.name().into(),
            entries,
            max_abs_err,
            all_pass,
            leak,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonEntry {
    pub name: String,
    pub oracle: f64,
    pub gaussian: f64,
    pub abs_err: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub scenario: String,
    pub entries: Vec<ComparisonEntry>,
    pub max_abs_err: f64,
    pub all_pass: bool,
    pub leak: f64,
}
