//! Uniform frequency grids and complex mode functions sampled on them.
//!
//! Frequencies are dimensionless throughout: the unit is the seed-mode width
//! and the origin sits at the shared central frequency. All integrals are
//! trapezoidal; grids are fine enough that quadrature error is far below the
//! tolerances in [`crate::tol`].

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl FrequencyGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step.is_finite() && start.is_finite()) || step <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid needs finite start and positive step, got start={start}, step={step}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        Ok(Self { start, step, count })
    }

    /// Grid symmetric about 0 covering [-half_width, half_width].
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "half_width must be positive, got {half_width}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        let step = 2.0 * half_width / (count - 1) as f64;
        Ok(Self {
            start: -half_width,
            step,
            count,
        })
    }

    /// Default working grid: 2048 points spanning ±8 seed-mode widths.
    /// Wide enough that a Hermite-Gauss mode of order 8 keeps its tail mass
    /// below 1e-10.
    pub fn default_for_width(width: f64) -> Result<Self> {
        Self::symmetric(8.0 * width, 2048)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }

    /// Trapezoid quadrature weight for point `i` (step folded in).
    pub fn quad_weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.count {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// ∫ f dω for real samples.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.count);
        samples
            .iter()
            .enumerate()
            .map(|(i, s)| self.quad_weight(i) * s)
            .sum()
    }
}

/// A complex function of frequency sampled on a [`FrequencyGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModeFunction {
    grid: FrequencyGrid,
    values: Vec<C64>,
}

impl ModeFunction {
    pub fn new(grid: FrequencyGrid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} points but {} values supplied",
                grid.count(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// ⟨self|other⟩ = ∫ conj(self) · other dω.
    pub fn overlap(&self, other: &Self) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                "overlap requires both modes on the same grid".into(),
            ));
        }
        let mut acc = C64::default();
        for i in 0..self.values.len() {
            acc += self.grid.quad_weight(i) * self.values[i].conj() * other.values[i];
        }
        Ok(acc)
    }

    pub fn norm_squared(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.quad_weight(i) * v.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Rescale to unit trapezoid norm. Errors on (numerically) zero input.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::Normalization(
                "cannot normalize a zero mode function".into(),
            ));
        }
        for v in &mut self.values {
            *v /= n;
        }
        Ok(self)
    }

    pub fn scaled(mut self, factor: C64) -> Self {
        for v in &mut self.values {
            *v *= factor;
        }
        self
    }
}
