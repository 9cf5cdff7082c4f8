//! Nonlinear difference equations for the reflection data r_n.
//!
//! For the Bessel symbol the r_n obey discrete Painlevé II,
//!
//! ```text
//! r_{n+1} + r_{n−1} = −(2n/t) r_n/(1 − r_n²),   r_0 = 1, r_1 = −I_1(t)/I_0(t).
//! ```
//!
//! Forward iteration amplifies a perturbation of r_1 by about
//! (n!/(t/2)^n)², so long orbits are carried in [`Extended`] precision and
//! compared against Gram solves done at still higher precision.
//!
//! For a single pole the symbol e^{tz}((z − z_1)/z)^{g_1} gives a second
//! order recursion with an integration constant λ.

use serde::Serialize;

use crate::C64;

mod bessel;
mod extended;
mod pole;

pub use bessel::{
    bessel_ratios, bessel_step_checks, bessel_step_checks_data, bessel_step_residuals, dp2_oracle, dp2_orbit,
    dp2_orbit_ext, dp2_required_digits, dp2_seeds, dp2_seeds_ext, dp2_step, gram_oracle_digits, BesselData,
};
pub use extended::{bits_for_digits, Extended, Real};
pub use pole::{
    lambda_trace, one_pole_lambda, one_pole_lambda_at, one_pole_lambda_dual_at, one_pole_orbit, one_pole_predictions,
    one_pole_residue_checks, one_pole_step, one_pole_step_dual, OnePolePrediction,
};

/// Which recursion produced an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum OrbitFamily {
    Dp2 { t: f64 },
    OnePole { t: f64, z1: f64, g1: f64 },
}

/// r_0, …, r_N produced by a recursion, rounded to double.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceOrbit {
    pub family: OrbitFamily,
    pub values: Vec<C64>,
    /// Decimal digits carried while iterating.
    pub precision_digits: u32,
}

/// One orbit value beside its reference.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitRow {
    pub n: usize,
    pub r_n: f64,
    pub oracle_r_n: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

impl RecurrenceOrbit {
    /// Rows (n, r_n, oracle r_n, differences) over the common range.
    pub fn compare(&self, oracle: &[f64]) -> Vec<OrbitRow> {
        self.values
            .iter()
            .zip(oracle)
            .enumerate()
            .map(|(n, (r, &o))| {
                let abs_diff = (r.re - o).abs();
                OrbitRow {
                    n,
                    r_n: r.re,
                    oracle_r_n: o,
                    abs_diff,
                    rel_diff: crate::report::relative(abs_diff, o.abs()),
                }
            })
            .collect()
    }

    /// Largest relative difference to the reference over 0..=n_max.
    pub fn max_relative_error(&self, oracle: &[f64], n_max: usize) -> f64 {
        self.compare(oracle)
            .iter()
            .take(n_max + 1)
            .map(|r| r.rel_diff)
            .fold(0.0, f64::max)
    }
}
