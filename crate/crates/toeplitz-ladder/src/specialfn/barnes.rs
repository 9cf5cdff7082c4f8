use std::f64::consts::PI;

use super::gamma::{is_nonpositive_integer, log_gamma};
use crate::{Error, Result, C64};

/// ζ'(−1)
const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;

/// Real part at which the asymptotic expansion takes over.
pub(crate) const DEFAULT_SHIFT_TARGET: f64 = 20.0;

/// B_{2k+2} / (4k(k+1)) for k = 1..=7.
const BARNES_COEFFS: [f64; 7] = [
    (-1.0 / 30.0) / 8.0,
    (1.0 / 42.0) / 24.0,
    (-1.0 / 30.0) / 48.0,
    (5.0 / 66.0) / 80.0,
    (-691.0 / 2730.0) / 120.0,
    (7.0 / 6.0) / 168.0,
    (-3617.0 / 510.0) / 224.0,
];

/// ln G(1 + w) for large |w| with Re w > 0.
fn asymptotic(w: C64) -> C64 {
    let lw = w.ln();
    let w2 = w * w;
    let inv2 = w2.inv();
    let mut series = C64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in BARNES_COEFFS {
        series += pow * c;
        pow *= inv2;
    }
    w2 * 0.5 * lw - w2 * 0.75 + w * (0.5 * (2.0 * PI).ln()) - lw / 12.0 + ZETA_PRIME_MINUS_ONE + series
}

pub(crate) fn barnes_g_log_shifted(z: C64, target: f64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("barnes_g_log of non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::domain(format!("Barnes G vanishes at {}", z.re)));
    }
    // ln G(z) = ln G(z + N) − Σ_{k<N} ln Γ(z + k)
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < target {
        acc += log_gamma(w)?;
        w += 1.0;
    }
    Ok(asymptotic(w - 1.0) - acc)
}

/// Logarithm of the Barnes G-function.
///
/// The argument is shifted upward through G(z+1) = Γ(z)G(z) until its real
/// part reaches 20, where the asymptotic expansion of ln G(1+w) is summed.
/// The branch is the one obtained by summing analytic log-gamma values, so
/// `exp` of the result is G(z).
pub fn barnes_g_log(z: C64) -> Result<C64> {
    barnes_g_log_shifted(z, DEFAULT_SHIFT_TARGET)
}
