use std::f64::consts::PI;

use crate::{Error, Result, C64};

/// ln(2π)/2
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Stirling series is used once |z| reaches this radius.
const STIRLING_RADIUS: f64 = 10.0;

/// B_{2k} / (2k (2k-1)) for k = 1..=12.
const STIRLING_COEFFS: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    854_513.0 / 63_756.0,
    -236_364_091.0 / 1_506_960.0,
];

pub(crate) fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// sin(πx) with exact argument reduction for real x.
pub(crate) fn sin_pi_real(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact argument reduction for real x.
pub(crate) fn cos_pi_real(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs();
    if r > 0.5 {
        -sin_pi_real(r - 0.5)
    } else {
        sin_pi_real(0.5 - r)
    }
}

/// sin(πz) for complex z.
pub(crate) fn sin_pi(z: C64) -> C64 {
    let y = PI * z.im;
    C64::new(sin_pi_real(z.re) * y.cosh(), cos_pi_real(z.re) * y.sinh())
}

fn stirling(z: C64) -> C64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING_COEFFS {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Right half-plane evaluation: shift up until the Stirling series is accurate.
fn log_gamma_right(z: C64) -> C64 {
    // Modulus from one product, phase as a sum of arguments, so that the
    // analytic branch is kept without summing many rounded logarithms.
    let mut w = z;
    let mut modulus = 1.0f64;
    let mut phase = 0.0f64;
    while w.norm() < STIRLING_RADIUS {
        modulus *= w.norm();
        phase += w.arg();
        w += 1.0;
    }
    stirling(w) - C64::new(modulus.ln(), phase)
}

/// Logarithm of the gamma function.
///
/// Returns the branch that is analytic in the plane cut along the negative
/// real axis and real on the positive real axis; `exp` of the result is
/// Γ(z). The imaginary part is therefore not reduced to (−π, π].
///
/// For `Re z < 0.5` the reflection formula is used with a 2πi correction
/// that keeps the result continuous across the half-planes.
pub fn log_gamma(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("log_gamma of non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::domain(format!("log_gamma pole at {}", z.re)));
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_right(z));
    }
    let reflected = log_gamma_right(C64::new(1.0, 0.0) - z);
    let mut out = LN_PI - sin_pi(z).ln() - reflected;
    if z.im != 0.0 {
        let turns = (0.5 * z.re + 0.25).floor();
        out.im += z.im.signum() * 2.0 * PI * turns;
    }
    Ok(out)
}

/// Γ(z).
pub fn gamma(z: C64) -> Result<C64> {
    log_gamma(z).map(C64::exp)
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => C64::new(f64::NAN, f64::NAN),
    }
}

/// ln Γ(x) for real positive x.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(log_gamma(C64::new(x, 0.0))?.re)
}
