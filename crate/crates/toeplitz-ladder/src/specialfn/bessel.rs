use super::gamma::ln_gamma_real;
use crate::{Error, Result};

/// Largest argument for which the ascending series is the primary path.
const SERIES_LIMIT: f64 = 15.0;

fn series(order: u32, t: f64) -> f64 {
    if t == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * t;
    let n = order as f64;
    // (t/2)^n / n!, in log space for large orders
    let mut term = if order <= 20 {
        let mut v = 1.0;
        for k in 1..=order {
            v *= half / k as f64;
        }
        v
    } else {
        (n * half.ln() - ln_gamma_real(n + 1.0).unwrap_or(f64::INFINITY)).exp()
    };
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + n));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    sum
}

/// Miller downward recurrence, normalized by the series value of I_0.
fn miller(order: u32, t: f64) -> f64 {
    let start = 2 * (order.max(t.ceil() as u32) + 30);
    let two_over_t = 2.0 / t;
    let mut above = 0.0f64;
    let mut current = 1e-300f64;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let below = k as f64 * two_over_t * current + above;
        above = current;
        current = below;
        if k - 1 == order {
            wanted = current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            wanted *= 1e-250;
        }
    }
    // `current` now holds the unnormalized I_0.
    wanted * (series(0, t) / current)
}

/// Modified Bessel function of the first kind I_n(t) for integer order n and t ≥ 0.
///
/// Ascending power series up to t = 15 and Miller's downward recurrence
/// beyond that, normalized against the series value of I_0.
pub fn bessel_i(order: u32, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("bessel_i needs finite t >= 0, got {t}")));
    }
    if t <= SERIES_LIMIT {
        Ok(series(order, t))
    } else {
        Ok(miller(order, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_zero() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn i0_at_two() {
        // Σ (t/2)^{2m}/(m!)² with t = 2 is Σ 1/(m!)²
        let mut oracle = 0.0;
        let mut f = 1.0;
        for m in 0..30 {
            if m > 0 {
                f *= m as f64;
            }
            oracle += 1.0 / (f * f);
        }
        let got = bessel_i(0, 2.0).unwrap();
        assert!((got / oracle - 1.0).abs() < 1e-15);
        assert!((got - 2.279_585_302_336_067).abs() < 1e-14);
    }

    #[test]
    fn miller_matches_series_past_the_switch() {
        for &t in &[16.0, 25.0, 40.0, 50.0] {
            for order in [0u32, 1, 5, 20, 45, 60] {
                let a = miller(order, t);
                let b = series(order, t);
                assert!((a / b - 1.0).abs() < 1e-13, "t = {t}, order = {order}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_negative_argument() {
        assert!(bessel_i(0, -1.0).is_err());
    }
}
