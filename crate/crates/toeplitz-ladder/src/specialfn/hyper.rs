use crate::{Error, Result, C64};

/// Coefficients c_k of z^k in ₂F₁(−n, b; c; z), k = 0..=n.
pub fn hyp2f1_terminating_coeffs(n: usize, b: C64, c: C64) -> Result<Vec<C64>> {
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() && (-c.re) <= n as f64 - 1.0 {
        return Err(Error::domain(format!(
            "lower parameter c = {} hits a zero of (c)_k for k <= {n}",
            c.re
        )));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut term = C64::new(1.0, 0.0);
    out.push(term);
    for k in 0..n {
        let kf = k as f64;
        term *= (b + kf) * (kf - n as f64) / ((c + kf) * (kf + 1.0));
        out.push(term);
    }
    Ok(out)
}

/// Terminating Gauss series ₂F₁(−n, b; c; z) = Σ_{k=0}^{n} (−n)_k (b)_k / ((c)_k k!) z^k.
pub fn hyp2f1_terminating(n: usize, b: C64, c: C64, z: C64) -> Result<C64> {
    let coeffs = hyp2f1_terminating_coeffs(n, b, c)?;
    Ok(coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a))
}
