//! Dense complex polynomials stored as ascending coefficient vectors.

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// p(z) by Horner's rule.
pub fn eval(p: &[C64], z: C64) -> C64 {
    p.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

/// p'(z) as a coefficient vector.
pub fn derivative(p: &[C64]) -> Vec<C64> {
    p.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

/// The reversed conjugate polynomial: a_j ↦ conj(a_{n−j}), n = len − 1.
pub fn star(p: &[C64]) -> Vec<C64> {
    p.iter().rev().map(|a| a.conj()).collect()
}

/// Reversal without conjugation, used by the formal (bilinear) pairing.
pub fn reverse(p: &[C64]) -> Vec<C64> {
    p.iter().rev().copied().collect()
}

pub fn mul(p: &[C64], q: &[C64]) -> Vec<C64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn add(p: &[C64], q: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; p.len().max(q.len())];
    for (k, &a) in p.iter().enumerate() {
        out[k] += a;
    }
    for (k, &b) in q.iter().enumerate() {
        out[k] += b;
    }
    out
}

pub fn scale(p: &[C64], c: C64) -> Vec<C64> {
    p.iter().map(|&a| a * c).collect()
}

/// z^k · p(z)
pub fn shift(p: &[C64], k: usize) -> Vec<C64> {
    let mut out = vec![ZERO; k];
    out.extend_from_slice(p);
    out
}

/// Largest coefficient modulus.
pub fn max_abs(p: &[C64]) -> f64 {
    p.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// Drops trailing coefficients below `tol` times the largest coefficient.
pub fn trim(p: &[C64], tol: f64) -> Vec<C64> {
    let cut = tol * max_abs(p);
    let mut out = p.to_vec();
    while out.len() > 1 && out.last().is_some_and(|a| a.norm() <= cut) {
        out.pop();
    }
    out
}

/// Coefficients of ∏ (z − ρ_k).
pub fn from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        p = mul(&p, &[-r, C64::new(1.0, 0.0)]);
    }
    p
}

/// All roots by the Aberth–Ehrlich iteration.
///
/// The polynomial must have a nonzero leading coefficient.
pub fn roots(p: &[C64]) -> Result<Vec<C64>> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    if lead == ZERO {
        return Err(Error::domain("roots: zero leading coefficient"));
    }
    let monic: Vec<C64> = p.iter().map(|a| a / lead).collect();
    let dp = derivative(&monic);
    // Cauchy bound for the starting circle.
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            C64::from_polar(
                0.5 * radius,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let pk = eval(&monic, z[k]);
            if pk == ZERO {
                continue;
            }
            let ratio = pk / eval(&dp, z[k]);
            let repulsion: C64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    Ok(z)
}

/// Sylvester matrix of p (degree m) and q (degree n), size (m+n)×(m+n).
pub fn sylvester(p: &[C64], q: &[C64]) -> DMatrix<C64> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut s = DMatrix::from_element(size, size, ZERO);
    for row in 0..n {
        for (k, &a) in p.iter().rev().enumerate() {
            s[(row, row + k)] = a;
        }
    }
    for row in 0..m {
        for (k, &b) in q.iter().rev().enumerate() {
            s[(n + row, row + k)] = b;
        }
    }
    s
}

/// Res(p, q) as the determinant of the Sylvester matrix.
///
/// Both leading coefficients must be nonzero. A constant q gives q^{deg p}.
pub fn resultant(p: &[C64], q: &[C64]) -> Result<C64> {
    if p.is_empty() || q.is_empty() || *p.last().unwrap() == ZERO || *q.last().unwrap() == ZERO {
        return Err(Error::domain("resultant: zero leading coefficient"));
    }
    let size = p.len() + q.len() - 2;
    if size == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(sylvester(p, q).lu().determinant())
}
