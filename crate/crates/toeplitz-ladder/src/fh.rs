//! Closed forms for the pure Fisher–Hartwig symbol
//! w(z) = C (1−z)^{α+iβ} (1−1/z)^{α−iβ}.
//!
//! ```text
//! m_n² = (n+1)(2α+n+1) / ((α+iβ+n+1)(α−iβ+n+1))
//! k_n² = Γ(2α+1) Γ(α+iβ+n+1) Γ(α−iβ+n+1) / (Γ(α−iβ+1) Γ(α+iβ+1) Γ(n+1) Γ(n+2α+1))
//! |φ_n(0)|² = Γ(2α+1) |Γ(α+iβ+n)|² / (Γ(n+1) Γ(n+2α+1) |Γ(α+iβ)|²)
//! l_n = (α−iβ) n k_n / (n+α+iβ)
//! r_n = ∏_{j<n} (α−iβ+j)/(α+iβ+j+1)
//! Δ_n = C^n G(n+1) G(n+2α+1) |G(α+iβ+1)|² / (G(2α+1) |G(n+α+iβ+1)|²)
//! ```
//!
//! Gamma and Barnes G factors are combined as logarithms.

use std::f64::consts::PI;

use serde::Serialize;

use crate::opuc::{build_toeplitz, delta_product, det_lu, OpucSequence};
use crate::par::{self, Exec};
use crate::poly;
use crate::report::{Point, ResidualReport};
use crate::specialfn::{barnes_g_log, hyp2f1_terminating_coeffs, ln_gamma_real, log_gamma};
use crate::symbols::{normalizer, Family, MomentSequence, SymbolSpec};
use crate::tolerances;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Parameters of the pure Fisher–Hartwig symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FhParams {
    pub alpha: f64,
    pub beta: f64,
}

impl FhParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha <= -0.5 {
            return Err(Error::domain(format!(
                "Fisher-Hartwig parameters need alpha > -1/2 (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(FhParams { alpha, beta })
    }

    /// α + iβ
    pub fn ab(&self) -> C64 {
        C64::new(self.alpha, self.beta)
    }

    pub fn spec(&self) -> Result<SymbolSpec> {
        SymbolSpec::fisher_hartwig(self.alpha, self.beta)
    }

    /// The normalizing constant C.
    pub fn normalizer(&self) -> Result<f64> {
        normalizer(&Family::FisherHartwig {
            alpha: self.alpha,
            beta: self.beta,
        })
    }

    fn is_constant(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }
}

/// |α+iβ+x|² for real x.
fn abs2_shift(p: &FhParams, x: f64) -> f64 {
    (p.alpha + x).powi(2) + p.beta * p.beta
}

/// m_n² = k_n²/k_{n+1}²; zero for n < 0.
pub fn fh_mn2(p: &FhParams, n: i64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let nf = n as f64;
    (nf + 1.0) * (2.0 * p.alpha + nf + 1.0) / abs2_shift(p, nf + 1.0)
}

/// Relative residual of
/// 2α+2n+1 = m_n² |α+iβ+n+1|² − m_{n−1}² |α+iβ+n|².
pub fn mn2_difference_residual(p: &FhParams, n: usize) -> f64 {
    let nf = n as f64;
    let terms = [
        2.0 * p.alpha + 2.0 * nf + 1.0,
        -fh_mn2(p, n as i64) * abs2_shift(p, nf + 1.0),
        fh_mn2(p, n as i64 - 1) * abs2_shift(p, nf),
    ];
    let scale = terms.iter().map(|v| v.abs()).fold(0.0, f64::max);
    (terms.iter().sum::<f64>()).abs() / scale
}

/// ln k_n².
pub fn fh_kn2_log(p: &FhParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    let ab = p.ab();
    Ok(ln_gamma_real(2.0 * p.alpha + 1.0)? + 2.0 * log_gamma(ab + nf + 1.0)?.re
        - 2.0 * log_gamma(ab + 1.0)?.re
        - ln_gamma_real(nf + 1.0)?
        - ln_gamma_real(nf + 2.0 * p.alpha + 1.0)?)
}

pub fn fh_kn2(p: &FhParams, n: usize) -> Result<f64> {
    Ok(fh_kn2_log(p, n)?.exp())
}

/// |φ_n(0)|².
pub fn fh_phi0_sq(p: &FhParams, n: usize) -> Result<f64> {
    if p.is_constant() {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    let ab = p.ab();
    let log = ln_gamma_real(2.0 * p.alpha + 1.0)? - ln_gamma_real(nf + 1.0)? - ln_gamma_real(nf + 2.0 * p.alpha + 1.0)?
        + 2.0 * log_gamma(ab + nf)?.re
        - 2.0 * log_gamma(ab)?.re;
    Ok(log.exp())
}

/// l_n, the coefficient of z^{n−1} in φ_n.
pub fn fh_ln(p: &FhParams, n: usize) -> Result<C64> {
    let nf = n as f64;
    let k = fh_kn2(p, n)?.sqrt();
    let denom = p.ab() + nf;
    if denom == ZERO {
        return Ok(ZERO);
    }
    Ok(p.ab().conj() * nf * k / denom)
}

/// r_n = φ_n(0)/k_n from r_{n+1}/r_n = (α−iβ+n)/(α+iβ+n+1), r_0 = 1.
pub fn fh_rn(p: &FhParams, n: usize) -> C64 {
    let ab = p.ab();
    (0..n).fold(ONE, |acc, j| {
        let jf = j as f64;
        acc * (ab.conj() + jf) / (ab + jf + 1.0)
    })
}

/// ln Δ_n from Barnes G.
pub fn fh_delta_log(p: &FhParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    let ab = p.ab();
    let c = p.normalizer()?;
    let g = |x: f64| barnes_g_log(C64::new(x, 0.0)).map(|v| v.re);
    Ok(
        nf * c.ln() + g(nf + 1.0)? + g(nf + 2.0 * p.alpha + 1.0)? + 2.0 * barnes_g_log(ab + 1.0)?.re
            - g(2.0 * p.alpha + 1.0)?
            - 2.0 * barnes_g_log(ab + nf + 1.0)?.re,
    )
}

pub fn fh_delta(p: &FhParams, n: usize) -> Result<f64> {
    Ok(fh_delta_log(p, n)?.exp())
}

/// The polynomial from the terminating hypergeometric representation.
#[derive(Debug, Clone, Serialize)]
pub struct HypergeometricPhi {
    /// Coefficients of A·₂F₁(−n, α+iβ+1; 1−n−α+iβ; z) with the closed prefactor.
    pub coeffs: Vec<C64>,
    /// The closed prefactor A = k_n r_n.
    pub prefactor: C64,
    /// The prefactor that makes the leading coefficient equal k_n.
    pub prefactor_matched: C64,
    /// Leading coefficient divided by k_n (a unimodular phase when both agree in modulus).
    pub phase: C64,
    /// |prefactor − prefactor_matched| / |prefactor_matched|.
    pub discrepancy: f64,
}

/// φ_n as A·₂F₁(−n, α+iβ+1; 1−n−α+iβ; z) with
/// A = sqrt(Γ(2α+1)Γ(α+iβ+n+1)Γ(α−iβ+n+1)/(Γ(α−iβ+1)Γ(α+iβ+1)Γ(n+1)Γ(n+2α+1)))
///     · Γ(n+α−iβ)Γ(α+iβ+1)/(Γ(n+α+iβ+1)Γ(α−iβ)),
/// which equals k_n r_n.
pub fn fh_phi_hypergeometric(p: &FhParams, n: usize) -> Result<HypergeometricPhi> {
    if n == 0 {
        return Ok(HypergeometricPhi {
            coeffs: vec![ONE],
            prefactor: ONE,
            prefactor_matched: ONE,
            phase: ONE,
            discrepancy: 0.0,
        });
    }
    let nf = n as f64;
    let ab = p.ab();
    let f = hyp2f1_terminating_coeffs(n, ab + 1.0, C64::new(1.0 - nf - p.alpha, p.beta))?;
    let k = fh_kn2(p, n)?.sqrt();
    let prefactor = fh_rn(p, n) * k;
    let lead = f[n];
    if lead == ZERO {
        return Err(Error::domain("hypergeometric leading coefficient vanishes"));
    }
    let prefactor_matched = k / lead;
    let coeffs = poly::scale(&f, prefactor);
    let phase = coeffs[n] / k;
    let discrepancy = (prefactor - prefactor_matched).norm() / prefactor_matched.norm();
    Ok(HypergeometricPhi {
        coeffs,
        prefactor,
        prefactor_matched,
        phase,
        discrepancy,
    })
}

/// D[π] = (−1)^{n(n−1)/2} Res(π, π')/γ for a polynomial of degree n ≥ 1 with leading coefficient γ.
pub fn discriminant_resultant(p: &[C64]) -> Result<C64> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::domain("discriminant needs degree >= 1"));
    }
    let lead = p[n];
    if lead == ZERO {
        return Err(Error::domain("discriminant: zero leading coefficient"));
    }
    if n == 1 {
        return Ok(ONE);
    }
    let res = poly::resultant(p, &poly::derivative(p))?;
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(res * sign / lead)
}

/// ln ∏_{j=1}^{n} b_j/a_j with a_j = m_{j−1}(iβ−α−j), b_j = −j.
///
/// Since m_{j−1} = k_{j−1}/k_j the product telescopes to
/// k_n Γ(n+1) Γ(α−iβ+1)/Γ(n+α−iβ+1).
pub fn fh_b_over_a_log(p: &FhParams, n: usize) -> Result<C64> {
    let nf = n as f64;
    let abc = p.ab().conj();
    Ok(0.5 * fh_kn2_log(p, n)? + ln_gamma_real(nf + 1.0)? + log_gamma(abc + 1.0)? - log_gamma(abc + nf + 1.0)?)
}

/// ∏ b_j/a_j as the principal square root of
/// Γ(n+1+α+iβ)Γ(α−iβ+1)Γ(2α+1)Γ(n+1) / (Γ(n+1+α−iβ)Γ(α+iβ+1)Γ(n+2α+1)).
pub fn fh_b_over_a_sqrt(p: &FhParams, n: usize) -> Result<C64> {
    let nf = n as f64;
    let ab = p.ab();
    let log = log_gamma(ab + nf + 1.0)?
        + log_gamma(ab.conj() + 1.0)?
        + ln_gamma_real(2.0 * p.alpha + 1.0)?
        + ln_gamma_real(nf + 1.0)?
        - log_gamma(ab.conj() + nf + 1.0)?
        - log_gamma(ab + 1.0)?
        - ln_gamma_real(nf + 2.0 * p.alpha + 1.0)?;
    Ok(log.exp().sqrt())
}

/// D[φ_n] = (−1)^{n(n+3)/2} ((n+α−iβ)/2π)^n r_n^{n−1} k_n^{−1} Δ_n^{−1} ∏ b_j/a_j.
pub fn fh_discriminant(p: &FhParams, n: usize) -> Result<C64> {
    if n == 0 {
        return Err(Error::domain("discriminant needs n >= 1"));
    }
    if n == 1 {
        return Ok(ONE);
    }
    if fh_rn(p, n) == ZERO {
        return Ok(ZERO);
    }
    let sign = if (n * (n + 3) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(fh_discriminant_log_abs(p, n)?.exp() * sign)
}

/// ln of D[φ_n] without the sign (−1)^{n(n+3)/2}; finite where D itself overflows.
pub fn fh_discriminant_log_abs(p: &FhParams, n: usize) -> Result<C64> {
    if n == 0 {
        return Err(Error::domain("discriminant needs n >= 1"));
    }
    if n == 1 {
        return Ok(ZERO);
    }
    let r = fh_rn(p, n);
    if r == ZERO {
        return Ok(C64::new(f64::NEG_INFINITY, 0.0));
    }
    let nf = n as f64;
    Ok(
        (p.ab().conj() + nf).ln() * nf - nf * (2.0 * PI).ln() + r.ln() * (nf - 1.0)
            - 0.5 * fh_kn2_log(p, n)?
            - fh_delta_log(p, n)?
            + fh_b_over_a_log(p, n)?,
    )
}

/// Asymptotic forms as n → ∞.
#[derive(Debug, Clone, Serialize)]
pub struct FhAsymptotics {
    pub n: usize,
    /// lim k_n = sqrt(Γ(2α+1))/|Γ(α+iβ+1)|
    pub kappa: f64,
    /// κ Γ(α+iβ+1)/Γ(α−iβ) n^{−1−2iβ}
    pub phi0_approx: C64,
    /// (n−1) ln(|α+iβ|/n)
    pub ln_r_pow_approx: f64,
    /// ln( sqrt(Γ(2α+1)) n^{−α} )
    pub ln_b_over_a_approx: f64,
    /// ln( |G(α+iβ+1)|²/G(2α+1) C^n n^{α²+β²} )
    pub ln_delta_approx: f64,
    /// ln|D[φ_n]| asymptote assembled from the limits above.
    pub ln_disc_approx: f64,
    /// The same asymptote with its base divided by C.
    pub ln_disc_approx_over_c: f64,
    /// Exact ln Δ_n and ln|D[φ_n]| for comparison.
    pub ln_delta_exact: f64,
    pub ln_disc_exact: f64,
}

impl FhAsymptotics {
    pub fn delta_ratio(&self) -> f64 {
        (self.ln_delta_exact - self.ln_delta_approx).exp()
    }

    pub fn disc_ratio(&self) -> f64 {
        (self.ln_disc_exact - self.ln_disc_approx).exp()
    }

    pub fn disc_ratio_over_c(&self) -> f64 {
        (self.ln_disc_exact - self.ln_disc_approx_over_c).exp()
    }
}

/// Asymptotic data at n ≥ 2; needs α+iβ ≠ 0.
pub fn fh_asymptotics(p: &FhParams, n: usize) -> Result<FhAsymptotics> {
    if n < 2 {
        return Err(Error::domain("asymptotics need n >= 2"));
    }
    let nf = n as f64;
    let ab = p.ab();
    let lg2a = ln_gamma_real(2.0 * p.alpha + 1.0)?;
    let lg_ab1 = log_gamma(ab + 1.0)?;
    let kappa = (0.5 * lg2a - lg_ab1.re).exp();
    let c = p.normalizer()?;
    let lgb2a = barnes_g_log(C64::new(2.0 * p.alpha + 1.0, 0.0))?.re;
    let lgb_ab = barnes_g_log(ab + 1.0)?.re;
    let ln_delta_approx = 2.0 * lgb_ab - lgb2a + nf * c.ln() + (p.alpha.powi(2) + p.beta.powi(2)) * nf.ln();
    let ln_delta_exact = fh_delta_log(p, n)?;
    if p.is_constant() {
        return Ok(FhAsymptotics {
            n,
            kappa,
            phi0_approx: ZERO,
            ln_r_pow_approx: f64::NEG_INFINITY,
            ln_b_over_a_approx: 0.0,
            ln_delta_approx,
            ln_disc_approx: f64::NEG_INFINITY,
            ln_disc_approx_over_c: f64::NEG_INFINITY,
            ln_delta_exact,
            ln_disc_exact: f64::NEG_INFINITY,
        });
    }
    let abs_ab = ab.norm();
    let lg_ab = log_gamma(ab)?;
    let phi0_approx = (lg_ab1 - log_gamma(ab.conj())? + C64::new(-1.0, -2.0 * p.beta) * nf.ln()).exp() * kappa;
    let base = lg2a - abs_ab.ln() - 2.0 * lg_ab.re;
    let ln_disc_approx = lg_ab1.re - abs_ab.ln() + lgb2a - 2.0 * lgb_ab
        + nf * base
        + (1.0 - p.alpha - p.alpha.powi(2) - p.beta.powi(2)) * nf.ln();
    Ok(FhAsymptotics {
        n,
        kappa,
        phi0_approx,
        ln_r_pow_approx: (nf - 1.0) * (abs_ab / nf).ln(),
        ln_b_over_a_approx: 0.5 * lg2a - p.alpha * nf.ln(),
        ln_delta_approx,
        ln_disc_approx,
        ln_disc_approx_over_c: ln_disc_approx - nf * c.ln(),
        ln_delta_exact,
        ln_disc_exact: fh_discriminant_log_abs(p, n)?.re,
    })
}

/// Closed forms against Gram-solve data for 0 ≤ n ≤ n_max.
///
/// Checks k_n², |φ_n(0)|², l_n, m_n², r_n, Δ_n (closed vs product vs LU),
/// the difference equation for m_n² and the ratio relation
/// −α−iβ−n−1 = (r_n/r_{n+1})(−α+iβ−n).
pub fn check_closed_forms(p: &FhParams, seq: &OpucSequence, n_max: usize) -> Result<ResidualReport> {
    let mut report = ResidualReport::new();
    let tol = tolerances::DETERMINANT;
    let lbl = || Point::label("scalar");
    let n_max = n_max.min(seq.n_max());
    let ab = p.ab();
    for n in 0..=n_max {
        let ni = n as i64;
        report.compare("fh_kn2", ni, lbl(), C64::new(fh_kn2(p, n)?, 0.0), seq.kn2(n), tol);
        report.compare(
            "fh_phi0_sq",
            ni,
            lbl(),
            C64::new(fh_phi0_sq(p, n)?, 0.0),
            C64::new(seq.phi0(n).norm_sqr(), 0.0),
            tol,
        );
        report.compare("fh_ln", ni, lbl(), fh_ln(p, n)?, seq.l(n), tol);
        report.compare("fh_rn", ni, lbl(), fh_rn(p, n), seq.r(n), tol);
        if n < seq.n_max() {
            report.compare("fh_mn2", ni, lbl(), C64::new(fh_mn2(p, ni), 0.0), seq.m2(ni)?, tol);
            let r = seq.r(n);
            if r != ZERO {
                let nf = n as f64;
                let lhs = -ab - nf - 1.0;
                let rhs = r / seq.r(n + 1) * (-ab.conj() - nf);
                report.compare("fh_r_ratio", ni, lbl(), lhs, rhs, tol);
            }
        }
        report.push(
            "fh_mn2_difference",
            ni,
            lbl(),
            mn2_difference_residual(p, n),
            1.0,
            tolerances::MN2_DIFFERENCE,
        );
        if n >= 1 {
            let closed = C64::new(fh_delta(p, n)?, 0.0);
            let lu = det_lu(&build_toeplitz(&seq.moments, n)?).value;
            let prod = delta_product(seq, n)?;
            report.compare("fh_delta_closed_vs_lu", ni, lbl(), closed, lu, tol);
            report.compare("fh_delta_closed_vs_product", ni, lbl(), closed, prod, tol);
            report.compare("fh_delta_product_vs_lu", ni, lbl(), prod, lu, tol);
        }
    }
    Ok(report)
}

/// The two discriminant routes and the identity
/// Δ_n k_n |D[φ_n]| = (|n+α−iβ|/2π)^n |r_n|^{n−1} |∏ b_j/a_j|
/// on Gram data (D from the resultant of the Gram φ_n, Δ_n by LU, ∏ b_j/a_j from the Gram m_j).
pub fn check_discriminant(p: &FhParams, seq: &OpucSequence, n: usize) -> Result<ResidualReport> {
    let mut report = ResidualReport::new();
    let lbl = || Point::label("scalar");
    let ni = n as i64;
    let closed = fh_discriminant(p, n)?;
    let gram = discriminant_resultant(seq.entry(n)?.coeffs.as_slice())?;
    report.compare(
        "discriminant_resultant_vs_closed",
        ni,
        lbl(),
        gram,
        closed,
        tolerances::DISCRIMINANT,
    );
    if let Ok(h) = fh_phi_hypergeometric(p, n) {
        let hyp = discriminant_resultant(&h.coeffs)?;
        report.compare(
            "discriminant_hypergeometric_vs_closed",
            ni,
            lbl(),
            hyp,
            closed,
            tolerances::DISCRIMINANT,
        );
    }
    let nf = n as f64;
    let delta = det_lu(&build_toeplitz(&seq.moments, n)?).value.norm();
    let lhs = delta * seq.k(n).norm() * gram.norm();
    let mut prod = ONE;
    for j in 1..=n {
        let a = seq.m(j as i64 - 1)? * (-p.ab().conj() - j as f64);
        prod *= -(j as f64) / a;
    }
    let rhs =
        ((p.ab().conj() + nf).norm() / (2.0 * PI)).powi(n as i32) * seq.r(n).norm().powi(n as i32 - 1) * prod.norm();
    report.compare(
        "discriminant_identity",
        ni,
        lbl(),
        C64::new(lhs, 0.0),
        C64::new(rhs, 0.0),
        tolerances::DISCRIMINANT_IDENTITY,
    );
    Ok(report)
}

/// Hypergeometric coefficients against the Gram polynomial, up to a unimodular phase.
pub fn check_hypergeometric(p: &FhParams, seq: &OpucSequence, n: usize) -> Result<ResidualReport> {
    let h = fh_phi_hypergeometric(p, n)?;
    let gram = seq.entry(n)?.coeffs.as_slice();
    let phase = if h.phase.norm() > 0.0 {
        h.phase / h.phase.norm()
    } else {
        ONE
    };
    let unphased = poly::scale(&h.coeffs, phase.inv());
    let diff = poly::add(&unphased, &poly::scale(gram, -ONE));
    let mut report = ResidualReport::new();
    report.push(
        "hypergeometric_coefficients",
        n as i64,
        Point::label("coefficients"),
        poly::max_abs(&diff),
        poly::max_abs(gram),
        tolerances::HYPERGEOMETRIC,
    );
    report.push(
        "hypergeometric_prefactor",
        n as i64,
        Point::label("scalar"),
        h.discrepancy,
        1.0,
        tolerances::HYPERGEOMETRIC,
    );
    Ok(report)
}

/// One row of the golden table.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenRow {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub kn2: f64,
    pub phi0_sq: f64,
    pub delta_closed: f64,
    pub delta_lu: f64,
    pub rel_err: f64,
}

/// Closed values and LU determinants over a parameter grid, rows ordered by (grid index, n).
pub fn golden_table(exec: Exec, grid: &[(f64, f64)], n_max: usize) -> Result<Vec<GoldenRow>> {
    let rows = par::map(exec, grid, |&(alpha, beta)| -> Result<Vec<GoldenRow>> {
        let p = FhParams::new(alpha, beta)?;
        let moments = MomentSequence::compute(&p.spec()?, n_max)?;
        (1..=n_max)
            .map(|n| {
                let delta_closed = fh_delta(&p, n)?;
                let delta_lu = det_lu(&build_toeplitz(&moments, n)?).value.re;
                Ok(GoldenRow {
                    alpha,
                    beta,
                    n,
                    kn2: fh_kn2(&p, n)?,
                    phi0_sq: fh_phi0_sq(&p, n)?,
                    delta_closed,
                    delta_lu,
                    rel_err: (delta_closed - delta_lu).abs() / delta_lu.abs(),
                })
            })
            .collect()
    });
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}
