//! Symbol families and their Fourier coefficients.
//!
//! Every symbol is normalized so that w_0 = 1/(2π), i.e. k_0 = φ_0(0) = 1.
//!
//! | Family | Weight on \|z\| = 1 | Moments |
//! |--------|--------------------|---------|
//! | Fisher–Hartwig | C (2 sin(θ/2))^{2α} e^{−β(θ−π)} | gamma ratios |
//! | Bessel | C e^{t cos θ} | I_m(t)/(2π I_0(t)) |
//! | exponential with poles | C e^{tz} ∏ ((z − z_a)/z)^{g_a} | trapezoid |

use std::f64::consts::PI;

use serde::Serialize;

use crate::quadrature::{CirclePoint, Quadrature, Rule};
use crate::specialfn::{bessel_i, ln_gamma_real, log_gamma, rgamma};
use crate::{Error, Result, C64};

/// A simple pole z_a of the exponential family with exponent g_a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub z: f64,
    pub g: f64,
}

/// Parameters of a symbol family.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    FisherHartwig { alpha: f64, beta: f64 },
    Bessel { t: f64 },
    ExpPoles { t: f64, poles: Vec<Pole> },
}

/// A validated, normalized symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolSpec {
    #[serde(flatten)]
    pub family: Family,
    /// The constant C that makes w_0 = 1/(2π).
    pub normalizer: f64,
    /// Cap on integrand evaluations for quadrature against this weight.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_cap: Option<usize>,
}

impl SymbolSpec {
    pub fn fisher_hartwig(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Family::FisherHartwig { alpha, beta })
    }

    pub fn bessel(t: f64) -> Result<Self> {
        Self::new(Family::Bessel { t })
    }

    pub fn exp_poles(t: f64, poles: Vec<Pole>) -> Result<Self> {
        Self::new(Family::ExpPoles { t, poles })
    }

    pub fn new(family: Family) -> Result<Self> {
        let normalizer = normalizer(&family)?;
        Ok(SymbolSpec {
            family,
            normalizer,
            quadrature_cap: None,
        })
    }

    /// Limits every quadrature against this weight to `cap` evaluations.
    pub fn with_quadrature_cap(mut self, cap: usize) -> Self {
        self.quadrature_cap = Some(cap);
        self
    }

    /// True when w_{−m} = conj(w_m), i.e. the weight is real on the circle.
    pub fn is_hermitian(&self) -> bool {
        !matches!(self.family, Family::ExpPoles { .. })
    }

    /// Quadrature rule suited to the weight.
    pub fn rule(&self) -> Rule {
        match self.family {
            Family::FisherHartwig { .. } => Rule::TanhSinh,
            _ => Rule::Trapezoid,
        }
    }

    /// Default quadrature for integrals against this weight.
    pub fn quadrature(&self) -> Quadrature {
        let q = Quadrature::new(self.rule());
        match self.quadrature_cap {
            Some(cap) => q.with_max_points(cap),
            None => q,
        }
    }

    /// Normalized weight at a point of the circle.
    pub fn weight(&self, p: &CirclePoint) -> C64 {
        C64::new(self.normalizer, 0.0) * unnormalized_weight(&self.family, p)
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match &self.family {
            Family::FisherHartwig { alpha, beta } => format!("fh(alpha={alpha}, beta={beta})"),
            Family::Bessel { t } => format!("bessel(t={t})"),
            Family::ExpPoles { t, poles } => {
                let ps: Vec<String> = poles.iter().map(|p| format!("{}:{}", p.z, p.g)).collect();
                format!("poles(t={t}, [{}])", ps.join(", "))
            }
        }
    }
}

/// Sum of the pole exponents, g = Σ g_a.
pub fn total_exponent(poles: &[Pole]) -> f64 {
    poles.iter().map(|p| p.g).sum()
}

fn validate(family: &Family) -> Result<()> {
    match family {
        Family::FisherHartwig { alpha, beta } => {
            if !alpha.is_finite() || !beta.is_finite() {
                return Err(Error::domain("Fisher-Hartwig parameters must be finite"));
            }
            if *alpha <= -0.5 {
                return Err(Error::domain(format!(
                    "Fisher-Hartwig moments diverge for alpha <= -1/2 (alpha = {alpha})"
                )));
            }
        }
        Family::Bessel { t } => {
            if !(*t > 0.0) || !t.is_finite() {
                return Err(Error::domain(format!("Bessel symbol needs t > 0 (t = {t})")));
            }
        }
        Family::ExpPoles { t, poles } => {
            if !t.is_finite() {
                return Err(Error::domain("t must be finite"));
            }
            if poles.is_empty() {
                return Err(Error::domain("at least one pole is required"));
            }
            for p in poles {
                if !(p.z > -1.0 && p.z < 0.0) || !p.g.is_finite() {
                    return Err(Error::domain(format!("pole z_a = {} must lie in (-1, 0)", p.z)));
                }
            }
            let g = total_exponent(poles);
            if !(g > 0.0) {
                return Err(Error::domain(format!("sum of exponents must be positive (g = {g})")));
            }
            let gz: f64 = poles.iter().map(|p| p.g * p.z).sum();
            if (gz + 1.0).abs() > 1e-12 {
                return Err(Error::domain(format!("sum of g_a z_a must equal -1 (got {gz})")));
            }
        }
    }
    Ok(())
}

fn unnormalized_weight(family: &Family, p: &CirclePoint) -> C64 {
    match family {
        Family::FisherHartwig { alpha, beta } => {
            let shifted = if p.psi > 0.0 { p.psi - PI } else { p.psi + PI };
            let modulus = p.xi_minus_one.norm().powf(2.0 * alpha);
            C64::new(modulus * (-beta * shifted).exp(), 0.0)
        }
        Family::Bessel { t } => C64::new((t * p.xi.re).exp(), 0.0),
        Family::ExpPoles { t, poles } => {
            let inv = p.xi.conj();
            let mut log = p.xi * *t;
            for pole in poles {
                log += (C64::new(1.0, 0.0) - inv * pole.z).ln() * pole.g;
            }
            log.exp()
        }
    }
}

/// The constant C with w_0 = 1/(2π) after normalization.
pub fn normalizer(family: &Family) -> Result<f64> {
    validate(family)?;
    match family {
        Family::FisherHartwig { alpha, beta } => {
            let a = C64::new(1.0 + alpha, *beta);
            let log = 2.0 * log_gamma(a)?.re - ln_gamma_real(1.0 + 2.0 * alpha)?;
            Ok(log.exp() / (2.0 * PI))
        }
        Family::Bessel { t } => Ok(1.0 / (2.0 * PI * bessel_i(0, *t)?)),
        Family::ExpPoles { .. } => {
            let q = Quadrature::new(Rule::Trapezoid).with_tol(1e-15);
            let total = q.integrate(|p| unnormalized_weight(family, p))?;
            if total.im.abs() > 1e-12 * total.norm() {
                return Err(Error::domain(format!("zeroth moment is not real: {total}")));
            }
            if total.re == 0.0 {
                return Err(Error::domain("zeroth moment vanishes"));
            }
            Ok(1.0 / total.re)
        }
    }
}

fn fh_moment(alpha: f64, beta: f64, c: f64, m: i64) -> Result<C64> {
    let mf = m as f64;
    let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let a = C64::new(1.0 + alpha - mf, beta);
    let b = C64::new(1.0 + alpha + mf, -beta);
    // A pole in either gamma makes the moment vanish (integer α).
    if rgamma(a) == C64::new(0.0, 0.0) || rgamma(b) == C64::new(0.0, 0.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let log = ln_gamma_real(1.0 + 2.0 * alpha)? - log_gamma(a)? - log_gamma(b)?;
    Ok(log.exp() * (c * sign))
}

/// Closed-form or quadrature moment w_m of a normalized symbol.
pub fn moment(spec: &SymbolSpec, m: i64) -> Result<C64> {
    match &spec.family {
        Family::FisherHartwig { alpha, beta } => fh_moment(*alpha, *beta, spec.normalizer, m),
        Family::Bessel { t } => {
            let order = m.unsigned_abs() as u32;
            Ok(C64::new(bessel_i(order, *t)? * spec.normalizer, 0.0))
        }
        Family::ExpPoles { .. } => Ok(exp_pole_moments(spec, m.unsigned_abs() as usize)?
            .into_iter()
            .find(|(k, _)| *k == m)
            .map(|(_, v)| v)
            .unwrap_or_default()),
    }
}

/// Trapezoid moments w_m, |m| ≤ max_order, from a shared refinement.
fn exp_pole_moments(spec: &SymbolSpec, max_order: usize) -> Result<Vec<(i64, C64)>> {
    let orders: Vec<i64> = (-(max_order as i64)..=max_order as i64).collect();
    let q = Quadrature::new(Rule::Trapezoid).with_tol(1e-15);
    let res = q.integrate_vec(orders.len(), |p, out| {
        let w = spec.weight(p);
        for (slot, &m) in out.iter_mut().zip(&orders) {
            *slot = w * C64::from_polar(1.0, -(m as f64) * p.psi);
        }
    })?;
    Ok(orders
        .into_iter()
        .zip(res.values)
        .map(|(m, v)| (m, v / (2.0 * PI)))
        .collect())
}

/// Trapezoid (smooth weights) or tanh-sinh (Fisher–Hartwig) approximation of w_m.
///
/// `points` is the starting budget; the rule refines until stable and fails
/// with [`Error::Accuracy`] once `64 · points` evaluations are exceeded.
pub fn quadrature_moment(spec: &SymbolSpec, m: i64, points: usize) -> Result<C64> {
    if points < 16 {
        return Err(Error::domain("quadrature_moment needs at least 16 points"));
    }
    let q = spec.quadrature().with_max_points(points.saturating_mul(64));
    let mf = m as f64;
    let v = q.integrate(|p| spec.weight(p) * C64::from_polar(1.0, -mf * p.psi))?;
    Ok(v / (2.0 * PI))
}

/// Moments w_m for |m| ≤ max_order of a normalized symbol.
#[derive(Debug, Clone, Serialize)]
pub struct MomentSequence {
    pub symbol: SymbolSpec,
    pub max_order: usize,
    values: Vec<C64>,
}

impl MomentSequence {
    pub fn compute(spec: &SymbolSpec, max_order: usize) -> Result<Self> {
        let values = match spec.family {
            Family::ExpPoles { .. } => exp_pole_moments(spec, max_order)?.into_iter().map(|(_, v)| v).collect(),
            _ => {
                let mut v = Vec::with_capacity(2 * max_order + 1);
                for m in -(max_order as i64)..=max_order as i64 {
                    v.push(moment(spec, m)?);
                }
                v
            }
        };
        Ok(MomentSequence {
            symbol: spec.clone(),
            max_order,
            values,
        })
    }

    /// w_m; errors outside the computed range.
    pub fn get(&self, m: i64) -> Result<C64> {
        if m.unsigned_abs() as usize > self.max_order {
            return Err(Error::range(format!(
                "moment order {m} outside computed range |m| <= {}",
                self.max_order
            )));
        }
        Ok(self.values[(m + self.max_order as i64) as usize])
    }

    /// w_m without bounds reporting; caller guarantees |m| ≤ max_order.
    #[inline]
    pub(crate) fn at(&self, m: i64) -> C64 {
        self.values[(m + self.max_order as i64) as usize]
    }

    /// The same symbol with at least `max_order` moments, recomputing the full range if needed.
    pub fn covering(&self, max_order: usize) -> Result<MomentSequence> {
        if max_order <= self.max_order {
            Ok(self.clone())
        } else {
            MomentSequence::compute(&self.symbol, max_order)
        }
    }

    /// (m, w_m) pairs in increasing m.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let m0 = -(self.max_order as i64);
        self.values.iter().enumerate().map(move |(i, v)| (m0 + i as i64, *v))
    }
}
