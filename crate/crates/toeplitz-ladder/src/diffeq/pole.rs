//! Difference equations for e^{tz} ∏ ((z − z_a)/z)^{g_a}.

use serde::Serialize;

use crate::ladder::{aux_integrals, AuxiliaryIntegrals};
use crate::opuc::OpucSequence;
use crate::report::{Point, ResidualReport};
use crate::symbols::{total_exponent, Family, Pole, SymbolSpec};
use crate::tolerances;
use crate::{Error, Result, C64};

use super::{OrbitFamily, RecurrenceOrbit};

const ONE: C64 = C64::new(1.0, 0.0);

/// (t, poles) of an exponential-with-poles symbol.
fn params(spec: &SymbolSpec) -> Result<(f64, &[Pole])> {
    match &spec.family {
        Family::ExpPoles { t, poles } => Ok((*t, poles)),
        _ => Err(Error::domain("expected an exponential-with-poles symbol")),
    }
}

fn aux(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<(C64, Vec<C64>, Vec<C64>)> {
    match aux_integrals(spec, seq, n)? {
        AuxiliaryIntegrals::ExpPoles { a, b, c } => Ok((a, b, c)),
        _ => Err(Error::domain("expected an exponential-with-poles symbol")),
    }
}

/// λ_n = t r_n r_{n+1} − Σ_α c_n(α).
pub fn one_pole_lambda_at(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<C64> {
    let (t, _) = params(spec)?;
    seq.entry(n + 1)?;
    let (_, _, c) = aux(spec, seq, n)?;
    Ok(seq.r(n) * seq.r(n + 1) * t - c.iter().sum::<C64>())
}

/// λ̃_n = t s_n (1 − m²_{n−1}) − Σ_α c_n(α), equal to t r_{n+1} r̃_n − Σ_α c_n(α)
/// with r̃_n the reflection coefficient of the right-orthogonal partner.
///
/// Reduces to λ_n when r̃_n = r_n, which holds for real weights.
pub fn one_pole_lambda_dual_at(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<C64> {
    let (t, _) = params(spec)?;
    seq.entry(n + 1)?;
    let (_, _, c) = aux(spec, seq, n)?;
    let x = ONE - seq.m2(n as i64 - 1)?;
    Ok(seq.s(n)? * x * t - c.iter().sum::<C64>())
}

/// λ_0, …, λ_{n_max}.
pub fn lambda_trace(spec: &SymbolSpec, seq: &OpucSequence, n_max: usize) -> Result<Vec<C64>> {
    (0..=n_max).map(|n| one_pole_lambda_at(spec, seq, n)).collect()
}

/// The integration constant λ from n = 0, cross-checked at n = 1, 2.
pub fn one_pole_lambda(t: f64, z1: f64, g1: f64, seq: &OpucSequence) -> Result<C64> {
    let spec = SymbolSpec::exp_poles(t, vec![Pole { z: z1, g: g1 }])?;
    let trace = lambda_trace(&spec, seq, 2)?;
    let lambda = trace[0];
    let tol = tolerances::ONE_POLE * lambda.norm().max(1.0);
    for (n, l) in trace.iter().enumerate().skip(1) {
        if (l - lambda).norm() > tol {
            return Err(Error::Inconsistency {
                what: "one-pole integration constant".into(),
                detail: format!("λ_0 = {lambda}, λ_{n} = {l}"),
            });
        }
    }
    Ok(lambda)
}

/// r_{n+2} = −[(n r_n − t) z_1 − 2λ + (n + 1)]/(t(1 − r_{n+1}²)) − r_n.
pub fn one_pole_step(t: f64, z1: f64, lambda: C64, n: usize, r_n: C64, r_next: C64) -> Result<C64> {
    if t == 0.0 {
        return Err(Error::domain("one-pole step needs t ≠ 0"));
    }
    let denom = (ONE - r_next * r_next) * t;
    if denom.norm() == 0.0 {
        return Err(Error::SingularStep {
            n,
            reason: "1 − r_{n+1}² = 0".into(),
        });
    }
    let nf = n as f64;
    let num = (r_n * nf - t) * z1 - lambda * 2.0 + (nf + 1.0);
    Ok(-num / denom - r_n)
}

/// The same elimination without replacing 1 − m²_n by r_{n+1}²:
///
/// ```text
/// r_{n+2} = −[(2λ̃ + n + 1 − z_1 t) r_{n+1} + (1 − z_1 n) r_n − t r_{n+1}² r̃_n] / (t(1 − r_{n+1} r̃_{n+1}))
/// ```
pub fn one_pole_step_dual(t: f64, z1: f64, lambda: C64, n: usize, r: (C64, C64), r_dual: (C64, C64)) -> Result<C64> {
    if t == 0.0 {
        return Err(Error::domain("one-pole step needs t ≠ 0"));
    }
    let (r_n, r_next) = r;
    let (rd_n, rd_next) = r_dual;
    let denom = (ONE - r_next * rd_next) * t;
    if denom.norm() == 0.0 {
        return Err(Error::SingularStep {
            n,
            reason: "1 − r_{n+1} r̃_{n+1} = 0".into(),
        });
    }
    let nf = n as f64;
    let num = r_next * (lambda * 2.0 + nf + 1.0 - z1 * t) + r_n * (1.0 - z1 * nf) - r_next * r_next * rd_n * t;
    Ok(-num / denom)
}

/// Forward orbit of the one-pole recursion from (r_0, r_1).
pub fn one_pole_orbit(
    t: f64,
    z1: f64,
    g1: f64,
    lambda: C64,
    r0: C64,
    r1: C64,
    n_max: usize,
) -> Result<RecurrenceOrbit> {
    let mut r = vec![r0, r1];
    for n in 0..n_max.saturating_sub(1) {
        let next = one_pole_step(t, z1, lambda, n, r[n], r[n + 1])?;
        r.push(next);
    }
    r.truncate(n_max + 1);
    Ok(RecurrenceOrbit {
        family: OrbitFamily::OnePole { t, z1, g1 },
        values: r,
        precision_digits: 16,
    })
}

/// One step of the recursion from Gram values against the Gram r_{n+2}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OnePolePrediction {
    pub n: usize,
    pub predicted: C64,
    pub oracle: C64,
    pub abs_diff: f64,
    /// The step that keeps r̃_n apart from r_n.
    pub predicted_dual: C64,
    pub abs_diff_dual: f64,
}

/// Predictions of r_{n+2} for n = 0..=n_max with λ taken at n = 0.
pub fn one_pole_predictions(spec: &SymbolSpec, seq: &OpucSequence, n_max: usize) -> Result<Vec<OnePolePrediction>> {
    let (t, poles) = params(spec)?;
    let [pole] = poles else {
        return Err(Error::domain("the one-pole recursion needs exactly one pole"));
    };
    seq.entry(n_max + 2)?;
    let lambda = one_pole_lambda_at(spec, seq, 0)?;
    let lambda_dual = one_pole_lambda_dual_at(spec, seq, 0)?;
    (0..=n_max)
        .map(|n| {
            let predicted = one_pole_step(t, pole.z, lambda, n, seq.r(n), seq.r(n + 1))?;
            let predicted_dual = one_pole_step_dual(
                t,
                pole.z,
                lambda_dual,
                n,
                (seq.r(n), seq.r(n + 1)),
                (seq.r_dual(n), seq.r_dual(n + 1)),
            )?;
            let oracle = seq.r(n + 2);
            Ok(OnePolePrediction {
                n,
                predicted,
                oracle,
                abs_diff: (predicted - oracle).norm(),
                predicted_dual,
                abs_diff_dual: (predicted_dual - oracle).norm(),
            })
        })
        .collect()
}

fn push_terms(rep: &mut ResidualReport, name: &str, n: usize, terms: &[C64], tol: f64) {
    let sum: C64 = terms.iter().sum();
    let scale = terms.iter().map(|z| z.norm()).fold(0.0, f64::max);
    rep.push(name, n as i64, Point::label("values"), sum.norm(), scale, tol);
}

/// Residuals of the behaviour at infinity and the residues at 0 and z_α of
/// the two compatibility conditions, at index n.
///
/// Needs the sequence up to index n + 1.
pub fn one_pole_residue_checks(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<ResidualReport> {
    let (t, poles) = params(spec)?;
    seq.entry(n + 1)?;
    let tol = if poles.len() == 1 {
        tolerances::ONE_POLE
    } else {
        tolerances::MULTI_POLE
    };
    let g = total_exponent(poles);
    let nf = n as f64;
    let (a0, b0, c0) = aux(spec, seq, n)?;
    let (a1, b1, c1) = aux(spec, seq, n + 1)?;
    let sn = seq.s(n)?;
    let mut rep = ResidualReport::new();

    rep.compare(
        "pole_infinity",
        n as i64,
        Point::label("infinity"),
        a0 + nf,
        -sn * t,
        tol,
    );

    let origin: C64 = poles.iter().zip(&b0).map(|(p, b)| b / p.z).sum();
    rep.compare("pole_origin", n as i64, Point::label("0"), a0, origin + g, tol);

    for (i, p) in poles.iter().enumerate() {
        let name = format!("pole_residue[{i}]");
        let lhs = c1[i] + c0[i] + b1[i] / p.z + p.g;
        rep.compare(&name, n as i64, Point::at(C64::new(p.z, 0.0)), lhs, b0[i] / sn, tol);
    }

    let r0 = seq.r(n);
    let r1 = seq.r(n + 1);
    let mut terms = vec![r0 * r0 * sn * t, -r1 * r1 * t];
    for i in 0..poles.len() {
        terms.push(c1[i]);
        terms.push(-c0[i]);
    }
    push_terms(&mut rep, "pole_lambda_difference", n, &terms, tol);

    let x0 = ONE - seq.m2(n as i64 - 1)?;
    let x1 = ONE - seq.m2(n as i64)?;
    let mut terms = vec![sn * x0 * t, -seq.s(n + 1)? * x1 * t];
    for i in 0..poles.len() {
        terms.push(c1[i]);
        terms.push(-c0[i]);
    }
    push_terms(&mut rep, "pole_lambda_dual_difference", n, &terms, tol);

    let mut terms = vec![a1, -a0];
    for (i, p) in poles.iter().enumerate() {
        terms.push(-b1[i] / p.z);
        terms.push(b0[i] / p.z);
    }
    push_terms(&mut rep, "pole_origin_difference", n, &terms, tol);

    let m2 = seq.m2(n as i64)?;
    let lower = if n >= 1 {
        let (_, bm, _) = aux(spec, seq, n - 1)?;
        let ratio = sn / seq.s(n - 1)? * seq.m2(n as i64 - 1)?;
        Some((bm, ratio))
    } else {
        None
    };
    for (i, p) in poles.iter().enumerate() {
        let name = format!("pole_residue_difference[{i}]");
        let lhs = (sn + p.z) * (c1[i] - c0[i] + (b1[i] - b0[i]) / p.z);
        let rhs = match &lower {
            Some((bm, ratio)) => m2 * b1[i] - ratio * bm[i],
            None => m2 * b1[i],
        };
        rep.compare(&name, n as i64, Point::at(C64::new(p.z, 0.0)), lhs, rhs, tol);
    }
    Ok(rep)
}
