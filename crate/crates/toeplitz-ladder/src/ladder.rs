//! Ladder functions A_n(z), B_n(z) and the identities they satisfy.
//!
//! With v' = −w'/w rational and D(z, ξ) = (v'(z) − v'(ξ))/(z − ξ),
//!
//! ```text
//! A_n(z) = m_{n−1} [ n − (z/r_n) ∫ D(z,ξ) F_n(ξ) w(ξ) ξ dθ ]
//! B_n(z) = A_n(z)/(m_{n−1} z) − n/z + ∫ D(z,ξ) G_n(ξ) w(ξ) ξ dθ
//! ```
//!
//! where F_n(ξ) = φ_n(ξ) conj(φ_n^*(ξ)) = ξ^{−n} φ_n(ξ)² and
//! G_n(ξ) = φ_n(ξ) conj(φ_n(ξ)) on the circle. For complex weights the
//! conjugate of φ_n is replaced by the right-orthogonal partner ψ_n(1/ξ).
//!
//! Most routines work with Â_n = A_n/m_{n−1}, which stays finite at n = 0
//! where m_{−1} = 0.

use serde::Serialize;

use crate::opuc::OpucSequence;
use crate::poly;
use crate::quadrature::CirclePoint;
use crate::rational::{denominator, RationalFunction};
use crate::report::{Point, ResidualReport};
use crate::symbols::{total_exponent, Family, SymbolSpec};
use crate::tolerances;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Default off-circle sample points for residual checks.
pub fn default_sample_points() -> Vec<C64> {
    vec![
        C64::new(2.0, 0.0),
        C64::new(-1.5, 0.0),
        C64::new(0.4, 2.0),
        C64::new(0.5, 0.0),
        C64::new(0.0, -0.25),
    ]
}

/// v'(z) = −w'(z)/w(z) as a rational function.
pub fn v_prime(spec: &SymbolSpec) -> RationalFunction {
    match &spec.family {
        Family::FisherHartwig { alpha, beta } => {
            let mut v = RationalFunction::zero();
            v.push(ONE, 1, C64::new(-2.0 * alpha, 0.0));
            v.push(ZERO, 1, C64::new(*alpha, -beta));
            v
        }
        Family::Bessel { t } => {
            let mut v = RationalFunction::constant(C64::new(-0.5 * t, 0.0));
            v.push(ZERO, 2, C64::new(0.5 * t, 0.0));
            v
        }
        Family::ExpPoles { t, poles } => {
            let mut v = RationalFunction::constant(C64::new(-t, 0.0));
            for p in poles {
                v.push(C64::new(p.z, 0.0), 1, C64::new(-p.g, 0.0));
            }
            v.push(ZERO, 1, C64::new(total_exponent(poles), 0.0));
            v
        }
    }
}

fn is_zero(r: &RationalFunction) -> bool {
    r.max_coeff() == 0.0
}

/// ξ − p, using the cancellation-free ξ − 1 when p = 1.
fn xi_minus(p: &CirclePoint, pole: C64) -> C64 {
    if pole == ONE {
        p.xi_minus_one
    } else {
        p.xi - pole
    }
}

/// (v'(z) − v'(ξ))/(z − ξ) term by term:
/// κ/(z−p)^k contributes −κ Σ_{j=1}^{k} (z−p)^{−j} (ξ−p)^{−(k+1−j)}.
fn diff_quotient(vp: &RationalFunction, z: C64, p: &CirclePoint) -> C64 {
    let mut out = ZERO;
    for t in &vp.terms {
        let zp = z - t.pole;
        let xp = xi_minus(p, t.pole);
        let mut s = ZERO;
        for j in 1..=t.order {
            s += (zp.powu(j) * xp.powu(t.order + 1 - j)).inv();
        }
        out -= t.coeff * s;
    }
    out
}

/// F_n(ξ) and G_n(ξ) on the circle.
fn fg(seq: &OpucSequence, n: usize, p: &CirclePoint) -> (C64, C64) {
    let e = &seq.entries[n];
    let phi = poly::eval(&e.coeffs, p.xi);
    let inv = p.xi.conj();
    (phi * phi * inv.powu(n as u32), phi * poly::eval(&e.dual, inv))
}

fn r_nonzero(seq: &OpucSequence, n: usize) -> Result<C64> {
    let r = seq.r(n);
    if r == ZERO {
        return Err(Error::domain(format!("ladder needs r_{n} != 0")));
    }
    Ok(r)
}

/// Values of the ladder functions at one point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LadderValues {
    pub a: C64,
    pub a_hat: C64,
    pub b: C64,
}

/// A_n(z), B_n(z) at one point from their defining integrals.
pub fn ladder_by_quadrature(spec: &SymbolSpec, seq: &OpucSequence, n: usize, z: C64) -> Result<LadderValues> {
    seq.entry(n)?;
    let m = seq.m(n as i64 - 1)?;
    let nf = n as f64;
    let vp = v_prime(spec);
    if is_zero(&vp) {
        return Ok(LadderValues {
            a: m * nf,
            a_hat: C64::new(nf, 0.0),
            b: ZERO,
        });
    }
    let r = r_nonzero(seq, n)?;
    let res = spec.quadrature().integrate_vec(2, |p, out| {
        let w = spec.weight(p) * p.xi;
        let d = diff_quotient(&vp, z, p);
        let (f, g) = fg(seq, n, p);
        out[0] = d * f * w;
        out[1] = d * g * w;
    })?;
    let a_hat = nf - z / r * res.values[0];
    Ok(LadderValues {
        a: m * a_hat,
        a_hat,
        b: (a_hat - nf) / z + res.values[1],
    })
}

/// Â_n and B_n as rational functions, with m_{n−1} so that A_n = m_{n−1} Â_n.
#[derive(Debug, Clone, Serialize)]
pub struct Ladder {
    pub n: usize,
    pub m_prev: C64,
    pub a_hat: RationalFunction,
    pub b: RationalFunction,
}

impl Ladder {
    pub fn a(&self) -> RationalFunction {
        self.a_hat.scale(self.m_prev)
    }
}

/// Ladder functions in closed rational form from separated integrals.
///
/// The difference quotient separates into powers of 1/(z − p) times the
/// integrals M_q(p) = ∫ F w ξ/(ξ−p)^q dθ and N_q(p) = ∫ G w ξ/(ξ−p)^q dθ.
/// For p = 0 the integrands are Laurent polynomials and the integrals are
/// exact sums over moments; other poles use quadrature.
pub fn ladder_rational(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<Ladder> {
    seq.entry(n)?;
    let m_prev = seq.m(n as i64 - 1)?;
    let nf = C64::new(n as f64, 0.0);
    let vp = v_prime(spec);
    if is_zero(&vp) {
        return Ok(Ladder {
            n,
            m_prev,
            a_hat: RationalFunction::constant(nf),
            b: RationalFunction::zero(),
        });
    }
    let r = r_nonzero(seq, n)?;

    let off: Vec<(C64, u32)> = vp
        .terms
        .iter()
        .filter(|t| t.pole != ZERO)
        .flat_map(|t| (1..=t.order).map(move |q| (t.pole, q)))
        .collect();
    let quad = if off.is_empty() {
        Vec::new()
    } else {
        spec.quadrature()
            .integrate_vec(2 * off.len(), |p, out| {
                let w = spec.weight(p) * p.xi;
                let (f, g) = fg(seq, n, p);
                for (i, &(pole, q)) in off.iter().enumerate() {
                    let d = xi_minus(p, pole).powu(q).inv() * w;
                    out[2 * i] = f * d;
                    out[2 * i + 1] = g * d;
                }
            })?
            .values
    };
    let max_q = vp.terms.iter().map(|t| t.order).max().unwrap_or(1) as usize;
    let moments = seq.moments.covering(n + max_q + 1)?;
    let e = &seq.entries[n];
    let mn = |pole: C64, q: u32| -> (C64, C64) {
        if pole == ZERO {
            moment_space(&moments, &e.coeffs, &e.dual, n, q as i64)
        } else {
            let i = off.iter().position(|&(p, k)| p == pole && k == q).unwrap();
            (quad[2 * i], quad[2 * i + 1])
        }
    };

    let mut a_hat = RationalFunction::constant(nf);
    let mut b = RationalFunction::zero();
    for t in &vp.terms {
        let k = t.order;
        for j in 1..=k {
            let (mq, nq) = mn(t.pole, k + 1 - j);
            let c = t.coeff * mq / r;
            // z/(z−p)^j = 1/(z−p)^{j−1} + p/(z−p)^j
            if j == 1 {
                a_hat.constant += c;
            } else {
                a_hat.push(t.pole, j - 1, c);
            }
            a_hat.push(t.pole, j, c * t.pole);
            b.push(t.pole, j, -t.coeff * nq);
        }
    }
    let b = a_hat.sub(&RationalFunction::constant(nf)).div_z().add(&b);
    Ok(Ladder { n, m_prev, a_hat, b })
}

/// (M_q(0), N_q(0)) = 2π (Σ c_a c_b w_{n+q−1−a−b}, Σ c_a d_b w_{b−a+q−1}).
fn moment_space(moments: &crate::symbols::MomentSequence, c: &[C64], d: &[C64], n: usize, q: i64) -> (C64, C64) {
    let two_pi = 2.0 * std::f64::consts::PI;
    let n = n as i64;
    let mut m = ZERO;
    let mut g = ZERO;
    for (a, &ca) in c.iter().enumerate() {
        for (b, &cb) in c.iter().enumerate() {
            m += ca * cb * moments.at(n + q - 1 - a as i64 - b as i64);
        }
        for (b, &db) in d.iter().enumerate() {
            g += ca * db * moments.at(b as i64 - a as i64 + q - 1);
        }
    }
    (m * two_pi, g * two_pi)
}

/// Family-specific auxiliary integrals.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum AuxiliaryIntegrals {
    /// I_n = ∫F w dθ, J_n = ∫F w/(1−ξ) dθ, L_n = ∫G w/(1−ξ) dθ.
    ///
    /// J_n and L_n diverge for α ≤ 0 and are then `None`; the closed values
    /// (r_n, (α+iβ−n) r_n/(2α), (α+iβ)/(2α)) are `None` for α = 0.
    FisherHartwig {
        i: C64,
        j: Option<C64>,
        l: Option<C64>,
        closed_i: C64,
        closed_j: Option<C64>,
        closed_l: Option<C64>,
    },
    /// a_n = (t/2r_n)∫F w dθ, b_n = (t/2r_n)∫F w/ξ dθ, L_n = −(t/2)∫G w/ξ dθ.
    Bessel { a: C64, b: C64, l: C64 },
    /// a_n = (1/r_n)∫(g/ξ − Σ g_α/(ξ−z_α)) F w ξ dθ,
    /// b_n(α) = −(g_α z_α/r_n)∫F w ξ/(ξ−z_α) dθ, c_n(α) = g_α z_α ∫G w/(ξ−z_α) dθ.
    ExpPoles { a: C64, b: Vec<C64>, c: Vec<C64> },
}

/// Auxiliary integrals at index n by quadrature.
pub fn aux_integrals(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<AuxiliaryIntegrals> {
    seq.entry(n)?;
    let quad = spec.quadrature();
    match &spec.family {
        Family::FisherHartwig { alpha, beta } => {
            let singular = *alpha > 0.0;
            let len = if singular { 3 } else { 1 };
            let v = quad
                .integrate_vec(len, |p, out| {
                    let w = spec.weight(p);
                    let (f, g) = fg(seq, n, p);
                    out[0] = f * w;
                    if singular {
                        let inv = -p.xi_minus_one.inv();
                        out[1] = f * w * inv;
                        out[2] = g * w * inv;
                    }
                })?
                .values;
            let r = seq.r(n);
            let ab = C64::new(*alpha, *beta);
            let (closed_j, closed_l) = if *alpha == 0.0 {
                (None, None)
            } else {
                (Some((ab - n as f64) * r / (2.0 * alpha)), Some(ab / (2.0 * alpha)))
            };
            Ok(AuxiliaryIntegrals::FisherHartwig {
                i: v[0],
                j: singular.then(|| v[1]),
                l: singular.then(|| v[2]),
                closed_i: r,
                closed_j,
                closed_l,
            })
        }
        Family::Bessel { t } => {
            let r = r_nonzero(seq, n)?;
            let v = quad
                .integrate_vec(3, |p, out| {
                    let w = spec.weight(p);
                    let (f, g) = fg(seq, n, p);
                    let inv = p.xi.conj();
                    out[0] = f * w;
                    out[1] = f * w * inv;
                    out[2] = g * w * inv;
                })?
                .values;
            let h = 0.5 * t;
            Ok(AuxiliaryIntegrals::Bessel {
                a: v[0] * h / r,
                b: v[1] * h / r,
                l: -v[2] * h,
            })
        }
        Family::ExpPoles { poles, .. } => {
            let r = r_nonzero(seq, n)?;
            let g = total_exponent(poles);
            let len = 1 + 2 * poles.len();
            let v = quad
                .integrate_vec(len, |p, out| {
                    let w = spec.weight(p);
                    let (f, gg) = fg(seq, n, p);
                    let mut s = C64::new(g, 0.0) * p.xi.conj();
                    for (i, pole) in poles.iter().enumerate() {
                        let inv = (p.xi - pole.z).inv();
                        s -= inv * pole.g;
                        out[1 + 2 * i] = f * w * p.xi * inv;
                        out[2 + 2 * i] = gg * w * inv;
                    }
                    out[0] = s * f * w * p.xi;
                })?
                .values;
            let b = poles
                .iter()
                .enumerate()
                .map(|(i, pole)| -v[1 + 2 * i] * (pole.g * pole.z) / r)
                .collect();
            let c = poles
                .iter()
                .enumerate()
                .map(|(i, pole)| v[2 + 2 * i] * (pole.g * pole.z))
                .collect();
            Ok(AuxiliaryIntegrals::ExpPoles { a: v[0] / r, b, c })
        }
    }
}

/// The per-family closed forms of Â_n and B_n.
///
/// * Fisher–Hartwig: Â_n = (−α+iβ−n)/(z−1), B_n = −n/(z−1).
/// * Bessel: Â_n = −(t/2) s_n + (t/2)/z, B_n = (−n − (t/2) s_n m²_{n−1})/z.
/// * Exponential with poles: Â_n = n + a_n + Σ b_n(α)/(z−z_α),
///   B_n = Â_n/z − (n+g)/z + Σ (g_α + c_n(α))/(z−z_α), auxiliaries by quadrature.
pub fn closed_ladder(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<Ladder> {
    seq.entry(n)?;
    let m_prev = seq.m(n as i64 - 1)?;
    let nf = n as f64;
    let (a_hat, b) = match &spec.family {
        Family::FisherHartwig { alpha, beta } => (
            RationalFunction::pole(ONE, 1, C64::new(-alpha - nf, *beta)),
            RationalFunction::pole(ONE, 1, C64::new(-nf, 0.0)),
        ),
        Family::Bessel { t } => {
            let h = 0.5 * t;
            let s = seq.s(n)?;
            let m2 = seq.m2(n as i64 - 1)?;
            let mut a_hat = RationalFunction::constant(-s * h);
            a_hat.push(ZERO, 1, C64::new(h, 0.0));
            (a_hat, RationalFunction::pole(ZERO, 1, -nf - s * m2 * h))
        }
        Family::ExpPoles { poles, .. } => {
            let AuxiliaryIntegrals::ExpPoles { a, b, c } = aux_integrals(spec, seq, n)? else {
                unreachable!()
            };
            let mut a_hat = RationalFunction::constant(a + nf);
            for (pole, bb) in poles.iter().zip(&b) {
                a_hat.push(C64::new(pole.z, 0.0), 1, *bb);
            }
            let mut rest = RationalFunction::pole(ZERO, 1, C64::new(-(nf + total_exponent(poles)), 0.0));
            for (pole, cc) in poles.iter().zip(&c) {
                rest.push(C64::new(pole.z, 0.0), 1, cc + pole.g);
            }
            let b = a_hat.div_z().add(&rest);
            (a_hat, b)
        }
    };
    Ok(Ladder { n, m_prev, a_hat, b })
}

/// Residuals of the two compatibility conditions at index n ≥ 1 with the
/// closed ladder functions:
///
/// ```text
/// sum:        B_{n+1} + B_n = Â_n/z + Â_n/s_n − n/z − v'(z)
/// difference: (B_{n+1} − B_n)(z + s_n) = m_n² Â_{n+1} − (s_n/s_{n−1}) m²_{n−1} Â_{n−1} − 1
/// ```
pub fn check_compatibility(spec: &SymbolSpec, seq: &OpucSequence, n: usize, points: &[C64]) -> Result<ResidualReport> {
    let tol = if spec.is_hermitian() {
        tolerances::COMPATIBILITY
    } else {
        tolerances::COMPATIBILITY_POLES
    };
    check_compatibility_with(spec, seq, n, points, tol)
}

pub fn check_compatibility_with(
    spec: &SymbolSpec,
    seq: &OpucSequence,
    n: usize,
    points: &[C64],
    tol: f64,
) -> Result<ResidualReport> {
    if n == 0 {
        return Err(Error::domain("the difference condition needs n >= 1"));
    }
    let prev = closed_ladder(spec, seq, n - 1)?;
    let cur = closed_ladder(spec, seq, n)?;
    let next = closed_ladder(spec, seq, n + 1)?;
    let s = seq.s(n)?;
    let s_prev = seq.s(n - 1)?;
    let m2 = seq.m2(n as i64)?;
    let m2_prev = seq.m2(n as i64 - 1)?;
    let vp = v_prime(spec);
    let nf = n as f64;
    let mut report = ResidualReport::new();
    for &z in points {
        let (bn, bn1) = (cur.b.eval(z), next.b.eval(z));
        let ah = cur.a_hat.eval(z);
        let t1 = [bn1, bn, -ah / z, -ah / s, C64::new(nf, 0.0) / z, vp.eval(z)];
        let sum: C64 = t1.iter().sum();
        let scale = t1.iter().map(|v| v.norm()).fold(0.0, f64::max);
        report.push("compatibility_sum", n as i64, Point::at(z), sum.norm(), scale, tol);

        let t2 = [
            (bn1 - bn) * (z + s),
            -next.a_hat.eval(z) * m2,
            prev.a_hat.eval(z) * m2_prev * s / s_prev,
            ONE,
        ];
        let sum: C64 = t2.iter().sum();
        let scale = t2.iter().map(|v| v.norm()).fold(0.0, f64::max);
        report.push(
            "compatibility_difference",
            n as i64,
            Point::at(z),
            sum.norm(),
            scale,
            tol,
        );
    }
    Ok(report)
}

/// Residual of φ_n' = A_n φ_{n−1} − B_n φ_n with a given ladder, coefficient-wise
/// after clearing denominators and at each point.
pub fn lowering_residual(seq: &OpucSequence, ladder: &Ladder, points: &[C64], tol: f64) -> Result<ResidualReport> {
    let n = ladder.n;
    if n == 0 {
        return Err(Error::domain("the lowering relation needs n >= 1"));
    }
    let a = ladder.a();
    let poles = a.add(&ladder.b).poles();
    let den = denominator(&poles);
    let phi = seq.entry(n)?.coeffs.as_slice();
    let phi_prev = seq.phi(n - 1);
    let dphi = poly::derivative(phi);
    let terms = [
        poly::mul(&den, &dphi),
        poly::scale(&poly::mul(&a.numerator_over(&poles), phi_prev), -ONE),
        poly::mul(&ladder.b.numerator_over(&poles), phi),
    ];
    let mut residual = Vec::new();
    let mut scale = 0.0f64;
    for t in &terms {
        residual = poly::add(&residual, t);
        scale = scale.max(poly::max_abs(t));
    }
    let mut report = ResidualReport::new();
    report.push(
        "lowering",
        n as i64,
        Point::label("coefficients"),
        poly::max_abs(&residual),
        scale,
        tol,
    );
    for &z in points {
        let vals = [
            poly::eval(&dphi, z),
            -a.eval(z) * poly::eval(phi_prev, z),
            ladder.b.eval(z) * poly::eval(phi, z),
        ];
        let sum: C64 = vals.iter().sum();
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        report.push("lowering", n as i64, Point::at(z), sum.norm(), scale, tol);
    }
    Ok(report)
}

/// Lowering relation with the closed ladder functions.
pub fn check_lowering(spec: &SymbolSpec, seq: &OpucSequence, n: usize, points: &[C64]) -> Result<ResidualReport> {
    lowering_residual(seq, &closed_ladder(spec, seq, n)?, points, tolerances::LOWERING)
}

/// P(z, n), Q(z, n) of φ_n'' + P φ_n' + Q φ_n = 0 from the closed ladder functions.
///
/// ```text
/// P = −(n−1)/z − v' − A_n'/A_n
/// Q = B_n' − B_n A_n'/A_n + B_n B_{n−1} − Â_{n−1} B_n/z − Â_{n−1} B_n/s_{n−1}
///     + (m²_{n−1}/s_{n−1}) Â_{n−1} Â_n/z
/// ```
///
/// When v' ≡ 0 the polynomials are z^n and P = −(n−1)/z, Q = 0.
pub fn ode_coefficients(
    spec: &SymbolSpec,
    seq: &OpucSequence,
    n: usize,
) -> Result<(RationalFunction, RationalFunction)> {
    if n == 0 {
        return Err(Error::domain("the differential equation needs n >= 1"));
    }
    let nm1 = C64::new(-(n as f64 - 1.0), 0.0);
    let vp = v_prime(spec);
    if is_zero(&vp) {
        return Ok((RationalFunction::pole(ZERO, 1, nm1), RationalFunction::zero()));
    }
    let cur = closed_ladder(spec, seq, n)?;
    let prev = closed_ladder(spec, seq, n - 1)?;
    let s_prev = seq.s(n - 1)?;
    let m2_prev = seq.m2(n as i64 - 1)?;
    let log_a = cur.a_hat.log_derivative()?;

    let p = RationalFunction::pole(ZERO, 1, nm1).sub(&vp).sub(&log_a);
    let b = &cur.b;
    let ah_prev_b = prev.a_hat.mul(b);
    let q = b
        .derivative()
        .sub(&b.mul(&log_a))
        .add(&b.mul(&prev.b))
        .sub(&ah_prev_b.div_z())
        .sub(&ah_prev_b.scale(s_prev.inv()))
        .add(&prev.a_hat.mul(&cur.a_hat).div_z().scale(m2_prev / s_prev));
    Ok((p, q))
}

/// The Fisher–Hartwig specialisation
/// P = (1−n−α+iβ)/z + (2α+1)/(z−1), Q = −n(α+iβ+1)/(z(z−1)).
pub fn fh_ode_closed(alpha: f64, beta: f64, n: usize) -> (RationalFunction, RationalFunction) {
    let nf = n as f64;
    let mut p = RationalFunction::pole(ZERO, 1, C64::new(1.0 - nf - alpha, beta));
    p.push(ONE, 1, C64::new(2.0 * alpha + 1.0, 0.0));
    let c = C64::new(alpha + 1.0, beta) * (-nf);
    let mut q = RationalFunction::pole(ONE, 1, c);
    q.push(ZERO, 1, -c);
    (p, q)
}

/// φ'' + Pφ' + Qφ at z, divided by the largest of the three terms.
pub fn ode_residual(phi: &[C64], p: &RationalFunction, q: &RationalFunction, z: C64) -> Result<C64> {
    let d = p.pole_distance(z).min(q.pole_distance(z));
    if d < 1e-6 {
        return Err(Error::domain(format!("z = {z} lies within {d:e} of a pole of P or Q")));
    }
    let d1 = poly::derivative(phi);
    let d2 = poly::derivative(&d1);
    let terms = [
        poly::eval(&d2, z),
        p.eval(z) * poly::eval(&d1, z),
        q.eval(z) * poly::eval(phi, z),
    ];
    let scale = terms.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sum: C64 = terms.iter().sum();
    Ok(if scale == 0.0 { sum } else { sum / scale })
}

/// ODE residuals for φ_n at the given points.
pub fn check_ode(spec: &SymbolSpec, seq: &OpucSequence, n: usize, points: &[C64]) -> Result<ResidualReport> {
    let (p, q) = ode_coefficients(spec, seq, n)?;
    let phi = seq.entry(n)?.coeffs.as_slice();
    let mut report = ResidualReport::new();
    for &z in points {
        let r = ode_residual(phi, &p, &q, z)?;
        report.push("ode", n as i64, Point::at(z), r.norm(), 1.0, tolerances::ODE);
    }
    if let Family::FisherHartwig { alpha, beta } = spec.family {
        let (pc, qc) = fh_ode_closed(alpha, beta, n);
        let scale = pc.max_coeff().max(p.max_coeff());
        report.push(
            "ode_fh_P",
            n as i64,
            Point::label("coefficients"),
            p.coeff_distance(&pc),
            scale,
            tolerances::ODE_COEFFICIENTS,
        );
        let scale = qc.max_coeff().max(q.max_coeff()).max(1.0);
        report.push(
            "ode_fh_Q",
            n as i64,
            Point::label("coefficients"),
            q.coeff_distance(&qc),
            scale,
            tolerances::ODE_COEFFICIENTS,
        );
    }
    Ok(report)
}

/// Pointwise quadrature ladder against the closed ladder.
pub fn check_ladder_quadrature(
    spec: &SymbolSpec,
    seq: &OpucSequence,
    n: usize,
    points: &[C64],
    tol: f64,
) -> Result<ResidualReport> {
    let closed = closed_ladder(spec, seq, n)?;
    let a = closed.a();
    let mut report = ResidualReport::new();
    for &z in points {
        let q = ladder_by_quadrature(spec, seq, n, z)?;
        report.compare("ladder_quadrature_A", n as i64, Point::at(z), q.a, a.eval(z), tol);
        report.compare(
            "ladder_quadrature_B",
            n as i64,
            Point::at(z),
            q.b,
            closed.b.eval(z),
            tol,
        );
    }
    Ok(report)
}

/// Residues of the integral-route B_n for Fisher–Hartwig: 0 at z = 0 and −n at z = 1.
pub fn check_fh_b_residues(spec: &SymbolSpec, seq: &OpucSequence, n: usize, tol: f64) -> Result<ResidualReport> {
    let lad = ladder_rational(spec, seq, n)?;
    let mut report = ResidualReport::new();
    let nf = C64::new(n as f64, 0.0);
    let r0 = lad.b.coefficient(ZERO, 1);
    report.push(
        "fh_B_residue_0",
        n as i64,
        Point::label("z=0"),
        r0.norm(),
        nf.norm().max(1.0),
        tol,
    );
    report.compare(
        "fh_B_residue_1",
        n as i64,
        Point::label("z=1"),
        lad.b.coefficient(ONE, 1),
        -nf,
        tol,
    );
    Ok(report)
}
