//! Discrete Painlevé II for the Bessel symbol e^{t cos θ}.

use crate::ladder::{aux_integrals, AuxiliaryIntegrals};
use crate::opuc::OpucSequence;
use crate::par::{self, Exec};
use crate::report::{Point, ResidualReport};
use crate::specialfn::{bessel_i, ln_gamma_real};
use crate::symbols::{Family, SymbolSpec};
use crate::tolerances;
use crate::{Error, Result, C64};

use super::extended::{Extended, Real};
use super::{OrbitFamily, RecurrenceOrbit};

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("Bessel parameter t must be positive, got {t}")));
    }
    Ok(())
}

/// Seeds (r_0, r_1) = (1, −I_1(t)/I_0(t)).
pub fn dp2_seeds(t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    Ok((1.0, -bessel_i(1, t)? / bessel_i(0, t)?))
}

/// The seeds at `digits` decimal digits.
pub fn dp2_seeds_ext(t: f64, digits: u32) -> Result<(Extended, Extended)> {
    check_t(t)?;
    let one = Extended::from_f64(1.0, digits);
    let u = bessel_ratios(&one.lift(t), 1);
    Ok((one, -u[1].clone()))
}

/// r_{n+1} = −(2n/t) r_n/(1 − r_n²) − r_{n−1}.
pub fn dp2_step<T: Real>(t: &T, n: usize, r_prev: &T, r_curr: &T) -> Result<T> {
    if t.is_zero() {
        return Err(Error::domain("dP2 step needs t ≠ 0"));
    }
    let one = t.lift(1.0);
    let denom = one - r_curr.clone() * r_curr.clone();
    if denom.is_zero() {
        return Err(Error::SingularStep {
            n,
            reason: "r_n = ±1".into(),
        });
    }
    let two_n = t.lift(2.0 * n as f64);
    Ok(-(two_n / t.clone()) * r_curr.clone() / denom - r_prev.clone())
}

fn iterate<T: Real>(t: &T, r0: T, r1: T, n_max: usize) -> Result<Vec<T>> {
    let mut r = vec![r0, r1];
    for n in 1..n_max {
        let next = dp2_step(t, n, &r[n - 1], &r[n])?;
        r.push(next);
    }
    r.truncate(n_max + 1);
    Ok(r)
}

/// Forward dP2 orbit r_0, …, r_{n_max} in double precision.
pub fn dp2_orbit(t: f64, n_max: usize) -> Result<RecurrenceOrbit> {
    let (r0, r1) = dp2_seeds(t)?;
    let r = iterate(&t, r0, r1, n_max)?;
    Ok(RecurrenceOrbit {
        family: OrbitFamily::Dp2 { t },
        values: r.into_iter().map(|x| C64::new(x, 0.0)).collect(),
        precision_digits: 16,
    })
}

/// Forward dP2 orbit carried at `digits` decimal digits.
pub fn dp2_orbit_ext(t: f64, n_max: usize, digits: u32) -> Result<RecurrenceOrbit> {
    let (r0, r1) = dp2_seeds_ext(t, digits)?;
    let tt = r0.lift(t);
    let r = iterate(&tt, r0, r1, n_max)?;
    Ok(RecurrenceOrbit {
        family: OrbitFamily::Dp2 { t },
        values: r.iter().map(|x| C64::new(x.to_f64(), 0.0)).collect(),
        precision_digits: digits,
    })
}

/// log10 of n!/(t/2)^n, floored at zero.
fn log10_growth(t: f64, n: usize) -> f64 {
    let ln = ln_gamma_real(n as f64 + 1.0).unwrap_or(f64::INFINITY) - n as f64 * (0.5 * t).ln();
    (ln / std::f64::consts::LN_10).max(0.0)
}

/// Decimal digits needed for the forward orbit to reach relative accuracy
/// `target` up to n_max.
///
/// A perturbation of r_1 grows like (n!/(t/2)^n)² relative to r_n.
pub fn dp2_required_digits(t: f64, n_max: usize, target: f64) -> u32 {
    let growth = (0..=n_max).map(|n| log10_growth(t, n)).fold(0.0, f64::max);
    let digits = 2.0 * growth - target.log10() + 3.0;
    (digits.ceil() as u32).max(17)
}

/// Digits for a Gram solve whose r_n are accurate far beyond the orbit tests.
pub fn gram_oracle_digits(t: f64, n_max: usize) -> u32 {
    dp2_required_digits(t, n_max, 1e-20) + 10
}

/// u_m = I_m(t)/I_0(t) for m = 0..=m_max by the ascending series.
pub fn bessel_ratios<T: Real>(t: &T, m_max: usize) -> Vec<T> {
    let half = t.clone() * t.lift(0.5);
    let quarter_sq = half.clone() * half.clone();
    let eps = t.epsilon();
    let mut lead = t.lift(1.0);
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        if m > 0 {
            lead = lead * half.clone() / t.lift(m as f64);
        }
        let mut term = lead.clone();
        let mut sum = lead.clone();
        let mut k = 0usize;
        loop {
            k += 1;
            term = term * quarter_sq.clone() / t.lift((k * (k + m)) as f64);
            sum = sum + term.clone();
            if term.to_f64().abs() <= eps * sum.to_f64().abs() || k > 10_000 {
                break;
            }
        }
        out.push(sum);
    }
    let i0 = out[0].clone();
    out.into_iter().map(|x| x / i0.clone()).collect()
}

/// Solves a dense system by Gaussian elimination with partial pivoting.
fn solve_dense<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].to_f64().abs().total_cmp(&a[j][col].to_f64().abs()))
            .unwrap_or(col);
        if a[piv][col].is_zero() {
            return Err(Error::DegenerateWeight { n });
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col].clone() / a[col][col].clone();
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let v = a[row][k].clone() - f.clone() * a[col][k].clone();
                a[row][k] = v;
            }
            let v = b[row].clone() - f * b[col].clone();
            b[row] = v;
        }
    }
    let mut x: Vec<T> = b.iter().map(|v| v.lift(0.0)).collect();
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in row + 1..n {
            s = s - a[row][k].clone() * x[k].clone();
        }
        x[row] = s / a[row][row].clone();
    }
    Ok(x)
}

/// Monic orthogonal polynomials of the Bessel symbol in a generic scalar.
///
/// `u[m]` is 2π w_m = I_m(t)/I_0(t), `monic[n]` holds Φ_n in ascending
/// powers and `h[n] = ‖Φ_n‖² = 1/k_n²`.
#[derive(Debug, Clone)]
pub struct BesselData<T> {
    pub t: T,
    pub u: Vec<T>,
    pub monic: Vec<Vec<T>>,
    pub h: Vec<T>,
}

impl<T: Real> BesselData<T> {
    /// Gram solves for Φ_0, …, Φ_{n_max}, independent in n.
    pub fn compute(exec: Exec, t: T, n_max: usize) -> Result<Self> {
        check_t(t.to_f64())?;
        let u = bessel_ratios(&t, n_max + 2);
        let sols = par::try_map_range(exec, n_max + 1, |n| -> Result<(Vec<T>, T)> {
            let a: Vec<Vec<T>> = (0..n)
                .map(|j| (0..n).map(|k| u[j.abs_diff(k)].clone()).collect())
                .collect();
            let b: Vec<T> = (0..n).map(|j| -u[n - j].clone()).collect();
            let mut c = solve_dense(a, b)?;
            c.push(t.lift(1.0));
            let mut h = t.lift(0.0);
            for (k, ck) in c.iter().enumerate() {
                h = h + ck.clone() * u[n - k].clone();
            }
            if h.to_f64() <= 0.0 {
                return Err(Error::DegenerateWeight { n });
            }
            Ok((c, h))
        })?;
        let (monic, h) = sols.into_iter().unzip();
        Ok(BesselData { t, u, monic, h })
    }

    pub fn n_max(&self) -> usize {
        self.h.len() - 1
    }

    pub fn r(&self, n: usize) -> T {
        self.monic[n][0].clone()
    }

    /// m_n² = h_{n+1}/h_n, zero for n < 0.
    pub fn m2(&self, n: i64) -> T {
        if n < 0 {
            return self.t.lift(0.0);
        }
        let n = n as usize;
        self.h[n + 1].clone() / self.h[n].clone()
    }

    pub fn s(&self, n: usize) -> T {
        self.r(n + 1) / self.r(n)
    }

    /// k_n² Σ Φ_a Φ_b u_{|q − a − b|}: ∫ φ_n(ξ)² ξ^{−q} w dθ for real weights.
    fn pair_sum(&self, n: usize, q: i64) -> T {
        let c = &self.monic[n];
        let mut s = self.t.lift(0.0);
        for (a, ca) in c.iter().enumerate() {
            for (b, cb) in c.iter().enumerate() {
                let m = (q - a as i64 - b as i64).unsigned_abs() as usize;
                s = s + ca.clone() * cb.clone() * self.u[m].clone();
            }
        }
        s / self.h[n].clone()
    }

    /// k_n² Σ Φ_a Φ_b u_{|b + 1 − a|}: ∫ φ_n(ξ) φ_n(1/ξ) ξ^{−1} w dθ.
    fn cross_sum(&self, n: usize) -> T {
        let c = &self.monic[n];
        let mut s = self.t.lift(0.0);
        for (a, ca) in c.iter().enumerate() {
            for (b, cb) in c.iter().enumerate() {
                let m = (b as i64 + 1 - a as i64).unsigned_abs() as usize;
                s = s + ca.clone() * cb.clone() * self.u[m].clone();
            }
        }
        s / self.h[n].clone()
    }

    /// (a_n, b_n, L_n) from exact moment sums.
    pub fn auxiliaries(&self, n: usize) -> (T, T, T) {
        let half_t = self.t.clone() * self.t.lift(0.5);
        let r = self.r(n);
        let a = half_t.clone() * self.pair_sum(n, n as i64) / r.clone();
        let b = half_t.clone() * self.pair_sum(n, n as i64 + 1) / r;
        let l = -(half_t * self.cross_sum(n));
        (a, b, l)
    }
}

impl<T: Real> BesselData<T> {
    /// (a_n, b_n, L_n) from the trapezoid rule with `nodes` points on the circle.
    ///
    /// The integrands are Laurent polynomials times e^{t cos θ}, so the rule
    /// converges like I_{nodes − 2n − 1}(t).
    pub fn auxiliaries_by_quadrature(&self, n: usize, nodes: usize) -> (T, T, T) {
        let zero = self.t.lift(0.0);
        let c = &self.monic[n];
        let step = self.t.pi() * self.t.lift(2.0 / nodes as f64);
        let (mut mass, mut pa, mut pb, mut cross) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
        for j in 0..nodes {
            let theta = step.clone() * self.t.lift(j as f64);
            let (cs, sn) = (theta.cos(), theta.sin());
            let w = (self.t.clone() * cs.clone()).exp();
            let (mut re, mut im) = (zero.clone(), zero.clone());
            for ck in c.iter().rev() {
                let next_re = re.clone() * cs.clone() - im.clone() * sn.clone() + ck.clone();
                im = re * sn.clone() + im * cs.clone();
                re = next_re;
            }
            let sq_re = re.clone() * re.clone() - im.clone() * im.clone();
            let sq_im = self.t.lift(2.0) * re.clone() * im.clone();
            let angle = theta.clone() * self.t.lift(n as f64);
            let (qc, qs) = (angle.cos(), angle.sin());
            let (qc1, qs1) = ((angle.clone() + theta.clone()).cos(), (angle + theta).sin());
            pa = pa + w.clone() * (sq_re.clone() * qc + sq_im.clone() * qs);
            pb = pb + w.clone() * (sq_re * qc1 + sq_im * qs1);
            cross = cross + w.clone() * (re.clone() * re + im.clone() * im) * cs;
            mass = mass + w;
        }
        let h = self.h[n].clone() * mass;
        let half_t = self.t.clone() * self.t.lift(0.5);
        let r = self.r(n);
        let a = half_t.clone() * pa / h.clone() / r.clone();
        let b = half_t.clone() * pb / h.clone() / r;
        let l = -(half_t * cross / h);
        (a, b, l)
    }
}

impl BesselData<f64> {
    /// Reuses a double-precision sequence built from Bessel moments.
    pub fn from_sequence(spec: &SymbolSpec, seq: &OpucSequence) -> Result<Self> {
        let Family::Bessel { t } = spec.family else {
            return Err(Error::domain("Bessel data needs a Bessel symbol"));
        };
        let n_max = seq.n_max();
        let two_pi = 2.0 * std::f64::consts::PI;
        let moments = seq.moments.covering(n_max + 2)?;
        let u = (0..=n_max + 2)
            .map(|m| Ok(moments.get(m as i64)?.re * two_pi))
            .collect::<Result<Vec<f64>>>()?;
        let monic = seq
            .entries
            .iter()
            .map(|e| e.coeffs.iter().map(|c| (c / e.k).re).collect())
            .collect();
        let h = seq.entries.iter().map(|e| 1.0 / e.kn2.re).collect();
        Ok(BesselData { t, u, monic, h })
    }
}

/// Gram-solve r_n at `digits` decimal digits, rounded to double.
pub fn dp2_oracle(exec: Exec, t: f64, n_max: usize, digits: u32) -> Result<Vec<f64>> {
    let data = BesselData::compute(exec, Extended::from_f64(t, digits), n_max)?;
    Ok((0..=n_max).map(|n| data.r(n).to_f64()).collect())
}

fn push_real<T: Real>(report: &mut ResidualReport, name: &str, n: usize, lhs: T, rhs: T, tol: f64) {
    let scale = lhs.to_f64().abs().max(rhs.to_f64().abs());
    let diff = (lhs - rhs).to_f64().abs();
    report.push(name, n as i64, Point::label("values"), diff, scale, tol);
}

/// Step identities of the Bessel ladder at index n given (a_n, b_n, L_n).
///
/// Needs data up to index n + 1.
pub fn bessel_step_residuals<T: Real>(
    data: &BesselData<T>,
    n: usize,
    aux: (T, T, T),
    tol: f64,
) -> Result<ResidualReport> {
    if n + 1 > data.n_max() {
        return Err(Error::range(format!(
            "Bessel step checks at n = {n} need data to n + 1"
        )));
    }
    let t = &data.t;
    let lift = |x: f64| t.lift(x);
    let half_t = t.clone() * lift(0.5);
    let nf = lift(n as f64);
    let sn = data.s(n);
    let m2_prev = data.m2(n as i64 - 1);
    let (a, b, l) = aux;
    let mut rep = ResidualReport::new();
    push_real(&mut rep, "bessel_a", n, a, half_t.clone(), tol);
    push_real(
        &mut rep,
        "bessel_b",
        n,
        b,
        -nf.clone() - half_t.clone() * sn.clone(),
        tol,
    );
    push_real(
        &mut rep,
        "bessel_L_product",
        n,
        l.clone(),
        half_t.clone() * sn.clone() * (lift(1.0) - m2_prev.clone()),
        tol,
    );
    let sq = sn.clone() * sn.clone();
    let ratio = (lift(1.0) - data.m2(n as i64)) / (lift(1.0) - m2_prev.clone());
    push_real(&mut rep, "bessel_s_squared", n, sq, ratio, tol);
    if n >= 1 {
        let s_prev = data.s(n - 1);
        push_real(
            &mut rep,
            "bessel_L_sum",
            n,
            l,
            nf.clone() + half_t * (sn.clone() + m2_prev.clone() / s_prev.clone()),
            tol,
        );
        push_real(
            &mut rep,
            "bessel_mn2_s",
            n,
            -(lift(2.0) * nf) / t.clone(),
            m2_prev.clone() * (sn + lift(1.0) / s_prev),
            tol,
        );
        let rn = data.r(n);
        push_real(&mut rep, "bessel_mn2_r", n, m2_prev, lift(1.0) - rn.clone() * rn, tol);
    }
    Ok(rep)
}

/// Step identities on generic-precision data with moment-sum auxiliaries.
pub fn bessel_step_checks_data<T: Real>(data: &BesselData<T>, n: usize) -> Result<ResidualReport> {
    bessel_step_residuals(data, n, data.auxiliaries(n), tolerances::BESSEL_STEPS)
}

/// Step identities on a double-precision sequence with quadrature auxiliaries.
pub fn bessel_step_checks(spec: &SymbolSpec, seq: &OpucSequence, n: usize) -> Result<ResidualReport> {
    let data = BesselData::from_sequence(spec, seq)?;
    let AuxiliaryIntegrals::Bessel { a, b, l } = aux_integrals(spec, seq, n)? else {
        return Err(Error::domain("Bessel step checks need a Bessel symbol"));
    };
    bessel_step_residuals(&data, n, (a.re, b.re, l.re), tolerances::BESSEL_STEPS)
}
