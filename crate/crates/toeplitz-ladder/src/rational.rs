//! Rational functions in partial-fraction form.
//!
//! A [`RationalFunction`] is c + Σ κ/(z − p)^k with finitely many terms.
//! Products are expanded back into partial fractions, so A_n, B_n, P and Q
//! stay in the same representation through every algebraic step.

use serde::Serialize;

use crate::poly;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Poles closer than this (relative to 1 + |p|) are merged.
const POLE_MERGE: f64 = 1e-12;

/// One term κ/(z − p)^k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleTerm {
    pub pole: C64,
    pub order: u32,
    pub coeff: C64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RationalFunction {
    pub constant: C64,
    pub terms: Vec<PoleTerm>,
}

fn same_pole(a: C64, b: C64) -> bool {
    (a - b).norm() <= POLE_MERGE * (1.0 + a.norm().max(b.norm()))
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// 1/((z−a)^i (z−b)^j) for a ≠ b as partial fractions.
fn split_pair(a: C64, i: u32, b: C64, j: u32) -> Vec<PoleTerm> {
    let mut out = Vec::with_capacity((i + j) as usize);
    for k in 1..=i {
        let sign = if (i - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let c = binomial(i + j - k - 1, i - k) * sign;
        out.push(PoleTerm {
            pole: a,
            order: k,
            coeff: C64::new(c, 0.0) / (a - b).powu(i + j - k),
        });
    }
    for k in 1..=j {
        let sign = if (j - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let c = binomial(i + j - k - 1, j - k) * sign;
        out.push(PoleTerm {
            pole: b,
            order: k,
            coeff: C64::new(c, 0.0) / (b - a).powu(i + j - k),
        });
    }
    out
}

/// ∏ (z − p)^k
pub fn denominator(poles: &[(C64, u32)]) -> Vec<C64> {
    let roots: Vec<C64> = poles
        .iter()
        .flat_map(|&(p, k)| std::iter::repeat_n(p, k as usize))
        .collect();
    poly::from_roots(&roots)
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        RationalFunction {
            constant: c,
            terms: Vec::new(),
        }
    }

    /// κ/(z − p)^k
    pub fn pole(pole: C64, order: u32, coeff: C64) -> Self {
        let mut r = Self::zero();
        r.push(pole, order, coeff);
        r
    }

    /// Adds κ/(z − p)^k in place, merging with an existing term.
    pub fn push(&mut self, pole: C64, order: u32, coeff: C64) {
        assert!(order >= 1, "pole order must be positive");
        if coeff == ZERO {
            return;
        }
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.order == order && same_pole(t.pole, pole))
        {
            t.coeff += coeff;
        } else {
            self.terms.push(PoleTerm { pole, order, coeff });
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.terms
            .iter()
            .fold(self.constant, |acc, t| acc + t.coeff / (z - t.pole).powu(t.order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += other.constant;
        for t in &other.terms {
            out.push(t.pole, t.order, t.coeff);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, c: C64) -> Self {
        RationalFunction {
            constant: self.constant * c,
            terms: self
                .terms
                .iter()
                .map(|t| PoleTerm {
                    coeff: t.coeff * c,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::constant(self.constant * other.constant);
        for t in &other.terms {
            out.push(t.pole, t.order, t.coeff * self.constant);
        }
        for s in &self.terms {
            out.push(s.pole, s.order, s.coeff * other.constant);
        }
        for s in &self.terms {
            for t in &other.terms {
                let c = s.coeff * t.coeff;
                if same_pole(s.pole, t.pole) {
                    out.push(s.pole, s.order + t.order, c);
                } else {
                    for q in split_pair(s.pole, s.order, t.pole, t.order) {
                        out.push(q.pole, q.order, q.coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Multiplication by 1/z.
    pub fn div_z(&self) -> Self {
        self.mul(&Self::pole(ZERO, 1, ONE))
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for t in &self.terms {
            out.push(t.pole, t.order + 1, -t.coeff * t.order as f64);
        }
        out
    }

    /// Coefficient of 1/(z − p)^k, zero when absent.
    pub fn coefficient(&self, pole: C64, order: u32) -> C64 {
        self.terms
            .iter()
            .filter(|t| t.order == order && same_pole(t.pole, pole))
            .map(|t| t.coeff)
            .sum()
    }

    /// Distinct poles with their highest order.
    pub fn poles(&self) -> Vec<(C64, u32)> {
        let mut out: Vec<(C64, u32)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(p, _)| same_pole(*p, t.pole)) {
                Some(e) => e.1 = e.1.max(t.order),
                None => out.push((t.pole, t.order)),
            }
        }
        out
    }

    /// Largest modulus among the constant and the term coefficients.
    pub fn max_coeff(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm())
            .fold(self.constant.norm(), f64::max)
    }

    /// Largest coefficient of `self − other` after merging.
    pub fn coeff_distance(&self, other: &Self) -> f64 {
        self.sub(other).max_coeff()
    }

    /// Numerator and denominator polynomials with denominator ∏ (z − p)^{k_p}.
    pub fn to_fraction(&self) -> (Vec<C64>, Vec<C64>) {
        let poles = self.poles();
        (self.numerator_over(&poles), denominator(&poles))
    }

    /// self · ∏ (z − p)^{k} as a polynomial.
    ///
    /// Every pole of `self` must appear in `poles` with at least its order.
    pub fn numerator_over(&self, poles: &[(C64, u32)]) -> Vec<C64> {
        let factor = |skip: usize, reduce: u32| -> Vec<C64> {
            let mut roots = Vec::new();
            for (i, &(p, k)) in poles.iter().enumerate() {
                let k = if i == skip { k - reduce } else { k };
                roots.extend(std::iter::repeat_n(p, k as usize));
            }
            poly::from_roots(&roots)
        };
        let mut num = poly::scale(&denominator(poles), self.constant);
        for t in &self.terms {
            let i = poles
                .iter()
                .position(|(p, k)| same_pole(*p, t.pole) && *k >= t.order)
                .expect("pole missing from the common denominator");
            num = poly::add(&num, &poly::scale(&factor(i, t.order), t.coeff));
        }
        num
    }

    /// f'/f as a rational function, from the roots of the numerator.
    pub fn log_derivative(&self) -> Result<Self> {
        let (num, _) = self.to_fraction();
        let scale = poly::max_abs(&num);
        if scale == 0.0 {
            return Err(Error::domain("log derivative of the zero function"));
        }
        let mut num = num;
        while num.len() > 1 && num.last().is_some_and(|c| c.norm() <= 1e-14 * scale) {
            num.pop();
        }
        let mut out = Self::zero();
        for rho in poly::roots(&num)? {
            out.push(rho, 1, ONE);
        }
        for (p, k) in self.poles() {
            out.push(p, 1, C64::new(-(k as f64), 0.0));
        }
        Ok(out)
    }

    /// Distance from z to the nearest pole.
    pub fn pole_distance(&self, z: C64) -> f64 {
        self.terms
            .iter()
            .map(|t| (z - t.pole).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Drops terms whose coefficients are below `tol` times the largest one.
    pub fn prune(&self, tol: f64) -> Self {
        let cut = tol * self.max_coeff();
        RationalFunction {
            constant: self.constant,
            terms: self.terms.iter().filter(|t| t.coeff.norm() > cut).copied().collect(),
        }
    }
}
