//! Quadrature on the unit circle.
//!
//! Integrals are written as ∫₀^{2π} f(e^{iθ}) dθ. Two rules are provided:
//!
//! * [`Rule::Trapezoid`] on the uniform θ-grid, spectrally accurate for smooth
//!   periodic integrands;
//! * [`Rule::TanhSinh`], which splits the circle at θ = 0 and applies the
//!   double-exponential substitution on each half. This handles the algebraic
//!   singularity of Fisher–Hartwig weights at z = 1.
//!
//! Both rules refine by halving the step and reuse earlier nodes. Integrand
//! values at the nodes of one level are computed with [`crate::par`], then
//! summed sequentially in node order.

use std::f64::consts::PI;

use crate::par::{self, Exec};
use crate::{Error, Result, C64};

/// A node on the unit circle, carried with an accurate signed angle.
#[derive(Debug, Clone, Copy)]
pub struct CirclePoint {
    /// Signed angle ψ ∈ (−π, π]; θ = ψ mod 2π.
    pub psi: f64,
    /// ξ = e^{iψ}
    pub xi: C64,
    /// ξ − 1, computed as 2i sin(ψ/2) e^{iψ/2} without cancellation.
    pub xi_minus_one: C64,
}

impl CirclePoint {
    pub fn new(psi: f64) -> Self {
        let half = 0.5 * psi;
        let xi = C64::from_polar(1.0, psi);
        let xi_minus_one = C64::new(0.0, 2.0 * half.sin()) * C64::from_polar(1.0, half);
        CirclePoint { psi, xi, xi_minus_one }
    }

    /// θ in [0, 2π).
    pub fn theta(&self) -> f64 {
        if self.psi < 0.0 {
            self.psi + 2.0 * PI
        } else {
            self.psi
        }
    }
}

/// Quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Trapezoid,
    TanhSinh,
}

/// Refinement settings.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub rule: Rule,
    /// Stop once the change between levels is below `tol` times the L¹ scale.
    pub tol: f64,
    /// Cap on the number of integrand evaluations.
    pub max_points: usize,
    pub exec: Exec,
}

/// Value of an integral together with the L¹ norm of its integrand.
#[derive(Debug, Clone)]
pub struct Integral {
    pub values: Vec<C64>,
    pub scales: Vec<f64>,
    pub points: usize,
}

const TANH_SINH_UMAX: f64 = 4.0;
const MIN_PARALLEL_NODES: usize = 256;

impl Quadrature {
    pub fn new(rule: Rule) -> Self {
        Quadrature {
            rule,
            tol: 1e-14,
            max_points: 1 << 17,
            exec: Exec::default(),
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// ∫₀^{2π} f dθ for a scalar integrand.
    pub fn integrate<F>(&self, f: F) -> Result<C64>
    where
        F: Fn(&CirclePoint) -> C64 + Sync + Send,
    {
        Ok(self.integrate_vec(1, |p, out| out[0] = f(p))?.values[0])
    }

    /// ∫₀^{2π} f dθ for a vector-valued integrand with `len` components.
    ///
    /// Convergence is declared when every component changes by less than
    /// `tol` times its own L¹ scale (or the largest scale, whichever is larger
    /// than 1e-300) between two consecutive levels.
    pub fn integrate_vec<F>(&self, len: usize, f: F) -> Result<Integral>
    where
        F: Fn(&CirclePoint, &mut [C64]) + Sync + Send,
    {
        match self.rule {
            Rule::Trapezoid => self.trapezoid(len, f),
            Rule::TanhSinh => self.tanh_sinh(len, f),
        }
    }

    fn eval_nodes<F>(&self, nodes: &[(f64, f64)], len: usize, f: &F) -> (Vec<C64>, Vec<f64>)
    where
        F: Fn(&CirclePoint, &mut [C64]) + Sync + Send,
    {
        let exec = if nodes.len() >= MIN_PARALLEL_NODES {
            self.exec
        } else {
            Exec::Sequential
        };
        let evals = par::map(exec, nodes, |&(psi, weight)| {
            let mut out = vec![C64::new(0.0, 0.0); len];
            if weight != 0.0 {
                f(&CirclePoint::new(psi), &mut out);
            }
            (out, weight)
        });
        let mut sum = vec![C64::new(0.0, 0.0); len];
        let mut abs = vec![0.0; len];
        for (vals, weight) in &evals {
            for k in 0..len {
                let v = vals[k] * *weight;
                if v.re.is_finite() && v.im.is_finite() {
                    sum[k] += v;
                    abs[k] += v.norm();
                }
            }
        }
        (sum, abs)
    }

    fn converged(&self, old: &[C64], new: &[C64], scales: &[f64]) -> (bool, f64) {
        let global = scales.iter().cloned().fold(0.0, f64::max).max(1e-300);
        let mut worst = 0.0f64;
        let mut ok = true;
        for k in 0..new.len() {
            let change = (new[k] - old[k]).norm();
            let scale = scales[k].max(1e-3 * global).max(1e-300);
            worst = worst.max(change / scale);
            if change > self.tol * scale {
                ok = false;
            }
        }
        (ok, worst)
    }

    fn trapezoid<F>(&self, len: usize, f: F) -> Result<Integral>
    where
        F: Fn(&CirclePoint, &mut [C64]) + Sync + Send,
    {
        let mut n = 32usize;
        let nodes: Vec<(f64, f64)> = (0..n).map(|j| (wrap(2.0 * PI * j as f64 / n as f64), 1.0)).collect();
        let (mut sum, mut abs) = self.eval_nodes(&nodes, len, &f);
        let mut value: Vec<C64> = sum.iter().map(|s| s * (2.0 * PI / n as f64)).collect();
        let mut change = f64::INFINITY;
        while 2 * n <= self.max_points {
            let m = 2 * n;
            let nodes: Vec<(f64, f64)> = (0..n)
                .map(|j| (wrap(2.0 * PI * (2 * j + 1) as f64 / m as f64), 1.0))
                .collect();
            let (s, a) = self.eval_nodes(&nodes, len, &f);
            for k in 0..len {
                sum[k] += s[k];
                abs[k] += a[k];
            }
            let h = 2.0 * PI / m as f64;
            let next: Vec<C64> = sum.iter().map(|s| s * h).collect();
            let scales: Vec<f64> = abs.iter().map(|a| a * h).collect();
            let (ok, worst) = self.converged(&value, &next, &scales);
            value = next;
            n = m;
            change = worst;
            if ok {
                return Ok(Integral {
                    values: value,
                    scales,
                    points: n,
                });
            }
        }
        Err(accuracy(n, &value, change))
    }

    fn tanh_sinh<F>(&self, len: usize, f: F) -> Result<Integral>
    where
        F: Fn(&CirclePoint, &mut [C64]) + Sync + Send,
    {
        // Level 0: u = j·h0 over [−UMAX, UMAX] on both halves of the circle.
        let mut h = 1.0 / 8.0;
        let count = (TANH_SINH_UMAX / h).round() as i64;
        let nodes = tanh_sinh_nodes((-count..=count).map(|j| j as f64 * h));
        let (mut sum, mut abs) = self.eval_nodes(&nodes, len, &f);
        let mut points = nodes.len();
        let mut value: Vec<C64> = sum.iter().map(|s| s * h).collect();
        let mut change = f64::INFINITY;
        loop {
            let half = 0.5 * h;
            let count = (TANH_SINH_UMAX / h).round() as i64;
            let new_nodes = tanh_sinh_nodes((-count..count).map(|j| (2 * j + 1) as f64 * half));
            if points + new_nodes.len() > self.max_points {
                return Err(accuracy(points, &value, change));
            }
            let (s, a) = self.eval_nodes(&new_nodes, len, &f);
            points += new_nodes.len();
            for k in 0..len {
                sum[k] += s[k];
                abs[k] += a[k];
            }
            h = half;
            let next: Vec<C64> = sum.iter().map(|s| s * h).collect();
            let scales: Vec<f64> = abs.iter().map(|a| a * h).collect();
            let (ok, worst) = self.converged(&value, &next, &scales);
            value = next;
            change = worst;
            if ok {
                return Ok(Integral {
                    values: value,
                    scales,
                    points,
                });
            }
        }
    }
}

fn wrap(theta: f64) -> f64 {
    if theta > PI {
        theta - 2.0 * PI
    } else {
        theta
    }
}

/// Nodes (ψ, dψ/du) for both half-circles at the given abscissae u.
///
/// On (0, π): ψ = π/(1 + e^{−2s}), s = (π/2) sinh u, so ψ → 0 double
/// exponentially as u → −∞. The mirror image covers (−π, 0).
fn tanh_sinh_nodes(us: impl Iterator<Item = f64>) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for u in us {
        let s = 0.5 * PI * u.sinh();
        let psi = if s < 0.0 {
            let e = (2.0 * s).exp();
            PI * e / (1.0 + e)
        } else {
            PI / (1.0 + (-2.0 * s).exp())
        };
        let cosh_s = s.cosh();
        let weight = PI / (2.0 * cosh_s * cosh_s) * 0.5 * PI * u.cosh();
        if psi <= 0.0 || !weight.is_finite() {
            continue;
        }
        out.push((psi, weight));
        out.push((-psi, weight));
    }
    out
}

fn accuracy(points: usize, values: &[C64], change: f64) -> Error {
    let best = values.first().copied().unwrap_or_default();
    Error::Accuracy {
        points,
        best_re: best.re,
        best_im: best.im,
        change,
    }
}
