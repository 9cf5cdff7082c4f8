//! Toeplitz matrices, determinants and orthonormal polynomials on the unit circle.
//!
//! The polynomials are obtained from explicit Gram solves, one linear system
//! per degree, so that they do not depend on the recurrences they are later
//! checked against. With the inner product
//!
//! ```text
//! ⟨p, q⟩ = ∫₀^{2π} p(e^{iθ}) conj(q(e^{iθ})) w(e^{iθ}) dθ,   ⟨z^k, z^j⟩ = 2π w_{j−k},
//! ```
//!
//! the monic Φ_n = z^n + Σ_{k<n} c_k z^k solves T_n c = −(w_{j−n})_j with the
//! Toeplitz matrix T_n = (w_{j−k}). Then h_n = ⟨Φ_n, z^n⟩ = 2πΔ_{n+1}/Δ_n and
//! φ_n = k_n Φ_n with k_n² = 1/h_n.
//!
//! For a weight that is not real on the circle the conjugation is replaced by
//! the identity (a bilinear pairing). The polynomials are then only
//! left-orthogonal; the right-orthogonal family ψ_n solves the transposed
//! system and takes the role of conj(φ_n) in the Szegő recurrences. In that
//! case k_n = √(k_n²) is taken on the branch continuous in n from k_0 = 1.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::par::{self, Exec};
use crate::poly;
use crate::report::{Point, ResidualReport};
use crate::symbols::MomentSequence;
use crate::tolerances;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// n×n Toeplitz matrix with entry (j, k) = w_{j−k}.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    pub n: usize,
    pub entries: DMatrix<C64>,
}

pub fn build_toeplitz(moments: &MomentSequence, n: usize) -> Result<ToeplitzMatrix> {
    if n > 0 && n - 1 > moments.max_order {
        return Err(Error::range(format!(
            "a {n}x{n} Toeplitz matrix needs moments |m| <= {}, have {}",
            n - 1,
            moments.max_order
        )));
    }
    let entries = DMatrix::from_fn(n, n, |j, k| moments.at(j as i64 - k as i64));
    Ok(ToeplitzMatrix { n, entries })
}

/// Determinant with a flag for exact singularity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Determinant {
    pub value: C64,
    pub singular: bool,
}

/// Determinant by LU with partial pivoting; the empty matrix has determinant 1.
pub fn det_lu(matrix: &ToeplitzMatrix) -> Determinant {
    if matrix.n == 0 {
        return Determinant {
            value: ONE,
            singular: false,
        };
    }
    let value = matrix.entries.clone().lu().determinant();
    Determinant {
        value: if value == ZERO { ZERO } else { value },
        singular: value == ZERO,
    }
}

/// Data of one orthonormal polynomial φ_n.
#[derive(Debug, Clone, Serialize)]
pub struct OpucEntry {
    pub n: usize,
    /// Coefficients of φ_n in ascending powers.
    pub coeffs: Vec<C64>,
    /// Coefficients of the right-orthogonal partner ψ_n (conj(φ_n) for real weights).
    pub dual: Vec<C64>,
    pub k: C64,
    pub kn2: C64,
    pub phi0: C64,
    /// Coefficient of z^{n−1}; zero for n = 0.
    pub l: C64,
}

/// Orthonormal polynomials φ_0, …, φ_{n_max} of one symbol.
#[derive(Debug, Clone, Serialize)]
pub struct OpucSequence {
    #[serde(skip)]
    pub moments: MomentSequence,
    pub hermitian: bool,
    pub entries: Vec<OpucEntry>,
}

fn solve_monic(t: &DMatrix<C64>, rhs: DVector<C64>, n: usize) -> Result<Vec<C64>> {
    if n == 0 {
        return Ok(vec![ONE]);
    }
    let lu = t.clone().lu();
    let c = lu.solve(&rhs).ok_or(Error::DegenerateWeight { n })?;
    if c.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::DegenerateWeight { n });
    }
    let mut out: Vec<C64> = c.iter().copied().collect();
    out.push(ONE);
    Ok(out)
}

struct Monic {
    phi: Vec<C64>,
    dual: Vec<C64>,
    h: C64,
}

fn monic_pair(moments: &MomentSequence, n: usize, hermitian: bool) -> Result<Monic> {
    let t = build_toeplitz(moments, n)?.entries;
    let rhs = DVector::from_fn(n, |j, _| -moments.at(j as i64 - n as i64));
    let phi = solve_monic(&t, rhs, n)?;
    let dual = if hermitian {
        phi.iter().map(|c| c.conj()).collect()
    } else {
        // ⟨z^j, Ψ_n⟩ = 0: Σ_k d_k w_{k−j} = −w_{n−j}
        let rhs = DVector::from_fn(n, |j, _| -moments.at(n as i64 - j as i64));
        solve_monic(&t.transpose(), rhs, n)?
    };
    let h: C64 = phi
        .iter()
        .enumerate()
        .map(|(k, &c)| c * moments.at(n as i64 - k as i64))
        .sum::<C64>()
        * (2.0 * PI);
    if h == ZERO || !h.re.is_finite() || h.norm() < 1e-300 {
        return Err(Error::DegenerateWeight { n });
    }
    Ok(Monic { phi, dual, h })
}

/// Orthonormal polynomials up to degree `n_max` from explicit Gram solves.
pub fn opuc_solve(moments: &MomentSequence, n_max: usize) -> Result<OpucSequence> {
    opuc_solve_with(Exec::default(), moments, n_max)
}

/// [`opuc_solve`] with an explicit execution mode; the per-degree solves are independent.
pub fn opuc_solve_with(exec: Exec, moments: &MomentSequence, n_max: usize) -> Result<OpucSequence> {
    if n_max > moments.max_order {
        return Err(Error::range(format!(
            "opuc_solve up to n = {n_max} needs moments |m| <= {n_max}, have {}",
            moments.max_order
        )));
    }
    let hermitian = moments.symbol.is_hermitian();
    let monics = par::try_map_range(exec, n_max + 1, |n| monic_pair(moments, n, hermitian))?;

    let mut entries = Vec::with_capacity(n_max + 1);
    let mut prev_k = ONE;
    for (n, m) in monics.into_iter().enumerate() {
        let kn2 = m.h.inv();
        let k = if hermitian {
            if !(m.h.re > 0.0) {
                return Err(Error::DegenerateWeight { n });
            }
            C64::new(kn2.re.sqrt(), 0.0)
        } else {
            let root = kn2.sqrt();
            if (root - prev_k).norm() <= (root + prev_k).norm() {
                root
            } else {
                -root
            }
        };
        prev_k = k;
        let coeffs = poly::scale(&m.phi, k);
        let dual = poly::scale(&m.dual, if hermitian { k.conj() } else { k });
        let phi0 = coeffs[0];
        let l = if n == 0 { ZERO } else { coeffs[n - 1] };
        entries.push(OpucEntry {
            n,
            coeffs,
            dual,
            k,
            kn2: if hermitian { C64::new(kn2.re, 0.0) } else { kn2 },
            phi0,
            l,
        });
    }
    Ok(OpucSequence {
        moments: moments.clone(),
        hermitian,
        entries,
    })
}

impl OpucSequence {
    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, n: usize) -> Result<&OpucEntry> {
        self.entries
            .get(n)
            .ok_or_else(|| Error::range(format!("polynomial index {n} beyond n_max = {}", self.n_max())))
    }

    /// Coefficients of φ_n.
    pub fn phi(&self, n: usize) -> &[C64] {
        &self.entries[n].coeffs
    }

    /// φ_n^* with the conjugation appropriate to the pairing: reverse(ψ_n).
    pub fn phi_star(&self, n: usize) -> Vec<C64> {
        poly::reverse(&self.entries[n].dual)
    }

    pub fn k(&self, n: usize) -> C64 {
        self.entries[n].k
    }

    pub fn kn2(&self, n: usize) -> C64 {
        self.entries[n].kn2
    }

    pub fn phi0(&self, n: usize) -> C64 {
        self.entries[n].phi0
    }

    pub fn l(&self, n: usize) -> C64 {
        self.entries[n].l
    }

    /// r_n = φ_n(0)/k_n.
    pub fn r(&self, n: usize) -> C64 {
        self.entries[n].phi0 / self.entries[n].k
    }

    /// ψ_n(0)/k_n, equal to conj(r_n) for real weights.
    pub fn r_dual(&self, n: usize) -> C64 {
        self.entries[n].dual[0] / self.entries[n].k
    }

    /// m_n = k_n/k_{n+1}; m_{−1} = 0 by the convention k_{−1} = 0.
    pub fn m(&self, n: i64) -> Result<C64> {
        if n < 0 {
            return Ok(ZERO);
        }
        let n = n as usize;
        let next = self.entry(n + 1)?;
        Ok(self.entries[n].k / next.k)
    }

    /// m_n² = k_n²/k_{n+1}².
    pub fn m2(&self, n: i64) -> Result<C64> {
        if n < 0 {
            return Ok(ZERO);
        }
        let n = n as usize;
        let next = self.entry(n + 1)?;
        Ok(self.entries[n].kn2 / next.kn2)
    }

    /// s_n = r_{n+1}/r_n.
    pub fn s(&self, n: usize) -> Result<C64> {
        let next = self.entry(n + 1)?;
        let r = self.r(n);
        if r == ZERO {
            return Err(Error::domain(format!("s_{n} undefined: r_{n} = 0")));
        }
        Ok(next.phi0 / next.k / r)
    }
}

/// Δ_n = ∏_{j<n} 1/(2π k_j²).
pub fn delta_product(seq: &OpucSequence, n: usize) -> Result<C64> {
    if n > seq.entries.len() {
        return Err(Error::range(format!("delta_product({n}) needs k_0..k_{}", n - 1)));
    }
    Ok(seq.entries[..n].iter().map(|e| (e.kn2 * (2.0 * PI)).inv()).product())
}

/// Default sample points on the unit circle for recurrence checks.
pub fn circle_samples() -> Vec<C64> {
    (0..8)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / 8.0 + 0.3))
        .collect()
}

fn poly_identity(report: &mut ResidualReport, name: &str, n: usize, terms: &[Vec<C64>], points: &[C64], tol: f64) {
    let len = terms.iter().map(|t| t.len()).max().unwrap_or(0);
    let mut residual = vec![ZERO; len];
    let mut scale = 0.0f64;
    for t in terms {
        residual = poly::add(&residual, t);
        scale = scale.max(poly::max_abs(t));
    }
    report.push(
        name,
        n as i64,
        Point::label("coefficients"),
        poly::max_abs(&residual),
        scale,
        tol,
    );
    for &z in points {
        let vals: Vec<C64> = terms.iter().map(|t| poly::eval(t, z)).collect();
        let sum: C64 = vals.iter().sum();
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        report.push(name, n as i64, Point::at(z), sum.norm(), scale, tol);
    }
}

/// Residuals of the Szegő recurrences, the three-term relation and the l_n recursion at index n.
///
/// The three-term relation is checked in the form obtained by eliminating
/// φ_n^* from the two recurrences,
/// k_n φ_n(0) φ_{n+1} + k_{n−1} φ_{n+1}(0) z φ_{n−1} = (k_n φ_{n+1}(0) + k_{n+1} φ_n(0) z) φ_n,
/// for n ≥ 1.
pub fn check_recurrences(seq: &OpucSequence, n: usize) -> Result<ResidualReport> {
    check_recurrences_at(seq, n, &circle_samples(), tolerances::RECURRENCE)
}

pub fn check_recurrences_at(seq: &OpucSequence, n: usize, points: &[C64], tol: f64) -> Result<ResidualReport> {
    seq.entry(n + 1)?;
    let mut report = ResidualReport::new();
    let (kn, kn1) = (seq.k(n), seq.k(n + 1));
    let phi_n = seq.phi(n);
    let phi_n1 = seq.phi(n + 1);
    let z_phi_n = poly::shift(phi_n, 1);
    let p1 = seq.phi0(n + 1);

    // k_n z φ_n = k_{n+1} φ_{n+1} − φ_{n+1}(0) φ_{n+1}^*
    poly_identity(
        &mut report,
        "szego_forward",
        n,
        &[
            poly::scale(&z_phi_n, kn),
            poly::scale(phi_n1, -kn1),
            poly::scale(&seq.phi_star(n + 1), p1),
        ],
        points,
        tol,
    );
    // k_n φ_{n+1} = k_{n+1} z φ_n + φ_{n+1}(0) φ_n^*
    poly_identity(
        &mut report,
        "szego_backward",
        n,
        &[
            poly::scale(phi_n1, kn),
            poly::scale(&z_phi_n, -kn1),
            poly::scale(&seq.phi_star(n), -p1),
        ],
        points,
        tol,
    );
    if n >= 1 {
        let p0 = seq.phi0(n);
        let knm1 = seq.k(n - 1);
        let z_phi_prev = poly::shift(seq.phi(n - 1), 1);
        poly_identity(
            &mut report,
            "three_term",
            n,
            &[
                poly::scale(phi_n1, kn * p0),
                poly::scale(&z_phi_prev, knm1 * p1),
                poly::scale(phi_n, -(kn * p1)),
                poly::scale(&z_phi_n, -(kn1 * p0)),
            ],
            points,
            tol,
        );
    }
    // l_{n+1}/k_{n+1} = l_n/k_n + conj(φ_n(0)/k_n) φ_{n+1}(0)/k_{n+1}
    let lhs = seq.l(n + 1) / kn1;
    let a = seq.l(n) / kn;
    let b = seq.r_dual(n) * p1 / kn1;
    let scale = lhs.norm().max(a.norm()).max(b.norm());
    report.push(
        "l_recursion",
        n as i64,
        Point::label("scalar"),
        (lhs - a - b).norm(),
        scale,
        tol,
    );
    Ok(report)
}

/// max_{m,n ≤ n_max} |∫ φ_m conj(φ_n) w dθ − δ_{mn}| by quadrature (real weights).
pub fn orthonormality_defect(seq: &OpucSequence, n_max: usize) -> Result<f64> {
    let spec = &seq.moments.symbol;
    if !seq.hermitian {
        return Err(Error::domain(
            "orthonormality by quadrature is defined for real weights",
        ));
    }
    let n_max = n_max.min(seq.n_max());
    let pairs: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=n).map(move |m| (m, n))).collect();
    let res = spec.quadrature().integrate_vec(pairs.len(), |p, out| {
        let w = spec.weight(p);
        let vals: Vec<C64> = (0..=n_max).map(|n| poly::eval(seq.phi(n), p.xi)).collect();
        for (slot, &(m, n)) in out.iter_mut().zip(&pairs) {
            *slot = vals[m] * vals[n].conj() * w;
        }
    })?;
    Ok(pairs
        .iter()
        .zip(&res.values)
        .map(|(&(m, n), v)| (v - if m == n { ONE } else { ZERO }).norm())
        .fold(0.0, f64::max))
}

/// Residuals of Δ_n (product formula) against LU, and of k_n² against Δ_n/(2πΔ_{n+1}).
pub fn check_determinants(seq: &OpucSequence, n_max: usize, tol: f64) -> Result<ResidualReport> {
    let mut report = ResidualReport::new();
    let mut dets = Vec::new();
    for n in 0..=(n_max + 1).min(seq.n_max() + 1) {
        dets.push(det_lu(&build_toeplitz(&seq.moments, n)?).value);
    }
    for n in 1..dets.len() {
        let prod = delta_product(seq, n)?;
        report.compare(
            "delta_product_vs_lu",
            n as i64,
            Point::label("scalar"),
            prod,
            dets[n],
            tol,
        );
    }
    for n in 0..dets.len() - 1 {
        let via_dets = dets[n] / (dets[n + 1] * (2.0 * PI));
        report.compare(
            "kn2_vs_determinants",
            n as i64,
            Point::label("scalar"),
            seq.kn2(n),
            via_dets,
            tol,
        );
    }
    Ok(report)
}

/// Zeros of φ_n.
pub fn zeros(seq: &OpucSequence, n: usize) -> Result<Vec<C64>> {
    poly::roots(seq.entry(n)?.coeffs.as_slice())
}
