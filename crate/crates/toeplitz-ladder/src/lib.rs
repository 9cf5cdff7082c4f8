//! Toeplitz determinants and orthogonal polynomials on the unit circle for
//! semi-classical symbols.
//!
//! A symbol w on the unit circle is semi-classical when v'(z) = −w'/w is a
//! rational function. For such symbols the orthonormal polynomials φ_n obey
//! a lowering relation
//!
//! ```text
//! φ_n'(z) = A_n(z) φ_{n−1}(z) − B_n(z) φ_n(z)
//! ```
//!
//! with rational A_n, B_n, and the compatibility of this relation with the
//! Szegő recurrences yields nonlinear difference equations for the
//! reflection data r_n = φ_n(0)/k_n.
//!
//! The crate covers three families:
//!
//! * the pure Fisher–Hartwig symbol (1−z)^{α+iβ}(1−1/z)^{α−iβ}, with closed
//!   forms for k_n, φ_n(0), Δ_n (Barnes G), the polynomials themselves
//!   (terminating ₂F₁) and their discriminants,
//! * the Bessel symbol e^{t cos θ}, whose r_n obey discrete Painlevé II,
//! * exponentials with simple poles, e^{tz} ∏ ((z − z_a)/z)^{g_a}.
//!
//! Every closed form is paired with an independent route (LU determinants,
//! Gram-matrix solves, quadrature) and the identities are exposed as
//! residual checks that produce a [`report::ResidualReport`].
//!
//! ```
//! use toeplitz_ladder::symbols::{MomentSequence, SymbolSpec};
//! use toeplitz_ladder::opuc::{det_lu, build_toeplitz};
//!
//! let spec = SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap();
//! let moments = MomentSequence::compute(&spec, 2).unwrap();
//! let det = det_lu(&build_toeplitz(&moments, 2).unwrap()).value;
//! let pi = std::f64::consts::PI;
//! assert!((det.re - 3.0 / (16.0 * pi * pi)).abs() < 1e-15);
//! ```

pub mod diffeq;
pub mod error;
pub mod export;
pub mod fh;
pub mod ladder;
pub mod opuc;
pub mod par;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod report;
pub mod specialfn;
pub mod symbols;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
