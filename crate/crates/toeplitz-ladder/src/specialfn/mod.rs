//! Complex-argument special functions used by the closed forms.
//!
//! | Function | Method |
//! |----------|--------|
//! | [`log_gamma`] | reflection for Re z < 1/2, upward shift to \|z\| ≥ 15, Stirling series |
//! | [`barnes_g_log`] | upward shift through G(z+1) = Γ(z)G(z) to Re z ≥ 20, asymptotic series |
//! | [`bessel_i`] | ascending series for t ≤ 15, Miller recurrence beyond |
//! | [`hyp2f1_terminating`] | direct Pochhammer recursion |
//!
//! Gamma and Barnes G are returned as logarithms so that callers can
//! combine large and small factors before exponentiating once.

mod barnes;
mod bessel;
mod gamma;
mod hyper;

pub use barnes::barnes_g_log;
pub use bessel::bessel_i;
pub use gamma::{gamma, ln_gamma_real, log_gamma, rgamma};
pub use hyper::{hyp2f1_terminating, hyp2f1_terminating_coeffs};
