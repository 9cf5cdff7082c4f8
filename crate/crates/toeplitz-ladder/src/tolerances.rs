//! Tolerances used by the verification suites.
//!
//! All pass/fail decisions compare a relative residual (residual divided by
//! the largest term of the identity) against one of these constants.

/// Closed-form vs oracle agreement for determinants and k_n, φ_n(0).
pub const DETERMINANT: f64 = 1e-9;

/// Szegő recurrences and the l_n recursion.
pub const RECURRENCE: f64 = 1e-9;

/// Orthonormality by quadrature.
pub const ORTHONORMALITY: f64 = 1e-8;

/// The sum and difference compatibility conditions.
pub const COMPATIBILITY: f64 = 1e-8;

/// Compatibility conditions when the ladder functions come from quadrature on a complex weight.
pub const COMPATIBILITY_POLES: f64 = 1e-6;

/// Lowering relation, compared coefficient-wise.
pub const LOWERING: f64 = 1e-9;

/// Second-order differential equation at sample points.
pub const ODE: f64 = 1e-8;

/// Coefficient match of P, Q against their closed specialisation.
pub const ODE_COEFFICIENTS: f64 = 1e-10;

/// Quadrature ladder vs closed ladder.
pub const LADDER_QUADRATURE: f64 = 1e-8;

/// Auxiliary integrals (L_n constancy, a_n = t/2, residues of B_n).
pub const AUXILIARY: f64 = 1e-8;

/// The second-order difference equation for m_n².
pub const MN2_DIFFERENCE: f64 = 1e-12;

/// Discriminant routes.
pub const DISCRIMINANT: f64 = 1e-8;

/// Δ_n k_n |D| identity.
pub const DISCRIMINANT_IDENTITY: f64 = 1e-9;

/// Hypergeometric representation vs Gram polynomials.
pub const HYPERGEOMETRIC: f64 = 1e-8;

/// Bessel-weight step identities.
pub const BESSEL_STEPS: f64 = 1e-8;

/// dP2 orbit vs Gram oracle for n ≤ 10.
pub const DP2_SHORT: f64 = 1e-8;

/// dP2 orbit vs Gram oracle for n ≤ 25 at extended precision.
pub const DP2_LONG: f64 = 1e-12;

/// Residue identities and the one-pole recursion.
pub const ONE_POLE: f64 = 1e-6;

/// Residue identities with two or more poles.
pub const MULTI_POLE: f64 = 1e-5;

/// Relative distance that the asymptotic ratio must reach at the largest n.
pub const ASYMPTOTIC_RATIO: f64 = 0.1;

/// Every tolerance with its lower-case name.
pub fn all() -> Vec<(&'static str, f64)> {
    vec![
        ("determinant", DETERMINANT),
        ("recurrence", RECURRENCE),
        ("orthonormality", ORTHONORMALITY),
        ("compatibility", COMPATIBILITY),
        ("compatibility_poles", COMPATIBILITY_POLES),
        ("lowering", LOWERING),
        ("ode", ODE),
        ("ode_coefficients", ODE_COEFFICIENTS),
        ("ladder_quadrature", LADDER_QUADRATURE),
        ("auxiliary", AUXILIARY),
        ("mn2_difference", MN2_DIFFERENCE),
        ("discriminant", DISCRIMINANT),
        ("discriminant_identity", DISCRIMINANT_IDENTITY),
        ("hypergeometric", HYPERGEOMETRIC),
        ("bessel_steps", BESSEL_STEPS),
        ("dp2_short", DP2_SHORT),
        ("dp2_long", DP2_LONG),
        ("one_pole", ONE_POLE),
        ("multi_pole", MULTI_POLE),
        ("asymptotic_ratio", ASYMPTOTIC_RATIO),
    ]
}
