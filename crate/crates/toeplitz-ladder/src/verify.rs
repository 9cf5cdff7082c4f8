//! Verification suites grouping the identity checks by topic.

use std::fmt;
use std::str::FromStr;

use crate::diffeq::{
    self, bessel_step_checks_data, dp2_oracle, dp2_orbit_ext, gram_oracle_digits, one_pole_predictions, BesselData,
    Extended,
};
use crate::fh::{check_closed_forms, check_discriminant, check_hypergeometric, FhParams};
use crate::ladder::{check_compatibility, check_lowering, check_ode, default_sample_points};
use crate::opuc::{check_determinants, check_recurrences, opuc_solve_with, orthonormality_defect, OpucSequence};
use crate::par::Exec;
use crate::report::{Point, ResidualReport};
use crate::symbols::{Family, MomentSequence, SymbolSpec};
use crate::{tolerances, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Recurrences,
    Ladder,
    Ode,
    Fh,
    Dp2,
    Pole,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["recurrences", "ladder", "ode", "fh", "dp2", "pole", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recurrences => "recurrences",
            Suite::Ladder => "ladder",
            Suite::Ode => "ode",
            Suite::Fh => "fh",
            Suite::Dp2 => "dp2",
            Suite::Pole => "pole",
            Suite::All => "all",
        }
    }

    /// Whether the suite has checks for this symbol.
    pub fn applies_to(self, spec: &SymbolSpec) -> bool {
        match (self, &spec.family) {
            (Suite::Fh, Family::FisherHartwig { .. }) => true,
            (Suite::Dp2, Family::Bessel { .. }) => true,
            (Suite::Pole, Family::ExpPoles { .. }) => true,
            (Suite::Fh | Suite::Dp2 | Suite::Pole, _) => false,
            _ => true,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "recurrences" => Suite::Recurrences,
            "ladder" => Suite::Ladder,
            "ode" => Suite::Ode,
            "fh" => Suite::Fh,
            "dp2" => Suite::Dp2,
            "pole" => Suite::Pole,
            "all" => Suite::All,
            _ => return Err(Error::domain(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest index checked.
    pub n_max: usize,
    /// Decimal digits for the dP2 orbit.
    pub digits: u32,
    pub points: Vec<C64>,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 6,
            digits: 40,
            points: default_sample_points(),
            exec: Exec::default(),
        }
    }
}

fn sequence(spec: &SymbolSpec, opts: &VerifyOptions, extra: usize) -> Result<OpucSequence> {
    let n = opts.n_max + extra;
    let moments = MomentSequence::compute(spec, n + 2)?;
    opuc_solve_with(opts.exec, &moments, n)
}

fn recurrences(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let seq = sequence(spec, opts, 1)?;
    let mut rep = ResidualReport::new();
    for n in 1..=opts.n_max {
        rep.extend(check_recurrences(&seq, n)?);
    }
    rep.extend(check_determinants(&seq, opts.n_max, tolerances::DETERMINANT)?);
    if spec.is_hermitian() {
        let defect = orthonormality_defect(&seq, opts.n_max)?;
        rep.push(
            "orthonormality",
            opts.n_max as i64,
            Point::label("gram"),
            defect,
            1.0,
            tolerances::ORTHONORMALITY,
        );
    }
    Ok(rep)
}

fn ladder(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let seq = sequence(spec, opts, 2)?;
    let mut rep = ResidualReport::new();
    for n in 1..=opts.n_max {
        rep.extend(check_compatibility(spec, &seq, n, &opts.points)?);
        rep.extend(check_lowering(spec, &seq, n, &opts.points)?);
    }
    Ok(rep)
}

fn ode(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let seq = sequence(spec, opts, 2)?;
    let mut rep = ResidualReport::new();
    for n in 1..=opts.n_max {
        rep.extend(check_ode(spec, &seq, n, &opts.points)?);
    }
    Ok(rep)
}

fn fh(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let Family::FisherHartwig { alpha, beta } = spec.family else {
        return Err(Error::domain("the fh suite needs a Fisher–Hartwig symbol"));
    };
    let p = FhParams::new(alpha, beta)?;
    let seq = sequence(spec, opts, 1)?;
    let mut rep = check_closed_forms(&p, &seq, opts.n_max)?;
    for n in 1..=opts.n_max {
        rep.extend(check_discriminant(&p, &seq, n)?);
        rep.extend(check_hypergeometric(&p, &seq, n)?);
    }
    Ok(rep)
}

fn dp2(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let Family::Bessel { t } = spec.family else {
        return Err(Error::domain("the dp2 suite needs a Bessel symbol"));
    };
    let n_max = opts.n_max.max(2);
    let orbit = dp2_orbit_ext(t, n_max, opts.digits)?;
    let oracle = dp2_oracle(opts.exec, t, n_max, gram_oracle_digits(t, n_max))?;
    let mut rep = ResidualReport::new();
    for row in orbit.compare(&oracle) {
        rep.push(
            "dp2_orbit",
            row.n as i64,
            Point::label("values"),
            row.abs_diff,
            row.oracle_r_n.abs(),
            tolerances::DP2_LONG,
        );
    }
    let data = BesselData::compute(opts.exec, Extended::from_f64(t, opts.digits), n_max + 1)?;
    for n in 0..=n_max {
        rep.extend(bessel_step_checks_data(&data, n)?);
    }
    Ok(rep)
}

fn pole(spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    let Family::ExpPoles { poles, .. } = &spec.family else {
        return Err(Error::domain("the pole suite needs an exponential-with-poles symbol"));
    };
    let seq = sequence(spec, opts, 2)?;
    let mut rep = ResidualReport::new();
    for n in 0..=opts.n_max {
        rep.extend(diffeq::one_pole_residue_checks(spec, &seq, n)?);
    }
    if poles.len() == 1 {
        let trace = diffeq::lambda_trace(spec, &seq, 2)?;
        for (n, l) in trace.iter().enumerate().skip(1) {
            rep.compare(
                "pole_lambda_constancy",
                n as i64,
                Point::label("values"),
                *l,
                trace[0],
                tolerances::ONE_POLE,
            );
        }
        for p in one_pole_predictions(spec, &seq, opts.n_max)? {
            rep.compare(
                "pole_step_prediction",
                p.n as i64 + 2,
                Point::label("values"),
                p.predicted,
                p.oracle,
                tolerances::ONE_POLE,
            );
            rep.compare(
                "pole_step_dual_prediction",
                p.n as i64 + 2,
                Point::label("values"),
                p.predicted_dual,
                p.oracle,
                tolerances::ONE_POLE,
            );
        }
    }
    Ok(rep)
}

/// Runs one suite; `All` runs every suite that applies to the symbol.
pub fn run_suite(suite: Suite, spec: &SymbolSpec, opts: &VerifyOptions) -> Result<ResidualReport> {
    match suite {
        Suite::Recurrences => recurrences(spec, opts),
        Suite::Ladder => ladder(spec, opts),
        Suite::Ode => ode(spec, opts),
        Suite::Fh => fh(spec, opts),
        Suite::Dp2 => dp2(spec, opts),
        Suite::Pole => pole(spec, opts),
        Suite::All => {
            let mut rep = ResidualReport::new();
            for s in [
                Suite::Recurrences,
                Suite::Ladder,
                Suite::Ode,
                Suite::Fh,
                Suite::Dp2,
                Suite::Pole,
            ] {
                if s.applies_to(spec) {
                    rep.extend(run_suite(s, spec, opts)?);
                }
            }
            Ok(rep)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn dp2_suite_passes_at_t_two() {
        let spec = SymbolSpec::bessel(2.0).unwrap();
        let rep = run_suite(Suite::Dp2, &spec, &VerifyOptions::default()).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures().next());
    }

    #[test]
    fn fh_suite_passes() {
        let spec = SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap();
        let opts = VerifyOptions {
            n_max: 4,
            ..Default::default()
        };
        let rep = run_suite(Suite::All, &spec, &opts).unwrap();
        assert!(rep.pass(), "{:?}", rep.failures().next());
    }

    #[test]
    fn inapplicable_suite_is_a_domain_error() {
        let spec = SymbolSpec::bessel(1.0).unwrap();
        assert!(matches!(
            run_suite(Suite::Fh, &spec, &VerifyOptions::default()),
            Err(Error::Domain(_))
        ));
    }
}
