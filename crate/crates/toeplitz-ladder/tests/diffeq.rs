use proptest::prelude::*;
use toeplitz_ladder::diffeq::{
    bessel_step_checks, bessel_step_checks_data, dp2_oracle, dp2_orbit, dp2_orbit_ext, dp2_required_digits, dp2_seeds,
    dp2_step, gram_oracle_digits, lambda_trace, one_pole_lambda, one_pole_lambda_at, one_pole_lambda_dual_at,
    one_pole_predictions, one_pole_residue_checks, one_pole_step, BesselData, Extended, Real,
};
use toeplitz_ladder::ladder::{aux_integrals, AuxiliaryIntegrals};
use toeplitz_ladder::opuc::{opuc_solve, OpucSequence};
use toeplitz_ladder::par::Exec;
use toeplitz_ladder::symbols::{MomentSequence, Pole, SymbolSpec};
use toeplitz_ladder::{c64, Error};

const TS: [f64; 3] = [0.5, 1.0, 2.0];

fn solve(spec: &SymbolSpec, n: usize) -> OpucSequence {
    opuc_solve(&MomentSequence::compute(spec, n + 1).unwrap(), n).unwrap()
}

/// I_1(t)/I_0(t) from the power series summed until the terms underflow.
fn bessel_ratio_series(t: f64) -> f64 {
    let x = 0.25 * t * t;
    let (mut i0, mut i1) = (0.0, 0.0);
    let (mut a, mut b) = (1.0, 0.5 * t);
    for m in 0..200 {
        i0 += a;
        i1 += b;
        let mf = m as f64 + 1.0;
        a *= x / (mf * mf);
        b *= x / (mf * (mf + 1.0));
    }
    i1 / i0
}

fn oracle(t: f64, n_max: usize) -> Vec<f64> {
    dp2_oracle(Exec::default(), t, n_max, gram_oracle_digits(t, n_max)).unwrap()
}

fn one_pole() -> SymbolSpec {
    SymbolSpec::exp_poles(1.0, vec![Pole { z: -0.5, g: 2.0 }]).unwrap()
}

#[test]
fn seed_examples() {
    let (r0, r1) = dp2_seeds(1e-8).unwrap();
    assert_eq!(r0, 1.0);
    assert!(r1.abs() < 1e-8);
    let (_, r1) = dp2_seeds(2.0).unwrap();
    assert!((r1 + 0.697775).abs() < 1e-6);
    assert!((r1 + bessel_ratio_series(2.0)).abs() < 1e-15);
    for t in [0.01, 0.5, 1.0, 3.0, 10.0, 40.0] {
        let (_, r1) = dp2_seeds(t).unwrap();
        assert!(-1.0 < r1 && r1 < 0.0);
    }
    assert!(matches!(dp2_seeds(0.0), Err(Error::Domain(_))));
}

#[test]
fn step_examples() {
    for n in [1usize, 4, 17] {
        assert_eq!(dp2_step(&1.3, n, &0.25, &0.0).unwrap(), -0.25);
    }
    let r2 = dp2_step(&2.0, 1, &1.0, &-0.697775).unwrap();
    assert!((r2 - 0.35990).abs() < 1e-5, "{r2}");
    let seq = solve(&SymbolSpec::bessel(2.0).unwrap(), 3);
    assert!((seq.r(2).re - 0.35990).abs() < 1e-5);

    let orbit = dp2_orbit(1.0, 2).unwrap();
    let seq = solve(&SymbolSpec::bessel(1.0).unwrap(), 3);
    assert!((orbit.values[2] - seq.r(2)).norm() < 1e-8 * seq.r(2).norm());

    assert!(matches!(dp2_step(&2.0, 1, &0.3, &1.0), Err(Error::SingularStep { .. })));
    assert!(matches!(
        dp2_step(&2.0, 1, &0.3, &-1.0),
        Err(Error::SingularStep { .. })
    ));
    assert!(matches!(dp2_step(&0.0, 1, &0.3, &0.2), Err(Error::Domain(_))));
}

#[test]
fn r2_at_t_two() {
    let orbit = dp2_orbit(2.0, 2).unwrap();
    let o = oracle(2.0, 2);
    assert!((orbit.values[2].re - 0.3599).abs() < 1e-4);
    assert!((orbit.values[2].re - o[2]).abs() < 1e-4);
}

#[test]
fn bessel_step_examples() {
    let spec = SymbolSpec::bessel(2.0).unwrap();
    let seq = solve(&spec, 5);
    let rep = bessel_step_checks(&spec, &seq, 3).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-8),
        "{:?}",
        rep.failures().next()
    );

    let spec = SymbolSpec::bessel(0.5).unwrap();
    let seq = solve(&spec, 3);
    let rep = bessel_step_checks(&spec, &seq, 1).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-9),
        "{:?}",
        rep.failures().next()
    );

    let (_, r1) = dp2_seeds(0.5).unwrap();
    assert!((seq.m2(0).unwrap().re - (1.0 - r1 * r1)).abs() < 1e-14);
}

#[test]
fn bessel_identities_in_extended_precision() {
    for t in TS {
        let data = BesselData::compute(Exec::default(), Extended::from_f64(t, 40), 9).unwrap();
        for n in 0..=8 {
            let rep = bessel_step_checks_data(&data, n).unwrap();
            assert!(rep.pass(), "t={t} {:?}", rep.failures().next());
        }
    }
}

#[test]
fn quadrature_auxiliaries_in_extended_precision() {
    for t in TS {
        let data = BesselData::compute(Exec::default(), Extended::from_f64(t, 40), 9).unwrap();
        let half = Extended::from_f64(0.5 * t, 40);
        for n in 0..=8 {
            let (a, b, l) = data.auxiliaries(n);
            let (qa, qb, ql) = data.auxiliaries_by_quadrature(n, 64);
            assert!(
                ((qa.clone() - half.clone()) / half.clone()).to_f64().abs() < 1e-40,
                "t={t} n={n}"
            );
            for (x, y) in [(qa, a), (qb, b), (ql, l)] {
                let scale = y.to_f64().abs().max(1.0);
                assert!((x - y).to_f64().abs() < 1e-40 * scale, "t={t} n={n}");
            }
        }
    }
    let data = BesselData::compute(Exec::default(), 2.0, 4).unwrap();
    let (a, _, _) = data.auxiliaries_by_quadrature(3, 32);
    assert!((a - 1.0).abs() < 1e-12);
}

#[test]
fn a_integral_is_half_t() {
    for t in TS {
        let spec = SymbolSpec::bessel(t).unwrap();
        let seq = solve(&spec, 7);
        for n in 0..=6 {
            let AuxiliaryIntegrals::Bessel { a, .. } = aux_integrals(&spec, &seq, n).unwrap() else {
                panic!("wrong family");
            };
            assert!((a - c64(0.5 * t, 0.0)).norm() < 1e-8 * 0.5 * t, "t={t} n={n}: {a}");
        }
    }
}

#[test]
fn orbit_in_standard_precision_matches_gram() {
    for t in TS {
        let orbit = dp2_orbit(t, 10).unwrap();
        let err = orbit.max_relative_error(&oracle(t, 10), 10);
        assert!(err <= 1e-8, "t={t}: max relative error {err:e}");
    }
}

#[test]
fn orbit_with_forty_digits_matches_gram() {
    for t in TS {
        let orbit = dp2_orbit_ext(t, 25, 40).unwrap();
        let err = orbit.max_relative_error(&oracle(t, 25), 25);
        assert!(err <= 1e-12, "t={t}: max relative error {err:e}");
    }
}

#[test]
fn orbit_with_estimated_digits_matches_gram() {
    for t in TS {
        let digits = dp2_required_digits(t, 25, 1e-12);
        let orbit = dp2_orbit_ext(t, 25, digits).unwrap();
        assert_eq!(orbit.precision_digits, digits);
        let err = orbit.max_relative_error(&oracle(t, 25), 25);
        assert!(err <= 1e-12, "t={t} digits={digits}: max relative error {err:e}");
    }
}

#[test]
fn forward_iteration_is_unstable() {
    for t in TS {
        let rows = dp2_orbit(t, 25).unwrap().compare(&oracle(t, 25));
        let (e10, e15, e25) = (rows[10].rel_diff, rows[15].rel_diff, rows[25].rel_diff);
        assert!(e10 < e15 && e15 < e25, "t={t}: {e10:e} {e15:e} {e25:e}");
        assert!(e25 > 1.0);
    }
}

#[test]
fn reflection_data_alternate_in_sign() {
    for t in TS {
        let o = oracle(t, 10);
        for (n, r) in o.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(r * sign > 0.0, "t={t} n={n}: {r}");
            assert!(n == 0 || r.abs() < 1.0);
        }
    }
}

#[test]
fn lambda_at_t_zero_is_minus_c0() {
    let spec = SymbolSpec::exp_poles(0.0, vec![Pole { z: -0.5, g: 2.0 }]).unwrap();
    let seq = solve(&spec, 3);
    let AuxiliaryIntegrals::ExpPoles { c, .. } = aux_integrals(&spec, &seq, 0).unwrap() else {
        panic!("wrong family");
    };
    let lambda = one_pole_lambda_at(&spec, &seq, 0).unwrap();
    assert!((lambda + c[0]).norm() < 1e-15);
}

#[test]
fn one_pole_step_errors() {
    let l = c64(0.1, 0.0);
    assert!(matches!(
        one_pole_step(0.0, -0.5, l, 0, c64(1.0, 0.0), c64(0.3, 0.0)),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        one_pole_step(1.0, -0.5, l, 0, c64(1.0, 0.0), c64(1.0, 0.0)),
        Err(Error::SingularStep { .. })
    ));
}

#[test]
fn one_pole_lambda_is_constant() {
    for (t, z1, g1) in [(1.0, -0.5, 2.0), (2.0, -0.25, 4.0)] {
        let spec = SymbolSpec::exp_poles(t, vec![Pole { z: z1, g: g1 }]).unwrap();
        let seq = solve(&spec, 4);
        let trace = lambda_trace(&spec, &seq, 2).unwrap();
        for (n, l) in trace.iter().enumerate() {
            assert!(
                (l - trace[0]).norm() <= 1e-6 * trace[0].norm().max(1.0),
                "({t},{z1},{g1}) n={n}: {trace:?}"
            );
        }
        assert!(one_pole_lambda(t, z1, g1, &seq).is_ok());
    }
}

#[test]
fn one_pole_step_matches_gram() {
    let spec = one_pole();
    let seq = solve(&spec, 9);
    for p in one_pole_predictions(&spec, &seq, 6).unwrap() {
        assert!(
            p.abs_diff <= 1e-6,
            "n={}: predicted {} vs {}",
            p.n,
            p.predicted,
            p.oracle
        );
    }
}

#[test]
fn one_pole_residue_identities() {
    let spec = one_pole();
    let rep = one_pole_residue_checks(&spec, &solve(&spec, 4), 2).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-6),
        "{:?}",
        rep.failures().next()
    );
}

#[test]
fn two_pole_residue_identities() {
    let spec = SymbolSpec::exp_poles(1.0, vec![Pole { z: -0.5, g: 1.0 }, Pole { z: -0.25, g: 2.0 }]).unwrap();
    let rep = one_pole_residue_checks(&spec, &solve(&spec, 3), 1).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-5),
        "{:?}",
        rep.failures().next()
    );
}

#[test]
fn one_pole_residue_identities_that_hold() {
    // The residue identities at infinity, the origin and the pole itself do hold.
    for spec in [
        one_pole(),
        SymbolSpec::exp_poles(2.0, vec![Pole { z: -0.25, g: 4.0 }]).unwrap(),
    ] {
        let seq = solve(&spec, 6);
        for n in 0..=4 {
            let rep = one_pole_residue_checks(&spec, &seq, n).unwrap();
            for e in rep.entries.iter().filter(|e| e.identity != "pole_lambda_difference") {
                assert!(e.pass, "{} n={n}: {e:?}", spec.label());
            }
        }
    }
}

#[test]
fn one_pole_dual_lambda_is_constant() {
    for (t, z1, g1) in [(1.0, -0.5, 2.0), (2.0, -0.25, 4.0), (0.7, -0.8, 1.25)] {
        let spec = SymbolSpec::exp_poles(t, vec![Pole { z: z1, g: g1 }]).unwrap();
        let seq = solve(&spec, 8);
        let l0 = one_pole_lambda_dual_at(&spec, &seq, 0).unwrap();
        for n in 1..=5 {
            let l = one_pole_lambda_dual_at(&spec, &seq, n).unwrap();
            assert!((l - l0).norm() <= 1e-10, "({t},{z1},{g1}) n={n}: {l} vs {l0}");
        }
    }
}

#[test]
fn one_pole_dual_step_matches_gram() {
    for (t, z1, g1) in [(1.0, -0.5, 2.0), (2.0, -0.25, 4.0), (0.7, -0.8, 1.25)] {
        let spec = SymbolSpec::exp_poles(t, vec![Pole { z: z1, g: g1 }]).unwrap();
        let seq = solve(&spec, 9);
        for p in one_pole_predictions(&spec, &seq, 5).unwrap() {
            let scale = p.oracle.norm().max(1e-3);
            assert!(
                p.abs_diff_dual <= 1e-8 * scale.max(1.0),
                "({t},{z1},{g1}) n={}: {} vs {}",
                p.n,
                p.predicted_dual,
                p.oracle
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn step_inverts(t in 0.1f64..10.0, n in 1usize..30, a in -0.9f64..0.9, b in -0.9f64..0.9) {
        // r_{n+1} + r_{n−1} is symmetric, so stepping back from (r_{n+1}, r_n) recovers r_{n−1}.
        let next = dp2_step(&t, n, &a, &b).unwrap();
        let back = dp2_step(&t, n, &next, &b).unwrap();
        prop_assert!((back - a).abs() <= 1e-9 * (1.0 + next.abs()));
    }

    #[test]
    fn seeds_lie_in_the_unit_interval(t in 1e-6f64..60.0) {
        let (r0, r1) = dp2_seeds(t).unwrap();
        prop_assert_eq!(r0, 1.0);
        prop_assert!(-1.0 < r1 && r1 < 0.0);
        prop_assert!((r1 + bessel_ratio_series(t)).abs() < 1e-12 || t > 30.0);
    }

    #[test]
    fn extended_orbit_agrees_with_double_on_short_ranges(t in 1.0f64..4.0) {
        let f = dp2_orbit(t, 4).unwrap();
        let e = dp2_orbit_ext(t, 4, 40).unwrap();
        for (a, b) in f.values.iter().zip(&e.values) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}
