use std::f64::consts::PI;

use proptest::prelude::*;
use toeplitz_ladder::opuc::{
    build_toeplitz, check_recurrences, delta_product, det_lu, opuc_solve, orthonormality_defect, zeros, OpucSequence,
};
use toeplitz_ladder::poly::{self, star};
use toeplitz_ladder::symbols::{MomentSequence, Pole, SymbolSpec};
use toeplitz_ladder::{c64, C64};

fn solve(spec: &SymbolSpec, n: usize) -> OpucSequence {
    opuc_solve(&MomentSequence::compute(spec, n + 1).unwrap(), n).unwrap()
}

fn families() -> Vec<SymbolSpec> {
    vec![
        SymbolSpec::fisher_hartwig(0.5, 0.0).unwrap(),
        SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(),
        SymbolSpec::fisher_hartwig(0.3, 0.7).unwrap(),
        SymbolSpec::fisher_hartwig(2.0, 1.0).unwrap(),
        SymbolSpec::bessel(0.5).unwrap(),
        SymbolSpec::bessel(1.0).unwrap(),
        SymbolSpec::bessel(2.0).unwrap(),
    ]
}

fn pole_symbols() -> Vec<SymbolSpec> {
    vec![
        SymbolSpec::exp_poles(1.0, vec![Pole { z: -0.5, g: 2.0 }]).unwrap(),
        SymbolSpec::exp_poles(2.0, vec![Pole { z: -0.25, g: 4.0 }]).unwrap(),
        SymbolSpec::exp_poles(1.0, vec![Pole { z: -0.5, g: 1.0 }, Pole { z: -0.25, g: 2.0 }]).unwrap(),
    ]
}

#[test]
fn toeplitz_examples() {
    let flat = MomentSequence::compute(&SymbolSpec::fisher_hartwig(0.0, 0.0).unwrap(), 3).unwrap();
    let t = build_toeplitz(&flat, 3).unwrap();
    for j in 0..3 {
        for k in 0..3 {
            let want = if j == k { 1.0 / (2.0 * PI) } else { 0.0 };
            assert!((t.entries[(j, k)] - c64(want, 0.0)).norm() < 1e-15);
        }
    }

    let fh = MomentSequence::compute(&SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(), 2).unwrap();
    let t = build_toeplitz(&fh, 2).unwrap();
    let want = [[0.5 / PI, -0.25 / PI], [-0.25 / PI, 0.5 / PI]];
    for j in 0..2 {
        for k in 0..2 {
            assert!((t.entries[(j, k)] - c64(want[j][k], 0.0)).norm() < 1e-15);
        }
    }

    let b = MomentSequence::compute(&SymbolSpec::bessel(3.0).unwrap(), 1).unwrap();
    let t = build_toeplitz(&b, 1).unwrap();
    assert!((t.entries[(0, 0)] - c64(0.5 / PI, 0.0)).norm() < 1e-15);
    assert!(build_toeplitz(&b, 3).is_err());
}

#[test]
fn determinant_examples() {
    let flat = MomentSequence::compute(&SymbolSpec::fisher_hartwig(0.0, 0.0).unwrap(), 3).unwrap();
    let d = det_lu(&build_toeplitz(&flat, 3).unwrap());
    assert!((d.value.re - (2.0 * PI).powi(-3)).abs() < 1e-17 && !d.singular);

    let fh = MomentSequence::compute(&SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(), 2).unwrap();
    let d = det_lu(&build_toeplitz(&fh, 2).unwrap()).value;
    assert!((d.re - 3.0 / (16.0 * PI * PI)).abs() < 1e-16);

    let one = det_lu(&build_toeplitz(&fh, 1).unwrap()).value;
    assert!((one.re - 0.5 / PI).abs() < 1e-16);
}

#[test]
fn singular_matrix_is_flagged() {
    let mut t = build_toeplitz(
        &MomentSequence::compute(&SymbolSpec::bessel(1.0).unwrap(), 2).unwrap(),
        2,
    )
    .unwrap();
    t.entries.fill(c64(1.0, 0.0));
    let d = det_lu(&t);
    assert!(d.singular);
    assert_eq!(d.value, c64(0.0, 0.0));
}

#[test]
fn gram_solution_examples() {
    let seq = solve(&SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(), 2);
    let k1 = seq.k(1);
    assert!((seq.kn2(1) - c64(4.0 / 3.0, 0.0)).norm() < 1e-14);
    let monic: Vec<C64> = seq.phi(1).iter().map(|c| c / k1).collect();
    assert!((monic[0] - c64(0.5, 0.0)).norm() < 1e-14);
    assert!((monic[1] - c64(1.0, 0.0)).norm() < 1e-14);
    assert!((seq.r(1) - c64(0.5, 0.0)).norm() < 1e-14);

    for spec in families().into_iter().chain(pole_symbols()) {
        let seq = solve(&spec, 1);
        assert_eq!(seq.phi(0).len(), 1);
        assert!(
            (seq.phi(0)[0] - c64(1.0, 0.0)).norm() < 1e-14,
            "{}: {}",
            spec.label(),
            seq.phi(0)[0]
        );
        assert!((seq.k(0) - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((seq.r(0) - c64(1.0, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn product_examples() {
    let seq = solve(&SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(), 3);
    assert_eq!(delta_product(&seq, 0).unwrap(), c64(1.0, 0.0));
    assert!((delta_product(&seq, 1).unwrap() - c64(0.5 / PI, 0.0)).norm() < 1e-16);
    assert!((delta_product(&seq, 2).unwrap().re - 3.0 / (16.0 * PI * PI)).abs() < 1e-16);
    for spec in families() {
        let seq = solve(&spec, 1);
        assert!((delta_product(&seq, 1).unwrap() - c64(0.5 / PI, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn star_examples() {
    assert_eq!(star(&[c64(1.0, 0.0)]), vec![c64(1.0, 0.0)]);
    let c = c64(0.3, -1.2);
    assert_eq!(star(&[c, c64(1.0, 0.0)]), vec![c64(1.0, 0.0), c.conj()]);
}

#[test]
fn recurrence_examples() {
    let seq = solve(&SymbolSpec::fisher_hartwig(1.0, 0.0).unwrap(), 3);
    let rep = check_recurrences(&seq, 1).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-10),
        "{:?}",
        rep.failures().next()
    );

    let seq = solve(&SymbolSpec::bessel(2.0).unwrap(), 5);
    let rep = check_recurrences(&seq, 3).unwrap();
    assert!(
        rep.entries.iter().all(|e| e.relative < 1e-9),
        "{:?}",
        rep.failures().next()
    );

    let seq = solve(&SymbolSpec::fisher_hartwig(0.0, 0.0).unwrap(), 6);
    for n in 1..6 {
        assert!(check_recurrences(&seq, n)
            .unwrap()
            .entries
            .iter()
            .all(|e| e.absolute == 0.0));
        assert_eq!(seq.phi0(n), c64(0.0, 0.0));
    }
}

#[test]
fn determinant_consistency() {
    for spec in families() {
        let seq = solve(&spec, 15);
        for n in 1..=15 {
            let lu = det_lu(&build_toeplitz(&seq.moments, n).unwrap()).value;
            let prod = delta_product(&seq, n).unwrap();
            let rel = (prod - lu).norm() / lu.norm();
            assert!(rel <= 1e-9, "{} n={n}: {rel:e}", spec.label());
        }
    }
    for spec in pole_symbols() {
        let seq = solve(&spec, 8);
        for n in 1..=8 {
            let lu = det_lu(&build_toeplitz(&seq.moments, n).unwrap()).value;
            let prod = delta_product(&seq, n).unwrap();
            let rel = (prod - lu).norm() / lu.norm();
            assert!(rel <= 1e-9, "{} n={n}: {rel:e}", spec.label());
        }
    }
}

#[test]
fn orthonormal_by_quadrature() {
    for spec in families() {
        let seq = solve(&spec, 8);
        let defect = orthonormality_defect(&seq, 8).unwrap();
        assert!(defect <= 1e-8, "{}: {defect:e}", spec.label());
    }
}

#[test]
fn leading_coefficient_from_determinant_ratio() {
    for spec in families() {
        let seq = solve(&spec, 10);
        for n in 0..10 {
            let a = det_lu(&build_toeplitz(&seq.moments, n).unwrap()).value;
            let b = det_lu(&build_toeplitz(&seq.moments, n + 1).unwrap()).value;
            let ratio = a / (b * 2.0 * PI);
            let rel = (seq.kn2(n) - ratio).norm() / ratio.norm();
            assert!(rel < 1e-9, "{} n={n}: {rel:e}", spec.label());
        }
    }
}

#[test]
fn zeros_lie_inside_the_disc() {
    for spec in families() {
        let seq = solve(&spec, 8);
        for n in 1..=8 {
            let zs = zeros(&seq, n).unwrap();
            assert_eq!(zs.len(), n);
            for z in zs {
                assert!(z.norm() < 1.0, "{} n={n}: |{z}| >= 1", spec.label());
                assert!(poly::eval(seq.phi(n), z).norm() < 1e-8 * seq.k(n).norm());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_involution(coeffs in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8)) {
        let mut p: Vec<C64> = coeffs.into_iter().map(|(a, b)| c64(a, b)).collect();
        let last = p.len() - 1;
        if p[last].norm() == 0.0 {
            p[last] = c64(1.0, 0.0);
        }
        prop_assert_eq!(star(&star(&p)), p);
    }

    #[test]
    fn reflection_data_inside_the_disc(alpha in -0.4f64..3.0, beta in -1.5f64..1.5, t in 0.1f64..5.0) {
        for spec in [SymbolSpec::fisher_hartwig(alpha, beta).unwrap(), SymbolSpec::bessel(t).unwrap()] {
            let seq = solve(&spec, 6);
            for n in 1..=6 {
                prop_assert!(seq.r(n).norm() < 1.0);
                prop_assert!(seq.kn2(n).re > 0.0);
            }
        }
    }

    #[test]
    fn product_formula_matches_lu(alpha in -0.4f64..3.0, beta in -1.5f64..1.5, n in 1usize..10) {
        let spec = SymbolSpec::fisher_hartwig(alpha, beta).unwrap();
        let seq = solve(&spec, n);
        let lu = det_lu(&build_toeplitz(&seq.moments, n).unwrap()).value;
        let prod = delta_product(&seq, n).unwrap();
        prop_assert!((prod - lu).norm() <= 1e-9 * lu.norm());
    }

    #[test]
    fn recurrences_hold(alpha in -0.4f64..3.0, beta in -1.5f64..1.5, n in 1usize..7) {
        let seq = solve(&SymbolSpec::fisher_hartwig(alpha, beta).unwrap(), n + 1);
        let rep = check_recurrences(&seq, n).unwrap();
        prop_assert!(rep.pass(), "{:?}", rep.failures().next());
    }
}
