use proptest::prelude::*;
use sympdet_core::{
    log_det, parse_matrix, random_gaussian, write_matrix, AnyMatrix, CMatrix, Complex,
    LuFactorization, RMatrix, Rng, SquareMatrix, C64,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = Rng::new(seed);
        let a: CMatrix = random_gaussian(&mut rng, n);
        let b: CMatrix = random_gaussian(&mut rng, n);
        let lhs = log_det(&(&a * &b));
        prop_assert!(lhs.relative_distance(&(log_det(&a) * log_det(&b))) < 1e-10);
    }

    #[test]
    fn det_of_transpose_and_conjugate(seed in any::<u64>(), n in 1usize..12) {
        let a: CMatrix = random_gaussian(&mut Rng::new(seed), n);
        let d = log_det(&a);
        prop_assert!(log_det(&a.transpose()).relative_distance(&d) < 1e-10);
        prop_assert!(log_det(&a.conjugate()).relative_distance(&d.conj()) < 1e-10);
        prop_assert!(log_det(&a.conj_transpose()).relative_distance(&d.conj()) < 1e-10);
    }

    #[test]
    fn real_det_phase_is_a_sign(seed in any::<u64>(), n in 1usize..16) {
        let a: RMatrix = random_gaussian(&mut Rng::new(seed), n);
        let d = log_det(&a);
        prop_assert_eq!(d.phase.im, 0.0);
        prop_assert_eq!(d.phase.re.abs(), 1.0);
    }

    #[test]
    fn lu_reconstruction_within_bound(seed in any::<u64>(), n in 1usize..=32) {
        let a: CMatrix = random_gaussian(&mut Rng::new(seed), n);
        let lu = LuFactorization::new(&a);
        prop_assert!(lu.reconstruction_residual(&a) <= lu.reconstruction_bound(&a));
    }

    #[test]
    fn solve_inverts(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = Rng::new(seed);
        let a: RMatrix = random_gaussian(&mut rng, n);
        let b: RMatrix = random_gaussian(&mut rng, n);
        let x = LuFactorization::new(&a).solve(&b).unwrap();
        let scale = a.frobenius_norm() * x.frobenius_norm() + b.frobenius_norm();
        prop_assert!((&a * &x).distance(&b) <= 1e-12 * scale);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = Rng::new(seed);
        let r: RMatrix = random_gaussian(&mut rng, n);
        let c: CMatrix = random_gaussian(&mut rng, n);
        prop_assert_eq!(parse_matrix::<f64>(&write_matrix(&r)).unwrap(), AnyMatrix::Real(r));
        prop_assert_eq!(parse_matrix::<f64>(&write_matrix(&c)).unwrap(), AnyMatrix::Complex(c));
    }
}

#[test]
fn lu_bound_over_many_sizes() {
    let mut rng = Rng::new(1);
    for i in 0..1000 {
        let n = 1 + i % 32;
        let a: RMatrix = random_gaussian(&mut rng, n);
        let lu = LuFactorization::new(&a);
        assert!(lu.reconstruction_residual(&a) <= lu.reconstruction_bound(&a), "n = {n}");
    }
}

#[test]
fn powers_of_scaled_identity_do_not_overflow() {
    let a = SquareMatrix::scalar_identity(64, 1e10f64);
    let d = log_det(&a);
    let k = 50;
    let p = d.powi(k);
    let expected = 64.0 * k as f64 * 1e10f64.ln();
    assert!(p.log_magnitude.is_finite());
    assert!((p.log_magnitude - expected).abs() <= 1e-12 * expected);
    assert_eq!(p.phase, Complex::new(1.0, 0.0));

    let tiny = log_det(&SquareMatrix::scalar_identity(64, C64::new(0.0, 1e-10)));
    assert!(tiny.log_magnitude.is_finite() && !tiny.is_zero());
    // i^64 = 1
    assert!(tiny.distance_to(Complex::new(tiny.magnitude(), 0.0)) <= 1e-12);
}

#[test]
fn singular_matrix_has_zero_determinant() {
    let mut rng = Rng::new(3);
    let mut a: RMatrix = random_gaussian(&mut rng, 5);
    for j in 0..5 {
        a[(4, j)] = a[(0, j)] * 2.0;
    }
    // Exactly dependent rows may still leave rounding noise in the last pivot.
    let d = log_det(&a);
    assert!(d.is_zero() || d.log_magnitude < -25.0);
    assert!(log_det(&RMatrix::zeros(3)).is_zero());
    assert!(LuFactorization::new(&RMatrix::zeros(3)).solve(&RMatrix::identity(3)).is_err());
}
