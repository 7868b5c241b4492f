use proptest::prelude::*;
use sympdet_core::generators::{generate_seeded, GeneratorConfig};
use sympdet_core::linalg::inverse;
use sympdet_core::symplectic::{
    block_pair, embed_pair, form_matrix, membership_residual, membership_threshold,
    theorem_certificate, unitary_factorization, unitary_split_det,
};
use sympdet_core::{
    log_det, random_gaussian, CMatrix, Complex, RMatrix, Rng, Scalar, SquareMatrix,
    SymplecticKind, ToleranceConfig, C64,
};

fn sample<T: Scalar>(kind: SymplecticKind, n: usize, seed: u64) -> SquareMatrix<T> {
    generate_seeded(&GeneratorConfig::new(kind, n, seed)).unwrap()
}

fn is_member<T: Scalar<Real = f64>>(a: &SquareMatrix<T>, kind: SymplecticKind) -> bool {
    membership_residual(a, kind).unwrap() <= membership_threshold(a, 1e-8)
}

#[test]
fn form_identities_for_small_dimensions() {
    for n in 1..=8 {
        let j: RMatrix = form_matrix(n).unwrap();
        let id = RMatrix::identity(2 * n);
        assert_eq!(&j * &j, -&id);
        assert_eq!(j.transpose(), -&j);
        assert_eq!(inverse(&j).unwrap(), j.transpose());
        assert!(log_det(&j).distance_to(Complex::new(1.0, 0.0)) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn groups_closed_under_product_and_inverse(seed in any::<u64>(), n in 1usize..6) {
        let a: RMatrix = sample(SymplecticKind::RealSymplectic, n, seed);
        let b: RMatrix = sample(SymplecticKind::RealSymplectic, n, seed.wrapping_add(1));
        prop_assert!(is_member(&(&a * &b), SymplecticKind::RealSymplectic));
        prop_assert!(is_member(&inverse(&a).unwrap(), SymplecticKind::RealSymplectic));
        for kind in [SymplecticKind::ComplexSymplectic, SymplecticKind::ConjugateSymplectic] {
            let a: CMatrix = sample(kind, n, seed);
            let b: CMatrix = sample(kind, n, seed.wrapping_add(1));
            prop_assert!(is_member(&(&a * &b), kind), "{kind} product");
            prop_assert!(is_member(&inverse(&a).unwrap(), kind), "{kind} inverse");
        }
    }

    #[test]
    fn real_samples_certify(seed in any::<u64>(), n in 1usize..8) {
        let a: RMatrix = sample(SymplecticKind::RealSymplectic, n, seed);
        let cert = theorem_certificate(&a, SymplecticKind::RealSymplectic, &ToleranceConfig::default()).unwrap();
        prop_assert!(cert.passed(), "{:?}", cert.narrative());
    }

    #[test]
    fn complex_samples_certify(seed in any::<u64>(), n in 1usize..8) {
        let a: CMatrix = sample(SymplecticKind::ComplexSymplectic, n, seed);
        let cert = theorem_certificate(&a, SymplecticKind::ComplexSymplectic, &ToleranceConfig::default()).unwrap();
        prop_assert!(cert.passed(), "{:?}", cert.narrative());
    }
}

#[test]
fn real_block_determinant_splits() {
    let mut rng = Rng::new(11);
    for i in 0..500 {
        let n = 1 + i % 8;
        let c: RMatrix = random_gaussian(&mut rng, n);
        let d: RMatrix = random_gaussian(&mut rng, n);
        let pair = sympdet_core::symplectic::BlockPair::new(c, d, SymplecticKind::RealSymplectic).unwrap();
        let dense = log_det(&embed_pair(&pair));
        let (plus, minus) = unitary_split_det(&pair).unwrap();
        assert!(dense.relative_distance(&plus.modulus_sqr()) <= 1e-10);
        assert!(minus.relative_distance(&plus.conj()) <= 1e-10);
        assert!(dense.phase.re > 0.0 || dense.is_zero());
    }
}

#[test]
fn unitary_factorization_reassembles() {
    let mut rng = Rng::new(5);
    for n in 1..6 {
        let c: CMatrix = random_gaussian(&mut rng, n);
        let d: CMatrix = random_gaussian(&mut rng, n);
        let pair = sympdet_core::symplectic::BlockPair::new(c, d, SymplecticKind::RealSymplectic).unwrap();
        let (u, mid, u_star) = unitary_factorization(&pair).unwrap();
        let dense = embed_pair(&pair);
        assert!((&(&u * &mid) * &u_star).distance(&dense) <= 1e-12 * dense.frobenius_norm());
    }
}

#[test]
fn conjugate_variant_needs_complex_scalars() {
    let a: RMatrix = sample(SymplecticKind::RealSymplectic, 2, 0);
    assert!(block_pair(&a, SymplecticKind::ComplexSymplectic).is_err());
    let z: CMatrix = sample(SymplecticKind::ComplexSymplectic, 2, 0);
    let pair = block_pair(&z, SymplecticKind::ComplexSymplectic).unwrap();
    assert!(unitary_split_det(&pair).is_err());
}

#[test]
fn non_members_are_rejected() {
    let a = RMatrix::from_diagonal(&[3.0, 3.0]);
    assert!(theorem_certificate(&a, SymplecticKind::RealSymplectic, &ToleranceConfig::default()).is_err());
    let phase = SquareMatrix::scalar_identity(4, C64::from_polar(1.0, 0.3));
    assert!(is_member(&phase, SymplecticKind::ConjugateSymplectic));
    assert!(!is_member(&phase, SymplecticKind::ComplexSymplectic));
}
