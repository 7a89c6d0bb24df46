use howelab_core::correspondence::{
    half_square_grid, lambda_cotangent, lambda_matrix, lambda_projective,
    orbit_dimension_numeric, point_reduction_multiplicity, reduced_space_dimension_check,
    reduced_space_dimensions, verify_cotangent_correspondence, verify_projective_correspondence,
    ActingGroup, SigmaVector,
};
use howelab_core::lie::{is_integral, orbit_dimension, CoadjointOrbitLabel};
use howelab_core::linalg::{haar_unitary, random_skew_hermitian, sample_rng};
use howelab_core::moment::{CotangentPoint, MatrixPoint, ProjectivePoint, SkewHermitian};
use howelab_core::suites::spectral_sample;
use howelab_core::{integrality_preserved, svd_sigma, verify_spectral_correspondence};
use proptest::prelude::*;

#[test]
fn random_points_land_on_paired_labels() {
    for i in 0..200 {
        let d = spectral_sample(4, 3, 2024, i).unwrap();
        assert!(d < 1e-9, "sample {i}: {d:e}");
    }
}

#[test]
fn rotated_normal_forms_pass() {
    let mut rng = sample_rng(3, 3);
    for sigma in [[3.0, 1.0, 0.5], [2.0, 2.0, 0.0], [1.0, 0.0, 0.0]] {
        let z = MatrixPoint::normal_form(5, &sigma).unwrap();
        let u = haar_unitary(&mut rng, 5);
        let v = haar_unitary(&mut rng, 3);
        let w = MatrixPoint::new(&u * z.entries() * &v).unwrap();
        assert!(verify_spectral_correspondence(&w).iter().all(|c| c.passed()));
    }
}

#[test]
fn lambda_is_injective_on_grids() {
    for m in 1..=3 {
        for n in m..=4 {
            let pairs: Vec<_> = half_square_grid(m, 6)
                .iter()
                .map(|s| lambda_matrix(s, n).unwrap())
                .collect();
            for (i, a) in pairs.iter().enumerate() {
                for b in &pairs[i + 1..] {
                    assert_ne!(a.source, b.source);
                    assert_ne!(a.target, b.target);
                }
            }
        }
    }
}

#[test]
fn cotangent_lambda_is_an_involution() {
    let mut rng = sample_rng(10, 0);
    for _ in 0..100 {
        let a = SkewHermitian::project(&random_skew_hermitian(&mut rng, 4));
        let label = a.orbit_label();
        let once = lambda_cotangent(&label);
        let twice = lambda_cotangent(&once.target);
        assert_eq!(twice.target, label);

        let p = CotangentPoint::new(haar_unitary(&mut rng, 4), a).unwrap();
        assert!(verify_cotangent_correspondence(&p).passed());
    }
}

#[test]
fn projective_moment_images_pair_under_lambda() {
    let mut rng = sample_rng(12, 0);
    for k in 1..=5 {
        for _ in 0..50 {
            let p = ProjectivePoint::random(&mut rng, 3, k).unwrap();
            assert!(verify_projective_correspondence(&p).unwrap().passed());
        }
    }
}

#[test]
fn integrality_is_preserved_on_all_models() {
    for m in 1..=4 {
        for s in half_square_grid(m, 6) {
            let pair = lambda_matrix(&s, m + 1).unwrap();
            assert!(integrality_preserved(&pair));
            let all_whole = s.half_squares().iter().all(|h| (h - h.round()).abs() < 1e-9);
            assert_eq!(is_integral(&pair.source), all_whole);
        }
    }
    for k in 1..=6 {
        for d in 0..=k {
            assert!(integrality_preserved(&lambda_projective(-(d as f64), k, 3).unwrap()));
        }
        // non-integral points stay non-integral on both sides
        let pair = lambda_projective(-0.25, k, 3).unwrap();
        assert!(!is_integral(&pair.source) && !is_integral(&pair.target));
    }
}

#[test]
fn reduced_spaces_match_target_orbits() {
    for m in 1..=4 {
        for n in m..=6 {
            for s in half_square_grid(m, 5) {
                assert!(reduced_space_dimension_check(&s, n).unwrap().passed(), "{s:?} n={n}");
            }
        }
    }
}

#[test]
fn stabilizer_bookkeeping_matches_infinitesimal_ranks() {
    // dim G₂·z and dim G_{1,z} read off from the rank of the Lie algebra action
    for m in 1..=3 {
        for n in m..=4 {
            for s in half_square_grid(m, 4) {
                let z = MatrixPoint::normal_form(n, s.values()).unwrap();
                let d = reduced_space_dimensions(&s, n).unwrap();
                assert_eq!(orbit_dimension_numeric(&z, ActingGroup::Right), d.right_orbit);
                assert_eq!(
                    orbit_dimension_numeric(&z, ActingGroup::Left),
                    n * n - d.point_stabilizer
                );
                // Φ₁⁻¹(O_{α₁}) is the joint orbit, fibred over O_{α₁} with fibre G₂·z
                let pair = lambda_matrix(&s, n).unwrap();
                assert_eq!(
                    orbit_dimension_numeric(&z, ActingGroup::Both),
                    orbit_dimension(&pair.source) + d.right_orbit
                );
            }
        }
    }
}

#[test]
fn unpaired_labels_have_empty_preimage() {
    for s in half_square_grid(2, 4) {
        let pair = lambda_matrix(&s, 3).unwrap();
        assert_eq!(point_reduction_multiplicity(&pair.source, &pair.target), 1);
        for t in half_square_grid(2, 4) {
            let other = lambda_matrix(&t, 3).unwrap();
            if other.target != pair.target {
                assert_eq!(point_reduction_multiplicity(&pair.source, &other.target), 0);
            }
        }
    }
    let pos = CoadjointOrbitLabel::from_spectrum(vec![1.0, 0.5]).unwrap();
    assert_eq!(point_reduction_multiplicity(&pos, &pos), 0);
}

proptest! {
    #[test]
    fn svd_sigma_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let z = MatrixPoint::random(&mut rng, 4, 3).unwrap();
        let u = haar_unitary(&mut rng, 4);
        let v = haar_unitary(&mut rng, 3);
        let w = MatrixPoint::new(&u * z.entries() * &v).unwrap();
        let a = svd_sigma(&z);
        let b = svd_sigma(&w);
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_matrix_signs(h in prop::collection::vec(0.0f64..5.0, 1..5), extra in 0usize..3) {
        let s = SigmaVector::from_half_squares(&h).unwrap();
        let n = s.m() + extra;
        let pair = lambda_matrix(&s, n).unwrap();
        prop_assert!(pair.source.spectrum().iter().all(|&x| x >= 0.0));
        prop_assert!(pair.target.spectrum().iter().all(|&x| x <= 0.0));
        prop_assert_eq!(orbit_dimension(&pair.target), reduced_space_dimensions(&s, n).unwrap().reduced);
    }
}
