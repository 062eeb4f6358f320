mod common;

use automorphic::embeddings::LambdaCoords;
use automorphic::gaussian::{mat_inv, mat_mul, reduce_mod, GMat2, GaussHalf, GaussInt, Modulus};
use automorphic::groups::{bianchi_generators, orbit_points, sample_congruence, GroupSpec};
use automorphic::halfspace::{act, herm_to_point, hyp_distance, point_to_herm, transpose_action, Point};
use automorphic::hypergeometric::{gauss_2f1, params_from_indices, HGParams, Index, TriangleData};
use automorphic::scalar::Complex;
use automorphic::theta::{lambda, tau_transform, theta_on_h3_complex, GMat4, TauMat, ThetaChar};
use common::C64;
use proptest::prelude::*;

fn gi() -> impl Strategy<Value = GaussInt> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn small_mat() -> impl Strategy<Value = GMat2> {
    prop::array::uniform4((-50i64..50, -50i64..50)).prop_map(GMat2::from_parts)
}

fn word_matrix(letters: &[usize]) -> GMat2 {
    let gens = bianchi_generators();
    letters.iter().fold(GMat2::identity(), |acc, &l| {
        let g = gens[l / 2];
        let g = if l % 2 == 0 { g } else { g.inv().unwrap() };
        acc.checked_mul(&g).unwrap()
    })
}

fn word() -> impl Strategy<Value = GMat2> {
    prop::collection::vec(0usize..8, 1..=6).prop_map(|w| word_matrix(&w))
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (-2.0f64..2.0, -2.0f64..2.0, -1.5f64..1.5).prop_map(|(x, y, lt)| Point::from_parts(x, y, lt.exp()).unwrap())
}

fn modulus() -> impl Strategy<Value = Modulus> {
    prop_oneof![Just(Modulus::OnePlusI), Just(Modulus::Two)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_multiplicative(a in gi(), b in gi()) {
        prop_assert_eq!(a.checked_mul(b).unwrap().norm().unwrap(), a.norm().unwrap() * b.norm().unwrap());
    }

    #[test]
    fn det_is_multiplicative(g in small_mat(), h in small_mat()) {
        let gh = mat_mul(&g, &h).unwrap();
        prop_assert_eq!(gh.det().unwrap(), g.det().unwrap().checked_mul(h.det().unwrap()).unwrap());
    }

    #[test]
    fn reduction_is_an_idempotent_ring_map(g in small_mat(), h in small_mat(), m in modulus()) {
        let mg = m.generator();
        let rg = reduce_mod(&g, mg).unwrap();
        prop_assert_eq!(reduce_mod(&rg, mg).unwrap(), rg);
        let lhs = reduce_mod(&mat_mul(&g, &h).unwrap(), mg).unwrap();
        let rhs = reduce_mod(&mat_mul(&rg, &reduce_mod(&h, mg).unwrap()).unwrap(), mg).unwrap();
        prop_assert_eq!(lhs, rhs);
        for e in rg.m.iter().flatten() {
            prop_assert!(m.residues::<i64>().contains(e));
        }
    }

    #[test]
    fn inverse_is_an_involution(g in word()) {
        prop_assert!(g.has_unit_det());
        let gi = mat_inv(&g).unwrap();
        prop_assert_eq!(mat_inv(&gi).unwrap(), g);
        prop_assert_eq!(mat_mul(&g, &gi).unwrap(), GMat2::identity());
    }

    #[test]
    fn half_congruence_matches_parity(a in gi(), b in gi()) {
        let (x, y) = (GaussHalf::from_num(a), GaussHalf::from_num(b));
        let d = a.checked_sub(b).unwrap();
        prop_assert_eq!(x.congruent(&y), d.re % 2 == 0 && d.im % 2 == 0);
        prop_assert!(x.reduced().congruent(&x));
    }

    #[test]
    fn hermitian_round_trip(p in point()) {
        let q = herm_to_point(&point_to_herm(&p)).unwrap();
        prop_assert!((q.z - p.z).norm() < 1e-12 && (q.t - p.t).abs() < 1e-12 * p.t.max(1.0));
    }

    #[test]
    fn action_is_an_isometric_homomorphism(g in word(), h in word(), p in point(), q in point()) {
        let lhs = act(&mat_mul(&g, &h).unwrap(), &p).unwrap();
        let rhs = act(&g, &act(&h, &p).unwrap()).unwrap();
        prop_assert!(hyp_distance(&lhs, &rhs) < 1e-10);
        let d = hyp_distance(&p, &q);
        let dg = hyp_distance(&act(&g, &p).unwrap(), &act(&g, &q).unwrap());
        prop_assert!((d - dg).abs() < 1e-10);
    }

    #[test]
    fn single_precision_action_tracks_double(g in word(), p in point()) {
        let q64 = act(&g, &p).unwrap();
        let q32 = act(&g, &p.cast::<f32>()).unwrap().cast::<f64>();
        prop_assert!(hyp_distance(&q64, &q32) < 1e-2);
    }

    #[test]
    fn transpose_is_an_isometric_involution(p in point(), q in point()) {
        let tp = transpose_action(&p);
        prop_assert_eq!(transpose_action(&tp), p);
        let d = hyp_distance(&p, &q);
        prop_assert!((hyp_distance(&tp, &transpose_action(&q)) - d).abs() < 1e-12);
    }

    #[test]
    fn transpose_intertwines_conjugation(g in word(), p in point()) {
        let lhs = transpose_action(&act(&g, &p).unwrap());
        let rhs = act(&g.conj(), &transpose_action(&p)).unwrap();
        prop_assert!(hyp_distance(&lhs, &rhs) < 1e-10);
    }
}

fn symplectic(letters: &[usize]) -> GMat4 {
    let gl = bianchi_generators();
    let herm = [
        GMat2::from_parts([(1, 0), (0, 0), (0, 0), (0, 0)]),
        GMat2::from_parts([(0, 0), (1, 1), (1, -1), (0, 0)]),
    ];
    letters.iter().fold(GMat4::identity(), |acc, &l| {
        let g = match l {
            0..=3 => GMat4::from_gl2(&gl[l]).unwrap(),
            4 | 5 => GMat4::translation(&herm[l - 4]),
            _ => GMat4::j4().unwrap(),
        };
        acc.checked_mul(&g).unwrap()
    })
}

fn max_entry_diff(a: &TauMat<f64>, b: &TauMat<f64>) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a.m[i][j] - b.m[i][j]).norm() / a.m[i][j].norm().max(1.0));
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tau_transform_is_an_action(w1 in prop::collection::vec(0usize..7, 1..4), w2 in prop::collection::vec(0usize..7, 1..4), p in point()) {
        let (g1, g2) = (symplectic(&w1), symplectic(&w2));
        prop_assert!(g1.is_symplectic_unitary() && g2.is_symplectic_unitary());
        let tau = TauMat::from_point(&p);
        let lhs = tau_transform(&g1, &tau_transform(&g2, &tau).unwrap()).unwrap();
        let rhs = tau_transform(&g1.checked_mul(&g2).unwrap(), &tau).unwrap();
        prop_assert!(max_entry_diff(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn level_one_plus_i_thetas_are_real(p in point(), k in 0usize..16) {
        let c = ThetaChar::<i64>::level_one_plus_i_all()[k];
        prop_assert!(theta_on_h3_complex(&c, &p, 1e-12).unwrap().im.abs() < 1e-9);
    }

    #[test]
    fn lambda_has_period_two(x in -3.0f64..3.0, y in 0.2f64..3.0) {
        let t = C64::new(x, y);
        prop_assert!((lambda(t + 2.0, 1e-15).unwrap() - lambda(t, 1e-15).unwrap()).norm() < 1e-11);
    }

    #[test]
    fn lambda_avoids_zero_and_one_in_the_fundamental_domain(x in -0.5f64..0.5, s in 0.0f64..2.0) {
        let y = (1.0 - x * x).sqrt() + s;
        let l = lambda(C64::new(x, y), 1e-15).unwrap();
        prop_assert!(l.norm() > 1e-6 && (l - 1.0).norm() > 1e-6);
    }

    #[test]
    fn hypergeometric_series_is_symmetric(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0, r in 0.0f64..0.95, th in 0.0f64..std::f64::consts::TAU) {
        let x = Complex::from_polar(r, th);
        let u = gauss_2f1(&HGParams::new(a, b, c), x, 1e-14).unwrap();
        let v = gauss_2f1(&HGParams::new(b, a, c), x, 1e-14).unwrap();
        prop_assert_eq!(u, v);
    }

    #[test]
    fn triangle_parameters_satisfy_the_angle_conditions(p in 2u32..40, q in 2u32..40, r in 2u32..40, inf in 0u8..8) {
        let ix = |n: u32, bit: u8| if inf & bit != 0 { Index::Infinite } else { Index::Finite(n) };
        let t = TriangleData::new(ix(p, 1), ix(q, 2), ix(r, 4));
        let h = params_from_indices::<f64>(&t);
        let inv = |i: Index| match i { Index::Finite(n) => 1.0 / n as f64, Index::Infinite => 0.0 };
        prop_assert!(((1.0 - h.c).abs() - inv(t.p)).abs() < 1e-14);
        prop_assert!(((h.c - h.a - h.b).abs() - inv(t.q)).abs() < 1e-14);
        prop_assert!(((h.a - h.b).abs() - inv(t.r)).abs() < 1e-14);
    }

    #[test]
    fn quadric_and_dihedral_symmetry(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let l = LambdaCoords::from_ratios([a, b, c]);
        prop_assert!(l.quadric_residual() <= 1e-12);
        for xi in [[b, a, c], [-a, -b, c], [-a, b, -c], [a, -b, -c], [-b, -a, c], [b, -a, -c], [-b, a, -c]] {
            prop_assert_eq!(LambdaCoords::from_ratios(xi), l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampled_congruence_words_replay(seed in 0u64..1_000, two in any::<bool>()) {
        let spec = GroupSpec::by_name("gamma").unwrap();
        let m = if two { GaussInt::two() } else { GaussInt::one_plus_i() };
        for e in sample_congruence(&spec, m, 5, 8, seed).unwrap() {
            prop_assert_eq!(spec.replay(&e.word).unwrap(), (e.matrix, e.transposed));
        }
    }

    #[test]
    fn whitehead_orbits_have_no_duplicates(p in point()) {
        let orbit = orbit_points(&p, &GroupSpec::whitehead(), 3);
        for (i, a) in orbit.iter().enumerate() {
            for b in &orbit[i + 1..] {
                prop_assert!((a.z - b.z).norm() + (a.t - b.t).abs() > 1e-9);
            }
        }
    }
}
