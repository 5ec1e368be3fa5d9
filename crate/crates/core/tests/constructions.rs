mod common;

use common::q;
use podforge::constructions::{
    conic_product_legs, create_infinity_pod_seeded, cubic_line_symmetric, duporcq_sixth_leg, planar_configuration_ideal,
    planar_leg_point, symmetroid_pencil, zero_length_lift, Conic, InfinityPodBundle, RandomParams,
};
use podforge::duality::{BilinearForm, FormKind};
use podforge::models::Leg;
use podforge::verify::{sample_curve_points, verify_bundle_exact};
use podforge_algebra::{Coeff, Field, Fp, Ideal, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PAIRS: usize = 25;

fn big_prime() -> Field {
    Field::prime(32003).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples both curves and checks every configuration against every leg.
fn all_pairs_vanish(kind: FormKind, configs: &Ideal<Fp>, legs: &Ideal<Fp>, seed: u64) {
    let form = BilinearForm::<Fp>::new(kind, configs.ring().field());
    assert_eq!(configs.ring().vars(), form.left.as_slice());
    assert_eq!(legs.ring().vars(), form.right.as_slice());
    let mut r = rng(seed);
    let c = sample_curve_points(configs, PAIRS, &mut r).unwrap();
    let l = sample_curve_points(legs, PAIRS, &mut r).unwrap();
    assert_eq!(c.points.len(), PAIRS, "{:?}", c.warning);
    assert_eq!(l.points.len(), PAIRS, "{:?}", l.warning);
    for u in &c.points {
        for w in &l.points {
            assert!(form.eval(u, w).is_zero());
        }
    }
}

fn pentapod() -> Vec<Leg> {
    vec![
        Leg::from_i64([1, 2, 0], [2, 1, 0], 3),
        Leg::from_i64([3, -1, 0], [-3, 2, 0], 7),
        Leg::from_i64([0, 5, 0], [5, 5, 0], 1),
        Leg::from_i64([-2, 7, 0], [1, -7, 0], 2),
        Leg::from_i64([4, 4, 0], [0, 3, 0], 9),
    ]
}

#[test]
fn infinity_pod_passes_the_exact_check() {
    let b = create_infinity_pod_seeded::<Fp>(7, RandomParams::default(), Field::prime(101).unwrap()).unwrap();
    let (report, warnings) = verify_bundle_exact("seed7", &b, PAIRS, &mut rng(0)).unwrap();
    assert!(warnings.is_empty(), "{warnings:?}");
    assert!(report.passed);
    assert_eq!((report.configurations, report.legs), (PAIRS, PAIRS));
    assert_eq!(report.exact_vanishing, Some(true));
}

#[test]
fn bundle_json_round_trip() {
    let b = create_infinity_pod_seeded::<Fp>(3, RandomParams::default(), Field::prime(101).unwrap()).unwrap();
    let text = b.to_json_string();
    let back = InfinityPodBundle::<Fp>::from_json_str(&text).unwrap();
    assert_eq!(back.to_json_string(), text);
    assert_eq!(back.certification, b.certification);
}

#[test]
fn certification_does_not_depend_on_the_prime() {
    let params = RandomParams::default();
    let small = create_infinity_pod_seeded::<Fp>(5, params, Field::prime(101).unwrap()).unwrap();
    let large = create_infinity_pod_seeded::<Fp>(5, params, big_prime()).unwrap();
    assert_eq!(small.seed, large.seed);
    assert_eq!(small.certification.leg_summaries(), large.certification.leg_summaries());
    assert_eq!(small.certification.i_lin_dim, large.certification.i_lin_dim);
}

#[test]
fn sixth_leg_moves_with_the_pentapod() {
    let legs = pentapod();
    let r = duporcq_sixth_leg(&legs).unwrap();
    assert!(r.dual_spans_equal);
    let f = big_prime();
    let configs = planar_configuration_ideal::<Fp>(&legs, f).unwrap();
    let sample = sample_curve_points(&configs, PAIRS, &mut rng(1)).unwrap();
    assert_eq!(sample.points.len(), PAIRS);
    let form = BilinearForm::<Fp>::new(FormKind::BscPlanar10, f);
    let sixth = planar_leg_point::<Fp>(&r.sixth, f).unwrap();
    for c in &sample.points {
        assert!(form.eval(c, &sixth).is_zero());
    }
    // adding the sixth leg cuts out the same curve
    let mut all = legs.clone();
    all.push(r.sixth.clone());
    let six = planar_configuration_ideal::<Fp>(&all, f).unwrap();
    assert!(six.contains_ideal(&configs).unwrap() && configs.contains_ideal(&six).unwrap());
}

#[test]
fn sixth_leg_is_not_an_input_leg() {
    let r = duporcq_sixth_leg(&pentapod()).unwrap();
    assert!(!pentapod().contains(&r.sixth));
    assert!(r.sixth.is_planar());
    // an unrelated leg does not move with the pentapod
    let f = big_prime();
    let configs = planar_configuration_ideal::<Fp>(&pentapod(), f).unwrap();
    let sample = sample_curve_points(&configs, 5, &mut rng(2)).unwrap();
    let form = BilinearForm::<Fp>::new(FormKind::BscPlanar10, f);
    let other = planar_leg_point::<Fp>(&Leg::from_i64([1, 1, 0], [1, 1, 0], 1), f).unwrap();
    assert!(sample.points.iter().any(|c| !form.eval(c, &other).is_zero()));
}

#[test]
fn conic_product_pairs_vanish() {
    let mut r = rng(11);
    let (f, g) = loop {
        let (f, g) = (Conic::random(&mut r, 5), Conic::random(&mut r, 5));
        if !f.is_degenerate() && !g.is_degenerate() {
            break (f, g);
        }
    };
    let lift: Vec<Rational> = [3, -1, 2, 0, 5, 1, -2, 4, 1].map(q).to_vec();
    let pod = conic_product_legs::<Fp>(&f, &g, &lift, big_prime()).unwrap();
    assert_eq!(pod.leg_hilbert.summary(), (1, 4, Some(0)));
    assert_eq!((pod.config_hilbert.dimension, pod.config_hilbert.degree), (1, 20));
    all_pairs_vanish(FormKind::BscPlanar10, &pod.config_ideal, &pod.leg_ideal, 3);
}

#[test]
fn unit_circle_with_zero_lengths() {
    let c = Conic::unit_circle();
    assert!(!c.is_degenerate());
    let pod = conic_product_legs::<Fp>(&c, &c, &zero_length_lift(), big_prime()).unwrap();
    assert_eq!(pod.leg_hilbert.summary(), (1, 4, Some(0)));
}

#[test]
fn cubic_pod_pairs_vanish() {
    let pod = cubic_line_symmetric::<Fp>(1, RandomParams::default(), big_prime()).unwrap();
    assert_eq!(pod.leg_hilbert.summary(), (1, 3, Some(1)));
    assert_eq!((pod.config_hilbert.dimension, pod.config_hilbert.degree), (1, 6));
    assert_eq!(pod.bidegree, (3, 3));
    all_pairs_vanish(FormKind::SbscPlanar7, &pod.config_ideal, &pod.leg_ideal, 4);
}

#[test]
fn symmetroid_over_the_rationals() {
    let pod = cubic_line_symmetric::<Rational>(0, RandomParams::default(), Field::Rational).unwrap();
    let pencil = symmetroid_pencil(&pod).unwrap();
    assert_eq!(pencil.h.homogeneous_degree(), Some(3));
    assert!(pencil.node_count <= 4);
    assert!(pencil.nodes_have_rank_two);
    // E is the first generator and the pencil at (1, 0, 0, 0) is E itself
    let w = [q(1), q(0), q(0), q(0)];
    assert_eq!(pencil.point_at(&w), pencil.generators[0]);
}

#[test]
fn retries_exhausted_is_degenerate_input() {
    let params = RandomParams { bound: 0, retries: 2 };
    let err = cubic_line_symmetric::<Fp>(0, params, big_prime()).unwrap_err();
    assert!(err.is_degenerate_input(), "{err}");
}
