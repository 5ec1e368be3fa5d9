mod common;

use common::{cayley, leg, planar_leg, q, rational, sphere_oracle, triple, zero};
use podforge::constructions::{planar_leg_point, planar_point_to_leg};
use podforge::duality::{
    dual_space, leg_pair_point, leg_to_point, point_to_leg, recover_leg_pairs, sphere_value, BilinearForm, FormKind,
    LinearSubspace, RecoveredPair, Side,
};
use podforge::models::{self, IsometryPoint, Leg, Y_PINV_VARS};
use podforge_algebra::{Coeff, Field, Rational};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn swap(l: &Leg) -> Leg {
    Leg::new(l.b.clone(), l.a.clone(), l.d2.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn legs_land_on_y(l in leg()) {
        let y = models::ideal_y::<Rational>(Q);
        let p = leg_to_point::<Rational>(&l, Q).unwrap().coords();
        for g in y.generators() {
            prop_assert!(g.evaluate(&p).is_zero());
        }
    }

    #[test]
    fn rational_motions_land_on_x(k in triple(), t in triple()) {
        let x = models::ideal_x::<Rational>(Q);
        let p = IsometryPoint::from_affine(cayley(&k), t).coords();
        for g in x.generators() {
            prop_assert!(g.evaluate(&p).is_zero(), "{g}");
        }
    }

    #[test]
    fn leg_round_trip(l in leg()) {
        let p = leg_to_point::<Rational>(&l, Q).unwrap();
        prop_assert_eq!(point_to_leg(&p).unwrap(), l);
    }

    #[test]
    fn planar_leg_round_trip(l in planar_leg()) {
        let p = planar_leg_point::<Rational>(&l, Q).unwrap();
        prop_assert_eq!(planar_point_to_leg(&p).unwrap(), l);
    }

    #[test]
    fn sphere_condition_matches_distance(k in triple(), t in triple(), l in leg()) {
        let m = cayley(&k);
        let sigma = IsometryPoint::from_affine(m.clone(), t.clone());
        let expected = sphere_oracle(&m, &t, &l);
        prop_assert_eq!(sphere_value(&l, &sigma).unwrap(), expected.clone());
        // the bilinear pairing of the two points is the same number
        let form = BilinearForm::<Rational>::new(FormKind::Bsc17, Q);
        let pairing = form.eval(&sigma.coords(), &leg_to_point::<Rational>(&l, Q).unwrap().coords());
        prop_assert_eq!(pairing, expected);
    }

    #[test]
    fn swapped_legs_share_their_point(l in leg()) {
        prop_assert_eq!(leg_pair_point(&l), leg_pair_point(&swap(&l)));
    }

    #[test]
    fn recovered_pairs_reproduce_the_point(l in leg()) {
        let pt = leg_pair_point(&l);
        match recover_leg_pairs(&pt).unwrap() {
            RecoveredPair::Rational(pair) => {
                prop_assert!(pair.first == l || pair.first == swap(&l));
                prop_assert_eq!(leg_pair_point(&pair.first), pt);
            }
            RecoveredPair::Quadratic { .. } => prop_assert!(false, "rational anchors always split rationally"),
        }
    }

    #[test]
    fn alpha_images_satisfy_the_determinant_cubic(l in planar_leg()) {
        let r = models::ring(&Y_PINV_VARS, Q);
        let cubic = models::y_pinv_cubic::<Rational>(&r);
        let p = leg_to_point::<Rational>(&l, Q).unwrap().planar_sym_coords();
        prop_assert!(cubic.evaluate(&p).is_zero());
        // oracle: S = a b^t + b a^t is a sum of two rank-one matrices
        let at = [q(1), l.a[0].clone(), l.a[1].clone()];
        let bt = [q(1), l.b[0].clone(), l.b[1].clone()];
        let s: [[Rational; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| at[i].clone() * bt[j].clone() + bt[i].clone() * at[j].clone())
        });
        let det = (0..3).fold(zero(), |acc, j| {
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            acc + s[0][j].clone() * (s[1][c0].clone() * s[2][c1].clone() - s[1][c1].clone() * s[2][c0].clone())
        });
        prop_assert!(det.is_zero());
    }

    #[test]
    fn dual_is_an_involution(
        kind in prop::sample::select(vec![FormKind::Bsc17, FormKind::Sbsc11, FormKind::BscPlanar10, FormKind::SbscPlanar7]),
        left in any::<bool>(),
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 17), 0..6),
    ) {
        let form = BilinearForm::<Rational>::new(kind, Q);
        let (side, back, ambient) = if left {
            (Side::Left, Side::Right, form.left.clone())
        } else {
            (Side::Right, Side::Left, form.right.clone())
        };
        let vectors: Vec<Vec<Rational>> = rows.iter().map(|r| r[..ambient.len()].iter().map(|&x| q(x)).collect()).collect();
        let s = LinearSubspace::points(&ambient, &vectors, Q).unwrap();
        let dual = dual_space(&s, &form, side).unwrap();
        prop_assert_eq!(dual.rank() + s.rank(), ambient.len());
        prop_assert_eq!(dual_space(&dual, &form, back).unwrap(), s.to_points());
        // every pair pairs to zero
        for u in &s.to_points().basis {
            for w in &dual.basis {
                let v = if left { form.eval(u, w) } else { form.eval(w, u) };
                prop_assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn corrected_length_inverts(l in leg(), c in rational()) {
        // shifting the corrected length by c shifts d^2 by -c
        let p = leg_to_point::<Rational>(&l, Q).unwrap();
        let shifted = podforge::models::LegPoint { z: p.z.clone(), l: p.l.clone() + c.clone() };
        prop_assert_eq!(point_to_leg(&shifted).unwrap().d2, l.d2.clone() - c);
    }
}

#[test]
fn identity_fixes_every_anchor() {
    let id = IsometryPoint::<Rational>::identity(Q);
    let a = [q(3), Rational::new(-1, 2), q(7)];
    assert_eq!(id.apply(&a).unwrap(), a);
    let l = Leg::new(a.clone(), a, q(0));
    assert_eq!(sphere_value(&l, &id).unwrap(), q(0));
}
