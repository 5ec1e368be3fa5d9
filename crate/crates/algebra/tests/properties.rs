use std::sync::Arc;

use podforge_algebra::roots::{fp_roots, isolate_real_roots, real_roots_approx};
use podforge_algebra::{Coeff, Field, Fp, Ideal, Matrix, Monomial, Polynomial, Rational, Ring, UPoly};
use proptest::prelude::*;

const P: u32 = 101;

fn fp() -> Field {
    Field::prime(P).unwrap()
}

fn ring3(field: Field) -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], field).unwrap()
}

/// Sparse polynomials in x, y, z with every exponent at most 2.
fn poly_strategy() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
    prop::collection::vec((-9i64..=9, [0u32..=2, 0u32..=2, 0u32..=2]), 0..6)
}

fn build<C: Coeff>(ring: &Arc<Ring>, terms: &[(i64, [u32; 3])]) -> Polynomial<C> {
    let f = ring.field();
    let t = terms.iter().map(|(c, e)| (Monomial::from_exponents(e).unwrap(), C::from_i64(f, *c))).collect();
    Polynomial::from_terms(ring, t)
}

fn point<C: Coeff>(field: Field, v: &[i64; 3]) -> Vec<C> {
    v.iter().map(|&x| C::from_i64(field, x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_q(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let r = ring3(Field::Rational);
        let (a, b, c) = (build::<Rational>(&r, &a), build::<Rational>(&r, &b), build::<Rational>(&r, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a - &b) + &b - a.clone()).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), v in [-20i64..=20, -20i64..=20, -20i64..=20]) {
        let f = fp();
        let r = ring3(f);
        let (a, b) = (build::<Fp>(&r, &a), build::<Fp>(&r, &b));
        let pt = point::<Fp>(f, &v);
        prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
        prop_assert_eq!((&a + &b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
    }

    #[test]
    fn print_parse_round_trip(a in poly_strategy()) {
        let r = ring3(Field::Rational);
        let a = build::<Rational>(&r, &a).scale(&Rational::new(3, 7));
        let back = Polynomial::<Rational>::parse(&r, &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ideal_contains_its_multiples(a in poly_strategy(), b in poly_strategy(), m in poly_strategy()) {
        let f = fp();
        let r = ring3(f);
        let (a, b, m) = (build::<Fp>(&r, &a), build::<Fp>(&r, &b), build::<Fp>(&r, &m));
        let ideal = Ideal::affine(&r, vec![a.clone(), b.clone()]).unwrap();
        prop_assert!(ideal.contains(&a).unwrap());
        prop_assert!(ideal.contains(&(&(&m * &a) + &b)).unwrap());
        // the normal form is the remainder modulo the ideal
        let nf = ideal.normal_form(&m).unwrap();
        prop_assert!(ideal.contains(&(&m - &nf)).unwrap());
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let q = Field::Rational;
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        let m = Matrix::from_rows(q, 5, &rows).unwrap();
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), 5);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn fp_roots_of_split_polynomials(roots in prop::collection::btree_set(0i64..P as i64, 1..6), extra in 0i64..P as i64) {
        let f = fp();
        // prod (x - r) * (x^2 + x + extra); the quadratic may add roots of its own
        let mut poly = UPoly::<Fp>::from_i64(f, &[1]);
        for r in &roots {
            poly = poly.mul(&UPoly::from_i64(f, &[-r, 1]));
        }
        poly = poly.mul(&UPoly::from_i64(f, &[extra, 1, 1]));
        let found = fp_roots(&poly);
        for r in &roots {
            prop_assert!(found.contains(&Fp::from_i64(f, *r)));
        }
        // oracle: brute force over the field
        let brute = (0..P as i64).filter(|&x| poly.eval(&Fp::from_i64(f, x)).is_zero()).count();
        prop_assert_eq!(found.len(), brute);
    }

    #[test]
    fn sturm_counts_distinct_integer_roots(roots in prop::collection::btree_set(-20i64..=20, 1..7), twice in any::<bool>()) {
        let q = Field::Rational;
        let mut poly = UPoly::<Rational>::from_i64(q, &[1]);
        for r in &roots {
            poly = poly.mul(&UPoly::from_i64(q, &[-r, 1]));
        }
        if twice {
            // a repeated root and an irreducible factor change nothing
            let first = *roots.iter().next().unwrap();
            poly = poly.mul(&UPoly::from_i64(q, &[-first, 1])).mul(&UPoly::from_i64(q, &[1, 0, 1]));
        }
        prop_assert_eq!(isolate_real_roots(&poly).len(), roots.len());
        let approx = real_roots_approx(&poly, 40);
        let tol = Rational::new(1, 1 << 30);
        for (x, r) in approx.iter().zip(roots.iter()) {
            let d = x.clone() - Rational::from_integer(*r);
            prop_assert!(d.clone() * d.clone() <= tol.clone() * tol.clone(), "{x} vs {r}");
        }
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-5i64..=5, 1..6), b in prop::collection::vec(-5i64..=5, 1..6), c in prop::collection::vec(-5i64..=5, 1..4)) {
        let q = Field::Rational;
        let (a, b, c) = (UPoly::<Rational>::from_i64(q, &a), UPoly::from_i64(q, &b), UPoly::from_i64(q, &c));
        prop_assume!(!c.is_zero());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = ac.gcd(&bc);
        if !ac.is_zero() || !bc.is_zero() {
            prop_assert!(ac.rem(&g).is_zero());
            prop_assert!(bc.rem(&g).is_zero());
            prop_assert!(g.rem(&c.monic()).is_zero());
        }
        let (quot, rem) = ac.div_rem(&c);
        prop_assert_eq!(quot.mul(&c).add(&rem), ac);
    }

    #[test]
    fn field_inverses(n in 1i64..10_000, d in 1i64..10_000) {
        let x = Rational::new(n, d);
        prop_assert!((x.clone() * x.inv().unwrap()).is_one());
        let f = fp();
        let y = Fp::from_i64(f, n);
        if !y.is_zero() {
            prop_assert!((y * y.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn twisted_cubic_invariants() {
    // oracle: the rational normal curve of degree 3 has 3 quadrics, genus 0
    let r = Ring::new(&["a", "b", "c", "d"], fp()).unwrap();
    let ideal = Ideal::<Fp>::parse(&r, &["a*c-b^2", "b*d-c^2", "a*d-b*c"]).unwrap();
    let h = ideal.hilbert_data().unwrap();
    assert_eq!(h.summary(), (1, 3, Some(0)));
}

#[test]
fn complete_intersection_degree() {
    // Bezout: two generic quadrics in P^3 meet in a quartic curve of genus 1
    let r = Ring::new(&["a", "b", "c", "d"], fp()).unwrap();
    let ideal = Ideal::<Fp>::parse(&r, &["a^2+b^2-c^2+3*d^2", "a*b+c*d+2*b^2-d^2"]).unwrap();
    assert_eq!(ideal.hilbert_data().unwrap().summary(), (1, 4, Some(1)));
}
