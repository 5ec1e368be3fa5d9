//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use podforge::models::Leg;
use podforge_algebra::{Coeff, Rational};
use proptest::prelude::*;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn zero() -> Rational {
    q(0)
}

/// Cayley transform `(I + K)(I - K)^{-1}` of the skew matrix with axial
/// vector `k`, written out in closed form:
/// `((1 - |k|^2) I + 2 k k^t + 2 [k]_x) / (1 + |k|^2)`.
pub fn cayley(k: &[Rational; 3]) -> [[Rational; 3]; 3] {
    let n2 = k.iter().fold(zero(), |s, t| s + t.clone() * t.clone());
    let den = (q(1) + n2.clone()).inv().unwrap();
    let cross = [
        [zero(), -k[2].clone(), k[1].clone()],
        [k[2].clone(), zero(), -k[0].clone()],
        [-k[1].clone(), k[0].clone(), zero()],
    ];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let diag = if i == j { q(1) - n2.clone() } else { zero() };
            (diag + q(2) * k[i].clone() * k[j].clone() + q(2) * cross[i][j].clone()) * den.clone()
        })
    })
}

/// `|M a + y - b|^2 - d^2`.
pub fn sphere_oracle(m: &[[Rational; 3]; 3], y: &[Rational; 3], leg: &Leg) -> Rational {
    (0..3).fold(zero(), |acc, i| {
        let ma = (0..3).fold(zero(), |s, k| s + m[i][k].clone() * leg.a[k].clone());
        let d = ma + y[i].clone() - leg.b[i].clone();
        acc + d.clone() * d
    }) - leg.d2.clone()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn triple() -> impl Strategy<Value = [Rational; 3]> {
    [rational(), rational(), rational()]
}

pub fn leg() -> impl Strategy<Value = Leg> {
    (triple(), triple(), rational()).prop_map(|(a, b, d2)| Leg::new(a, b, d2))
}

pub fn planar_leg() -> impl Strategy<Value = Leg> {
    (rational(), rational(), rational(), rational(), rational())
        .prop_map(|(a1, a2, b1, b2, d2)| Leg::new([a1, a2, zero()], [b1, b2, zero()], d2))
}
