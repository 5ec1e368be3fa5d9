//! Projective models of isometries and of legs, as homogeneous ideals.
//!
//! Isometries live in the P^16 with coordinates `(M : x : y : r : h)`; an
//! affine isometry `a -> M a + y` maps to `(M : -M^t y : y : <y,y> : 1)`.
//! Legs `(a, b, d^2)` live in the P^16 with coordinates `(z_ij : l)` where
//! `z_ij = a~_i b~_j` for `a~ = (1, a)`, `b~ = (1, b)` and
//! `l = <a,a> + <b,b> - d^2`.

use std::sync::Arc;

use podforge_algebra::{
    Coeff, Field, Ideal, MonomialOrder, Polynomial, Rational, Ring, RingMap,
};
use serde::{Deserialize, Serialize};

use crate::error::{PodError, Result};

pub const X_VARS: [&str; 17] = [
    "m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33", "x1", "x2", "x3", "y1", "y2", "y3", "r", "h",
];

pub const Y_VARS: [&str; 17] = [
    "z00", "z01", "z02", "z03", "z10", "z11", "z12", "z13", "z20", "z21", "z22", "z23", "z30", "z31", "z32",
    "z33", "l",
];

/// Configuration coordinates of the P^10 of involutions.
pub const X_SYM_VARS: [&str; 11] = ["m11", "m22", "m33", "m12", "m13", "m23", "x1", "x2", "x3", "r", "h"];

pub const Y_INV_VARS: [&str; 11] = ["z11", "z22", "z33", "s12", "s13", "s23", "s01", "s02", "s03", "z00", "l"];

pub const Y_P_VARS: [&str; 10] = ["z00", "z01", "z02", "z10", "z11", "z12", "z20", "z21", "z22", "l"];

pub const X_P_VARS: [&str; 10] = ["m11", "m12", "m21", "m22", "x1", "x2", "y1", "y2", "r", "h"];

pub const Y_PINV_VARS: [&str; 7] = ["z00", "z11", "z22", "s01", "s02", "s12", "l"];

pub const X_PINV_VARS: [&str; 7] = ["m11", "m12", "m22", "x1", "x2", "r", "h"];

pub const E_VARS: [&str; 3] = ["e1", "e2", "e3"];

pub const Z_VARS: [&str; 9] = ["e1", "e2", "e3", "p1", "p2", "p3", "q1", "q2", "q3"];

/// Veronese coordinates `w_ij = e_i e_j` of P^9.
pub const VERONESE_VARS: [&str; 10] = ["w00", "w11", "w22", "w33", "w01", "w02", "w03", "w12", "w13", "w23"];

pub fn ring(vars: &[&str], field: Field) -> Arc<Ring> {
    Ring::new(vars, field).expect("valid coordinate names")
}

fn v<C: Coeff>(ring: &Arc<Ring>, name: &str) -> Polynomial<C> {
    Polynomial::var_named(ring, name).expect("coordinate exists")
}

fn c<C: Coeff>(ring: &Arc<Ring>, n: i64) -> Polynomial<C> {
    Polynomial::from_i64(ring, n)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det_poly<C: Coeff>(ring: &Arc<Ring>, m: &[Vec<Polynomial<C>>]) -> Polynomial<C> {
    let n = m.len();
    match n {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<C>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det_poly(ring, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k x k` minors of a matrix of polynomials (zero minors dropped).
pub fn minors<C: Coeff>(ring: &Arc<Ring>, m: &[Vec<Polynomial<C>>], k: usize) -> Vec<Polynomial<C>> {
    let rows = subsets(m.len(), k);
    let cols = subsets(m[0].len(), k);
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<Polynomial<C>>> =
                r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = det_poly(ring, &sub);
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn x_blocks<C: Coeff>(r: &Arc<Ring>) -> (Vec<Vec<Polynomial<C>>>, Vec<Polynomial<C>>, Vec<Polynomial<C>>) {
    let m = (1..=3)
        .map(|i| (1..=3).map(|j| v(r, &format!("m{i}{j}"))).collect())
        .collect();
    let x = (1..=3).map(|i| v(r, &format!("x{i}"))).collect();
    let y = (1..=3).map(|i| v(r, &format!("y{i}"))).collect();
    (m, x, y)
}

/// The closure `X` of the isometry group in P^16.
pub fn ideal_x<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&X_VARS, field);
    let (m, x, y) = x_blocks::<C>(&r);
    let h = v::<C>(&r, "h");
    let rr = v::<C>(&r, "r");
    let h2 = &h * &h;
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut a = Polynomial::zero(&r);
            let mut b = Polynomial::zero(&r);
            for k in 0..3 {
                a = &a + &(&m[i][k] * &m[j][k]);
                b = &b + &(&m[k][i] * &m[k][j]);
            }
            if i == j {
                a = &a - &h2;
                b = &b - &h2;
            }
            gens.push(a);
            gens.push(b);
        }
    }
    for i in 0..3 {
        let mut a = &h * &y[i];
        let mut b = &h * &x[i];
        for k in 0..3 {
            a = &a + &(&m[i][k] * &x[k]);
            b = &b + &(&m[k][i] * &y[k]);
        }
        gens.push(a);
        gens.push(b);
    }
    let xx = (0..3).fold(Polynomial::zero(&r), |acc, i| &acc + &(&x[i] * &x[i]));
    let yy = (0..3).fold(Polynomial::zero(&r), |acc, i| &acc + &(&y[i] * &y[i]));
    gens.push(&(&rr * &h) - &xx);
    gens.push(&(&rr * &h) - &yy);
    gens.push(&det_poly(&r, &m) - &(&h2 * &h));
    Ideal::new(&r, gens).expect("homogeneous")
}

/// The seven linear forms cutting the span of the involutions out of P^16.
pub fn involution_forms<C: Coeff>(r: &Arc<Ring>) -> Vec<Polynomial<C>> {
    let p = |s: &str| Polynomial::parse(r, s).expect("valid form");
    vec![
        p("m12-m21"),
        p("m13-m31"),
        p("m23-m32"),
        p("x1-y1"),
        p("x2-y2"),
        p("x3-y3"),
        p("m11+m22+m33+h"),
    ]
}

pub fn ideal_x_inv<C: Coeff>(field: Field) -> Ideal<C> {
    let x = ideal_x::<C>(field);
    let forms = involution_forms(x.ring());
    x.with_generators(forms).expect("homogeneous")
}

/// `X_inv` expressed in the symmetric coordinates of its P^10.
pub fn ideal_x_inv_sym<C: Coeff>(field: Field) -> Result<Ideal<C>> {
    let full = ideal_x_inv::<C>(field);
    Ok(full.project(&X_SYM_VARS)?)
}

/// `Z_inv` in the weighted ring with `e` of weight 1 and `p`, `q` of weight 2.
pub fn ideal_z_inv<C: Coeff>(field: Field) -> Ideal<C> {
    let r = z_ring(field);
    Ideal::parse(&r, &["e1*p1+e2*p2+e3*p3", "q1", "q2", "q3"]).expect("valid")
}

pub fn z_ring(field: Field) -> Arc<Ring> {
    Ring::build(&Z_VARS, vec![1, 1, 1, 2, 2, 2, 2, 2, 2], MonomialOrder::DegRevLex, field).expect("valid ring")
}

/// The five equations of `Z`.
pub fn ideal_z<C: Coeff>(field: Field) -> Ideal<C> {
    let r = z_ring(field);
    Ideal::parse(
        &r,
        &["e1*p1+e2*p2+e3*p3", "p1*q1+p2*q2+p3*q3", "e1*q2-e2*q1", "e1*q3-e3*q1", "e2*q3-e3*q2"],
    )
    .expect("valid")
}

fn z_matrix<C: Coeff>(r: &Arc<Ring>) -> Vec<Vec<Polynomial<C>>> {
    (0..4).map(|i| (0..4).map(|j| v(r, &format!("z{i}{j}"))).collect()).collect()
}

/// The cone `Y` over the Segre variety P^3 x P^3.
pub fn ideal_y<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&Y_VARS, field);
    let z = z_matrix::<C>(&r);
    Ideal::new(&r, minors(&r, &z, 2)).expect("homogeneous")
}

/// Planar legs: the cone over P^2 x P^2 in the P^9 of `Y_P_VARS`.
pub fn ideal_y_p<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&Y_P_VARS, field);
    let z: Vec<Vec<Polynomial<C>>> =
        (0..3).map(|i| (0..3).map(|j| v(&r, &format!("z{i}{j}"))).collect()).collect();
    Ideal::new(&r, minors(&r, &z, 2)).expect("homogeneous")
}

/// Symmetric matrix `S` with `S_ii = 2 z_ii` and `S_ij = s_ij`.
pub fn s_matrix<C: Coeff>(r: &Arc<Ring>, dim: usize) -> Vec<Vec<Polynomial<C>>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => &c::<C>(r, 2) * &v(r, &format!("z{i}{i}")),
                    std::cmp::Ordering::Less => v(r, &format!("s{i}{j}")),
                    std::cmp::Ordering::Greater => v(r, &format!("s{j}{i}")),
                })
                .collect()
        })
        .collect()
}

/// Unordered leg pairs: 3x3 minors of the symmetric 4x4 matrix `S`.
pub fn ideal_y_inv<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&Y_INV_VARS, field);
    let s = s_matrix::<C>(&r, 4);
    let mut gens = minors(&r, &s, 3);
    for g in gens.iter_mut() {
        *g = g.normalized();
    }
    gens.dedup();
    Ideal::new(&r, gens).expect("homogeneous")
}

/// Planar unordered leg pairs: half the determinant of the 3x3 matrix `S`.
pub fn ideal_y_pinv<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&Y_PINV_VARS, field);
    Ideal::new(&r, vec![y_pinv_cubic(&r)]).expect("homogeneous")
}

pub fn y_pinv_cubic<C: Coeff>(r: &Arc<Ring>) -> Polynomial<C> {
    Polynomial::parse(r, "4*z00*z11*z22+s01*s02*s12-z00*s12^2-z11*s02^2-z22*s01^2").expect("valid")
}

/// The variant with `s12^2` in place of `s01^2` and `s02^2`. It does not
/// vanish on planar leg pairs; kept for comparison.
pub fn y_pinv_variant_cubic<C: Coeff>(r: &Arc<Ring>) -> Polynomial<C> {
    Polynomial::parse(r, "s01*s02*s12-s12^2*z00-s12^2*z11-s12^2*z22+4*z00*z11*z22").expect("valid")
}

/// Implicit equations of `(a~, b~) -> (a~_i b~_i, a~_i b~_j + a~_j b~_i)` on
/// pairs of points of the plane, by elimination from the graph in
/// `P^2 x P^2`. The cone coordinate `l` stays free.
pub fn alpha_planar_implicit<C: Coeff>(field: Field) -> Result<Ideal<C>> {
    let mut names: Vec<&str> = vec!["a0", "a1", "a2", "b0", "b1", "b2"];
    names.extend(Y_PINV_VARS.iter());
    let mut weights = vec![1; 6];
    weights.extend([2; 7]);
    let graph = Ring::build(&names, weights, MonomialOrder::elimination(6, names.len()), field)?;
    let a = |i: usize| v::<C>(&graph, &format!("a{i}"));
    let b = |i: usize| v::<C>(&graph, &format!("b{i}"));
    let mut gens = Vec::new();
    for name in Y_PINV_VARS.iter().filter(|n| **n != "l") {
        let digits: Vec<usize> = name[1..].chars().map(|c| c.to_digit(10).expect("index") as usize).collect();
        let (i, j) = (digits[0], digits[1]);
        let image = if i == j { &a(i) * &b(i) } else { &(&a(i) * &b(j)) + &(&a(j) * &b(i)) };
        gens.push(&v(&graph, name) - &image);
    }
    let eliminated = Ideal::new(&graph, gens)?.eliminate(&["a0", "a1", "a2", "b0", "b1", "b2"])?;
    Ok(eliminated.to_ring(&ring(&Y_PINV_VARS, field))?)
}

/// Rotations as the Veronese image of P^3: 2x2 minors of the symmetric
/// matrix `(w_ij)`.
pub fn ideal_x_rot<C: Coeff>(field: Field) -> Ideal<C> {
    let r = ring(&VERONESE_VARS, field);
    let w: Vec<Vec<Polynomial<C>>> = (0..4)
        .map(|i| (0..4).map(|j| v(&r, &format!("w{}{}", i.min(j), i.max(j)))).collect())
        .collect();
    Ideal::new(&r, minors(&r, &w, 2)).expect("homogeneous")
}

/// Closure of the coordinate projection onto `keep`.
pub fn project_model<C: Coeff>(ideal: &Ideal<C>, keep: &[&str]) -> Result<Ideal<C>> {
    Ok(ideal.project(keep)?)
}

pub fn ideal_x_p<C: Coeff>(field: Field) -> Result<Ideal<C>> {
    project_model(&ideal_x::<C>(field), &X_P_VARS)
}

/// Planar involutions; the isolated identity component is excluded by the
/// trace form, so projecting the symmetric model suffices.
pub fn ideal_x_pinv<C: Coeff>(field: Field) -> Result<Ideal<C>> {
    project_model(&ideal_x_inv::<C>(field), &X_PINV_VARS)
}

/// The quadratic map `e -> (M : x : y : r : h)` on the plane `e0 = 0`:
/// `M = 2 e e^t - |e|^2 id`, `x = y = P/2`, `r = U/4`, `h = |e|^2`.
pub fn euler_rho<C: Coeff>(p: &[Polynomial<C>; 3], u: &Polynomial<C>) -> Result<RingMap<C>> {
    let er = p[0].ring().clone();
    for q in p.iter().chain(std::iter::once(u)) {
        if !q.is_zero() && q.homogeneous_degree() != Some(2) {
            return Err(PodError::Invalid(format!("`{q}` is not a quadratic form")));
        }
        q.check_ring(&p[0])?;
    }
    let field = er.field();
    let e: Vec<Polynomial<C>> = (0..3).map(|i| Polynomial::var(&er, i)).collect();
    let norm = (0..3).fold(Polynomial::zero(&er), |acc, i| &acc + &(&e[i] * &e[i]));
    let half = Polynomial::constant(&er, C::one(field).div(&C::from_i64(field, 2)).expect("char != 2"));
    let quarter = &half * &half;
    let two = c::<C>(&er, 2);
    let mut images = Vec::with_capacity(17);
    for i in 0..3 {
        for j in 0..3 {
            let mut mij = &two * &(&e[i] * &e[j]);
            if i == j {
                mij = &mij - &norm;
            }
            images.push(mij);
        }
    }
    for _ in 0..2 {
        for q in p {
            images.push(&half * q);
        }
    }
    images.push(&quarter * u);
    images.push(norm);
    let src = ring(&X_VARS, field);
    let map = RingMap::new(&src, &er, images)?;
    map.check_graded(2)?;
    Ok(map)
}

/// The rotation `(M : h)` of the unit quaternion-like point `(e0:e1:e2:e3)`,
/// with `h = e0^2 + |e|^2`.
pub fn rotation_from_euler<C: Coeff>(e: &[C; 4]) -> ([[C; 3]; 3], C) {
    let f = e[0].field();
    let two = C::from_i64(f, 2);
    let [e0, e1, e2, e3] = e.clone();
    let sq = |a: &C| a.clone() * a.clone();
    let h = sq(&e0) + sq(&e1) + sq(&e2) + sq(&e3);
    let ev = [e1, e2, e3];
    let mut m: [[C; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| C::zero(f)));
    let d = sq(&e0) - sq(&ev[0]) - sq(&ev[1]) - sq(&ev[2]);
    for i in 0..3 {
        for j in 0..3 {
            let mut val = two.clone() * ev[i].clone() * ev[j].clone();
            if i == j {
                val = val + d.clone();
            }
            // cross-product part 2 e0 [e]_x
            if i != j {
                let k = 3 - i - j;
                let sign = if (i + 1) % 3 == j { -1 } else { 1 };
                val = val + C::from_i64(f, 2 * sign) * e0.clone() * ev[k].clone();
            }
            m[i][j] = val;
        }
    }
    (m, h)
}

/// A point `(M : x : y : r : h)` of the isometry P^16.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryPoint<C: Coeff> {
    pub m: [[C; 3]; 3],
    pub x: [C; 3],
    pub y: [C; 3],
    pub r: C,
    pub h: C,
}

impl<C: Coeff> IsometryPoint<C> {
    /// `a -> M a + y` for a rotation matrix `M`.
    pub fn from_affine(m: [[C; 3]; 3], y: [C; 3]) -> Self {
        let f = y[0].field();
        let x: [C; 3] = std::array::from_fn(|i| {
            let mut s = C::zero(f);
            for k in 0..3 {
                s = s - m[k][i].clone() * y[k].clone();
            }
            s
        });
        let r = y.iter().fold(C::zero(f), |acc, t| acc + t.clone() * t.clone());
        IsometryPoint { m, x, y, r, h: C::one(f) }
    }

    pub fn identity(field: Field) -> Self {
        let z = || C::zero(field);
        let o = || C::one(field);
        IsometryPoint {
            m: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
            x: [z(), z(), z()],
            y: [z(), z(), z()],
            r: z(),
            h: o(),
        }
    }

    /// Coordinates in the order of `X_VARS`.
    pub fn coords(&self) -> Vec<C> {
        let mut v: Vec<C> = self.m.iter().flatten().cloned().collect();
        v.extend(self.x.iter().cloned());
        v.extend(self.y.iter().cloned());
        v.push(self.r.clone());
        v.push(self.h.clone());
        v
    }

    pub fn from_coords(v: &[C]) -> Result<Self> {
        if v.len() != 17 {
            return Err(PodError::Invalid(format!("isometry point needs 17 coordinates, got {}", v.len())));
        }
        Ok(IsometryPoint {
            m: std::array::from_fn(|i| std::array::from_fn(|j| v[3 * i + j].clone())),
            x: std::array::from_fn(|i| v[9 + i].clone()),
            y: std::array::from_fn(|i| v[12 + i].clone()),
            r: v[15].clone(),
            h: v[16].clone(),
        })
    }

    /// Image of the point `a` under the isometry (requires `h != 0`).
    pub fn apply(&self, a: &[C; 3]) -> Option<[C; 3]> {
        let hinv = self.h.inv()?;
        Some(std::array::from_fn(|i| {
            let mut s = self.y[i].clone();
            for k in 0..3 {
                s = s + self.m[i][k].clone() * a[k].clone();
            }
            s * hinv.clone()
        }))
    }
}

/// A leg with base anchor `a`, platform anchor `b` and squared length `d2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub a: [Rational; 3],
    pub b: [Rational; 3],
    pub d2: Rational,
}

impl Leg {
    pub fn new(a: [Rational; 3], b: [Rational; 3], d2: Rational) -> Self {
        Leg { a, b, d2 }
    }

    pub fn from_i64(a: [i64; 3], b: [i64; 3], d2: i64) -> Self {
        Leg {
            a: a.map(Rational::from_integer),
            b: b.map(Rational::from_integer),
            d2: Rational::from_integer(d2),
        }
    }

    /// Corrected length `<a,a> + <b,b> - d^2`.
    pub fn corrected_length(&self) -> Rational {
        let sq = |v: &[Rational; 3]| v.iter().fold(Rational::from_integer(0), |acc, t| acc + t.clone() * t.clone());
        sq(&self.a) + sq(&self.b) - self.d2.clone()
    }

    /// A leg with negative squared length cannot be built.
    pub fn is_complex(&self) -> bool {
        self.d2.is_negative()
    }

    pub fn is_planar(&self) -> bool {
        self.a[2].is_zero() && self.b[2].is_zero()
    }
}

/// A point `(z_ij : l)` of the leg P^16.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegPoint<C: Coeff> {
    pub z: [[C; 4]; 4],
    pub l: C,
}

impl<C: Coeff> LegPoint<C> {
    /// Coordinates in the order of `Y_VARS`.
    pub fn coords(&self) -> Vec<C> {
        let mut v: Vec<C> = self.z.iter().flatten().cloned().collect();
        v.push(self.l.clone());
        v
    }

    pub fn from_coords(v: &[C]) -> Result<Self> {
        if v.len() != 17 {
            return Err(PodError::Invalid(format!("leg point needs 17 coordinates, got {}", v.len())));
        }
        Ok(LegPoint { z: std::array::from_fn(|i| std::array::from_fn(|j| v[4 * i + j].clone())), l: v[16].clone() })
    }

    /// `s_ij = z_ij + z_ji`.
    pub fn s(&self, i: usize, j: usize) -> C {
        self.z[i][j].clone() + self.z[j][i].clone()
    }

    /// Coordinates in the order of `Y_INV_VARS`.
    pub fn sym_coords(&self) -> Vec<C> {
        vec![
            self.z[1][1].clone(),
            self.z[2][2].clone(),
            self.z[3][3].clone(),
            self.s(1, 2),
            self.s(1, 3),
            self.s(2, 3),
            self.s(0, 1),
            self.s(0, 2),
            self.s(0, 3),
            self.z[0][0].clone(),
            self.l.clone(),
        ]
    }

    /// Coordinates in the order of `Y_P_VARS` (planar legs only).
    pub fn planar_coords(&self) -> Vec<C> {
        let mut v = Vec::with_capacity(10);
        for i in 0..3 {
            for j in 0..3 {
                v.push(self.z[i][j].clone());
            }
        }
        v.push(self.l.clone());
        v
    }

    /// Coordinates in the order of `Y_PINV_VARS` (planar legs only).
    pub fn planar_sym_coords(&self) -> Vec<C> {
        vec![
            self.z[0][0].clone(),
            self.z[1][1].clone(),
            self.z[2][2].clone(),
            self.s(0, 1),
            self.s(0, 2),
            self.s(1, 2),
            self.l.clone(),
        ]
    }
}

/// Symmetric 4x4 matrix `S` of a point of the P^10 with coordinates
/// `Y_INV_VARS`.
pub fn sym_matrix_of<C: Coeff>(p: &[C]) -> [[C; 4]; 4] {
    assert_eq!(p.len(), 11);
    let f = p[0].field();
    let two = C::from_i64(f, 2);
    let mut s: [[C; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| C::zero(f)));
    s[0][0] = two.clone() * p[9].clone();
    s[1][1] = two.clone() * p[0].clone();
    s[2][2] = two.clone() * p[1].clone();
    s[3][3] = two * p[2].clone();
    let off = [(1, 2, 3), (1, 3, 4), (2, 3, 5), (0, 1, 6), (0, 2, 7), (0, 3, 8)];
    for (i, j, k) in off {
        s[i][j] = p[k].clone();
        s[j][i] = p[k].clone();
    }
    s
}

pub fn sym_matrix_of_f64(p: &[f64]) -> [[f64; 4]; 4] {
    assert_eq!(p.len(), 11);
    let mut s = [[0.0; 4]; 4];
    s[0][0] = 2.0 * p[9];
    s[1][1] = 2.0 * p[0];
    s[2][2] = 2.0 * p[1];
    s[3][3] = 2.0 * p[2];
    let off = [(1, 2, 3), (1, 3, 4), (2, 3, 5), (0, 1, 6), (0, 2, 7), (0, 3, 8)];
    for (i, j, k) in off {
        s[i][j] = p[k];
        s[j][i] = p[k];
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use podforge_algebra::Fp;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn identity_lies_on_x() {
        let x = ideal_x::<Rational>(Field::Rational);
        let p = IsometryPoint::<Rational>::identity(Field::Rational).coords();
        assert!(x.generators().iter().all(|g| g.evaluate(&p).is_zero()));
        assert_eq!(x.generators().len(), 21);
    }

    #[test]
    fn cone_vertex_lies_on_x() {
        let x = ideal_x::<Rational>(Field::Rational);
        let mut p = vec![q(0); 17];
        p[15] = q(1);
        assert!(x.generators().iter().all(|g| g.evaluate(&p).is_zero()));
    }

    #[test]
    fn half_turn_is_an_involution_point() {
        let xi = ideal_x_inv::<Rational>(Field::Rational);
        let z = q(0);
        let ht = IsometryPoint {
            m: [[q(-1), q(0), q(0)], [q(0), q(-1), q(0)], [q(0), q(0), q(1)]],
            x: [z.clone(), z.clone(), z.clone()],
            y: [z.clone(), z.clone(), z.clone()],
            r: z,
            h: q(1),
        };
        assert!(xi.generators().iter().all(|g| g.evaluate(&ht.coords()).is_zero()));
        let id = IsometryPoint::<Rational>::identity(Field::Rational).coords();
        assert!(!xi.generators().iter().all(|g| g.evaluate(&id).is_zero()));
    }

    #[test]
    fn z_inv_membership() {
        let zi = ideal_z_inv::<Rational>(Field::Rational);
        let good = [1, 0, 0, 0, 1, 0, 0, 0, 0].map(q);
        assert!(zi.generators().iter().all(|g| g.evaluate(&good).is_zero()));
        let bad = [1, 0, 0, 0, 1, 0, 0, 3, 0].map(q);
        assert!(!zi.generators().iter().all(|g| g.evaluate(&bad).is_zero()));
    }

    #[test]
    fn y_pinv_examples() {
        let y = ideal_y_pinv::<Rational>(Field::Rational);
        let f = &y.generators()[0];
        // a = b = (1,0,0): z00 = 1 only
        assert!(f.evaluate(&[1, 0, 0, 0, 0, 0, 0].map(q)).is_zero());
        assert_eq!(f.evaluate(&[1, 1, 1, 0, 0, 0, 0].map(q)), q(4));
    }

    #[test]
    fn rho_rows() {
        let f = Field::Prime(101);
        let er = ring(&E_VARS, f);
        let zero = Polynomial::<Fp>::zero(&er);
        let rho = euler_rho(&[zero.clone(), zero.clone(), zero.clone()], &zero).unwrap();
        let xr = rho.source().clone();
        let img = |s: &str| rho.apply(&Polynomial::parse(&xr, s).unwrap()).unwrap();
        assert_eq!(img("h"), Polynomial::parse(&er, "e1^2+e2^2+e3^2").unwrap());
        assert_eq!(img("m11"), Polynomial::parse(&er, "e1^2-e2^2-e3^2").unwrap());
        assert_eq!(img("m12"), Polynomial::parse(&er, "2*e1*e2").unwrap());
        let cubic = Polynomial::parse(&er, "e1^3").unwrap();
        assert!(euler_rho(&[cubic, zero.clone(), zero.clone()], &zero).is_err());
    }

    #[test]
    fn quaternion_rotations_lie_on_x() {
        let x = ideal_x::<Rational>(Field::Rational);
        for e in [[1, 2, -3, 5], [0, 1, 1, 0], [4, 0, -1, 2]] {
            let (m, h) = rotation_from_euler(&e.map(q));
            let z = q(0);
            let p = IsometryPoint { m, x: [z.clone(), z.clone(), z.clone()], y: [z.clone(), z.clone(), z.clone()], r: z, h };
            assert!(x.generators().iter().all(|g| g.evaluate(&p.coords()).is_zero()), "{e:?}");
        }
    }
}
