//! Univariate root finding: all roots in a prime field, and exact real-root
//! isolation over the rationals by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::field::{Coeff, Field, Fp, Rational};
use crate::univariate::UPoly;

/// Distinct roots of `f` in `F_p`, sorted by representative.
pub fn fp_roots(f: &UPoly<Fp>) -> Vec<Fp> {
    let field = f.field();
    let p = field.characteristic();
    if f.is_zero() {
        return Vec::new();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let x = UPoly::x(field);
    let xp = x.pow_mod(p as u64, f);
    let g = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    split_linear(&g, p, &mut roots, 1);
    roots.sort_by_key(|r| r.value());
    roots
}

/// Splits a squarefree product of distinct linear factors (Cantor-Zassenhaus
/// with deterministic shifts).
fn split_linear(g: &UPoly<Fp>, p: u32, out: &mut Vec<Fp>, mut shift: i64) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.coeffs();
            out.push(-(c[0] * c[1].inv().unwrap()));
            return;
        }
        _ => {}
    }
    if p == 2 {
        for v in 0..2 {
            if g.eval(&Fp::new(v, 2)).is_zero() {
                out.push(Fp::new(v, 2));
            }
        }
        return;
    }
    loop {
        let a = UPoly::new(field, vec![Fp::new(shift, p), Fp::new(1, p)]);
        shift += 1;
        let h = a.pow_mod(((p - 1) / 2) as u64, g).sub(&UPoly::constant(field, Fp::new(1, p)));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (q, _) = g.div_rem(&d);
            split_linear(&d, p, out, shift);
            split_linear(&q, p, out, shift);
            return;
        }
        assert!(shift < 4 * p as i64 + 8, "root splitting failed to converge");
    }
}

/// Sturm sequence of the squarefree part of `f`, each entry rescaled by a
/// positive constant to keep coefficients small.
pub struct Sturm {
    seq: Vec<UPoly<Rational>>,
}

fn primitive_positive(p: &UPoly<Rational>) -> UPoly<Rational> {
    let mut c = p.coeffs().to_vec();
    if c.is_empty() {
        return p.clone();
    }
    let sign_before = c.last().unwrap().signum();
    Rational::remove_content(&mut c);
    // remove_content normalizes the first entry's sign; restore the original
    // orientation of the leading coefficient.
    if c.last().unwrap().signum() != sign_before {
        for v in c.iter_mut() {
            *v = -v.clone();
        }
    }
    UPoly::new(p.field(), c)
}

impl Sturm {
    pub fn new(f: &UPoly<Rational>) -> Self {
        let p0 = primitive_positive(&f.squarefree());
        let mut seq = vec![p0.clone()];
        if p0.degree().unwrap_or(0) > 0 {
            let mut a = p0.clone();
            let mut b = primitive_positive(&p0.derivative());
            while !b.is_zero() {
                seq.push(b.clone());
                let r = a.rem(&b).neg();
                a = b;
                b = primitive_positive(&r);
            }
        }
        Sturm { seq }
    }

    pub fn squarefree(&self) -> &UPoly<Rational> {
        &self.seq[0]
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = p.eval(x).signum();
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a) - self.sign_changes(b)
    }
}

/// Closed interval with rational endpoints containing exactly one real root;
/// `lo == hi` when the root is the rational number itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.clone() + self.hi.clone()) * Rational::new(1, 2)
    }
}

fn cauchy_bound(f: &UPoly<Rational>) -> Rational {
    let c = f.coeffs();
    let lead = c.last().unwrap().abs();
    let mut m = Rational::from_integer(0);
    for v in &c[..c.len() - 1] {
        let q = Rational(v.abs().0 / &lead.0);
        if q > m {
            m = q;
        }
    }
    m + Rational::from_integer(1)
}

/// Isolates all distinct real roots of `f` (nonzero) in increasing order.
pub fn isolate_real_roots(f: &UPoly<Rational>) -> Vec<RootInterval> {
    let sturm = Sturm::new(f);
    let sq = sturm.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = cauchy_bound(sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if sq.eval(&hi).is_zero() {
                out.push(RootInterval { lo: hi.clone(), hi });
            } else {
                out.push(RootInterval { lo, hi });
            }
            continue;
        }
        let mid = (lo.clone() + hi.clone()) * Rational::new(1, 2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval of the squarefree polynomial `f` by exact
/// bisection until its width is at most `width`.
pub fn refine_root(f: &UPoly<Rational>, iv: &RootInterval, width: &Rational) -> RootInterval {
    let sq = Sturm::new(f).squarefree().clone();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    let mut s_hi = sq.eval(&hi).signum();
    if s_hi == 0 {
        return RootInterval { lo: hi.clone(), hi };
    }
    // Root lies in (lo, hi]; since hi is not a root it lies in (lo, hi).
    while &(hi.clone() - lo.clone()) > width {
        let mid = (lo.clone() + hi.clone()) * Rational::new(1, 2);
        let s = sq.eval(&mid).signum();
        if s == 0 {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if s == s_hi {
            hi = mid;
            s_hi = s;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Real roots of `f`, each as a rational within `2^-bits` of the true root.
pub fn real_roots_approx(f: &UPoly<Rational>, bits: u32) -> Vec<Rational> {
    let width = Rational(BigRational::new(BigInt::one(), BigInt::one() << bits));
    isolate_real_roots(f)
        .iter()
        .map(|iv| refine_root(f, iv, &width).midpoint())
        .collect()
}

/// Upper bound on `|f(x)|` scale used for residual checks: `sum |c_i| |x|^i`.
pub fn abs_scale(f: &UPoly<Rational>, x: f64) -> f64 {
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.approx().abs() * x.abs().powi(i as i32))
        .sum()
}

/// Lifts a polynomial with integer-valued rational coefficients to `F_p`.
pub fn reduce_mod(f: &UPoly<Rational>, field: Field) -> Option<UPoly<Fp>> {
    let mut v = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        v.push(Fp::from_ratio(field, c.numer(), c.denom()).ok()?);
    }
    Some(UPoly::new(field, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_roots_of_split_polynomial() {
        let f = Field::Prime(101);
        // (x-3)(x-7)(x+5)(x^2+1); -1 is a square mod 101
        let mut p = UPoly::<Fp>::from_i64(f, &[1]);
        for r in [3, 7, -5] {
            p = p.mul(&UPoly::from_i64(f, &[-r, 1]));
        }
        p = p.mul(&UPoly::from_i64(f, &[1, 0, 1]));
        let roots: Vec<u32> = fp_roots(&p).iter().map(|r| r.value()).collect();
        // 10^2 = 100 = -1 mod 101
        assert_eq!(roots, vec![3, 7, 10, 91, 96]);
    }

    #[test]
    fn fp_roots_skip_irreducible_quadratics() {
        let f = Field::Prime(7);
        // x^2 + 1 has no roots mod 7
        let p = UPoly::<Fp>::from_i64(f, &[1, 0, 1]).mul(&UPoly::from_i64(f, &[-2, 1]));
        assert_eq!(fp_roots(&p), vec![Fp::new(2, 7)]);
    }

    #[test]
    fn sturm_isolates_each_root_once() {
        let f = Field::Rational;
        // (x-1)^2 (x+2)(x-1/2)(x^2+1)
        let p = UPoly::<Rational>::from_i64(f, &[-1, 1])
            .mul(&UPoly::from_i64(f, &[-1, 1]))
            .mul(&UPoly::from_i64(f, &[2, 1]))
            .mul(&UPoly::from_i64(f, &[-1, 2]))
            .mul(&UPoly::from_i64(f, &[1, 0, 1]));
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 3);
        let approx = real_roots_approx(&p, 60);
        let want = [-2.0, 0.5, 1.0];
        for (a, w) in approx.iter().zip(want) {
            assert!((a.approx() - w).abs() < 1e-15);
        }
    }

    #[test]
    fn sturm_on_irrational_roots() {
        let f = Field::Rational;
        let p = UPoly::<Rational>::from_i64(f, &[-2, 0, 1]);
        let r = real_roots_approx(&p, 80);
        assert_eq!(r.len(), 2);
        assert!((r[1].approx() - 2f64.sqrt()).abs() < 1e-15);
        assert!(ivs_bracket(&p));
    }

    fn ivs_bracket(p: &UPoly<Rational>) -> bool {
        isolate_real_roots(p).iter().all(|iv| {
            let a = p.eval(&iv.lo).signum();
            let b = p.eval(&iv.hi).signum();
            a * b <= 0
        })
    }
}
