//! Sparse multivariate polynomials.
//!
//! Terms are stored strictly decreasing in the ring's monomial order with no
//! zero coefficients. The text format is `c*v1^a1*...*vk^ak` terms joined by
//! `+`/`-`, with integer or `num/den` coefficients; [`Polynomial::parse`] and
//! the `Display` impl round-trip exactly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::{same_ring, Ring};

pub type Term<C> = (Monomial, C);

#[derive(Clone)]
pub struct Polynomial<C: Coeff> {
    ring: Arc<Ring>,
    terms: Vec<Term<C>>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: C) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, C::from_i64(ring.field(), n))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: C) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, 1), C::one(ring.field()))
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    /// Builds a polynomial from terms in any order; like terms are combined.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term<C>>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    let s = last.1.clone() + c;
                    last.1 = s;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Terms must already be strictly decreasing and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(ring: &Arc<Ring>, coeffs: &[C]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i, 1), c.clone()))
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> crate::field::Field {
        self.ring.field()
    }

    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| C::zero(self.ring.field()))
    }

    /// Maximal weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| self.ring.degree(&t.0)).max()
    }

    /// Common weighted degree when all terms agree (zero counts as homogeneous).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| self.ring.degree(&t.0));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    fn check_scalar(&self, c: &C) -> Result<()> {
        if c.field() == self.ring.field() {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(c.field().to_string(), self.ring.field().to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    pub fn try_scale(&self, c: &C) -> Result<Self> {
        self.check_scalar(c)?;
        Ok(self.scale(c))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        a[i].1.clone() - b[j].1.clone()
                    } else {
                        a[i].1.clone() + b[j].1.clone()
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { -t.1.clone() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let c = c1.clone() * c2.clone();
                match acc.get_mut(&m) {
                    Some(v) => {
                        let s = v.clone() + c;
                        *v = s;
                    }
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_terms(&self.ring, acc.into_iter().collect())
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        let field = self.ring.field();
        let n = self.ring.nvars();
        assert_eq!(point.len(), n, "evaluation point has wrong length");
        let mut total = C::zero(field);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = v * p.clone();
                }
            }
            total = total + v;
        }
        total
    }

    pub fn derivative(&self, var: usize) -> Self {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut m2 = *m;
                m2.set_exponent(var, (e - 1) as u8);
                (m2, c.clone() * C::from_i64(field, e as i64))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `perm[i]` of `target`.
    pub fn permute_into(&self, target: &Arc<Ring>, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect();
        Self::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in a ring with the same variables (possibly
    /// a different order), or a superset matched by name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Self> {
        let perm = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect::<Result<Vec<_>>>()?;
        if self.ring.field() != target.field() {
            return Err(AlgebraError::FieldMismatch(self.ring.field().to_string(), target.field().to_string()));
        }
        Ok(self.permute_into(target, &perm))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Primitive integer form over Q, monic over F_p.
    pub fn normalized(&self) -> Self {
        if C::FRACTION_FREE {
            let mut coeffs: Vec<C> = self.terms.iter().map(|t| t.1.clone()).collect();
            C::remove_content(&mut coeffs);
            let terms = self.terms.iter().zip(coeffs).map(|(t, c)| (t.0, c)).collect();
            Polynomial { ring: self.ring.clone(), terms }
        } else {
            self.monic()
        }
    }

    /// Coefficient vector of a linear form (degree-1 part only).
    pub fn linear_coefficients(&self) -> Vec<C> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        let mut v = vec![C::zero(field); n];
        for (m, c) in &self.terms {
            if m.total_degree() == 1 {
                let i = (0..n).find(|&i| m.exponent(i) == 1).unwrap();
                v[i] = c.clone();
            }
        }
        v
    }

    /// Exact division by `d`, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_single(d);
        r.is_zero().then_some(q)
    }

    /// Multivariate division by a single polynomial in the ring order.
    pub fn div_rem_single(&self, d: &Self) -> (Self, Self) {
        let ring = &self.ring;
        let (lm, lc) = d.leading_term().cloned().expect("division by zero polynomial");
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match lm.quotient_of(&m) {
                Some(t) => {
                    let k = c * lc_inv.clone();
                    p = p.combine(&d.mul_term(&t, &k), true);
                    q.push((t, k));
                }
                None => {
                    r.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (Self::from_terms(ring, q), Self::from_terms(ring, r))
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self> {
        parse_polynomial(ring, s)
    }
}

/// `f - c * m * g` on sorted term lists.
pub(crate) fn sub_mul_terms<C: Coeff>(
    ring: &Ring,
    f: &[Term<C>],
    c: &C,
    m: &Monomial,
    g: &[Term<C>],
) -> Vec<Term<C>> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut gm = g.iter().map(|(t, a)| (t.mul(m), a));
    let mut next_g = gm.next();
    while i < f.len() {
        let Some((gmon, gc)) = next_g else { break };
        match ring.cmp(&f[i].0, &gmon) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gmon, -(c.clone() * gc.clone())));
                next_g = gm.next();
            }
            Ordering::Equal => {
                let v = f[i].1.clone() - c.clone() * gc.clone();
                if !v.is_zero() {
                    out.push((gmon, v));
                }
                i += 1;
                next_g = gm.next();
            }
        }
    }
    out.extend(f[i..].iter().cloned());
    while let Some((gmon, gc)) = next_g {
        out.push((gmon, -(c.clone() * gc.clone())));
        next_g = gm.next();
    }
    out
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, v) in vars.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(v.clone()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn parse_polynomial<C: Coeff>(ring: &Arc<Ring>, s: &str) -> Result<Polynomial<C>> {
    let field = ring.field();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    // Split into signed terms; a sign directly after `^` or `/` belongs to a number.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let chars: Vec<char> = compact.chars().collect();
    for (idx, &ch) in chars.iter().enumerate() {
        if (ch == '+' || ch == '-') && idx > 0 && !matches!(chars[idx - 1], '^' | '/' | '*') {
            if cur.is_empty() {
                return Err(AlgebraError::Parse(format!("dangling sign in `{s}`")));
            }
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && idx == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(AlgebraError::Parse(format!("dangling sign in `{s}`")));
    }
    pieces.push((neg, cur));

    let mut terms = Vec::with_capacity(pieces.len());
    for (neg, piece) in pieces {
        let mut coeff = C::one(field);
        let mut exps = vec![0u32; ring.nvars()];
        for factor in piece.split('*') {
            if factor.is_empty() {
                return Err(AlgebraError::Parse(format!("empty factor in `{piece}`")));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() || first == '-' {
                coeff = coeff * C::parse_in(field, factor)?;
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| AlgebraError::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                exps[ring.var_index(name)?] += e;
            }
        }
        if neg {
            coeff = -coeff;
        }
        terms.push((Monomial::from_exponents(&exps)?, coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

macro_rules! ref_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a, C: Coeff> $tr<&'a Polynomial<C>> for &'a Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
                self.$imp(rhs).expect("polynomials from different rings")
            }
        }
        impl<C: Coeff> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$imp(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

ref_binop!(Add, add, try_add);
ref_binop!(Sub, sub, try_sub);
ref_binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Fp, Rational};

    fn ring(field: Field) -> Arc<Ring> {
        Ring::new(&["e1", "e2", "e3"], field).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = ring(Field::Rational);
        let x = Polynomial::<Rational>::var(&r, 0);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Field::Rational);
        let e1 = Polynomial::<Rational>::var(&r, 0);
        let e2 = Polynomial::<Rational>::var(&r, 1);
        let lhs = &(&e1 + &e2) * &(&e1 - &e2);
        let rhs = Polynomial::parse(&r, "e1^2-e2^2").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scaling_over_f5() {
        let r = ring(Field::Prime(5));
        let f = Polynomial::<Fp>::parse(&r, "2*e1").unwrap();
        let g = f.try_scale(&Fp::new(3, 5)).unwrap();
        assert_eq!(g, Polynomial::var(&r, 0));
        assert!(f.try_scale(&Fp::new(3, 7)).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::<Rational>::var(&ring(Field::Rational), 0);
        let other = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let b = Polynomial::<Rational>::var(&other, 0);
        assert_eq!(a.try_add(&b), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn parse_and_print_round_trip() {
        let r = ring(Field::Rational);
        for s in ["0", "1", "-1/2", "e1^2-e2^2-e3^2", "-3/7*e1*e2^3+e3-5", "2*e1*e2"] {
            let p = Polynomial::<Rational>::parse(&r, s).unwrap();
            let q = Polynomial::<Rational>::parse(&r, &p.to_string()).unwrap();
            assert_eq!(p, q, "{s}");
        }
        let p = Polynomial::<Rational>::parse(&r, " e2 + e1 - 2 * e1 ").unwrap();
        assert_eq!(p.to_string(), "-e1+e2");
        assert!(Polynomial::<Rational>::parse(&r, "e1+").is_err());
        assert!(Polynomial::<Rational>::parse(&r, "w^2").is_err());
    }

    #[test]
    fn division_and_derivative() {
        let r = ring(Field::Rational);
        let f = Polynomial::<Rational>::parse(&r, "e1^3-e1*e2^2").unwrap();
        let d = Polynomial::<Rational>::parse(&r, "e1-e2").unwrap();
        let q = f.exact_div(&d).unwrap();
        assert_eq!(q, Polynomial::parse(&r, "e1^2+e1*e2").unwrap());
        assert!(f.exact_div(&Polynomial::parse(&r, "e3").unwrap()).is_none());
        assert_eq!(f.derivative(0), Polynomial::parse(&r, "3*e1^2-e2^2").unwrap());
    }

    #[test]
    fn homogeneity_uses_weights() {
        let r = Ring::build(
            &["e1", "p1"],
            vec![1, 2],
            crate::monomial::MonomialOrder::DegRevLex,
            Field::Rational,
        )
        .unwrap();
        let f = Polynomial::<Rational>::parse(&r, "e1^2+p1").unwrap();
        assert_eq!(f.homogeneous_degree(), Some(2));
        let g = Polynomial::<Rational>::parse(&r, "e1+p1").unwrap();
        assert!(!g.is_homogeneous());
    }
}
