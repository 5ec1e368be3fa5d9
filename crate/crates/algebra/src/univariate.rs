//! Dense univariate polynomials, coefficients stored from low to high degree.

use std::fmt;

use crate::field::{Coeff, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly<C: Coeff> {
    field: Field,
    coeffs: Vec<C>,
}

impl<C: Coeff> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.coeffs)
    }
}

impl<C: Coeff> UPoly<C> {
    pub fn new(field: Field, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| C::from_i64(field, c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: Field, c: C) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: Field) -> Self {
        Self::new(field, vec![C::zero(field), C::one(field)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = C::zero(self.field);
        let v = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&z).clone() + o.coeffs.get(i).unwrap_or(&z).clone()
            })
            .collect();
        Self::new(self.field, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut v = vec![C::zero(self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let s = v[i + j].clone() + a.clone() * b.clone();
                v[i + j] = s;
            }
        }
        Self::new(self.field, v)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![C::zero(self.field); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = r[k - dd + j].clone() - c.clone() * dc.clone();
                r[k - dd + j] = v;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(self.field, q), Self::new(self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * C::from_i64(self.field, i as i64))
            .collect();
        Self::new(self.field, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(self.field, C::one(self.field)).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Squarefree part `self / gcd(self, self')` (characteristic zero, or
    /// degree below the characteristic).
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn division_identity() {
        let f = Field::Rational;
        let a = UPoly::<Rational>::from_i64(f, &[1, 0, -3, 2, 5]);
        let b = UPoly::<Rational>::from_i64(f, &[2, 1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = Field::Rational;
        // (x-1)^2 (x+2)
        let p = UPoly::<Rational>::from_i64(f, &[2, -3, 0, 1]);
        assert_eq!(p.squarefree(), UPoly::from_i64(f, &[-2, 1, 1]));
        assert_eq!(p.gcd(&p.derivative()), UPoly::from_i64(f, &[-1, 1]));
    }
}
