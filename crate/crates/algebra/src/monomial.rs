use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 32;

/// Dense exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS] }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(exps.len(), MAX_VARS));
        }
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| AlgebraError::ExponentOverflow(e))?;
        }
        Ok(m)
    }

    pub fn var(i: usize, e: u8) -> Self {
        let mut m = Self::one();
        m.exps[i] = e;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn set_exponent(&mut self, i: usize, e: u8) {
        self.exps[i] = e;
    }

    pub fn exponents(&self, n: usize) -> &[u8] {
        &self.exps[..n]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        weights.iter().zip(&self.exps).map(|(&w, &e)| w * e as u32).sum()
    }

    /// Bit `i` is set when variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.exps.iter_mut().zip(&o.exps) {
            *a = a.checked_add(b).expect("exponent overflow (max 255)");
        }
        out
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = *o;
        for (a, &b) in out.exps.iter_mut().zip(&self.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.exps.iter_mut().zip(&o.exps) {
            *a = (*a).max(b);
        }
        out
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.exps.iter_mut().zip(&o.exps) {
            *a = (*a).min(b);
        }
        out
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Exponent vector with variables permuted: slot `perm[i]` of the result
    /// receives exponent `i` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut out = Self::one();
        for (i, &j) in perm.iter().enumerate() {
            out.exps[j] = self.exps[i];
        }
        out
    }
}

/// Graded monomial orders. Every block compares weighted degree first and
/// breaks ties reverse-lexicographically on the declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    /// Consecutive blocks of the given sizes; earlier blocks dominate.
    Blocks(Vec<usize>),
    Lex,
}

impl MonomialOrder {
    pub fn elimination(first_block: usize, nvars: usize) -> Self {
        MonomialOrder::Blocks(vec![first_block, nvars - first_block])
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => grevlex_range(a, b, weights, 0, weights.len()),
            MonomialOrder::Blocks(sizes) => {
                let mut start = 0;
                for &s in sizes {
                    let ord = grevlex_range(a, b, weights, start, start + s);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    start += s;
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..weights.len() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, weights: &[u32], lo: usize, hi: usize) -> Ordering {
    let mut da = 0u32;
    let mut db = 0u32;
    for i in lo..hi {
        da += weights[i] * a.exps[i] as u32;
        db += weights[i] * b.exps[i] as u32;
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        let (x, y) = (a.exps[i], b.exps[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_basics() {
        let w = [1, 1, 1];
        let o = MonomialOrder::DegRevLex;
        // x > y > z; x*z < y^2 in grevlex
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0]), &w), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 3]), &m(&[1, 1, 0]), &w), Ordering::Greater);
    }

    #[test]
    fn elimination_order_prefers_first_block() {
        let w = [1, 1, 1];
        let o = MonomialOrder::elimination(1, 3);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 0]), &w), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 1, 1])));
        assert_eq!(a.support_mask(), 0b011);
    }
}
