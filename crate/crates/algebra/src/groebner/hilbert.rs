//! Hilbert series of monomial ideals and the invariants read off from them.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, Field, Rational};
use crate::monomial::Monomial;
use crate::univariate::UPoly;

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `S/I`, where
/// `I` is generated by `gens` in `n` standard-graded variables. Coefficients
/// are indexed by degree.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let mut g = minimalize(gens.to_vec());
    g.sort_by_key(|m| std::cmp::Reverse(m.total_degree()));
    numerator_rec(g, nvars)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// `1 - t^d`.
fn one_minus(d: u32) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    // Pairwise coprime generators: product formula.
    let mut union_mask = 0u32;
    let mut coprime = true;
    for m in &gens {
        let mask = m.support_mask();
        if union_mask & mask != 0 {
            coprime = false;
            break;
        }
        union_mask |= mask;
    }
    if coprime {
        let mut acc = vec![1i128];
        for m in &gens {
            acc = poly_mul(&acc, &one_minus(m.total_degree()));
        }
        return acc;
    }
    // Pivot on the variable occurring in the most generators.
    let mut counts = vec![0usize; nvars];
    for m in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let pivot = Monomial::var(v, 1);
    // N(I) = N(I + (x)) + t * N(I : x)
    let mut with_pivot: Vec<Monomial> = gens.iter().filter(|m| m.exponent(v) == 0).copied().collect();
    with_pivot.push(pivot);
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut q = *m;
            if m.exponent(v) > 0 {
                q.set_exponent(v, (m.exponent(v) - 1) as u8);
            }
            q
        })
        .collect();
    let a = numerator_rec(minimalize(with_pivot), nvars);
    let b = numerator_rec(minimalize(quotient), nvars);
    let mut tb = vec![0i128];
    tb.extend(b);
    poly_add(&a, &tb)
}

/// Dimension, degree and Hilbert polynomial of a projective scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Projective dimension; -1 for the empty scheme.
    pub dimension: i64,
    pub degree: u64,
    /// Coefficients of the Hilbert polynomial in increasing degree, as
    /// rational strings.
    pub hilbert_polynomial: Vec<String>,
    /// Numerator of the Hilbert series over `(1-t)^(dimension+1)`.
    pub numerator: Vec<i64>,
    /// `1 - HP(0)`, populated for curves.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arithmetic_genus: Option<i64>,
}

impl HilbertData {
    pub fn from_numerator(numerator: &[i128], nvars: usize) -> Result<Self> {
        let mut q: Vec<i128> = numerator.to_vec();
        while q.last() == Some(&0) {
            q.pop();
        }
        if q.is_empty() {
            return Err(AlgebraError::UnitIdeal);
        }
        // Divide by (1 - t) while possible.
        let mut k = 0usize;
        while q.iter().sum::<i128>() == 0 {
            // q(t) = (1 - t) r(t) with r_i = sum_{j<=i} q_j
            let mut r = Vec::with_capacity(q.len() - 1);
            let mut acc = 0i128;
            for c in &q[..q.len() - 1] {
                acc += c;
                r.push(acc);
            }
            q = r;
            k += 1;
        }
        let krull = nvars as i64 - k as i64;
        let degree: i128 = q.iter().sum();
        let hp = hilbert_polynomial(&q, krull);
        let genus = if krull == 2 {
            let hp0 = hp.eval(&Rational::from_integer(0));
            let g = Rational::from_integer(1) - hp0;
            Some(g.numer().try_into().expect("integral genus"))
        } else {
            None
        };
        Ok(HilbertData {
            dimension: krull - 1,
            degree: degree as u64,
            hilbert_polynomial: hp.coeffs().iter().map(|c| c.to_string()).collect(),
            numerator: q.iter().map(|&c| c as i64).collect(),
            arithmetic_genus: genus,
        })
    }

    pub fn polynomial(&self) -> UPoly<Rational> {
        let coeffs = self
            .hilbert_polynomial
            .iter()
            .map(|s| Rational::parse_in(Field::Rational, s).expect("stored rational"))
            .collect();
        UPoly::new(Field::Rational, coeffs)
    }

    /// `HP(s)` at an integer.
    pub fn evaluate(&self, s: i64) -> Rational {
        self.polynomial().eval(&Rational::from_integer(s))
    }

    /// `(dimension, degree, genus)` with the genus only for curves.
    pub fn summary(&self) -> (i64, u64, Option<i64>) {
        (self.dimension, self.degree, self.arithmetic_genus)
    }
}

/// `HP(s) = sum_j q_j * binom(s - j + d - 1, d - 1)` with `d` the Krull dimension.
fn hilbert_polynomial(q: &[i128], krull: i64) -> UPoly<Rational> {
    let f = Field::Rational;
    if krull <= 0 {
        return UPoly::zero(f);
    }
    let d = krull as usize;
    let mut total = UPoly::<Rational>::zero(f);
    for (j, &qj) in q.iter().enumerate() {
        if qj == 0 {
            continue;
        }
        // binom(s - j + d - 1, d - 1) = prod_{i=1}^{d-1} (s - j + i) / i
        let mut b = UPoly::constant(f, Rational::from_integer(1));
        for i in 1..d {
            let lin = UPoly::new(
                f,
                vec![Rational::new(i as i64 - j as i64, i as i64), Rational::new(1, i as i64)],
            );
            b = b.mul(&lin);
        }
        total = total.add(&b.scale(&Rational::from_integer(qj as i64)));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn empty_ideal_is_projective_space() {
        let h = HilbertData::from_numerator(&hilbert_numerator(&[], 4), 4).unwrap();
        assert_eq!((h.dimension, h.degree), (3, 1));
    }

    #[test]
    fn plane_cubic() {
        // (x^3) in P^2: a plane cubic, genus 1
        let h = HilbertData::from_numerator(&hilbert_numerator(&[m(&[3, 0, 0])], 3), 3).unwrap();
        assert_eq!(h.summary(), (1, 3, Some(1)));
    }

    #[test]
    fn chain_of_three_lines() {
        // (xz, xw, yw): a chain of three lines, Hilbert polynomial 3s+1
        let gens = [m(&[1, 0, 1, 0]), m(&[1, 0, 0, 1]), m(&[0, 1, 0, 1])];
        let h = HilbertData::from_numerator(&hilbert_numerator(&gens, 4), 4).unwrap();
        assert_eq!(h.summary(), (1, 3, Some(0)));
        assert_eq!(h.evaluate(2), Rational::from_integer(7));
    }

    #[test]
    fn unit_ideal_errors() {
        let err = HilbertData::from_numerator(&hilbert_numerator(&[Monomial::one()], 2), 2);
        assert_eq!(err, Err(AlgebraError::UnitIdeal));
    }
}
