//! Zero-dimensional affine systems in shape-lemma position.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::univariate::UPoly;

use super::buchberger::normal_form;

/// Standard monomials of a zero-dimensional ideal given its Gröbner basis,
/// or `None` if the quotient is infinite-dimensional.
pub fn standard_monomials<C: Coeff>(ring: &Ring, gb: &[Polynomial<C>]) -> Option<Vec<Monomial>> {
    let n = ring.nvars();
    let lms: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial()).collect();
    for v in 0..n {
        let pure = lms.iter().any(|m| m.exponent(v) > 0 && (0..n).all(|w| w == v || m.exponent(w) == 0));
        if !pure {
            return None;
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![Monomial::one()];
    if lms.iter().any(|m| m.is_one()) {
        return Some(out);
    }
    seen.insert(Monomial::one());
    while let Some(m) = stack.pop() {
        out.push(m);
        for v in 0..n {
            let next = m.mul(&Monomial::var(v, 1));
            if seen.contains(&next) || lms.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next);
            stack.push(next);
        }
    }
    out.sort_by(|a, b| ring.cmp(a, b));
    Some(out)
}

/// Solutions `x_i = g_i(T)` with `mu(T) = 0`, where `T` is the value of the
/// separating linear form `sum t_i x_i`.
#[derive(Clone, Debug)]
pub struct ShapeLemma<C: Coeff> {
    pub form: Vec<C>,
    pub minpoly: UPoly<C>,
    pub coords: Vec<UPoly<C>>,
}

impl<C: Coeff> ShapeLemma<C> {
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// The point over a root `t` of the minimal polynomial.
    pub fn point_at(&self, t: &C) -> Vec<C> {
        self.coords.iter().map(|g| g.eval(t)).collect()
    }
}

fn coords_of<C: Coeff>(p: &Polynomial<C>, index: &HashMap<Monomial, usize>, field: crate::field::Field) -> Vec<C> {
    let mut v = vec![C::zero(field); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

/// Shape-lemma presentation of the affine ideal with reduced degrevlex basis
/// `gb`, using the linear form with coefficients `form`. Fails with
/// `NotSeparating` when the form's minimal polynomial has degree below the
/// quotient dimension (non-separating form or non-radical ideal).
pub fn shape_lemma<C: Coeff>(
    ring: &Arc<Ring>,
    gb: &[Polynomial<C>],
    form: &[C],
) -> Result<ShapeLemma<C>> {
    let field = ring.field();
    let basis = standard_monomials(ring, gb).ok_or(AlgebraError::NotZeroDimensional)?;
    let dim = basis.len();
    if dim == 0 {
        return Ok(ShapeLemma {
            form: form.to_vec(),
            minpoly: UPoly::constant(field, C::one(field)),
            coords: vec![UPoly::zero(field); ring.nvars()],
        });
    }
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let t = Polynomial::linear_form(ring, form);

    // Krylov vectors NF(t^k), k = 0..=dim.
    let mut powers = vec![Polynomial::one(ring)];
    for k in 1..=dim {
        let next = normal_form(&(&powers[k - 1] * &t), gb);
        powers.push(next);
    }
    // Columns are coordinate vectors of t^0..t^{dim-1}.
    let mut m = Matrix::zeros(field, dim, dim);
    for (k, p) in powers[..dim].iter().enumerate() {
        for (i, c) in coords_of(p, &index, field).into_iter().enumerate() {
            m[(i, k)] = c;
        }
    }
    let target = coords_of(&powers[dim], &index, field);
    let Some(inv) = m.inverse()? else {
        return Err(AlgebraError::NotSeparating(format!(
            "powers of the form do not span the {dim}-dimensional quotient"
        )));
    };
    let lower = inv.mul_vec(&target);
    let mut mu: Vec<C> = lower.into_iter().map(|c| -c).collect();
    mu.push(C::one(field));
    let minpoly = UPoly::new(field, mu);

    let mut coords = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        let xv = normal_form(&Polynomial::var(ring, v), gb);
        let g = inv.mul_vec(&coords_of(&xv, &index, field));
        coords.push(UPoly::new(field, g));
    }
    Ok(ShapeLemma { form: form.to_vec(), minpoly, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Fp, Rational};
    use crate::groebner::buchberger::{groebner_basis, GbOptions};

    #[test]
    fn circle_meets_line() {
        let r = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let gens: Vec<Polynomial<Rational>> =
            ["x^2+y^2-5", "x-2*y"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        let gb = groebner_basis(&r, &gens, &GbOptions::default()).unwrap();
        assert_eq!(standard_monomials(&r, &gb).unwrap().len(), 2);
        let form = vec![Rational::from_integer(1), Rational::from_integer(3)];
        let s = shape_lemma(&r, &gb, &form).unwrap();
        assert_eq!(s.degree(), 2);
        // Points (2,1) and (-2,-1): T = x + 3y = +-5.
        for t in [5, -5] {
            let p = s.point_at(&Rational::from_integer(t));
            assert!(gens.iter().all(|g| g.evaluate(&p).is_zero()));
        }
    }

    #[test]
    fn non_separating_form_is_detected() {
        let r = Ring::new(&["x", "y"], Field::Prime(101)).unwrap();
        let gens: Vec<Polynomial<Fp>> =
            ["x^2-1", "y^2-4"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        let gb = groebner_basis(&r, &gens, &GbOptions::default()).unwrap();
        // x alone does not separate the four points
        let err = shape_lemma(&r, &gb, &[Fp::new(1, 101), Fp::new(0, 101)]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSeparating(_)));
        assert!(shape_lemma(&r, &gb, &[Fp::new(1, 101), Fp::new(3, 101)]).is_ok());
    }
}
