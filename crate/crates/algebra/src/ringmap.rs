use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Substitution homomorphism: source variable `i` goes to `images[i]`.
#[derive(Clone, Debug)]
pub struct RingMap<C: Coeff> {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Polynomial<C>>,
}

impl<C: Coeff> RingMap<C> {
    pub fn new(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<Polynomial<C>>) -> Result<Self> {
        if images.len() != source.nvars() {
            let missing = source.vars().get(images.len()).cloned().unwrap_or_default();
            return Err(AlgebraError::MapIncomplete(missing));
        }
        for img in &images {
            if !same_ring(img.ring(), target) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a map from `(source variable name, image)` pairs covering every
    /// source variable.
    pub fn from_named(
        source: &Arc<Ring>,
        target: &Arc<Ring>,
        pairs: Vec<(&str, Polynomial<C>)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Polynomial<C>>> = vec![None; source.nvars()];
        for (name, img) in pairs {
            slots[source.var_index(name)?] = Some(img);
        }
        let mut images = Vec::with_capacity(slots.len());
        for (i, s) in slots.into_iter().enumerate() {
            images.push(s.ok_or_else(|| AlgebraError::MapIncomplete(source.vars()[i].clone()))?);
        }
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<C>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial<C> {
        &self.images[i]
    }

    /// Checks that every image is homogeneous of degree `k * weight`.
    pub fn check_graded(&self, k: u32) -> Result<()> {
        for (i, img) in self.images.iter().enumerate() {
            let want = k * self.source.weights()[i];
            if !img.is_zero() && img.homogeneous_degree() != Some(want) {
                return Err(AlgebraError::NotGraded(format!(
                    "image of `{}` is not homogeneous of degree {want}",
                    self.source.vars()[i]
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        if !same_ring(f.ring(), &self.source) {
            return Err(AlgebraError::RingMismatch);
        }
        let n = self.source.nvars();
        // Cache powers of the images as they are needed.
        let mut powers: Vec<Vec<Polynomial<C>>> = vec![vec![Polynomial::one(&self.target)]; n];
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in f.terms() {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &self.images[i];
                    pw.push(next);
                }
                term = &term * &pw[e];
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &RingMap<C>) -> Result<RingMap<C>> {
        if !same_ring(&self.target, &other.source) {
            return Err(AlgebraError::RingMismatch);
        }
        let images = self.images.iter().map(|g| other.apply(g)).collect::<Result<Vec<_>>>()?;
        Ok(RingMap { source: self.source.clone(), target: other.target.clone(), images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rational};

    #[test]
    fn identity_is_trivial() {
        let r = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let f = Polynomial::<Rational>::parse(&r, "x^2*y-3*y+1/2").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&f).unwrap(), f);
    }

    #[test]
    fn incomplete_map_is_rejected() {
        let s = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let t = Ring::new(&["u"], Field::Rational).unwrap();
        let err = RingMap::from_named(&s, &t, vec![("x", Polynomial::<Rational>::var(&t, 0))]).unwrap_err();
        assert_eq!(err, AlgebraError::MapIncomplete("y".into()));
    }

    #[test]
    fn substitution_and_grading() {
        let s = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let t = Ring::new(&["u", "v"], Field::Rational).unwrap();
        let u = Polynomial::<Rational>::var(&t, 0);
        let v = Polynomial::<Rational>::var(&t, 1);
        let phi = RingMap::new(&s, &t, vec![&u * &u, &u * &v]).unwrap();
        phi.check_graded(2).unwrap();
        assert!(phi.check_graded(1).is_err());
        let f = Polynomial::parse(&s, "x*y-y^2").unwrap();
        assert_eq!(phi.apply(&f).unwrap(), Polynomial::parse(&t, "u^3*v-u^2*v^2").unwrap());
    }
}
