pub mod buchberger;
pub mod hilbert;
pub mod zerodim;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, Field};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingDescriptor};

pub use buchberger::{groebner_basis, is_groebner_basis, normal_form, s_polynomial, GbOptions};
pub use hilbert::{hilbert_numerator, HilbertData};
pub use zerodim::{shape_lemma, standard_monomials, ShapeLemma};

/// Polynomial ideal with a lazily computed reduced Gröbner basis in the
/// ring's monomial order.
pub struct Ideal<C: Coeff> {
    ring: Arc<Ring>,
    generators: Vec<Polynomial<C>>,
    gb: OnceLock<Vec<Polynomial<C>>>,
}

impl<C: Coeff> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), gb }
    }
}

impl<C: Coeff> std::fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("vars", &self.ring.vars()).field("generators", &self.generators).finish()
    }
}

/// JSON form `{ring: {vars, weights, field}, generators: [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingDescriptor,
    pub generators: Vec<String>,
}

impl<C: Coeff> Ideal<C> {
    /// Ideal of homogeneous generators.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial<C>>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous(g.to_string()));
            }
        }
        Ok(Self::from_parts(ring, generators))
    }

    /// Ideal without the homogeneity requirement (affine charts).
    pub fn affine(ring: &Arc<Ring>, generators: Vec<Polynomial<C>>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(Self::from_parts(ring, generators))
    }

    fn from_parts(ring: &Arc<Ring>, generators: Vec<Polynomial<C>>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), generators, gb: OnceLock::new() }
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let g = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, g)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn groebner_basis(&self) -> Result<&[Polynomial<C>]> {
        self.groebner_basis_with(&GbOptions::default())
    }

    pub fn groebner_basis_with(&self, opts: &GbOptions) -> Result<&[Polynomial<C>]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let gb = groebner_basis(&self.ring, &self.generators, opts)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(normal_form(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<C>) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant() && !g.is_zero()))
    }

    pub fn with_generators(&self, extra: Vec<Polynomial<C>>) -> Result<Self> {
        let mut g = self.generators.clone();
        g.extend(extra);
        if self.is_homogeneous() {
            Self::new(&self.ring, g)
        } else {
            Self::affine(&self.ring, g)
        }
    }

    pub fn sum(&self, other: &Ideal<C>) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        self.with_generators(other.generators.clone())
    }

    /// The same ideal in `target`, whose variables include ours by name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Self> {
        let g = self.generators.iter().map(|p| p.to_ring(target)).collect::<Result<Vec<_>>>()?;
        Self::affine(target, g)
    }

    /// `I ∩ k[kept variables]`, computed with a two-block elimination order.
    /// The result lives in a degrevlex ring on the remaining variables, in
    /// their original order.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Self> {
        let vars = self.ring.vars();
        let weights = self.ring.weights();
        let mut drop_idx = Vec::new();
        for d in drop {
            drop_idx.push(self.ring.var_index(d)?);
        }
        let keep_idx: Vec<usize> = (0..vars.len()).filter(|i| !drop_idx.contains(i)).collect();
        let keep_names: Vec<&str> = keep_idx.iter().map(|&i| vars[i].as_str()).collect();
        let keep_weights: Vec<u32> = keep_idx.iter().map(|&i| weights[i]).collect();
        let field = self.ring.field();
        let sub = Ring::build(&keep_names, keep_weights, MonomialOrder::DegRevLex, field)?;
        if drop_idx.is_empty() {
            return self.to_ring(&sub);
        }
        let mut order_idx = drop_idx.clone();
        order_idx.sort();
        let order_names: Vec<&str> =
            order_idx.iter().chain(keep_idx.iter()).map(|&i| vars[i].as_str()).collect();
        let order_weights: Vec<u32> = order_idx.iter().chain(keep_idx.iter()).map(|&i| weights[i]).collect();
        let elim = Ring::build(
            &order_names,
            order_weights,
            MonomialOrder::elimination(order_idx.len(), vars.len()),
            field,
        )?;
        let lifted = self.to_ring(&elim)?;
        let gb = lifted.groebner_basis()?;
        let kept_mask: u32 = (order_idx.len()..vars.len()).fold(0, |m, i| m | (1 << i));
        let sub_perm: Vec<usize> = (0..vars.len())
            .map(|i| if i < order_idx.len() { usize::MAX } else { i - order_idx.len() })
            .collect();
        let mut out = Vec::new();
        for g in gb {
            if g.terms().iter().all(|(m, _)| m.support_mask() & !kept_mask == 0) {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = vec![0u32; keep_idx.len()];
                        for (i, &j) in sub_perm.iter().enumerate() {
                            if j != usize::MAX {
                                e[j] = m.exponent(i);
                            }
                        }
                        (crate::monomial::Monomial::from_exponents(&e).unwrap(), c.clone())
                    })
                    .collect();
                out.push(Polynomial::from_terms(&sub, terms));
            }
        }
        Self::affine(&sub, out)
    }

    /// Closure of the projection onto the coordinates in `keep`.
    pub fn project(&self, keep: &[&str]) -> Result<Self> {
        for k in keep {
            self.ring.var_index(k)?;
        }
        let drop: Vec<&str> =
            self.ring.vars().iter().map(|s| s.as_str()).filter(|v| !keep.contains(v)).collect();
        self.eliminate(&drop)
    }

    /// Basis of the degree-one part (for a homogeneous ideal in a graded order).
    pub fn linear_part(&self) -> Result<Vec<Polynomial<C>>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .filter(|g| g.homogeneous_degree() == Some(1))
            .cloned()
            .collect())
    }

    pub fn hilbert_data(&self) -> Result<HilbertData> {
        if !self.ring.is_standard_graded() {
            return Err(AlgebraError::WeightedRing);
        }
        if let Some(g) = self.generators.iter().find(|g| !g.is_homogeneous()) {
            return Err(AlgebraError::NotHomogeneous(g.to_string()));
        }
        let lms: Vec<_> = self.groebner_basis()?.iter().filter_map(|g| g.leading_monomial()).collect();
        HilbertData::from_numerator(&hilbert_numerator(&lms, self.ring.nvars()), self.ring.nvars())
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: self.ring.descriptor(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(json: &IdealJson, default_field: Field) -> Result<Self> {
        let ring = json.ring.to_ring(default_field)?;
        let gens = json
            .generators
            .iter()
            .map(|s| Polynomial::parse(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::affine(&ring, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    #[test]
    fn eliminate_to_nothing() {
        let r = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let i = Ideal::<Rational>::parse(&r, &["x-y"]).unwrap();
        let e = i.eliminate(&["x"]).unwrap();
        assert!(e.generators().is_empty());
        assert_eq!(e.ring().vars(), ["y"]);
    }

    #[test]
    fn linear_part_picks_degree_one() {
        let r = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let i = Ideal::<Rational>::parse(&r, &["x+y", "x^2"]).unwrap();
        let lin = i.linear_part().unwrap();
        assert_eq!(lin, vec![Polynomial::parse(&r, "x+y").unwrap()]);
    }

    #[test]
    fn line_in_p3() {
        let r = Ring::new(&["a", "b", "c", "d"], Field::Prime(101)).unwrap();
        let i = Ideal::<Fp>::parse(&r, &["3*a+5*b-c+7*d", "a-2*b+9*c+d"]).unwrap();
        assert_eq!(i.hilbert_data().unwrap().summary(), (1, 1, Some(0)));
    }

    #[test]
    fn membership_and_constants() {
        let r = Ring::new(&["x", "y", "z"], Field::Rational).unwrap();
        let i = Ideal::<Rational>::parse(&r, &["x^2-y*z", "x*y-z^2"]).unwrap();
        assert!(i.contains(&i.generators()[0]).unwrap());
        let one = Polynomial::one(&r);
        assert_eq!(i.normal_form(&one).unwrap(), one);
        assert!(!i.is_unit().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::new(&["x", "y"], Field::Prime(101)).unwrap();
        let i = Ideal::<Fp>::parse(&r, &["x^2-3*y^2", "x*y"]).unwrap();
        let j = serde_json::to_string(&i.to_json()).unwrap();
        let back: IdealJson = serde_json::from_str(&j).unwrap();
        let i2 = Ideal::<Fp>::from_json(&back, Field::Rational).unwrap();
        assert_eq!(i2.generators(), i.generators());
    }

    #[test]
    fn weighted_ring_has_no_hilbert_data() {
        let r = Ring::build(&["e", "p"], vec![1, 2], MonomialOrder::DegRevLex, Field::Rational).unwrap();
        let i = Ideal::<Rational>::parse(&r, &["e^2-p"]).unwrap();
        assert_eq!(i.hilbert_data(), Err(AlgebraError::WeightedRing));
    }
}
