//! Buchberger's algorithm with the Gebauer-Möller criteria and the sugar
//! selection strategy.
//!
//! Over `F_p` basis elements are kept monic. Over the rationals reductions are
//! fraction-free and every new element is made primitive; the final reduced
//! basis is monic in both cases.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::poly::{sub_mul_terms, Polynomial, Term};
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct GbOptions {
    /// Abort after this many S-pairs have been reduced.
    pub max_pairs: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { max_pairs: 5_000_000 }
    }
}

struct Entry<C: Coeff> {
    terms: Vec<Term<C>>,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reducers available to the division step.
pub(crate) struct Reducers<'a, C: Coeff> {
    ring: &'a Ring,
    polys: Vec<(&'a [Term<C>], Monomial, u32)>,
}

impl<'a, C: Coeff> Reducers<'a, C> {
    pub(crate) fn new(ring: &'a Ring, basis: &'a [Polynomial<C>]) -> Self {
        let polys = basis
            .iter()
            .filter_map(|p| p.leading_monomial().map(|m| (p.terms(), m, m.support_mask())))
            .collect();
        Reducers { ring, polys }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<&(&'a [Term<C>], Monomial, u32)> {
        let mask = m.support_mask();
        self.polys.iter().find(|(_, lm, lmask)| lmask & !mask == 0 && lm.divides(m))
    }
}

/// Fully reduces `f`. With `exact` the result is the true remainder (reducers
/// must be monic); otherwise it is a nonzero scalar multiple of it.
pub(crate) fn reduce<C: Coeff>(
    reducers: &Reducers<'_, C>,
    f: Vec<Term<C>>,
    exact: bool,
) -> Vec<Term<C>> {
    let ring = reducers.ring;
    let mut f = f;
    let mut start = 0;
    let mut rem: Vec<Term<C>> = Vec::new();
    let fraction_free = C::FRACTION_FREE && !exact;
    let mut steps = 0usize;
    while start < f.len() {
        let (m, c) = (f[start].0, f[start].1.clone());
        match reducers.find(&m) {
            Some((g, glm, _)) => {
                let t = glm.quotient_of(&m).unwrap();
                let glc = &g[0].1;
                if fraction_free {
                    let (a, b) = C::cancel_factors(&c, glc);
                    let mut tail: Vec<Term<C>> = f.drain(start..).collect();
                    if !a.is_one() {
                        for term in tail.iter_mut() {
                            term.1 = term.1.clone() * a.clone();
                        }
                        for term in rem.iter_mut() {
                            term.1 = term.1.clone() * a.clone();
                        }
                    }
                    f = sub_mul_terms(ring, &tail, &b, &t, g);
                    steps += 1;
                    if steps.is_multiple_of(16) {
                        content_reduce(&mut rem, &mut f);
                    }
                } else {
                    let k = if glc.is_one() { c } else { c.div(glc).unwrap() };
                    f = sub_mul_terms(ring, &f[start..], &k, &t, g);
                }
                start = 0;
            }
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    if fraction_free {
        let mut empty = Vec::new();
        content_reduce(&mut rem, &mut empty);
    }
    rem
}

/// Divides both parts by the content of their union.
fn content_reduce<C: Coeff>(a: &mut Vec<Term<C>>, b: &mut Vec<Term<C>>) {
    let mut coeffs: Vec<C> = a.iter().chain(b.iter()).map(|t| t.1.clone()).collect();
    if coeffs.is_empty() {
        return;
    }
    // Keep the sign of the first coefficient so the scaling is positive.
    let negative = coeffs[0].is_negative();
    C::remove_content(&mut coeffs);
    let mut it = coeffs.into_iter();
    for t in a.iter_mut().chain(b.iter_mut()) {
        let v = it.next().unwrap();
        t.1 = if negative { -v } else { v };
    }
}

fn normalize<C: Coeff>(terms: &mut [Term<C>]) {
    if C::FRACTION_FREE {
        let mut coeffs: Vec<C> = terms.iter().map(|t| t.1.clone()).collect();
        C::remove_content(&mut coeffs);
        for (t, c) in terms.iter_mut().zip(coeffs) {
            t.1 = c;
        }
    } else if let Some(lc) = terms.first().map(|t| t.1.clone()) {
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            for t in terms.iter_mut() {
                t.1 = t.1.clone() * inv.clone();
            }
        }
    }
}

fn make_monic<C: Coeff>(terms: &mut [Term<C>]) {
    if let Some(lc) = terms.first().map(|t| t.1.clone()) {
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            for t in terms.iter_mut() {
                t.1 = t.1.clone() * inv.clone();
            }
        }
    }
}

struct State<'r, C: Coeff> {
    ring: &'r Arc<Ring>,
    basis: Vec<Entry<C>>,
    pairs: Vec<Pair>,
}

impl<'r, C: Coeff> State<'r, C> {
    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| self.ring.cmp(&a.lcm, &b.lcm))
            .then_with(|| a.i.cmp(&b.i))
            .then_with(|| a.j.cmp(&b.j))
    }

    /// Gebauer-Möller update after appending `h` as the last basis entry.
    fn update(&mut self) {
        let k = self.basis.len() - 1;
        let hlm = self.basis[k].lm;
        let hsugar = self.basis[k].sugar;
        let ring = self.ring;

        let cands: Vec<(usize, Monomial, bool)> = (0..k)
            .filter(|&i| self.basis[i].active)
            .map(|i| {
                let lm = self.basis[i].lm;
                (i, lm.lcm(&hlm), lm.is_coprime(&hlm))
            })
            .collect();

        // Chain criterion among the new pairs: drop (g, h) when another new
        // pair has an lcm properly dividing its lcm.
        let mut keep: Vec<bool> = cands
            .iter()
            .map(|(_, la, _)| !cands.iter().any(|(_, lb, _)| lb != la && lb.divides(la)))
            .collect();
        // Among pairs with equal lcm keep the first, and drop the whole class
        // when one of its members has coprime leading monomials.
        let mut new_pairs = Vec::new();
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            let mut coprime = cands[a].2;
            for b in a + 1..cands.len() {
                if keep[b] && cands[b].1 == cands[a].1 {
                    keep[b] = false;
                    coprime |= cands[b].2;
                }
            }
            if coprime {
                continue;
            }
            let (i, lcm, _) = cands[a];
            let g = &self.basis[i];
            let sg = g.sugar + ring.degree(&g.lm.quotient_of(&lcm).unwrap());
            let sh = hsugar + ring.degree(&hlm.quotient_of(&lcm).unwrap());
            new_pairs.push(Pair { i, j: k, lcm, sugar: sg.max(sh) });
        }

        // Old pairs made redundant by h.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(&hlm);
            let lj = basis[p.j].lm.lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for i in 0..k {
            if self.basis[i].active && hlm.divides(&self.basis[i].lm) {
                self.basis[i].active = false;
            }
        }
    }

    fn push(&mut self, mut terms: Vec<Term<C>>, sugar: u32) {
        normalize(&mut terms);
        let lm = terms[0].0;
        self.basis.push(Entry { terms, lm, mask: lm.support_mask(), sugar, active: true });
        self.update();
    }

    fn s_polynomial(&self, p: &Pair) -> Vec<Term<C>> {
        let (fi, fj) = (&self.basis[p.i], &self.basis[p.j]);
        let ti = fi.lm.quotient_of(&p.lcm).unwrap();
        let tj = fj.lm.quotient_of(&p.lcm).unwrap();
        let (a, b) = C::cancel_factors(&fi.terms[0].1, &fj.terms[0].1);
        let scaled: Vec<Term<C>> =
            fi.terms[1..].iter().map(|(m, c)| (m.mul(&ti), c.clone() * a.clone())).collect();
        sub_mul_terms(self.ring, &scaled, &b, &tj, &fj.terms[1..])
    }

    fn reducers(&self) -> Reducers<'_, C> {
        Reducers {
            ring: self.ring,
            polys: self
                .basis
                .iter()
                .filter(|e| e.active)
                .map(|e| (e.terms.as_slice(), e.lm, e.mask))
                .collect(),
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the order of
/// `ring`, sorted by increasing leading monomial.
pub fn groebner_basis<C: Coeff>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<C>],
    opts: &GbOptions,
) -> Result<Vec<Polynomial<C>>> {
    let mut state = State { ring, basis: Vec::new(), pairs: Vec::new() };

    // Feed generators in increasing order of degree so early ones reduce later.
    let mut input: Vec<(u32, Vec<Term<C>>)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.degree().unwrap(), g.terms().to_vec()))
        .collect();
    input.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| ring.cmp(&a.1[0].0, &b.1[0].0)));
    for (deg, terms) in input {
        let red = {
            let r = state.reducers();
            reduce(&r, terms, false)
        };
        if red.is_empty() {
            continue;
        }
        if red[0].0.is_one() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        state.push(red, deg);
    }

    let mut processed = 0usize;
    while !state.pairs.is_empty() {
        // Select the smallest pair.
        let mut best = 0;
        for idx in 1..state.pairs.len() {
            if state.pair_cmp(&state.pairs[idx], &state.pairs[best]) == Ordering::Less {
                best = idx;
            }
        }
        let pair = state.pairs.swap_remove(best);
        processed += 1;
        if processed > opts.max_pairs {
            let degree = pair.sugar;
            return Err(AlgebraError::BudgetExhausted {
                pairs: processed - 1,
                basis: state.basis.iter().filter(|e| e.active).count(),
                degree,
            });
        }
        let s = state.s_polynomial(&pair);
        if s.is_empty() {
            continue;
        }
        let red = {
            let r = state.reducers();
            reduce(&r, s, false)
        };
        if red.is_empty() {
            continue;
        }
        if red[0].0.is_one() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        state.push(red, pair.sugar);
    }

    // Interreduce the minimal basis.
    let mut minimal: Vec<Polynomial<C>> = state
        .basis
        .into_iter()
        .filter(|e| e.active)
        .map(|mut e| {
            make_monic(&mut e.terms);
            Polynomial::from_sorted_terms(ring, e.terms)
        })
        .collect();
    minimal.sort_by(|a, b| ring.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<C>> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let r = Reducers::new(ring, &others);
        let lead = minimal[i].terms()[0].clone();
        let tail = reduce(&r, minimal[i].terms()[1..].to_vec(), true);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(lead);
        terms.extend(tail);
        reduced.push(Polynomial::from_sorted_terms(ring, terms));
    }
    Ok(reduced)
}

/// Remainder of `f` modulo a monic Gröbner basis.
pub fn normal_form<C: Coeff>(f: &Polynomial<C>, gb: &[Polynomial<C>]) -> Polynomial<C> {
    let ring = f.ring();
    let r = Reducers::new(ring, gb);
    Polynomial::from_sorted_terms(ring, reduce(&r, f.terms().to_vec(), true))
}

/// S-polynomial of two polynomials (leading terms cancel).
pub fn s_polynomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let (fm, fc) = f.leading_term().cloned().expect("nonzero");
    let (gm, gc) = g.leading_term().cloned().expect("nonzero");
    let lcm = fm.lcm(&gm);
    let tf = fm.quotient_of(&lcm).unwrap();
    let tg = gm.quotient_of(&lcm).unwrap();
    let a = fc.inv().unwrap();
    let b = gc.inv().unwrap();
    &f.mul_term(&tf, &a) - &g.mul_term(&tg, &b)
}

/// Checks Buchberger's criterion on every pair (or on the first `max_pairs`).
pub fn is_groebner_basis<C: Coeff>(gb: &[Polynomial<C>], max_pairs: Option<usize>) -> bool {
    let monic: Vec<Polynomial<C>> = gb.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut checked = 0;
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (a, b) = (&monic[i], &monic[j]);
            if a.leading_monomial().unwrap().is_coprime(&b.leading_monomial().unwrap()) {
                continue;
            }
            if let Some(limit) = max_pairs {
                if checked >= limit {
                    return true;
                }
            }
            checked += 1;
            if !normal_form(&s_polynomial(a, b), &monic).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Fp, Rational};

    fn parse_all<C: Coeff>(ring: &Arc<Ring>, s: &[&str]) -> Vec<Polynomial<C>> {
        s.iter().map(|p| Polynomial::parse(ring, p).unwrap()).collect()
    }

    #[test]
    fn single_variable() {
        let r = Ring::new(&["x"], Field::Rational).unwrap();
        let gb = groebner_basis(&r, &parse_all::<Rational>(&r, &["3*x"]), &GbOptions::default()).unwrap();
        assert_eq!(gb, parse_all(&r, &["x"]));
    }

    #[test]
    fn twisted_cubic_slice() {
        // x^2 - y z, x y - z^2 in degrevlex x > y > z. By hand:
        // S = y(x^2 - yz) - x(xy - z^2) = x z^2 - y^2 z, whose leading term is
        // y^2 z (smaller power of the last variable). The remaining pairs
        // reduce to zero, so the reduced basis is
        // {x y - z^2, x^2 - y z, y^2 z - x z^2}.
        let r = Ring::new(&["x", "y", "z"], Field::Rational).unwrap();
        let gens = parse_all::<Rational>(&r, &["x^2-y*z", "x*y-z^2"]);
        let gb = groebner_basis(&r, &gens, &GbOptions::default()).unwrap();
        let want = parse_all::<Rational>(&r, &["x*y-z^2", "x^2-y*z", "y^2*z-x*z^2"]);
        assert_eq!(gb, want);
        assert!(is_groebner_basis(&gb, None));
        // x^3 - z^3 lies in the ideal: x(x^2 - yz) + z(xy - z^2).
        let f = Polynomial::parse(&r, "x^3-z^3").unwrap();
        assert!(normal_form(&f, &gb).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::new(&["x", "y"], Field::Prime(101)).unwrap();
        let gens = parse_all::<Fp>(&r, &["x*y-1", "x"]);
        let gb = groebner_basis(&r, &gens, &GbOptions::default()).unwrap();
        assert_eq!(gb, vec![Polynomial::one(&r)]);
    }

    #[test]
    fn budget_abort() {
        let r = Ring::new(&["x", "y", "z"], Field::Prime(101)).unwrap();
        let gens = parse_all::<Fp>(&r, &["x^3-y*z^2+x*y*z", "y^3-x^2*z+z^3", "x*y^2-z^3+x^2*y"]);
        let err = groebner_basis(&r, &gens, &GbOptions { max_pairs: 1 }).unwrap_err();
        assert!(matches!(err, AlgebraError::BudgetExhausted { .. }));
    }

    #[test]
    fn rational_and_modular_agree_on_leading_monomials() {
        let gq = Ring::new(&["x", "y", "z", "w"], Field::Rational).unwrap();
        let gp = gq.with_field(Field::Prime(32003));
        let src = ["x^2+3*y*z-w^2", "x*y-2*z^2+w*x", "y^2-x*w+5*z*w"];
        let a = groebner_basis(&gq, &parse_all::<Rational>(&gq, &src), &GbOptions::default()).unwrap();
        let b = groebner_basis(&gp, &parse_all::<Fp>(&gp, &src), &GbOptions::default()).unwrap();
        let la: Vec<_> = a.iter().map(|p| p.leading_monomial()).collect();
        let lb: Vec<_> = b.iter().map(|p| p.leading_monomial()).collect();
        assert_eq!(la, lb);
        assert!(is_groebner_basis(&a, None));
    }
}
