//! Planar line-symmetric pods from a plane section of `Y_pinv`, and the
//! symmetroid pencil of leg pairs they admit in space.

use std::sync::Arc;

use podforge_algebra::groebner::shape_lemma;
use podforge_algebra::roots::real_roots_approx;
use podforge_algebra::{Coeff, Field, HilbertData, Ideal, Polynomial, Rational, Ring, RingMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_smooth_hypersurface, rand_vec, to_field, RandomParams};
use crate::duality::{dual_space, recover_leg_pairs_f64, BilinearForm, FormKind, LinearSubspace, Side};
use crate::error::{PodError, Result};
use crate::models::{
    det_poly, ideal_x_pinv, ideal_y_p, ideal_y_pinv, minors, ring, sym_matrix_of, Y_INV_VARS, Y_PINV_VARS,
};
use crate::verify::SpanRestriction;

#[derive(Clone, Debug)]
pub struct CubicPod<C: Coeff> {
    pub rng_seed: u64,
    pub attempt: usize,
    pub field: Field,
    /// The random P^2 in the P^6 of `Y_PINV_VARS`.
    pub plane: LinearSubspace<C>,
    /// Planar configurations dual to the plane, a P^3 in the P^6 of `X_PINV_VARS`.
    pub dual: LinearSubspace<C>,
    /// `Y_pinv` cut by the plane: a plane cubic.
    pub leg_ideal: Ideal<C>,
    pub config_ideal: Ideal<C>,
    /// The leg cubic pulled back to `Y_p`.
    pub lifted_ideal: Ideal<C>,
    pub leg_hilbert: HilbertData,
    pub config_hilbert: HilbertData,
    pub lifted_hilbert: HilbertData,
    /// Degrees of the projections of the lifted curve to the base and the
    /// platform plane, and its bidegree in `P^2 x P^2`.
    pub base_degree: u64,
    pub platform_degree: u64,
    pub bidegree: (u64, u64),
}

/// Pulls the `Y_pinv` coordinates back to `Y_p` through `s_ij = z_ij + z_ji`.
fn symmetric_pullback<C: Coeff>(yp: &Arc<Ring>, field: Field) -> Result<RingMap<C>> {
    let src = ring(&Y_PINV_VARS, field);
    let v = |n: &str| Polynomial::<C>::var_named(yp, n).expect("planar coordinate");
    let images = Y_PINV_VARS
        .iter()
        .map(|name| match name.strip_prefix('s') {
            Some(ij) => {
                let (i, j) = (&ij[..1], &ij[1..]);
                &v(&format!("z{i}{j}")) + &v(&format!("z{j}{i}"))
            }
            None => v(name),
        })
        .collect();
    Ok(RingMap::new(&src, yp, images)?)
}

/// Number of points, with multiplicity, of the lifted curve over a general
/// line of one anchor plane: cut by `sum_i c_i z_ij = 0` for all `j` (base)
/// or `sum_j c_j z_ij = 0` for all `i` (platform).
fn anchor_degree<C: Coeff>(curve: &Ideal<C>, base: bool, c: &[C; 3]) -> Result<u64> {
    let r = curve.ring();
    let field = r.field();
    let mut forms = Vec::new();
    for k in 0..3 {
        let mut coeffs = vec![C::zero(field); r.nvars()];
        for (m, cm) in c.iter().enumerate() {
            let name = if base { format!("z{m}{k}") } else { format!("z{k}{m}") };
            coeffs[r.var_index(&name)?] = cm.clone();
        }
        forms.push(Polynomial::linear_form(r, &coeffs));
    }
    Ok(curve.with_generators(forms)?.hilbert_data()?.degree)
}

/// Degree of the image of the lifted curve in one anchor plane.
fn anchor_image_degree<C: Coeff>(curve: &Ideal<C>, base: bool) -> Result<u64> {
    let keep: Vec<String> = (0..3).map(|k| if base { format!("z{k}0") } else { format!("z0{k}") }).collect();
    let keep: Vec<&str> = keep.iter().map(String::as_str).collect();
    Ok(curve.project(&keep)?.hilbert_data()?.degree)
}

/// A general P^2 in the P^6 of planar leg pairs meets `Y_pinv` in a plane
/// cubic of legs; the dual P^3 meets `X_pinv` in the configuration curve.
/// Planes whose cubic is singular are resampled.
pub fn cubic_line_symmetric<C: Coeff>(rng_seed: u64, params: RandomParams, field: Field) -> Result<CubicPod<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let yinv = ideal_y_pinv::<C>(field);
    let mut last = String::new();
    for attempt in 0..params.retries.max(1) {
        let pts: Vec<Vec<C>> = (0..3).map(|_| to_field(field, &rand_vec(&mut rng, params.bound, 7))).collect();
        let plane = LinearSubspace::points(&Y_PINV_VARS, &pts, field)?;
        if plane.rank() != 3 {
            last = "the three points are collinear".into();
            continue;
        }
        let restricted = SpanRestriction::new(&yinv, &plane)?;
        let Some(cubic) = restricted.ideal.generators().first() else {
            last = "the plane lies in Y_pinv".into();
            continue;
        };
        if !is_smooth_hypersurface(cubic)? {
            last = "the plane cubic is singular".into();
            continue;
        }
        return build(rng_seed, attempt, field, plane, &mut rng);
    }
    Err(PodError::RetriesExhausted { attempts: params.retries.max(1), last })
}

fn build<C: Coeff>(
    rng_seed: u64,
    attempt: usize,
    field: Field,
    plane: LinearSubspace<C>,
    rng: &mut ChaCha8Rng,
) -> Result<CubicPod<C>> {
    let yinv = ideal_y_pinv::<C>(field);
    let forms = plane.linear_forms(yinv.ring())?;
    let leg_ideal = yinv.with_generators(forms.clone())?;
    let form = BilinearForm::<C>::new(FormKind::SbscPlanar7, field);
    let dual = dual_space(&plane, &form, Side::Right)?;
    let xp = ideal_x_pinv::<C>(field)?;
    let config_ideal = xp.with_generators(dual.linear_forms(xp.ring())?)?;

    let yp = ideal_y_p::<C>(field);
    let pull = symmetric_pullback::<C>(yp.ring(), field)?;
    let lifted = forms.iter().map(|f| pull.apply(f)).collect::<podforge_algebra::Result<Vec<_>>>()?;
    let lifted_ideal = yp.with_generators(lifted)?;

    let c: [C; 3] = to_field::<C>(field, &rand_vec(rng, 50, 3)).try_into().expect("three coefficients");
    let bidegree = (anchor_degree(&lifted_ideal, true, &c)?, anchor_degree(&lifted_ideal, false, &c)?);
    Ok(CubicPod {
        rng_seed,
        attempt,
        field,
        leg_hilbert: leg_ideal.hilbert_data()?,
        config_hilbert: config_ideal.hilbert_data()?,
        lifted_hilbert: lifted_ideal.hilbert_data()?,
        base_degree: anchor_image_degree(&lifted_ideal, true)?,
        platform_degree: anchor_image_degree(&lifted_ideal, false)?,
        bidegree,
        plane,
        dual,
        leg_ideal,
        config_ideal,
        lifted_ideal,
    })
}

/// The pencil `w0 E + w1 A1 + w2 A2 + w3 A3` of symmetric 4x4 matrices dual
/// to the spatial involutions over a planar configuration curve.
#[derive(Clone, Debug)]
pub struct SymmetroidPencil<C: Coeff> {
    /// `[E, A1, A2, A3]` as points of the P^10 of `Y_INV_VARS`.
    pub generators: Vec<Vec<C>>,
    pub ring: Arc<Ring>,
    pub det: Polynomial<C>,
    pub h: Polynomial<C>,
    /// `(H, dH/dw_i)`.
    pub node_ideal: Ideal<C>,
    /// Degree of the node scheme; equals the node count when it is reduced.
    pub node_count: u64,
    /// Whether every 3x3 minor of the pencil vanishes on the nodes.
    pub nodes_have_rank_two: bool,
}

impl<C: Coeff> SymmetroidPencil<C> {
    pub fn matrices(&self) -> Vec<[[C; 4]; 4]> {
        self.generators.iter().map(|g| sym_matrix_of(g)).collect()
    }

    /// The `Y_INV_VARS` point `sum w_i G_i`.
    pub fn point_at(&self, w: &[C]) -> Vec<C> {
        let field = self.ring.field();
        let mut out = vec![C::zero(field); 11];
        for (wi, g) in w.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o = o.clone() + wi.clone() * x.clone();
            }
        }
        out
    }
}

/// Builds the symmetroid pencil of a cubic pod. The trace condition of
/// half-turns dualizes to `E = diag(0, 1, 1, 1)` (with `l = -1`), and the
/// three planar configuration conditions to matrices `A_i` supported on the
/// first three rows and columns, so `det = w0 H`.
pub fn symmetroid_pencil<C: Coeff>(pod: &CubicPod<C>) -> Result<SymmetroidPencil<C>> {
    let field = pod.field;
    let form = BilinearForm::<C>::new(FormKind::SbscPlanar7, field);
    // the dual P^3 as linear forms, i.e. the configuration conditions
    let conditions = pod.dual.to_forms().basis;
    if conditions.len() != 3 {
        return Err(PodError::Inconsistent(format!("expected 3 configuration conditions, got {}", conditions.len())));
    }
    // A_i: the Y_pinv point w with B(., w) = condition i
    let mut generators = Vec::with_capacity(4);
    let mut e = vec![C::zero(field); 11];
    for k in 0..3 {
        e[k] = C::one(field).div(&C::from_i64(field, 2)).expect("char != 2");
    }
    e[10] = -C::one(field);
    generators.push(e);
    let solve = form.matrix.inverse()?.ok_or_else(|| PodError::DegenerateForm("planar symmetric form".into()))?;
    let sym_index = |name: &str| Y_INV_VARS.iter().position(|v| *v == name).expect("coordinate");
    for cond in &conditions {
        let w = solve.mul_vec(cond);
        let mut p = vec![C::zero(field); 11];
        for (name, x) in Y_PINV_VARS.iter().zip(w) {
            p[sym_index(name)] = x;
        }
        generators.push(p);
    }

    let r = ring(&["w0", "w1", "w2", "w3"], field);
    let w: Vec<Polynomial<C>> = (0..4).map(|i| Polynomial::var(&r, i)).collect();
    let mats: Vec<[[C; 4]; 4]> = generators.iter().map(|g| sym_matrix_of(g)).collect();
    let pencil: Vec<Vec<Polynomial<C>>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    mats.iter()
                        .zip(&w)
                        .fold(Polynomial::zero(&r), |acc, (m, wk)| &acc + &wk.scale(&m[i][j]))
                })
                .collect()
        })
        .collect();
    let det = det_poly(&r, &pencil);
    let h = det
        .exact_div(&w[0])
        .ok_or_else(|| PodError::Inconsistent(format!("det is not divisible by w0: {det}")))?;
    if h.homogeneous_degree() != Some(3) {
        return Err(PodError::Inconsistent(format!("H = {h} is not a cubic")));
    }
    let mut node_gens = vec![h.clone()];
    node_gens.extend((0..4).map(|i| h.derivative(i)).filter(|p| !p.is_zero()));
    let node_ideal = Ideal::new(&r, node_gens)?;
    let node_count = match node_ideal.hilbert_data() {
        Ok(hd) if hd.dimension == 0 => hd.degree,
        Ok(hd) if hd.dimension < 0 => 0,
        Ok(_) => return Err(PodError::Inconsistent("the symmetroid has a curve of singular points".into())),
        Err(podforge_algebra::AlgebraError::UnitIdeal) => 0,
        Err(e) => return Err(e.into()),
    };
    let mut nodes_have_rank_two = true;
    for m in minors(&r, &pencil, 3) {
        if !node_ideal.contains(&m)? {
            nodes_have_rank_two = false;
            break;
        }
    }
    Ok(SymmetroidPencil { generators, ring: r, det, h, node_ideal, node_count, nodes_have_rank_two })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeSplit {
    Real,
    Complex,
    AtInfinity,
}

/// A real node `w` of the symmetroid and the leg pair `(a, b, d2)` it splits
/// into, when that pair is real with affine anchors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeLegPair {
    pub w: Vec<f64>,
    pub pair: Option<([f64; 3], [f64; 3], f64)>,
    pub split: NodeSplit,
}

/// Real nodes of the symmetroid over the rationals, each split into its leg
/// pair where possible.
pub fn real_node_leg_pairs(
    pencil: &SymmetroidPencil<Rational>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<NodeLegPair>> {
    let r = &pencil.ring;
    let field = r.field();
    let mut out = Vec::new();
    if pencil.node_count == 0 {
        return Ok(out);
    }
    // affine chart w_k = 1, with k the first coordinate not vanishing on all nodes
    for k in 0..4 {
        let mut gens = pencil.node_ideal.generators().to_vec();
        gens.push(&Polynomial::var(r, k) - &Polynomial::one(r));
        let affine = Ideal::affine(r, gens)?;
        let gb = affine.groebner_basis()?;
        let Some(basis) = podforge_algebra::groebner::standard_monomials(r, gb) else { continue };
        if (basis.len() as u64) < pencil.node_count {
            continue;
        }
        let mut shape = None;
        for _ in 0..5 {
            let form: Vec<Rational> = to_field(field, &rand_vec(rng, 10, 4));
            if let Ok(s) = shape_lemma(r, gb, &form) {
                shape = Some(s);
                break;
            }
        }
        let Some(shape) = shape else {
            return Err(PodError::Inconsistent("no separating form for the nodes".into()));
        };
        for t in real_roots_approx(&shape.minpoly, 200) {
            let w: Vec<f64> = shape.point_at(&t).iter().map(|x| x.approx()).collect();
            let gens: Vec<Vec<f64>> =
                pencil.generators.iter().map(|g| g.iter().map(|x| x.approx()).collect()).collect();
            let p: Vec<f64> = (0..11).map(|i| (0..4).map(|k| w[k] * gens[k][i]).sum()).collect();
            let (pair, note) = match recover_leg_pairs_f64(&p) {
                Ok(pair) => (Some(pair), NodeSplit::Real),
                Err(PodError::ComplexLegPair) => (None, NodeSplit::Complex),
                Err(PodError::AnchorAtInfinity) => (None, NodeSplit::AtInfinity),
                Err(e) => return Err(e),
            };
            out.push(NodeLegPair { w, pair, split: note });
        }
        return Ok(out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Y_P_VARS;
    use podforge_algebra::Fp;

    #[test]
    fn pullback_of_a_symmetric_coordinate() {
        let f = Field::Prime(101);
        let yp = ring(&Y_P_VARS, f);
        let m = symmetric_pullback::<Fp>(&yp, f).unwrap();
        let s01 = Polynomial::var_named(m.source(), "s01").unwrap();
        assert_eq!(m.apply(&s01).unwrap(), Polynomial::parse(&yp, "z01+z10").unwrap());
        let l = Polynomial::var_named(m.source(), "l").unwrap();
        assert_eq!(m.apply(&l).unwrap(), Polynomial::parse(&yp, "l").unwrap());
    }

    #[test]
    fn small_cubic_pod() {
        let pod = cubic_line_symmetric::<Fp>(3, RandomParams::default(), Field::Prime(101)).unwrap();
        assert_eq!(pod.leg_hilbert.summary(), (1, 3, Some(1)));
        assert_eq!(pod.config_hilbert.dimension, 1);
        assert_eq!(pod.config_hilbert.degree, 6);
        let s = symmetroid_pencil(&pod).unwrap();
        assert!(s.node_count <= 4);
        assert_eq!(s.h.homogeneous_degree(), Some(3));
    }
}
