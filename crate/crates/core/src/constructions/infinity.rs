//! Line-symmetric infinity-pods from a plane quartic of half-turns.
//!
//! The rotational part is a quartic `F = |P|^2 - U |e|^2` in the plane
//! `e0 = 0`, where `P = L x e` for a random linear map `L`. The lift through
//! `rho` spans a P^5, so its dual is a P^10 of leg points meeting `Y` in a
//! curve of legs.

use std::sync::Arc;

use podforge_algebra::{Coeff, Field, HilbertData, Ideal, IdealJson, Monomial, MonomialOrder, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_smooth_hypersurface, rand_vec, to_field, RandomParams};
use crate::duality::{dual_space, BilinearForm, FormKind, LinearSubspace, Side, SubspaceJson};
use crate::error::{PodError, Result};
use crate::models::{self, E_VARS, X_VARS, Y_INV_VARS};

/// Integer data of one run: `L_i = sum_k l[i][k] e_k` and `U` on the
/// monomials `e1^2, e1 e2, e1 e3, e2^2, e2 e3, e3^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSeed {
    pub l: [[i64; 3]; 3],
    pub u: [i64; 6],
    /// Coefficient of `F` in `|P|^2 = U |e|^2 + V F`; always 1.
    pub v: i64,
    pub rng_seed: u64,
    /// Index of the accepted draw in the seeded stream.
    pub attempt: usize,
}

const QUAD_EXPONENTS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

impl ConstructionSeed {
    pub fn new(l: [[i64; 3]; 3], u: [i64; 6]) -> Self {
        ConstructionSeed { l, u, v: 1, rng_seed: 0, attempt: 0 }
    }

    fn draw(rng: &mut ChaCha8Rng, bound: i64, rng_seed: u64, attempt: usize) -> Self {
        let v = rand_vec(rng, bound, 15);
        ConstructionSeed {
            l: [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]],
            u: [v[9], v[10], v[11], v[12], v[13], v[14]],
            v: 1,
            rng_seed,
            attempt,
        }
    }

    /// `P`, `U` and `F` over `field`, in the ring `k[e1, e2, e3]`.
    pub fn polynomials<C: Coeff>(&self, field: Field) -> SeedPolynomials<C> {
        let ring = models::ring(&E_VARS, field);
        let e: Vec<Polynomial<C>> = (0..3).map(|i| Polynomial::var(&ring, i)).collect();
        let lin: Vec<Polynomial<C>> =
            self.l.iter().map(|row| Polynomial::linear_form(&ring, &to_field::<C>(field, row))).collect();
        // P = L x e
        let p = [
            &(&lin[1] * &e[2]) - &(&lin[2] * &e[1]),
            &(&lin[2] * &e[0]) - &(&lin[0] * &e[2]),
            &(&lin[0] * &e[1]) - &(&lin[1] * &e[0]),
        ];
        let u = Polynomial::from_terms(
            &ring,
            QUAD_EXPONENTS
                .iter()
                .zip(self.u.iter())
                .map(|(ex, &c)| (Monomial::from_exponents(ex).expect("small"), C::from_i64(field, c)))
                .collect(),
        );
        let norm = (0..3).fold(Polynomial::zero(&ring), |acc, i| &acc + &(&e[i] * &e[i]));
        let psq = p.iter().fold(Polynomial::zero(&ring), |acc, q| &acc + &(q * q));
        let f = &psq - &(&u * &norm);
        SeedPolynomials { ring, p, u, f, norm }
    }
}

#[derive(Clone, Debug)]
pub struct SeedPolynomials<C: Coeff> {
    pub ring: Arc<Ring>,
    pub p: [Polynomial<C>; 3],
    pub u: Polynomial<C>,
    pub f: Polynomial<C>,
    /// `e1^2 + e2^2 + e3^2`
    pub norm: Polynomial<C>,
}

impl<C: Coeff> SeedPolynomials<C> {
    /// Admissibility of the seed; the message names the failed condition.
    pub fn check(&self) -> Result<()> {
        if self.p.iter().all(|q| q.is_zero()) {
            return Err(PodError::DegenerateSeed("P is identically zero".into()));
        }
        if self.f.is_zero() {
            return Err(PodError::DegenerateSeed(
                "F = 0: the whole plane e0 = 0 lifts, giving a two-dimensional configuration space".into(),
            ));
        }
        if self.f.homogeneous_degree() != Some(4) {
            return Err(PodError::DegenerateSeed("F is not a quartic".into()));
        }
        if self.f.exact_div(&self.norm).is_some() {
            return Err(PodError::DegenerateSeed("F is divisible by e1^2+e2^2+e3^2".into()));
        }
        Ok(())
    }

    /// The 6 x 17 matrix of `rho` on linear forms: entry `(m, k)` is the
    /// coefficient of the `m`-th quadratic monomial in `rho(X_k)`.
    pub fn rho_linear_matrix(&self) -> Result<Vec<Vec<C>>> {
        let rho = models::euler_rho(&self.p, &self.u)?;
        let field = self.ring.field();
        let mut rows = vec![vec![C::zero(field); 17]; 6];
        for k in 0..17 {
            let img = rho.image(k);
            for (m, ex) in QUAD_EXPONENTS.iter().enumerate() {
                rows[m][k] = img.coeff(&Monomial::from_exponents(ex).expect("small"));
            }
        }
        Ok(rows)
    }
}

/// Certified numbers of a bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub i_lin_dim: usize,
    pub config: HilbertData,
    pub leg_full: HilbertData,
    pub leg_sym: HilbertData,
    /// Whether the quartic `F` is smooth (reported, not required).
    pub quartic_smooth: bool,
}

impl Certification {
    /// `(dim, deg, genus)` of the full and symmetric leg curves.
    pub fn leg_summaries(&self) -> ((i64, u64, Option<i64>), (i64, u64, Option<i64>)) {
        (self.leg_full.summary(), self.leg_sym.summary())
    }
}

#[derive(Clone, Debug)]
pub struct InfinityPodBundle<C: Coeff> {
    pub seed: ConstructionSeed,
    pub field: Field,
    /// `I = J_inv + rho^{-1}(F)` in the isometry P^16.
    pub config_ideal: Ideal<C>,
    /// Linear forms of `I`.
    pub i_lin: LinearSubspace<C>,
    /// Leg points dual to `I_lin`.
    pub l_lin: LinearSubspace<C>,
    /// `Y` cut by `L_lin`: the curve of legs.
    pub leg_ideal_full: Ideal<C>,
    /// Image of the leg curve in `Y_inv`.
    pub leg_ideal_sym: Ideal<C>,
    pub certification: Certification,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    seed: ConstructionSeed,
    field: Field,
    config_ideal: IdealJson,
    i_lin: SubspaceJson,
    l_lin: SubspaceJson,
    leg_ideal_full: IdealJson,
    leg_ideal_sym: IdealJson,
    certification: Certification,
}

impl<C: Coeff> InfinityPodBundle<C> {
    pub fn to_json_string(&self) -> String {
        let j = BundleJson {
            seed: self.seed.clone(),
            field: self.field,
            config_ideal: self.config_ideal.to_json(),
            i_lin: self.i_lin.to_json(),
            l_lin: self.l_lin.to_json(),
            leg_ideal_full: self.leg_ideal_full.to_json(),
            leg_ideal_sym: self.leg_ideal_sym.to_json(),
            certification: self.certification.clone(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: BundleJson = serde_json::from_str(s).map_err(|e| PodError::Invalid(format!("bundle JSON: {e}")))?;
        let f = j.field;
        Ok(InfinityPodBundle {
            seed: j.seed,
            field: f,
            config_ideal: Ideal::from_json(&j.config_ideal, f)?,
            i_lin: LinearSubspace::from_json(&j.i_lin)?,
            l_lin: LinearSubspace::from_json(&j.l_lin)?,
            leg_ideal_full: Ideal::from_json(&j.leg_ideal_full, f)?,
            leg_ideal_sym: Ideal::from_json(&j.leg_ideal_sym, f)?,
            certification: j.certification,
        })
    }
}

/// Kernel of `k[X] -> k[e]/(F)`, by eliminating `e` from the weighted graph
/// ideal of `rho`.
fn rho_preimage<C: Coeff>(polys: &SeedPolynomials<C>) -> Result<Ideal<C>> {
    let field = polys.ring.field();
    let rho = models::euler_rho(&polys.p, &polys.u)?;
    let names: Vec<&str> = E_VARS.iter().chain(X_VARS.iter()).copied().collect();
    let weights: Vec<u32> = (0..names.len()).map(|i| if i < 3 { 1 } else { 2 }).collect();
    let graph_ring = Ring::build(&names, weights, MonomialOrder::DegRevLex, field)?;
    let mut gens = Vec::with_capacity(18);
    for (k, name) in X_VARS.iter().enumerate() {
        let xk = Polynomial::var_named(&graph_ring, name)?;
        gens.push(&xk - &rho.image(k).to_ring(&graph_ring)?);
    }
    gens.push(polys.f.to_ring(&graph_ring)?);
    let graph = Ideal::new(&graph_ring, gens)?;
    let kernel = graph.eliminate(&E_VARS)?;
    let x_ring = models::ring(&X_VARS, field);
    Ok(kernel.to_ring(&x_ring)?)
}

/// Runs the construction on one seed.
pub fn create_infinity_pod<C: Coeff>(seed: &ConstructionSeed, field: Field) -> Result<InfinityPodBundle<C>> {
    let polys = seed.polynomials::<C>(field);
    polys.check()?;

    // Linear forms of I, first through the 6 x 17 matrix of rho.
    let rows = polys.rho_linear_matrix()?;
    let shortcut = podforge_algebra::Matrix::from_rows(field, 17, &rows)?.kernel();
    if shortcut.len() != 11 {
        return Err(PodError::DegenerateSeed(format!(
            "the lifted curve spans a P^{} instead of a P^5",
            16 - shortcut.len()
        )));
    }
    let shortcut = LinearSubspace::forms(&X_VARS, &shortcut, field)?;

    let j_inv = models::ideal_x_inv::<C>(field);
    let kernel = rho_preimage(&polys)?;
    let config_ideal = j_inv.sum(&kernel)?;
    let lin = config_ideal.linear_part()?;
    let i_lin = LinearSubspace::from_linear_forms(&X_VARS, &lin)?;
    if i_lin != shortcut {
        return Err(PodError::Inconsistent(
            "linear part of the eliminated ideal differs from the kernel of rho on linear forms".into(),
        ));
    }

    let bsc = BilinearForm::<C>::new(FormKind::Bsc17, field);
    let l_lin = dual_space(&i_lin, &bsc, Side::Left)?;
    let y = models::ideal_y::<C>(field);
    let leg_ideal_full = y.with_generators(l_lin.linear_forms(y.ring())?)?;
    let leg_ideal_sym = symmetrize(&leg_ideal_full)?;

    let certification = Certification {
        i_lin_dim: i_lin.rank(),
        config: config_ideal.hilbert_data()?,
        leg_full: leg_ideal_full.hilbert_data()?,
        leg_sym: leg_ideal_sym.hilbert_data()?,
        quartic_smooth: is_smooth_hypersurface(&polys.f)?,
    };
    Ok(InfinityPodBundle {
        seed: seed.clone(),
        field,
        config_ideal,
        i_lin,
        l_lin,
        leg_ideal_full,
        leg_ideal_sym,
        certification,
    })
}

/// Draws seeds from `ChaCha8(rng_seed)` until one passes the admissibility
/// checks, at most `params.retries` times.
pub fn create_infinity_pod_seeded<C: Coeff>(
    rng_seed: u64,
    params: RandomParams,
    field: Field,
) -> Result<InfinityPodBundle<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut last = String::new();
    for attempt in 0..params.retries.max(1) {
        let seed = ConstructionSeed::draw(&mut rng, params.bound, rng_seed, attempt);
        match create_infinity_pod::<C>(&seed, field) {
            Ok(b) => return Ok(b),
            Err(e @ PodError::DegenerateSeed(_)) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(PodError::RetriesExhausted { attempts: params.retries.max(1), last })
}

/// The image of a subvariety of `Y` in the `Y_inv` coordinates, through
/// `s_ij = z_ij + z_ji` and elimination of the off-diagonal `z`.
pub fn symmetrize<C: Coeff>(ideal: &Ideal<C>) -> Result<Ideal<C>> {
    let field = ideal.ring().field();
    let off: Vec<String> =
        (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| format!("z{i}{j}"))).collect();
    let s_names: Vec<String> = (0..4).flat_map(|i| (i + 1..4).map(move |j| format!("s{i}{j}"))).collect();
    let mut names: Vec<&str> = off.iter().map(|s| s.as_str()).collect();
    names.extend(Y_INV_VARS.iter());
    let big = models::ring(&names, field);
    let mut gens: Vec<Polynomial<C>> =
        ideal.generators().iter().map(|g| g.to_ring(&big)).collect::<podforge_algebra::Result<_>>()?;
    for s in &s_names {
        let (i, j) = (&s[1..2], &s[2..3]);
        let p = Polynomial::parse(&big, &format!("{s}-z{i}{j}-z{j}{i}"))?;
        gens.push(p);
    }
    let lifted = Ideal::new(&big, gens)?;
    let drop: Vec<&str> = off.iter().map(|s| s.as_str()).collect();
    let image = lifted.eliminate(&drop)?;
    Ok(image.to_ring(&models::ring(&Y_INV_VARS, field))?)
}

/// Closure of the projection of the leg curve to its base anchors
/// `(a0 : a1 : a2 : a3) = (z00 : z10 : z20 : z30)`.
pub fn base_curve<C: Coeff>(bundle: &InfinityPodBundle<C>) -> Result<Ideal<C>> {
    anchor_curve(&bundle.leg_ideal_full, |k| format!("z{k}0"))
}

/// Same for platform anchors `(z00 : z01 : z02 : z03)`.
pub fn platform_curve<C: Coeff>(bundle: &InfinityPodBundle<C>) -> Result<Ideal<C>> {
    anchor_curve(&bundle.leg_ideal_full, |k| format!("z0{k}"))
}

fn anchor_curve<C: Coeff>(legs: &Ideal<C>, coord: impl Fn(usize) -> String) -> Result<Ideal<C>> {
    let field = legs.ring().field();
    let keep: Vec<String> = (0..4).map(coord).collect();
    let keep_ref: Vec<&str> = keep.iter().map(|s| s.as_str()).collect();
    let projected = legs.project(&keep_ref)?;
    // rename to a0..a3 in the kept order
    let target = models::ring(&["a0", "a1", "a2", "a3"], field);
    let src = projected.ring();
    let perm: Vec<usize> = src.vars().iter().map(|v| keep.iter().position(|k| k == v).expect("kept")).collect();
    let gens = projected.generators().iter().map(|g| g.permute_into(&target, &perm)).collect();
    Ok(Ideal::new(&target, gens)?)
}
