//! Pod constructions: the infinity-pod algorithm, Duporcq's sixth leg and
//! its relatives on planar legs, and the cubic line-symmetric family.


mod cubic;
mod infinity;
mod planar;

pub use cubic::{
    cubic_line_symmetric, real_node_leg_pairs, symmetroid_pencil, CubicPod, NodeLegPair, NodeSplit, SymmetroidPencil,
};
pub use infinity::{
    base_curve, create_infinity_pod, create_infinity_pod_seeded, platform_curve, Certification, ConstructionSeed,
    InfinityPodBundle, SeedPolynomials,
};
pub use planar::{
    conic_product_legs, duporcq_sixth_leg, hexapod_leg_curve, planar_configuration_ideal, planar_identity,
    planar_leg_point, planar_point_to_leg, zero_length_lift, Conic, ConicProduct, DuporcqResult,
};

use podforge_algebra::{Coeff, Field, Ideal, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

/// Tuning shared by the randomized constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    /// Integer coefficients are drawn uniformly from `[-bound, bound]`.
    pub bound: i64,
    /// Resampling budget for general-position checks.
    pub retries: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { bound: 10, retries: 8 }
    }
}

pub(crate) fn rand_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub(crate) fn rand_vec(rng: &mut ChaCha8Rng, bound: i64, n: usize) -> Vec<i64> {
    (0..n).map(|_| rand_int(rng, bound)).collect()
}

pub(crate) fn to_field<C: Coeff>(field: Field, v: &[i64]) -> Vec<C> {
    v.iter().map(|&x| C::from_i64(field, x)).collect()
}

/// Whether the hypersurface `g = 0` in its ring has no singular points,
/// tested through the dimension of the ideal of partial derivatives.
pub(crate) fn is_smooth_hypersurface<C: Coeff>(g: &Polynomial<C>) -> Result<bool> {
    let ring = g.ring();
    let partials: Vec<Polynomial<C>> =
        (0..ring.nvars()).map(|i| g.derivative(i)).filter(|p| !p.is_zero()).collect();
    let mut gens = partials;
    gens.push(g.clone());
    let jac = Ideal::new(ring, gens)?;
    match jac.hilbert_data() {
        Ok(h) => Ok(h.dimension < 0),
        Err(podforge_algebra::AlgebraError::UnitIdeal) => Ok(true),
        Err(e) => Err(e.into()),
    }
}
