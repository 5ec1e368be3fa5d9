//! Planar pods: Duporcq's sixth leg of a pentapod, the leg curve of a planar
//! hexapod, and the infinity-pod from a pair of conic parametrizations.

use std::sync::Arc;

use podforge_algebra::{rational_to, Coeff, Field, HilbertData, Ideal, Matrix, MonomialOrder, Polynomial, Rational, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::duality::{dual_space, leg_to_point, point_to_leg, BilinearForm, FormKind, LinearSubspace, Side};
use crate::error::{PodError, Result};
use crate::models::{ideal_x_p, ideal_y_p, ring, Leg, LegPoint, X_P_VARS, Y_P_VARS};

/// Coordinates of a planar leg in the order of `Y_P_VARS`.
pub fn planar_leg_point<C: Coeff>(leg: &Leg, field: Field) -> Result<Vec<C>> {
    if !leg.is_planar() {
        return Err(PodError::Invalid("leg anchors must lie in the plane a3 = b3 = 0".into()));
    }
    Ok(leg_to_point::<C>(leg, field)?.planar_coords())
}

/// Inverse of [`planar_leg_point`].
pub fn planar_point_to_leg(p: &[Rational]) -> Result<Leg> {
    if p.len() != 10 {
        return Err(PodError::Invalid(format!("planar leg point needs 10 coordinates, got {}", p.len())));
    }
    let zero = Rational::from_integer(0);
    let z = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i < 3 && j < 3 { p[3 * i + j].clone() } else { zero.clone() })
    });
    point_to_leg(&LegPoint { z, l: p[9].clone() })
}

fn planar_points<C: Coeff>(legs: &[Leg], field: Field) -> Result<LinearSubspace<C>> {
    let pts = legs.iter().map(|l| planar_leg_point::<C>(l, field)).collect::<Result<Vec<_>>>()?;
    LinearSubspace::points(&Y_P_VARS, &pts, field)
}

/// Minors of the 3x3 matrix `z` evaluated on the span `sum t_k v_k`, as
/// coefficient vectors on the monomials `t_i t_j` with `i < j`. The squares
/// drop out because every `v_k` is itself on `Y_p`.
fn minor_cross_terms(v: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = v.len();
    let zero = Rational::from_integer(0);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut rows = Vec::new();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            // minor(p) = p[r1,c1] p[r2,c2] - p[r1,c2] p[r2,c1], polarized
            let at = |k: usize, r: usize, c: usize| v[k][3 * r + c].clone();
            let row: Vec<Rational> = pairs
                .iter()
                .map(|&(i, j)| {
                    at(i, r1, c1) * at(j, r2, c2) + at(j, r1, c1) * at(i, r2, c2)
                        - at(i, r1, c2) * at(j, r2, c1)
                        - at(j, r1, c2) * at(i, r2, c1)
                })
                .collect();
            if row.iter().any(|x| *x != zero) {
                rows.push(row);
            }
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DuporcqResult {
    pub legs: Vec<Leg>,
    pub sixth: Leg,
    /// Whether the configurations dual to the five legs and to all six agree.
    pub dual_spans_equal: bool,
}

/// The sixth leg of a planar pentapod: the residual point of the P^4 spanned
/// by the five leg points on `Y_p`.
///
/// On the span, the nine 2x2 minors become quadrics in the ten monomials
/// `t_i t_j` (`i < j`). They span a hyperplane `W`, and the sixth point `u`
/// satisfies `c_ij ~ u_i u_j` for the normal vector `c` of `W`.
pub fn duporcq_sixth_leg(legs: &[Leg]) -> Result<DuporcqResult> {
    if legs.len() != 5 {
        return Err(PodError::Invalid(format!("a pentapod has 5 legs, got {}", legs.len())));
    }
    let field = Field::Rational;
    let pts = legs.iter().map(|l| planar_leg_point::<Rational>(l, field)).collect::<Result<Vec<_>>>()?;
    let rank = Matrix::from_rows(field, 10, &pts)?.rank();
    if rank < 5 {
        return Err(PodError::SpecialPentapod(rank - 1));
    }
    let w = minor_cross_terms(&pts);
    let kernel = Matrix::from_rows(field, 10, &w)?.kernel();
    if kernel.len() != 1 {
        return Err(PodError::InfinitelyManyLegs);
    }
    let c = &kernel[0];
    let idx = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        // position of (i, j) in the lexicographic list of pairs of 0..5
        (0..i).map(|k| 4 - k).sum::<usize>() + (j - i - 1)
    };
    let cij = |i: usize, j: usize| c[idx(i, j)].clone();
    // u'_i = u_i u_m for i != m, and u'_m = u_m^2 = c_mk c_mx / c_kx
    let pivot = (0..5).flat_map(|k| (0..5).map(move |m| (k, m))).find(|&(k, m)| {
        k != m && !cij(k, m).is_zero() && (0..5).any(|x| x != k && x != m && !cij(k, x).is_zero())
    });
    let Some((k, m)) = pivot else {
        return Err(PodError::InfinitelyManyLegs);
    };
    let x = (0..5).find(|&x| x != k && x != m && !cij(k, x).is_zero()).expect("checked");
    let mut u: Vec<Rational> = (0..5).map(|i| if i == m { Rational::from_integer(0) } else { cij(i, m) }).collect();
    u[m] = cij(m, k) * cij(m, x) * cij(k, x).inv().expect("nonzero");
    let mut point = vec![Rational::from_integer(0); 10];
    for (uk, v) in u.iter().zip(&pts) {
        for (p, vi) in point.iter_mut().zip(v) {
            *p = p.clone() + uk.clone() * vi.clone();
        }
    }
    let yp = ideal_y_p::<Rational>(field);
    if yp.generators().iter().any(|g| !g.evaluate(&point).is_zero()) {
        return Err(PodError::Inconsistent("residual point is not on Y_p".into()));
    }
    for v in &pts {
        let m = Matrix::from_rows(field, 10, &[v.clone(), point.clone()])?;
        if m.rank() < 2 {
            return Err(PodError::Inconsistent("residual point repeats an input leg".into()));
        }
    }
    let sixth = planar_point_to_leg(&point)?;
    let form = BilinearForm::<Rational>::new(FormKind::BscPlanar10, field);
    let five = LinearSubspace::points(&Y_P_VARS, &pts, field)?;
    let mut all = legs.to_vec();
    all.push(sixth.clone());
    let six = planar_points::<Rational>(&all, field)?;
    let dual_spans_equal = dual_space(&five, &form, Side::Right)? == dual_space(&six, &form, Side::Right)?;
    Ok(DuporcqResult { legs: legs.to_vec(), sixth, dual_spans_equal })
}

/// The configuration curve of a planar pod: `X_p` cut by the sphere
/// conditions of its legs.
pub fn planar_configuration_ideal<C: Coeff>(legs: &[Leg], field: Field) -> Result<Ideal<C>> {
    let span = planar_points::<C>(legs, field)?;
    let form = BilinearForm::<C>::new(FormKind::BscPlanar10, field);
    let dual = dual_space(&span, &form, Side::Right)?;
    let xp = ideal_x_p::<C>(field)?;
    let forms = dual.linear_forms(xp.ring())?;
    Ok(xp.with_generators(forms)?)
}

/// The intersection of `Y_p` with the P^5 spanned by six planar legs.
pub fn hexapod_leg_curve<C: Coeff>(legs: &[Leg], field: Field) -> Result<Ideal<C>> {
    if legs.len() != 6 {
        return Err(PodError::Invalid(format!("a hexapod has 6 legs, got {}", legs.len())));
    }
    let span = planar_points::<C>(legs, field)?;
    if span.rank() != 6 {
        return Err(PodError::Invalid(format!("the legs span a P^{}, not a P^5", span.rank() as i64 - 1)));
    }
    let yp = ideal_y_p::<C>(field);
    let forms = span.linear_forms(yp.ring())?;
    Ok(yp.with_generators(forms)?)
}

/// A conic parametrization `(s : t) -> rows . (s^2, s t, t^2)` of the plane
/// `P^2` with coordinates `(a~0 : a~1 : a~2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conic {
    pub rows: [[i64; 3]; 3],
}

impl Conic {
    pub fn new(rows: [[i64; 3]; 3]) -> Self {
        Conic { rows }
    }

    /// The standard parametrization `(s^2 + t^2 : s^2 - t^2 : 2 s t)` of the
    /// unit circle.
    pub fn unit_circle() -> Self {
        Conic { rows: [[1, 0, 1], [1, 0, -1], [0, 2, 0]] }
    }

    pub fn random(rng: &mut ChaCha8Rng, bound: i64) -> Self {
        Conic { rows: std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-bound..=bound))) }
    }

    pub fn is_degenerate(&self) -> bool {
        let rows: Vec<Vec<Rational>> =
            self.rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        Matrix::from_rows(Field::Rational, 3, &rows).map_or(true, |m| m.rank() < 3)
    }
}

#[derive(Clone, Debug)]
pub struct ConicProduct<C: Coeff> {
    pub base: Conic,
    pub platform: Conic,
    /// Coefficients `lambda` of the lift `l = sum lambda_ij z_ij`, in the
    /// order of the first nine `Y_P_VARS`.
    pub lift: Vec<Rational>,
    pub span: LinearSubspace<C>,
    pub leg_ideal: Ideal<C>,
    pub config_ideal: Ideal<C>,
    pub leg_hilbert: HilbertData,
    pub config_hilbert: HilbertData,
}

/// The lift making every leg `a = b` on the curve have length zero when the
/// two parametrizations agree: `l = 2 (z11 + z22)`.
pub fn zero_length_lift() -> Vec<Rational> {
    [0, 0, 0, 0, 2, 0, 0, 0, 2].map(Rational::from_integer).to_vec()
}

/// Legs `(f(s:t), g(s:t))` for two conic parametrizations, lifted to `Y_p`
/// by `l = sum lambda_ij z_ij`; the leg points span at most a P^4, whose dual
/// P^4 meets `X_p` in the configuration curve.
pub fn conic_product_legs<C: Coeff>(f: &Conic, g: &Conic, lift: &[Rational], field: Field) -> Result<ConicProduct<C>> {
    if f.is_degenerate() || g.is_degenerate() {
        return Err(PodError::DegenerateSeed("conic parametrization has a rank-deficient coefficient matrix".into()));
    }
    if lift.len() != 9 {
        return Err(PodError::Invalid(format!("lift needs 9 coefficients, got {}", lift.len())));
    }
    // z_ij = f_i g_j as a quartic in (s, t): coefficient vectors on s^4 .. t^4
    let quartic = |i: usize, j: usize| -> [i64; 5] {
        let mut out = [0i64; 5];
        for p in 0..3 {
            for q in 0..3 {
                out[p + q] += f.rows[i][p] * g.rows[j][q];
            }
        }
        out
    };
    let mut columns: Vec<[Rational; 5]> = Vec::with_capacity(10);
    for i in 0..3 {
        for j in 0..3 {
            columns.push(quartic(i, j).map(Rational::from_integer));
        }
    }
    let l: [Rational; 5] = std::array::from_fn(|k| {
        columns
            .iter()
            .zip(lift)
            .fold(Rational::from_integer(0), |acc, (col, lam)| acc + col[k].clone() * lam.clone())
    });
    columns.push(l);
    // the span is the row space of the 5 x 10 coefficient matrix
    let conv = |r: &Rational| rational_to::<C>(field, r);
    let rows: Vec<Vec<C>> = (0..5)
        .map(|k| columns.iter().map(|col| conv(&col[k])).collect::<podforge_algebra::Result<Vec<C>>>())
        .collect::<podforge_algebra::Result<_>>()?;
    let span = LinearSubspace::points(&Y_P_VARS, &rows, field)?;
    if span.rank() != 5 {
        return Err(PodError::DegenerateSeed(format!("the lifted legs span only a P^{}", span.rank() as i64 - 1)));
    }

    let leg_ideal = implicitize_quartics(&columns, field)?;
    let form = BilinearForm::<C>::new(FormKind::BscPlanar10, field);
    let dual = dual_space(&span, &form, Side::Right)?;
    let xp = ideal_x_p::<C>(field)?;
    let config_ideal = xp.with_generators(dual.linear_forms(xp.ring())?)?;
    let leg_hilbert = leg_ideal.hilbert_data()?;
    let config_hilbert = config_ideal.hilbert_data()?;
    Ok(ConicProduct {
        base: f.clone(),
        platform: g.clone(),
        lift: lift.to_vec(),
        span,
        leg_ideal,
        config_ideal,
        leg_hilbert,
        config_hilbert,
    })
}

/// Image of `(s : t) -> (q_k(s, t))_k` for binary quartics given by their
/// coefficients on `s^4, s^3 t, ..., t^4`, in the ring of `Y_P_VARS`.
fn implicitize_quartics<C: Coeff>(quartics: &[[Rational; 5]], field: Field) -> Result<Ideal<C>> {
    let mut names: Vec<&str> = vec!["s", "t"];
    names.extend(Y_P_VARS.iter());
    let mut weights = vec![1, 1];
    weights.extend(std::iter::repeat_n(4, Y_P_VARS.len()));
    let graph: Arc<Ring> = Ring::build(&names, weights, MonomialOrder::elimination(2, names.len()), field)?;
    let s = Polynomial::<C>::var(&graph, 0);
    let t = Polynomial::<C>::var(&graph, 1);
    let monos: Vec<Polynomial<C>> = (0..5).map(|k| &s.pow(4 - k as u32) * &t.pow(k as u32)).collect();
    let mut gens = Vec::with_capacity(quartics.len());
    for (k, q) in quartics.iter().enumerate() {
        let mut p = Polynomial::var(&graph, 2 + k);
        for (c, m) in q.iter().zip(&monos) {
            p = &p - &m.scale(&rational_to::<C>(field, c)?);
        }
        gens.push(p);
    }
    let eliminated = Ideal::new(&graph, gens)?.eliminate(&["s", "t"])?;
    let target = ring(&Y_P_VARS, field);
    Ok(eliminated.to_ring(&target)?)
}

/// Planar configuration coordinates of the identity.
pub fn planar_identity<C: Coeff>(field: Field) -> Vec<C> {
    X_P_VARS
        .iter()
        .map(|v| match *v {
            "m11" | "m22" | "h" => C::one(field),
            _ => C::zero(field),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use podforge_algebra::Fp;

    fn planar(a: [i64; 2], b: [i64; 2], d2: i64) -> Leg {
        Leg::from_i64([a[0], a[1], 0], [b[0], b[1], 0], d2)
    }

    #[test]
    fn cross_term_index_layout() {
        // all 10 pairs of 0..5 map to distinct slots
        let v: Vec<Vec<Rational>> = (0..5).map(|_| vec![Rational::from_integer(0); 10]).collect();
        assert!(minor_cross_terms(&v).is_empty());
    }

    #[test]
    fn sixth_leg_of_a_small_pentapod() {
        let legs = vec![
            planar([0, 0], [1, 2], 3),
            planar([2, 1], [0, 3], 5),
            planar([-1, 4], [2, -1], 7),
            planar([3, -2], [-2, 1], 2),
            planar([1, 5], [4, 4], 11),
        ];
        let r = duporcq_sixth_leg(&legs).unwrap();
        assert!(r.dual_spans_equal);
        assert!(r.sixth.is_planar());
        assert!(!legs.contains(&r.sixth));
    }

    #[test]
    fn shared_base_point_is_special() {
        let legs: Vec<Leg> = (0..5).map(|k| planar([1, 1], [k, k * k], k + 1)).collect();
        assert!(matches!(duporcq_sixth_leg(&legs), Err(PodError::SpecialPentapod(_))));
    }

    #[test]
    fn non_planar_input_is_rejected() {
        let mut legs: Vec<Leg> = (0..6).map(|k| planar([k, 1], [2, k], k)).collect();
        legs[0] = Leg::from_i64([0, 0, 1], [0, 0, 0], 1);
        assert!(matches!(hexapod_leg_curve::<Fp>(&legs, Field::Prime(101)), Err(PodError::Invalid(_))));
    }

    #[test]
    fn degenerate_conic_is_rejected() {
        let bad = Conic::new([[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let r = conic_product_legs::<Fp>(&bad, &Conic::unit_circle(), &zero_length_lift(), Field::Prime(101));
        assert!(matches!(r, Err(PodError::DegenerateSeed(_))));
    }
}
