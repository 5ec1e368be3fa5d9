//! The reproduction suite: every headline invariant as a self-contained
//! check with a pass/fail verdict.

use std::time::Instant;

use podforge_algebra::{Coeff, Field, Fp, HilbertData, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    base_curve, create_infinity_pod_seeded, cubic_line_symmetric, duporcq_sixth_leg, planar_configuration_ideal,
    planar_leg_point, platform_curve, symmetroid_pencil, RandomParams,
};
use crate::duality::{dual_space, leg_pair_point, sphere_value, BilinearForm, FormKind, LinearSubspace, Side};
use crate::error::Result;
use crate::models::{self, IsometryPoint, Leg};
use crate::verify::{check_pod_float, real_configurations, real_legs, sample_curve_points};

/// Tolerances of the floating-point demonstration.
pub const RESIDUAL_TOL: f64 = 1e-9;
pub const ORTHOGONALITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproduceOptions {
    pub prime: u32,
    pub seed: u64,
    pub runs: usize,
    pub tol: f64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions { prime: 101, seed: 0, runs: 20, tol: RESIDUAL_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.claim,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "X has dimension 6 and degree 40"),
    (2, "Y_inv has dimension 7 and degree 10"),
    (3, "planar models: Y_p (5, 6), X_p (6, 20), X_pinv (4, 6)"),
    (4, "infinity-pods: I_lin of dimension 11, L = (1, 10, 6), L~ = (1, 20, 11)"),
    (5, "the base curve has degree 10 and equals the platform curve"),
    (6, "real pod: >= 5 real legs, >= 10 half-turns, residuals within tolerance"),
    (7, "Duporcq: rational sixth leg with unchanged configuration space"),
    (8, "cubic pods: genus-1 leg cubic, degree-6 configurations, det = w0 H, <= 4 nodes"),
    (9, "duality: BSC17 nondegenerate, dual space involutive, sphere condition matches its oracle"),
    (10, "Y_pinv is the determinant cubic; the s12^2 variant is not"),
];

pub fn claim(id: usize) -> &'static str {
    CRITERIA.iter().find(|(k, _)| *k == id).map_or("unknown criterion", |(_, c)| c)
}

/// Runs one criterion; internal errors count as failures.
pub fn run_criterion(id: usize, opts: &ReproduceOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(opts),
        2 => criterion_2(opts),
        3 => criterion_3(opts),
        4 => criterion_4(opts),
        5 => criterion_5(opts),
        6 => criterion_6(opts),
        7 => criterion_7(opts),
        8 => criterion_8(opts),
        9 => criterion_9(opts),
        10 => criterion_10(opts),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, claim: claim(id).to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

type Outcome = Result<(bool, String)>;

fn fp(opts: &ReproduceOptions) -> Result<Field> {
    Ok(Field::prime(opts.prime)?)
}

fn dim_deg(h: &HilbertData) -> (i64, u64) {
    (h.dimension, h.degree)
}

fn criterion_1(opts: &ReproduceOptions) -> Outcome {
    let h = models::ideal_x::<Fp>(fp(opts)?).hilbert_data()?;
    Ok((dim_deg(&h) == (6, 40), format!("dim {} deg {}", h.dimension, h.degree)))
}

fn criterion_2(opts: &ReproduceOptions) -> Outcome {
    let h = models::ideal_y_inv::<Fp>(fp(opts)?).hilbert_data()?;
    Ok((dim_deg(&h) == (7, 10), format!("dim {} deg {}", h.dimension, h.degree)))
}

fn criterion_3(opts: &ReproduceOptions) -> Outcome {
    let f = fp(opts)?;
    let yp = models::ideal_y_p::<Fp>(f).hilbert_data()?;
    let xp = models::ideal_x_p::<Fp>(f)?.hilbert_data()?;
    let xpinv = models::ideal_x_pinv::<Fp>(f)?.hilbert_data()?;
    let ok = dim_deg(&yp) == (5, 6) && dim_deg(&xp) == (6, 20) && dim_deg(&xpinv) == (4, 6);
    Ok((ok, format!("Y_p {:?}, X_p {:?}, X_pinv {:?}", dim_deg(&yp), dim_deg(&xp), dim_deg(&xpinv))))
}

fn criterion_4(opts: &ReproduceOptions) -> Outcome {
    let f = fp(opts)?;
    let mut good = 0;
    let mut bad = Vec::new();
    for k in 0..opts.runs as u64 {
        let seed = opts.seed + k;
        match create_infinity_pod_seeded::<Fp>(seed, RandomParams::default(), f) {
            Ok(b) => {
                let c = &b.certification;
                let (full, sym) = c.leg_summaries();
                if c.i_lin_dim == 11 && sym == (1, 10, Some(6)) && full == (1, 20, Some(11)) {
                    good += 1;
                } else {
                    bad.push(format!("seed {seed}: I_lin {} L {sym:?} L~ {full:?}", c.i_lin_dim));
                }
            }
            Err(e) => bad.push(format!("seed {seed}: {e}")),
        }
    }
    let mut detail = format!("{good}/{} runs certified", opts.runs);
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    Ok((good == opts.runs && opts.runs > 0, detail))
}

fn criterion_5(opts: &ReproduceOptions) -> Outcome {
    let b = create_infinity_pod_seeded::<Fp>(opts.seed, RandomParams::default(), fp(opts)?)?;
    let base = base_curve(&b)?;
    let platform = platform_curve(&b)?;
    let h = base.hilbert_data()?;
    let same = base.contains_ideal(&platform)? && platform.contains_ideal(&base)?;
    let genus = h.arithmetic_genus.map_or("?".to_string(), |g| g.to_string());
    Ok((
        dim_deg(&h) == (1, 10) && same,
        format!("dim {} deg {} genus {genus}, platform curve equal: {same}", h.dimension, h.degree),
    ))
}

fn criterion_6(opts: &ReproduceOptions) -> Outcome {
    let b = create_infinity_pod_seeded::<Rational>(opts.seed, RandomParams::default(), Field::Rational)?;
    let seed = b.seed.polynomials::<Rational>(Field::Rational);
    let configs = real_configurations(&seed, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let legs = real_legs(&b, 5, 12, &mut rng)?;
    let orth = configs.iter().map(|c| c.orthogonality_defect()).fold(0.0, f64::max);
    let trace = configs.iter().map(|c| (c.trace() + 1.0).abs()).fold(0.0, f64::max);
    let det = configs.iter().map(|c| (c.det() - 1.0).abs()).fold(0.0, f64::max);
    let report = check_pod_float("real", &configs, &legs.legs, opts.tol);
    let ok = configs.len() >= 10
        && legs.legs.len() >= 5
        && report.passed
        && orth <= ORTHOGONALITY_TOL
        && trace <= ORTHOGONALITY_TOL
        && det <= ORTHOGONALITY_TOL;
    Ok((
        ok,
        format!(
            "{} half-turns, {} real legs ({} realizable), max residual {:.2e} (tol {:.0e}), |MM^t - id| {:.1e}, |tr M + 1| {:.1e}, |det M - 1| {:.1e}",
            configs.len(),
            legs.legs.len(),
            report.realizable_legs,
            report.max_residual,
            opts.tol,
            orth,
            trace,
            det
        ),
    ))
}

/// A planar leg with rational anchors `num / den`, `|num| <= bound`,
/// `1 <= den <= 9`.
fn random_planar_leg(rng: &mut ChaCha8Rng, bound: i64) -> Leg {
    let mut r = || Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=9));
    let zero = Rational::from_integer(0);
    Leg::new([r(), r(), zero.clone()], [r(), r(), zero], r())
}

fn criterion_7(opts: &ReproduceOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut good = 0;
    let mut notes = Vec::new();
    let mut first = None;
    for k in 0..opts.runs {
        let legs: Vec<Leg> = (0..5).map(|_| random_planar_leg(&mut rng, 1000)).collect();
        match duporcq_sixth_leg(&legs) {
            Ok(r) if r.dual_spans_equal => {
                good += 1;
                first.get_or_insert(r);
            }
            Ok(_) => notes.push(format!("pentapod {k}: dual spans differ")),
            Err(e) => notes.push(format!("pentapod {k}: {e}")),
        }
    }
    // the sixth leg's sphere condition on sampled configurations
    let mut sampled = String::new();
    let mut sample_ok = true;
    if let Some(r) = first {
        let f = fp(opts)?;
        let ideal = planar_configuration_ideal::<Fp>(&r.legs, f)?;
        let pts = sample_curve_points(&ideal, 10, &mut rng)?;
        match planar_leg_point::<Fp>(&r.sixth, f) {
            Ok(leg) => {
                let form = BilinearForm::<Fp>::new(FormKind::BscPlanar10, f);
                let zero = pts.points.iter().filter(|c| form.eval(c, &leg).is_zero()).count();
                sample_ok = zero == pts.points.len() && !pts.points.is_empty();
                sampled = format!(", sixth leg vanishes on {zero}/{} sampled configurations", pts.points.len());
            }
            Err(e) => sampled = format!(", sixth leg not reducible mod {}: {e}", opts.prime),
        }
    }
    let mut detail = format!("{good}/{} sixth legs{sampled}", opts.runs);
    if !notes.is_empty() {
        detail.push_str(&format!("; {}", notes.join("; ")));
    }
    Ok((good == opts.runs && sample_ok, detail))
}

fn criterion_8(opts: &ReproduceOptions) -> Outcome {
    let pod = cubic_line_symmetric::<Fp>(opts.seed, RandomParams::default(), fp(opts)?)?;
    let pencil = symmetroid_pencil(&pod)?;
    let leg = pod.leg_hilbert.summary();
    let cfg = pod.config_hilbert.summary();
    let ok = leg == (1, 3, Some(1))
        && (cfg.0, cfg.1) == (1, 6)
        && pencil.h.homogeneous_degree() == Some(3)
        && pencil.node_count <= 4
        && pencil.nodes_have_rank_two;
    Ok((
        ok,
        format!(
            "leg cubic {leg:?}, configurations {cfg:?}, lift bidegree {:?}, det = w0 H with H cubic, {} nodes (rank <= 2: {})",
            pod.bidegree, pencil.node_count, pencil.nodes_have_rank_two
        ),
    ))
}

fn random_subspace(rng: &mut ChaCha8Rng, ambient: &[String], field: Field) -> Result<LinearSubspace<Rational>> {
    let n = ambient.len();
    let k = rng.gen_range(0..=n);
    let vectors: Vec<Vec<Rational>> =
        (0..k).map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-5..=5))).collect()).collect();
    LinearSubspace::points(ambient, &vectors, field)
}

/// A random rational rotation `(I - K)^{-1} (I + K)` for a skew matrix `K`.
pub fn cayley_rotation(k: [Rational; 3]) -> [[Rational; 3]; 3] {
    let one = Rational::from_integer(1);
    let zero = Rational::from_integer(0);
    let [p, q, r] = k;
    // K = [[0, -r, q], [r, 0, -p], [-q, p, 0]]
    let kk = [[zero.clone(), -r.clone(), q.clone()], [r.clone(), zero.clone(), -p.clone()], [-q, p, zero.clone()]];
    let plus: [[Rational; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { one.clone() } else { zero.clone() } + kk[i][j].clone()));
    let minus: [[Rational; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { one.clone() } else { zero.clone() } - kk[i][j].clone()));
    let inv = inverse3(&minus);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(zero.clone(), |acc, m| acc + inv[i][m].clone() * plus[m][j].clone()))
    })
}

fn inverse3(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    let det = (0..3).fold(Rational::from_integer(0), |acc, j| acc + m[0][j].clone() * c(0, j));
    let inv = det.inv().expect("I - K is invertible for skew K");
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) * inv.clone()))
}

/// `|| M a + y - b ||^2 - d^2`.
pub fn sphere_oracle(m: &[[Rational; 3]; 3], y: &[Rational; 3], leg: &Leg) -> Rational {
    (0..3).fold(Rational::from_integer(0), |acc, i| {
        let ma = (0..3).fold(Rational::from_integer(0), |s, k| s + m[i][k].clone() * leg.a[k].clone());
        let d = ma + y[i].clone() - leg.b[i].clone();
        acc + d.clone() * d
    }) - leg.d2.clone()
}

fn criterion_9(opts: &ReproduceOptions) -> Outcome {
    let q = Field::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bsc = BilinearForm::<Rational>::new(FormKind::Bsc17, q);
    let nondegenerate = bsc.is_nondegenerate();
    let mut involutive = 0;
    let kinds = [FormKind::Bsc17, FormKind::Sbsc11, FormKind::BscPlanar10, FormKind::SbscPlanar7];
    for kind in kinds {
        let form = BilinearForm::<Rational>::new(kind, q);
        for k in 0..100 {
            let (side, back) = if k % 2 == 0 { (Side::Left, Side::Right) } else { (Side::Right, Side::Left) };
            let ambient = if side == Side::Left { &form.left } else { &form.right };
            let s = random_subspace(&mut rng, ambient, q)?;
            let twice = dual_space(&dual_space(&s, &form, side)?, &form, back)?;
            if twice == s.to_points() {
                involutive += 1;
            }
        }
    }
    let mut agree = 0;
    let small = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
    for _ in 0..1000 {
        let m = cayley_rotation(std::array::from_fn(|_| small(&mut rng)));
        let y: [Rational; 3] = std::array::from_fn(|_| small(&mut rng));
        let leg = Leg::new(
            std::array::from_fn(|_| small(&mut rng)),
            std::array::from_fn(|_| small(&mut rng)),
            small(&mut rng),
        );
        let sigma = IsometryPoint::from_affine(m.clone(), y.clone());
        if sphere_value(&leg, &sigma)? == sphere_oracle(&m, &y, &leg) {
            agree += 1;
        }
    }
    let ok = nondegenerate && involutive == 400 && agree == 1000;
    Ok((
        ok,
        format!("BSC17 nondegenerate: {nondegenerate}, involutive on {involutive}/400 subspaces, oracle agrees on {agree}/1000 pairs"),
    ))
}

fn criterion_10(opts: &ReproduceOptions) -> Outcome {
    let q = Field::Rational;
    let implicit = models::alpha_planar_implicit::<Rational>(q)?;
    let r = implicit.ring().clone();
    let det = models::y_pinv_cubic::<Rational>(&r);
    let variant = models::y_pinv_variant_cubic::<Rational>(&r);
    let principal = implicit.generators().len() == 1 && implicit.generators()[0].normalized() == det.normalized();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut on_det = 0;
    let mut on_variant = 0;
    let pinv: Vec<usize> = models::Y_PINV_VARS
        .iter()
        .map(|v| models::Y_INV_VARS.iter().position(|w| w == v).expect("shared coordinate"))
        .collect();
    for _ in 0..1000 {
        let leg = random_planar_leg(&mut rng, 50);
        let full = leg_pair_point(&leg);
        let p: Vec<Rational> = pinv.iter().map(|&i| full[i].clone()).collect();
        on_det += usize::from(det.evaluate(&p).is_zero());
        on_variant += usize::from(variant.evaluate(&p).is_zero());
    }
    let variant_in_ideal = implicit.contains(&variant)?;
    Ok((
        principal && on_det == 1000 && !variant_in_ideal,
        format!(
            "implicit equation is the determinant cubic: {principal}; alpha-images on it {on_det}/1000; s12^2 variant holds on {on_variant}/1000 and lies in the ideal: {variant_in_ideal}"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_rotations_are_orthogonal() {
        let m = cayley_rotation([Rational::new(1, 2), Rational::from_integer(-3), Rational::new(2, 7)]);
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(Rational::from_integer(0), |a, k| a + m[i][k].clone() * m[j][k].clone());
                assert_eq!(s, Rational::from_integer(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn claims_are_numbered() {
        assert_eq!(claim(4), CRITERIA[3].1);
        assert_eq!(claim(11), "unknown criterion");
    }

    #[test]
    fn quick_criteria_pass() {
        let opts = ReproduceOptions::default();
        for id in [2, 10] {
            let r = run_criterion(id, &opts);
            assert!(r.passed, "{}", r.line());
        }
    }
}
