//! Point sampling on curves, real configurations and legs, and the
//! end-to-end sphere-condition check.

use std::sync::Arc;

use podforge_algebra::roots::{fp_roots, real_roots_approx};
use podforge_algebra::{AlgebraError, Coeff, Fp, Ideal, Polynomial, Rational, Ring, RingMap, ShapeLemma, UPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{Certification, InfinityPodBundle, SeedPolynomials};
use crate::duality::{BilinearForm, FormKind, LinearSubspace};
use crate::error::{PodError, Result};
use crate::models::{IsometryPoint, LegPoint};

/// Shape-lemma presentation of the finite set `V(I) ∩ {h = 0} ∩ {c = 1}`
/// for a homogeneous ideal `I`, hyperplane `h` and chart `c` (coefficient
/// vectors on the ring variables). Retries up to three separating forms.
pub fn slice<C: Coeff>(
    ideal: &Ideal<C>,
    hyperplane: &[C],
    chart: &[C],
    mut form: impl FnMut() -> Vec<C>,
) -> Result<ShapeLemma<C>> {
    let ring = ideal.ring();
    let mut gens = ideal.generators().to_vec();
    gens.push(Polynomial::linear_form(ring, hyperplane));
    gens.push(&Polynomial::linear_form(ring, chart) - &Polynomial::one(ring));
    let affine = Ideal::affine(ring, gens)?;
    let gb = affine.groebner_basis()?;
    let mut last = None;
    for _ in 0..3 {
        match podforge_algebra::groebner::shape_lemma(ring, gb, &form()) {
            Ok(s) => return Ok(s),
            Err(e @ AlgebraError::NotSeparating(_)) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.expect("at least one attempt").into())
}

/// An ideal pulled back to a linear span `t -> sum t_k v_k`, in a ring with
/// one coordinate per spanning point. Working in the span keeps slices small.
#[derive(Clone, Debug)]
pub struct SpanRestriction<C: Coeff> {
    pub ideal: Ideal<C>,
    pub basis: Vec<Vec<C>>,
}

impl<C: Coeff> SpanRestriction<C> {
    pub fn new(ideal: &Ideal<C>, span: &LinearSubspace<C>) -> Result<Self> {
        let src = ideal.ring();
        let field = src.field();
        let basis = span.to_points().basis;
        let names: Vec<String> = (0..basis.len()).map(|k| format!("t{k}")).collect();
        let tgt = Ring::new(&names, field)?;
        let mut images = Vec::with_capacity(src.nvars());
        for name in src.vars() {
            let j = span
                .ambient
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| PodError::Invalid(format!("`{name}` is not a span coordinate")))?;
            let coeffs: Vec<C> = basis.iter().map(|v| v[j].clone()).collect();
            images.push(Polynomial::linear_form(&tgt, &coeffs));
        }
        let map = RingMap::new(src, &tgt, images)?;
        let mut gens = Vec::new();
        for g in ideal.generators() {
            let h = map.apply(g)?;
            if !h.is_zero() {
                gens.push(h);
            }
        }
        Ok(SpanRestriction { ideal: Ideal::new(&tgt, gens)?, basis })
    }

    /// Ambient coordinates (in the span's ambient order) of a span point.
    pub fn lift(&self, t: &[C]) -> Vec<C> {
        let n = self.basis.first().map_or(0, |v| v.len());
        let field = self.ideal.ring().field();
        let mut out = vec![C::zero(field); n];
        for (tk, v) in t.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.clone() + tk.clone() * x.clone();
            }
        }
        out
    }

    pub fn lift_f64(&self, t: &[f64]) -> Vec<f64>
    where
        C: Coeff,
    {
        let n = self.basis.first().map_or(0, |v| v.len());
        let mut out = vec![0.0; n];
        for (tk, v) in t.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += tk * x.to_f64().unwrap_or(f64::NAN);
            }
        }
        out
    }
}

fn random_vec<C: Coeff>(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, bound: i64) -> Vec<C> {
    let f = ring.field();
    (0..ring.nvars()).map(|_| C::from_i64(f, rng.gen_range(-bound..=bound))).collect()
}

/// Scales a projective point so its first nonzero coordinate is 1.
pub fn normalize_point<C: Coeff>(p: &[C]) -> Vec<C> {
    match p.iter().find(|c| !c.is_zero()) {
        Some(c) => {
            let inv = c.inv().expect("nonzero");
            p.iter().map(|x| x.clone() * inv.clone()).collect()
        }
        None => p.to_vec(),
    }
}

#[derive(Clone, Debug)]
pub struct CurveSample {
    pub points: Vec<Vec<Fp>>,
    pub slices: usize,
    /// Degrees of the univariate slice polynomials.
    pub slice_degrees: Vec<usize>,
    pub warning: Option<String>,
}

/// Points of a projective curve over `F_p`, from random hyperplane slices
/// whose univariate eliminants split partially over `F_p`.
pub fn sample_curve_points(ideal: &Ideal<Fp>, count: usize, rng: &mut ChaCha8Rng) -> Result<CurveSample> {
    let ring = ideal.ring().clone();
    let p = ring.field().characteristic() as i64;
    let budget = 40 + 8 * count;
    let mut points: Vec<Vec<Fp>> = Vec::new();
    let mut degrees = Vec::new();
    let mut slices = 0;
    // over a small field a random hyperplane can contain the whole curve
    let mut positive_dim = 0;
    while points.len() < count && slices < budget {
        slices += 1;
        let h = random_vec::<Fp>(rng, &ring, p);
        let c = random_vec::<Fp>(rng, &ring, p);
        let shape = match slice(ideal, &h, &c, || random_vec::<Fp>(rng, &ring, p)) {
            Ok(s) => s,
            Err(PodError::Algebra(AlgebraError::NotSeparating(_))) => continue,
            Err(PodError::Algebra(AlgebraError::NotZeroDimensional)) => {
                positive_dim += 1;
                if degrees.is_empty() && positive_dim >= 8 {
                    return Err(PodError::Invalid("the ideal is not a curve".into()));
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        degrees.push(shape.degree());
        for t in fp_roots(&shape.minpoly) {
            let pt = normalize_point(&shape.point_at(&t));
            if ideal.generators().iter().any(|g| !g.evaluate(&pt).is_zero()) {
                return Err(PodError::Inconsistent("sampled point off the curve".into()));
            }
            if !points.contains(&pt) {
                points.push(pt);
            }
            if points.len() == count {
                break;
            }
        }
    }
    let warning = (points.len() < count)
        .then(|| format!("found {} of {count} points in {slices} slices", points.len()));
    Ok(CurveSample { points, slices, slice_degrees: degrees, warning })
}

/// Real points of the slice `h = 0`, `c = 1` of a curve over the rationals,
/// refined to `bits` bits and returned in floating point, together with the
/// degree of the slice polynomial.
pub fn real_slice_points(
    ideal: &Ideal<Rational>,
    hyperplane: &[Rational],
    chart: &[Rational],
    rng: &mut ChaCha8Rng,
    bits: u32,
) -> Result<(Vec<Vec<f64>>, usize)> {
    let ring = ideal.ring().clone();
    let shape = slice(ideal, hyperplane, chart, || random_vec::<Rational>(rng, &ring, 10))?;
    let mut out = Vec::new();
    for t in real_roots_approx(&shape.minpoly, bits) {
        let pt: Vec<f64> = shape.point_at(&t).iter().map(|x| x.approx()).collect();
        out.push(pt);
    }
    Ok((out, shape.degree()))
}

/// A normalized affine isometry `a -> M a + y` with `x = -M^t y`, `r = |y|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealConfig {
    pub e: [f64; 3],
    pub m: [[f64; 3]; 3],
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub r: f64,
}

impl RealConfig {
    pub fn apply(&self, a: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.y[i] + (0..3).map(|k| self.m[i][k] * a[k]).sum::<f64>())
    }

    /// `max |M M^t - id|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| self.m[i][k] * self.m[j][k]).sum();
                worst = worst.max((s - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

fn eval_f64(p: &Polynomial<Rational>, x: &[f64]) -> f64 {
    p.terms()
        .iter()
        .map(|(m, c)| c.approx() * (0..x.len()).map(|i| x[i].powi(m.exponent(i) as i32)).product::<f64>())
        .sum()
}

/// Real half-turns on the quartic `F = 0`: fix `e3 = 1`, sweep `e2` over
/// a grid, isolate the real roots `e1` of `F(e1, e2, 1)` exactly and push
/// them through `rho`, normalized by `h`.
pub fn real_configurations(seed: &SeedPolynomials<Rational>, count: usize) -> Vec<RealConfig> {
    let ring = &seed.ring;
    let mut out = Vec::new();
    // Coarse sweep e2 = k / 8 over [-40, 40], then halve the step inside the
    // band of e2 values that carried real roots until enough are found.
    let mut steps = 8i64;
    let (mut lo, mut hi) = (-40 * steps, 40 * steps);
    for level in 0..8 {
        let mut band: Option<(i64, i64)> = None;
        // k = 0, 1, -1, 2, -2, ... restricted to [lo, hi]
        let span = lo.abs().max(hi.abs());
        for n in 0..=(2 * span) {
            let k = if n % 2 == 0 { n / 2 } else { -(n + 1) / 2 };
            if k < lo || k > hi || (level > 0 && k % 2 == 0) {
                continue;
            }
            let e2 = Rational::new(k, steps);
            let uni = univariate_in_e1(&seed.f, &e2);
            if uni.degree().unwrap_or(0) == 0 {
                continue;
            }
            let roots = real_roots_approx(&uni, 80);
            if !roots.is_empty() {
                band = Some(band.map_or((k, k), |(a, b)| (a.min(k), b.max(k))));
            }
            for root in roots {
                let e = [root.approx(), e2.approx(), 1.0];
                out.push(config_from_e(seed, ring, e));
                if out.len() == count {
                    return out;
                }
            }
        }
        if level > 0 && band.is_none() {
            break;
        }
        let (a, b) = band.unwrap_or((lo / 2, hi / 2));
        steps *= 2;
        lo = 2 * a - 2;
        hi = 2 * b + 2;
    }
    out
}

fn univariate_in_e1(f: &Polynomial<Rational>, e2: &Rational) -> UPoly<Rational> {
    let mut coeffs = vec![Rational::from_integer(0); 5];
    for (m, c) in f.terms() {
        let d = m.exponent(0) as usize;
        let mut v = c.clone();
        for _ in 0..m.exponent(1) {
            v = v * e2.clone();
        }
        coeffs[d] = coeffs[d].clone() + v;
    }
    UPoly::new(podforge_algebra::Field::Rational, coeffs)
}

fn config_from_e(seed: &SeedPolynomials<Rational>, _ring: &Arc<Ring>, e: [f64; 3]) -> RealConfig {
    let h: f64 = e.iter().map(|t| t * t).sum();
    let m: [[f64; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| (2.0 * e[i] * e[j] - if i == j { h } else { 0.0 }) / h)
    });
    let p: [f64; 3] = std::array::from_fn(|i| eval_f64(&seed.p[i], &e));
    let y: [f64; 3] = p.map(|v| v / (2.0 * h));
    let r = eval_f64(&seed.u, &e) / (4.0 * h);
    RealConfig { e, m, x: y, y, r }
}

/// A leg in floating point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealLeg {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub d2: f64,
    /// Largest normalized 2x2 minor of `z`.
    pub minor_defect: f64,
}

impl RealLeg {
    pub fn realizable(&self) -> bool {
        self.d2 > 0.0
    }

    pub fn corrected_length(&self) -> f64 {
        self.a.iter().chain(self.b.iter()).map(|t| t * t).sum::<f64>() - self.d2
    }
}

/// A leg from a real point of the leg curve (coordinates in `Y_VARS` order).
pub fn real_leg_from_point(pt: &[f64]) -> Result<RealLeg> {
    let z00 = pt[0];
    let scale = pt.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if z00.abs() <= 1e-12 * scale {
        return Err(PodError::AnchorAtInfinity);
    }
    let z: Vec<f64> = pt.iter().map(|v| v / z00).collect();
    let a: [f64; 3] = std::array::from_fn(|i| z[4 * (i + 1)]);
    let b: [f64; 3] = std::array::from_fn(|j| z[j + 1]);
    let mut defect: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == 0 { 1.0 } else { a[i - 1] } * if j == 0 { 1.0 } else { b[j - 1] };
            defect = defect.max((z[4 * i + j] - expect).abs() / (1.0 + expect.abs()));
        }
    }
    let l = z[16];
    let d2 = a.iter().chain(b.iter()).map(|t| t * t).sum::<f64>() - l;
    Ok(RealLeg { a, b, d2, minor_defect: defect })
}

#[derive(Clone, Debug)]
pub struct RealLegs {
    pub legs: Vec<RealLeg>,
    pub slice_degrees: Vec<usize>,
    pub slices: usize,
}

/// Real legs of a bundle over the rationals. The leg curve is restricted to
/// the span of `L_lin` and cut by the anchor slices `a_1 = k` for
/// `k = 0, 1, -1, 1/2, ...`, each of which meets it in the legs over one
/// plane section of the base curve. Stops after `count` legs or
/// `max_slices` slices.
pub fn real_legs(
    bundle: &InfinityPodBundle<Rational>,
    count: usize,
    max_slices: usize,
    rng: &mut ChaCha8Rng,
) -> Result<RealLegs> {
    let restricted = SpanRestriction::new(&bundle.leg_ideal_full, &bundle.l_lin)?;
    let col = |name: &str| bundle.l_lin.ambient.iter().position(|a| a == name).expect("leg coordinate");
    let (z00, z10) = (col("z00"), col("z10"));
    let chart: Vec<Rational> = restricted.basis.iter().map(|v| v[z00].clone()).collect();
    let mut legs = Vec::new();
    let mut degrees = Vec::new();
    let mut slices = 0;
    while legs.len() < count && slices < max_slices {
        let k = anchor_slice_value(slices);
        slices += 1;
        let h: Vec<Rational> =
            restricted.basis.iter().map(|v| v[z10].clone() - k.clone() * v[z00].clone()).collect();
        let (pts, deg) = match real_slice_points(&restricted.ideal, &h, &chart, rng, 256) {
            Ok(v) => v,
            Err(PodError::Algebra(AlgebraError::NotSeparating(_))) => continue,
            Err(e) => return Err(e),
        };
        degrees.push(deg);
        for p in pts {
            if let Ok(leg) = real_leg_from_point(&restricted.lift_f64(&p)) {
                legs.push(leg);
            }
        }
    }
    legs.truncate(count);
    Ok(RealLegs { legs, slice_degrees: degrees, slices })
}

/// `0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ...`: small rationals in a fixed order.
fn anchor_slice_value(n: usize) -> Rational {
    if n == 0 {
        return Rational::from_integer(0);
    }
    let m = (n - 1) / 2;
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let (p, q) = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (1, 4), (4, 1), (3, 4), (4, 3)][m % 11];
    let scale = 1 + (m / 11) as i64;
    Rational::new(sign * p * scale, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PodReport {
    pub id: String,
    pub mode: CheckMode,
    /// `residuals[i][j]` for configuration `i` and leg `j`; in exact mode 0
    /// marks an exact zero and 1 a nonzero value.
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_vanishing: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub configurations: usize,
    pub legs: usize,
    pub realizable_legs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
    pub passed: bool,
}

impl PodReport {
    pub fn table(&self) -> String {
        let mut s = format!(
            "pod {} ({:?}): {} configurations x {} legs, max residual {:.3e}, {}\n",
            self.id,
            self.mode,
            self.configurations,
            self.legs,
            self.max_residual,
            if self.passed { "PASS" } else { "FAIL" }
        );
        match self.mode {
            // only the offending pairs
            CheckMode::Exact => {
                for (i, row) in self.residuals.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if *v != 0.0 {
                            s.push_str(&format!("  configuration {i}, leg {j}: nonzero\n"));
                        }
                    }
                }
            }
            CheckMode::Float => {
                s.push_str("  config");
                for j in 0..self.legs {
                    s.push_str(&format!(" {:>9}", format!("leg{j}")));
                }
                s.push('\n');
                for (i, row) in self.residuals.iter().enumerate() {
                    s.push_str(&format!("  c{i:<5}"));
                    for v in row {
                        s.push_str(&format!(" {v:>9.2e}"));
                    }
                    s.push('\n');
                }
            }
        }
        s
    }
}

/// Exact check of the sphere condition on all pairs.
pub fn check_pod_exact<C: Coeff>(id: &str, configs: &[IsometryPoint<C>], legs: &[LegPoint<C>]) -> PodReport {
    let mut residuals = Vec::with_capacity(configs.len());
    let mut all_zero = true;
    if let Some(first) = configs.first() {
        let form = BilinearForm::<C>::new(FormKind::Bsc17, first.h.field());
        for c in configs {
            let cc = c.coords();
            let row: Vec<f64> = legs
                .iter()
                .map(|l| {
                    let v = form.eval(&cc, &l.coords());
                    if v.is_zero() {
                        0.0
                    } else {
                        all_zero = false;
                        1.0
                    }
                })
                .collect();
            residuals.push(row);
        }
    }
    PodReport {
        id: id.to_string(),
        mode: CheckMode::Exact,
        max_residual: if all_zero { 0.0 } else { 1.0 },
        residuals,
        exact_vanishing: Some(all_zero),
        tolerance: None,
        configurations: configs.len(),
        legs: legs.len(),
        realizable_legs: 0,
        certification: None,
        passed: all_zero,
    }
}

/// Corrected sphere condition `l + r - 2<a,x> - 2<b,y> - 2<Ma,b>` in floating
/// point, with its scale `1 + |l| + |r|`.
pub fn sphere_residual(c: &RealConfig, leg: &RealLeg) -> (f64, f64) {
    let l = leg.corrected_length();
    let dot = |u: &[f64; 3], v: &[f64; 3]| (0..3).map(|i| u[i] * v[i]).sum::<f64>();
    let ma: [f64; 3] = std::array::from_fn(|i| (0..3).map(|k| c.m[i][k] * leg.a[k]).sum());
    let v = l + c.r - 2.0 * dot(&leg.a, &c.x) - 2.0 * dot(&leg.b, &c.y) - 2.0 * dot(&ma, &leg.b);
    (v, 1.0 + l.abs() + c.r.abs())
}

/// Floating-point check: relative residuals `|B| / (1 + |l| + |r|)` at most `tol`.
pub fn check_pod_float(id: &str, configs: &[RealConfig], legs: &[RealLeg], tol: f64) -> PodReport {
    let mut max: f64 = 0.0;
    let residuals: Vec<Vec<f64>> = configs
        .iter()
        .map(|c| {
            legs.iter()
                .map(|l| {
                    let (v, scale) = sphere_residual(c, l);
                    let rel = v.abs() / scale;
                    max = max.max(rel);
                    rel
                })
                .collect()
        })
        .collect();
    PodReport {
        id: id.to_string(),
        mode: CheckMode::Float,
        residuals,
        max_residual: max,
        exact_vanishing: None,
        tolerance: Some(tol),
        configurations: configs.len(),
        legs: legs.len(),
        realizable_legs: legs.iter().filter(|l| l.realizable()).count(),
        certification: None,
        passed: max <= tol && max.is_finite(),
    }
}

/// Exact certification of an infinity-pod over `F_p`: sample points of the
/// configuration curve and of the leg curve and evaluate the sphere
/// condition on every pair.
pub fn verify_bundle_exact(
    id: &str,
    bundle: &InfinityPodBundle<Fp>,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(PodReport, Vec<String>)> {
    let mut warnings = Vec::new();
    let configs = sample_curve_points(&bundle.config_ideal, samples, rng)?;
    warnings.extend(configs.warning.iter().map(|w| format!("configurations: {w}")));
    let restricted = SpanRestriction::new(&bundle.leg_ideal_full, &bundle.l_lin)?;
    let legs = sample_curve_points(&restricted.ideal, samples, rng)?;
    warnings.extend(legs.warning.iter().map(|w| format!("legs: {w}")));
    let configs = configs.points.iter().map(|p| IsometryPoint::from_coords(p)).collect::<Result<Vec<_>>>()?;
    let legs =
        legs.points.iter().map(|p| LegPoint::from_coords(&restricted.lift(p))).collect::<Result<Vec<_>>>()?;
    let mut report = check_pod_exact(id, &configs, &legs);
    report.certification = Some(bundle.certification.clone());
    Ok((report, warnings))
}
