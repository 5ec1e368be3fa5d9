//! Sphere-condition pairings between configuration points and leg points,
//! linear subspaces on either side, and recovery of legs from leg points.

use podforge_algebra::{rational_to, Coeff, Field, Matrix, Polynomial, Rational, Ring};
use serde::{Deserialize, Serialize};

use crate::error::{PodError, Result};
use crate::models::{
    self, IsometryPoint, Leg, LegPoint, X_PINV_VARS, X_P_VARS, X_SYM_VARS, X_VARS, Y_INV_VARS, Y_PINV_VARS,
    Y_P_VARS, Y_VARS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// Isometries `(M : x : y : r : h)` against legs `(z_ij : l)`.
    Bsc17,
    /// Symmetric configurations against unordered leg pairs.
    Sbsc11,
    /// Planar restriction of `Bsc17`.
    BscPlanar10,
    /// Planar restriction of `Sbsc11`.
    SbscPlanar7,
    Custom,
}

impl FormKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bsc17" => Ok(FormKind::Bsc17),
            "sbsc11" => Ok(FormKind::Sbsc11),
            "bsc_planar10" | "bscplanar10" => Ok(FormKind::BscPlanar10),
            "sbsc_planar7" | "sbscplanar7" => Ok(FormKind::SbscPlanar7),
            _ => Err(PodError::Invalid(format!("unknown form `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A bilinear pairing `B(u, w) = u^t A w` stored as its matrix `A`, with the
/// left (configuration) coordinates indexing rows.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<C: Coeff> {
    pub kind: FormKind,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub matrix: Matrix<C>,
}

impl<C: Coeff> BilinearForm<C> {
    pub fn new(kind: FormKind, field: Field) -> Self {
        // (left name, right name, coefficient)
        let mut entries: Vec<(String, String, i64)> = vec![
            ("h".into(), "l".into(), 1),
            ("r".into(), "z00".into(), 1),
        ];
        let (left, right): (&[&str], &[&str]) = match kind {
            FormKind::Bsc17 => {
                for i in 1..=3 {
                    entries.push((format!("x{i}"), format!("z{i}0"), -2));
                    entries.push((format!("y{i}"), format!("z0{i}"), -2));
                    for j in 1..=3 {
                        entries.push((format!("m{i}{j}"), format!("z{j}{i}"), -2));
                    }
                }
                (&X_VARS, &Y_VARS)
            }
            FormKind::Sbsc11 => {
                for i in 1..=3 {
                    entries.push((format!("x{i}"), format!("s0{i}"), -2));
                    entries.push((format!("m{i}{i}"), format!("z{i}{i}"), -2));
                    for j in i + 1..=3 {
                        entries.push((format!("m{i}{j}"), format!("s{i}{j}"), -2));
                    }
                }
                (&X_SYM_VARS, &Y_INV_VARS)
            }
            FormKind::BscPlanar10 => {
                for i in 1..=2 {
                    entries.push((format!("x{i}"), format!("z{i}0"), -2));
                    entries.push((format!("y{i}"), format!("z0{i}"), -2));
                    for j in 1..=2 {
                        entries.push((format!("m{i}{j}"), format!("z{j}{i}"), -2));
                    }
                }
                (&X_P_VARS, &Y_P_VARS)
            }
            FormKind::SbscPlanar7 => {
                for i in 1..=2 {
                    entries.push((format!("x{i}"), format!("s0{i}"), -2));
                    entries.push((format!("m{i}{i}"), format!("z{i}{i}"), -2));
                }
                entries.push(("m12".into(), "s12".into(), -2));
                (&X_PINV_VARS, &Y_PINV_VARS)
            }
            FormKind::Custom => panic!("custom forms are built with `from_matrix`"),
        };
        let mut matrix = Matrix::zeros(field, left.len(), right.len());
        for (l, r, c) in entries {
            let i = left.iter().position(|v| *v == l).expect("left coordinate");
            let j = right.iter().position(|v| *v == r).expect("right coordinate");
            matrix[(i, j)] = C::from_i64(field, c);
        }
        BilinearForm {
            kind,
            left: left.iter().map(|s| s.to_string()).collect(),
            right: right.iter().map(|s| s.to_string()).collect(),
            matrix,
        }
    }

    pub fn from_matrix(left: &[&str], right: &[&str], matrix: Matrix<C>) -> Result<Self> {
        if matrix.nrows() != left.len() || matrix.ncols() != right.len() {
            return Err(PodError::Invalid("pairing matrix does not match the coordinate lists".into()));
        }
        Ok(BilinearForm {
            kind: FormKind::Custom,
            left: left.iter().map(|s| s.to_string()).collect(),
            right: right.iter().map(|s| s.to_string()).collect(),
            matrix,
        })
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn eval(&self, u: &[C], w: &[C]) -> C {
        let aw = self.matrix.mul_vec(w);
        podforge_algebra::linalg::dot(u, &aw)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.nrows() == self.matrix.ncols() && self.matrix.rank() == self.matrix.nrows()
    }

    fn ambient(&self, side: Side) -> &[String] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// The functional `B(u, .)` on the right as a coefficient vector (or
    /// `B(., w)` on the left when `side` is `Right`).
    pub fn functional(&self, side: Side, v: &[C]) -> Vec<C> {
        match side {
            Side::Left => self.matrix.transpose().mul_vec(v),
            Side::Right => self.matrix.mul_vec(v),
        }
    }

    /// The linear form `B(point, .)` (or `B(., point)`) as a polynomial on
    /// the other side.
    pub fn hyperplane(&self, side: Side, point: &[C], ring: &std::sync::Arc<Ring>) -> Result<Polynomial<C>> {
        let f = self.functional(side, point);
        let other = self.ambient(opposite(side));
        let mut coeffs = vec![C::zero(self.field()); ring.nvars()];
        for (name, c) in other.iter().zip(f) {
            coeffs[ring.var_index(name)?] = c;
        }
        Ok(Polynomial::linear_form(ring, &coeffs))
    }
}

fn opposite(side: Side) -> Side {
    match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    Points,
    Forms,
}

/// A linear subspace of a coordinate space, given by spanning points or by
/// the linear forms cutting it out. The basis is kept in reduced row echelon
/// form so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace<C: Coeff> {
    pub ambient: Vec<String>,
    pub kind: SubspaceKind,
    pub basis: Vec<Vec<C>>,
    field: Field,
}

impl<C: Coeff> LinearSubspace<C> {
    pub fn new<S: AsRef<str>>(ambient: &[S], kind: SubspaceKind, vectors: &[Vec<C>], field: Field) -> Result<Self> {
        let n = ambient.len();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(PodError::Invalid(format!("vectors must have {n} coordinates")));
        }
        let basis = Matrix::from_rows(field, n, vectors)?.row_space();
        Ok(LinearSubspace { ambient: ambient.iter().map(|s| s.as_ref().to_string()).collect(), kind, basis, field })
    }

    pub fn points<S: AsRef<str>>(ambient: &[S], vectors: &[Vec<C>], field: Field) -> Result<Self> {
        Self::new(ambient, SubspaceKind::Points, vectors, field)
    }

    pub fn forms<S: AsRef<str>>(ambient: &[S], vectors: &[Vec<C>], field: Field) -> Result<Self> {
        Self::new(ambient, SubspaceKind::Forms, vectors, field)
    }

    /// Linear polynomials cutting out a subspace; coefficients are read by
    /// variable name.
    pub fn from_linear_forms(ambient: &[&str], forms: &[Polynomial<C>]) -> Result<Self> {
        let field = forms.first().map(|f| f.field()).ok_or_else(|| PodError::Invalid("no forms".into()))?;
        let mut vectors = Vec::new();
        for f in forms {
            let ring = f.ring();
            if f.homogeneous_degree().is_some_and(|d| d != 1) {
                return Err(PodError::Invalid(format!("`{f}` is not linear")));
            }
            let coeffs = f.linear_coefficients();
            let mut v = vec![C::zero(field); ambient.len()];
            for (i, name) in ring.vars().iter().enumerate() {
                if coeffs[i].is_zero() {
                    continue;
                }
                let j = ambient
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| PodError::Invalid(format!("`{name}` is not an ambient coordinate")))?;
                v[j] = coeffs[i].clone();
            }
            vectors.push(v);
        }
        Self::forms(ambient, &vectors, field)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Vector-space dimension of the basis.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Vector-space dimension of the set of points.
    pub fn point_dimension(&self) -> usize {
        match self.kind {
            SubspaceKind::Points => self.basis.len(),
            SubspaceKind::Forms => self.ambient.len() - self.basis.len(),
        }
    }

    fn annihilator(&self) -> Vec<Vec<C>> {
        let n = self.ambient.len();
        if self.basis.is_empty() {
            return (0..n)
                .map(|i| {
                    let mut v = vec![C::zero(self.field); n];
                    v[i] = C::one(self.field);
                    v
                })
                .collect();
        }
        Matrix::from_rows(self.field, n, &self.basis).expect("rectangular").kernel()
    }

    pub fn to_points(&self) -> Self {
        match self.kind {
            SubspaceKind::Points => self.clone(),
            SubspaceKind::Forms => Self::points(&self.ambient, &self.annihilator(), self.field).expect("consistent"),
        }
    }

    pub fn to_forms(&self) -> Self {
        match self.kind {
            SubspaceKind::Forms => self.clone(),
            SubspaceKind::Points => Self::forms(&self.ambient, &self.annihilator(), self.field).expect("consistent"),
        }
    }

    /// The forms as polynomials in `ring` (looked up by name).
    pub fn linear_forms(&self, ring: &std::sync::Arc<Ring>) -> Result<Vec<Polynomial<C>>> {
        let forms = self.to_forms();
        let mut out = Vec::new();
        for v in &forms.basis {
            let mut coeffs = vec![C::zero(self.field); ring.nvars()];
            for (name, c) in self.ambient.iter().zip(v) {
                coeffs[ring.var_index(name)?] = c.clone();
            }
            out.push(Polynomial::linear_form(ring, &coeffs));
        }
        Ok(out)
    }

    pub fn contains_point(&self, p: &[C]) -> bool {
        let pts = self.to_points();
        let mut rows = pts.basis.clone();
        rows.push(p.to_vec());
        Matrix::from_rows(self.field, self.ambient.len(), &rows).expect("rectangular").rank() == pts.basis.len()
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            ambient: self.ambient.clone(),
            kind: self.kind,
            field: self.field,
            basis: self.basis.iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(json: &SubspaceJson) -> Result<Self> {
        let vectors = json
            .basis
            .iter()
            .map(|v| v.iter().map(|s| C::parse_in(json.field, s)).collect::<podforge_algebra::Result<Vec<C>>>())
            .collect::<podforge_algebra::Result<Vec<_>>>()?;
        Self::new(&json.ambient, json.kind, &vectors, json.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: Vec<String>,
    pub kind: SubspaceKind,
    #[serde(default = "default_field")]
    pub field: Field,
    pub basis: Vec<Vec<String>>,
}

fn default_field() -> Field {
    Field::Rational
}

/// The points on the other side of `form` that pair to zero with every
/// point of `s`, where `s` lives on `side`. For a space of forms this is
/// `{w : B(., w) in span(s)}`.
pub fn dual_space<C: Coeff>(s: &LinearSubspace<C>, form: &BilinearForm<C>, side: Side) -> Result<LinearSubspace<C>> {
    let ambient = form.ambient(side);
    if s.ambient != ambient {
        return Err(PodError::Invalid(format!(
            "subspace lives in ({}) but the form expects ({})",
            s.ambient.join(","),
            ambient.join(",")
        )));
    }
    let field = form.field();
    let pts = s.to_points();
    if !form.is_nondegenerate() {
        let radical = match side {
            Side::Left => form.matrix.transpose().kernel(),
            Side::Right => form.matrix.kernel(),
        };
        if !radical.is_empty() && !pts.basis.is_empty() {
            let mut rows = pts.basis.clone();
            let before = rows.len() + radical.len();
            rows.extend(radical.iter().cloned());
            if Matrix::from_rows(field, ambient.len(), &rows)?.rank() < before {
                return Err(PodError::DegenerateForm("the subspace meets the radical of the form".into()));
            }
        }
    }
    let other = form.ambient(opposite(side));
    let functionals: Vec<Vec<C>> = pts.basis.iter().map(|p| form.functional(side, p)).collect();
    let vectors = if functionals.is_empty() {
        LinearSubspace::<C>::forms(other, &[], field)?.annihilator()
    } else {
        Matrix::from_rows(field, other.len(), &functionals)?.kernel()
    };
    LinearSubspace::points(other, &vectors, field)
}

/// Corrected sphere condition `l h + r - 2<a,x> - 2<b,y> - 2<Ma,b>`.
pub fn sphere_value<C: Coeff>(leg: &Leg, sigma: &IsometryPoint<C>) -> Result<C> {
    let field = sigma.h.field();
    let lp = leg_to_point::<C>(leg, field)?;
    let b = BilinearForm::<C>::new(FormKind::Bsc17, field);
    Ok(b.eval(&sigma.coords(), &lp.coords()))
}

/// `z_ij = a~_i b~_j` with `a~ = (1, a)`, `b~ = (1, b)`, and the corrected length.
pub fn leg_to_point<C: Coeff>(leg: &Leg, field: Field) -> Result<LegPoint<C>> {
    let conv = |r: &Rational| rational_to::<C>(field, r);
    let one = Rational::from_integer(1);
    let at: Vec<C> = std::iter::once(&one).chain(leg.a.iter()).map(conv).collect::<podforge_algebra::Result<_>>()?;
    let bt: Vec<C> = std::iter::once(&one).chain(leg.b.iter()).map(conv).collect::<podforge_algebra::Result<_>>()?;
    Ok(LegPoint {
        z: std::array::from_fn(|i| std::array::from_fn(|j| at[i].clone() * bt[j].clone())),
        l: conv(&leg.corrected_length())?,
    })
}

/// Inverse of [`leg_to_point`] on affine legs.
pub fn point_to_leg(pt: &LegPoint<Rational>) -> Result<Leg> {
    let z00 = pt.z[0][0].clone();
    if z00.is_zero() {
        return Err(PodError::AnchorAtInfinity);
    }
    for i in 0..4 {
        for k in i + 1..4 {
            for j in 0..4 {
                for m in j + 1..4 {
                    let minor = pt.z[i][j].clone() * pt.z[k][m].clone() - pt.z[i][m].clone() * pt.z[k][j].clone();
                    if !minor.is_zero() {
                        return Err(PodError::NotALegPoint(format!("z has rank > 1 (minor rows {i}{k}, columns {j}{m})")));
                    }
                }
            }
        }
    }
    let inv = z00.inv().expect("nonzero");
    let a: [Rational; 3] = std::array::from_fn(|i| pt.z[i + 1][0].clone() * inv.clone());
    let b: [Rational; 3] = std::array::from_fn(|j| pt.z[0][j + 1].clone() * inv.clone());
    let l = pt.l.clone() * inv;
    let sq = |v: &[Rational; 3]| v.iter().fold(Rational::from_integer(0), |acc, t| acc + t.clone() * t.clone());
    let d2 = sq(&a) + sq(&b) - l;
    Ok(Leg { a, b, d2 })
}

/// A leg and its swap `(b, a)`, which share the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegPair {
    pub first: Leg,
    pub second: Leg,
}

impl LegPair {
    pub fn is_coincident(&self) -> bool {
        self.first.a == self.first.b
    }

    /// Same unordered pair, ignoring which of the two legs is listed first.
    pub fn same_as(&self, other: &LegPair) -> bool {
        (self.first == other.first && self.second == other.second)
            || (self.first == other.second && self.second == other.first)
    }
}

/// Outcome of splitting a point of `Y_inv` into its two legs. The anchors are
/// `a, b = half_sum ± (sqrt(disc) / 2) * direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecoveredPair {
    Rational(LegPair),
    Quadratic { half_sum: [Rational; 3], direction: [Rational; 3], disc: Rational, l: Rational },
}

impl RecoveredPair {
    /// Floating-point anchors `(a, b)` and squared length.
    pub fn approx(&self) -> ([f64; 3], [f64; 3], f64) {
        match self {
            RecoveredPair::Rational(p) => (
                p.first.a.clone().map(|x| x.approx()),
                p.first.b.clone().map(|x| x.approx()),
                p.first.d2.approx(),
            ),
            RecoveredPair::Quadratic { half_sum, direction, disc, l } => {
                let s = disc.approx().sqrt() / 2.0;
                let a: [f64; 3] = std::array::from_fn(|i| half_sum[i].approx() + s * direction[i].approx());
                let b: [f64; 3] = std::array::from_fn(|i| half_sum[i].approx() - s * direction[i].approx());
                let d2 = a.iter().chain(b.iter()).map(|t| t * t).sum::<f64>() - l.approx();
                (a, b, d2)
            }
        }
    }
}

/// Splits the symmetric matrix `S = a~ b~^t + b~ a~^t` of a point of `Y_inv`
/// (coordinates in the order of `Y_INV_VARS`). With `a~_0 = b~_0 = 1` the sum
/// `sigma = a + b` is read off the first row, and `D = sigma sigma^t - 2 S'`
/// equals `delta delta^t` for `delta = a - b`.
pub fn recover_leg_pairs(pt: &[Rational]) -> Result<RecoveredPair> {
    if pt.len() != 11 {
        return Err(PodError::Invalid(format!("Y_inv point needs 11 coordinates, got {}", pt.len())));
    }
    let s = models::sym_matrix_of(pt);
    let two = Rational::from_integer(2);
    let s00 = s[0][0].clone();
    if s00.is_zero() {
        return Err(PodError::AnchorAtInfinity);
    }
    // normalize so that a~_0 b~_0 = 1
    let scale = two.clone() * s00.inv().expect("nonzero");
    let n = |x: &Rational| x.clone() * scale.clone();
    let sigma: [Rational; 3] = std::array::from_fn(|i| n(&s[0][i + 1]));
    let d: [[Rational; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| sigma[i].clone() * sigma[j].clone() - two.clone() * n(&s[i + 1][j + 1]))
    });
    let l = n(&pt[10]);
    // D must have rank <= 1
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let minor = d[i][j].clone() * d[k][m].clone() - d[i][m].clone() * d[k][j].clone();
                    if !minor.is_zero() {
                        return Err(PodError::NotALegPoint("symmetric matrix has rank > 2".into()));
                    }
                }
            }
        }
    }
    let half = Rational::new(1, 2);
    let half_sum: [Rational; 3] = sigma.clone().map(|x| x * half.clone());
    let pivot = (0..3).find(|&k| !d[k][k].is_zero());
    let Some(k) = pivot else {
        let leg = Leg { a: half_sum.clone(), b: half_sum.clone(), d2: Rational::from_integer(0) };
        let d2 = leg_length(&leg.a, &leg.b, &l);
        let leg = Leg { d2, ..leg };
        return Ok(RecoveredPair::Rational(LegPair { first: leg.clone(), second: leg }));
    };
    let dkk = d[k][k].clone();
    if dkk.is_negative() {
        return Err(PodError::ComplexLegPair);
    }
    let inv = dkk.inv().expect("nonzero");
    let direction: [Rational; 3] = std::array::from_fn(|i| d[i][k].clone() * inv.clone());
    match dkk.sqrt_exact() {
        Some(root) => {
            let delta: [Rational; 3] = direction.clone().map(|x| x * root.clone() * half.clone());
            let a: [Rational; 3] = std::array::from_fn(|i| half_sum[i].clone() + delta[i].clone());
            let b: [Rational; 3] = std::array::from_fn(|i| half_sum[i].clone() - delta[i].clone());
            let d2 = leg_length(&a, &b, &l);
            Ok(RecoveredPair::Rational(LegPair {
                first: Leg { a: a.clone(), b: b.clone(), d2: d2.clone() },
                second: Leg { a: b, b: a, d2 },
            }))
        }
        None => Ok(RecoveredPair::Quadratic { half_sum, direction, disc: dkk, l }),
    }
}

fn leg_length(a: &[Rational; 3], b: &[Rational; 3], l: &Rational) -> Rational {
    let sq = |v: &[Rational; 3]| v.iter().fold(Rational::from_integer(0), |acc, t| acc + t.clone() * t.clone());
    sq(a) + sq(b) - l.clone()
}

/// Floating-point version of [`recover_leg_pairs`]: returns `(a, b, d2)`.
pub fn recover_leg_pairs_f64(pt: &[f64]) -> Result<([f64; 3], [f64; 3], f64)> {
    if pt.len() != 11 {
        return Err(PodError::Invalid(format!("Y_inv point needs 11 coordinates, got {}", pt.len())));
    }
    let s = models::sym_matrix_of_f64(pt);
    if s[0][0].abs() < 1e-300 {
        return Err(PodError::AnchorAtInfinity);
    }
    let scale = 2.0 / s[0][0];
    let sigma: [f64; 3] = std::array::from_fn(|i| s[0][i + 1] * scale);
    let d: [[f64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| sigma[i] * sigma[j] - 2.0 * s[i + 1][j + 1] * scale));
    let k = (0..3).max_by(|&i, &j| d[i][i].abs().total_cmp(&d[j][j].abs())).unwrap();
    let tol = 1e-12 * (1.0 + sigma.iter().map(|x| x * x).sum::<f64>());
    let delta: [f64; 3] = if d[k][k].abs() <= tol {
        [0.0; 3]
    } else if d[k][k] < 0.0 {
        return Err(PodError::ComplexLegPair);
    } else {
        let root = d[k][k].sqrt();
        std::array::from_fn(|i| d[i][k] / root)
    };
    let a: [f64; 3] = std::array::from_fn(|i| (sigma[i] + delta[i]) / 2.0);
    let b: [f64; 3] = std::array::from_fn(|i| (sigma[i] - delta[i]) / 2.0);
    let l = pt[10] * scale;
    let d2 = a.iter().chain(b.iter()).map(|t| t * t).sum::<f64>() - l;
    Ok((a, b, d2))
}

/// The symmetric point `alpha(a~, b~)` with its corrected length, in the
/// order of `Y_INV_VARS`.
pub fn leg_pair_point(leg: &Leg) -> Vec<Rational> {
    let p = leg_to_point::<Rational>(leg, Field::Rational).expect("rational leg");
    p.sym_coords()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn bsc17_is_a_signed_permutation() {
        let b = BilinearForm::<Rational>::new(FormKind::Bsc17, Field::Rational);
        assert!(b.is_nondegenerate());
        for i in 0..17 {
            assert_eq!((0..17).filter(|&j| !b.matrix[(i, j)].is_zero()).count(), 1);
        }
    }

    #[test]
    fn sphere_value_examples() {
        let id = IsometryPoint::<Rational>::identity(Field::Rational);
        let leg = Leg::from_i64([1, 0, 0], [1, 0, 0], 0);
        assert_eq!(sphere_value(&leg, &id).unwrap(), q(0));
        let leg = Leg::from_i64([0, 0, 0], [0, 0, 0], 1);
        assert_eq!(sphere_value(&leg, &id).unwrap(), q(-1));
    }

    #[test]
    fn leg_point_example() {
        let leg = Leg::from_i64([1, 0, 0], [0, 1, 0], 2);
        let p = leg_to_point::<Rational>(&leg, Field::Rational).unwrap();
        assert_eq!(p.z[0][0], q(1));
        assert_eq!(p.z[0][1], q(0));
        assert_eq!(p.z[1][0], q(1));
        assert_eq!(p.z[1][1], q(0));
        assert_eq!(p.z[1][2], q(1));
        assert_eq!(p.l, q(0));
        assert_eq!(point_to_leg(&p).unwrap(), leg);
        let mut bad = p.clone();
        bad.z[0][0] = q(0);
        assert_eq!(point_to_leg(&bad), Err(PodError::AnchorAtInfinity));
        let mut bad = p;
        bad.z[3][3] = q(5);
        assert!(matches!(point_to_leg(&bad), Err(PodError::NotALegPoint(_))));
    }

    #[test]
    fn dot_form_dual() {
        let f = Field::Rational;
        let m = Matrix::<Rational>::identity(f, 3);
        let b = BilinearForm::from_matrix(&["u0", "u1", "u2"], &["v0", "v1", "v2"], m).unwrap();
        let s = LinearSubspace::points(&["u0", "u1", "u2"], &[vec![q(1), q(0), q(0)]], f).unwrap();
        let d = dual_space(&s, &b, Side::Left).unwrap();
        assert_eq!(d.point_dimension(), 2);
        assert_eq!(d.to_forms().basis, vec![vec![q(1), q(0), q(0)]]);
        let back = dual_space(&d, &b, Side::Right).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn degenerate_form_is_reported() {
        let f = Field::Rational;
        let m = Matrix::from_rows(f, 2, &[vec![q(1), q(0)], vec![q(0), q(0)]]).unwrap();
        let b = BilinearForm::from_matrix(&["u0", "u1"], &["v0", "v1"], m).unwrap();
        let s = LinearSubspace::points(&["u0", "u1"], &[vec![q(0), q(1)]], f).unwrap();
        assert!(matches!(dual_space(&s, &b, Side::Left), Err(PodError::DegenerateForm(_))));
    }

    #[test]
    fn recover_simple_pair() {
        let leg = Leg::from_i64([1, 0, 0], [0, 1, 0], 2);
        let RecoveredPair::Rational(pair) = recover_leg_pairs(&leg_pair_point(&leg)).unwrap() else {
            panic!("expected a rational pair")
        };
        let expected = LegPair { first: leg.clone(), second: Leg::from_i64([0, 1, 0], [1, 0, 0], 2) };
        assert!(pair.same_as(&expected));
    }

    #[test]
    fn coincident_and_complex_pairs() {
        // S = diag(2,0,0,0): a = b = 0
        let mut p = vec![q(0); 11];
        p[9] = q(1);
        let RecoveredPair::Rational(pair) = recover_leg_pairs(&p).unwrap() else { panic!() };
        assert!(pair.is_coincident());
        assert_eq!(pair.first.d2, q(0));
        // S = diag(2,2,0,0): a_1 b_1 = 1, a_1 + b_1 = 0
        p[0] = q(1);
        assert_eq!(recover_leg_pairs(&p), Err(PodError::ComplexLegPair));
    }

    #[test]
    fn irrational_pair_keeps_extension_data() {
        // a = (1 + sqrt 2, 0, 0), b = (1 - sqrt 2, 0, 0): sum 2, product -1
        let mut p = vec![q(0); 11];
        p[9] = q(1);
        p[0] = q(-1);
        p[6] = q(2);
        match recover_leg_pairs(&p).unwrap() {
            RecoveredPair::Quadratic { disc, .. } => assert_eq!(disc, q(8)),
            other => panic!("{other:?}"),
        }
        let (a, b, _) = recover_leg_pairs_f64(&p.iter().map(|x| x.approx()).collect::<Vec<_>>()).unwrap();
        assert!((a[0] - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((b[0] - (1.0 - 2f64.sqrt())).abs() < 1e-12);
    }
}
