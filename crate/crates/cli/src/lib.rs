//! The `podforge` command line: argument parsing, file formats and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use podforge::constructions::{
    create_infinity_pod_seeded, cubic_line_symmetric, duporcq_sixth_leg, symmetroid_pencil, InfinityPodBundle,
    RandomParams,
};
use podforge::duality::{dual_space, BilinearForm, FormKind, LinearSubspace, Side, SubspaceJson};
use podforge::models::{self, Leg};
use podforge::reproduce::{run_criterion, CriterionResult, ReproduceOptions, CRITERIA};
use podforge::verify::{check_pod_float, real_configurations, real_legs, verify_bundle_exact, PodReport};
use podforge::PodError;
use podforge_algebra::{Coeff, Field, Fp, Ideal, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Prime used when an exact check is asked of a bundle over the rationals.
const EXACT_PRIME: u32 = 32003;

#[derive(Debug, Parser)]
#[command(name = "podforge", version, about = "Projective models and constructions of mobile pods")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the ideal of a model as JSON.
    Model {
        /// X, Xinv, Xrot, Xp, Xpinv, Z, Zinv, Y, Yp, Yinv or Ypinv.
        name: String,
        #[arg(long, default_value = "fp:101")]
        field: Field,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print projective dimension and degree of a model.
    Invariants {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "fp:101")]
        field: Field,
    },
    /// Build a pod: infinity, duporcq or cubic.
    #[command(subcommand)]
    Construct(Construct),
    /// Dual of a subspace under one of the leg/configuration pairings.
    Dual {
        /// bsc17, sbsc11, bsc_planar10 or sbsc_planar7.
        #[arg(long)]
        form: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the sphere conditions of a constructed bundle.
    Verify {
        bundle: Option<PathBuf>,
        #[arg(long = "in", conflicts_with = "bundle")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Sampled configurations (and, in exact mode, legs).
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = podforge::reproduce::RESIDUAL_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Reproduce {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fp:101")]
        field: Field,
        /// Random pods per randomized criterion.
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = podforge::reproduce::RESIDUAL_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// An infinity-pod from a random seed quartic.
    Infinity {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fp:101")]
        field: Field,
        #[arg(long, default_value_t = RandomParams::default().bound)]
        bound: i64,
        #[arg(long, default_value_t = RandomParams::default().retries)]
        retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The sixth leg of a planar pentapod.
    Duporcq {
        /// Pod JSON with five planar legs.
        #[arg(long, alias = "in")]
        legs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A line-symmetric pod with a cubic leg curve.
    Cubic {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fp:101")]
        field: Field,
        #[arg(long, default_value_t = RandomParams::default().bound)]
        bound: i64,
        #[arg(long, default_value_t = RandomParams::default().retries)]
        retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

/// Legs as three parallel lists of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PodJson {
    pub base: Vec<[Rational; 3]>,
    pub platform: Vec<[Rational; 3]>,
    pub lengths_squared: Vec<Rational>,
}

impl PodJson {
    pub fn from_legs(legs: &[Leg]) -> Self {
        PodJson {
            base: legs.iter().map(|l| l.a.clone()).collect(),
            platform: legs.iter().map(|l| l.b.clone()).collect(),
            lengths_squared: legs.iter().map(|l| l.d2.clone()).collect(),
        }
    }

    pub fn legs(&self) -> Result<Vec<Leg>, Failure> {
        let n = self.base.len();
        if self.platform.len() != n || self.lengths_squared.len() != n {
            return Err(Failure::Usage("pod JSON: base, platform and lengths_squared differ in length".into()));
        }
        Ok((0..n)
            .map(|i| Leg::new(self.base[i].clone(), self.platform[i].clone(), self.lengths_squared[i].clone()))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Degenerate(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verification(_) | Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Degenerate(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Degenerate(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<PodError> for Failure {
    fn from(e: PodError) -> Self {
        if e.is_degenerate_input() {
            Failure::Degenerate(e.to_string())
        } else if matches!(e, PodError::Invalid(_) | PodError::NotALegPoint(_)) {
            Failure::Usage(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<podforge_algebra::AlgebraError> for Failure {
    fn from(e: podforge_algebra::AlgebraError) -> Self {
        Failure::from(PodError::from(e))
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&config) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("podforge: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<(), Failure> {
    match &config.command {
        Command::Model { name, field, out } => {
            let ideal = with_field!(*field, |C| model_ideal::<C>(name, *field)?.to_json());
            emit(out.as_deref(), &to_json(&ideal))
        }
        Command::Invariants { model, field } => {
            let h = with_field!(*field, |C| model_ideal::<C>(model, *field)?.hilbert_data()?);
            println!("dim {} deg {}", h.dimension, h.degree);
            Ok(())
        }
        Command::Construct(c) => construct(c),
        Command::Dual { form, input, out } => dual(form, input, out.as_deref()),
        Command::Verify { bundle, input, mode, samples, tol, seed, out } => {
            let path = bundle
                .as_ref()
                .or(input.as_ref())
                .ok_or_else(|| Failure::Usage("verify needs a bundle file".into()))?;
            verify(path, *mode, *samples, *tol, *seed, out.as_deref())
        }
        Command::Reproduce { only, seed, field, runs, tol, out } => {
            let Field::Prime(prime) = *field else {
                return Err(Failure::Usage("reproduce runs its exact checks over fp:P".into()));
            };
            let opts = ReproduceOptions { prime, seed: *seed, runs: *runs, tol: *tol };
            reproduce(only, &opts, out.as_deref())
        }
    }
}

/// Runs `body` with the type parameter `C` bound to the coefficient type of
/// `field`.
macro_rules! with_field {
    ($field:expr, |$c:ident| $body:expr) => {
        match $field {
            Field::Rational => {
                type $c = Rational;
                $body
            }
            Field::Prime(_) => {
                type $c = Fp;
                $body
            }
        }
    };
}
use with_field;

pub fn model_ideal<C: Coeff>(name: &str, field: Field) -> Result<Ideal<C>, Failure> {
    let key: String = name.chars().filter(|c| *c != '_' && *c != '-').flat_map(char::to_lowercase).collect();
    Ok(match key.as_str() {
        "x" => models::ideal_x(field),
        "xinv" => models::ideal_x_inv(field),
        "xrot" => models::ideal_x_rot(field),
        "xp" => models::ideal_x_p(field)?,
        "xpinv" => models::ideal_x_pinv(field)?,
        "z" => models::ideal_z(field),
        "zinv" => models::ideal_z_inv(field),
        "y" => models::ideal_y(field),
        "yp" => models::ideal_y_p(field),
        "yinv" => models::ideal_y_inv(field),
        "ypinv" => models::ideal_y_pinv(field),
        _ => return Err(Failure::Usage(format!("unknown model `{name}`"))),
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn construct(c: &Construct) -> Result<(), Failure> {
    match c {
        Construct::Infinity { seed, field, bound, retries, out } => {
            let params = RandomParams { bound: *bound, retries: *retries };
            let text = with_field!(*field, |C| create_infinity_pod_seeded::<C>(*seed, params, *field)?.to_json_string());
            emit(out.as_deref(), &text)
        }
        Construct::Duporcq { legs, out } => {
            let pod: PodJson =
                serde_json::from_str(&read(legs)?).map_err(|e| Failure::Usage(format!("pod JSON: {e}")))?;
            let r = duporcq_sixth_leg(&pod.legs()?)?;
            let mut all = r.legs.clone();
            all.push(r.sixth.clone());
            emit(out.as_deref(), &to_json(&PodJson::from_legs(&all)))?;
            if r.dual_spans_equal {
                Ok(())
            } else {
                Err(Failure::Verification("the sixth leg changes the configuration space".into()))
            }
        }
        Construct::Cubic { seed, field, bound, retries, out } => {
            let params = RandomParams { bound: *bound, retries: *retries };
            let value = with_field!(*field, |C| {
                let pod = cubic_line_symmetric::<C>(*seed, params, *field)?;
                let pencil = symmetroid_pencil(&pod)?;
                json!({
                    "seed": pod.rng_seed,
                    "attempt": pod.attempt,
                    "field": pod.field,
                    "leg_ideal": pod.leg_ideal.to_json(),
                    "config_ideal": pod.config_ideal.to_json(),
                    "leg_hilbert": pod.leg_hilbert,
                    "config_hilbert": pod.config_hilbert,
                    "lifted_hilbert": pod.lifted_hilbert,
                    "base_degree": pod.base_degree,
                    "platform_degree": pod.platform_degree,
                    "bidegree": pod.bidegree,
                    "symmetroid": {
                        "cubic": pencil.h.to_string(),
                        "node_count": pencil.node_count,
                        "nodes_have_rank_two": pencil.nodes_have_rank_two,
                    },
                })
            });
            emit(out.as_deref(), &to_json(&value))
        }
    }
}

fn dual(form: &str, input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let kind = FormKind::parse(form)?;
    let json: SubspaceJson =
        serde_json::from_str(&read(input)?).map_err(|e| Failure::Usage(format!("subspace JSON: {e}")))?;
    let result = with_field!(json.field, |C| {
        let s = LinearSubspace::<C>::from_json(&json)?;
        let form = BilinearForm::<C>::new(kind, json.field);
        let side = if s.ambient == form.left {
            Side::Left
        } else if s.ambient == form.right {
            Side::Right
        } else {
            return Err(Failure::Usage(format!("the subspace's coordinates are not a side of {form:?}", form = kind)));
        };
        dual_space(&s, &form, side)?.to_json()
    });
    emit(out, &to_json(&result))
}

fn bundle_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| "bundle".into(), |s| s.to_string_lossy().into_owned())
}

fn bundle_field(text: &str) -> Result<Field, Failure> {
    #[derive(Deserialize)]
    struct Head {
        field: Field,
    }
    let head: Head = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bundle JSON: {e}")))?;
    Ok(head.field)
}

fn verify(path: &Path, mode: Mode, samples: usize, tol: f64, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let text = read(path)?;
    let field = bundle_field(&text)?;
    let id = bundle_id(path);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report: PodReport = match mode {
        Mode::Exact => {
            let bundle = match field {
                Field::Prime(_) => InfinityPodBundle::<Fp>::from_json_str(&text)?,
                Field::Rational => {
                    let b = InfinityPodBundle::<Rational>::from_json_str(&text)?;
                    eprintln!("note: rebuilding the bundle over fp:{EXACT_PRIME} for the exact check");
                    podforge::constructions::create_infinity_pod::<Fp>(&b.seed, Field::prime(EXACT_PRIME)?)?
                }
            };
            let (report, warnings) = verify_bundle_exact(&id, &bundle, samples, &mut rng)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            report
        }
        Mode::Float => {
            let bundle = match field {
                Field::Rational => InfinityPodBundle::<Rational>::from_json_str(&text)?,
                Field::Prime(_) => {
                    let b = InfinityPodBundle::<Fp>::from_json_str(&text)?;
                    eprintln!("note: rebuilding the bundle over q for the float check");
                    podforge::constructions::create_infinity_pod::<Rational>(&b.seed, Field::Rational)?
                }
            };
            let polys = bundle.seed.polynomials::<Rational>(Field::Rational);
            let configs = real_configurations(&polys, samples);
            let legs = real_legs(&bundle, 5, 12, &mut rng)?;
            check_pod_float(&id, &configs, &legs.legs, tol)
        }
    };
    match out {
        Some(p) => {
            emit(Some(p), &to_json(&report))?;
            print!("{}", report.table());
        }
        None => {
            eprint!("{}", report.table());
            emit(None, &to_json(&report))?;
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("pod {} failed the sphere-condition check", report.id)))
    }
}

/// Thread pool honoring `PODFORGE_THREADS`.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("PODFORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        builder = builder.num_threads(n);
    }
    builder.build().expect("thread pool")
}

pub fn run_criteria(ids: &[usize], opts: &ReproduceOptions) -> Vec<CriterionResult> {
    thread_pool().install(|| ids.par_iter().map(|&id| run_criterion(id, opts)).collect())
}

fn reproduce(only: &[usize], opts: &ReproduceOptions, out: Option<&Path>) -> Result<(), Failure> {
    let ids: Vec<usize> = if only.is_empty() { CRITERIA.iter().map(|(k, _)| *k).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&k| !CRITERIA.iter().any(|(c, _)| *c == k)) {
        return Err(Failure::Usage(format!("no criterion {bad}")));
    }
    let results = run_criteria(&ids, opts);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    if let Some(p) = out {
        emit(Some(p), &to_json(&results))?;
    }
    if passed == results.len() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} criteria failed", results.len() - passed)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_names_are_case_insensitive() {
        let f = Field::prime(101).unwrap();
        assert!(model_ideal::<Fp>("Y_inv", f).is_ok());
        assert!(model_ideal::<Fp>("yinv", f).is_ok());
        assert!(matches!(model_ideal::<Fp>("W", f), Err(Failure::Usage(_))));
    }

    #[test]
    fn pod_json_round_trip() {
        let legs = vec![Leg::from_i64([1, 2, 0], [3, 4, 0], 5), Leg::from_i64([0, 1, 0], [1, 0, 0], 2)];
        let pod = PodJson::from_legs(&legs);
        let text = to_json(&pod);
        let back: PodJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.legs().unwrap(), legs);
        assert!(text.contains("\"lengths_squared\""));
    }

    #[test]
    fn failures_map_to_exit_codes() {
        assert_eq!(Failure::from(PodError::InfinitelyManyLegs).exit_code(), 3);
        assert_eq!(Failure::from(PodError::Invalid("x".into())).exit_code(), 2);
        assert_eq!(Failure::Verification("x".into()).exit_code(), 1);
    }
}
