//! The ten acceptance criteria, one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::process::ExitCode;

use podforge::reproduce::{self, run_criterion, ReproduceOptions, CRITERIA};

/// Relative sphere residual allowed on the real demonstration pod.
const RESIDUAL_TOL: f64 = 1e-9;
/// Allowed `|M M^t - I|`, `|tr M + 1|` and `|det M - 1|` of real half-turns.
const ORTHOGONALITY_TOL: f64 = 1e-12;
/// Field, seed and number of random pods of the exact criteria.
const PRIME: u32 = 101;
const SEED: u64 = 0;
const RUNS: usize = 20;

fn main() -> ExitCode {
    // the library must check against the same tolerances
    assert_eq!(reproduce::RESIDUAL_TOL, RESIDUAL_TOL);
    assert_eq!(reproduce::ORTHOGONALITY_TOL, ORTHOGONALITY_TOL);
    let opts = ReproduceOptions { prime: PRIME, seed: SEED, runs: RUNS, tol: RESIDUAL_TOL };

    let results: Vec<_> = std::thread::scope(|s| {
        let opts = &opts;
        let handles: Vec<_> = CRITERIA.iter().map(|&(id, _)| s.spawn(move || run_criterion(id, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
