//! Scaling measurements for the subset solver.
//!
//! One seeded instance per `n`, solved `reps` times on the calling thread;
//! the median wall-clock time is kept alongside the (distance-independent)
//! state count.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result, Solver};
use crate::heldkarp::{self, DEFAULT_MAX_N};
use crate::instance::generate_random;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingRecord {
    pub n: usize,
    pub states: u64,
    /// Median over the repetitions, at least 1.
    pub time_ns: u64,
    pub optimum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingReport {
    pub records: Vec<ScalingRecord>,
    pub seed: u64,
    pub max_dist: u64,
    pub reps: usize,
}

/// Times the solver for every `n` in `n_min..=n_max`. The instance for `n`
/// is `generate_random(n, max_dist, seed + n)`.
pub fn run_scaling(
    n_min: usize,
    n_max: usize,
    seed: u64,
    max_dist: u64,
    reps: usize,
) -> Result<ScalingReport> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::Domain(format!(
            "need 2 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    if n_max > DEFAULT_MAX_N {
        return Err(Error::Size {
            solver: Solver::HeldKarp,
            n: n_max,
            cap: DEFAULT_MAX_N,
        });
    }
    if reps == 0 {
        return Err(Error::Domain("reps must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        let inst = generate_random(n, max_dist, seed.wrapping_add(n as u64))?;
        let mut times = Vec::with_capacity(reps);
        let mut last = None;
        for _ in 0..reps {
            let start = Instant::now();
            let sol = heldkarp::solve_capped(&inst, Some(DEFAULT_MAX_N))?;
            let elapsed = start.elapsed().as_nanos();
            times.push(u64::try_from(elapsed).unwrap_or(u64::MAX).max(1));
            last = Some(sol);
        }
        times.sort_unstable();
        let sol = last.expect("reps >= 1");
        records.push(ScalingRecord {
            n,
            states: sol.states_computed,
            time_ns: times[times.len() / 2],
            optimum: sol.length,
        });
    }
    Ok(ScalingReport {
        records,
        seed,
        max_dist,
        reps,
    })
}

/// `time_ns(n + 1) / time_ns(n)` for each pair of records with adjacent `n`.
pub fn doubling_ratios(report: &ScalingReport) -> Result<Vec<(usize, f64)>> {
    ratios_by(report, |r| r.time_ns)
}

/// Same as [`doubling_ratios`] on the state-count column.
pub fn state_ratios(report: &ScalingReport) -> Result<Vec<(usize, f64)>> {
    ratios_by(report, |r| r.states)
}

fn ratios_by(
    report: &ScalingReport,
    column: impl Fn(&ScalingRecord) -> u64,
) -> Result<Vec<(usize, f64)>> {
    let ratios: Vec<_> = report
        .records
        .windows(2)
        .filter(|w| w[1].n == w[0].n + 1)
        .map(|w| (w[1].n, column(&w[1]) as f64 / column(&w[0]) as f64))
        .collect();
    if ratios.is_empty() {
        return Err(Error::InsufficientData(
            "need at least two records with consecutive n".into(),
        ));
    }
    Ok(ratios)
}

/// Median of the ratio values; the mean of the middle two for even counts.
pub fn median_ratio(ratios: &[(usize, f64)]) -> Option<f64> {
    let mut v: Vec<f64> = ratios.iter().map(|&(_, r)| r).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    })
}

pub const CSV_HEADER: &str = "n,states,time_ns,optimum";

pub fn emit_csv(report: &ScalingReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        writeln!(out, "{},{},{},{}", r.n, r.states, r.time_ns, r.optimum).unwrap();
    }
    out
}
