//! Per-coordinate least-squares solver for the filter constraint system.
//!
//! Each sweep visits taps `1..=2n` in ascending order and replaces a tap with
//! the exact minimizer of the Lyapunov functional along that coordinate. Every
//! orthogonality equation is linear in any single tap (shifts are at least 2,
//! so no tap multiplies itself) and so is the parity equation, which makes the
//! one-dimensional problem an ordinary least-squares fit. After the sweep the
//! filter is rescaled to unit norm unless some taps are pinned.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filterbank::{
    constraint_residuals, lyapunov_taps, normalize_in_place, shift_product, Filter, ResidualReport,
};

pub const DEFAULT_EPSILON: f64 = 1e-13;
pub const DEFAULT_MAX_SWEEPS: usize = 20_000;

/// Column norms below this leave the tap unchanged.
const DEGENERATE_COLUMN: f64 = 1e-30;
const MAX_RESEEDS: usize = 8;
const CLOSED_FORM_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub n: usize,
    /// Stop once the summed absolute residual drops below this.
    pub epsilon: f64,
    pub max_sweeps: usize,
    pub seed: u64,
    /// 1-based tap position to fixed value.
    pub pinned: BTreeMap<usize, f64>,
    /// Explicit starting point; replaces the random draw.
    pub init: Option<Filter>,
}

impl SolverConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            epsilon: DEFAULT_EPSILON,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            seed: 0,
            pinned: BTreeMap::new(),
            init: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.max_sweeps = max_sweeps;
        self
    }

    pub fn with_pin(mut self, position: usize, value: f64) -> Self {
        self.pinned.insert(position, value);
        self
    }

    pub fn with_init(mut self, init: Filter) -> Self {
        self.init = Some(init);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be finite and positive, got {}",
                self.epsilon
            )));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidConfig("max_sweeps must be at least 1".into()));
        }
        let len = 2 * self.n;
        for (&position, &value) in &self.pinned {
            if position == 0 || position > len {
                return Err(Error::PinOutOfRange { position, len });
            }
            if !value.is_finite() {
                return Err(Error::NonFinite { position });
            }
        }
        if let Some(init) = &self.init {
            if init.len() != len {
                return Err(Error::InvalidConfig(format!(
                    "initial filter has {} taps, expected {len}",
                    init.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Converged,
    MaxSweeps,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub sweep: usize,
    pub lyapunov: f64,
    pub total_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub records: Vec<SweepRecord>,
    pub status: Status,
    pub sweeps_used: usize,
    /// Coordinate updates skipped because the tap did not influence any
    /// equation.
    pub degenerate_updates: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub filter: Filter,
    pub report: ResidualReport,
    pub trace: ConvergenceTrace,
    pub config: SolverConfig,
}

impl SolveResult {
    pub fn converged(&self) -> bool {
        self.trace.status == Status::Converged
    }
}

/// Replace tap `position` (1-based) with the least-squares minimizer of the
/// Lyapunov functional along that coordinate.
pub fn coordinate_update(l: &Filter, position: usize) -> Filter {
    assert!(
        (1..=l.len()).contains(&position),
        "tap position {position} outside 1..={}",
        l.len()
    );
    let mut taps = l.taps().to_vec();
    update_tap(&mut taps, position - 1);
    Filter::new(taps).expect("coordinate update keeps taps finite")
}

/// In-place update of 0-based tap `i`. Returns `false` for a degenerate column.
fn update_tap(taps: &mut [f64], i: usize) -> bool {
    let len = taps.len();
    let n = len / 2;
    let current = taps[i];
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 1..n {
        let s = 2 * k;
        let beta = taps.get(i + s).copied().unwrap_or(0.0)
            + if i >= s { taps[i - s] } else { 0.0 };
        if beta == 0.0 {
            continue;
        }
        let alpha = beta * current - shift_product(taps, k);
        num += alpha * beta;
        den += beta * beta;
    }
    // Parity is linear with coefficient +1 on odd positions, -1 on even ones.
    let beta = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    let alpha = beta * current - crate::filterbank::parity(taps);
    num += alpha * beta;
    den += beta * beta;

    if den < DEGENERATE_COLUMN {
        return false;
    }
    taps[i] = num / den;
    true
}

/// One ascending Gauss-Seidel pass over the unpinned taps, followed by a unit
/// rescale when nothing is pinned.
pub fn sweep(l: &Filter, pinned: &BTreeMap<usize, f64>) -> Result<Filter> {
    let mut taps = l.taps().to_vec();
    sweep_in_place(&mut taps, pinned)?;
    Filter::new(taps)
}

fn sweep_in_place(taps: &mut [f64], pinned: &BTreeMap<usize, f64>) -> Result<usize> {
    let mut skipped = 0;
    for i in 0..taps.len() {
        if pinned.contains_key(&(i + 1)) {
            continue;
        }
        if !update_tap(taps, i) {
            skipped += 1;
        }
    }
    if pinned.is_empty() {
        normalize_in_place(taps)?;
    }
    Ok(skipped)
}

fn initial_taps(config: &SolverConfig) -> Result<Vec<f64>> {
    let len = 2 * config.n;
    let mut taps = match &config.init {
        Some(init) => init.taps().to_vec(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut attempt = 0;
            loop {
                let mut draw: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect();
                if normalize_in_place(&mut draw).is_ok() {
                    break draw;
                }
                attempt += 1;
                if attempt > MAX_RESEEDS {
                    return Err(Error::ZeroVector);
                }
            }
        }
    };
    for (&position, &value) in &config.pinned {
        taps[position - 1] = value;
    }
    if taps.iter().all(|&t| t == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(taps)
}

pub fn solve(config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    let mut taps = initial_taps(config)?;
    let mut records = Vec::new();
    let mut degenerate_updates = 0;
    let mut status = Status::MaxSweeps;

    for sweep_index in 1..=config.max_sweeps {
        degenerate_updates += sweep_in_place(&mut taps, &config.pinned)?;
        let filter = Filter::new(taps.clone())?;
        let report = constraint_residuals(&filter);
        records.push(SweepRecord {
            sweep: sweep_index,
            lyapunov: lyapunov_taps(&taps),
            total_abs: report.total_abs,
        });
        if report.total_abs < config.epsilon {
            status = Status::Converged;
            break;
        }
    }

    let filter = Filter::new(taps)?;
    let report = constraint_residuals(&filter);
    Ok(SolveResult {
        filter,
        report,
        trace: ConvergenceTrace {
            sweeps_used: records.len(),
            records,
            status,
            degenerate_updates,
        },
        config: config.clone(),
    })
}

/// Independent solves over `seeds`, run in parallel; results keep seed order.
pub fn solve_seeds(base: &SolverConfig, seeds: &[u64]) -> Vec<Result<SolveResult>> {
    seeds
        .par_iter()
        .map(|&seed| solve(&base.clone().with_seed(seed)))
        .collect()
}

/// Lowest final residual among successful results.
pub fn best_of(results: Vec<Result<SolveResult>>) -> Option<SolveResult> {
    results
        .into_iter()
        .filter_map(Result::ok)
        .min_by(|a, b| a.report.total_abs.total_cmp(&b.report.total_abs))
}

/// Complete a 6-tap filter from `l1`, `l5`, `l6` so that both orthogonality
/// equations and the parity equation hold. The result is not normalized;
/// rescaling it preserves those three homogeneous equations.
pub fn closed_form_n3(l1: f64, l5: f64, l6: f64) -> Result<Filter> {
    if l6.abs() < CLOSED_FORM_GUARD {
        return Err(Error::ZeroDivisor("l6 is zero"));
    }
    let l2 = -l1 * l5 / l6;
    let a = l2 + l6;
    let b = l1 + l5;
    let denom = a + b;
    if denom.abs() < CLOSED_FORM_GUARD {
        return Err(Error::ZeroDivisor("l1 + l2 + l5 + l6 is zero"));
    }
    let l3 = (a - b) * a / denom;
    let l4 = -(a - b) * b / denom;
    Filter::new(vec![l1, l2, l3, l4, l5, l6])
}
