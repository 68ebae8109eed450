//! Counting points of bounded height whose fibre has a rational point,
//! the sums-of-two-squares sieve and log-power fitting.

mod fit;
mod landau;

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heights::{enumerate_range, HeightSpec};
use crate::model::{build_model, Family, FamilySpec, FiberOutcome, ModelError};

pub use fit::{fit_log_power, FitError, FitResult};
pub use landau::{landau_count, landau_counts, LANDAU_MAX};

/// Largest admissible `(2T + 1)^{n+1}`, the size of the box scanned for
/// naive bound `T` on `P^n`; equals the `T = 10^5` box on `P^1`.
pub const MAX_BOX: f64 = 4.0e10;

/// Number of outer-loop slices; fixed so that the work split does not
/// depend on the worker count.
const SLICES: u64 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error("no checkpoints")]
    NoCheckpoints,
    #[error("checkpoints must be positive and strictly increasing")]
    CheckpointOrder,
    #[error("need at least one worker")]
    NoWorkers,
    #[error("height is for P^{expected}, family base is P^{got}")]
    HeightDimension { expected: usize, got: usize },
    #[error("naive bound {bound} on P^{dim} is beyond the enumeration limit")]
    Infeasible { bound: u64, dim: usize },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountJob {
    pub family: FamilySpec,
    pub height: HeightSpec,
    pub checkpoints: Vec<u128>,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub b: u128,
    pub n: u64,
    pub baseline: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountSeries {
    pub rows: Vec<CountRow>,
    pub height: HeightSpec,
    /// Exponent `theta` of the predicted `B (log B)^theta`.
    pub predicted_exponent: f64,
}

/// `floor(b^{1/k})`.
pub fn integer_root(b: u128, k: u32) -> u64 {
    if k == 1 {
        return b.min(u64::MAX as u128) as u64;
    }
    let mut r = (b as f64).powf(1.0 / k as f64) as u128;
    while r > 0 && r.checked_pow(k).map_or(true, |v| v > b) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= b) {
        r += 1;
    }
    r as u64
}

impl CountJob {
    /// Naive bounds for the checkpoints after validation.
    pub fn naive_bounds(&self) -> Result<Vec<u64>, CountError> {
        if self.checkpoints.is_empty() {
            return Err(CountError::NoCheckpoints);
        }
        if self.checkpoints[0] == 0 || self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CountError::CheckpointOrder);
        }
        if self.workers == 0 {
            return Err(CountError::NoWorkers);
        }
        let fam = Family::new(&self.family)?;
        let dim = fam.base_dim();
        if let HeightSpec::Anticanonical { ambient_dim } = self.height {
            if ambient_dim != dim {
                return Err(CountError::HeightDimension {
                    expected: ambient_dim,
                    got: dim,
                });
            }
        }
        let k = self.height.exponent();
        let bounds: Vec<u64> = self.checkpoints.iter().map(|&b| integer_root(b, k)).collect();
        let top = *bounds.last().unwrap();
        if (2.0 * top as f64 + 1.0).powi(dim as i32 + 1) > MAX_BOX {
            return Err(CountError::Infeasible { bound: top, dim });
        }
        Ok(bounds)
    }
}

/// Per-height tallies for one slice of the enumeration.
struct Tally {
    good: Vec<u64>,
    base: Vec<u64>,
}

fn scan(
    fam: &Family,
    top: u64,
    outer: std::ops::RangeInclusive<u64>,
) -> Result<Tally, ModelError> {
    let mut t = Tally {
        good: vec![0; top as usize + 1],
        base: vec![0; top as usize + 1],
    };
    let mut err = None;
    enumerate_range(fam.base_dim(), top, outer, |x| {
        if err.is_some() {
            return;
        }
        let h = x.iter().map(|c| c.unsigned_abs()).max().unwrap() as usize;
        match fam.evaluate(x) {
            Ok(FiberOutcome::Boundary) => {}
            Ok(FiberOutcome::Soluble) => {
                t.base[h] += 1;
                t.good[h] += 1;
            }
            Ok(FiberOutcome::Insoluble) => t.base[h] += 1,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// Counts, at every checkpoint `B`, the open-locus base points of height
/// `<= B` and those whose fibre has a rational point. The result does not
/// depend on `workers`.
pub fn run_count(job: &CountJob) -> Result<CountSeries, CountError> {
    let bounds = job.naive_bounds()?;
    let fam = Family::new(&job.family)?;
    let model = build_model(&job.family)?;
    if !fam.evaluable() {
        return Err(ModelError::EvaluationUnavailable(
            "twists of degree > 2 cannot be counted".to_string(),
        )
        .into());
    }
    let top = *bounds.last().unwrap();
    let step = (top + 1).div_ceil(SLICES).max(1);
    let slices: Vec<_> = (0..=top)
        .step_by(step as usize)
        .map(|lo| lo..=(lo + step - 1).min(top))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()
        .map_err(|e| CountError::Pool(e.to_string()))?;
    let tallies: Vec<Result<Tally, ModelError>> =
        pool.install(|| slices.into_par_iter().map(|r| scan(&fam, top, r)).collect());
    let mut good = vec![0u64; top as usize + 1];
    let mut base = vec![0u64; top as usize + 1];
    for t in tallies {
        let t = t?;
        for h in 0..=top as usize {
            good[h] += t.good[h];
            base[h] += t.base[h];
        }
    }
    let mut rows = Vec::with_capacity(bounds.len());
    let (mut n, mut b, mut h) = (0u64, 0u64, 0usize);
    for (&cp, &tb) in job.checkpoints.iter().zip(&bounds) {
        while h <= tb as usize {
            n += good[h];
            b += base[h];
            h += 1;
        }
        rows.push(CountRow {
            b: cp,
            n,
            baseline: b,
        });
    }
    Ok(CountSeries {
        rows,
        height: job.height,
        predicted_exponent: model.predicted_exponent_f64(),
    })
}

/// `N / (B (log B)^theta)`.
pub fn ratio_to_prediction(row: &CountRow, theta: f64) -> f64 {
    let b = row.b as f64;
    row.n as f64 / (b * b.ln().powf(theta))
}

fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".to_string()
    }
}

/// CSV with header `B,N,baseline,N_over_pred` and LF line endings.
pub fn series_to_csv(series: &CountSeries) -> String {
    let mut out = String::from("B,N,baseline,N_over_pred\n");
    for row in &series.rows {
        let r = ratio_to_prediction(row, series.predicted_exponent);
        writeln!(out, "{},{},{},{}", row.b, row.n, row.baseline, format_float(r)).unwrap();
    }
    out
}

pub fn write_csv(series: &CountSeries, mut w: impl io::Write) -> io::Result<()> {
    w.write_all(series_to_csv(series).as_bytes())
}
