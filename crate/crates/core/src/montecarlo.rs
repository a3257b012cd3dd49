//! Seeded trial kernel: sample a coloring, run the exact detector, count
//! successes, and attach a Wilson score interval.
//!
//! Trial `i` always uses the seed derived from `(master_seed, i)`, so any
//! subset of trials can run in any order and the tallies still agree.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use crate::detect::{detect_with_budget, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::query::PropertyQuery;
use crate::rng::SeedSpec;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959964;
/// Two-sided 99.9% normal quantile.
pub const Z_999: f64 = 3.290527;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialPlan {
    pub n: usize,
    pub r: Color,
    pub query: PropertyQuery,
    pub trials: u64,
    pub master_seed: u64,
    pub z: f64,
    /// Node budget per detector call.
    pub budget: u64,
}

impl TrialPlan {
    pub fn new(n: usize, r: Color, query: PropertyQuery, trials: u64, master_seed: u64) -> Result<Self> {
        let plan = TrialPlan {
            n,
            r,
            query,
            trials,
            master_seed,
            z: Z_95,
            budget: DEFAULT_BUDGET,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn with_z(mut self, z: f64) -> Self {
        self.z = z;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if self.r == 0 {
            return Err(Error::invalid("r must be at least 1"));
        }
        if !(self.z.is_finite() && self.z >= 0.0) {
            return Err(Error::invalid(format!("z must be finite and >= 0, got {}", self.z)));
        }
        self.query.validate(self.n)
    }
}

/// Outcome of trial `index`. Budget exhaustion surfaces as [`Error::Trial`].
pub fn run_trial(plan: &TrialPlan, index: u64) -> Result<bool> {
    let wrap = |e: Error| Error::Trial {
        trial_index: index,
        source: e.into(),
    };
    let g = ColoredGraph::sample(plan.n, plan.r, SeedSpec::new(plan.master_seed, index)).map_err(wrap)?;
    detect_with_budget(&g, &plan.query, plan.budget)
        .map(|d| d.exists)
        .map_err(wrap)
}

/// Success count over a contiguous block of trial indices.
pub fn count_successes(plan: &TrialPlan, range: Range<u64>) -> Result<u64> {
    let mut hits = 0;
    for i in range {
        hits += u64::from(run_trial(plan, i)?);
    }
    Ok(hits)
}

/// Per-trial outcomes in index order.
pub fn trial_outcomes(plan: &TrialPlan) -> Result<Vec<bool>> {
    plan.validate()?;
    (0..plan.trials).map(|i| run_trial(plan, i)).collect()
}

pub fn run_trials(plan: &TrialPlan) -> Result<Estimate> {
    plan.validate()?;
    let hits = count_successes(plan, 0..plan.trials)?;
    Estimate::from_counts(hits, plan.trials, plan.z)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64, z: f64) -> Result<Self> {
        let (ci_low, ci_high) = wilson_interval(successes, trials, z)?;
        Ok(Estimate {
            successes,
            trials,
            p_hat: successes as f64 / trials as f64,
            ci_low,
            ci_high,
        })
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Wilson score interval, clamped so that `low <= p_hat <= high` within `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if successes > trials {
        return Err(Error::invalid(format!("successes {successes} exceed trials {trials}")));
    }
    if !(z.is_finite() && z >= 0.0) {
        return Err(Error::invalid(format!("z must be finite and >= 0, got {z}")));
    }
    let t = trials as f64;
    let p = successes as f64 / t;
    let z2 = z * z;
    let denom = 1.0 + z2 / t;
    let center = (p + z2 / (2.0 * t)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    let low = (center - half).clamp(0.0, p);
    let high = (center + half).clamp(p, 1.0);
    Ok((low, high))
}

/// Master seed for point `index` of a sweep.
pub fn point_seed(master_seed: u64, index: u64) -> u64 {
    SeedSpec::new(master_seed, index).derive()
}
