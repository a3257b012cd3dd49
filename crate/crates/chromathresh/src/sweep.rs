//! Grid sweeps over `(n, k, r)` with one CSV/JSON record per point.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use chromathresh_core::moments::{classify_regime, threshold, Regime, RegimeConstants};
use chromathresh_core::montecarlo::{point_seed, Estimate, TrialPlan};
use chromathresh_core::{Chromatic, Color, PropertyLabel, PropertyQuery};

use crate::error::{Error, Result};
use crate::parallel::{self, Threads};

pub const CSV_HEADER: [&str; 12] = [
    "n", "k", "r", "property", "trials", "successes", "p_hat", "ci_low", "ci_high", "seed", "regime", "elapsed_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub n: usize,
    pub k: usize,
    pub r: u64,
}

impl std::str::FromStr for GridPoint {
    type Err = Error;

    /// `"n,k,r"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Usage(format!("expected a point \"n,k,r\", got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(GridPoint {
            n: parts[0].parse().map_err(|_| bad())?,
            k: parts[1].parse().map_err(|_| bad())?,
            r: parts[2].parse().map_err(|_| bad())?,
        })
    }
}

/// Points at `r = ceil(m * T(n, k))` for each multiplier `m`, where `T` is
/// the threshold of the property's kind. Exact when `T` is an integer.
pub fn threshold_grid(label: PropertyLabel, n: usize, k: usize, multipliers: &[BigRational]) -> Result<Vec<GridPoint>> {
    if label.chromatic != Chromatic::Mono {
        return Err(Error::Usage(format!("{label} has no threshold function to scale")));
    }
    let t = threshold(label.kind, n as u64, k as u64)?;
    multipliers
        .iter()
        .map(|m| {
            let r = match &t.exact {
                Some(t) => (m * t).ceil().to_integer(),
                None => {
                    let v = m.to_f64().unwrap_or(f64::NAN) * t.value();
                    BigInt::from(v.ceil() as u64)
                }
            };
            let r = r
                .to_u64()
                .filter(|&r| r >= 1)
                .ok_or_else(|| Error::Usage(format!("multiplier {m} gives r = {r}, outside 1..2^64")))?;
            Ok(GridPoint { n, k, r })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub k: usize,
    pub r: u64,
    pub property: PropertyLabel,
    pub trials: u64,
    /// Per-point master seed.
    pub seed: u64,
    pub regime: Option<Regime>,
    pub outcome: std::result::Result<Estimate, String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub threads: Threads,
    pub consts: RegimeConstants,
    /// Record wall-clock time; off gives byte-stable output.
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            threads: Threads::Auto,
            consts: RegimeConstants::default(),
            timing: true,
        }
    }
}

/// Runs every point of `grid` with the property, trial count, confidence
/// level and budget of `base`. Point `i` uses seed `point_seed(base.master_seed, i)`.
/// Failures are recorded in the point's `outcome` and do not stop the sweep.
pub fn sweep(base: &TrialPlan, grid: &[GridPoint], opts: &SweepOptions) -> Vec<SweepRecord> {
    let label = base.query.label();
    grid.iter()
        .enumerate()
        .map(|(i, p)| {
            let seed = point_seed(base.master_seed, i as u64);
            let query = label.with_k(p.k);
            let start = Instant::now();
            let regime = classify_regime(&query, p.n as u64, p.r, &opts.consts).ok();
            let outcome = run_point(base, query, p, seed, opts.threads).map_err(|e| e.to_string());
            SweepRecord {
                n: p.n,
                k: p.k,
                r: p.r,
                property: label,
                trials: base.trials,
                seed,
                regime,
                outcome,
                elapsed_ms: if opts.timing { start.elapsed().as_millis() as u64 } else { 0 },
            }
        })
        .collect()
}

fn run_point(base: &TrialPlan, query: PropertyQuery, p: &GridPoint, seed: u64, threads: Threads) -> Result<Estimate> {
    let r = Color::try_from(p.r).map_err(|_| Error::Usage(format!("r = {} exceeds {}", p.r, Color::MAX)))?;
    let plan = TrialPlan::new(p.n, r, query, base.trials, seed)?
        .with_z(base.z)
        .with_budget(base.budget);
    parallel::run_trials(&plan, threads)
}

fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

/// Writes the header and one row per record. Failed points leave the
/// estimate columns empty.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        let (succ, p, lo, hi) = match &rec.outcome {
            Ok(e) => (e.successes.to_string(), fixed6(e.p_hat), fixed6(e.ci_low), fixed6(e.ci_high)),
            Err(_) => Default::default(),
        };
        w.write_record([
            rec.n.to_string(),
            rec.k.to_string(),
            rec.r.to_string(),
            rec.property.to_string(),
            rec.trials.to_string(),
            succ,
            p,
            lo,
            hi,
            rec.seed.to_string(),
            rec.regime.map_or(String::new(), |g| g.to_string()),
            rec.elapsed_ms.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("csv output", e))?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecordJson {
    pub n: usize,
    pub k: usize,
    pub r: u64,
    pub property: String,
    pub trials: u64,
    pub successes: Option<u64>,
    pub p_hat: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub seed: u64,
    pub regime: Option<String>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&SweepRecord> for SweepRecordJson {
    fn from(rec: &SweepRecord) -> Self {
        let est = rec.outcome.as_ref().ok();
        SweepRecordJson {
            n: rec.n,
            k: rec.k,
            r: rec.r,
            property: rec.property.to_string(),
            trials: rec.trials,
            successes: est.map(|e| e.successes),
            p_hat: est.map(|e| e.p_hat),
            ci_low: est.map(|e| e.ci_low),
            ci_high: est.map(|e| e.ci_high),
            seed: rec.seed,
            regime: rec.regime.map(|g| g.to_string()),
            elapsed_ms: rec.elapsed_ms,
            error: rec.outcome.as_ref().err().cloned(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chromathresh_core::montecarlo::run_trials;
    use chromathresh_core::SubgraphKind;

    fn base(label: &str, trials: u64) -> TrialPlan {
        let label: PropertyLabel = label.parse().unwrap();
        TrialPlan::new(40, 2, label.with_k(1), trials, 99).unwrap()
    }

    fn no_timing() -> SweepOptions {
        SweepOptions {
            timing: false,
            ..Default::default()
        }
    }

    #[test]
    fn single_point_equals_run_trials() {
        let b = base("mono-clique", 200);
        let p = GridPoint { n: 8, k: 3, r: 3 };
        let recs = sweep(&b, &[p], &no_timing());
        let plan = TrialPlan::new(8, 3, b.query.label().with_k(3), 200, point_seed(99, 0)).unwrap();
        assert_eq!(recs[0].outcome, Ok(run_trials(&plan).unwrap()));
        assert_eq!(recs[0].seed, plan.master_seed);
    }

    #[test]
    fn errors_are_recorded_per_point() {
        let b = base("mono-matching", 10);
        let grid = [GridPoint { n: 4, k: 3, r: 2 }, GridPoint { n: 4, k: 2, r: 2 }];
        let recs = sweep(&b, &grid, &no_timing());
        assert!(recs[0].outcome.is_err());
        assert!(recs[0].regime.is_none());
        assert!(recs[1].outcome.is_ok());
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("4,3,2,mono-matching,10,,,,,"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn threshold_grid_is_exact_for_integer_thresholds() {
        let label: PropertyLabel = "mono-matching".parse().unwrap();
        let ms = [crate::format::parse_decimal("0.1").unwrap(), crate::format::parse_decimal("20").unwrap()];
        let g = threshold_grid(label, 40, 2, &ms).unwrap();
        assert_eq!(g.iter().map(|p| p.r).collect::<Vec<_>>(), vec![27_417, 5_483_400]);
        let label = PropertyLabel { kind: SubgraphKind::Clique, ..label };
        let g = threshold_grid(label, 10, 3, &ms[..1]).unwrap();
        assert_eq!(g[0].r, 4); // ceil(0.1 * 10^1.5)
        let hetero = PropertyLabel { chromatic: Chromatic::Hetero, ..label };
        assert!(threshold_grid(hetero, 10, 3, &ms).is_err());
    }

    #[test]
    fn point_parsing() {
        assert_eq!("40, 2,27417".parse::<GridPoint>().unwrap(), GridPoint { n: 40, k: 2, r: 27_417 });
        assert!("40,2".parse::<GridPoint>().is_err());
        assert!("a,b,c".parse::<GridPoint>().is_err());
    }
}
