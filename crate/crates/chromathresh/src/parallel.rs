//! Multi-threaded trial and enumeration drivers. Results are identical to
//! the sequential ones in the core crate: work is split into fixed index
//! blocks and only integer tallies are combined.

use rayon::prelude::*;

use chromathresh_core::montecarlo::{count_successes, Estimate, TrialPlan};
use chromathresh_core::oracle::{ColoringSpace, ExactStats, Tally};
use chromathresh_core::PropertyQuery;

use crate::error::{Error, Result};

const TRIAL_BLOCK: u64 = 64;
const COLORING_BLOCK: u64 = 1 << 14;

/// How many worker threads to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Threads {
    /// Run on the calling thread.
    Serial,
    /// Rayon's global pool.
    #[default]
    Auto,
    Fixed(usize),
}

impl Threads {
    pub fn from_count(n: Option<usize>) -> Self {
        match n {
            None | Some(0) => Threads::Auto,
            Some(1) => Threads::Serial,
            Some(n) => Threads::Fixed(n),
        }
    }

    /// Run `f` under this setting. `parallel` tells `f` whether to fan out.
    pub fn install<T: Send>(self, f: impl FnOnce(bool) -> T + Send) -> Result<T> {
        match self {
            Threads::Serial => Ok(f(false)),
            Threads::Auto => Ok(f(true)),
            Threads::Fixed(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Usage(format!("cannot start {n} threads: {e}")))?;
                Ok(pool.install(|| f(true)))
            }
        }
    }
}

fn blocks(total: u64, size: u64) -> Vec<std::ops::Range<u64>> {
    (0..total.div_ceil(size))
        .map(|b| b * size..((b + 1) * size).min(total))
        .collect()
}

/// Same result as `montecarlo::run_trials`, including which trial an error
/// is reported for (the lowest failing block wins).
pub fn run_trials(plan: &TrialPlan, threads: Threads) -> Result<Estimate> {
    plan.validate()?;
    let hits = threads.install(|parallel| -> chromathresh_core::Result<u64> {
        let ranges = blocks(plan.trials, TRIAL_BLOCK);
        let parts: Vec<_> = if parallel {
            ranges.into_par_iter().map(|r| count_successes(plan, r)).collect()
        } else {
            ranges.into_iter().map(|r| count_successes(plan, r)).collect()
        };
        parts.into_iter().sum()
    })??;
    Ok(Estimate::from_counts(hits, plan.trials, plan.z)?)
}

/// Same result as `oracle::exact_stats`, tallied in parallel blocks.
pub fn exact_stats(n: usize, r: u64, q: &PropertyQuery, cap: u64, threads: Threads) -> Result<ExactStats> {
    let space = ColoringSpace::new(n, r, *q, cap)?;
    let tally = threads.install(|parallel| {
        let ranges = blocks(space.total(), COLORING_BLOCK);
        if parallel {
            ranges
                .into_par_iter()
                .map(|r| space.tally(r))
                .reduce(Tally::default, |a, b| a + b)
        } else {
            ranges.into_iter().map(|r| space.tally(r)).fold(Tally::default(), |a, b| a + b)
        }
    })?;
    Ok(space.finish(tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chromathresh_core::{montecarlo, oracle, Chromatic, SubgraphKind};

    #[test]
    fn matches_sequential_trials() {
        let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Hetero, 5);
        let plan = TrialPlan::new(9, 4, q, 500, 31).unwrap();
        let seq = montecarlo::run_trials(&plan).unwrap();
        for t in [Threads::Serial, Threads::Auto, Threads::Fixed(3)] {
            assert_eq!(run_trials(&plan, t).unwrap(), seq);
        }
    }

    #[test]
    fn matches_sequential_enumeration() {
        let q = PropertyQuery::hetero_matching(2);
        let seq = oracle::exact_stats(6, 2, &q, 1 << 25).unwrap();
        assert_eq!(exact_stats(6, 2, &q, 1 << 25, Threads::Fixed(4)).unwrap(), seq);
    }

    #[test]
    fn reports_the_same_failing_trial() {
        let plan = TrialPlan::new(12, 4, PropertyQuery::hetero_matching(3), 300, 5)
            .unwrap()
            .with_budget(1);
        let seq = montecarlo::run_trials(&plan).unwrap_err();
        match run_trials(&plan, Threads::Fixed(4)).unwrap_err() {
            Error::Core(e) => assert_eq!(e, seq),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn block_split() {
        assert_eq!(blocks(130, 64), vec![0..64, 64..128, 128..130]);
        assert!(blocks(0, 64).is_empty());
    }
}
