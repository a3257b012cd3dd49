//! Self-check suite: detectors against brute force, closed forms against
//! full enumeration, and second-moment bounds against exact Δ.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use chromathresh_core::detect::{detect, max_color_component, Witness};
use chromathresh_core::graph::edge_endpoints;
use chromathresh_core::moments::{delta_ratio_bound_hetero, delta_ratio_bound_mono, expected_hetero, expected_mono};
use chromathresh_core::oracle::{count_occurrences_capped, exact_delta, occurs, DEFAULT_COLORING_CAP};
use chromathresh_core::rng::SplitMix64;
use chromathresh_core::{Chromatic, ColoredGraph, PropertyQuery, SeedSpec, SubgraphKind};

use crate::error::Result;
use crate::parallel::{self, Threads};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest `n` for the exhaustive formula checks.
    pub max_exact_n: usize,
    /// Largest color count for the exhaustive formula checks.
    pub max_exact_r: u64,
    pub coloring_cap: u64,
    /// Random graphs for the detector check.
    pub graphs: u64,
    pub max_graph_n: usize,
    pub seed: u64,
    pub threads: Threads,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_exact_n: 6,
            max_exact_r: 3,
            coloring_cap: DEFAULT_COLORING_CAP,
            graphs: 1000,
            max_graph_n: 10,
            seed: 0,
            threads: Threads::Auto,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub skipped: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first_mismatch.is_none() {
                self.first_mismatch = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    let checks = vec![
        expectations_and_bounds(opts)?,
        detectors(opts)?,
        tree_reduction(opts),
    ];
    let passed = checks.iter().all(CheckResult::passed);
    Ok(VerifyReport { checks, passed })
}

/// `(n, r, k)` with `n <= max_n`, `r <= max_r`, `1 <= k <= n/2`, and `r^C(n,2)` under the cap.
pub fn exact_instances(max_n: usize, max_r: u64, cap: u64) -> Vec<(usize, u64, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let m = (n * (n - 1) / 2) as u32;
        for r in 1..=max_r {
            if r.checked_pow(m).is_none_or(|t| t > cap) {
                continue;
            }
            for k in 1..=n / 2 {
                out.push((n, r, k));
            }
        }
    }
    out
}

fn expectations_and_bounds(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut c = CheckResult::new("matching-moments-vs-enumeration");
    for (n, r, k) in exact_instances(opts.max_exact_n, opts.max_exact_r, opts.coloring_cap) {
        for chromatic in [Chromatic::Mono, Chromatic::Hetero] {
            let q = PropertyQuery::new(SubgraphKind::Matching, chromatic, k);
            let stats = parallel::exact_stats(n, r, &q, opts.coloring_cap, opts.threads)?;
            let (n64, k64) = (n as u64, k as u64);
            let formula = match chromatic {
                Chromatic::Mono => expected_mono(n64, k64, r)?,
                Chromatic::Hetero => expected_hetero(n64, k64, r)?,
            };
            let tag = || format!("{} n={n} r={r} k={k}", q.label());
            c.record(formula.exact.as_ref() == Some(&stats.expected_count), || format!("expectation {}", tag()));
            let closed = exact_delta(n, k, r, chromatic)?;
            c.record(closed == stats.delta, || format!("delta routes differ, {}", tag()));
            if k < 2 || (chromatic == Chromatic::Hetero && r < k64) {
                continue;
            }
            let bound = match chromatic {
                Chromatic::Mono => delta_ratio_bound_mono(n64, k64, r)?,
                Chromatic::Hetero => delta_ratio_bound_hetero(n64, k64, r)?,
            };
            let e = &stats.expected_count;
            let ok = !e.is_zero() && bound.exact.as_ref().is_some_and(|b| &(closed / (e * e)) <= b);
            c.record(ok, || format!("delta ratio above bound, {}", tag()));
        }
    }
    Ok(c)
}

/// A random graph and a random feasible query, from one seed.
pub fn random_case(seed: u64, max_n: usize) -> (ColoredGraph, PropertyQuery) {
    let mut rng = SplitMix64::new(seed);
    let n = 2 + rng.below(max_n as u64 - 1) as usize;
    let r = 1 + rng.below(5) as u32;
    let kind = SubgraphKind::ALL[rng.below(3) as usize];
    let chromatic = Chromatic::ALL[rng.below(2) as usize];
    let max_k = PropertyQuery::max_k(kind, n);
    let k = 1 + rng.below(max_k as u64) as usize;
    let g = ColoredGraph::sample(n, r, SeedSpec::new(seed, 0)).expect("valid parameters");
    (g, PropertyQuery::new(kind, chromatic, k))
}

fn detectors(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut c = CheckResult::new("detect-vs-enumeration");
    for i in 0..opts.graphs {
        let (g, q) = random_case(SeedSpec::new(opts.seed, i).derive(), opts.max_graph_n);
        let count = match count_occurrences_capped(&g, &q, 2_000_000) {
            Ok(n) => n,
            Err(e) if e.is_resource() => {
                c.skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let d = detect(&g, &q)?;
        let tag = || format!("{} k={} n={} r={} graph {i}", q.label(), q.k, g.n(), g.r());
        c.record(d.exists == (count > 0), || format!("existence, {}", tag()));
        if let Some(w) = &d.witness {
            c.record(witness_ok(&g, &q, w), || format!("bad witness, {}", tag()));
        }
    }
    Ok(c)
}

fn tree_reduction(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("mono-tree-component-criterion");
    for i in 0..opts.graphs {
        let mut rng = SplitMix64::new(SeedSpec::new(opts.seed ^ 0x7EE5, i).derive());
        let n = 2 + rng.below(8) as usize;
        let r = 1 + rng.below(4) as u32;
        let g = ColoredGraph::sample(n, r, SeedSpec::new(opts.seed, i)).expect("valid parameters");
        let (_, largest) = max_color_component(&g);
        for k in 1..=n {
            let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Mono, k);
            let found = occurs(&g, &q, 10_000_000).expect("n <= 9 is in cap");
            c.record((largest >= k) == found, || format!("n={n} r={r} k={k} graph {i}"));
        }
    }
    c
}

/// Structural and color check of a witness, independent of the detectors.
pub fn witness_ok(g: &ColoredGraph, q: &PropertyQuery, w: &Witness) -> bool {
    let n = g.n();
    let Ok(ends) = w.edges.iter().map(|&e| edge_endpoints(e, n)).collect::<std::result::Result<Vec<_>, _>>() else {
        return false;
    };
    let colors: Vec<u32> = w.edges.iter().map(|&e| g.edge_color(e)).collect();
    let color_ok = match q.chromatic {
        Chromatic::Mono => colors.windows(2).all(|p| p[0] == p[1]),
        Chromatic::Hetero => colors.iter().collect::<BTreeSet<_>>().len() == colors.len(),
    };
    let touched: BTreeSet<usize> = ends.iter().flat_map(|&(u, v)| [u, v]).collect();
    let shape_ok = match q.kind {
        SubgraphKind::Matching => ends.len() == q.k && touched.len() == 2 * q.k,
        SubgraphKind::Clique => {
            let vs: BTreeSet<usize> = w.vertices.iter().copied().collect();
            let pairs: BTreeSet<(usize, usize)> = ends.iter().copied().collect();
            vs.len() == q.k
                && pairs.len() == q.k * (q.k - 1) / 2
                && pairs.iter().all(|(u, v)| vs.contains(u) && vs.contains(v))
        }
        SubgraphKind::Tree => {
            if q.k == 1 {
                w.edges.is_empty() && w.vertices.len() == 1
            } else {
                ends.len() == q.k - 1 && touched.len() == q.k && connected(&touched, &ends)
            }
        }
    };
    color_ok && shape_ok
}

fn connected(vs: &BTreeSet<usize>, edges: &[(usize, usize)]) -> bool {
    let Some(&start) = vs.iter().next() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            let y = if u == x { v } else if v == x { u } else { continue };
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == vs.len()
}
