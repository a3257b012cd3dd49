//! Brute-force ground truth.
//!
//! Everything here enumerates: subgraph placements inside one coloring, and
//! for tiny `n` the whole space of `r^C(n,2)` colorings. Results are exact
//! integers and rationals; nothing in this module touches floating point.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, ControlFlow, Range};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bigmath::{big_pow, binomial, factorial, falling, ratio};
use crate::error::{Error, Result};
use crate::graph::{all_edges, edge_count, edge_index_unchecked, Color, ColoredGraph, EdgeIdx, Vertex};
use crate::query::{Chromatic, PropertyQuery, SubgraphKind};

/// Default cap on candidate subgraphs examined by [`count_occurrences`].
pub const DEFAULT_CANDIDATE_CAP: u64 = 10_000_000;
/// Default cap on `r^C(n,2)` for [`exact_stats`].
pub const DEFAULT_COLORING_CAP: u64 = 1 << 25;
/// Default cap on ordered placement pairs for [`exact_delta`].
pub const DEFAULT_PAIR_CAP: u64 = 100_000_000;

/// Number of sets of `k` pairwise disjoint edges in `K_n`:
/// `C(n,2) C(n-2,2) ... C(n-2k+2,2) / k!`.
pub fn count_k_matchings(n: usize, k: usize) -> Result<BigUint> {
    if 2 * k > n {
        return Err(Error::invalid(format!("2k = {} exceeds n = {n}", 2 * k)));
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= binomial((n - 2 * i) as u64, 2);
    }
    Ok(acc / factorial(k as u64))
}

/// Number of candidate placements of `q` in `K_n`.
pub fn candidate_count(n: usize, q: &PropertyQuery) -> Result<BigUint> {
    q.validate(n)?;
    let (n64, k64) = (n as u64, q.k as u64);
    Ok(match q.kind {
        SubgraphKind::Matching => count_k_matchings(n, q.k)?,
        SubgraphKind::Clique => binomial(n64, k64),
        // Cayley: k^(k-2) labeled trees on each k-subset
        SubgraphKind::Tree if q.k == 1 => BigUint::from(n),
        SubgraphKind::Tree => binomial(n64, k64) * big_pow(k64, k64 - 2),
    })
}

fn check_cap(what: &'static str, required: &BigUint, cap: u64) -> Result<()> {
    if *required > BigUint::from(cap) {
        return Err(Error::WorkCap {
            what,
            required: required.to_string(),
            cap: cap.to_string(),
        });
    }
    Ok(())
}

/// Calls `f` once per placement with its edge indices in ascending order.
const GO: ControlFlow<()> = ControlFlow::Continue(());

/// `f` may stop the walk early by returning `Break`.
fn for_each_placement(n: usize, q: &PropertyQuery, f: &mut dyn FnMut(&[EdgeIdx]) -> ControlFlow<()>) -> ControlFlow<()> {
    match q.kind {
        SubgraphKind::Matching => {
            let edges = all_edges(n);
            let mut used = vec![false; n];
            let mut cur = Vec::with_capacity(q.k);
            matchings_from(&edges, 0, q.k, &mut used, &mut cur, f)
        }
        SubgraphKind::Clique => for_each_subset(n, q.k, &mut |vs| {
            let mut edges = Vec::with_capacity(q.edges_per_placement());
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    edges.push(edge_index_unchecked(u, v, n));
                }
            }
            f(&edges)
        }),
        SubgraphKind::Tree => for_each_subset(n, q.k, &mut |vs| {
            for_each_labeled_tree(vs.len(), &mut |local| {
                let mut edges: Vec<EdgeIdx> = local
                    .iter()
                    .map(|&(a, b)| {
                        let (u, v) = (vs[a].min(vs[b]), vs[a].max(vs[b]));
                        edge_index_unchecked(u, v, n)
                    })
                    .collect();
                edges.sort_unstable();
                f(&edges)
            })
        }),
    }
}

fn matchings_from(
    edges: &[(Vertex, Vertex)],
    start: usize,
    k: usize,
    used: &mut [bool],
    cur: &mut Vec<EdgeIdx>,
    f: &mut dyn FnMut(&[EdgeIdx]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if cur.len() == k {
        return f(cur);
    }
    for e in start..edges.len() {
        let (u, v) = edges[e];
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        cur.push(e);
        let flow = matchings_from(edges, e + 1, k, used, cur, f);
        cur.pop();
        used[u] = false;
        used[v] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// k-subsets of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> ControlFlow<()> {
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx)?;
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return ControlFlow::Continue(());
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every labeled tree on `0..k`, decoded from its Prüfer sequence.
type TreeVisitor<'a> = dyn FnMut(&[(usize, usize)]) -> ControlFlow<()> + 'a;

fn for_each_labeled_tree(k: usize, f: &mut TreeVisitor<'_>) -> ControlFlow<()> {
    match k {
        0 => ControlFlow::Continue(()),
        1 => f(&[]),
        2 => f(&[(0, 1)]),
        _ => {
            let len = k - 2;
            let mut seq = vec![0usize; len];
            let mut edges = Vec::with_capacity(k - 1);
            let mut degree = vec![0usize; k];
            loop {
                edges.clear();
                degree.iter_mut().for_each(|d| *d = 1);
                for &x in &seq {
                    degree[x] += 1;
                }
                for &x in &seq {
                    let leaf = (0..k).find(|&j| degree[j] == 1).unwrap();
                    edges.push((leaf, x));
                    degree[leaf] -= 1;
                    degree[x] -= 1;
                }
                let mut rest = (0..k).filter(|&j| degree[j] == 1);
                let a = rest.next().unwrap();
                let b = rest.next().unwrap();
                edges.push((a, b));
                f(&edges)?;

                // odometer over [0, k)^len
                let mut pos = 0;
                loop {
                    if pos == len {
                        return ControlFlow::Continue(());
                    }
                    seq[pos] += 1;
                    if seq[pos] < k {
                        break;
                    }
                    seq[pos] = 0;
                    pos += 1;
                }
            }
        }
    }
}

#[inline]
fn is_mono(colors: &[Color], edges: &[EdgeIdx]) -> bool {
    match edges.split_first() {
        None => true,
        Some((&first, rest)) => rest.iter().all(|&e| colors[e] == colors[first]),
    }
}

#[inline]
fn is_rainbow(colors: &[Color], edges: &[EdgeIdx]) -> bool {
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            if colors[a] == colors[b] {
                return false;
            }
        }
    }
    true
}

#[inline]
fn satisfies(colors: &[Color], edges: &[EdgeIdx], chromatic: Chromatic) -> bool {
    match chromatic {
        Chromatic::Mono => is_mono(colors, edges),
        Chromatic::Hetero => is_rainbow(colors, edges),
    }
}

/// Number of placements of `q` in `g` that are mono / rainbow, by enumeration.
pub fn count_occurrences(g: &ColoredGraph, q: &PropertyQuery) -> Result<u64> {
    count_occurrences_capped(g, q, DEFAULT_CANDIDATE_CAP)
}

pub fn count_occurrences_capped(g: &ColoredGraph, q: &PropertyQuery, cap: u64) -> Result<u64> {
    let candidates = candidate_count(g.n(), q)?;
    check_cap("subgraph enumeration", &candidates, cap)?;
    let colors = g.colors();
    let mut count = 0u64;
    let _ = for_each_placement(g.n(), q, &mut |edges| {
        if satisfies(colors, edges, q.chromatic) {
            count += 1;
        }
        GO
    });
    Ok(count)
}

/// Whether any placement of `q` in `g` is mono / rainbow; stops at the first.
pub fn occurs(g: &ColoredGraph, q: &PropertyQuery, cap: u64) -> Result<bool> {
    let candidates = candidate_count(g.n(), q)?;
    check_cap("subgraph enumeration", &candidates, cap)?;
    let colors = g.colors();
    let flow = for_each_placement(g.n(), q, &mut |edges| {
        if satisfies(colors, edges, q.chromatic) {
            ControlFlow::Break(())
        } else {
            GO
        }
    });
    Ok(flow.is_break())
}

/// Ground truth over the whole coloring space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactStats {
    pub total_colorings: BigUint,
    pub colorings_with_property: BigUint,
    pub probability: BigRational,
    /// `E(X)` or `E(Y)`: the average number of qualifying placements.
    pub expected_count: BigRational,
    /// Sum over ordered pairs of distinct edge-sharing placements of the
    /// probability that both qualify.
    pub delta: BigRational,
}

/// Partial sums over a range of colorings; ranges add up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub with_property: u64,
    pub count_sum: u128,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            with_property: self.with_property + o.with_property,
            count_sum: self.count_sum + o.count_sum,
        }
    }
}

/// The full coloring space of `K_n` with `r` colors, prepared for one query.
///
/// Colorings are numbered in odometer order with edge 0 as the fastest digit,
/// so any index range can be tallied independently and the tallies summed.
#[derive(Clone, Debug)]
pub struct ColoringSpace {
    n: usize,
    r: u64,
    query: PropertyQuery,
    stride: usize,
    placements: Vec<EdgeIdx>,
    total: u64,
}

impl ColoringSpace {
    pub fn new(n: usize, r: u64, query: PropertyQuery, cap: u64) -> Result<Self> {
        if r == 0 || r > Color::MAX as u64 {
            return Err(Error::invalid(format!("r = {r} out of range")));
        }
        query.validate(n)?;
        let total = big_pow(r, edge_count(n) as u64);
        check_cap("coloring enumeration", &total, cap)?;
        let candidates = candidate_count(n, &query)?;
        check_cap("subgraph enumeration", &candidates, DEFAULT_CANDIDATE_CAP)?;
        let stride = query.edges_per_placement();
        let mut placements = Vec::new();
        let _ = for_each_placement(n, &query, &mut |edges| {
            placements.extend_from_slice(edges);
            GO
        });
        Ok(ColoringSpace {
            n,
            r,
            query,
            stride,
            placements,
            total: total.to_u64().expect("capped below u64"),
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn query(&self) -> &PropertyQuery {
        &self.query
    }

    fn count_in(&self, colors: &[Color]) -> u64 {
        if self.stride == 0 {
            return self.n as u64;
        }
        let chromatic = self.query.chromatic;
        if chromatic == Chromatic::Hetero && self.stride as u64 > self.r {
            return 0;
        }
        self.placements
            .chunks_exact(self.stride)
            .filter(|p| satisfies(colors, p, chromatic))
            .count() as u64
    }

    /// Tally colorings with index in `range`.
    pub fn tally(&self, range: Range<u64>) -> Tally {
        let m = edge_count(self.n);
        let end = range.end.min(self.total);
        let mut t = Tally::default();
        if range.start >= end {
            return t;
        }
        let r = self.r as Color;
        let mut colors = vec![0 as Color; m];
        let mut rest = range.start;
        for c in colors.iter_mut() {
            *c = (rest % self.r) as Color;
            rest /= self.r;
        }
        for _ in range.start..end {
            let c = self.count_in(&colors);
            if c > 0 {
                t.with_property += 1;
            }
            t.count_sum += c as u128;
            for d in colors.iter_mut() {
                *d += 1;
                if *d < r {
                    break;
                }
                *d = 0;
            }
        }
        t
    }

    /// Exact Δ: ordered pairs of distinct placements sharing `s >= 1` edges,
    /// each weighted by its joint probability. The joint probability only
    /// depends on `s`, and is found by enumerating the colorings of the
    /// `2a - s` edges in the union of a pair.
    pub fn delta(&self) -> BigRational {
        let a = self.stride;
        if a == 0 {
            return BigRational::zero();
        }
        let counts = shared_edge_histogram(&self.placements, a);
        let mut delta = BigRational::zero();
        for (s, &count) in counts.iter().enumerate().skip(1) {
            if count == 0 {
                continue;
            }
            let joint = joint_probability_by_enumeration(a, s, self.r, self.query.chromatic);
            delta += joint * BigRational::from_integer(count.into());
        }
        delta
    }

    pub fn finish(&self, tally: Tally) -> ExactStats {
        let total = BigUint::from(self.total);
        ExactStats {
            colorings_with_property: BigUint::from(tally.with_property),
            probability: ratio(BigUint::from(tally.with_property), total.clone()),
            expected_count: ratio(BigUint::from(tally.count_sum), total.clone()),
            delta: self.delta(),
            total_colorings: total,
        }
    }
}

/// `hist[s]` = number of ordered pairs `(i, j)`, `i != j`, of placements
/// sharing exactly `s` edges. Placements are `stride`-sized sorted chunks.
fn shared_edge_histogram(flat: &[EdgeIdx], stride: usize) -> Vec<u64> {
    let ps: Vec<&[EdgeIdx]> = flat.chunks_exact(stride).collect();
    let mut hist = vec![0u64; stride + 1];
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            hist[shared(ps[i], ps[j])] += 2;
        }
    }
    hist
}

fn shared(a: &[EdgeIdx], b: &[EdgeIdx]) -> usize {
    let (mut i, mut j, mut s) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                s += 1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// Probability that two `a`-edge placements sharing `s` edges both qualify,
/// by enumerating all `r^(2a-s)` colorings of their union.
fn joint_probability_by_enumeration(a: usize, s: usize, r: u64, chromatic: Chromatic) -> BigRational {
    let u = 2 * a - s;
    let first: Vec<EdgeIdx> = (0..a).collect();
    let second: Vec<EdgeIdx> = (0..s).chain(a..u).collect();
    let mut colors = vec![0 as Color; u];
    let total = big_pow(r, u as u64);
    let mut hits = 0u64;
    loop {
        if satisfies(&colors, &first, chromatic) && satisfies(&colors, &second, chromatic) {
            hits += 1;
        }
        let mut pos = 0;
        loop {
            if pos == u {
                return ratio(BigUint::from(hits), total);
            }
            colors[pos] += 1;
            if (colors[pos] as u64) < r {
                break;
            }
            colors[pos] = 0;
            pos += 1;
        }
    }
}

/// Exact statistics over all `r^C(n,2)` colorings, sequentially.
pub fn exact_stats(n: usize, r: u64, q: &PropertyQuery, cap: u64) -> Result<ExactStats> {
    let space = ColoringSpace::new(n, r, *q, cap)?;
    let t = space.tally(0..space.total());
    Ok(space.finish(t))
}

/// `counts[s]` = ordered pairs of distinct k-matchings of `K_n` sharing exactly `s` edges.
pub fn matching_pair_counts(n: usize, k: usize, pair_cap: u64) -> Result<Vec<u64>> {
    let q = count_k_matchings(n, k)?;
    if k == 0 {
        return Ok(vec![0]);
    }
    check_cap("placement pair enumeration", &(&q * &q), pair_cap)?;
    let query = PropertyQuery::mono_matching(k);
    let mut flat = Vec::new();
    let _ = for_each_placement(n, &query, &mut |edges| {
        flat.extend_from_slice(edges);
        GO
    });
    Ok(shared_edge_histogram(&flat, k))
}

/// Δ for k-matchings from pair enumeration and the closed-form joint
/// probabilities: `r / r^(2k-s)` (mono) and
/// `C(r,k) k! C(r-s,k-s) (k-s)! / r^(2k-s)` (hetero) for pairs sharing `s` edges.
pub fn exact_delta(n: usize, k: usize, r: u64, chromatic: Chromatic) -> Result<BigRational> {
    exact_delta_capped(n, k, r, chromatic, DEFAULT_PAIR_CAP)
}

pub fn exact_delta_capped(
    n: usize,
    k: usize,
    r: u64,
    chromatic: Chromatic,
    pair_cap: u64,
) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let counts = matching_pair_counts(n, k, pair_cap)?;
    if chromatic == Chromatic::Hetero && r < k as u64 {
        return Ok(BigRational::zero());
    }
    let (k64, mut delta) = (k as u64, BigRational::zero());
    for (s, &count) in counts.iter().enumerate().skip(1) {
        if count == 0 {
            continue;
        }
        let s64 = s as u64;
        let den = big_pow(r, 2 * k64 - s64);
        let num = match chromatic {
            Chromatic::Mono => BigUint::from(r),
            Chromatic::Hetero => falling(r, k64) * falling(r - s64, k64 - s64),
        };
        delta += ratio(num, den) * BigRational::from_integer(count.into());
    }
    Ok(delta)
}
