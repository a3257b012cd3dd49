//! Complete graphs with an edge coloring, stored as a flat color array
//! indexed by the lexicographic edge order of `K_n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::SeedSpec;

pub type Vertex = usize;
pub type EdgeIdx = usize;
pub type Color = u32;

/// Number of edges of `K_n`.
#[inline]
pub const fn edge_count(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Lexicographic index of the edge `{u, v}`, `u < v < n`.
pub fn edge_index(u: Vertex, v: Vertex, n: usize) -> Result<EdgeIdx> {
    if u >= v || v >= n {
        return Err(Error::InvalidEdge { u, v, n });
    }
    Ok(edge_index_unchecked(u, v, n))
}

#[inline]
pub(crate) fn edge_index_unchecked(u: Vertex, v: Vertex, n: usize) -> EdgeIdx {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(e: EdgeIdx, n: usize) -> Result<(Vertex, Vertex)> {
    if e >= edge_count(n) {
        return Err(Error::EdgeOutOfRange { e, n });
    }
    let mut rest = e;
    let mut u = 0;
    // row u holds the n - 1 - u edges (u, u+1), ..., (u, n-1)
    while rest >= n - 1 - u {
        rest -= n - 1 - u;
        u += 1;
    }
    Ok((u, u + 1 + rest))
}

/// All edges of `K_n` as endpoint pairs, in index order.
pub fn all_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::with_capacity(edge_count(n));
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// `K_n` with every edge assigned one of `r` colors (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    r: Color,
    colors: Vec<Color>,
}

impl ColoredGraph {
    pub fn new(n: usize, r: Color, colors: Vec<Color>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if r == 0 {
            return Err(Error::invalid("r must be at least 1"));
        }
        if colors.len() != edge_count(n) {
            return Err(Error::invalid(alloc::format!(
                "expected {} edge colors for n = {}, got {}",
                edge_count(n),
                n,
                colors.len()
            )));
        }
        if let Some((e, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(Error::invalid(alloc::format!(
                "edge {e} has color {c}, outside [0, {r})"
            )));
        }
        Ok(ColoredGraph { n, r, colors })
    }

    /// Every edge gets color `c`.
    pub fn constant(n: usize, r: Color, c: Color) -> Result<Self> {
        Self::new(n, r, vec![c; edge_count(n)])
    }

    /// Independent uniform colors, filled in increasing edge-index order.
    pub fn sample(n: usize, r: Color, seed: SeedSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if r == 0 {
            return Err(Error::invalid("r must be at least 1"));
        }
        let mut rng = seed.rng();
        let colors = (0..edge_count(n))
            .map(|_| rng.below(r as u64) as Color)
            .collect();
        Ok(ColoredGraph { n, r, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> Color {
        self.r
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edge_color(&self, e: EdgeIdx) -> Color {
        self.colors[e]
    }

    /// Color of `{u, v}` in either order. Panics on `u == v`.
    pub fn color(&self, u: Vertex, v: Vertex) -> Color {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        assert!(a != b && b < self.n, "not an edge: ({u}, {v})");
        self.colors[edge_index_unchecked(a, b, self.n)]
    }

    /// Edge indices of color `c`, ascending.
    pub fn color_class(&self, c: Color) -> Result<Vec<EdgeIdx>> {
        if c >= self.r {
            return Err(Error::invalid(alloc::format!(
                "color {c} outside [0, {})",
                self.r
            )));
        }
        Ok(self
            .colors
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == c)
            .map(|(e, _)| e)
            .collect())
    }

    /// Edges grouped by color: `(color, edges)` for every color that occurs,
    /// colors ascending, edges ascending within a group.
    pub fn classes(&self) -> Vec<(Color, Vec<EdgeIdx>)> {
        let mut order: Vec<EdgeIdx> = (0..self.colors.len()).collect();
        order.sort_by_key(|&e| (self.colors[e], e));
        let mut out: Vec<(Color, Vec<EdgeIdx>)> = Vec::new();
        for e in order {
            let c = self.colors[e];
            match out.last_mut() {
                Some((last, group)) if *last == c => group.push(e),
                _ => out.push((c, vec![e])),
            }
        }
        out
    }
}
