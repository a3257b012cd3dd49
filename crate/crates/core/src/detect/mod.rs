//! Existence decisions with witnesses for all six properties.
//!
//! | property        | method                                              |
//! |-----------------|-----------------------------------------------------|
//! | mono matching   | blossom maximum matching per color class            |
//! | mono clique     | Bron–Kerbosch with pivoting per color class         |
//! | mono tree       | largest component per color class (union-find)      |
//! | hetero matching | color-by-color backtracking, scarcest color first   |
//! | hetero clique   | vertex-growth backtracking                          |
//! | hetero tree     | tree-growth backtracking; matroid intersection at `k = n` |
//!
//! Searches are bounded by a node-expansion budget. Running out is an
//! error, never a negative answer.

mod bits;
mod blossom;
mod components;
mod matroid;
mod search;

use alloc::vec;
use alloc::vec::Vec;

pub use blossom::maximum_matching;
pub use components::{max_color_component, DisjointSets};
pub use matroid::{max_rainbow_forest, rainbow_spanning_tree};
pub use search::rainbow_tree_search;

use crate::error::{Error, Result};
use crate::graph::{edge_endpoints, edge_index_unchecked, ColoredGraph, EdgeIdx, Vertex};
use crate::query::{Chromatic, PropertyQuery, SubgraphKind};
use bits::Bits;

/// Default node-expansion budget for the backtracking searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Certificate for a detected subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Edge indices, ascending.
    pub edges: Vec<EdgeIdx>,
    /// Vertices, ascending.
    pub vertices: Vec<Vertex>,
}

impl Witness {
    /// Vertex set spanned by `edges`; an empty edge list means the single vertex 0.
    pub fn from_edges(n: usize, edges: Vec<EdgeIdx>) -> Self {
        if edges.is_empty() {
            return Witness::single_vertex();
        }
        let mut vertices: Vec<Vertex> = edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = edge_endpoints(e, n).unwrap();
                [u, v]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        Witness { edges, vertices }
    }

    /// All edges among `vertices` (sorted ascending).
    pub fn from_clique(n: usize, vertices: Vec<Vertex>) -> Self {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                edges.push(edge_index_unchecked(u, v, n));
            }
        }
        Witness { edges, vertices }
    }

    fn single_vertex() -> Self {
        Witness {
            edges: Vec::new(),
            vertices: vec![0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub exists: bool,
    pub witness: Option<Witness>,
}

impl Detection {
    pub fn found(w: Witness) -> Self {
        Detection {
            exists: true,
            witness: Some(w),
        }
    }

    pub fn absent() -> Self {
        Detection {
            exists: false,
            witness: None,
        }
    }

    fn from_option(w: Option<Witness>) -> Self {
        w.map_or_else(Detection::absent, Detection::found)
    }
}

/// Node-expansion counter shared by one detector invocation.
#[derive(Debug)]
pub struct Budget {
    left: u64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { left: limit, limit }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExhausted { budget: self.limit });
        }
        self.left -= 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.limit - self.left
    }
}

/// Dense relabeling of the colors that occur in a graph.
pub(crate) struct Palette {
    n: usize,
    edge_colors: Vec<usize>,
    len: usize,
}

impl Palette {
    pub fn new(g: &ColoredGraph) -> Self {
        let mut distinct: Vec<_> = g.colors().to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let edge_colors = g
            .colors()
            .iter()
            .map(|c| distinct.binary_search(c).unwrap())
            .collect();
        Palette {
            n: g.n(),
            edge_colors,
            len: distinct.len(),
        }
    }

    /// Number of distinct colors present.
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn edge_color(&self, e: EdgeIdx) -> usize {
        self.edge_colors[e]
    }

    #[inline]
    pub fn color(&self, u: Vertex, v: Vertex) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edge_colors[edge_index_unchecked(a, b, self.n)]
    }
}

/// Maximum matching size of the graph on `n` vertices with edge set `edges`.
pub fn max_matching(edges: &[EdgeIdx], n: usize) -> Result<usize> {
    let adj = adjacency(edges, n)?;
    Ok(maximum_matching(&adj).iter().filter(|m| m.is_some()).count() / 2)
}

fn adjacency(edges: &[EdgeIdx], n: usize) -> Result<Vec<Vec<Vertex>>> {
    let mut adj = vec![Vec::new(); n];
    for &e in edges {
        let (u, v) = edge_endpoints(e, n)?;
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    Ok(adj)
}

pub fn detect(g: &ColoredGraph, q: &PropertyQuery) -> Result<Detection> {
    detect_with_budget(g, q, DEFAULT_BUDGET)
}

pub fn detect_with_budget(g: &ColoredGraph, q: &PropertyQuery, budget: u64) -> Result<Detection> {
    let n = g.n();
    q.validate(n)?;
    let k = q.k;
    let mut budget = Budget::new(budget);
    // one vertex, or one edge, qualifies on its own
    let trivial = match q.kind {
        SubgraphKind::Matching => k == 1,
        SubgraphKind::Clique | SubgraphKind::Tree => k <= 2,
    };
    if trivial {
        return Ok(Detection::found(if k == 1 && q.kind != SubgraphKind::Matching {
            Witness::single_vertex()
        } else {
            Witness::from_edges(n, vec![0])
        }));
    }
    let witness = match (q.kind, q.chromatic) {
        (SubgraphKind::Matching, Chromatic::Mono) => mono_matching(g, k)?,
        (SubgraphKind::Clique, Chromatic::Mono) => mono_clique(g, k, &mut budget)?,
        (SubgraphKind::Tree, Chromatic::Mono) => components::mono_tree(g, k),
        (SubgraphKind::Matching, Chromatic::Hetero) => search::RainbowMatching::new(g, k, &mut budget)
            .run()?
            .map(|edges| Witness::from_edges(n, edges)),
        (SubgraphKind::Clique, Chromatic::Hetero) => {
            search::rainbow_clique(g, k, &mut budget)?.map(|vs| Witness::from_clique(n, vs))
        }
        (SubgraphKind::Tree, Chromatic::Hetero) if k == n => return Ok(rainbow_spanning_tree(g)),
        (SubgraphKind::Tree, Chromatic::Hetero) => {
            rainbow_tree_search(g, k, &mut budget)?.map(|edges| Witness::from_edges(n, edges))
        }
    };
    Ok(Detection::from_option(witness))
}

fn mono_matching(g: &ColoredGraph, k: usize) -> Result<Option<Witness>> {
    let n = g.n();
    for (_, class) in g.classes() {
        if class.len() < k {
            continue;
        }
        let adj = adjacency(&class, n)?;
        let mate = maximum_matching(&adj);
        let mut edges: Vec<EdgeIdx> = mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| edge_index_unchecked(v, u, n)))
            .collect();
        if edges.len() >= k {
            edges.sort_unstable();
            edges.truncate(k);
            return Ok(Some(Witness::from_edges(n, edges)));
        }
    }
    Ok(None)
}

fn mono_clique(g: &ColoredGraph, k: usize, budget: &mut Budget) -> Result<Option<Witness>> {
    let n = g.n();
    let needed = k * (k - 1) / 2;
    for (_, class) in g.classes() {
        if class.len() < needed {
            continue;
        }
        let mut adj = vec![Bits::new(n); n];
        for &e in &class {
            let (u, v) = edge_endpoints(e, n)?;
            adj[u].insert(v);
            adj[v].insert(u);
        }
        if let Some(vs) = search::find_clique(&adj, k, budget)? {
            return Ok(Some(Witness::from_clique(n, vs)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
