//! Connected components of each color class.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::Witness;
use crate::graph::{edge_endpoints, edge_index_unchecked, Color, ColoredGraph, EdgeIdx};

/// Union-find with union by size and path halving.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let root = self.find(x);
        self.size[root]
    }

    fn reset(&mut self, x: usize) {
        self.parent[x] = x;
        self.size[x] = 1;
    }
}

/// Largest component of each occurring color: `(color, size, lowest vertex of
/// the first largest component)`, colors ascending.
fn class_components(g: &ColoredGraph) -> Vec<(Color, usize, usize)> {
    let n = g.n();
    let mut dsu = DisjointSets::new(n);
    let mut out = Vec::new();
    for (c, edges) in g.classes() {
        let mut touched = Vec::new();
        for &e in &edges {
            let (u, v) = edge_endpoints(e, n).unwrap();
            touched.push(u);
            touched.push(v);
            dsu.union(u, v);
        }
        touched.sort_unstable();
        touched.dedup();
        let (mut best, mut at) = (1, 0);
        for &v in &touched {
            let s = dsu.set_size(v);
            if s > best {
                best = s;
                at = v;
            }
        }
        out.push((c, best, at));
        for &v in &touched {
            dsu.reset(v);
        }
    }
    out
}

/// The color with the largest monochromatic connected component, and that
/// component's vertex count. Ties go to the lowest color.
pub fn max_color_component(g: &ColoredGraph) -> (Color, usize) {
    let mut best = (0, 1);
    for (c, size, _) in class_components(g) {
        if size > best.1 {
            best = (c, size);
        }
    }
    best
}

/// A monochromatic tree on `k >= 2` vertices: the first `k` vertices reached
/// by BFS inside the first color class whose largest component is big enough.
pub(crate) fn mono_tree(g: &ColoredGraph, k: usize) -> Option<Witness> {
    let n = g.n();
    let (c, _, start) = class_components(g).into_iter().find(|&(_, size, _)| size >= k)?;
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut edges: Vec<EdgeIdx> = Vec::with_capacity(k - 1);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for w in 0..n {
            if count == k {
                break;
            }
            if w == u || seen[w] || g.color(u, w) != c {
                continue;
            }
            seen[w] = true;
            count += 1;
            edges.push(edge_index_unchecked(u.min(w), u.max(w), n));
            queue.push_back(w);
        }
        if count == k {
            break;
        }
    }
    edges.sort_unstable();
    Some(Witness::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedSpec;

    #[test]
    fn single_color_spans() {
        for n in 1..8 {
            let g = ColoredGraph::constant(n, 1, 0).unwrap();
            assert_eq!(max_color_component(&g), (0, n));
        }
    }

    #[test]
    fn star_on_three_vertices() {
        // edges 01, 02, 12 in index order
        let g = ColoredGraph::new(3, 2, vec![0, 0, 1]).unwrap();
        assert_eq!(max_color_component(&g), (0, 3));
        let w = mono_tree(&g, 3).unwrap();
        assert_eq!(w.edges, vec![0, 1]);
    }

    #[test]
    fn ties_go_to_the_lowest_color() {
        // 0-1 color 1, 2-3 color 0, everything else unique colors
        let n = 4;
        let mut colors = vec![0; 6];
        for (e, c) in colors.iter_mut().enumerate() {
            *c = 2 + e as u32;
        }
        colors[edge_index_unchecked(0, 1, n)] = 1;
        colors[edge_index_unchecked(2, 3, n)] = 0;
        let g = ColoredGraph::new(n, 8, colors).unwrap();
        assert_eq!(max_color_component(&g), (0, 2));
    }

    #[test]
    fn component_size_matches_flood_fill() {
        for seed in 0..50 {
            let g = ColoredGraph::sample(12, 4, SeedSpec::new(seed, 0)).unwrap();
            let mut best = (0, 1);
            for c in 0..4 {
                let mut seen = vec![false; 12];
                for s in 0..12 {
                    if seen[s] {
                        continue;
                    }
                    let mut stack = vec![s];
                    seen[s] = true;
                    let mut size = 0;
                    while let Some(u) = stack.pop() {
                        size += 1;
                        for w in 0..12 {
                            if w != u && !seen[w] && g.color(u, w) == c {
                                seen[w] = true;
                                stack.push(w);
                            }
                        }
                    }
                    if size > best.1 {
                        best = (c, size);
                    }
                }
            }
            assert_eq!(max_color_component(&g), best);
        }
    }

    #[test]
    fn dsu_basics() {
        let mut d = DisjointSets::new(5);
        assert!(d.union(0, 1));
        assert!(d.union(3, 4));
        assert!(!d.union(1, 0));
        assert!(d.union(1, 4));
        assert_eq!(d.set_size(3), 4);
        assert_eq!(d.set_size(2), 1);
    }
}
