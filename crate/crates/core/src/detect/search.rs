//! Exact backtracking searches: monochromatic cliques per color class and
//! the three rainbow properties.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::bits::Bits;
use super::{Budget, Palette};
use crate::error::Result;
use crate::graph::{edge_endpoints, edge_index_unchecked, ColoredGraph, EdgeIdx, Vertex};

/// A `k`-clique of the graph given by adjacency bitsets, by Bron–Kerbosch
/// with pivoting, cut off once the clique reaches `k` or can no longer.
pub(crate) fn find_clique(adj: &[Bits], k: usize, budget: &mut Budget) -> Result<Option<Vec<Vertex>>> {
    let n = adj.len();
    let mut p = Bits::new(n);
    for (v, row) in adj.iter().enumerate() {
        if row.count() + 1 >= k {
            p.insert(v);
        }
    }
    let mut r = Vec::with_capacity(k);
    if bron_kerbosch(adj, k, &mut r, p, budget)? {
        r.sort_unstable();
        Ok(Some(r))
    } else {
        Ok(None)
    }
}

fn bron_kerbosch(adj: &[Bits], k: usize, r: &mut Vec<Vertex>, mut p: Bits, budget: &mut Budget) -> Result<bool> {
    budget.tick()?;
    if r.len() >= k {
        return Ok(true);
    }
    let mut room = p.count();
    if r.len() + room < k {
        return Ok(false);
    }
    let pivot = p
        .iter()
        .max_by_key(|&u| (p.and_count(&adj[u]), core::cmp::Reverse(u)))
        .expect("room > 0");
    let candidates = p.and_not(&adj[pivot]);
    for v in candidates.iter() {
        r.push(v);
        if bron_kerbosch(adj, k, r, p.and(&adj[v]), budget)? {
            return Ok(true);
        }
        r.pop();
        p.remove(v);
        room -= 1;
        if r.len() + room < k {
            break;
        }
    }
    Ok(false)
}

/// Rainbow `k`-matching: colors are visited scarcest first; at each color
/// the search either takes one of its edges or skips the color.
pub(crate) struct RainbowMatching<'a> {
    k: usize,
    classes: Vec<Vec<(Vertex, Vertex, EdgeIdx)>>,
    used: Bits,
    free: usize,
    chosen: Vec<EdgeIdx>,
    failed: BTreeSet<(usize, Bits)>,
    budget: &'a mut Budget,
}

impl<'a> RainbowMatching<'a> {
    pub fn new(g: &ColoredGraph, k: usize, budget: &'a mut Budget) -> Self {
        let n = g.n();
        let mut classes: Vec<Vec<(Vertex, Vertex, EdgeIdx)>> = g
            .classes()
            .into_iter()
            .map(|(_, edges)| {
                edges
                    .into_iter()
                    .map(|e| {
                        let (u, v) = edge_endpoints(e, n).unwrap();
                        (u, v, e)
                    })
                    .collect()
            })
            .collect();
        // stable: equal sizes keep ascending color order
        classes.sort_by_key(|c| c.len());
        RainbowMatching {
            k,
            classes,
            used: Bits::new(n),
            free: n,
            chosen: Vec::with_capacity(k),
            failed: BTreeSet::new(),
            budget,
        }
    }

    pub fn run(mut self) -> Result<Option<Vec<EdgeIdx>>> {
        if self.go(0)? {
            self.chosen.sort_unstable();
            Ok(Some(self.chosen))
        } else {
            Ok(None)
        }
    }

    fn usable(&self, class: &[(Vertex, Vertex, EdgeIdx)]) -> bool {
        class.iter().any(|&(u, v, _)| !self.used.contains(u) && !self.used.contains(v))
    }

    fn go(&mut self, pos: usize) -> Result<bool> {
        if self.chosen.len() == self.k {
            return Ok(true);
        }
        self.budget.tick()?;
        let need = self.k - self.chosen.len();
        // vertex-availability bound
        if self.free / 2 < need {
            return Ok(false);
        }
        // remaining distinct usable colors bound
        let mut usable = 0;
        for class in &self.classes[pos..] {
            if self.usable(class) {
                usable += 1;
                if usable >= need {
                    break;
                }
            }
        }
        if usable < need {
            return Ok(false);
        }
        let key = (pos, self.used.clone());
        if self.failed.contains(&key) {
            return Ok(false);
        }
        for i in 0..self.classes[pos].len() {
            let (u, v, e) = self.classes[pos][i];
            if self.used.contains(u) || self.used.contains(v) {
                continue;
            }
            self.used.insert(u);
            self.used.insert(v);
            self.free -= 2;
            self.chosen.push(e);
            if self.go(pos + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.free += 2;
            self.used.remove(u);
            self.used.remove(v);
        }
        if self.go(pos + 1)? {
            return Ok(true);
        }
        self.failed.insert(key);
        Ok(false)
    }
}

/// Rainbow `k`-clique by growing vertex sets in increasing order.
pub(crate) fn rainbow_clique(g: &ColoredGraph, k: usize, budget: &mut Budget) -> Result<Option<Vec<Vertex>>> {
    let palette = Palette::new(g);
    let mut used = vec![false; palette.len()];
    let mut set = Vec::with_capacity(k);
    if grow_clique(g, &palette, k, 0, &mut set, &mut used, budget)? {
        Ok(Some(set))
    } else {
        Ok(None)
    }
}

fn grow_clique(
    g: &ColoredGraph,
    palette: &Palette,
    k: usize,
    start: Vertex,
    set: &mut Vec<Vertex>,
    used: &mut [bool],
    budget: &mut Budget,
) -> Result<bool> {
    if set.len() == k {
        return Ok(true);
    }
    budget.tick()?;
    let n = g.n();
    let mut fresh = Vec::with_capacity(set.len());
    for v in start..n {
        if set.len() + (n - v) < k {
            break;
        }
        fresh.clear();
        let ok = set.iter().all(|&s| {
            let c = palette.color(s, v);
            if used[c] || fresh.contains(&c) {
                false
            } else {
                fresh.push(c);
                true
            }
        });
        if !ok {
            continue;
        }
        let added = fresh.clone();
        for &c in &added {
            used[c] = true;
        }
        set.push(v);
        if grow_clique(g, palette, k, v + 1, set, used, budget)? {
            return Ok(true);
        }
        set.pop();
        for &c in &added {
            used[c] = false;
        }
    }
    Ok(false)
}

/// Rainbow tree on `k` vertices by growing trees edge by edge.
///
/// Whether a partial tree can be completed depends only on its vertex set and
/// its color set, so failed states are remembered and never re-expanded.
pub fn rainbow_tree_search(g: &ColoredGraph, k: usize, budget: &mut Budget) -> Result<Option<Vec<EdgeIdx>>> {
    let n = g.n();
    let palette = Palette::new(g);
    let mut s = TreeSearch {
        g,
        palette: &palette,
        k,
        vertices: Bits::new(n),
        colors: Bits::new(palette.len()),
        used_colors: 0,
        edges: Vec::with_capacity(k),
        failed: BTreeSet::new(),
        budget,
    };
    for root in 0..n {
        s.vertices.insert(root);
        if s.go(1)? {
            let mut edges = s.edges;
            edges.sort_unstable();
            return Ok(Some(edges));
        }
        s.vertices.remove(root);
    }
    Ok(None)
}

struct TreeSearch<'a, 'b> {
    g: &'a ColoredGraph,
    palette: &'a Palette,
    k: usize,
    vertices: Bits,
    colors: Bits,
    used_colors: usize,
    edges: Vec<EdgeIdx>,
    failed: BTreeSet<(Bits, Bits)>,
    budget: &'b mut Budget,
}

impl TreeSearch<'_, '_> {
    fn go(&mut self, size: usize) -> Result<bool> {
        if size == self.k {
            return Ok(true);
        }
        self.budget.tick()?;
        if self.palette.len() - self.used_colors < self.k - size {
            return Ok(false);
        }
        let key = (self.vertices.clone(), self.colors.clone());
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let n = self.g.n();
        let inside: Vec<Vertex> = self.vertices.iter().collect();
        for &u in &inside {
            for w in 0..n {
                if self.vertices.contains(w) {
                    continue;
                }
                let c = self.palette.color(u, w);
                if self.colors.contains(c) {
                    continue;
                }
                self.vertices.insert(w);
                self.colors.insert(c);
                self.used_colors += 1;
                self.edges.push(edge_index_unchecked(u.min(w), u.max(w), n));
                if self.go(size + 1)? {
                    return Ok(true);
                }
                self.edges.pop();
                self.used_colors -= 1;
                self.colors.remove(c);
                self.vertices.remove(w);
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}
