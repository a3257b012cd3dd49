//! Rainbow spanning trees by matroid intersection.
//!
//! Common independent sets of the graphic matroid of `K_n` and the partition
//! matroid "at most one edge per color" are exactly the rainbow forests, so a
//! common independent set of size `n - 1` is a rainbow spanning tree. The
//! maximum is grown one element at a time along shortest augmenting paths in
//! the exchange graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::components::DisjointSets;
use super::{Detection, Palette, Witness};
use crate::graph::{all_edges, ColoredGraph};

const NONE: usize = usize::MAX;

/// Size of a maximum rainbow forest, with one such forest (edge indices ascending).
pub fn max_rainbow_forest(g: &ColoredGraph) -> Vec<usize> {
    let n = g.n();
    let edges = all_edges(n);
    let m = edges.len();
    let palette = Palette::new(g);
    let color = |e: usize| palette.edge_color(e);
    let mut in_set = vec![false; m];

    loop {
        let members: Vec<usize> = (0..m).filter(|&e| in_set[e]).collect();
        if members.len() + 1 == n {
            return members;
        }
        let mut color_used = vec![false; palette.len()];
        for &y in &members {
            color_used[color(y)] = true;
        }

        // forest components of I and of every I - y
        let labels = |skip: usize| -> Vec<usize> {
            let mut d = DisjointSets::new(n);
            for &y in &members {
                if y != skip {
                    d.union(edges[y].0, edges[y].1);
                }
            }
            (0..n).map(|v| d.find(v)).collect()
        };
        let whole = labels(NONE);
        let without: Vec<Vec<usize>> = members.iter().map(|&y| labels(y)).collect();

        let mut pred = vec![NONE; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for z in 0..m {
            if !in_set[z] && whole[edges[z].0] != whole[edges[z].1] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
        let mut end = None;
        while let Some(x) = queue.pop_front() {
            if !in_set[x] {
                if !color_used[color(x)] {
                    end = Some(x);
                    break;
                }
                // I - y + x keeps one edge per color iff y carries x's color
                for &y in &members {
                    if !seen[y] && color(y) == color(x) {
                        seen[y] = true;
                        pred[y] = x;
                        queue.push_back(y);
                    }
                }
            } else {
                let slot = members.binary_search(&x).unwrap();
                let lab = &without[slot];
                for z in 0..m {
                    if !seen[z] && !in_set[z] && lab[edges[z].0] != lab[edges[z].1] {
                        seen[z] = true;
                        pred[z] = x;
                        queue.push_back(z);
                    }
                }
            }
        }
        let Some(mut x) = end else {
            return members;
        };
        while x != NONE {
            in_set[x] = !in_set[x];
            x = pred[x];
        }
    }
}

/// Exact decision: does `g` contain a spanning tree with pairwise distinct colors?
pub fn rainbow_spanning_tree(g: &ColoredGraph) -> Detection {
    let n = g.n();
    if Palette::new(g).len() + 1 < n {
        return Detection::absent();
    }
    let forest = max_rainbow_forest(g);
    if forest.len() + 1 == n {
        Detection::found(Witness::from_edges(n, forest))
    } else {
        Detection::absent()
    }
}
