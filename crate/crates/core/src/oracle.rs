//! Exponential-time exact references.
//!
//! The minimum feedback arc set equals the minimum, over all linear orders
//! of the vertices, of the number of arcs running backwards: the backward
//! arcs of any order form a feedback arc set, and deleting a feedback arc set
//! leaves a graph whose topological order has every remaining arc forward.
//! [`min_fas_exact`] minimises over orders with a dynamic program on vertex
//! subsets, placing one vertex at a time at the end of the prefix.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Arc, BipartiteDigraph, FourCycle, Orientation, VertexRef};

/// Vertex limit for [`min_fas_exact`].
pub const MAX_FAS_VERTICES: usize = 22;

/// Default cycle-count limit for [`max_c4_packing_exact`].
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the exact oracle: {size} exceeds {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// An optimum together with a witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub value: usize,
    pub witness: W,
}

pub fn min_fas_exact(graph: &BipartiteDigraph) -> Result<OracleResult<BTreeSet<Arc>>, OracleError> {
    let v = graph.vertex_count();
    if v > MAX_FAS_VERTICES {
        return Err(OracleError::TooLarge { size: v, limit: MAX_FAS_VERTICES });
    }
    let label = |k: usize| if k < graph.m() { VertexRef::x(k) } else { VertexRef::y(k - graph.m()) };
    let mut out_mask = vec![0u32; v];
    for arc in graph.arcs() {
        let idx = |w: VertexRef| match w.side {
            crate::graph::Side::X => w.index,
            crate::graph::Side::Y => graph.m() + w.index,
        };
        out_mask[idx(arc.tail)] |= 1 << idx(arc.head);
    }

    let full = (1usize << v) - 1;
    let mut cost = vec![u16::MAX; full + 1];
    let mut last = vec![0u8; full + 1];
    cost[0] = 0;
    for set in 1..=full {
        let mut rest = set;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = set & !(1 << w);
            // w goes last among `set`; its arcs into `before` point backwards.
            let c = cost[before] + (out_mask[w] & before as u32).count_ones() as u16;
            if c < cost[set] {
                cost[set] = c;
                last[set] = w as u8;
            }
        }
    }

    let mut witness = BTreeSet::new();
    let mut set = full;
    while set != 0 {
        let w = last[set] as usize;
        set &= !(1 << w);
        let mut hits = out_mask[w] & set as u32;
        while hits != 0 {
            let t = hits.trailing_zeros() as usize;
            hits &= hits - 1;
            witness.insert(Arc::new(label(w), label(t)));
        }
    }
    Ok(OracleResult { value: cost[full] as usize, witness })
}

/// Every 4-cycle, started at its smaller X vertex, in sorted order.
pub fn all_4cycles(graph: &BipartiteDigraph) -> Vec<FourCycle> {
    let mut cycles = Vec::new();
    for x0 in 0..graph.m() {
        for x1 in x0 + 1..graph.m() {
            for y0 in 0..graph.n() {
                if graph.orientation(x0, y0) != Orientation::ToY || graph.orientation(x1, y0) != Orientation::ToX {
                    continue;
                }
                for y1 in 0..graph.n() {
                    if graph.orientation(x1, y1) == Orientation::ToY && graph.orientation(x0, y1) == Orientation::ToX {
                        cycles.push(FourCycle::new(x0, y0, x1, y1));
                    }
                }
            }
        }
    }
    cycles
}

pub fn max_c4_packing_exact(graph: &BipartiteDigraph) -> Result<OracleResult<Vec<FourCycle>>, OracleError> {
    max_c4_packing_exact_with_cap(graph, DEFAULT_CYCLE_CAP)
}

/// Branch and bound over the sorted cycle list; a branch is cut when even
/// packing every remaining cycle could not beat the incumbent.
pub fn max_c4_packing_exact_with_cap(
    graph: &BipartiteDigraph,
    cap: usize,
) -> Result<OracleResult<Vec<FourCycle>>, OracleError> {
    let cycles = all_4cycles(graph);
    if cycles.len() > cap {
        return Err(OracleError::TooLarge { size: cycles.len(), limit: cap });
    }
    // Each cycle occupies four pairs; a pair holds at most one arc, so pair
    // occupancy is arc occupancy.
    let n = graph.n();
    let pairs: Vec<[usize; 4]> =
        cycles.iter().map(|c| [c.x0 * n + c.y0, c.x1 * n + c.y0, c.x1 * n + c.y1, c.x0 * n + c.y1]).collect();

    struct Search<'a> {
        pairs: &'a [[usize; 4]],
        used: Vec<bool>,
        current: Vec<usize>,
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, next: usize) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            if next == self.pairs.len() || self.current.len() + (self.pairs.len() - next) <= self.best.len() {
                return;
            }
            let p = self.pairs[next];
            if p.iter().all(|&k| !self.used[k]) {
                p.iter().for_each(|&k| self.used[k] = true);
                self.current.push(next);
                self.run(next + 1);
                self.current.pop();
                p.iter().for_each(|&k| self.used[k] = false);
            }
            self.run(next + 1);
        }
    }

    let mut search = Search { pairs: &pairs, used: vec![false; graph.m() * n], current: Vec::new(), best: Vec::new() };
    search.run(0);
    let witness: Vec<FourCycle> = search.best.iter().map(|&i| cycles[i]).collect();
    Ok(OracleResult { value: witness.len(), witness })
}

/// Reachability closure; a graph is cyclic exactly when some vertex reaches
/// itself through at least one arc.
pub fn has_cycle_brute_force(graph: &BipartiteDigraph) -> bool {
    let vs: Vec<VertexRef> = graph.vertices().collect();
    let v = vs.len();
    let mut reach = vec![vec![false; v]; v];
    for (a, &p) in vs.iter().enumerate() {
        for (b, &q) in vs.iter().enumerate() {
            reach[a][b] = graph.has_arc(Arc::new(p, q));
        }
    }
    for k in 0..v {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (cell, &step) in row.iter_mut().zip(&via) {
                *cell |= step;
            }
        }
    }
    (0..v).any(|a| reach[a][a])
}
