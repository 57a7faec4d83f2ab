//! Greedy arc-disjoint 4-cycle packing.

use std::collections::HashSet;

use crate::c4free::find_4cycle;
use crate::graph::{BipartiteDigraph, FourCycle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub cycles: Vec<FourCycle>,
    /// The input with every packed arc deleted.
    pub residual: BipartiteDigraph,
    /// Set when the search ran until no 4-cycle was left, so no further
    /// cycle is arc-disjoint from the packing.
    pub maximal: bool,
}

/// Packs cycles returned by [`find_4cycle`] on the shrinking residual until
/// none is left or `limit` cycles have been packed.
pub fn greedy_pack(graph: &BipartiteDigraph, limit: Option<usize>) -> Packing {
    let mut cycles = Vec::new();
    let mut residual = graph.clone();
    loop {
        if limit.is_some_and(|l| cycles.len() >= l) {
            return Packing { cycles, residual, maximal: false };
        }
        match find_4cycle(&residual) {
            Some(c) => {
                residual = residual.delete_arcs(&c.arcs()).expect("cycle arcs are in the residual");
                cycles.push(c);
            }
            None => return Packing { cycles, residual, maximal: true },
        }
    }
}

/// Checks that every cycle is a 4-cycle of `graph` and that no two share an
/// arc. Returns a description of the first defect.
pub fn check_packing(graph: &BipartiteDigraph, cycles: &[FourCycle]) -> Result<(), String> {
    let mut used = HashSet::new();
    for c in cycles {
        if !c.is_in(graph) {
            return Err(format!("{c} is not a 4-cycle of the graph"));
        }
        if let Some(a) = c.arcs().into_iter().find(|&a| !used.insert(a)) {
            return Err(format!("arc {a} of {c} is used by an earlier cycle"));
        }
    }
    Ok(())
}
