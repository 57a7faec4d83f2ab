//! Cycles or a small feedback arc set in a bipartite tournament.
//!
//! For `k >= 1`, [`solve`] packs arc-disjoint 4-cycles greedily. Reaching `k`
//! of them is a certificate. Otherwise the packing is maximal with at most
//! `k - 1` cycles, so deleting its arcs leaves a 4-cycle-free graph with
//! `lambda = 4 * |packing|`. A feedback arc set of that graph of size at
//! most `lambda` comes from [`fas_c4free`]; the packed arcs that run
//! backwards in a topological order of what remains (at most three per
//! cycle) complete it. The total is at most `7 (k - 1)`.
//!
//! `k = 0` is answered by the empty packing.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::c4free::{fas_c4free, FasCertificate};
use crate::graph::{Arc, BipartiteDigraph, FourCycle, VertexOrder, VertexRef};
use crate::packing::{check_packing, greedy_pack};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("input is not a bipartite tournament: {lambda} pairs carry no arc")]
    NotATournament { lambda: usize },
    #[error("vertex {0} is missing from the order")]
    VertexNotInOrder(VertexRef),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// The feedback-arc-set branch of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasOutcome {
    /// `lemma_part` and `backward_part` together.
    pub fas: BTreeSet<Arc>,
    /// Feedback arc set of the tournament minus the packed arcs.
    pub lemma_part: BTreeSet<Arc>,
    /// Packed arcs running backwards in `order`.
    pub backward_part: BTreeSet<Arc>,
    /// Topological order of the tournament minus packed arcs minus `lemma_part`.
    pub order: VertexOrder,
    /// The maximal packing, fewer than `k` cycles.
    pub packing: Vec<FourCycle>,
    /// `7 (k - 1)`.
    pub bound: usize,
    pub lemma: FasCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// At least `k` pairwise arc-disjoint 4-cycles.
    Cycles(Vec<FourCycle>),
    Fas(Box<FasOutcome>),
}

/// Arcs of `cycle` whose tail comes after their head in `order`.
///
/// At least one and at most three arcs of a 4-cycle are backward in any
/// order.
pub fn backward_arcs(order: &VertexOrder, cycle: &FourCycle) -> Result<Vec<Arc>, SolveError> {
    let mut backward = Vec::new();
    for arc in cycle.arcs() {
        let tail = order.position(arc.tail).ok_or(SolveError::VertexNotInOrder(arc.tail))?;
        let head = order.position(arc.head).ok_or(SolveError::VertexNotInOrder(arc.head))?;
        if tail > head {
            backward.push(arc);
        }
    }
    Ok(backward)
}

/// Either `k` arc-disjoint 4-cycles of `tournament` or a verified feedback arc
/// set of size at most `7 (k - 1)`.
pub fn solve(tournament: &BipartiteDigraph, k: usize) -> Result<SolveOutcome, SolveError> {
    let lambda = tournament.lambda();
    if lambda > 0 {
        return Err(SolveError::NotATournament { lambda });
    }
    if k == 0 {
        return Ok(SolveOutcome::Cycles(Vec::new()));
    }
    let packing = greedy_pack(tournament, Some(k));
    if packing.cycles.len() >= k {
        return Ok(SolveOutcome::Cycles(packing.cycles));
    }

    let residual = &packing.residual;
    let lemma =
        fas_c4free(residual).map_err(|e| SolveError::InvariantViolation(format!("maximal packing left {e}")))?;
    let order = residual
        .delete_arcs(&lemma.fas)
        .map_err(|e| SolveError::InvariantViolation(e.to_string()))?
        .topological_order()
        .map_err(|c| SolveError::InvariantViolation(format!("{} arcs left the cycle {:?}", lemma.fas.len(), c)))?;
    let mut backward_part = BTreeSet::new();
    for cycle in &packing.cycles {
        backward_part.extend(backward_arcs(&order, cycle)?);
    }
    let lemma_part = lemma.fas.clone();
    let fas: BTreeSet<Arc> = lemma_part.union(&backward_part).copied().collect();
    let bound = 7 * (k - 1);

    let p = packing.cycles.len();
    if lemma_part.len() > 4 * p || backward_part.len() > 3 * p || fas.len() > bound {
        return Err(SolveError::InvariantViolation(format!(
            "size bound exceeded: {} + {} arcs for {p} packed cycles, k = {k}",
            lemma_part.len(),
            backward_part.len()
        )));
    }
    if !tournament.is_feedback_arc_set(&fas).map_err(|e| SolveError::InvariantViolation(e.to_string()))? {
        return Err(SolveError::InvariantViolation("assembled arc set leaves a cycle".into()));
    }
    Ok(SolveOutcome::Fas(Box::new(FasOutcome {
        fas,
        lemma_part,
        backward_part,
        order,
        packing: packing.cycles,
        bound,
        lemma,
    })))
}

/// Re-checks an answer of [`solve`] using only graph predicates.
pub fn check_outcome(tournament: &BipartiteDigraph, k: usize, outcome: &SolveOutcome) -> Result<(), String> {
    match outcome {
        SolveOutcome::Cycles(cycles) => {
            if cycles.len() < k {
                return Err(format!("{} cycles for k = {k}", cycles.len()));
            }
            check_packing(tournament, cycles)
        }
        SolveOutcome::Fas(out) => {
            let budget = k.checked_sub(1).ok_or("feedback arc set returned for k = 0")?;
            if out.bound != 7 * budget {
                return Err(format!("bound {} for k = {k}", out.bound));
            }
            let union: BTreeSet<Arc> = out.lemma_part.union(&out.backward_part).copied().collect();
            if union != out.fas {
                return Err("fas is not the union of its parts".into());
            }
            if out.lemma_part.len() > 4 * budget || out.backward_part.len() > 3 * budget || out.fas.len() > 7 * budget {
                return Err(format!(
                    "sizes {} + {} exceed the budget for k = {k}",
                    out.lemma_part.len(),
                    out.backward_part.len()
                ));
            }
            match tournament.is_feedback_arc_set(&out.fas) {
                Ok(true) => Ok(()),
                Ok(false) => Err("deleting fas leaves a cycle".into()),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}
