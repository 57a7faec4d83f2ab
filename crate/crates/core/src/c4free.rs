//! Feedback arc sets of size at most `lambda(D)` for 4-cycle-free bipartite
//! digraphs.
//!
//! The construction recurses on vertex count. After stripping vertices that
//! lie on no cycle it compares the total first and sec counts. If the firsts
//! do not exceed the secs, some vertex `u` has `first(u) <= sec(u)`; the
//! graph is split around `u` into
//!
//! * `left`: the own-side rest together with `u`'s in- and non-neighbours,
//! * `right`: `u`, the own-side vertices reached from `u`'s out-neighbours,
//!   and those out-neighbours,
//!
//! and every arc from `right` back into `left` goes from a reached vertex to
//! a non-neighbour. Those `first(u)` cut arcs plus the recursive answers on
//! both halves form the feedback arc set; the absent pairs between
//! in-neighbours and reached vertices pay for the cut. Otherwise the same
//! split runs on the reversed graph and the answer is reversed back.

use std::borrow::Cow;
use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::census::{vertex_counts, IndexPartition, NeighborhoodPartition, VertexCounts};
use crate::graph::{Arc, BipartiteDigraph, FourCycle, Orientation, Side, Subgraph, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("graph contains the 4-cycle {0}")]
    HasFourCycle(FourCycle),
}

/// First 4-cycle `x -> y -> x' -> y' -> x` in lexicographic order of
/// `(x, x', y, y')`.
pub fn find_4cycle(graph: &BipartiteDigraph) -> Option<FourCycle> {
    for x in 0..graph.m() {
        for x2 in (0..graph.m()).filter(|&x2| x2 != x) {
            let y = (0..graph.n())
                .find(|&y| graph.orientation(x, y) == Orientation::ToY && graph.orientation(x2, y) == Orientation::ToX);
            let y2 = (0..graph.n()).find(|&y2| {
                graph.orientation(x2, y2) == Orientation::ToY && graph.orientation(x, y2) == Orientation::ToX
            });
            if let (Some(y), Some(y2)) = (y, y2) {
                return Some(FourCycle::new(x, y, x2, y2));
            }
        }
    }
    None
}

/// Repeatedly removes vertices without in-neighbours or without
/// out-neighbours. Returns the surviving induced subgraph and the removed
/// vertices in label order.
pub fn trim_acyclic_vertices(graph: &BipartiteDigraph) -> (Subgraph, Vec<VertexRef>) {
    let mut alive_x = vec![true; graph.m()];
    let mut alive_y = vec![true; graph.n()];
    loop {
        let mut changed = false;
        for (i, alive) in alive_x.iter_mut().enumerate() {
            if !*alive {
                continue;
            }
            let (mut has_in, mut has_out) = (false, false);
            for j in (0..graph.n()).filter(|&j| alive_y[j]) {
                match graph.orientation(i, j) {
                    Orientation::ToY => has_out = true,
                    Orientation::ToX => has_in = true,
                    Orientation::Absent => {}
                }
            }
            if !(has_in && has_out) {
                *alive = false;
                changed = true;
            }
        }
        for (j, alive) in alive_y.iter_mut().enumerate() {
            if !*alive {
                continue;
            }
            let (mut has_in, mut has_out) = (false, false);
            for i in (0..graph.m()).filter(|&i| alive_x[i]) {
                match graph.orientation(i, j) {
                    Orientation::ToX => has_out = true,
                    Orientation::ToY => has_in = true,
                    Orientation::Absent => {}
                }
            }
            if !(has_in && has_out) {
                *alive = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let removed = (0..graph.m())
        .filter(|&i| !alive_x[i])
        .map(VertexRef::x)
        .chain((0..graph.n()).filter(|&j| !alive_y[j]).map(VertexRef::y))
        .collect();
    let kept = graph
        .induced_subgraph((0..graph.m()).filter(|&i| alive_x[i]), (0..graph.n()).filter(|&j| alive_y[j]))
        .expect("indices in range");
    (kept, removed)
}

/// Which orientation the split at a recursion node was performed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTaken {
    /// Total first count did not exceed total sec count; split the graph itself.
    Direct,
    /// Split the reversed graph and reverse the resulting arcs.
    Reversed,
}

/// One split of the recursion. Vertex labels refer to the root instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub depth: usize,
    #[serde(serialize_with = "crate::serialize_display")]
    pub vertex: VertexRef,
    pub case: CaseTaken,
    /// Vertices at this node after trimming.
    pub size: usize,
    pub lambda: usize,
    pub first: usize,
    pub sec: usize,
    /// Number of cut arcs, always equal to `first`.
    pub cut: usize,
    pub left_lambda: usize,
    pub right_lambda: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasCertificate {
    pub fas: BTreeSet<Arc>,
    /// `lambda` of the input; `fas.len()` never exceeds it.
    pub bound: usize,
    pub trace: Vec<TraceRecord>,
}

/// What an observer sees at each split, in the node's local labels. The
/// node graph is already reversed and side-swapped as needed so that `u`
/// lies in X.
#[derive(Debug)]
pub struct SplitView<'a> {
    pub graph: &'a BipartiteDigraph,
    pub case: CaseTaken,
    pub partition: NeighborhoodPartition,
    pub first: usize,
    pub sec: usize,
    pub cut: Vec<Arc>,
    pub left: &'a Subgraph,
    pub right: &'a Subgraph,
}

/// Computes a feedback arc set of size at most `lambda(graph)`.
///
/// Fails with the offending cycle when the graph has a 4-cycle.
pub fn fas_c4free(graph: &BipartiteDigraph) -> Result<FasCertificate, LemmaError> {
    run(graph, None)
}

/// [`fas_c4free`] with a callback invoked at every split.
pub fn fas_c4free_observed(
    graph: &BipartiteDigraph,
    observer: &mut dyn FnMut(&SplitView<'_>),
) -> Result<FasCertificate, LemmaError> {
    run(graph, Some(observer))
}

fn run(
    graph: &BipartiteDigraph,
    observer: Option<&mut dyn FnMut(&SplitView<'_>)>,
) -> Result<FasCertificate, LemmaError> {
    if let Some(c) = find_4cycle(graph) {
        return Err(LemmaError::HasFourCycle(c));
    }
    let mut solver = Solver { trace: Vec::new(), observer };
    let labels =
        Labels { xs: (0..graph.m()).map(VertexRef::x).collect(), ys: (0..graph.n()).map(VertexRef::y).collect() };
    let fas: BTreeSet<Arc> = solver.solve(graph, &labels, 0).into_iter().collect();
    let bound = graph.lambda();
    debug_assert!(fas.len() <= bound);
    debug_assert!(graph.is_feedback_arc_set(&fas).unwrap_or(false));
    Ok(FasCertificate { fas, bound, trace: solver.trace })
}

/// Root labels of a node's vertices.
#[derive(Debug, Clone)]
struct Labels {
    xs: Vec<VertexRef>,
    ys: Vec<VertexRef>,
}

impl Labels {
    fn of(&self, v: VertexRef) -> VertexRef {
        match v.side {
            Side::X => self.xs[v.index],
            Side::Y => self.ys[v.index],
        }
    }

    fn arc(&self, a: Arc) -> Arc {
        Arc::new(self.of(a.tail), self.of(a.head))
    }

    fn restrict(&self, sub: &Subgraph) -> Labels {
        Labels {
            xs: sub.x_indices().iter().map(|&i| self.xs[i]).collect(),
            ys: sub.y_indices().iter().map(|&j| self.ys[j]).collect(),
        }
    }

    fn swapped(&self) -> Labels {
        Labels { xs: self.ys.clone(), ys: self.xs.clone() }
    }
}

struct Solver<'o> {
    trace: Vec<TraceRecord>,
    observer: Option<&'o mut dyn FnMut(&SplitView<'_>)>,
}

impl Solver<'_> {
    /// Feedback arc set of `graph`, in root labels.
    fn solve(&mut self, graph: &BipartiteDigraph, labels: &Labels, depth: usize) -> Vec<Arc> {
        if graph.m() < 2 || graph.n() < 2 {
            return Vec::new();
        }
        let (kept, _) = trim_acyclic_vertices(graph);
        let labels = labels.restrict(&kept);
        let graph = &kept.graph;
        if graph.m() < 2 || graph.n() < 2 {
            return Vec::new();
        }
        let counts = vertex_counts(graph);
        let sum_first: usize = counts.iter().map(|c| c.first).sum();
        let sum_sec: usize = counts.iter().map(|c| c.sec).sum();
        if sum_first <= sum_sec {
            self.split(graph, &labels, &counts, CaseTaken::Direct, depth)
        } else {
            // Reversal swaps the two totals, so the reversed graph takes the direct branch.
            let reversed = graph.reverse();
            let counts = vertex_counts(&reversed);
            self.split(&reversed, &labels, &counts, CaseTaken::Reversed, depth).into_iter().map(Arc::reversed).collect()
        }
    }

    fn split(
        &mut self,
        graph: &BipartiteDigraph,
        labels: &Labels,
        counts: &[VertexCounts],
        case: CaseTaken,
        depth: usize,
    ) -> Vec<Arc> {
        // Largest slack sec - first, then smallest label.
        let chosen = *counts
            .iter()
            .filter(|c| c.first <= c.sec)
            .max_by(|a, b| (a.sec - a.first).cmp(&(b.sec - b.first)).then(b.vertex.cmp(&a.vertex)))
            .expect("total first <= total sec guarantees a vertex with first <= sec");

        let (graph, labels) = match chosen.vertex.side {
            Side::X => (Cow::Borrowed(graph), Cow::Borrowed(labels)),
            Side::Y => (Cow::Owned(graph.swap_sides()), Cow::Owned(labels.swapped())),
        };
        let u = chosen.vertex.index;
        let part = IndexPartition::around_x(&graph, u);
        let cut = part.cut_arcs(&graph);
        debug_assert_eq!(cut.len(), chosen.first);
        debug_assert!(no_arc_between(&graph, &part.reached, &part.in_nbrs, Orientation::ToY));
        debug_assert!(no_arc_between(&graph, &part.rest, &part.out_nbrs, Orientation::ToX));

        let left = graph
            .induced_subgraph(part.rest.iter().copied(), part.in_nbrs.iter().chain(&part.non_nbrs).copied())
            .expect("indices in range");
        let right = graph
            .induced_subgraph(part.reached.iter().copied().chain([u]), part.out_nbrs.iter().copied())
            .expect("indices in range");

        self.trace.push(TraceRecord {
            depth,
            vertex: labels.of(VertexRef::x(u)),
            case,
            size: graph.vertex_count(),
            lambda: graph.lambda(),
            first: chosen.first,
            sec: chosen.sec,
            cut: cut.len(),
            left_lambda: left.graph.lambda(),
            right_lambda: right.graph.lambda(),
        });
        if let Some(observer) = self.observer.as_mut() {
            let set = |side: Side, idx: &[usize]| idx.iter().map(|&k| VertexRef::new(side, k)).collect();
            observer(&SplitView {
                graph: &graph,
                case,
                partition: NeighborhoodPartition {
                    u: VertexRef::x(u),
                    in_nbrs: set(Side::Y, &part.in_nbrs),
                    out_nbrs: set(Side::Y, &part.out_nbrs),
                    non_nbrs: set(Side::Y, &part.non_nbrs),
                    reached: set(Side::X, &part.reached),
                    rest: set(Side::X, &part.rest),
                },
                first: chosen.first,
                sec: chosen.sec,
                cut: cut.iter().map(|&(i, j)| Arc::xy(i, j)).collect(),
                left: &left,
                right: &right,
            });
        }

        let mut fas: Vec<Arc> = cut.iter().map(|&(i, j)| labels.arc(Arc::xy(i, j))).collect();
        fas.extend(self.solve(&left.graph, &labels.restrict(&left), depth + 1));
        fas.extend(self.solve(&right.graph, &labels.restrict(&right), depth + 1));
        fas
    }
}

/// No pair `(xs[a], ys[b])` has the given orientation.
fn no_arc_between(graph: &BipartiteDigraph, xs: &[usize], ys: &[usize], o: Orientation) -> bool {
    xs.iter().all(|&i| ys.iter().all(|&j| graph.orientation(i, j) != o))
}
