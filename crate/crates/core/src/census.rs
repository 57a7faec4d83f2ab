//! Induced four-vertex paths and their equivalence classes.
//!
//! Two induced paths are *second-equivalent* when they differ only in their
//! second vertex, and *third-equivalent* when they differ only in their third.
//! `first_count(v)` counts second-equivalence classes whose paths start at
//! `v`; `sec_count(v)` counts third-equivalence classes whose paths have `v`
//! in second position.
//!
//! Counts come in two flavours that must agree: bucketing of the enumerated
//! paths, and a closed form over the neighbourhood partition around `v`.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Arc, BipartiteDigraph, GraphError, Orientation, Side, VertexRef};

/// An induced path `v1 -> v2 -> v3 -> v4`.
///
/// In a bipartite digraph the pairs `v1, v3` and `v2, v4` share a side, so
/// inducedness reduces to `v1` and `v4` being non-adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P4(pub [VertexRef; 4]);

impl P4 {
    pub fn first(&self) -> VertexRef {
        self.0[0]
    }

    pub fn second(&self) -> VertexRef {
        self.0[1]
    }

    pub fn third(&self) -> VertexRef {
        self.0[2]
    }

    pub fn fourth(&self) -> VertexRef {
        self.0[3]
    }

    /// The same vertices traversed backwards, a path of the reversed graph.
    pub fn reversed(&self) -> P4 {
        let [a, b, c, d] = self.0;
        P4([d, c, b, a])
    }

    pub fn key2(&self) -> ClassKey2 {
        ClassKey2 { first: self.first(), third: self.third(), fourth: self.fourth() }
    }

    pub fn key3(&self) -> ClassKey3 {
        ClassKey3 { first: self.first(), second: self.second(), fourth: self.fourth() }
    }

    pub fn is_induced_in(&self, graph: &BipartiteDigraph) -> bool {
        let [a, b, c, d] = self.0;
        graph.has_arc(Arc::new(a, b))
            && graph.has_arc(Arc::new(b, c))
            && graph.has_arc(Arc::new(c, d))
            && a != c
            && b != d
            && !graph.adjacent(a, d)
    }
}

/// Identifies a class of paths sharing every vertex but the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey2 {
    pub first: VertexRef,
    pub third: VertexRef,
    pub fourth: VertexRef,
}

/// Identifies a class of paths sharing every vertex but the third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey3 {
    pub first: VertexRef,
    pub second: VertexRef,
    pub fourth: VertexRef,
}

/// All induced four-vertex paths, sorted by vertex labels.
pub fn enumerate_induced_p4(graph: &BipartiteDigraph) -> Vec<P4> {
    let mut paths = Vec::new();
    for a in graph.vertices() {
        for b in graph.out_neighbors(a) {
            for c in graph.out_neighbors(b) {
                for d in graph.out_neighbors(c) {
                    // a != c and b != d hold automatically: no pair carries both directions.
                    if !graph.adjacent(a, d) {
                        paths.push(P4([a, b, c, d]));
                    }
                }
            }
        }
    }
    paths.sort();
    paths
}

pub fn classes2(graph: &BipartiteDigraph) -> BTreeMap<ClassKey2, Vec<P4>> {
    let mut classes: BTreeMap<ClassKey2, Vec<P4>> = BTreeMap::new();
    for p in enumerate_induced_p4(graph) {
        classes.entry(p.key2()).or_default().push(p);
    }
    classes
}

pub fn classes3(graph: &BipartiteDigraph) -> BTreeMap<ClassKey3, Vec<P4>> {
    let mut classes: BTreeMap<ClassKey3, Vec<P4>> = BTreeMap::new();
    for p in enumerate_induced_p4(graph) {
        classes.entry(p.key3()).or_default().push(p);
    }
    classes
}

/// The split of the graph around a vertex `u` used by the recursive
/// feedback-arc-set construction. "Opposite" means the side not containing
/// `u`; "own" means `u`'s side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    pub u: VertexRef,
    /// In-neighbours of `u`.
    pub in_nbrs: BTreeSet<VertexRef>,
    /// Out-neighbours of `u`.
    pub out_nbrs: BTreeSet<VertexRef>,
    /// Opposite-side vertices not adjacent to `u`.
    pub non_nbrs: BTreeSet<VertexRef>,
    /// Own-side vertices reached by an arc from `out_nbrs`.
    pub reached: BTreeSet<VertexRef>,
    /// Own-side vertices other than `u` not in `reached`.
    pub rest: BTreeSet<VertexRef>,
}

/// Index-level partition around `x_u`; opposite side is Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IndexPartition {
    pub u: usize,
    pub in_nbrs: Vec<usize>,
    pub out_nbrs: Vec<usize>,
    pub non_nbrs: Vec<usize>,
    pub reached: Vec<usize>,
    pub rest: Vec<usize>,
}

impl IndexPartition {
    pub(crate) fn around_x(graph: &BipartiteDigraph, u: usize) -> Self {
        let mut in_nbrs = Vec::new();
        let mut out_nbrs = Vec::new();
        let mut non_nbrs = Vec::new();
        for j in 0..graph.n() {
            match graph.orientation(u, j) {
                Orientation::ToX => in_nbrs.push(j),
                Orientation::ToY => out_nbrs.push(j),
                Orientation::Absent => non_nbrs.push(j),
            }
        }
        let (reached, rest) = (0..graph.m())
            .filter(|&i| i != u)
            .partition(|&i| out_nbrs.iter().any(|&j| graph.orientation(i, j) == Orientation::ToX));
        IndexPartition { u, in_nbrs, out_nbrs, non_nbrs, reached, rest }
    }

    /// Arcs from `reached` to `non_nbrs`, as `(x, y)` index pairs.
    pub(crate) fn cut_arcs(&self, graph: &BipartiteDigraph) -> Vec<(usize, usize)> {
        let mut cut = Vec::new();
        for &i in &self.reached {
            for &j in &self.non_nbrs {
                if graph.orientation(i, j) == Orientation::ToY {
                    cut.push((i, j));
                }
            }
        }
        cut
    }

    /// Number of absent pairs between `in_nbrs` and `reached`.
    pub(crate) fn absent_between(&self, graph: &BipartiteDigraph) -> usize {
        self.reached
            .iter()
            .map(|&i| self.in_nbrs.iter().filter(|&&j| graph.orientation(i, j) == Orientation::Absent).count())
            .sum()
    }
}

fn check_vertex(graph: &BipartiteDigraph, v: VertexRef) -> Result<(), GraphError> {
    if graph.contains(v) {
        Ok(())
    } else {
        Err(GraphError::OutOfRange(v))
    }
}

/// The graph with `v` moved to side X, and `v`'s index there.
fn normalized(graph: &BipartiteDigraph, v: VertexRef) -> (std::borrow::Cow<'_, BipartiteDigraph>, usize) {
    match v.side {
        Side::X => (std::borrow::Cow::Borrowed(graph), v.index),
        Side::Y => (std::borrow::Cow::Owned(graph.swap_sides()), v.index),
    }
}

pub fn partition_around(graph: &BipartiteDigraph, u: VertexRef) -> Result<NeighborhoodPartition, GraphError> {
    check_vertex(graph, u)?;
    let (g, ui) = normalized(graph, u);
    let p = IndexPartition::around_x(&g, ui);
    let own = u.side;
    let opp = own.opposite();
    let set = |side: Side, idx: &[usize]| idx.iter().map(|&k| VertexRef::new(side, k)).collect();
    Ok(NeighborhoodPartition {
        u,
        in_nbrs: set(opp, &p.in_nbrs),
        out_nbrs: set(opp, &p.out_nbrs),
        non_nbrs: set(opp, &p.non_nbrs),
        reached: set(own, &p.reached),
        rest: set(own, &p.rest),
    })
}

/// Closed form: arcs from `reached` to `non_nbrs` around `v`.
pub fn first_count(graph: &BipartiteDigraph, v: VertexRef) -> Result<usize, GraphError> {
    check_vertex(graph, v)?;
    let (g, vi) = normalized(graph, v);
    Ok(IndexPartition::around_x(&g, vi).cut_arcs(&g).len())
}

/// Closed form: absent pairs between `in_nbrs` and `reached` around `v`.
pub fn sec_count(graph: &BipartiteDigraph, v: VertexRef) -> Result<usize, GraphError> {
    check_vertex(graph, v)?;
    let (g, vi) = normalized(graph, v);
    Ok(IndexPartition::around_x(&g, vi).absent_between(&g))
}

/// Distinct second-equivalence classes of enumerated paths starting at `v`.
pub fn first_count_enumerated(graph: &BipartiteDigraph, v: VertexRef) -> Result<usize, GraphError> {
    check_vertex(graph, v)?;
    let keys: BTreeSet<ClassKey2> =
        enumerate_induced_p4(graph).iter().filter(|p| p.first() == v).map(P4::key2).collect();
    Ok(keys.len())
}

/// Distinct third-equivalence classes of enumerated paths with `v` second.
pub fn sec_count_enumerated(graph: &BipartiteDigraph, v: VertexRef) -> Result<usize, GraphError> {
    check_vertex(graph, v)?;
    let keys: BTreeSet<ClassKey3> =
        enumerate_induced_p4(graph).iter().filter(|p| p.second() == v).map(P4::key3).collect();
    Ok(keys.len())
}

/// Per-vertex counts from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCounts {
    pub vertex: VertexRef,
    pub first: usize,
    pub sec: usize,
}

/// Closed-form counts for every vertex, in label order.
pub fn vertex_counts(graph: &BipartiteDigraph) -> Vec<VertexCounts> {
    let swapped = graph.swap_sides();
    let count = |g: &BipartiteDigraph, side: Side, i: usize| {
        let p = IndexPartition::around_x(g, i);
        VertexCounts { vertex: VertexRef::new(side, i), first: p.cut_arcs(g).len(), sec: p.absent_between(g) }
    };
    (0..graph.m())
        .map(|i| count(graph, Side::X, i))
        .chain((0..graph.n()).map(|j| count(&swapped, Side::Y, j)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusSums {
    pub sum_first: usize,
    pub sum_sec: usize,
    /// Number of second-equivalence classes.
    pub count2: usize,
    /// Number of third-equivalence classes.
    pub count3: usize,
}

/// Sums of the closed-form counts next to the class counts from enumeration.
/// The two pairs are equal on every graph.
pub fn census_sums(graph: &BipartiteDigraph) -> CensusSums {
    let counts = vertex_counts(graph);
    let paths = enumerate_induced_p4(graph);
    let count2 = paths.iter().map(P4::key2).collect::<BTreeSet<_>>().len();
    let count3 = paths.iter().map(P4::key3).collect::<BTreeSet<_>>().len();
    CensusSums {
        sum_first: counts.iter().map(|c| c.first).sum(),
        sum_sec: counts.iter().map(|c| c.sec).sum(),
        count2,
        count3,
    }
}
