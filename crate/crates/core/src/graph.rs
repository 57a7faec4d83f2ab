//! Dense bipartite digraphs.
//!
//! A [`BipartiteDigraph`] stores one [`Orientation`] per cross pair `(x_i, y_j)`,
//! so a pair can never carry both directions and same-side arcs cannot be
//! represented at all. Graphs are immutable: every operation that changes the
//! arc set returns a new graph.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A vertex handle: a side of the bipartition and a position within it.
///
/// The derived ordering (X before Y, then by index) is the label order used
/// for every deterministic tie-break in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub const fn new(side: Side, index: usize) -> Self {
        VertexRef { side, index }
    }

    pub const fn x(index: usize) -> Self {
        VertexRef { side: Side::X, index }
    }

    pub const fn y(index: usize) -> Self {
        VertexRef { side: Side::Y, index }
    }

    /// The same vertex after the two sides trade names.
    pub fn swapped(self) -> Self {
        VertexRef { side: self.side.opposite(), index: self.index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a vertex or arc label")]
pub struct ParseLabelError(pub String);

impl FromStr for VertexRef {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLabelError(s.to_string());
        let side = match s.as_bytes().first() {
            Some(b'x') => Side::X,
            Some(b'y') => Side::Y,
            _ => return Err(err()),
        };
        let digits = &s[1..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let index = digits.parse().map_err(|_| err())?;
        Ok(VertexRef { side, index })
    }
}

/// A directed edge. Arcs of a bipartite digraph always cross the bipartition;
/// [`BipartiteDigraph::build`] rejects arcs that do not.
///
/// Ordering is by tail then head, which puts X-tail arcs first sorted by
/// `(i, j)` and Y-tail arcs after them sorted by `(j, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: VertexRef,
    pub head: VertexRef,
}

impl Arc {
    pub const fn new(tail: VertexRef, head: VertexRef) -> Self {
        Arc { tail, head }
    }

    /// The arc `x_i -> y_j`.
    pub const fn xy(i: usize, j: usize) -> Self {
        Arc::new(VertexRef::x(i), VertexRef::y(j))
    }

    /// The arc `y_j -> x_i`.
    pub const fn yx(j: usize, i: usize) -> Self {
        Arc::new(VertexRef::y(j), VertexRef::x(i))
    }

    pub fn reversed(self) -> Self {
        Arc { tail: self.head, head: self.tail }
    }

    pub fn swapped(self) -> Self {
        Arc { tail: self.tail.swapped(), head: self.head.swapped() }
    }

    /// `(x index, y index, orientation)` of the pair this arc occupies, or
    /// `None` when both endpoints are on the same side.
    pub fn pair(self) -> Option<(usize, usize, Orientation)> {
        match (self.tail.side, self.head.side) {
            (Side::X, Side::Y) => Some((self.tail.index, self.head.index, Orientation::ToY)),
            (Side::Y, Side::X) => Some((self.head.index, self.tail.index, Orientation::ToX)),
            _ => None,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.tail, self.head)
    }
}

impl FromStr for Arc {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (tail, head) = s.split_once('>').ok_or_else(|| ParseLabelError(s.to_string()))?;
        Ok(Arc::new(tail.trim().parse()?, head.trim().parse()?))
    }
}

/// State of one cross pair `(x_i, y_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `x_i -> y_j`
    ToY,
    /// `y_j -> x_i`
    ToX,
    Absent,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::ToY => Orientation::ToX,
            Orientation::ToX => Orientation::ToY,
            Orientation::Absent => Orientation::Absent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("pair x{x}-y{y} is listed more than once")]
    DuplicatePair { x: usize, y: usize },
    #[error("vertex {0} is out of range")]
    OutOfRange(VertexRef),
    #[error("arc {0} joins two vertices on the same side")]
    SameSideArc(Arc),
    #[error("arc {0} is not present in the graph")]
    ArcNotPresent(Arc),
    #[error("vertex {0} appears more than once in the order")]
    RepeatedVertex(VertexRef),
}

/// An oriented bipartite graph with sides `X = {x_0..x_{m-1}}` and
/// `Y = {y_0..y_{n-1}}`, stored as a dense `m x n` orientation matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteDigraph {
    m: usize,
    n: usize,
    cells: Vec<Orientation>,
}

impl fmt::Debug for BipartiteDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs().map(|a| a.to_string()).collect();
        f.debug_struct("BipartiteDigraph").field("m", &self.m).field("n", &self.n).field("arcs", &arcs).finish()
    }
}

impl BipartiteDigraph {
    /// The arcless graph on `m + n` vertices.
    pub fn empty(m: usize, n: usize) -> Self {
        BipartiteDigraph { m, n, cells: vec![Orientation::Absent; m * n] }
    }

    /// Builds a graph from an arc list. Pairs not mentioned are absent.
    pub fn build(m: usize, n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        let mut graph = BipartiteDigraph::empty(m, n);
        for arc in arcs {
            let (x, y, orientation) = arc.pair().ok_or(GraphError::SameSideArc(arc))?;
            if x >= m {
                return Err(GraphError::OutOfRange(VertexRef::x(x)));
            }
            if y >= n {
                return Err(GraphError::OutOfRange(VertexRef::y(y)));
            }
            let cell = &mut graph.cells[x * n + y];
            if *cell != Orientation::Absent {
                return Err(GraphError::DuplicatePair { x, y });
            }
            *cell = orientation;
        }
        Ok(graph)
    }

    /// Builds a graph by asking `state(i, j)` for every pair, row by row.
    pub fn from_fn(m: usize, n: usize, mut state: impl FnMut(usize, usize) -> Orientation) -> Self {
        let mut cells = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                cells.push(state(i, j));
            }
        }
        BipartiteDigraph { m, n, cells }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    /// State of the pair `(x_i, y_j)`. Panics when out of range.
    pub fn orientation(&self, i: usize, j: usize) -> Orientation {
        assert!(i < self.m && j < self.n, "pair x{i}-y{j} out of range for {}x{}", self.m, self.n);
        self.cells[i * self.n + j]
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        match v.side {
            Side::X => v.index < self.m,
            Side::Y => v.index < self.n,
        }
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::X => self.m,
            Side::Y => self.n,
        }
    }

    pub fn has_arc(&self, arc: Arc) -> bool {
        match arc.pair() {
            Some((i, j, o)) if i < self.m && j < self.n => self.cells[i * self.n + j] == o,
            _ => false,
        }
    }

    /// Whether `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: VertexRef, v: VertexRef) -> bool {
        self.has_arc(Arc::new(u, v)) || self.has_arc(Arc::new(v, u))
    }

    /// All vertices in label order: `x_0..x_{m-1}` then `y_0..y_{n-1}`.
    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.m).map(VertexRef::x).chain((0..self.n).map(VertexRef::y))
    }

    /// All arcs in canonical order (see [`Arc`]).
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let forward = (0..self.m)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.cells[i * self.n + j] == Orientation::ToY)
            .map(|(i, j)| Arc::xy(i, j));
        let backward = (0..self.n)
            .flat_map(move |j| (0..self.m).map(move |i| (i, j)))
            .filter(|&(i, j)| self.cells[i * self.n + j] == Orientation::ToX)
            .map(|(i, j)| Arc::yx(j, i));
        forward.chain(backward)
    }

    pub fn arc_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != Orientation::Absent).count()
    }

    /// Number of cross pairs carrying no arc.
    pub fn lambda(&self) -> usize {
        self.cells.iter().filter(|&&c| c == Orientation::Absent).count()
    }

    /// A bipartite tournament orients every cross pair.
    pub fn is_tournament(&self) -> bool {
        self.lambda() == 0
    }

    pub fn out_neighbors(&self, v: VertexRef) -> Vec<VertexRef> {
        self.neighbors(v, true)
    }

    pub fn in_neighbors(&self, v: VertexRef) -> Vec<VertexRef> {
        self.neighbors(v, false)
    }

    fn neighbors(&self, v: VertexRef, outgoing: bool) -> Vec<VertexRef> {
        match v.side {
            Side::X => {
                let want = if outgoing { Orientation::ToY } else { Orientation::ToX };
                (0..self.n).filter(|&j| self.orientation(v.index, j) == want).map(VertexRef::y).collect()
            }
            Side::Y => {
                let want = if outgoing { Orientation::ToX } else { Orientation::ToY };
                (0..self.m).filter(|&i| self.orientation(i, v.index) == want).map(VertexRef::x).collect()
            }
        }
    }

    /// Every arc turned around.
    pub fn reverse(&self) -> Self {
        BipartiteDigraph { m: self.m, n: self.n, cells: self.cells.iter().map(|c| c.reversed()).collect() }
    }

    /// Exchanges the roles of X and Y, keeping indices: `x_i -> y_j` becomes
    /// `y_i -> x_j`.
    pub fn swap_sides(&self) -> Self {
        BipartiteDigraph::from_fn(self.n, self.m, |j, i| self.orientation(i, j).reversed())
    }

    /// The subgraph induced by the listed X and Y indices, with indices
    /// compacted in increasing order.
    pub fn induced_subgraph(
        &self,
        xs: impl IntoIterator<Item = usize>,
        ys: impl IntoIterator<Item = usize>,
    ) -> Result<Subgraph, GraphError> {
        let xs: Vec<usize> = xs.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let ys: Vec<usize> = ys.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&i) = xs.iter().find(|&&i| i >= self.m) {
            return Err(GraphError::OutOfRange(VertexRef::x(i)));
        }
        if let Some(&j) = ys.iter().find(|&&j| j >= self.n) {
            return Err(GraphError::OutOfRange(VertexRef::y(j)));
        }
        let graph = BipartiteDigraph::from_fn(xs.len(), ys.len(), |a, b| self.orientation(xs[a], ys[b]));
        Ok(Subgraph { graph, xs, ys })
    }

    /// Removes the given arcs, leaving their pairs absent.
    pub fn delete_arcs<'a>(&self, arcs: impl IntoIterator<Item = &'a Arc>) -> Result<Self, GraphError> {
        let mut out = self.clone();
        for &arc in arcs {
            if !out.has_arc(arc) {
                // Either never present or listed twice.
                return Err(GraphError::ArcNotPresent(arc));
            }
            let (i, j, _) = arc.pair().expect("present arcs cross the bipartition");
            out.cells[i * self.n + j] = Orientation::Absent;
        }
        Ok(out)
    }

    /// Kahn's algorithm, always removing the source with the smallest label.
    ///
    /// On failure returns a cycle found among the vertices that could not be
    /// ordered.
    pub fn topological_order(&self) -> Result<VertexOrder, Cycle> {
        let index_of = |v: VertexRef| match v.side {
            Side::X => v.index,
            Side::Y => self.m + v.index,
        };
        let mut in_degree: Vec<usize> = self.vertices().map(|v| self.in_neighbors(v).len()).collect();
        let mut ready: BinaryHeap<Reverse<VertexRef>> =
            self.vertices().filter(|&v| in_degree[index_of(v)] == 0).map(Reverse).collect();
        let mut sequence = Vec::with_capacity(self.vertex_count());
        while let Some(Reverse(v)) = ready.pop() {
            sequence.push(v);
            for w in self.out_neighbors(v) {
                let d = &mut in_degree[index_of(w)];
                *d -= 1;
                if *d == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if sequence.len() == self.vertex_count() {
            return Ok(VertexOrder::from_distinct(sequence));
        }

        // Every unordered vertex still has an unordered in-neighbour, so
        // walking backwards must revisit a vertex.
        let stuck: BTreeSet<VertexRef> = self.vertices().filter(|&v| in_degree[index_of(v)] > 0).collect();
        let mut walk = vec![*stuck.first().expect("unordered vertices remain")];
        let mut seen = HashMap::from([(walk[0], 0usize)]);
        loop {
            let cur = *walk.last().unwrap();
            let prev = self
                .in_neighbors(cur)
                .into_iter()
                .find(|p| stuck.contains(p))
                .expect("unordered vertex without unordered in-neighbour");
            if let Some(&start) = seen.get(&prev) {
                let mut cycle: Vec<VertexRef> = walk[start..].to_vec();
                cycle.reverse();
                return Err(Cycle::new(cycle));
            }
            seen.insert(prev, walk.len());
            walk.push(prev);
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Whether deleting `fas` leaves an acyclic graph. Every arc of `fas` must
    /// be present.
    pub fn is_feedback_arc_set<'a>(&self, fas: impl IntoIterator<Item = &'a Arc>) -> Result<bool, GraphError> {
        Ok(self.delete_arcs(fas)?.is_acyclic())
    }
}

/// An induced subgraph together with the map back to its parent's labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: BipartiteDigraph,
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl Subgraph {
    /// Parent X indices, in the order of the subgraph's X indices.
    pub fn x_indices(&self) -> &[usize] {
        &self.xs
    }

    pub fn y_indices(&self) -> &[usize] {
        &self.ys
    }

    pub fn to_parent(&self, v: VertexRef) -> VertexRef {
        match v.side {
            Side::X => VertexRef::x(self.xs[v.index]),
            Side::Y => VertexRef::y(self.ys[v.index]),
        }
    }

    pub fn arc_to_parent(&self, arc: Arc) -> Arc {
        Arc::new(self.to_parent(arc.tail), self.to_parent(arc.head))
    }
}

/// A linear order of distinct vertices; positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<VertexRef>,
    positions: HashMap<VertexRef, usize>,
}

impl VertexOrder {
    pub fn new(sequence: Vec<VertexRef>) -> Result<Self, GraphError> {
        let mut positions = HashMap::with_capacity(sequence.len());
        for (k, &v) in sequence.iter().enumerate() {
            if positions.insert(v, k + 1).is_some() {
                return Err(GraphError::RepeatedVertex(v));
            }
        }
        Ok(VertexOrder { sequence, positions })
    }

    fn from_distinct(sequence: Vec<VertexRef>) -> Self {
        let positions = sequence.iter().enumerate().map(|(k, &v)| (v, k + 1)).collect();
        VertexOrder { sequence, positions }
    }

    pub fn sequence(&self) -> &[VertexRef] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn position(&self, v: VertexRef) -> Option<usize> {
        self.positions.get(&v).copied()
    }

    /// `Some(true)` when the arc's head comes after its tail.
    pub fn is_forward(&self, arc: Arc) -> Option<bool> {
        Some(self.position(arc.tail)? < self.position(arc.head)?)
    }
}

/// A closed walk through distinct vertices; the last vertex links back to the
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle(Vec<VertexRef>);

impl Cycle {
    /// Rotates so the smallest label comes first.
    pub fn new(mut vertices: Vec<VertexRef>) -> Self {
        if let Some(k) = vertices.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(k, _)| k) {
            vertices.rotate_left(k);
        }
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| Arc::new(self.0[i], self.0[(i + 1) % k]))
    }

    /// Distinct vertices, length at least two, and every arc present.
    pub fn is_cycle_in(&self, graph: &BipartiteDigraph) -> bool {
        let distinct: BTreeSet<_> = self.0.iter().collect();
        self.0.len() >= 2 && distinct.len() == self.0.len() && self.arcs().all(|a| graph.has_arc(a))
    }
}

/// The 4-cycle `x_{x0} -> y_{y0} -> x_{x1} -> y_{y1} -> x_{x0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourCycle {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl FourCycle {
    pub const fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Self {
        FourCycle { x0, y0, x1, y1 }
    }

    pub fn vertices(&self) -> [VertexRef; 4] {
        [VertexRef::x(self.x0), VertexRef::y(self.y0), VertexRef::x(self.x1), VertexRef::y(self.y1)]
    }

    pub fn arcs(&self) -> [Arc; 4] {
        [Arc::xy(self.x0, self.y0), Arc::yx(self.y0, self.x1), Arc::xy(self.x1, self.y1), Arc::yx(self.y1, self.x0)]
    }

    /// The same cycle started at its smaller X vertex.
    pub fn canonical(self) -> Self {
        if self.x1 < self.x0 {
            FourCycle::new(self.x1, self.y1, self.x0, self.y0)
        } else {
            self
        }
    }

    /// Recovers a 4-cycle from its four arcs listed in cycle order, starting
    /// anywhere. The result is canonical.
    pub fn from_arcs(arcs: &[Arc]) -> Option<Self> {
        if arcs.len() != 4 || (0..4).any(|k| arcs[k].head != arcs[(k + 1) % 4].tail) {
            return None;
        }
        let start = arcs.iter().position(|a| a.tail.side == Side::X && a.head.side == Side::Y)?;
        let vs: Vec<VertexRef> = (0..4).map(|k| arcs[(start + k) % 4].tail).collect();
        let sides_ok = vs.iter().enumerate().all(|(k, v)| v.side == if k % 2 == 0 { Side::X } else { Side::Y });
        if !sides_ok || vs[0] == vs[2] || vs[1] == vs[3] {
            return None;
        }
        Some(FourCycle::new(vs[0].index, vs[1].index, vs[2].index, vs[3].index).canonical())
    }

    pub fn is_in(&self, graph: &BipartiteDigraph) -> bool {
        self.x0 != self.x1 && self.y0 != self.y1 && self.arcs().iter().all(|&a| graph.has_arc(a))
    }
}

impl fmt::Display for FourCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.vertices();
        write!(f, "{a}>{b}>{c}>{d}>{a}")
    }
}
