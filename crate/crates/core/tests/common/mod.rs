#![allow(dead_code)]

use std::collections::BTreeSet;

use bt_fas::gen::{random_bt, GenSpec};
use bt_fas::{Arc, BipartiteDigraph, Orientation, VertexRef};
use proptest::prelude::*;

pub fn four_cycle_bt() -> BipartiteDigraph {
    BipartiteDigraph::build(2, 2, [Arc::xy(0, 0), Arc::yx(0, 1), Arc::xy(1, 1), Arc::yx(1, 0)]).unwrap()
}

pub fn six_cycle() -> BipartiteDigraph {
    BipartiteDigraph::build(
        3,
        3,
        [Arc::xy(0, 0), Arc::yx(0, 1), Arc::xy(1, 1), Arc::yx(1, 2), Arc::xy(2, 2), Arc::yx(2, 0)],
    )
    .unwrap()
}

/// A random tournament with roughly `1 - keep` of its arcs deleted, using a
/// second tournament as the deletion mask.
pub fn random_partial(m: usize, n: usize, seed: u64, keep: f64) -> BipartiteDigraph {
    let t = random_bt(&GenSpec::new(m, n, seed));
    let mask = random_bt(&GenSpec::new(m, n, seed ^ 0x9e37_79b9_7f4a_7c15).with_bias(keep).unwrap());
    BipartiteDigraph::from_fn(m, n, |i, j| match mask.orientation(i, j) {
        Orientation::ToY => t.orientation(i, j),
        _ => Orientation::Absent,
    })
}

pub fn orientation_strategy() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::ToY), Just(Orientation::ToX), Just(Orientation::Absent)]
}

/// Any bipartite digraph with the given side-size bounds.
pub fn graph_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = BipartiteDigraph> {
    (0..=max_m, 0..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(orientation_strategy(), m * n)
            .prop_map(move |cells| BipartiteDigraph::from_fn(m, n, |i, j| cells[i * n + j]))
    })
}

/// Graphs whose total size `m + n` is at most `max_total`.
pub fn graph_strategy_total(max_total: usize) -> impl Strategy<Value = BipartiteDigraph> {
    graph_strategy(max_total, max_total).prop_filter("size", move |g| g.vertex_count() <= max_total)
}

pub fn tournament_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = BipartiteDigraph> {
    (0..=max_m, 0..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n).prop_map(move |bits| {
            BipartiteDigraph::from_fn(m, n, |i, j| if bits[i * n + j] { Orientation::ToY } else { Orientation::ToX })
        })
    })
}

/// Induced four-vertex paths by checking every ordered 4-tuple against the
/// textbook definition: consecutive arcs present, no arc in either direction
/// between any non-consecutive pair.
pub fn brute_force_p4(g: &BipartiteDigraph) -> BTreeSet<[VertexRef; 4]> {
    let vs: Vec<VertexRef> = g.vertices().collect();
    let joined = |a: VertexRef, b: VertexRef| g.has_arc(Arc::new(a, b)) || g.has_arc(Arc::new(b, a));
    let mut out = BTreeSet::new();
    for &a in &vs {
        for &b in &vs {
            for &c in &vs {
                for &d in &vs {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct
                        && g.has_arc(Arc::new(a, b))
                        && g.has_arc(Arc::new(b, c))
                        && g.has_arc(Arc::new(c, d))
                        && !joined(a, c)
                        && !joined(b, d)
                        && !joined(a, d)
                    {
                        out.insert([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// first(v) by definition: classes of paths agreeing on all but the second
/// vertex, counted among paths starting at `v`.
pub fn brute_force_first(g: &BipartiteDigraph, v: VertexRef) -> usize {
    brute_force_p4(g).iter().filter(|p| p[0] == v).map(|p| (p[0], p[2], p[3])).collect::<BTreeSet<_>>().len()
}

pub fn brute_force_sec(g: &BipartiteDigraph, v: VertexRef) -> usize {
    brute_force_p4(g).iter().filter(|p| p[1] == v).map(|p| (p[0], p[1], p[3])).collect::<BTreeSet<_>>().len()
}

/// `(first, sec)` for every vertex from a single pass over the paths.
pub fn brute_force_counts(g: &BipartiteDigraph) -> std::collections::BTreeMap<VertexRef, (usize, usize)> {
    let paths = brute_force_p4(g);
    let firsts: BTreeSet<_> = paths.iter().map(|p| (p[0], p[2], p[3])).collect();
    let secs: BTreeSet<_> = paths.iter().map(|p| (p[0], p[1], p[3])).collect();
    let mut counts: std::collections::BTreeMap<VertexRef, (usize, usize)> = g.vertices().map(|v| (v, (0, 0))).collect();
    for (a, _, _) in firsts {
        counts.get_mut(&a).unwrap().0 += 1;
    }
    for (_, b, _) in secs {
        counts.get_mut(&b).unwrap().1 += 1;
    }
    counts
}

/// Depth-first search for a directed cycle, independent of the library's
/// topological order.
pub fn has_cycle_dfs(g: &BipartiteDigraph) -> bool {
    fn visit(g: &BipartiteDigraph, v: VertexRef, state: &mut std::collections::HashMap<VertexRef, u8>) -> bool {
        state.insert(v, 1);
        for w in g.out_neighbors(v) {
            match state.get(&w).copied().unwrap_or(0) {
                1 => return true,
                0 if visit(g, w, state) => return true,
                _ => {}
            }
        }
        state.insert(v, 2);
        false
    }
    let mut state = std::collections::HashMap::new();
    g.vertices().any(|v| state.get(&v).copied().unwrap_or(0) == 0 && visit(g, v, &mut state))
}
