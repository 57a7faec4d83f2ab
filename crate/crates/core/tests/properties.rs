//! Invariants of every module, checked on generated graphs.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use bt_fas::c4free::{fas_c4free, fas_c4free_observed, find_4cycle, trim_acyclic_vertices};
use bt_fas::census::{
    census_sums, classes2, classes3, enumerate_induced_p4, first_count, first_count_enumerated, partition_around,
    sec_count, sec_count_enumerated,
};
use bt_fas::cli::format::{parse, render};
use bt_fas::engine::{check_outcome, solve, SolveOutcome};
use bt_fas::oracle::{all_4cycles, has_cycle_brute_force, max_c4_packing_exact, min_fas_exact};
use bt_fas::packing::{check_packing, greedy_pack};
use bt_fas::{Arc, BipartiteDigraph, Orientation, Side, VertexRef};
use common::*;
use proptest::prelude::*;

fn subset(g: &BipartiteDigraph, mask: &[bool]) -> Vec<Arc> {
    g.arcs().zip(mask.iter().cycle()).filter(|(_, &keep)| keep).map(|(a, _)| a).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lambda_counts_missing_arcs(g in graph_strategy(6, 6)) {
        prop_assert_eq!(g.lambda(), g.m() * g.n() - g.arcs().count());
        prop_assert_eq!(g.arc_count(), g.arcs().count());
        for i in 0..g.m() {
            for j in 0..g.n() {
                let states = [
                    g.has_arc(Arc::xy(i, j)),
                    g.has_arc(Arc::yx(j, i)),
                    g.orientation(i, j) == Orientation::Absent,
                ];
                prop_assert_eq!(states.iter().filter(|&&s| s).count(), 1);
            }
        }
    }

    #[test]
    fn feedback_sets_survive_reversal(g in graph_strategy(5, 5), mask in proptest::collection::vec(any::<bool>(), 1..8)) {
        let f = subset(&g, &mask);
        let fr: Vec<Arc> = f.iter().map(|a| a.reversed()).collect();
        prop_assert_eq!(g.is_feedback_arc_set(&f).unwrap(), g.reverse().is_feedback_arc_set(&fr).unwrap());
    }

    #[test]
    fn involutions_commute_with_subgraphs(
        g in graph_strategy(5, 5),
        xs in proptest::collection::btree_set(0usize..5, 0..5),
        ys in proptest::collection::btree_set(0usize..5, 0..5),
    ) {
        prop_assert_eq!(g.reverse().reverse(), g.clone());
        prop_assert_eq!(g.swap_sides().swap_sides(), g.clone());
        prop_assert_eq!(g.swap_sides().lambda(), g.lambda());
        let xs: BTreeSet<usize> = xs.into_iter().filter(|&i| i < g.m()).collect();
        let ys: BTreeSet<usize> = ys.into_iter().filter(|&j| j < g.n()).collect();
        let sub = g.induced_subgraph(xs.clone(), ys.clone()).unwrap().graph;
        prop_assert_eq!(g.reverse().induced_subgraph(xs.clone(), ys.clone()).unwrap().graph, sub.reverse());
        prop_assert_eq!(g.swap_sides().induced_subgraph(ys, xs).unwrap().graph, sub.swap_sides());
    }

    #[test]
    fn delete_arcs_adds_to_lambda(g in graph_strategy(5, 5), mask in proptest::collection::vec(any::<bool>(), 1..8)) {
        let f = subset(&g, &mask);
        prop_assert_eq!(g.delete_arcs(&f).unwrap().lambda(), g.lambda() + f.len());
    }

    #[test]
    fn topological_order_matches_dfs(g in graph_strategy_total(8)) {
        let cyclic = has_cycle_dfs(&g);
        prop_assert_eq!(cyclic, has_cycle_brute_force(&g));
        match g.topological_order() {
            Ok(order) => {
                prop_assert!(!cyclic);
                prop_assert_eq!(order.len(), g.vertex_count());
                for a in g.arcs() {
                    prop_assert!(order.position(a.tail) < order.position(a.head));
                }
            }
            Err(cycle) => {
                prop_assert!(cyclic);
                prop_assert!(cycle.is_cycle_in(&g));
            }
        }
    }

    #[test]
    fn p4_enumeration_matches_brute_force(g in graph_strategy_total(7)) {
        let fast: BTreeSet<[VertexRef; 4]> = enumerate_induced_p4(&g).into_iter().map(|p| p.0).collect();
        prop_assert_eq!(fast, brute_force_p4(&g));
        for p in enumerate_induced_p4(&g) {
            prop_assert!(p.is_induced_in(&g));
        }
    }

    #[test]
    fn class_laws(g in graph_strategy_total(7)) {
        let paths = enumerate_induced_p4(&g);
        let c2 = classes2(&g);
        let c3 = classes3(&g);
        prop_assert_eq!(c2.values().map(Vec::len).sum::<usize>(), paths.len());
        prop_assert_eq!(c3.values().map(Vec::len).sum::<usize>(), paths.len());
        for (i, p) in paths.iter().enumerate() {
            for q in &paths[i + 1..] {
                let differ: Vec<usize> = (0..4).filter(|&k| p.0[k] != q.0[k]).collect();
                prop_assert_eq!(p.key2() == q.key2(), differ == [1]);
                prop_assert_eq!(p.key3() == q.key3(), differ == [2]);
            }
        }
    }

    #[test]
    fn class_keys_correspond_under_reversal(g in graph_strategy_total(7)) {
        let c2 = classes2(&g);
        let c3r = classes3(&g.reverse());
        prop_assert_eq!(c2.len(), c3r.len());
        for (key, members) in &c2 {
            let mirrored = c3r.iter().find(|(k, _)| k.first == key.fourth && k.second == key.third && k.fourth == key.first);
            let (_, other) = mirrored.expect("class has a mirror");
            let reversed: BTreeSet<_> = members.iter().map(|p| p.reversed()).collect();
            let other: BTreeSet<_> = other.iter().copied().collect();
            prop_assert_eq!(reversed, other);
        }
    }

    #[test]
    fn counts_agree_everywhere(g in graph_strategy_total(7)) {
        let sums = census_sums(&g);
        let rev = census_sums(&g.reverse());
        prop_assert_eq!(sums.sum_first, sums.count2);
        prop_assert_eq!(sums.sum_sec, sums.count3);
        prop_assert_eq!(sums.sum_first, rev.sum_sec);
        prop_assert_eq!(sums.sum_sec, rev.sum_first);
        let swapped = g.swap_sides();
        let brute = brute_force_counts(&g);
        for v in g.vertices() {
            let first = first_count(&g, v).unwrap();
            let sec = sec_count(&g, v).unwrap();
            prop_assert_eq!(first, first_count_enumerated(&g, v).unwrap());
            prop_assert_eq!(sec, sec_count_enumerated(&g, v).unwrap());
            prop_assert_eq!(first, brute[&v].0);
            prop_assert_eq!(sec, brute[&v].1);
            prop_assert_eq!(first, first_count(&swapped, v.swapped()).unwrap());
            prop_assert_eq!(sec, sec_count(&swapped, v.swapped()).unwrap());
        }
    }

    #[test]
    fn partition_covers_both_sides(g in graph_strategy(5, 5)) {
        for u in g.vertices() {
            let p = partition_around(&g, u).unwrap();
            let opp = u.side.opposite();
            let opposite: BTreeSet<VertexRef> = (0..g.side_len(opp)).map(|k| VertexRef::new(opp, k)).collect();
            let own: BTreeSet<VertexRef> = (0..g.side_len(u.side)).map(|k| VertexRef::new(u.side, k)).collect();
            let union_opp: BTreeSet<_> = p.in_nbrs.iter().chain(&p.out_nbrs).chain(&p.non_nbrs).copied().collect();
            prop_assert_eq!(union_opp.len(), p.in_nbrs.len() + p.out_nbrs.len() + p.non_nbrs.len());
            prop_assert_eq!(union_opp, opposite);
            let union_own: BTreeSet<_> = p.reached.iter().chain(&p.rest).chain([&u]).copied().collect();
            prop_assert_eq!(union_own.len(), p.reached.len() + p.rest.len() + 1);
            prop_assert_eq!(union_own, own);
            prop_assert_eq!(p.in_nbrs, g.in_neighbors(u).into_iter().collect::<BTreeSet<_>>());
            prop_assert_eq!(p.out_nbrs, g.out_neighbors(u).into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn lemma_invariants_at_every_split(g in graph_strategy(6, 6)) {
        let g = greedy_pack(&g, None).residual;
        prop_assert!(find_4cycle(&g).is_none());
        let mut violations = Vec::new();
        let cert = fas_c4free_observed(&g, &mut |view| {
            let local = view.graph;
            let p = &view.partition;
            let u = p.u;
            if u.side != Side::X { violations.push("u not normalised to X".to_string()); }
            if view.first > view.sec { violations.push(format!("first {} > sec {}", view.first, view.sec)); }
            if view.cut.len() != first_count_enumerated(local, u).unwrap() {
                violations.push("cut size differs from enumerated first".into());
            }
            if view.sec != sec_count_enumerated(local, u).unwrap() {
                violations.push("sec differs from enumeration".into());
            }
            for x in &p.reached {
                for y in &p.in_nbrs {
                    if local.has_arc(Arc::new(*x, *y)) { violations.push(format!("arc {x}>{y} into in-neighbours")); }
                }
            }
            for y in &p.out_nbrs {
                for x in &p.rest {
                    if local.has_arc(Arc::new(*y, *x)) { violations.push(format!("arc {y}>{x} into rest")); }
                }
            }
            let size = local.vertex_count();
            if view.left.graph.vertex_count() >= size || view.right.graph.vertex_count() >= size {
                violations.push("no progress".into());
            }
            if p.in_nbrs.is_empty() || p.out_nbrs.is_empty() {
                violations.push("trimmed vertex without in- or out-neighbours".into());
            }
            let absent_between = p.in_nbrs.iter().flat_map(|a| p.reached.iter().map(move |c| (*a, *c)))
                .filter(|&(a, c)| !local.adjacent(a, c)).count();
            if local.lambda() < view.left.graph.lambda() + view.right.graph.lambda() + absent_between {
                violations.push("lambda accounting".into());
            }
        }).unwrap();
        prop_assert!(violations.is_empty(), "{:?}", violations);
        prop_assert!(cert.fas.len() <= g.lambda());
        prop_assert!(g.is_feedback_arc_set(&cert.fas).unwrap());
        for t in &cert.trace {
            prop_assert_eq!(t.cut, t.first);
            prop_assert!(t.first <= t.sec);
        }
        let rev = fas_c4free(&g.reverse()).unwrap();
        prop_assert!(rev.fas.len() <= g.lambda());
    }

    #[test]
    fn trimmed_vertices_lie_on_no_cycle(g in graph_strategy(5, 5)) {
        let (kept, removed) = trim_acyclic_vertices(&g);
        for v in kept.graph.vertices() {
            prop_assert!(!kept.graph.in_neighbors(v).is_empty() && !kept.graph.out_neighbors(v).is_empty());
        }
        // Cycles of the whole graph are exactly those of the kept part.
        prop_assert_eq!(has_cycle_dfs(&g), has_cycle_dfs(&kept.graph));
        prop_assert_eq!(removed.len() + kept.graph.vertex_count(), g.vertex_count());
    }

    #[test]
    fn greedy_packing_is_valid_and_maximal(g in graph_strategy(5, 5)) {
        let p = greedy_pack(&g, None);
        prop_assert!(check_packing(&g, &p.cycles).is_ok());
        prop_assert!(p.maximal);
        prop_assert!(find_4cycle(&p.residual).is_none());
        prop_assert!(all_4cycles(&p.residual).is_empty());
        prop_assert_eq!(p.residual.lambda(), g.lambda() + 4 * p.cycles.len());
        let used: HashSet<Arc> = p.cycles.iter().flat_map(|c| c.arcs()).collect();
        prop_assert_eq!(g.delete_arcs(&used).unwrap(), p.residual);
    }

    #[test]
    fn solve_dichotomy(t in tournament_strategy(6, 6), k in 0usize..6) {
        let outcome = solve(&t, k).unwrap();
        prop_assert!(check_outcome(&t, k, &outcome).is_ok(), "{:?}", check_outcome(&t, k, &outcome));
        if let SolveOutcome::Fas(out) = &outcome {
            let p = out.packing.len();
            prop_assert!(p < k);
            prop_assert!(out.lemma_part.len() <= 4 * p);
            prop_assert!(out.backward_part.len() <= 3 * p);
            prop_assert!(all_4cycles(&greedy_pack(&t, None).residual).is_empty());
            let rest = t.delete_arcs(&out.fas).unwrap();
            for a in rest.arcs() {
                prop_assert_eq!(out.order.is_forward(a), Some(true));
            }
        }
    }

    #[test]
    fn oracles_sandwich_heuristics(g in graph_strategy_total(8)) {
        let min = min_fas_exact(&g).unwrap();
        prop_assert_eq!(min.witness.len(), min.value);
        prop_assert!(g.is_feedback_arc_set(&min.witness).unwrap());
        let best = max_c4_packing_exact(&g).unwrap();
        prop_assert!(check_packing(&g, &best.witness).is_ok());
        let greedy = greedy_pack(&g, None);
        prop_assert!(greedy.cycles.len() <= best.value);
        prop_assert_eq!(greedy.cycles.is_empty(), best.value == 0);
        let stripped = greedy.residual;
        let lemma = fas_c4free(&stripped).unwrap();
        prop_assert!(min_fas_exact(&stripped).unwrap().value <= lemma.fas.len());
        if g.is_tournament() {
            for k in 1..4 {
                if let SolveOutcome::Fas(out) = solve(&g, k).unwrap() {
                    prop_assert!(min.value <= out.fas.len());
                }
            }
        }
    }

    #[test]
    fn min_fas_matches_order_enumeration(g in graph_strategy_total(6)) {
        // Independent of the subset program: try every permutation.
        let vs: Vec<VertexRef> = g.vertices().collect();
        let mut best = usize::MAX;
        let mut perm: Vec<usize> = (0..vs.len()).collect();
        permute(&mut perm, 0, &mut |p| {
            let pos: BTreeMap<VertexRef, usize> = p.iter().enumerate().map(|(k, &i)| (vs[i], k)).collect();
            let back = g.arcs().filter(|a| pos[&a.tail] > pos[&a.head]).count();
            best = best.min(back);
        });
        if vs.is_empty() { best = 0; }
        prop_assert_eq!(min_fas_exact(&g).unwrap().value, best);
    }

    #[test]
    fn instance_text_round_trips(g in graph_strategy(6, 6)) {
        let text = render(&g);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(render(&back), text);
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

#[test]
fn four_cycle_free_tournaments_are_acyclic() {
    let mut free = 0;
    for t in bt_fas::gen::enumerate_bt(3, 3).unwrap() {
        if find_4cycle(&t).is_none() {
            free += 1;
            assert!(t.is_acyclic());
            assert!(fas_c4free(&t).unwrap().fas.is_empty());
        } else {
            assert!(!t.is_acyclic());
        }
    }
    assert!(free > 0);
}

#[test]
fn max_packing_agrees_with_brute_force_on_small_tournaments() {
    // Exhaustive over subsets of the cycle list.
    for t in bt_fas::gen::enumerate_bt(3, 3).unwrap().step_by(7) {
        let cycles = all_4cycles(&t);
        let mut best = 0;
        for mask in 0u32..1 << cycles.len() {
            let chosen: Vec<_> = (0..cycles.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cycles[i]).collect();
            if check_packing(&t, &chosen).is_ok() {
                best = best.max(chosen.len());
            }
        }
        assert_eq!(max_c4_packing_exact(&t).unwrap().value, best);
    }
}

#[test]
fn all_4cycles_matches_quadruple_loop() {
    for seed in 0..50 {
        let t = bt_fas::gen::random_bt(&bt_fas::gen::GenSpec::new(3, 3, seed));
        let mut count = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if a < c
                            && b != d
                            && t.has_arc(Arc::xy(a, b))
                            && t.has_arc(Arc::yx(b, c))
                            && t.has_arc(Arc::xy(c, d))
                            && t.has_arc(Arc::yx(d, a))
                        {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(all_4cycles(&t).len(), count);
    }
}

#[test]
fn random_partial_instances_are_well_formed() {
    let g = random_partial(6, 5, 3, 0.7);
    assert_eq!((g.m(), g.n()), (6, 5));
    assert!(g.lambda() > 0);
    assert_eq!(g, random_partial(6, 5, 3, 0.7));
}
