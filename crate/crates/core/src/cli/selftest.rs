//! Exhaustive checks over all small bipartite tournaments.

use rayon::prelude::*;
use serde::Serialize;

use crate::c4free::{fas_c4free, find_4cycle};
use crate::census::{census_sums, first_count_enumerated, sec_count_enumerated, vertex_counts};
use crate::engine::{check_outcome, solve};
use crate::gen::enumerate_bt;
use crate::graph::BipartiteDigraph;
use crate::oracle::{has_cycle_brute_force, max_c4_packing_exact, min_fas_exact};

/// Largest `k` passed to `solve` for each instance.
const MAX_K: usize = 5;

#[derive(Debug, Serialize)]
pub(crate) struct SelftestReport {
    mode: &'static str,
    instances: usize,
    checks: usize,
    pub(crate) failures: Vec<String>,
}

pub(crate) fn run(max_side: usize) -> SelftestReport {
    let instances: Vec<BipartiteDigraph> =
        (1..=max_side).flat_map(|s| enumerate_bt(s, s).expect("sides up to 3 enumerate")).collect();
    let results: Vec<(usize, Vec<String>)> = instances.par_iter().map(check_instance).collect();
    let failures: Vec<String> = results.iter().flat_map(|(_, f)| f.iter().cloned()).collect();
    SelftestReport {
        mode: "selftest",
        instances: instances.len(),
        checks: results.iter().map(|(c, _)| c).sum(),
        failures,
    }
}

fn check_instance(t: &BipartiteDigraph) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(format!("{what} on {t:?}"));
        }
    };

    expect(t.is_acyclic() != has_cycle_brute_force(t), "topological order disagrees with brute force".into());

    for k in 0..=MAX_K {
        match solve(t, k) {
            Ok(outcome) => {
                let verdict = check_outcome(t, k, &outcome);
                expect(verdict.is_ok(), format!("solve k={k}: {verdict:?}"));
            }
            Err(e) => expect(false, format!("solve k={k} failed: {e}")),
        }
    }

    if find_4cycle(t).is_none() {
        match fas_c4free(t) {
            Ok(cert) => {
                let ok = cert.fas.len() <= t.lambda() && t.is_feedback_arc_set(&cert.fas).unwrap_or(false);
                expect(ok, "4-cycle-free feedback arc set".into());
            }
            Err(e) => expect(false, format!("fas_c4free failed: {e}")),
        }
    }

    let sums = census_sums(t);
    let reversed = census_sums(&t.reverse());
    expect(sums.sum_first == sums.count2 && sums.sum_sec == sums.count3, format!("class sums {sums:?}"));
    expect(
        sums.sum_first == reversed.sum_sec && sums.sum_sec == reversed.sum_first,
        format!("reversal sums {sums:?} vs {reversed:?}"),
    );
    for c in vertex_counts(t) {
        let enumerated = (first_count_enumerated(t, c.vertex), sec_count_enumerated(t, c.vertex));
        expect(enumerated == (Ok(c.first), Ok(c.sec)), format!("closed form at {}", c.vertex));
    }

    match (min_fas_exact(t), max_c4_packing_exact(t)) {
        (Ok(fas), Ok(packing)) => {
            expect(fas.value <= 7 * packing.value, format!("min fas {} vs packing {}", fas.value, packing.value));
        }
        _ => expect(false, "oracle refused a small instance".into()),
    }
    (checks, failures)
}
