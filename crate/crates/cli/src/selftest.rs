//! Agreement between the fast algorithms and the brute-force oracles on the
//! fixtures, every graph on at most three vertices and a seeded random
//! corpus.

use serde_json::{json, Value};

use rigikit_core::graph::{cut_witness, is_direction_balanced};
use rigikit_core::packing::verify_certificate;
use rigikit_core::reduce::replay;
use rigikit_core::{
    bounded_components, corpus, decide_global_rigidity, fixtures, generic_rank, oracle, reduce_fully,
    spanning_tree_packing, verify, MixedGraph, Settings,
};

use crate::{Report, EXIT_INTERNAL, EXIT_YES};

struct Check {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

fn check(name: &'static str, graphs: &[MixedGraph], test: impl Fn(&MixedGraph) -> Result<bool, String>) -> Check {
    let mut checked = 0;
    for g in graphs {
        match test(g) {
            Ok(true) => checked += 1,
            Ok(false) => {}
            Err(e) => {
                return Check {
                    name,
                    checked,
                    failure: Some(format!("{}: {e}", g.to_json())),
                }
            }
        }
    }
    Check {
        name,
        checked,
        failure: None,
    }
}

fn agree<T: PartialEq + std::fmt::Debug>(fast: T, slow: T) -> Result<bool, String> {
    if fast == slow {
        Ok(true)
    } else {
        Err(format!("fast {fast:?}, oracle {slow:?}"))
    }
}

pub fn run(s: &Settings, count: usize) -> Report {
    let mut graphs: Vec<MixedGraph> = fixtures::all().into_iter().map(|(_, g)| g).collect();
    graphs.extend(corpus::exhaustive_up_to(3));
    graphs.extend(corpus::random_corpus(s.seed, count, 5, 7, 14));

    let mut checks = vec![
        check("rank", &graphs, |g| {
            agree(
                generic_rank(g, None, s),
                oracle::rank_by_counts(g).map_err(|e| e.to_string())?,
            )
        }),
        check("bounded components", &graphs, |g| {
            if g.vertex_count() > oracle::MAX_BRUTE_VERTICES {
                return Ok(false);
            }
            let brute = oracle::bounded_components_brute(g).map_err(|e| e.to_string())?;
            agree(bounded_components(g, s).blocks, brute)
        }),
        check("2-connectivity", &graphs, |g| {
            agree(cut_witness(g).is_none(), oracle::is_2connected_brute(g))
        }),
        check("direction balance", &graphs, |g| {
            let brute = oracle::direction_balanced_brute(g).map_err(|e| e.to_string())?;
            agree(is_direction_balanced(g), brute)
        }),
        check("reduction replay", &graphs, |g| {
            replay(g, &reduce_fully(g, s), s)
                .map(|_| true)
                .map_err(|e| e.to_string())
        }),
        check("certificates", &graphs, |g| {
            verify(g, &decide_global_rigidity(g, s), s).map(|_| true)
        }),
    ];

    let mut packed = 0;
    let mut packing_failure = None;
    'outer: for edges in 0..=7 {
        for m in corpus::exhaustive_multigraphs(4, edges) {
            let fast = spanning_tree_packing(&m);
            let result = verify_certificate(&m, &fast).and_then(|_| {
                let brute = oracle::packing_brute(&m).map_err(|e| e.to_string())?;
                agree(fast.verdict, brute.verdict).map(|_| ())
            });
            if let Err(e) = result {
                packing_failure = Some(format!("{:?}: {e}", m.pairs()));
                break 'outer;
            }
            packed += 1;
        }
    }
    checks.push(Check {
        name: "spanning tree packing",
        checked: packed,
        failure: packing_failure,
    });

    let passed = checks.iter().all(|c| c.failure.is_none());
    let mut text = String::new();
    let mut entries: Vec<Value> = Vec::new();
    for c in &checks {
        let status = if c.failure.is_none() { "PASS" } else { "FAIL" };
        text += &format!("{status} {}: {} inputs", c.name, c.checked);
        if let Some(f) = &c.failure {
            text += &format!("; first failure {f}");
        }
        text.push('\n');
        entries.push(
            json!({ "check": c.name, "passed": c.failure.is_none(), "checked": c.checked, "failure": c.failure }),
        );
    }
    Report {
        json: json!({ "passed": passed, "graphs": graphs.len(), "checks": entries }),
        text,
        code: if passed { EXIT_YES } else { EXIT_INTERNAL },
    }
}
