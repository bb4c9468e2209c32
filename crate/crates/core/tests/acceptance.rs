//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p rigikit-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rigikit_core::bounded::{bounded_components, is_bounded_by_augmentation, is_bounded_by_packing};
use rigikit_core::corpus;
use rigikit_core::decide::{conditions_report, decide_global_rigidity, decide_sparse, decide_with, verify};
use rigikit_core::exact::{int, Rational};
use rigikit_core::fixtures;
use rigikit_core::graph::{is_2connected, is_direction_balanced, MixedGraph};
use rigikit_core::matroid::{self, MatroidView, Settings};
use rigikit_core::oracle;
use rigikit_core::packing::{spanning_tree_packing, verify_certificate, PackingVerdict};
use rigikit_core::realize::{
    check_slope_solution, random_generic_framework, realize_from_slopes, rigidity_matrix, SlopeProblem,
};
use rigikit_core::reduce::{is_direction_irreducible, reduce_fully, replay};
use rigikit_core::{DecideOptions, Multigraph};

const CORPUS_SEED: u64 = 2024;
const RANDOM_GRAPHS: usize = 10_000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn s() -> Settings {
    Settings::default()
}

fn rank_oracle(corpus: &[MixedGraph]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for g in corpus {
        let fast = matroid::generic_rank(g, None, &s());
        let slow = oracle::rank_by_counts(g).expect("corpus is within guards");
        if fast != slow {
            mismatches.push(format!("{} (generic {fast}, counts {slow})", g.to_json()));
        }
    }
    let elapsed = start.elapsed();
    if !mismatches.is_empty() {
        return fail(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]));
    }
    if elapsed > Duration::from_secs(120) {
        return fail(format!("runtime {elapsed:.1?} exceeds 120 s"));
    }
    pass(format!("{} graphs agree, {elapsed:.1?}", corpus.len()))
}

fn dual_route_rank(random: &[MixedGraph]) -> Outcome {
    let mut checked = 0;
    for (i, g) in random.iter().take(1000).enumerate() {
        let fw = random_generic_framework(g, i as u64);
        let exact = match rigidity_matrix(&fw) {
            Ok(m) => m.rank(),
            Err(e) => return fail(format!("sample {i}: {e}")),
        };
        let generic = matroid::generic_rank(g, None, &s());
        if exact != generic {
            return fail(format!(
                "sample {i}: exact rank {exact}, generic rank {generic}: {}",
                g.to_json()
            ));
        }
        checked += 1;
    }
    pass(format!("{checked} frameworks agree"))
}

fn boundedness(corpus: &[MixedGraph]) -> Outcome {
    for g in corpus {
        if is_bounded_by_packing(g, &s()) != is_bounded_by_augmentation(g, &s()) {
            return fail(format!("routes disagree on {}", g.to_json()));
        }
    }
    let mut small = 0;
    for g in corpus.iter().filter(|g| g.vertex_count() <= 6) {
        let brute = match oracle::bounded_components_brute(g) {
            Ok(b) => b,
            Err(e) => return fail(format!("oracle failed on {}: {e}", g.to_json())),
        };
        if bounded_components(g, &s()).blocks != brute {
            return fail(format!("decomposition differs from brute force on {}", g.to_json()));
        }
        small += 1;
    }
    pass(format!(
        "routes agree on {} graphs; decomposition matches brute force on {small}",
        corpus.len()
    ))
}

fn packing_agrees(m: &Multigraph) -> Result<(), String> {
    let fast = spanning_tree_packing(m);
    verify_certificate(m, &fast).map_err(|e| format!("{:?}: {e}", m.pairs()))?;
    let brute = oracle::packing_brute(m).map_err(|e| e.to_string())?;
    if fast.verdict != brute.verdict {
        return Err(format!(
            "{:?}: fast {:?}, brute {:?}",
            m.pairs(),
            fast.verdict,
            brute.verdict
        ));
    }
    if fast.violator.is_some() != brute.violator.is_some() {
        return Err(format!("{:?}: violator presence differs", m.pairs()));
    }
    if brute.verdict == PackingVerdict::Neither && brute.deficit.is_none() {
        return Err(format!("{:?}: no deficient partition found", m.pairs()));
    }
    Ok(())
}

fn packing() -> Outcome {
    let mut count = 0;
    let mut check = |m: &Multigraph| -> Result<(), String> {
        count += 1;
        packing_agrees(m)
    };
    for n in 1..=6 {
        for m in corpus::exhaustive_simple(n, 12) {
            if let Err(e) = check(&m) {
                return fail(e);
            }
        }
    }
    for n in 2..=4 {
        for edges in 0..=8 {
            for m in corpus::exhaustive_multigraphs(n, edges) {
                if let Err(e) = check(&m) {
                    return fail(e);
                }
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for _ in 0..20_000 {
        let n = rng.random_range(2..=6);
        let edges = rng.random_range(0..=12);
        if let Err(e) = check(&corpus::random_multigraph(&mut rng, n, edges)) {
            return fail(e);
        }
    }
    pass(format!("{count} multigraphs agree, all certificates verify"))
}

fn decision_fixtures() -> Outcome {
    let mut problems = Vec::new();
    let yes = |name: &str, g: &MixedGraph, problems: &mut Vec<String>| {
        let v = decide_global_rigidity(g, &s());
        if !v.answer.is_yes() {
            problems.push(format!("{name}: expected YES, got {}", v.certificate.kind()));
        }
        if let Err(e) = verify(g, &v, &s()) {
            problems.push(format!("{name}: certificate fails: {e}"));
        }
    };
    yes("DIGON", &fixtures::digon(), &mut problems);
    yes("HAT", &fixtures::hat(), &mut problems);
    yes("MC5", &fixtures::mc5(), &mut problems);

    let hat_fast = decide_global_rigidity(&fixtures::hat(), &s());
    if hat_fast.trace.is_some() || hat_fast.certificate.kind() != "RigidWithOneLengthEdge" {
        problems.push("HAT: fast path not taken".into());
    }
    let slow = DecideOptions {
        use_single_length_fast_path: false,
        ..DecideOptions::default()
    };
    let hat_slow = decide_with(&fixtures::hat(), &slow);
    let reduced_to_digon = hat_slow.trace.as_ref().is_some_and(|t| t.result == fixtures::digon());
    if !hat_slow.answer.is_yes() || !reduced_to_digon {
        problems.push("HAT: reduction route does not reach DIGON with YES".into());
    }

    let lolly = decide_global_rigidity(&fixtures::lolly(), &s());
    if lolly.answer.is_yes() || lolly.certificate.kind() != "Not2Connected" {
        problems.push(format!("LOLLY: got {}", lolly.certificate.kind()));
    }
    for (name, g) in [
        ("TRI_L", fixtures::tri_l()),
        ("K4_L", fixtures::k4_l()),
        ("K4_D", fixtures::k4_d()),
        ("PEND", fixtures::pend()),
    ] {
        let v = decide_global_rigidity(&g, &s());
        if v.answer.is_yes() || !v.certificate.is_not_rigid() || matroid::is_rigid(&g, &s()) {
            problems.push(format!("{name}: expected a not-rigid NO, got {}", v.certificate.kind()));
        }
    }

    // BOWTIE_MIX: the answer must match its separately computed conditions.
    let bowtie = fixtures::bowtie_mix();
    let v = decide_global_rigidity(&bowtie, &s());
    let report = conditions_report(&bowtie, &s());
    let reduced = reduce_fully(&bowtie, &s()).result;
    let expected = report.rigid
        && (bowtie.len_count() == 1
            || (is_2connected(&reduced)
                && is_direction_balanced(&reduced)
                && matroid::is_redundantly_rigid(&reduced, &s())));
    let sparse = decide_sparse(&bowtie, &s()).map(|x| x.answer.is_yes());
    if v.answer.is_yes() != expected || sparse != Ok(expected) || verify(&bowtie, &v, &s()).is_err() {
        problems.push(format!(
            "BOWTIE_MIX: verdict {} disagrees with its conditions",
            v.certificate.kind()
        ));
    }
    let bowtie_answer = if v.answer.is_yes() { "YES" } else { "NO" };

    if problems.is_empty() {
        pass(format!(
            "all fixtures as expected; BOWTIE_MIX -> {bowtie_answer} ({})",
            v.certificate.kind()
        ))
    } else {
        fail(problems.join("; "))
    }
}

fn sparse_cross_check(corpus: &[MixedGraph]) -> Outcome {
    let mut checked = 0;
    for g in corpus.iter().filter(|g| g.edge_count() < 2 * g.vertex_count()) {
        let full = decide_global_rigidity(g, &s()).answer;
        let sparse = decide_sparse(g, &s()).expect("within the edge bound").answer;
        if full != sparse {
            return fail(format!("{}: full {:?}, sparse {:?}", g.to_json(), full, sparse));
        }
        checked += 1;
    }
    pass(format!("{checked} sparse graphs agree"))
}

fn m_connected_vs_redundant(corpus: &[MixedGraph]) -> Outcome {
    let mut checked = 0;
    let mut rigid = 0;
    let mut non_rigid_m_connected: Vec<&MixedGraph> = Vec::new();
    for g in corpus {
        if !(is_2connected(g) && is_direction_balanced(g) && is_direction_irreducible(g, &s())) {
            continue;
        }
        let m = MatroidView::new(g, &s()).is_m_connected();
        let rr = matroid::is_redundantly_rigid(g, &s());
        checked += 1;
        // Redundant rigidity implies M-connectivity on every graph.
        if rr && !m {
            return fail(format!("{}: redundantly rigid but not M-connected", g.to_json()));
        }
        if matroid::is_rigid(g, &s()) {
            rigid += 1;
            if m != rr {
                return fail(format!(
                    "{}: rigid, M-connected {m}, redundantly rigid {rr}",
                    g.to_json()
                ));
            }
        } else if m {
            non_rigid_m_connected.push(g);
        }
    }
    let mut detail = format!(
        "{checked} irreducible 2-connected balanced graphs: redundantly rigid implies M-connected on all, equivalence on all {rigid} rigid ones"
    );
    if !non_rigid_m_connected.is_empty() {
        let listed: Vec<String> = non_rigid_m_connected.iter().map(|g| g.to_json()).collect();
        detail += &format!(
            "; non-rigid M-connected graphs that are not redundantly rigid: {}",
            listed.join(" ")
        );
    }
    pass(detail)
}

fn cross_edge_bound(corpus: &[MixedGraph]) -> Outcome {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(CORPUS_SEED + 8);
    let mut sets = 0usize;
    let mut graphs = 0;
    for g in corpus.iter().filter(|g| matroid::direction_independent(g, &s())) {
        let dec = bounded_components(g, &s());
        let k = dec.blocks.len();
        if k < 2 {
            continue;
        }
        graphs += 1;
        let block_of: Vec<usize> = (0..g.vertex_count()).map(|v| dec.block_of(v)).collect();
        let masks: Vec<u64> = if k <= 10 {
            (0u64..1 << k).filter(|m| m.count_ones() >= 2).collect()
        } else {
            (0..256)
                .map(|_| rng.random::<u64>() & ((1 << k) - 1))
                .filter(|m| m.count_ones() >= 2)
                .collect()
        };
        for mask in masks {
            let inside = |b: usize| mask >> b & 1 == 1;
            let cross = g
                .edges()
                .iter()
                .filter(|e| {
                    let (a, b) = (block_of[e.u], block_of[e.v]);
                    a != b && inside(a) && inside(b)
                })
                .count();
            let size = mask.count_ones() as usize;
            if cross + 3 > 2 * size {
                return fail(format!("{}: {cross} cross edges among {size} blocks", g.to_json()));
            }
            sets += 1;
        }
    }
    pass(format!(
        "{sets} block sets in {graphs} direction-independent graphs within bound"
    ))
}

fn slope_realisation() -> Outcome {
    let start = Instant::now();
    let triangle = SlopeProblem::from_json(
        r#"{"vertices":["z0","x0","y0"],
            "edges":[{"u":"z0","v":"x0","slope":[0,1]},
                     {"u":"z0","v":"y0","slope":[1,1]},
                     {"u":"x0","v":"y0","slope":[-1,1]}],
            "x0":"x0","y0":"y0","z0":"z0","t2":[2,1]}"#,
    )
    .expect("valid instance");
    let r = match realize_from_slopes(&triangle, 0) {
        Ok(r) => r,
        Err(e) => return fail(format!("triangle: {e}")),
    };
    let expected = [("z0", [0, 0]), ("x0", [2, 0]), ("y0", [1, 1])];
    let exact = r.framework.as_ref().is_some_and(|fw| {
        expected
            .iter()
            .all(|(v, [x, y])| fw.point(v) == Some(&[int(*x), int(*y)]))
    });
    if !exact {
        return fail("triangle realisation differs from {(0,0),(2,0),(1,1)}");
    }
    for i in 0..100u64 {
        let n = 3 + (i as usize % 6);
        let problem = corpus::random_slope_problem(i, n);
        let a = match realize_from_slopes(&problem, i) {
            Ok(a) => a,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        if !check_slope_solution(&problem, &a.base.coords, &a.scale_squared) {
            return fail(format!("instance {i}: constraints violated"));
        }
        // A second solve with other randomness must give the same point up to sign.
        let b = realize_from_slopes(&problem, i + 1_000_000).expect("solved once already");
        let negated: Vec<[Rational; 2]> = b.base.coords.iter().map(|p| [-p[0].clone(), -p[1].clone()]).collect();
        if a != b || !(a.base.coords == b.base.coords || a.base.coords == negated) {
            return fail(format!("instance {i}: solutions differ beyond sign"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return fail(format!("runtime {elapsed:.1?} exceeds 10 s"));
    }
    pass(format!(
        "triangle exact; 100 tight instances exact and unique up to sign, {elapsed:.1?}"
    ))
}

fn reduction_soundness(corpus: &[MixedGraph]) -> Outcome {
    let hat = reduce_fully(&fixtures::hat(), &s());
    if hat.result != fixtures::digon() {
        return fail("reduce_fully(HAT) is not DIGON");
    }
    let mut steps = 0;
    for g in corpus {
        let trace = reduce_fully(g, &s());
        if let Err(e) = replay(g, &trace, &s()) {
            return fail(format!("{}: {e}", g.to_json()));
        }
        if trace.result.len_count() != g.len_count() {
            return fail(format!("{}: length edges changed", g.to_json()));
        }
        steps += trace.steps.len();
    }
    pass(format!(
        "{} traces with {steps} steps replay; HAT reduces to DIGON",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let corpus = corpus::standard_corpus(CORPUS_SEED, RANDOM_GRAPHS);
    let random: Vec<MixedGraph> = corpus.iter().filter(|g| g.vertex_count() >= 5).cloned().collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("rank oracle equivalence", Box::new(|| rank_oracle(&corpus))),
        ("dual-route rank", Box::new(|| dual_route_rank(&random))),
        (
            "boundedness routes and decomposition",
            Box::new(|| boundedness(&corpus)),
        ),
        ("packing certificates", Box::new(packing)),
        ("decision fixtures", Box::new(decision_fixtures)),
        ("sparse cross-check", Box::new(|| sparse_cross_check(&corpus))),
        (
            "M-connectivity vs redundant rigidity",
            Box::new(|| m_connected_vs_redundant(&corpus)),
        ),
        (
            "cross edges between bounded components",
            Box::new(|| cross_edge_bound(&corpus)),
        ),
        ("realisation from slopes", Box::new(slope_realisation)),
        ("reduction soundness", Box::new(|| reduction_soundness(&corpus))),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {name}: {} [{:.1?}]",
            i + 1,
            outcome.detail,
            start.elapsed()
        );
        failures += usize::from(!outcome.passed);
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
