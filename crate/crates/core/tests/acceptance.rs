//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qi_core::constructions::{families, orient, partial_vertex_split, subdivide, vertex_split, OrientMode};
use qi_core::graph::{chromatic_number_exact, girth, is_geodesic, DistanceMatrix};
use qi_core::oriented::{find_pattern, gallai_roy_directed, Dir, PathPattern, PatternSearch, DEFAULT_SEARCH_BUDGET};
use qi_core::qi::{check_quasi_isometry, VertexMap};
use qi_core::solver::{self, LpOptions, Status};
use qi_core::witness::{refute_weighting, verify_certificate, CertificateCase, RefuteOptions};
use qi_core::{EdgeWeighting, Execution, Graph, Path};
use rand::Rng;

use common::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (t <= limit, format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

/// A 3-edge path mapped into a 6-edge path by `i ↦ 2i`.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = families::path(4);
    let h = families::path(7);
    let map = VertexMap::new(vec![0, 2, 4, 6], 7).unwrap();
    let at_2_0 = check_quasi_isometry(&g, None, &h, None, &map, 2.0, 0.0).unwrap();
    let at_1_2 = check_quasi_isometry(&g, None, &h, None, &map, 1.0, 2.0).unwrap();
    let (fast, t) = within(Duration::from_secs(1), start);
    outcome(
        at_2_0.verdict && !at_1_2.verdict && fast,
        format!(
            "(2,0) verdict={} [upper={:?}, lower={:?}, surjectivity radius={}]; (1,2) verdict={}; {t}",
            at_2_0.verdict,
            at_2_0.upper_violation.is_some(),
            at_2_0.lower_violation.is_some(),
            at_2_0.surjectivity_radius,
            at_1_2.verdict
        ),
    )
}

/// Connected graphs with `n ≤ 40`, each with a random orientation.
fn split_corpus() -> Vec<(Graph, qi_core::constructions::Orientation)> {
    let mut rng = rng(0x5eed_0002);
    (0..240)
        .map(|i| {
            let n = rng.gen_range(2..=40);
            let p = [0.0, 0.03, 0.08, 0.2, 0.5][i % 5];
            let g = random_connected(&mut rng, n, p);
            let o = random_orientation(&mut rng, &g);
            (g, o)
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let corpus = split_corpus();
    let mut pairs = 0u64;
    let mut violations = 0u64;
    for (h, o) in &corpus {
        let s = vertex_split(h, o).unwrap();
        let dg = DistanceMatrix::hops(&s.split_graph).unwrap();
        let dh = DistanceMatrix::hops(h).unwrap();
        let n = s.split_graph.vertex_count();
        for x in 0..n {
            for y in x + 1..n {
                let d_g = dg.get(x, y);
                let d_h = dh.get(s.projection.apply(x), s.projection.apply(y));
                pairs += 1;
                if !(d_h <= d_g && d_g <= 2.0 * d_h + 1.0) {
                    violations += 1;
                }
            }
        }
    }
    let (fast, t) = within(Duration::from_secs(60), start);
    outcome(
        violations == 0 && fast,
        format!("{} graphs, {pairs} pairs, {violations} violations; {t}", corpus.len()),
    )
}

fn criterion_3() -> Outcome {
    let corpus = split_corpus();
    let mut forests = 0;
    let mut violations = 0;
    for (h, o) in &corpus {
        let s = vertex_split(h, o).unwrap();
        match (girth(h), girth(&s.split_graph)) {
            (None, None) => forests += 1,
            (Some(a), Some(b)) if b >= a => {}
            _ => violations += 1,
        }
    }
    outcome(
        violations == 0,
        format!("{} graphs ({forests} forests), {violations} violations", corpus.len()),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(0x5eed_0004);
    let (mut graphs, mut orientations, mut failures) = (0, 0, 0);
    while graphs < 120 {
        let n = rng.gen_range(1..=18);
        let p = rng.gen_range(0.1..0.9);
        let g = gnp(&mut rng, n, p);
        let chi = chromatic_number_exact(&g, 18).unwrap();
        graphs += 1;
        for _ in 0..5 {
            let o = random_orientation(&mut rng, &g);
            let w = gallai_roy_directed(&g, &o).unwrap();
            orientations += 1;
            if !(w.is_directed_path(&g, &o) && w.hop_length() + 1 >= chi) {
                failures += 1;
            }
        }
    }
    let (fast, t) = within(Duration::from_secs(120), start);
    outcome(
        failures == 0 && fast,
        format!("{graphs} graphs, {orientations} orientations, {failures} failures; {t}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = rng(0x5eed_0005);
    let (mut searched, mut absent, mut violations, mut undecided) = (0, 0, 0, 0);
    for i in 0..400 {
        let n = rng.gen_range(2..=14);
        let p = [0.15, 0.3, 0.5, 0.8, 1.0][i % 5];
        let g = gnp(&mut rng, n, p);
        let o = random_orientation(&mut rng, &g);
        let k = rng.gen_range(2..=6usize);
        let dirs: Vec<Dir> = (0..k - 1)
            .map(|_| if rng.gen() { Dir::Forward } else { Dir::Backward })
            .collect();
        let pattern = PathPattern::new(dirs).unwrap();
        searched += 1;
        match find_pattern(&g, &o, &pattern, DEFAULT_SEARCH_BUDGET).unwrap() {
            PatternSearch::Found { witness } => assert!(witness.realizes(&g, &o, &pattern)),
            PatternSearch::Exhausted => {
                absent += 1;
                let chi = chromatic_number_exact(&g, 14).unwrap();
                if chi > k * k {
                    violations += 1;
                }
            }
            PatternSearch::BudgetExceeded => undecided += 1,
        }
    }
    outcome(
        violations == 0,
        format!("{searched} searches, {absent} proven absent, {undecided} over budget, {violations} violations"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = rng(0x5eed_0006);
    let weights = ["0.5", "1", "1", "1.5", "2", "2.5", "3", "4"];
    let (mut instances, mut certs, mut bad_certs, mut disagreements, mut over_budget) = (0, 0, 0, 0, 0);
    for i in 0..1200 {
        let n = rng.gen_range(2..=12);
        let p = [0.0, 0.1, 0.25][i % 3];
        let h = random_connected(&mut rng, n, p);
        let o = random_orientation(&mut rng, &h);
        let w = if i % 4 == 0 {
            EdgeWeighting::unit(&h)
        } else {
            random_weights(&mut rng, &h, &weights)
        };
        let c = rng.gen_range(0..=3u32);
        let s = vertex_split(&h, &o).unwrap();
        let report = refute_weighting(&s, &h, &o, &w, c, &RefuteOptions::default()).unwrap();
        instances += 1;
        if report.metadata.budget_exceeded {
            over_budget += 1;
        }
        let passes = solver::verify_weighting(&s, &h, c, &w).unwrap();
        match &report.certificate {
            Some(cert) => {
                certs += 1;
                if !verify_certificate(&s, &h, &w, c, cert) {
                    bad_certs += 1;
                }
                if passes {
                    disagreements += 1;
                }
            }
            None if !passes => disagreements += 1,
            None => {}
        }
    }
    outcome(
        bad_certs == 0 && disagreements == 0,
        format!(
            "{instances} instances, {certs} certificates, {bad_certs} invalid, {disagreements} disagreements with the verifier, {over_budget} searches over budget"
        ),
    )
}

fn criterion_7() -> Outcome {
    let opts = RefuteOptions::default();
    // directed path with 8C + 1 vertices, C = 2, unit weights
    let h = families::path(17);
    let o = orient(&h, OrientMode::LowToHigh);
    let s = vertex_split(&h, &o).unwrap();
    let w = EdgeWeighting::unit(&h);
    let directed = refute_weighting(&s, &h, &o, &w, 2, &opts).unwrap().certificate;
    let d_ok = directed.as_ref().is_some_and(|c| {
        c.case == CertificateCase::LightDirected
            && c.d_g == 16.0
            && c.d_hw == 8.0
            && c.d_hw <= 12.0
            && verify_certificate(&s, &h, &w, 2, c)
    });
    // alternating path with 4C + 1 vertices, C = 1, weights 2
    let h2 = families::path(5);
    let o2 = alternating_path_orientation(&h2);
    let s2 = vertex_split(&h2, &o2).unwrap();
    let w2 = EdgeWeighting::constant(&h2, 2.0).unwrap();
    let alternating = refute_weighting(&s2, &h2, &o2, &w2, 1, &opts).unwrap().certificate;
    let a_ok = alternating.as_ref().is_some_and(|c| {
        c.case == CertificateCase::HeavyAlternating
            && c.d_g == 4.0
            && c.d_hw == 8.0
            && c.d_hw >= 6.0
            && verify_certificate(&s2, &h2, &w2, 1, c)
    });
    let show = |c: &Option<qi_core::witness::RefutationCertificate>| match c {
        Some(c) => format!("{:?} d_G={} d_Hw={}", c.case, c.d_g, c.d_hw),
        None => "none".to_string(),
    };
    outcome(
        d_ok && a_ok,
        format!("directed: {}; alternating: {}", show(&directed), show(&alternating)),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let grid = [0.5, 1.0, 1.5, 2.0, 2.5];
    let graphs: Vec<Graph> = connected_graphs_up_to_iso(5, 6)
        .into_iter()
        .filter(|g| g.edge_count() >= 1)
        .collect();
    let mut rng = rng(0x5eed_0008);
    let (mut runs, mut contradictions, mut unverified) = (0, 0, 0);
    let (mut lp_sat, mut lp_unsat, mut lp_unknown, mut grid_sat, mut off_grid) = (0, 0, 0, 0, 0);
    let lp = LpOptions::default();
    for h in &graphs {
        let mut orientations = vec![orient(h, OrientMode::LowToHigh)];
        orientations.extend((0..2).map(|_| random_orientation(&mut rng, h)));
        for o in &orientations {
            let s = vertex_split(h, o).unwrap();
            for c in 0..=2u32 {
                runs += 1;
                let brute = solver::solve_bruteforce(&s, h, c, &grid, 6, Execution::default()).unwrap();
                let lp_out = solver::solve_lp(&s, h, c, &lp).unwrap();
                let brute_sat = brute.status == Status::Sat;
                grid_sat += usize::from(brute_sat);
                for out in [&brute, &lp_out] {
                    if let Some(w) = out.weighting(h).unwrap() {
                        if !solver::verify_weighting(&s, h, c, &w).unwrap() {
                            unverified += 1;
                        }
                    }
                }
                match lp_out.status {
                    Status::Sat => {
                        lp_sat += 1;
                        off_grid += usize::from(!brute_sat);
                    }
                    Status::Unsat => {
                        lp_unsat += 1;
                        contradictions += usize::from(brute_sat);
                    }
                    Status::Unknown => lp_unknown += 1,
                }
            }
        }
    }
    let (fast, t) = within(Duration::from_secs(600), start);
    outcome(
        contradictions == 0 && unverified == 0 && fast,
        format!(
            "{} graphs, {runs} runs; grid SAT {grid_sat}; LP SAT {lp_sat} ({off_grid} off-grid), UNSAT {lp_unsat}, UNKNOWN {lp_unknown}; {contradictions} contradictions, {unverified} unverified weightings; {t}",
            graphs.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = rng(0x5eed_0009);
    let mut hosts: Vec<Graph> = vec![
        families::path(2),
        families::cycle(3).unwrap(),
        families::cycle(5).unwrap(),
        families::complete(4),
        families::star(5),
        families::petersen(),
        families::complete_bipartite(3, 3),
    ];
    hosts.extend((0..25).map(|_| {
        let n = rng.gen_range(2..=10);
        random_connected(&mut rng, n, 0.25)
    }));
    let (mut checks, mut failures) = (0, 0);
    let mut worst = 0.0f64;
    for h in &hosts {
        let sub = subdivide(h, 2).unwrap();
        for mode in [
            OrientMode::LowToHigh,
            OrientMode::Random { seed: rng.gen() },
            OrientMode::Random { seed: rng.gen() },
        ] {
            let o = orient(&sub.graph, mode);
            let branch: Vec<bool> = (0..sub.graph.vertex_count()).map(|v| v < sub.branch_count).collect();
            let s = partial_vertex_split(&sub.graph, &o, &branch).unwrap();
            let report = check_quasi_isometry(&s.split_graph, None, &sub.graph, None, &s.projection, 1.5, 1.0).unwrap();
            checks += 1;
            worst = worst.max(report.tight_c_for_l);
            if !report.verdict {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!(
            "{} hosts, {checks} maps, {failures} failures, largest tight C at L=1.5: {worst}",
            hosts.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut cases: Vec<(String, Graph)> = Vec::new();
    for g in 3..=8 {
        cases.push((format!("cubic cage of girth {g}"), families::cubic_cage(g).unwrap()));
    }
    for t in 1..=7 {
        cases.push((
            format!("K4 subdivided {t}x"),
            subdivide(&families::complete(4), t).unwrap().graph,
        ));
    }
    cases.push(("Grötzsch".into(), families::grotzsch()));
    cases.push(("C21".into(), families::cycle(21).unwrap()));
    let mut sampled = 0;
    for seed in 0..6u64 {
        let s = qi_core::constructions::random_high_girth(60, 0.06, 7, seed).unwrap();
        cases.push((format!("random girth sample {seed}"), s.graph));
        sampled += 1;
    }
    let (mut paths, mut violations, mut max_ell) = (0u64, 0u64, 0);
    for (_, g) in &cases {
        let Some(gth) = girth(g) else { continue };
        let ell = ((gth - 1) / 2).min(10);
        max_ell = max_ell.max(ell);
        for p in simple_paths(g, ell) {
            paths += 1;
            let path = Path::new(g, p).unwrap();
            if !is_geodesic(g, None, &path).unwrap() {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0 && max_ell == 10,
        format!(
            "{} graphs ({sampled} random), ℓ up to {max_ell}, {paths} paths, {violations} non-geodesic",
            cases.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("path doubling fixture", criterion_1),
        ("split distance inequality", criterion_2),
        ("split keeps girth", criterion_3),
        ("directed path of length chi-1", criterion_4),
        ("missing oriented path bounds chi", criterion_5),
        ("refutation soundness and completeness", criterion_6),
        ("light/heavy case fixtures", criterion_7),
        ("LP agrees with grid oracle", criterion_8),
        ("subdivide then split at (1.5, 1)", criterion_9),
        ("short paths are geodesic below half the girth", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!result.pass);
        println!("criterion {:>2} {tag}  {name}: {}", i + 1, result.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
