//! Acceptance run: one line per criterion, nonzero exit on any unexpected
//! failure. Runs without the libtest harness so the lines always print.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cherries::appendix::{self, Lemma};
use cherries::constructions::{
    ak_bipartite, b1_family, b2_family, block_decomposition_z1, g1_family, g2_family,
    predicted_extremal, quasi_clique, quasi_star, BipartiteFamilyParams, ConstructionError,
};
use cherries::density::{convergence, ConstructionFamily, DensityError, DensityPoint};
use cherries::graph::{BipartiteGraph, ConstraintWitness, Graph};
use cherries::oracle::{construction_dominance, verify_theorem, Mode, Theorem, DEFAULT_EDGE_CAP};
use cherries::shifting::{is_left_compressed, left_compress, swap_sides, SwapBranch};

struct Verdict {
    passed: bool,
    detail: String,
    /// Set when the failure is the documented unattainable part.
    known: Option<&'static str>,
}

fn ok(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
        known: None,
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

fn identity_holds(g: &Graph) -> bool {
    g.z1_index() == 2 * g.count_cherries() + 2 * g.edge_count() as u64
}

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0usize;
    let mut bad = 0usize;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=12);
        checked += 1;
        bad += usize::from(!identity_holds(&random_graph(&mut rng, n)));
    }
    for n in 0..=9usize {
        for m in 0..=(n * n.saturating_sub(1) / 2) as u64 {
            for g in [quasi_clique(n, m).unwrap(), quasi_star(n, m).unwrap()] {
                checked += 1;
                bad += usize::from(!identity_holds(&g));
            }
            for ell in 0..=n {
                for k in 0..=n {
                    for w in [g1_family(n, m, ell, k), g2_family(n, m, ell, k)]
                        .into_iter()
                        .flatten()
                    {
                        checked += 1;
                        bad += usize::from(!identity_holds(&w.graph));
                    }
                }
            }
        }
    }
    for p in BipartiteFamilyParams::enumerate(36) {
        let mut graphs = vec![ak_bipartite(p.r, p.s, p.m as u64).unwrap()];
        graphs.extend(b1_family(&p).ok().map(|w| w.graph));
        graphs.extend(b2_family(&p).ok().map(|w| w.graph));
        for b in graphs {
            checked += 1;
            bad += usize::from(!identity_holds(&b.to_graph()));
        }
    }
    ok(bad == 0, format!("{checked} graphs, {bad} violations"))
}

fn theorem_rows(theorem: Theorem, max: usize) -> (usize, usize) {
    let rows = verify_theorem(theorem, max, Mode::Full, DEFAULT_EDGE_CAP).unwrap();
    (rows.len(), rows.iter().filter(|r| !r.matches).count())
}

fn criterion_2() -> Verdict {
    let rows = verify_theorem(Theorem::QuasiStarOrClique, 7, Mode::Full, DEFAULT_EDGE_CAP).unwrap();
    let rows: Vec<_> = rows
        .into_iter()
        .filter(|r| r.n.is_some_and(|n| n >= 4))
        .collect();
    let bad = rows.iter().filter(|r| !r.matches).count();
    ok(
        bad == 0 && !rows.is_empty(),
        format!(
            "{} (n, m) pairs with n in 4..=7, {bad} mismatches",
            rows.len()
        ),
    )
}

fn criterion_3() -> Verdict {
    let (total, bad) = theorem_rows(Theorem::Bipartite, 20);
    ok(
        bad == 0,
        format!("{total} (r, s, m) triples with rs <= 20, {bad} mismatches"),
    )
}

fn criterion_4() -> Verdict {
    let (left, left_bad) = theorem_rows(Theorem::BipartiteLeft, 16);
    let (right, right_bad) = theorem_rows(Theorem::BipartiteRight, 16);
    // the rows already require boundary agreement; count those tuples too
    let boundary = BipartiteFamilyParams::enumerate(16)
        .iter()
        .filter(|p| p.on_boundary())
        .count();
    ok(
        left_bad + right_bad == 0,
        format!(
            "left {left} tuples / {left_bad} bad, right {right} tuples / {right_bad} bad, {boundary} tuples at m = rk"
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut total = 0;
    let mut bad = 0;
    for p in BipartiteFamilyParams::enumerate(64)
        .into_iter()
        .filter(|p| p.r <= 8)
    {
        let Some(lower) = p.lower_branch() else {
            continue;
        };
        total += 1;
        let direct = predicted_extremal(&p, lower).unwrap().z1_index();
        bad += usize::from(block_decomposition_z1(&p).unwrap() != direct);
    }
    ok(
        bad == 0,
        format!("{total} tuples with r, s <= 8 and m <= rk, {bad} violations"),
    )
}

fn random_constrained(rng: &mut ChaCha8Rng) -> (BipartiteGraph, ConstraintWitness) {
    loop {
        let s = rng.gen_range(1..=4);
        let r = rng.gen_range(s..=(20 / s).min(8));
        let ell = rng.gen_range(1..=r);
        let k = rng.gen_range(1..=ell.min(s));
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut edges = Vec::new();
        for i in 0..r {
            let forced: Vec<usize> = if i < ell {
                let mut cols: Vec<usize> = (0..s).collect();
                for j in (1..s).rev() {
                    cols.swap(j, rng.gen_range(0..=j));
                }
                cols.truncate(k);
                cols
            } else {
                Vec::new()
            };
            for j in 0..s {
                if forced.contains(&j) || rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let b = BipartiteGraph::new(r, s, edges).unwrap();
        // shuffle which rows carry the witness
        let mut perm: Vec<usize> = (0..r).collect();
        for j in (1..r).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        let b = b.relabel(&perm, &(0..s).collect::<Vec<_>>());
        let rows: Vec<usize> = (0..r).filter(|&i| perm[i] < ell).collect();
        let w = ConstraintWitness::new(rows, ell, k);
        if w.verify_left(&b).is_ok() {
            return (b, w);
        }
    }
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut branches = [0usize; 3];
    for case in 0..500 {
        let (b, w) = random_constrained(&mut rng);
        let c = left_compress(&b, &w).unwrap();
        let again = left_compress(&c.graph, &c.witness).unwrap();
        if c.graph.edge_count() != b.edge_count()
            || c.witness.verify_left(&c.graph).is_err()
            || c.graph.z1_index() < b.z1_index()
            || !is_left_compressed(&c.graph)
            || !again.moves.is_empty()
            || again.graph != c.graph
        {
            failures.push(format!("compress #{case}"));
            continue;
        }
        let s = swap_sides(&c.graph, &c.witness).unwrap();
        branches[match s.branch {
            SwapBranch::Identity => 0,
            SwapBranch::Relabel => 1,
            SwapBranch::DegreeExchange { .. } => 2,
        }] += 1;
        if s.graph.degree_multiset() != c.graph.degree_multiset()
            || s.graph.z1_index() != c.graph.z1_index()
        {
            failures.push(format!("swap #{case}"));
        }
    }
    ok(
        failures.is_empty(),
        format!(
            "500 graphs; side swaps identity/relabel/exchange = {branches:?}; failures: {failures:?}"
        ),
    )
}

fn criterion_7() -> Verdict {
    let point = appendix::lemma_a1_point();
    let mins: Vec<(usize, f64)> = [50, 100, 200]
        .into_iter()
        .map(|steps| {
            (
                steps,
                appendix::check_lemma(Lemma::A1, steps).unwrap().min_margin,
            )
        })
        .collect();
    let grid_ok = mins.iter().all(|&(_, m)| m > 0.0);
    ok(
        point.passed && grid_ok,
        format!(
            "point margin {:.12} vs decomposition {:.12} (diff {:.1e}); grid minima {mins:?}",
            point.margin, point.reference, point.difference
        ),
    )
}

fn criterion_8() -> Verdict {
    let r = appendix::lemma_a4_region(0.002);
    ok(
        r.passed,
        format!(
            "min f3(a) - f3(x) = {:.7} at {:?}, steps {:?}, threshold {}",
            r.min_margin,
            r.argmin,
            r.steps,
            r.bound - 1e-4
        ),
    )
}

fn criterion_9() -> Verdict {
    let checks = appendix::interior_bounds_check();
    let omega = &checks[0];
    let a5 = &checks[3];
    let reproduce =
        |c: &appendix::ConstantCheck| c.reference.is_some_and(|r| (c.value - r).abs() <= 1e-12);
    let all = checks.iter().all(|c| c.passed);
    ok(
        all && reproduce(omega) && reproduce(a5),
        format!(
            "(54-sqrt 2671)/100 = {:.12} > 0.02, lower end = {:.12} = 53/150; {} bound checks, {} failed",
            omega.value,
            a5.value,
            checks.len(),
            checks.iter().filter(|c| !c.passed).count()
        ),
    )
}

fn criterion_10() -> Verdict {
    const NS: [usize; 3] = [100, 500, 2000];
    let summary = |family, p: DensityPoint| match convergence(family, p, &NS) {
        Ok(r) => {
            let last = r.rows.last().unwrap().error;
            (
                last < 5e-3 && r.monotone,
                format!(
                    "error@2000 {last:.2e}, C {:.2}, monotone {}",
                    r.fitted_c, r.monotone
                ),
                None,
            )
        }
        Err(e) => (false, format!("{e}"), Some(e)),
    };
    let (g2_ok, g2) = {
        let s = summary(
            ConstructionFamily::G2,
            DensityPoint::new(0.68, 0.2, 0.0).unwrap(),
        );
        (s.0, s.1)
    };
    let (qs_ok, qs) = {
        let s = summary(
            ConstructionFamily::QuasiStar,
            DensityPoint::new(0.5, 0.0, 0.0).unwrap(),
        );
        (s.0, s.1)
    };
    let (g1_ok, g1, g1_err) = summary(
        ConstructionFamily::G1,
        DensityPoint::new(0.68, 0.35, 0.2).unwrap(),
    );
    let detail = format!("g2: {g2}; quasi-star: {qs}; g1: {g1}");
    // At (0.68, 0.35, 0.2) the clique needs about 0.735n vertices but only
    // (1 - alpha)n = 0.65n precede the independent block, so the construction
    // cannot be built at any n. Anything else failing is a real failure.
    let collision = matches!(
        g1_err,
        Some(DensityError::Construction(
            ConstructionError::IndexCollision(_)
        ))
    );
    if g2_ok && qs_ok && !g1_ok && collision {
        return Verdict {
            passed: false,
            detail,
            known: Some("g1 point is infeasible: sqrt(rho - 2 alpha beta) > 1 - alpha"),
        };
    }
    ok(g2_ok && qs_ok && g1_ok, detail)
}

fn criterion_11() -> Verdict {
    let rows = construction_dominance(7, DEFAULT_EDGE_CAP).unwrap();
    let undominated = rows.iter().filter(|r| !r.dominated).count();
    let matched: Vec<_> = rows
        .iter()
        .filter(|r| !r.shifted_match.is_empty())
        .collect();
    let unequal = matched
        .iter()
        .filter(|r| {
            !r.shifted_match
                .split('+')
                .all(|n| r.attained_by.split('+').any(|a| a == n))
        })
        .count();
    let attained = rows.iter().filter(|r| !r.attained_by.is_empty()).count();
    ok(
        undominated == 0 && unequal == 0,
        format!(
            "{} tuples with n <= 7: {undominated} exceeded by a construction, {} shifted-structure matches ({unequal} without equality), {attained} attained by some construction",
            rows.len(),
            matched.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 11] = [
        ("identity Z1 = 2N + 2|G|", criterion_1),
        ("general unconstrained optimum, n in 4..=7", criterion_2),
        ("bipartite unconstrained optimum, rs <= 20", criterion_3),
        ("constrained bipartite optimum, rs <= 16", criterion_4),
        ("block decomposition identities, r, s <= 8", criterion_5),
        ("shifting contracts on 500 random graphs", criterion_6),
        ("lemma A1 point value and grid", criterion_7),
        ("lemma A4 region margin", criterion_8),
        ("proof constants", criterion_9),
        ("density convergence", criterion_10),
        ("construction dominance, n <= 7", criterion_11),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let v = run();
        let secs = started.elapsed().as_secs_f64();
        let status = match (v.passed, v.known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!(
            "criterion {:>2} {status}: {name} [{secs:.2}s] {}",
            i + 1,
            v.detail
        );
        if let Some(why) = v.known {
            println!("              known unattainable: {why}");
        }
        if !v.passed && v.known.is_none() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
