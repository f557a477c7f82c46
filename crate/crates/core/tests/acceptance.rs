//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ecoc_core::format::{emit_instance, parse_instance};
use ecoc_core::gen::{gen_planted, gen_random, Probability, SplitMix64};
use ecoc_core::kernel::{find_ecoc_crown_via_lp, validate_ecoc_crown};
use ecoc_core::lp::{build_wecoc_lp, classify_vertices, solve_lp_exact, solve_wecoc_lazy};
use ecoc_core::matching::{max_matching, BipartiteGraph};
use ecoc_core::oracle::{brute_force_ecoc, brute_force_ecoc_optimum, brute_force_max_matching, brute_force_wecoc_ip};
use ecoc_core::{kernelize, kernelize_with, Instance, LpMode, Outcome, Rational};

/// Lines are buffered so they print in criterion order.
struct Report {
    failed: bool,
    lines: Vec<(u8, String)>,
}

impl Report {
    fn line(&mut self, id: u8, name: &str, failures: &[String], detail: String, started: Instant) {
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        let mut text = format!("criterion {id} {verdict} {name}: {detail} ({:.1?})\n", started.elapsed());
        for f in failures.iter().take(5) {
            text += &format!("    {f}\n");
        }
        self.lines.push((id, text));
        self.failed |= !failures.is_empty();
    }
}

fn prob(s: &str) -> Probability {
    s.parse().unwrap()
}

fn pick<'a, T>(rng: &mut SplitMix64, items: &'a [T]) -> &'a T {
    &items[rng.below(items.len() as u64) as usize]
}

/// Bound computed directly from the kernel's own budget.
fn bound(l: usize, k: i64) -> i64 {
    (l as i64 + 1) * k + l as i64 - 1
}

/// n <= 60 corpus for one `l`: half planted, half random.
fn large_corpus(l: usize, count: u64) -> Vec<(String, Instance)> {
    let densities = ["1/30", "1/20", "1/12", "1/8", "1/6", "1/4"];
    (0..count)
        .map(|i| {
            let seed = 1000 * l as u64 + i;
            let mut rng = SplitMix64::new(seed ^ 0x5eed);
            let p = prob(pick(&mut rng, &densities));
            if i % 2 == 0 {
                let k = 1 + rng.below(12) as usize;
                let n = 20 + rng.below(41) as usize;
                let comps = n.saturating_sub(k) / l;
                (format!("planted({comps},{l},{k},{p},{seed})"), gen_planted(comps, l, k, p, seed))
            } else {
                let n = 10 + rng.below(51) as usize;
                let k = rng.below(16) as usize;
                (format!("random({n},{p},{l},{k},{seed})"), gen_random(n, p, l, k, seed))
            }
        })
        .collect()
}

/// n <= 16, k <= 4 corpus: planted at the true budget, planted one short,
/// and random graphs.
fn small_corpus(count: u64) -> Vec<(String, Instance)> {
    let densities = ["1/10", "1/6", "1/4", "1/3", "1/2"];
    (0..count)
        .map(|i| {
            let seed = 50_000 + i;
            let mut rng = SplitMix64::new(seed ^ 0xa11);
            let l = 1 + (i % 3) as usize;
            let p = prob(pick(&mut rng, &densities));
            match (i / 3) % 3 {
                0 | 1 => {
                    let k = rng.below(5) as usize;
                    let comps = rng.below(((16 - k) / l) as u64 + 1) as usize;
                    let mut inst = gen_planted(comps, l, k, p, seed);
                    if (i / 3) % 3 == 1 {
                        inst.k -= 1;
                    }
                    (format!("planted({comps},{l},{k},{p},{seed}) k={}", inst.k), inst)
                }
                _ => {
                    let n = rng.below(17) as usize;
                    let k = rng.below(5) as usize;
                    (format!("random({n},{p},{l},{k},{seed})"), gen_random(n, p, l, k, seed))
                }
            }
        })
        .collect()
}

fn criteria_1_2(report: &mut Report) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut special = Vec::new();
    let (mut total, mut kernels, mut lp_steps) = (0, 0, 0);
    for l in 1..=3 {
        for (name, inst) in large_corpus(l, 500) {
            assert!(inst.graph.num_vertices() <= 60);
            total += 1;
            let res = kernelize(&inst);
            lp_steps += res.rule_counts()[2];
            let Outcome::Kernel(ker) = &res.outcome else { continue };
            kernels += 1;
            let n = ker.graph.num_vertices() as i64;
            if n > bound(l, ker.k) {
                failures.push(format!("{name}: kernel n={n} k={} exceeds {}", ker.k, bound(l, ker.k)));
            }
            let corollary = match l {
                1 => Some((2 * ker.k, "2k'")),
                2 => Some((3 * ker.k + 1, "3k'+1")),
                _ => None,
            };
            if let Some((b, form)) = corollary {
                if b != bound(l, ker.k) || n > b {
                    special.push(format!("{name}: n={n} k'={} against {form}={b}", ker.k));
                }
            }
        }
    }
    report.line(
        1,
        "kernel size bound",
        &failures,
        format!("{total} instances, {kernels} kernels, {lp_steps} LP crowns"),
        started,
    );
    report.line(2, "l=1 gives 2k', l=2 gives 3k'+1", &special, format!("{kernels} kernels rechecked"), started);
}

fn criteria_3_4_6(report: &mut Report) {
    let started = Instant::now();
    let mut equivalence = Vec::new();
    let mut crowns = Vec::new();
    let mut classes = Vec::new();
    let (mut yes, mut no, mut crown_count, mut lp_yes) = (0, 0, 0, 0);
    let corpus = small_corpus(1200);
    for (name, inst) in &corpus {
        assert!(inst.graph.num_vertices() <= 16 && inst.k <= 4);
        let truth = brute_force_ecoc(inst).unwrap().feasible;
        if truth {
            yes += 1;
        } else {
            no += 1;
        }
        let res = kernelize_with(inst, LpMode::Eager, |cur, search| {
            if let Some(crown) = &search.crown {
                crown_count += 1;
                if !validate_ecoc_crown(&cur.graph, crown, cur.l) {
                    crowns.push(format!("{name}: invalid crown {crown:?}"));
                }
            }
            if !brute_force_ecoc(cur).unwrap().feasible {
                return;
            }
            lp_yes += 1;
            let cls = classify_vertices(&search.solution);
            match find_ecoc_crown_via_lp(cur) {
                Ok(Some(crown)) => {
                    if !crown.i_set.is_subset(&cls.zeros) || !crown.j_set.is_subset(&cls.ones) {
                        classes.push(format!("{name}: crown outside A/B"));
                    }
                }
                Ok(None) => classes.push(format!("{name}: yes-instance without crown")),
                Err(e) => classes.push(format!("{name}: {e}")),
            }
            let g = &cur.graph;
            let sub = g.induced_subgraph(&cls.zeros).unwrap();
            for comp in sub.connected_components() {
                if comp.len() != cur.l {
                    continue;
                }
                let original: ecoc_core::VertexSet = comp.iter().map(|v| cls.zeros.as_slice()[v]).collect();
                let nb = g.neighborhood(&original).unwrap();
                if !nb.is_subset(&cls.ones) {
                    classes.push(format!("{name}: neighbor of a zero component outside B"));
                }
            }
        });
        let agrees = match &res.outcome {
            Outcome::Kernel(ker) => brute_force_ecoc(ker).unwrap().feasible == truth,
            Outcome::No(_) => !truth,
        };
        if !agrees {
            equivalence.push(format!("{name}: oracle {truth}, kernelizer {:?}", res.outcome));
        }
        if let Err(e) = res.replay(inst) {
            equivalence.push(format!("{name}: replay failed: {e}"));
        }
    }
    report.line(
        3,
        "oracle equivalence",
        &equivalence,
        format!("{} instances, {yes} yes, {no} no", corpus.len()),
        started,
    );
    report.line(4, "crown validity", &crowns, format!("{crown_count} crowns validated"), started);
    report.line(6, "LP classification", &classes, format!("{lp_yes} LP steps on yes-instances"), started);
}

fn criterion_5(report: &mut Report) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let densities = ["1/5", "1/3", "1/2", "2/3", "1"];
    let mut count = 0;
    for seed in 0..600u64 {
        let mut rng = SplitMix64::new(seed ^ 0x1b);
        let n = rng.below(11) as usize;
        let l = 1 + rng.below(3) as usize;
        let p = prob(pick(&mut rng, &densities));
        let inst = gen_random(n, p, l, 0, 70_000 + seed);
        let g = &inst.graph;
        count += 1;
        let lp = build_wecoc_lp(g, l);
        let sol = solve_lp_exact(&lp);
        let ip = brute_force_wecoc_ip(g, l).unwrap();
        let opt = brute_force_ecoc_optimum(g, l).unwrap().optimum.unwrap();
        let name = format!("random({n},{p},{l},0,{})", 70_000 + seed);
        if !lp.is_satisfied_by(&sol.values) || !sol.certifies_optimality(&lp) {
            failures.push(format!("{name}: LP solution not certified"));
        }
        if !(sol.objective <= Rational::from_integer(ip.into()) && ip <= opt) {
            failures.push(format!("{name}: lp {} ip {ip} ecoc {opt}", sol.objective));
        }
        if solve_wecoc_lazy(g, l).solution.objective != sol.objective {
            failures.push(format!("{name}: lazy and eager objectives differ"));
        }
    }
    report.line(5, "LP <= IP <= ECOC optimum", &failures, format!("{count} instances with n <= 10"), started);
}

fn criterion_7(report: &mut Report) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let densities = ["1/6", "1/4", "1/3", "1/2", "3/4"];
    for seed in 0..600u64 {
        let mut rng = SplitMix64::new(90_000 + seed);
        let na = rng.below(13) as usize;
        let nb = rng.below(13 - na as u64) as usize;
        let p = prob(pick(&mut rng, &densities));
        let mut edges = Vec::new();
        for a in 0..na {
            for b in 0..nb {
                if rng.bernoulli(p) {
                    edges.push((a, b));
                }
            }
        }
        let bg = BipartiteGraph::from_edges(na, nb, &edges).unwrap();
        let m = max_matching(&bg);
        let expected = brute_force_max_matching(&bg).unwrap();
        if !m.is_valid_for(&bg) || m.len() != expected {
            failures.push(format!("seed {seed}: {na}x{nb}, got {}, expected {expected}", m.len()));
        }
    }
    report.line(7, "matching oracle", &failures, "600 bipartite graphs with <= 12 vertices".into(), started);
}

fn criterion_8(report: &mut Report) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let densities = ["1/8", "1/4", "1/2", "3/4", "1"];
    let mut count = 0;
    for seed in 0..400u64 {
        let mut rng = SplitMix64::new(seed ^ 0x91a);
        let l = 1 + rng.below(4) as usize;
        let k = rng.below(6) as usize;
        let comps = rng.below(((22 - k) / l) as u64 + 1) as usize;
        let p = prob(pick(&mut rng, &densities));
        let inst = gen_planted(comps, l, k, p, 80_000 + seed);
        count += 1;
        let name = format!("planted({comps},{l},{k},{p},{})", 80_000 + seed);
        match kernelize(&inst).outcome {
            Outcome::Kernel(ker) => {
                if !brute_force_ecoc(&ker).unwrap().feasible {
                    failures.push(format!("{name}: kernel is a no-instance"));
                }
            }
            Outcome::No(reason) => failures.push(format!("{name}: reported no ({reason})")),
        }
    }
    report.line(8, "planted completeness", &failures, format!("{count} planted instances"), started);
}

fn criterion_9(report: &mut Report) {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for l in 1..=3 {
        for (name, inst) in large_corpus(l, 60) {
            count += 1;
            let text = emit_instance(&inst);
            let run = |mode| {
                let res = kernelize_with(&parse_instance(&text).unwrap(), mode, |_, _| {});
                let kernel = match &res.outcome {
                    Outcome::Kernel(ker) => emit_instance(ker),
                    Outcome::No(_) => "NO\n".to_string(),
                };
                (kernel, res.trace.to_string())
            };
            for mode in [LpMode::Eager, LpMode::Lazy] {
                if run(mode) != run(mode) {
                    failures.push(format!("{name}: {mode:?} runs differ"));
                }
            }
        }
    }
    report.line(9, "determinism", &failures, format!("{count} instance files, eager and lazy LP"), started);
}

fn main() -> ExitCode {
    let mut report = Report {
        failed: false,
        lines: Vec::new(),
    };
    criteria_1_2(&mut report);
    criteria_3_4_6(&mut report);
    criterion_5(&mut report);
    criterion_7(&mut report);
    criterion_8(&mut report);
    criterion_9(&mut report);
    report.lines.sort_by_key(|(id, _)| *id);
    for (_, text) in &report.lines {
        print!("{text}");
    }
    if report.failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
