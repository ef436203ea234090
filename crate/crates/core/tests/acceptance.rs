//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p chromadyn-core --test acceptance`.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use chromadyn::coloring::{default_order, greedy_bounded_palette, Coloring, GreedyError, PaletteParams};
use chromadyn::exact::r_dynamic_number;
use chromadyn::harness::corpus::{named_families, random_gnp_families, random_regular_families};
use chromadyn::harness::scan::reverify_finding;
use chromadyn::harness::{
    bound_table, generate, montgomery_scan, random_bipartite_regular, random_regular, Corpus, Family,
    VerdictStatus,
};
use chromadyn::lll::partition::r_way_partition;
use chromadyn::lll::product::product_condition_value;
use chromadyn::lll::{
    dynamic_coloring_general, dynamic_coloring_regular, product_r_dynamic, r_dynamic_partition_coloring,
    recolor_with_dset, DSetProfile,
};
use chromadyn::pipeline::base_coloring;
use chromadyn::transversal::square_bound_coloring;
use chromadyn::{Budget, Graph, PipelineBudget, VertexSet};

const MAX_ROUNDS: u64 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// Oracles below use only the graph's adjacency lists.

fn oracle_dynamic(g: &Graph, colors: &[usize], r: usize) -> bool {
    if g.edges().any(|(u, v)| colors[u] == colors[v]) {
        return false;
    }
    g.vertices().all(|v| {
        let mut seen: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() >= r.min(g.degree(v))
    })
}

/// Smallest k for which some assignment in `k^n` is r-dynamic. Vertex 0 is
/// pinned to color 0, which loses nothing up to renaming colors.
fn oracle_min_colors(g: &Graph, r: usize) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if oracle_dynamic(g, &colors, r) {
                return k;
            }
            let mut i = 1;
            while i < n && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("n distinct colors are always r-dynamic")
}

fn induces_forest(g: &Graph, set: &VertexSet) -> bool {
    let mut parent: Vec<usize> = g.vertices().collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if set.contains(u) && set.contains(v) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

fn count_in(g: &Graph, v: usize, set: &VertexSet) -> usize {
    g.neighbors(v).iter().filter(|&&u| set.contains(u)).count()
}

/// The three D-set postconditions, checked from scratch.
fn check_dset(g: &Graph, bad: &VertexSet, d: &VertexSet, p: f64) -> Result<(), String> {
    let nb = g.neighborhood_of_set(bad);
    if let Some(v) = d.iter().find(|&v| !nb.contains(v)) {
        return Err(format!("{v} in D but not in N(B)"));
    }
    for v in bad.iter() {
        let inside = count_in(g, v, d);
        if inside == 0 || inside == g.degree(v) {
            return Err(format!("bad vertex {v} has {inside}/{} neighbors in D", g.degree(v)));
        }
    }
    for v in nb.iter() {
        let inside = count_in(g, v, d);
        if inside as f64 >= E * g.degree(v) as f64 * p {
            return Err(format!("{v} has {inside} neighbors in D"));
        }
    }
    for v in g.vertices().filter(|&v| !bad.contains(v) && g.degree(v) > 0) {
        if count_in(g, v, d) == g.degree(v) {
            return Err(format!("{v} has no neighbor outside D"));
        }
    }
    Ok(())
}

/// Bipartite d-regular graph with one side on color 0 and the other on
/// colors 1..=3, so the bad set is exactly the second side.
fn planted(half: usize, d: usize, seed: u64) -> (Graph, Coloring) {
    let g = random_bipartite_regular(half, d, seed).unwrap();
    let colors = (0..2 * half).map(|v| if v < half { 0 } else { 1 + v % 3 }).collect();
    (g, Coloring::new(colors))
}

fn draws(count: usize, seed: u64, d: usize, lo: usize, hi: usize) -> Vec<(usize, u64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut n = rng.gen_range(lo..=hi);
            if n * d % 2 == 1 {
                n += 1;
            }
            (n, rng.gen::<u32>() as u64)
        })
        .collect()
}

fn small_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = named_families(7)
        .into_iter()
        .map(|f| (f.to_string(), generate(&f).unwrap()))
        .filter(|(_, g)| g.components().len() == 1)
        .collect();
    for f in random_gnp_families(100, 1, 7, 11) {
        out.push((f.to_string(), generate(&f).unwrap()));
    }
    out
}

fn criterion_1() -> Outcome {
    let corpus = small_corpus();
    let mismatches: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|(id, g)| {
            (1..=3).filter_map(move |r| {
                let oracle = oracle_min_colors(g, r);
                let solved = r_dynamic_number(g, r, Budget::DEFAULT).exact();
                (solved != Some(oracle)).then(|| format!("{id} r={r}: solver {solved:?}, oracle {oracle}"))
            })
        })
        .collect();
    let detail = format!("{} graphs x r in 1..=3", corpus.len());
    if mismatches.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", mismatches.join("; ")))
    }
}

fn criterion_2() -> Outcome {
    let mut errors = Vec::new();
    let mut values = Vec::new();
    for n in 3..=12 {
        let g = generate(&Family::Cycle { n }).unwrap();
        let oracle = oracle_min_colors(&g, 2);
        let solved = r_dynamic_number(&g, 2, Budget::DEFAULT).exact();
        if solved != Some(oracle) {
            errors.push(format!("C{n}: solver {solved:?}, oracle {oracle}"));
        }
        values.push(format!("C{n}={oracle}"));
    }
    for (n, expected) in [(5, 5), (4, 4), (6, 3)] {
        let g = generate(&Family::Cycle { n }).unwrap();
        let solved = r_dynamic_number(&g, 2, Budget::DEFAULT).exact();
        if solved != Some(expected) {
            errors.push(format!("C{n}: expected {expected}, got {solved:?}"));
        }
    }
    if errors.is_empty() {
        Ok(values.join(" "))
    } else {
        Err(errors.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = named_families(30)
        .into_iter()
        .map(|f| (f.to_string(), generate(&f).unwrap()))
        .collect();
    let named = graphs.len();
    for f in random_regular_families(100, &[3, 4, 5], 6, 60, 3) {
        graphs.push((f.to_string(), generate(&f).unwrap()));
    }
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|(id, g)| {
            let params = PaletteParams {
                palette_size: g.max_degree() + 3,
                r: 2,
                repair_budget: 100_000,
                seed: 0,
            };
            match greedy_bounded_palette(g, &default_order(g), params) {
                Ok(c) if oracle_dynamic(g, c.as_slice(), 2) && c.num_colors() <= g.max_degree() + 3 => None,
                Ok(_) => Some(format!("{id}: invalid coloring")),
                Err(GreedyError::Exhausted(f)) => Some(format!("{id}: budget spent after {} steps", f.steps)),
                Err(e) => Some(format!("{id}: {e}")),
            }
        })
        .collect();
    let detail = format!("{named} named + 100 random regular, palette Δ+3, repair budget 1e5");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

fn condition(delta: usize, max: usize, r: usize) -> f64 {
    let d = (delta * (max - 1)) as f64;
    let r_f = r as f64;
    E * ((d + 1.0) * (r_f - 1.0) + 1.0) * (1.0 - 1.0 / r_f).powi(delta as i32)
}

fn criterion_4() -> Outcome {
    let mut errors = Vec::new();
    let (c7, c6) = (product_condition_value(7, 7, 2), product_condition_value(6, 6, 2));
    for (value, expected, independent) in [(c7, 0.934, condition(7, 7, 2)), (c6, 1.359, condition(6, 6, 2))] {
        if (value - expected).abs() > 5e-4 || (value - independent).abs() > 1e-12 {
            errors.push(format!("condition value {value:.4}, expected {expected}"));
        }
    }
    if c7 > 1.0 || c6 <= 1.0 {
        errors.push("condition flags wrong".into());
    }
    let budget = PipelineBudget::default();
    let mut max_ratio: f64 = 0.0;
    for (i, (n, s)) in draws(20, 4, 7, 20, 100).into_iter().enumerate() {
        let g = random_regular(n, 7, s).unwrap();
        match product_r_dynamic(&g, 2, i as u64, &budget) {
            Ok(out) => {
                let rec = &out.record;
                if !oracle_dynamic(&g, out.coloring.as_slice(), 2) || rec.colors_used > 2 * rec.k_base {
                    errors.push(format!("n={n} s={s}: {} colors, k_base {}", rec.colors_used, rec.k_base));
                }
                max_ratio = max_ratio.max(rec.colors_used as f64 / rec.k_base as f64);
            }
            Err(e) => errors.push(format!("n={n} s={s}: {e}")),
        }
    }
    let detail = format!("condition d=7 {c7:.4} (true), d=6 {c6:.4} (false); 20 runs, max colors/k_base {max_ratio:.2}");
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", errors.join("; ")))
    }
}

fn criterion_5() -> Outcome {
    let mut errors = Vec::new();
    let term = |d: usize| (E * ((d * d + 1) as f64).ln() + E).ceil() as usize;
    if term(14) != 18 {
        errors.push(format!("additive term at d=14 is {}", term(14)));
    }
    let budget = PipelineBudget::default();
    let mut routes = std::collections::BTreeMap::new();
    let mut max_rounds = 0;
    for (i, (n, s)) in draws(20, 5, 14, 50, 300).into_iter().enumerate() {
        let d = if i % 2 == 0 { 14 } else { 20 };
        let g = random_regular(n, d, s).unwrap();
        match dynamic_coloring_regular(&g, i as u64, &budget) {
            Ok(out) => {
                let rec = &out.record;
                *routes.entry(format!("{:?}", rec.route)).or_insert(0) += 1;
                max_rounds = max_rounds.max(rec.rounds);
                let ok = rec.converged
                    && rec.rounds <= MAX_ROUNDS
                    && oracle_dynamic(&g, out.coloring.as_slice(), 2)
                    && rec.colors_used <= rec.k_base + term(d);
                if !ok {
                    errors.push(format!("d={d} n={n}: {}", rec.to_json()));
                }
            }
            Err(e) => errors.push(format!("d={d} n={n}: {e}")),
        }
    }
    // Planted instances with a non-empty independent bad set exercise D itself.
    let mut d_sizes = Vec::new();
    for (i, (n, s)) in draws(20, 55, 2, 50, 300).into_iter().enumerate() {
        let d = if i % 2 == 0 { 14 } else { 20 };
        let half = n / 2;
        let (g, base) = planted(half, d, s);
        let bad: VertexSet = (half..2 * half).collect();
        match recolor_with_dset(&g, &base, DSetProfile::Regular, i as u64, &budget) {
            Ok((c, dset)) => {
                let p = (E * (d * d + 1) as f64).ln() / d as f64;
                if (dset.p - p).abs() > 1e-12 {
                    errors.push(format!("planted d={d}: p {} != {p}", dset.p));
                }
                if let Err(e) = check_dset(&g, &bad, &dset.set, p) {
                    errors.push(format!("planted d={d} n={n}: {e}"));
                }
                if dset.rounds > MAX_ROUNDS || !oracle_dynamic(&g, c.as_slice(), 2) {
                    errors.push(format!("planted d={d} n={n}: invalid output"));
                }
                if c.num_colors() > base.num_colors() + term(d) {
                    errors.push(format!("planted d={d} n={n}: {} colors", c.num_colors()));
                }
                max_rounds = max_rounds.max(dset.rounds);
                d_sizes.push(dset.set.len());
            }
            Err(e) => errors.push(format!("planted d={d} n={n}: {e}")),
        }
    }
    let detail = format!(
        "20 natural runs (routes {routes:?}), 20 planted D-set runs (|D| {}..{}), max rounds {max_rounds}",
        d_sizes.iter().min().unwrap_or(&0),
        d_sizes.iter().max().unwrap_or(&0)
    );
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", errors.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    const STATED: usize = 22;
    let mut errors = Vec::new();
    let formula = (E * (2.0 * E * 901.0).ln()).ceil() as usize;
    let budget = PipelineBudget::default();
    let mut max_extra = 0;
    let mut routes = std::collections::BTreeMap::new();
    for (i, (n, s)) in draws(20, 6, 30, 100, 300).into_iter().enumerate() {
        let g = random_regular(n, 30, s).unwrap();
        match dynamic_coloring_general(&g, i as u64, &budget) {
            Ok(out) => {
                let rec = &out.record;
                *routes.entry(format!("{:?}", rec.route)).or_insert(0) += 1;
                let extra = rec.colors_used.saturating_sub(rec.k_base);
                max_extra = max_extra.max(extra);
                if !rec.converged || !oracle_dynamic(&g, out.coloring.as_slice(), 2) || extra > STATED.min(formula) {
                    errors.push(format!("n={n}: {}", rec.to_json()));
                }
            }
            Err(e) => errors.push(format!("n={n}: {e}")),
        }
    }
    let mut planted_extra = 0;
    for (i, (n, s)) in draws(10, 66, 2, 100, 300).into_iter().enumerate() {
        let half = n / 2;
        let (g, base) = planted(half, 30, s);
        let bad: VertexSet = (half..2 * half).collect();
        match recolor_with_dset(&g, &base, DSetProfile::General, i as u64, &budget) {
            Ok((c, dset)) => {
                let extra = c.num_colors() - base.num_colors();
                planted_extra = planted_extra.max(extra);
                let structural = check_dset(&g, &bad, &dset.set, dset.p);
                if structural.is_err() || !oracle_dynamic(&g, c.as_slice(), 2) || extra > STATED.min(formula) {
                    errors.push(format!("planted n={n}: extra {extra}, {structural:?}"));
                }
            }
            Err(e) => errors.push(format!("planted n={n}: {e}")),
        }
    }
    let detail = format!(
        "additive formula gives {formula} (stated {STATED}); natural runs {routes:?} max extra {max_extra}, \
         10 planted D-set runs max extra {planted_extra}"
    );
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", errors.join("; ")))
    }
}

fn criterion_7() -> Outcome {
    let mut errors = Vec::new();
    let ratio = |r: usize| 30.0 / (2.0 * E * r as f64 * 901.0).ln();
    if (ratio(2) - 3.26).abs() > 5e-3 || (ratio(3) - 3.13).abs() > 5e-3 {
        errors.push(format!("feasibility ratios {:.4}, {:.4}", ratio(2), ratio(3)));
    }
    let term = |r: usize| (r - 1) * (E * (2.0 * E * r as f64 * 901.0).ln()).ceil() as usize;
    let budget = PipelineBudget::default();
    let (mut converged, mut runs) = (0, 0);
    for (i, (n, s)) in draws(10, 7, 30, 100, 300).into_iter().enumerate() {
        let g = random_regular(n, 30, s).unwrap();
        for r in [2, 3] {
            runs += 1;
            let seed = (i * 10 + r) as u64;
            let out = match r_dynamic_partition_coloring(&g, r, seed, &budget) {
                Ok(out) => out,
                Err(e) => {
                    errors.push(format!("n={n} r={r}: {e}"));
                    continue;
                }
            };
            converged += 1;
            let rec = &out.record;
            if !oracle_dynamic(&g, out.coloring.as_slice(), r) || rec.colors_used > rec.k_base + term(r) {
                errors.push(format!("n={n} r={r}: {}", rec.to_json()));
            }
            let parts = r_way_partition(&g, r, seed, budget.max_rounds).unwrap().parts;
            let covered = parts.len() == r
                && g.vertices().all(|v| parts.iter().all(|part| count_in(&g, v, part) > 0));
            let total: usize = parts.iter().map(|p| p.len()).sum();
            if !covered || total != g.n() {
                errors.push(format!("n={n} r={r}: some neighborhood misses a part"));
            }
        }
    }
    let detail = format!(
        "ratios {:.3} / {:.3}, budgets +{} / +{}, {converged}/{runs} runs converged",
        ratio(2),
        ratio(3),
        term(2),
        term(3)
    );
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", errors.join("; ")))
    }
}

fn check_square_run(g: &Graph, base: &Coloring, seed: u64, label: &str, gadgets: &mut usize) -> Result<(), String> {
    let out = square_bound_coloring(g, base, seed, &PipelineBudget::default()).map_err(|e| format!("{label}: {e}"))?;
    let rec = &out.record;
    if !oracle_dynamic(g, out.coloring.as_slice(), 2) || rec.colors_used > rec.k + 2 * rec.l {
        return Err(format!("{label}: {}", rec.to_json()));
    }
    for (gadget, t) in out.gadgets.iter().zip(&out.transversals) {
        *gadgets += 1;
        let i = gadget.i;
        if !induces_forest(&gadget.h, t) {
            return Err(format!("{label} class {i}: H_i[T_i] has a cycle"));
        }
        for v in gadget.class.iter() {
            let hits = count_in(g, v, t);
            let ok = if gadget.tractable.contains(v) { hits >= 1 } else { hits == 1 };
            if !ok {
                return Err(format!("{label} class {i}: T_i meets N({v}) {hits} times"));
            }
        }
        for v in g.neighborhood_of_set(&gadget.class).iter() {
            if count_in(g, v, &gadget.tractable) > 1 {
                return Err(format!("{label} class {i}: {v} sees two tractable vertices"));
            }
        }
        for v in gadget.tractable.iter() {
            if count_in(g, v, &gadget.tractable) != 1 {
                return Err(format!("{label} class {i}: tractable {v} not matched"));
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut errors = Vec::new();
    let mut gadgets = 0;
    let k33 = generate(&Family::CompleteBipartite { a: 3, b: 3 }).unwrap();
    let all: VertexSet = k33.vertices().collect();
    let sides = k33.two_color(&all).unwrap();
    let bipartition = Coloring::new(sides.iter().map(|&s| s as usize).collect());
    match square_bound_coloring(&k33, &bipartition, 0, &PipelineBudget::default()) {
        Ok(out) if out.record.k == 2 && out.record.l == 3 => {}
        Ok(out) => errors.push(format!("K33: k={} l={}", out.record.k, out.record.l)),
        Err(e) => errors.push(format!("K33: {e}")),
    }
    if let Err(e) = check_square_run(&k33, &bipartition, 0, "K33", &mut gadgets) {
        errors.push(e);
    }
    let mut nonempty = 0;
    for (i, (n, s)) in draws(20, 8, 3, 8, 24).into_iter().enumerate() {
        let g = random_regular(n, 3, s).unwrap();
        let base = base_coloring(&g, &PipelineBudget::default());
        if !base.certified {
            errors.push(format!("cubic n={n}: base coloring not certified"));
        }
        let before = gadgets;
        if let Err(e) = check_square_run(&g, &base.coloring, i as u64, &format!("cubic n={n} s={s}"), &mut gadgets) {
            errors.push(e);
        }
        nonempty += usize::from(gadgets > before);
    }
    let detail = format!("K33 k=2 l=3; 20 cubic graphs ({nonempty} with bad vertices); {gadgets} gadgets checked");
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", errors.join("; ")))
    }
}

fn criterion_9() -> Outcome {
    let mut corpus = Corpus::from_families(named_families(12)).unwrap();
    for (id, g) in small_corpus() {
        if corpus.entries().iter().all(|e| e.id != id) {
            let entry = chromadyn::harness::CorpusEntry {
                id,
                graph: g,
                provenance: chromadyn::harness::Provenance::File { path: String::new() },
            };
            corpus.push(entry).unwrap();
        }
    }
    corpus
        .extend(Corpus::from_families(random_regular_families(200, &[3, 4, 5], 6, 24, 9)).unwrap())
        .unwrap();
    let budget = PipelineBudget::default();
    let reports: Vec<_> = corpus
        .entries()
        .par_iter()
        .map(|e| bound_table(&e.graph, &e.id, 2, &budget, 0))
        .collect();
    let mut violations = Vec::new();
    let (mut passes, mut inconclusive) = (0, 0);
    for report in &reports {
        for v in &report.conformance {
            match v.status {
                VerdictStatus::Pass => passes += 1,
                VerdictStatus::Inconclusive => inconclusive += 1,
                _ => {}
            }
            if v.is_violation() {
                violations.push(format!("{} {}", report.graph_id, v.row));
            }
        }
    }
    let scan = montgomery_scan(&corpus, Budget::DEFAULT, 0);
    let unreproduced: Vec<&str> = scan
        .findings
        .iter()
        .filter(|f| !reverify_finding(f, Budget::DEFAULT))
        .map(|f| f.graph_id.as_str())
        .collect();
    let detail = format!(
        "{} graphs, {passes} passing verdicts, {inconclusive} inconclusive, {} violations; gap histogram {:?}, {} findings",
        corpus.len(),
        violations.len(),
        scan.histogram,
        scan.findings.len()
    );
    if violations.is_empty() && unreproduced.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; violations {violations:?}; unreproduced findings {unreproduced:?}"))
    }
}

fn digest(records: &[String]) -> String {
    let mut h = Sha256::new();
    for r in records {
        h.update(r.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn criterion_10() -> Outcome {
    let budget = PipelineBudget::default();
    let g7 = random_regular(40, 7, 1).unwrap();
    let g30 = random_regular(100, 30, 1).unwrap();
    let (gp, base) = planted(60, 14, 1);
    let cubic: Vec<Graph> = (0..10).map(|s| random_regular(20, 3, 100 + s).unwrap()).collect();
    let run = || -> Vec<String> {
        let mut out = Vec::new();
        for seed in 0..10u64 {
            out.push(product_r_dynamic(&g7, 2, seed, &budget).map(|o| o.record.to_json()).unwrap_or_else(|e| e.to_string()));
            out.push(
                r_dynamic_partition_coloring(&g30, 2, seed, &budget)
                    .map(|o| o.record.to_json())
                    .unwrap_or_else(|e| e.to_string()),
            );
            let g = &cubic[seed as usize];
            let c = base_coloring(g, &budget).coloring;
            out.push(square_bound_coloring(g, &c, seed, &budget).map(|o| o.record.to_json()).unwrap_or_else(|e| e.to_string()));
            out.push(
                recolor_with_dset(&gp, &base, DSetProfile::Regular, seed, &budget)
                    .map(|(c, d)| format!("{}{}", c.to_json(), serde_json::to_string(&d).unwrap()))
                    .unwrap_or_else(|e| e.to_string()),
            );
        }
        out
    };
    let (first, second) = (run(), run());
    let (a, b) = (digest(&first), digest(&second));
    let distinct = first.iter().collect::<std::collections::BTreeSet<_>>().len();
    let detail = format!("10 seeds x product/partition/square/D-set, sha256 {}", &a[..16]);
    if a == b {
        Ok(format!("{detail}, {distinct} distinct records"))
    } else {
        Err(format!("{detail} vs {}", &b[..16]))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", criterion_1),
        ("cycle values", criterion_2),
        ("delta+3 greedy", criterion_3),
        ("product pipeline", criterion_4),
        ("regular D-set pipeline", criterion_5),
        ("degree-ratio pipeline", criterion_6),
        ("r-way partition pipeline", criterion_7),
        ("square-bound pipeline", criterion_8),
        ("bound conformance sweep", criterion_9),
        ("determinism", criterion_10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{label}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{label}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
