//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cliquebound::verify::{
    extremal_clique_search, extremal_total_clique_search, verify_avgwt_lemma,
    verify_cluster_dichotomy, verify_finite_calculation, verify_fold_certificates, verify_lex_mu,
    verify_main_pipeline, verify_star_matching,
};
use cliquebound::{
    canonical_form, compress, enumerate_graphs, read_graph6, triple_census, write_graph6,
    CanonicalKey, Graph, SearchSpace, VerifyReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CELL_LIMIT: Duration = Duration::from_secs(300);

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn clean(rep: &VerifyReport, cell: &str) -> Result<(), String> {
    if rep.passed() {
        Ok(())
    } else {
        Err(format!("{cell}: {}", rep.violations.join("; ")))
    }
}

fn detail_u64(rep: &VerifyReport, field: &str) -> u64 {
    rep.details.get(field).and_then(Value::as_u64).unwrap_or(0)
}

fn labelled_graphs(n: usize) -> impl ParallelIterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).into_par_iter().map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.random_range(0..=max_n);
    let p: f64 = rng.random();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Induced 3-vertex types by direct inspection: `[empty, one edge, cherry, triangle]`.
fn brute_census(g: &Graph) -> [u64; 4] {
    let n = g.n();
    let mut out = [0; 4];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let k = [(a, b), (a, c), (b, c)]
                    .iter()
                    .filter(|&&(x, y)| g.has_edge(x, y))
                    .count();
                out[k] += 1;
            }
        }
    }
    out
}

fn brute_mu(g: &Graph) -> u64 {
    let c = brute_census(g);
    2 * c[3] + c[2]
}

fn gls_desk_scale() -> Outcome {
    let cells = (0..=9)
        .map(|n| (n, 3))
        .chain((0..=10).map(|n| (n, 2)))
        .chain((0..=8).map(|n| (n, 4)));
    let mut examined = 0;
    let mut slowest = (Duration::ZERO, 0, 0);
    let mut count = 0;
    for (n, r) in cells {
        let started = Instant::now();
        let rep = extremal_clique_search(n, r, 3).map_err(|e| format!("n={n} r={r}: {e}"))?;
        let took = started.elapsed();
        clean(&rep, &format!("n={n} r={r}"))?;
        let (a, b) = ((n / (r + 1)) as u64, (n % (r + 1)) as u64);
        let expected = a * choose(r as u64 + 1, 3) + choose(b, 3);
        if rep.extremal_value != Some(expected as i64) {
            return Err(format!(
                "n={n} r={r}: max {:?}, expected {expected}",
                rep.extremal_value
            ));
        }
        if took > CELL_LIMIT {
            return Err(format!("n={n} r={r} took {took:?}"));
        }
        examined += rep.examined;
        count += 1;
        if took > slowest.0 {
            slowest = (took, n, r);
        }
    }
    Ok(format!(
        "{count} cells, {examined} classes, slowest n={} r={} in {:.2}s",
        slowest.1,
        slowest.2,
        slowest.0.as_secs_f64()
    ))
}

fn total_equality_cases() -> Outcome {
    let k = |n| Graph::complete(n).unwrap();
    let union = |g: &Graph, h: &Graph| g.disjoint_union(h).unwrap();
    let cases = [
        (
            7,
            15,
            vec![
                union(&k(3).repeat(2).unwrap(), &k(1)),
                union(&k(3), &Graph::cycle(4).unwrap()),
            ],
        ),
        (
            8,
            17,
            vec![
                union(&k(3).repeat(2).unwrap(), &k(2)),
                union(&k(3), &Graph::cycle(5).unwrap()),
            ],
        ),
    ];
    let mut out = Vec::new();
    for (n, value, graphs) in cases {
        let rep = extremal_total_clique_search(n, 2).map_err(|e| e.to_string())?;
        clean(&rep, &format!("n={n}"))?;
        let found: BTreeSet<CanonicalKey> =
            rep.witnesses.iter().filter_map(|w| w.key.clone()).collect();
        let expected: BTreeSet<CanonicalKey> = graphs.iter().map(canonical_form).collect();
        if found != expected || rep.extremal_value != Some(value) {
            return Err(format!(
                "n={n}: value {:?}, {} maximizers",
                rep.extremal_value,
                found.len()
            ));
        }
        out.push(format!("n={n}: {} maximizers at {value}", found.len()));
    }
    Ok(out.join(", "))
}

fn lex_mu_maximal() -> Outcome {
    let mut layers = 0;
    for n in 0..=7 {
        let rep = verify_lex_mu(n).map_err(|e| format!("n={n}: {e}"))?;
        clean(&rep, &format!("n={n}"))?;
        layers += rep.witnesses.len();
    }
    Ok(format!("{layers} (n, m) layers with zero violations"))
}

fn star_matching_maximal() -> Outcome {
    let mut layers = 0;
    for n in 0..=7 {
        let rep = verify_star_matching(n).map_err(|e| format!("n={n}: {e}"))?;
        clean(&rep, &format!("n={n}"))?;
        layers += rep.witnesses.iter().filter(|w| w.key.is_some()).count();
    }
    Ok(format!("{layers} (n, m) layers with zero violations"))
}

fn compression_monotone() -> Outcome {
    let check = |g: &Graph, x: usize, y: usize| -> Result<(), String> {
        let h = compress(g, x, y).map_err(|e| e.to_string())?;
        if h.n() != g.n() || h.edge_count() != g.edge_count() || brute_mu(&h) < brute_mu(g) {
            return Err(format!(
                "{} compressed {x}->{y} gives {}",
                write_graph6(g),
                write_graph6(&h)
            ));
        }
        Ok(())
    };
    let mut exhaustive = 0;
    for n in 2..=6 {
        exhaustive += labelled_graphs(n)
            .map(|g| -> Result<usize, String> {
                let mut k = 0;
                for x in 0..n {
                    for y in (0..n).filter(|&y| y != x) {
                        check(&g, x, y)?;
                        k += 1;
                    }
                }
                Ok(k)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0c0a);
    let mut random = 0;
    while random < 20_000 {
        let g = random_graph(&mut rng, 24);
        if g.n() < 2 {
            continue;
        }
        let x = rng.random_range(0..g.n());
        let y = (x + rng.random_range(1..g.n())) % g.n();
        check(&g, x, y)?;
        random += 1;
    }
    Ok(format!(
        "{exhaustive} exhaustive and {random} random triples"
    ))
}

fn cluster_dichotomy() -> Outcome {
    let mut clusters = 0;
    let mut graphs = 0;
    for r in 0..=4 {
        for n in 0..=9 {
            let rep = verify_cluster_dichotomy(n, r).map_err(|e| format!("n={n} r={r}: {e}"))?;
            clean(&rep, &format!("n={n} r={r}"))?;
            clusters += detail_u64(&rep, "clusters_checked");
            graphs += rep.examined;
        }
    }
    Ok(format!(
        "{clusters} clusters with nonempty shell across {graphs} classes"
    ))
}

fn fold_certificates() -> Outcome {
    let mut folds = 0;
    for r in 0..=4 {
        for n in 0..=9 {
            let rep = verify_fold_certificates(n, r).map_err(|e| format!("n={n} r={r}: {e}"))?;
            clean(&rep, &format!("fold sweep n={n} r={r}"))?;
            folds += detail_u64(&rep, "folds");
        }
    }
    let mut pipeline_folds = 0;
    for r in 2..=4 {
        for n in 0..=9 {
            let rep = verify_main_pipeline(n, r).map_err(|e| format!("n={n} r={r}: {e}"))?;
            clean(&rep, &format!("pipeline n={n} r={r}"))?;
            pipeline_folds += detail_u64(&rep, "folds");
        }
    }
    if folds == 0 || pipeline_folds == 0 {
        return Err("no folds were executed".into());
    }
    Ok(format!(
        "{folds} single folds and {pipeline_folds} pipeline folds certified"
    ))
}

fn avgwt_sweep() -> Outcome {
    let rep = verify_avgwt_lemma(12).map_err(|e| e.to_string())?;
    clean(&rep, "sweep")?;
    let mut cells = 0;
    for r in 1..=12i64 {
        for b in 0..=r {
            for a in (0..=2 * r).filter(|a| 27 * a * a >= 4 * r * r) {
                let lhs = 2 * (a * (r + 1) * r / 2 * (r - 1) + b * (b - 1) / 2 * (b - 2));
                let rhs = (r - 2) * r * (a * (r + 1) + b);
                if lhs <= rhs {
                    return Err(format!("r={r} a={a} b={b}: {lhs} <= {rhs}"));
                }
                cells += 1;
            }
        }
    }
    if cells != rep.examined {
        return Err(format!(
            "report swept {} cells, oracle {cells}",
            rep.examined
        ));
    }
    Ok(format!(
        "{cells} (r, a, b) cells, least slack {:?}",
        rep.extremal_value
    ))
}

fn finite_calculation() -> Outcome {
    let started = Instant::now();
    let mut out = Vec::new();
    for r in 3..=6usize {
        let rep = verify_finite_calculation(r).map_err(|e| e.to_string())?;
        clean(&rep, &format!("r={r}"))?;
        let n_max = rep.space["n_max"].as_u64().unwrap_or(0);
        let lim = 4 * (r * r * (r + 1) * (r + 1)) as u64;
        let core = (0..)
            .take_while(|&n: &u64| 27 * n * n <= lim)
            .last()
            .unwrap_or(0);
        if n_max != core + r as u64 {
            return Err(format!(
                "r={r}: swept to {n_max}, expected {}",
                core + r as u64
            ));
        }
        for n in 0..=n_max {
            let (a, b) = (n / (r as u64 + 1), n % (r as u64 + 1));
            if a < 2 {
                continue;
            }
            let lhs = (r as u64 - 2) * r as u64 * n;
            let rhs = 6 * (a * choose(r as u64 + 1, 3) + choose(b, 3));
            if lhs > rhs {
                return Err(format!("r={r} n={n}: {lhs} > {rhs}"));
            }
        }
        out.push(format!("r={r} n≤{n_max} ({} with a≥2)", rep.examined));
    }
    let took = started.elapsed();
    if took > Duration::from_secs(1) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{} in {:.1}ms",
        out.join(", "),
        took.as_secs_f64() * 1e3
    ))
}

/// Smallest adjacency-bit string over all relabellings.
fn permutation_min_key(g: &Graph, perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| g.permute(p).unwrap().rows().to_vec())
        .min()
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn enumeration_soundness() -> Outcome {
    let known = [11, 34, 156, 1044];
    let mut out = Vec::new();
    for (n, &expected) in (4..=7).zip(&known) {
        let listed: BTreeSet<CanonicalKey> = enumerate_graphs(&SearchSpace::all(n))
            .map_err(|e| e.to_string())?
            .iter()
            .map(canonical_form)
            .collect();
        let buckets: HashSet<CanonicalKey> =
            labelled_graphs(n).map(|g| canonical_form(&g)).collect();
        if listed.len() != expected || buckets.len() != expected {
            return Err(format!(
                "n={n}: enumerated {}, labelled buckets {}",
                listed.len(),
                buckets.len()
            ));
        }
        if listed != buckets.into_iter().collect() {
            return Err(format!(
                "n={n}: enumerated classes differ from labelled buckets"
            ));
        }
        if n <= 6 {
            let perms = permutations(n);
            let orbits: HashSet<Vec<u64>> = labelled_graphs(n)
                .map(|g| permutation_min_key(&g, &perms))
                .collect();
            if orbits.len() != expected {
                return Err(format!(
                    "n={n}: relabelling oracle finds {} classes",
                    orbits.len()
                ));
            }
        }
        out.push(format!("n={n}: {expected}"));
    }
    Ok(out.join(", "))
}

fn census_identities(g: &Graph) -> Result<(), String> {
    let n = g.n() as u64;
    let c = triple_census(g);
    let fail = |what: &str| Err(format!("{}: {what}", write_graph6(g)));
    if [c.empty, c.one_edge, c.cherries, c.triangles] != brute_census(g) {
        return fail("census differs from direct inspection");
    }
    if c.triangles + c.cherries + c.one_edge + c.empty != choose(n, 3) {
        return fail("sum");
    }
    let e = g.edge_count() as u64;
    if 3 * c.triangles + 2 * c.cherries + c.one_edge != e * n.saturating_sub(2) {
        return fail("edge incidence");
    }
    let deg = g.degrees();
    let pairs: u64 = deg.iter().map(|&d| choose(d as u64, 2)).sum();
    if pairs != c.cherries + 3 * c.triangles {
        return fail("incident edge pairs");
    }
    let mut across = 0;
    for u in 0..g.n() {
        for v in (u + 1..g.n()).filter(|&v| !g.has_edge(u, v)) {
            across += (deg[u] + deg[v]) as u64;
        }
    }
    if across != 2 * c.cherries + 2 * c.one_edge {
        return fail("edge/non-edge incidences");
    }
    Ok(())
}

fn census() -> Outcome {
    let mut corpus = Vec::new();
    for n in 0..=7 {
        corpus.extend(enumerate_graphs(&SearchSpace::all(n)).map_err(|e| e.to_string())?);
    }
    for (n, r) in [(9, 4), (10, 3)] {
        corpus.extend(enumerate_graphs(&SearchSpace::bounded(n, r)).map_err(|e| e.to_string())?);
    }
    corpus.par_iter().try_for_each(census_identities)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xce_2505);
    let random: Vec<Graph> = (0..3000).map(|_| random_graph(&mut rng, 64)).collect();
    random.par_iter().try_for_each(census_identities)?;
    Ok(format!(
        "{} enumerated and {} random graphs",
        corpus.len(),
        random.len()
    ))
}

fn graph6_round_trip() -> Outcome {
    let mut total = 0;
    for n in 0..=7 {
        let corpus = enumerate_graphs(&SearchSpace::all(n)).map_err(|e| e.to_string())?;
        for g in &corpus {
            let s = write_graph6(g);
            let back = read_graph6(&s).map_err(|e| format!("{s}: {e}"))?;
            if &back != g || write_graph6(&back) != s {
                return Err(format!("{s} does not round-trip"));
            }
        }
        total += corpus.len();
    }
    Ok(format!("{total} classes with n ≤ 7"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("triangle maximum under a degree bound", gls_desk_scale),
        ("total clique maximizers for r = 2", total_equality_cases),
        ("lex graphs maximize μ", lex_mu_maximal),
        (
            "star plus matching maximizes μ without isolates",
            star_matching_maximal,
        ),
        ("compression never lowers μ", compression_monotone),
        ("every cluster folds or discharges", cluster_dichotomy),
        ("fold certificates", fold_certificates),
        ("average weight sweep", avgwt_sweep),
        ("finite calculation", finite_calculation),
        ("enumeration soundness", enumeration_soundness),
        ("census identities", census),
        ("graph6 round trip", graph6_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
