//! Acceptance suite. One line per criterion: PASS, FAIL, SKIP (missing input)
//! or INFO (stretch results, never gating).
//!
//! Environment:
//! - `LEECH_STRETCH_SECS`: time limit per stretch instance (default 20).
//! - `LEECH_STRETCH_FULL=1`: also run M_21..M_24 and the H_24 selection.
//! - `LEECH_H24S1_DAT`: path of H24S1.DAT (default: `H24S1.DAT` at the workspace root).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use leech_borsuk::coloring::{exact_chromatic, solve, Coloring, SearchConfig, BEST_KNOWN_PARTS};
use leech_borsuk::confgraph::{build_graph, independent_ball, ConflictGraph, GraphMode, DEFAULT_MEM_BUDGET};
use leech_borsuk::golay::{build_golay, GolayCode};
use leech_borsuk::hset::{decode_dat, encode_hset, encode_vector, make_hset, validate_hset, HRule, FULL_LAYOUT};
use leech_borsuk::laminated::{rank_of_span, slice, SectionCounts, EXPECTED_COUNTS};
use leech_borsuk::leech::{enumerate_minimal_vectors, ip_histograms, leech_member, LatticeVector, MinimalVectorSet, Shape};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Default)]
struct Suite {
    failed: Vec<u32>,
}

impl Suite {
    fn check(&mut self, id: u32, name: &str, pass: bool, detail: String, t: Instant) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id:>2}] {name}: {detail} ({:.2} s)", t.elapsed().as_secs_f64());
        if !pass {
            self.failed.push(id);
        }
    }

    fn note(&self, id: u32, tag: &str, name: &str, detail: String) {
        println!("{tag} [{id:>2}] {name}: {detail}");
    }
}

fn main() {
    let mut suite = Suite::default();
    let code = golay_validity(&mut suite);
    let m = enumeration(&mut suite, &code);
    inner_product_law(&mut suite, &m);
    laminated_table(&mut suite, &m);
    let graph24 = graph_correctness(&mut suite, &m);
    ball(&mut suite, &m, &graph24);
    drop(graph24);
    small_colorings(&mut suite, &m);
    stretch(&suite, &m);
    dat_codec(&mut suite, &code, &m);
    determinism(&mut suite);

    if suite.failed.is_empty() {
        println!("acceptance: all gating criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {:?}", suite.failed);
        std::process::exit(1);
    }
}

fn golay_validity(suite: &mut Suite) -> GolayCode {
    let t = Instant::now();
    let code = build_golay().expect("Golay code");
    let elapsed = t.elapsed();
    let expected: BTreeMap<u32, usize> = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)].into();
    let pass = code.words().len() == 4096 && *code.weight_histogram() == expected && elapsed < Duration::from_secs(1);
    suite.check(1, "Golay code", pass, format!("{} words, weights {:?}", code.words().len(), code.weight_histogram()), t);
    code
}

fn enumeration(suite: &mut Suite, code: &GolayCode) -> MinimalVectorSet {
    let t = Instant::now();
    let m = enumerate_minimal_vectors(code);
    let members = m.vectors().par_iter().filter(|v| leech_member(v, code)).count();
    let norms = m.vectors().iter().all(|v| v.norm2() == 32);
    let counts = (m.count(Shape::ThreeOne), m.count(Shape::TwoEight), m.count(Shape::FourFour));
    let pass = m.len() == 196_560
        && counts == (98_304, 97_152, 1104)
        && members == m.len()
        && norms
        && t.elapsed() < Duration::from_secs(30);
    suite.check(2, "minimal vectors", pass, format!("|M| = {}, shapes {:?}, {members} in lattice", m.len(), counts), t);
    m
}

fn inner_product_law(suite: &mut Suite, m: &MinimalVectorSet) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bases = sample(&mut rng, m.len(), 128).into_vec();
    let expected: Vec<(i32, u64)> =
        vec![(-32, 1), (-16, 4600), (-8, 47104), (0, 93150), (8, 47104), (16, 4600), (32, 1)];
    let hists = ip_histograms(m, &bases).expect("bases in range");
    let bad = hists.iter().filter(|h| h.iter().collect::<Vec<_>>() != expected).count();
    let pass = bad == 0 && t.elapsed() < Duration::from_secs(120);
    suite.check(3, "inner-product law", pass, format!("{} random bases, {bad} deviate", bases.len()), t);
}

fn laminated_table(suite: &mut Suite, m: &MinimalVectorSet) {
    let t = Instant::now();
    let mut bad = Vec::new();
    for expected in EXPECTED_COUNTS {
        let s = slice(m, expected.n).expect("slice");
        if SectionCounts::of(&s) != expected || rank_of_span(&s) != expected.n {
            bad.push(expected.n);
        }
    }
    let spot = [(16, 4320), (13, 906), (2, 6)].iter().all(|&(n, c)| EXPECTED_COUNTS[n - 1].total == c);
    let pass = bad.is_empty() && spot && t.elapsed() < Duration::from_secs(120);
    suite.check(4, "laminated table", pass, format!("24 rows with rank n, mismatched rows {bad:?}"), t);
}

fn graph_correctness(suite: &mut Suite, m: &MinimalVectorSet) -> ConflictGraph {
    let t = Instant::now();
    let graph = build_graph(m, GraphMode::Implicit, DEFAULT_MEM_BUDGET).expect("implicit graph");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sampled = sample(&mut rng, m.len(), 1000).into_vec();
    let off: Vec<usize> = sampled.par_iter().copied().filter(|&u| graph.degree(u) != 4601).collect();

    let mut disagree = Vec::new();
    for n in 1..=10 {
        let s = slice(m, n).expect("slice");
        let ex = build_graph(&s, GraphMode::Explicit, DEFAULT_MEM_BUDGET).expect("explicit");
        let im = build_graph(&s, GraphMode::Implicit, DEFAULT_MEM_BUDGET).expect("implicit");
        let same = (0..s.len()).all(|u| {
            ex.neighbors(u) == im.neighbors(u) && (0..s.len()).all(|v| ex.is_adjacent(u, v) == im.is_adjacent(u, v))
        });
        if !same || ex.edge_count() != im.edge_count() {
            disagree.push(n);
        }
    }
    let pass = off.is_empty() && disagree.is_empty();
    suite.check(
        5,
        "conflict graph",
        pass,
        format!("degree 4601 at {} of 1000 sampled vertices; explicit/implicit disagree for n in {disagree:?}", 1000 - off.len()),
        t,
    );
    graph
}

fn ball(suite: &mut Suite, m: &MinimalVectorSet, graph: &ConflictGraph) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = m.vectors();
    let mut results = Vec::new();
    while results.len() < 12 {
        let x = rng.gen_range(0..v.len());
        let y = rng.gen_range(0..v.len());
        if v[x].dot(&v[y]) != -8 {
            continue;
        }
        let b = independent_ball(graph, x, y).expect("valid pair");
        let min_ip = b
            .members
            .par_iter()
            .enumerate()
            .map(|(i, &a)| b.members[i + 1..].iter().map(|&c| v[a as usize].dot(&v[c as usize])).min().unwrap_or(i32::MAX))
            .min()
            .unwrap_or(i32::MAX);
        results.push((b.len(), min_ip));
    }
    let pass = results.iter().all(|&r| r == (11730, -8));
    suite.check(6, "independent balls", pass, format!("{} pairs, (size, min ip) = {:?}", results.len(), dedup(&results)), t);
}

fn dedup<T: Ord + Clone>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Conflicting pairs of `c`, recounted from the vectors without the graph.
fn recount(vectors: &[LatticeVector], c: &Coloring) -> u64 {
    (0..vectors.len())
        .into_par_iter()
        .map(|i| {
            let ci = c.assignment[i];
            vectors[i + 1..]
                .iter()
                .zip(&c.assignment[i + 1..])
                .filter(|(y, &cj)| cj == ci && vectors[i].dot(y) <= -16)
                .count() as u64
        })
        .sum()
}

fn small_colorings(suite: &mut Suite, m: &MinimalVectorSet) {
    let t = Instant::now();
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=12 {
        let tn = Instant::now();
        let s = slice(m, n).expect("slice");
        let g = build_graph(&s, GraphMode::Explicit, DEFAULT_MEM_BUDGET).expect("graph");
        let target = if n <= 7 { n + 1 } else { 9 };
        let cfg = SearchConfig { k: target, seed: n as u64, restarts: 8, ..SearchConfig::default() };
        let best = solve(&g, None, &cfg).expect("solve").best;
        let conflicts = recount(s.vectors(), &best);
        let used = best.used_colors();
        let ok = used <= target && conflicts == 0 && tn.elapsed() < Duration::from_secs(600);
        pass &= ok;
        rows.push(format!("n={n}:{used}{}", if ok { "" } else { "!" }));
    }
    let mut exact = Vec::new();
    for n in 1..=3 {
        let s = slice(m, n).expect("slice");
        let g = build_graph(&s, GraphMode::Explicit, DEFAULT_MEM_BUDGET).expect("graph");
        exact.push(exact_chromatic(&g).expect("small graph"));
    }
    pass &= exact == [2, 3, 4];
    suite.check(7, "small-dimension coloring", pass, format!("parts {}; exact chi(M_1..M_3) = {exact:?}", rows.join(" ")), t);
}

fn stretch_secs() -> f64 {
    std::env::var("LEECH_STRETCH_SECS").ok().and_then(|s| s.parse().ok()).unwrap_or(20.0)
}

fn stretch_run(vectors: Vec<LatticeVector>, target: usize, seed: u64) -> Result<(usize, usize, u64), String> {
    let n = vectors.len();
    let ids = (0..n as u32).collect();
    let g = ConflictGraph::from_vectors(vectors.clone(), ids, GraphMode::Auto, DEFAULT_MEM_BUDGET).map_err(|e| e.to_string())?;
    if !g.is_explicit() {
        return Err("graph exceeds the memory budget".into());
    }
    let cfg = SearchConfig {
        k: target,
        seed,
        max_iterations: 200_000,
        restarts: 4,
        time_limit: Some(Duration::from_secs_f64(stretch_secs())),
        ..SearchConfig::default()
    };
    let best = solve(&g, None, &cfg).map_err(|e| e.to_string())?.best;
    Ok((n, best.used_colors(), recount(&vectors, &best)))
}

fn stretch(suite: &Suite, m: &MinimalVectorSet) {
    let full = std::env::var("LEECH_STRETCH_FULL").is_ok_and(|v| v == "1");
    let last = if full { 24 } else { 20 };
    for n in 13..=24 {
        let target = BEST_KNOWN_PARTS[n - 1];
        if n > last {
            suite.note(8, "SKIP", &format!("stretch M_{n}"), format!("reference {target}; set LEECH_STRETCH_FULL=1"));
            continue;
        }
        let s = slice(m, n).expect("slice");
        let line = match stretch_run(s.vectors().to_vec(), target, n as u64) {
            Ok((v, parts, conflicts)) => format!("{v} vectors, {parts} parts (reference {target}), recount {conflicts} conflicts"),
            Err(e) => format!("not attempted: {e}"),
        };
        suite.note(8, "INFO", &format!("stretch M_{n}"), line);
    }
    for (n, target, name) in [(23, 24, "H_23"), (24, 30, "H_24")] {
        if n == 24 && !full {
            suite.note(8, "SKIP", &format!("stretch {name}"), "set LEECH_STRETCH_FULL=1".into());
            continue;
        }
        let base = if n == 24 { m.clone() } else { slice(m, n).expect("slice") };
        let h = make_hset(&base, HRule::Canonical).expect("selection");
        let line = match stretch_run(h.realized().to_vec(), target, 100 + n as u64) {
            Ok((v, parts, conflicts)) => format!("{v} vectors, {parts} parts (reference {target}), recount {conflicts} conflicts"),
            Err(e) => format!("not attempted: {e}"),
        };
        suite.note(8, "INFO", &format!("stretch {name}"), line);
    }
}

fn dat_path() -> PathBuf {
    match std::env::var_os("LEECH_H24S1_DAT") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../H24S1.DAT"),
    }
}

fn dat_codec(suite: &mut Suite, code: &GolayCode, m: &MinimalVectorSet) {
    let t = Instant::now();
    let h = make_hset(m, HRule::Seeded(2024)).expect("selection");
    let bytes = encode_hset(&h).expect("encode");
    let back = decode_dat(&bytes, m, code).expect("decode");
    let again = encode_hset(&back).expect("re-encode");
    let mut x = [0i8; 24];
    x[0] = 4;
    x[1] = 4;
    let record = encode_vector(&LatticeVector::new(x), Shape::FourFour).expect("record");
    let pass = bytes.len() == 589_680
        && FULL_LAYOUT.byte_len() == 589_680
        && back.realized() == h.realized()
        && again == bytes
        && record == [90, 85, 85, 85, 85, 85];
    suite.check(9, "DAT codec (synthetic)", pass, format!("{} bytes, round trip exact, record {record:?}", bytes.len()), t);

    let path = dat_path();
    let Ok(file) = std::fs::read(&path) else {
        suite.note(9, "SKIP", "DAT codec (H24S1.DAT)", format!("{} not present", path.display()));
        return;
    };
    let t = Instant::now();
    match decode_dat(&file, m, code) {
        Ok(h) => {
            let r = validate_hset(m, &h, false);
            let pass = (r.four_four, r.two_eight, r.three_one) == (552, 48576, 49152)
                && r.antipodal_ok()
                && r.min_ip == Some(-16)
                && r.diameter2 == Some(96);
            suite.check(
                9,
                "DAT codec (H24S1.DAT)",
                pass,
                format!("types {}/{}/{}, min ip {:?}, diameter² {:?}", r.four_four, r.two_eight, r.three_one, r.min_ip, r.diameter2),
                t,
            );
        }
        Err(e) => suite.check(9, "DAT codec (H24S1.DAT)", false, format!("decode failed: {e}"), t),
    }
}

fn run_color(dir: &Path, args: &[&str]) -> (Vec<u8>, serde_json::Value) {
    let status = Command::new(env!("CARGO_BIN_EXE_leech-borsuk"))
        .current_dir(dir)
        .args(args)
        .arg("--out")
        .arg("coloring.json")
        .output()
        .expect("spawn leech-borsuk");
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let coloring = std::fs::read(dir.join("coloring.json")).expect("coloring file");
    let mut manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.join("coloring.json.manifest.json")).expect("manifest")).expect("json");
    manifest.as_object_mut().expect("object").remove("wall_time_secs");
    (coloring, manifest)
}

fn determinism(suite: &mut Suite) {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = Vec::new();
    for args in [
        ["color", "--dim", "12", "-k", "9", "--seed", "17", "--restarts", "8"].as_slice(),
        ["color", "--dim", "10", "-k", "9", "--seed", "4", "--peel", "1"].as_slice(),
        ["color", "--dim", "14", "-k", "11", "--seed", "9", "--max-iters", "20000", "--restarts", "1"].as_slice(),
    ] {
        let a = tempfile::tempdir().expect("tempdir");
        let b = tempfile::tempdir().expect("tempdir");
        let first = run_color(a.path(), args);
        let second = run_color(b.path(), args);
        pass &= first == second;
        checked.push(format!("{}{}", args[2], if first == second { "" } else { "!" }));
    }
    suite.check(10, "determinism", pass, format!("coloring files and manifests identical for dims {}", checked.join(",")), t);
}
