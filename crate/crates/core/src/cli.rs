//! Command-line front end. Every artifact-producing command also writes
//! `<output>.manifest.json` with the command line, seeds, SHA-256 digests of
//! inputs and outputs, and wall time.
//!
//! Exit status: 0 on success, 1 when a validation fails (or a runtime error
//! occurs), 2 on usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coloring::{
    dsatur, solve, verify_coloring, ColoringFile, SearchConfig, Strategy, BEST_KNOWN_PARTS, RNG_ALGORITHM,
};
use crate::confgraph::{build_graph, export_dimacs, peel, ConflictGraph, GraphMode, DEFAULT_PEEL_CANDIDATES};
use crate::golay::{build_golay, GolayCode, WEIGHT_ENUMERATOR};
use crate::hset::{decode_dat, encode_hset, make_hset, selection_from_vectors, validate_vectors, HRule, HSelection};
use crate::laminated::{lattice_name, rank_of_span, slice, SectionCounts, EXPECTED_COUNTS};
use crate::leech::{enumerate_minimal_vectors, ip_histograms, read_vector_lines, stride_sample, write_vector_lines, InnerProductHistogram, MinimalVectorSet, Shape};

/// Version tag written into manifests; bump when an output format changes.
pub const FORMAT_VERSION: &str = "leech-borsuk-format/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) | CliError::Runtime(_) => 1,
        }
    }
}

macro_rules! runtime_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Runtime(e.to_string())
            }
        }
    )*};
}
runtime_from!(io::Error, serde_json::Error, crate::golay::GolayError, crate::confgraph::GraphError, crate::coloring::ColoringError, crate::leech::LeechError);

impl From<crate::hset::HsetError> for CliError {
    fn from(e: crate::hset::HsetError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<crate::laminated::LaminatedError> for CliError {
    fn from(e: crate::laminated::LaminatedError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "leech-borsuk", version, about = "Leech lattice minimal vectors, laminated sections and diameter-reducing partitions")]
pub struct Cli {
    /// Memory budget in bytes for explicit conflict graphs (suffixes K, M, G accepted).
    #[arg(long, global = true, default_value = "3G", value_parser = parse_bytes)]
    pub mem_budget: u64,
    /// Worker threads for scans and graph construction (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let (num, mult) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 1 << 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    num.parse::<u64>().map(|n| n * mult).map_err(|e| format!("bad byte count {s:?}: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and check the Golay code.
    Golay {
        #[arg(long)]
        check: bool,
        /// Write all 4096 words, one 24-character line each.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Write the minimal vectors of M_n in canonical order.
    Enumerate {
        #[arg(long, default_value_t = 24)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shape counts and inner-product histogram of M_n.
    Stats {
        #[arg(long)]
        dim: usize,
        /// Use every vector as a base (quadratic).
        #[arg(long)]
        full_pairs: bool,
        /// Number of evenly spaced base vectors.
        #[arg(long, default_value_t = 100)]
        sample: usize,
    },
    /// Write M_n (same format as `enumerate`).
    Slice {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the laminated section table with PASS/FAIL per cell.
    Counts {
        #[arg(long)]
        all: bool,
    },
    /// Export the conflict graph.
    Export {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        hset: Option<PathBuf>,
        #[arg(long, default_value = "dimacs")]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Greedily peel independent balls; one line of 1-based vertex ids per set.
    Peel {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        hset: Option<PathBuf>,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_PEEL_CANDIDATES)]
        candidates: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a coloring with at most K colors.
    Color(ColorArgs),
    /// Recount the conflicts of a coloring file.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        hset: Option<PathBuf>,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Antipodal selections and their packed file format.
    #[command(subcommand)]
    Hset(HsetCommand),
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long)]
    pub dim: usize,
    /// Color a selection of M_n instead of M_n itself.
    #[arg(long)]
    pub hset: Option<PathBuf>,
    /// Target number of colors.
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "tabucol")]
    pub strategy: Strategy,
    /// Iteration budget of each TABUCOL run.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iters: u64,
    #[arg(long, default_value_t = 4)]
    pub restarts: u32,
    /// Reserve this many independent balls as color classes first.
    #[arg(long, default_value_t = 0)]
    pub peel: usize,
    #[arg(long, default_value_t = 10)]
    pub tenure_base: u32,
    #[arg(long, default_value_t = 0.6)]
    pub tenure_slope: f64,
    /// Wall-clock limit; a run cut short by it is not replayable.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum HsetCommand {
    /// Choose one vector from each antipodal pair of M_n.
    Make {
        #[arg(long, default_value_t = 24)]
        dim: usize,
        /// `canonical` or `seed:S`.
        #[arg(long, default_value = "canonical")]
        rule: String,
        /// `.dat` writes packed records, anything else one vector per line.
        #[arg(long)]
        out: PathBuf,
    },
    /// Packed file to vector lines.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 24)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vector lines to packed file.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 24)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check pair completeness, inner-product support and diameter.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 24)]
        dim: usize,
        /// Compare all pairs instead of stopping at witnesses.
        #[arg(long)]
        exhaustive: bool,
    },
}

/// Parses `argv` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let mut command_line: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    if let Some(first) = command_line.first_mut() {
        *first = "leech-borsuk".into();
    }
    let mut ctx = Context { mem_budget: cli.mem_budget, command_line, shell: None };
    match ctx.dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, Serialize)]
struct RunManifest {
    command: Vec<String>,
    format_version: &'static str,
    crate_version: &'static str,
    rng: &'static str,
    seeds: Vec<u64>,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
    details: serde_json::Value,
    wall_time_secs: f64,
}

fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Path of the manifest written next to `out`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

struct Context {
    mem_budget: u64,
    command_line: Vec<String>,
    shell: Option<(GolayCode, MinimalVectorSet)>,
}

struct Manifest<'a> {
    seeds: Vec<u64>,
    inputs: Vec<&'a Path>,
    outputs: Vec<&'a Path>,
    details: serde_json::Value,
    started: Instant,
}

impl Context {
    fn shell(&mut self) -> Result<&(GolayCode, MinimalVectorSet), CliError> {
        if self.shell.is_none() {
            let code = build_golay()?;
            let m = enumerate_minimal_vectors(&code);
            self.shell = Some((code, m));
        }
        Ok(self.shell.as_ref().unwrap())
    }

    fn section(&mut self, dim: usize) -> Result<MinimalVectorSet, CliError> {
        let (_, m) = self.shell()?;
        if dim == 24 {
            return Ok(m.clone());
        }
        Ok(slice(m, dim)?)
    }

    fn write_manifest(&self, m: Manifest<'_>) -> Result<(), CliError> {
        let digest = |paths: &[&Path]| -> Result<BTreeMap<String, String>, CliError> {
            paths.iter().map(|p| Ok((p.display().to_string(), sha256_file(p)?))).collect()
        };
        let manifest = RunManifest {
            command: self.command_line.clone(),
            format_version: FORMAT_VERSION,
            crate_version: env!("CARGO_PKG_VERSION"),
            rng: RNG_ALGORITHM,
            seeds: m.seeds,
            inputs: digest(&m.inputs)?,
            outputs: digest(&m.outputs)?,
            details: m.details,
            wall_time_secs: m.started.elapsed().as_secs_f64(),
        };
        let path = manifest_path(m.outputs[0]);
        fs::write(path, serde_json::to_string_pretty(&manifest)? + "\n")?;
        Ok(())
    }

    fn dispatch(&mut self, command: Command) -> Result<(), CliError> {
        match command {
            Command::Golay { check, dump } => self.golay(check, dump),
            Command::Enumerate { dim, out } | Command::Slice { dim, out } => self.enumerate(dim, out),
            Command::Stats { dim, full_pairs, sample } => self.stats(dim, full_pairs, sample),
            Command::Counts { all } => self.counts(all),
            Command::Export { dim, hset, format, out } => self.export(dim, hset, &format, out),
            Command::Peel { dim, hset, k, candidates, out } => self.peel(dim, hset, k, candidates, out),
            Command::Color(args) => self.color(args),
            Command::Verify { dim, hset, coloring } => self.verify(dim, hset, coloring),
            Command::Hset(cmd) => self.hset(cmd),
        }
    }

    fn golay(&mut self, check: bool, dump: Option<PathBuf>) -> Result<(), CliError> {
        let started = Instant::now();
        let code = match build_golay() {
            Ok(c) => c,
            Err(e) => return Err(CliError::Validation(format!("Golay code check FAIL: {e}"))),
        };
        if check || dump.is_none() {
            println!("weight  count  expected");
            for (w, expected) in WEIGHT_ENUMERATOR {
                let found = code.weight_histogram().get(&w).copied().unwrap_or(0);
                println!("{w:>6} {found:>6} {expected:>9}");
            }
            println!("words: {}", code.words().len());
            println!(
                "note: 759 words of weight 8, not 729 (759 · 128 = 97152 vectors of shape (±2^8, 0^16))"
            );
            println!("Golay code check PASS");
        }
        if let Some(path) = dump {
            let mut w = BufWriter::new(fs::File::create(&path)?);
            for word in code.words() {
                writeln!(w, "{word}")?;
            }
            w.flush()?;
            drop(w);
            self.write_manifest(Manifest { seeds: vec![], inputs: vec![], outputs: vec![&path], details: serde_json::Value::Null, started })?;
        }
        Ok(())
    }

    fn enumerate(&mut self, dim: usize, out: Option<PathBuf>) -> Result<(), CliError> {
        let started = Instant::now();
        let set = self.section(dim)?;
        match out {
            None => write_vector_lines(BufWriter::new(io::stdout().lock()), set.vectors())?,
            Some(path) => {
                write_vector_lines(BufWriter::new(fs::File::create(&path)?), set.vectors())?;
                let details = serde_json::to_value(SectionCounts::of(&set))?;
                self.write_manifest(Manifest { seeds: vec![], inputs: vec![], outputs: vec![&path], details, started })?;
                eprintln!("wrote {} vectors of M_{dim} to {}", set.len(), path.display());
            }
        }
        Ok(())
    }

    fn stats(&mut self, dim: usize, full_pairs: bool, sample: usize) -> Result<(), CliError> {
        let set = self.section(dim)?;
        println!("M_{dim} ({}): {} vectors", lattice_name(dim), set.len());
        for s in Shape::ALL {
            println!("  {:<8} {}", s.label(), set.count(s));
        }
        let bases = if full_pairs { (0..set.len()).collect() } else { stride_sample(set.len(), sample.max(1)) };
        let hists = ip_histograms(&set, &bases)?;
        let uniform = hists.windows(2).all(|w| w[0] == w[1]);
        let mut total = InnerProductHistogram::default();
        for h in &hists {
            total.merge(h);
        }
        println!("inner products over {} base vectors ({}):", bases.len(), if uniform { "identical for every base" } else { "base-dependent" });
        println!("  {:>5} {:>14} {:>12} {:>6}", "ip", "total", "per base", "dist²");
        for (p, n) in total.iter() {
            println!("  {:>5} {:>14} {:>12.2} {:>6}", p, n, n as f64 / bases.len() as f64, 2 * (32 - p));
        }
        let min = total.support().next().unwrap_or(32);
        let max_nontrivial = total.support().filter(|&p| p < 32).max();
        println!("diameter² = {}", 2 * (32 - min));
        if let Some(p) = max_nontrivial {
            println!("smallest nonzero distance² = {}", 2 * (32 - p));
        }
        Ok(())
    }

    fn counts(&mut self, _all: bool) -> Result<(), CliError> {
        let (_, m) = self.shell()?;
        let m = m.clone();
        println!("{:>3}  {:<14} {:>14} {:>14} {:>14} {:>14} {:>9}", "n", "lattice", "#M_n", "(±4,0)", "(±2,0)", "(±3,±1)", "rank");
        let mut failures = 0;
        for expected in EXPECTED_COUNTS.iter().rev() {
            let section = slice(&m, expected.n)?;
            let got = SectionCounts::of(&section);
            let rank = rank_of_span(&section);
            let cell = |g: usize, e: usize, failures: &mut usize| {
                if g != e {
                    *failures += 1;
                }
                format!("{g} {}", if g == e { "PASS" } else { "FAIL" })
            };
            println!(
                "{:>3}  {:<14} {:>14} {:>14} {:>14} {:>14} {:>9}",
                expected.n,
                lattice_name(expected.n),
                cell(got.total, expected.total, &mut failures),
                cell(got.four_four, expected.four_four, &mut failures),
                cell(got.two_eight, expected.two_eight, &mut failures),
                cell(got.three_one, expected.three_one, &mut failures),
                cell(rank, expected.n, &mut failures),
            );
        }
        if failures > 0 {
            return Err(CliError::Validation(format!("{failures} cells differ from the reference table")));
        }
        println!("all 24 rows PASS");
        Ok(())
    }

    /// The vector set to build a graph on: M_n, or a selection of it read from `hset`.
    fn vertex_set(&mut self, dim: usize, hset: Option<&Path>) -> Result<(MinimalVectorSet, Option<HSelection>), CliError> {
        let base = self.section(dim)?;
        let Some(path) = hset else { return Ok((base, None)) };
        let h = self.read_selection(path, &base)?;
        Ok((base, Some(h)))
    }

    fn read_selection(&mut self, path: &Path, base: &MinimalVectorSet) -> Result<HSelection, CliError> {
        if is_packed(path) {
            let bytes = fs::read(path)?;
            let (code, _) = self.shell()?;
            Ok(decode_dat(&bytes, base, code)?)
        } else {
            let vectors = read_vector_lines(BufReader::new(fs::File::open(path)?))?;
            Ok(selection_from_vectors(base, vectors)?)
        }
    }

    fn graph(&mut self, dim: usize, hset: Option<&Path>) -> Result<ConflictGraph, CliError> {
        let (base, h) = self.vertex_set(dim, hset)?;
        let graph = match h {
            None => build_graph(&base, GraphMode::Auto, self.mem_budget)?,
            Some(h) => {
                let ids = (0..h.len() as u32).collect();
                ConflictGraph::from_vectors(h.realized().to_vec(), ids, GraphMode::Auto, self.mem_budget)?
            }
        };
        if !graph.is_explicit() {
            eprintln!("note: conflict graph exceeds the memory budget, using implicit adjacency");
        }
        Ok(graph)
    }

    fn export(&mut self, dim: usize, hset: Option<PathBuf>, format: &str, out: PathBuf) -> Result<(), CliError> {
        if format != "dimacs" {
            return Err(CliError::Usage(format!("unsupported export format {format:?} (only dimacs)")));
        }
        let started = Instant::now();
        let graph = self.graph(dim, hset.as_deref())?;
        export_dimacs(&graph, BufWriter::new(fs::File::create(&out)?))?;
        let details = serde_json::json!({ "vertices": graph.vertex_count(), "edges": graph.edge_count() });
        self.write_manifest(Manifest { seeds: vec![], inputs: hset.iter().map(|p| p.as_path()).collect(), outputs: vec![&out], details, started })?;
        eprintln!("wrote p edge {} {} to {}", graph.vertex_count(), graph.edge_count(), out.display());
        Ok(())
    }

    fn peel(&mut self, dim: usize, hset: Option<PathBuf>, k: usize, candidates: usize, out: PathBuf) -> Result<(), CliError> {
        let started = Instant::now();
        let graph = self.graph(dim, hset.as_deref())?;
        let peeling = peel(&graph, k, candidates)?;
        let mut w = BufWriter::new(fs::File::create(&out)?);
        for set in &peeling.sets {
            let line: Vec<String> = set.members.iter().map(|m| (m + 1).to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        w.flush()?;
        drop(w);
        let sizes: Vec<usize> = peeling.sets.iter().map(|s| s.len()).collect();
        println!("peeled {} sets, sizes {:?}, residual {} vertices", sizes.len(), sizes, peeling.residual.vertex_count());
        let details = serde_json::json!({ "set_sizes": sizes, "residual_vertices": peeling.residual.vertex_count() });
        self.write_manifest(Manifest { seeds: vec![], inputs: hset.iter().map(|p| p.as_path()).collect(), outputs: vec![&out], details, started })
    }

    fn color(&mut self, a: ColorArgs) -> Result<(), CliError> {
        if a.k == 0 {
            return Err(CliError::Usage("-k must be at least 1".into()));
        }
        let started = Instant::now();
        let graph = self.graph(a.dim, a.hset.as_deref())?;
        let cfg = SearchConfig {
            k: a.k,
            seed: a.seed,
            max_iterations: a.max_iters,
            tabu_tenure_base: a.tenure_base,
            tabu_tenure_slope: a.tenure_slope,
            restarts: a.restarts,
            peel_count: a.peel,
            peel_candidates: DEFAULT_PEEL_CANDIDATES,
            time_limit: a.time_limit.map(Duration::from_secs_f64),
        };
        let (coloring, attempts) = match a.strategy {
            Strategy::Dsatur => {
                let mut c = dsatur(&graph);
                c.meta.seed = a.seed;
                (c, Vec::new())
            }
            Strategy::Tabucol => {
                let report = solve(&graph, Some(a.k), &cfg)?;
                (report.best, report.attempts)
            }
        };
        let check = verify_coloring(&graph, &coloring)?;
        let mut coloring = coloring;
        coloring.conflicts = check.conflicts;
        let file = ColoringFile::from_coloring(a.dim, &coloring);
        fs::write(&a.out, file.to_json())?;
        let reference = if a.hset.is_none() { Some(BEST_KNOWN_PARTS[a.dim - 1]) } else { None };
        println!(
            "colors {} conflicts {} iterations {} target {} {}",
            coloring.k,
            check.conflicts,
            coloring.meta.iterations,
            a.k,
            if coloring.k <= a.k && check.conflicts == 0 { "reached" } else { "not reached" }
        );
        if let Some(m) = coloring.meta.near_miss {
            println!("near miss: {} colors with {} conflicts", m.colors, m.conflicts);
        }
        if coloring.meta.timed_out {
            println!("time limit hit: this run is not replayable");
        }
        let details = serde_json::json!({
            "dimension": a.dim,
            "vertices": graph.vertex_count(),
            "target": a.k,
            "colors": coloring.k,
            "conflicts": check.conflicts,
            "iterations": coloring.meta.iterations,
            "reference_parts": reference,
            "near_miss": coloring.meta.near_miss,
            "timed_out": coloring.meta.timed_out,
            "attempts": attempts,
        });
        let inputs: Vec<&Path> = a.hset.iter().map(|p| p.as_path()).collect();
        self.write_manifest(Manifest { seeds: vec![a.seed], inputs, outputs: vec![&a.out], details, started })
    }

    fn verify(&mut self, dim: usize, hset: Option<PathBuf>, coloring: PathBuf) -> Result<(), CliError> {
        let file = ColoringFile::from_json(&fs::read_to_string(&coloring)?)
            .map_err(|e| CliError::Validation(format!("{}: {e}", coloring.display())))?;
        if file.dimension != dim {
            return Err(CliError::Validation(format!("coloring is for dimension {}, not {dim}", file.dimension)));
        }
        let graph = self.graph(dim, hset.as_deref())?;
        let c = file.clone().into_coloring();
        let check = verify_coloring(&graph, &c).map_err(|e| CliError::Validation(e.to_string()))?;
        println!("vertices {} colors {} conflicts {}", graph.vertex_count(), file.colors, check.conflicts);
        for (u, v) in check.examples.iter().take(10) {
            println!("  conflict: {} -- {}", u + 1, v + 1);
        }
        if check.conflicts != file.conflicts {
            println!("note: file records {} conflicts", file.conflicts);
        }
        if check.conflicts > 0 {
            return Err(CliError::Validation(format!("{} conflicting edges", check.conflicts)));
        }
        println!("proper: division into {} parts of squared diameter < 96", c.used_colors());
        Ok(())
    }

    fn hset(&mut self, cmd: HsetCommand) -> Result<(), CliError> {
        let started = Instant::now();
        match cmd {
            HsetCommand::Make { dim, rule, out } => {
                let (rule, seeds) = parse_rule(&rule)?;
                let base = self.section(dim)?;
                let h = make_hset(&base, rule)?;
                self.write_selection(&h, &out)?;
                println!("selected {} of {} vectors", h.len(), base.len());
                self.write_manifest(Manifest { seeds, inputs: vec![], outputs: vec![&out], details: serde_json::json!({ "dimension": dim }), started })
            }
            HsetCommand::Decode { input, dim, out } => {
                let base = self.section(dim)?;
                let bytes = fs::read(&input)?;
                let (code, _) = self.shell()?;
                let h = decode_dat(&bytes, &base, code)?;
                write_vector_lines(BufWriter::new(fs::File::create(&out)?), h.realized())?;
                println!("decoded {} vectors", h.len());
                self.write_manifest(Manifest { seeds: vec![], inputs: vec![&input], outputs: vec![&out], details: serde_json::Value::Null, started })
            }
            HsetCommand::Encode { input, dim, out } => {
                let base = self.section(dim)?;
                let vectors = read_vector_lines(BufReader::new(fs::File::open(&input)?))?;
                let h = selection_from_vectors(&base, vectors)?;
                fs::write(&out, encode_hset(&h)?)?;
                println!("encoded {} vectors", h.len());
                self.write_manifest(Manifest { seeds: vec![], inputs: vec![&input], outputs: vec![&out], details: serde_json::Value::Null, started })
            }
            HsetCommand::Validate { input, dim, exhaustive } => {
                let base = self.section(dim)?;
                let vectors = if is_packed(&input) {
                    self.read_selection(&input, &base)?.realized().to_vec()
                } else {
                    read_vector_lines(BufReader::new(fs::File::open(&input)?))?
                };
                let report = validate_vectors(&base, &vectors, exhaustive);
                println!("{}", serde_json::to_string_pretty(&report)?);
                if !report.antipodal_ok() {
                    return Err(CliError::Validation("not a valid antipodal selection".into()));
                }
                Ok(())
            }
        }
    }

    fn write_selection(&self, h: &HSelection, out: &Path) -> Result<(), CliError> {
        if is_packed(out) {
            fs::write(out, encode_hset(h)?)?;
        } else {
            write_vector_lines(BufWriter::new(fs::File::create(out)?), h.realized())?;
        }
        Ok(())
    }
}

fn is_packed(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("dat"))
}

fn parse_rule(rule: &str) -> Result<(HRule, Vec<u64>), CliError> {
    if rule == "canonical" {
        return Ok((HRule::Canonical, vec![]));
    }
    if let Some(s) = rule.strip_prefix("seed:") {
        let seed = s.parse().map_err(|e| CliError::Usage(format!("bad seed in rule {rule:?}: {e}")))?;
        return Ok((HRule::Seeded(seed), vec![seed]));
    }
    Err(CliError::Usage(format!("unknown rule {rule:?} (expected canonical or seed:S)")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confgraph::DEFAULT_MEM_BUDGET;

    #[test]
    fn byte_suffixes() {
        assert_eq!(parse_bytes("3G").unwrap(), DEFAULT_MEM_BUDGET);
        assert_eq!(parse_bytes("512M").unwrap(), 512 << 20);
        assert_eq!(parse_bytes("1000").unwrap(), 1000);
        assert!(parse_bytes("x").is_err());
    }

    #[test]
    fn rules() {
        assert_eq!(parse_rule("canonical").unwrap().0, HRule::Canonical);
        assert_eq!(parse_rule("seed:9").unwrap().0, HRule::Seeded(9));
        assert!(parse_rule("seed:x").is_err());
        assert!(parse_rule("random").is_err());
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(manifest_path(Path::new("a/b.json")), PathBuf::from("a/b.json.manifest.json"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["leech-borsuk", "bogus"]), 2);
        assert_eq!(run(["leech-borsuk", "stats"]), 2);
        assert_eq!(run(["leech-borsuk", "stats", "--dim", "25"]), 2);
    }
}
