//! `f2rank`: build, convert and certify twin-free graphs of minimal binary
//! rank.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or parse errors.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use f2rank::constructions::{extremal_odd_plus_one, g2, g2_power, linegraph_clique_plus_isolated};
use f2rank::gf2::{rank, rank_with, EliminationStrategy};
use f2rank::graph::encode_graph6;
use f2rank::search;
use f2rank::spectral::{self, RealMatrix, Spectrum, SpectrumEntry};
use f2rank::verify::{self, VerificationReport};
use f2rank::{BitMatrix, Graph};

use input::{read_graph, read_matrix, render, write_output, Format, UsageError};

/// `println!` through [`write_output`], so a closed pipe is not a panic.
macro_rules! out {
    ($($arg:tt)*) => {
        write_output(None, &format!("{}\n", format_args!($($arg)*)))?
    };
}

const SPECTRUM_MAX_ORDER: usize = 1024;
const THREADS_VAR: &str = "F2RANK_THREADS";

#[derive(Parser)]
#[command(name = "f2rank", version, about = "Twin-free graphs of minimal GF(2) rank")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Parity powers of the triangle plus an isolated vertex; order 4^m
    G2pow,
    /// Line graph of K_k plus an isolated vertex
    LinegraphK,
    /// K_2 parity product with g2pow((n-1)/2); order 2^n for odd n
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Plain,
    M4r,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// All 64 graphs on 4 vertices
    N2,
    /// The eight filled-in 8-vertex matrices
    N3Structured,
    /// All 2^28 symmetric zero-diagonal 8x8 matrices
    N3Exhaustive,
    /// L(K_6)+K_1 against g2pow 2
    N4Iso,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::N2 => "n2",
            Mode::N3Structured => "n3-structured",
            Mode::N3Exhaustive => "n3-exhaustive",
            Mode::N4Iso => "n4-iso",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchOp {
    Rank,
    RankM4r,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from one of the families
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        param: usize,
        #[arg(long, value_enum, default_value_t = Format::F2mat)]
        format: Format,
        /// Output file; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a graph is extremal and satisfies the structural invariants
    Verify {
        input: PathBuf,
        #[arg(long)]
        expect_n: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Also compute the adjacency spectrum (at most 1024 vertices)
        #[arg(long)]
        spectrum: bool,
    },
    /// Print the GF(2) rank of a matrix
    Rank {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Plain)]
        method: Method,
    },
    /// Adjacency spectrum with multiplicities
    Spectrum {
        input: PathBuf,
        #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run a finite search and print a JSON certificate
    Search {
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Decide isomorphism of two graphs
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a graph in another format
    Convert {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Format,
    },
    /// Time rank computations on random dense matrices
    Bench {
        #[arg(long, value_enum, default_value_t = BenchOp::Rank)]
        op: BenchOp,
        #[arg(long, default_value_t = 1024)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, UsageError> {
    match cmd {
        Command::Construct { family, param, format, out } => {
            let g = construct(family, param)?;
            write_output(out.as_deref(), &render(&g, format))?;
            Ok(true)
        }
        Command::Verify { input, expect_n, json, spectrum } => cmd_verify(&input, expect_n, json, spectrum),
        Command::Rank { input, method } => {
            let (m, _) = read_matrix(&input)?;
            let r = match method {
                Method::Plain => rank(&m),
                Method::M4r => rank_with(&m, EliminationStrategy::FourRussians { k: 8 }),
            };
            out!("{r}");
            Ok(true)
        }
        Command::Spectrum { input, tol, json } => cmd_spectrum(&input, tol, json),
        Command::Search { mode } => cmd_search(mode),
        Command::Iso { a, b, json } => cmd_iso(&a, &b, json),
        Command::Convert { input, out, format } => {
            let (g, _) = read_graph(&input)?;
            write_output(out.as_deref(), &render(&g, format))?;
            Ok(true)
        }
        Command::Bench { op, size, reps, seed } => cmd_bench(op, size, reps, seed),
    }
}

fn construct(family: Family, param: usize) -> Result<Graph, UsageError> {
    Ok(match family {
        Family::G2pow => g2_power(param)?,
        Family::LinegraphK => linegraph_clique_plus_isolated(param)?,
        Family::Odd => extremal_odd_plus_one(param)?,
    })
}

fn print_json(v: &impl Serialize) -> Result<(), UsageError> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

#[derive(Serialize)]
struct InputInfo {
    order: usize,
    format: String,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    input: InputInfo,
    checks: &'a [verify::Check],
    rank: usize,
    srg: Option<[usize; 4]>,
    spectrum: Option<Spectrum>,
    pass: bool,
}

/// The graph with its isolated vertices removed.
fn without_isolated(g: &Graph) -> Graph {
    let keep: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) > 0).collect();
    Graph::new(g.adjacency().permute_symmetric(&keep).expect("indices in range")).expect("induced subgraph")
}

/// Checks that only make sense for extremal graphs of order `N`: balanced
/// rows, quarter intersections, Hadamard sign matrix and strong regularity
/// of the non-isolated part.
fn regularity_checks(g: &Graph) -> (VerificationReport, Option<[usize; 4]>) {
    let mut r = VerificationReport::new();
    let n = g.order();
    r.push("balanced_rows", verify::check_balanced_rows(g), "nonzero rows have weight N/2");
    r.push("pairwise_quarters", verify::check_pairwise_quarters(g), "nonzero row pairs meet in N/4 per pattern");
    r.push("hadamard", spectral::sign_map_is_hadamard(g.adjacency()), "sign matrix S satisfies S S^T = N I");
    let core = without_isolated(g);
    match verify::srg_parameters(&core) {
        Ok(p) => {
            let ok = n % 4 == 0 && p.consistent_with(n - 1, n / 2, n / 4, n / 4);
            r.push("srg", ok, format!("non-isolated part is SRG {:?}, expected [N-1, N/2, N/4, N/4]", p.as_array()));
            (r, Some(p.as_array()))
        }
        Err(e) => {
            r.push("srg", false, e.to_string());
            (r, None)
        }
    }
}

fn graph_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, UsageError> {
    if g.order() > SPECTRUM_MAX_ORDER {
        return Err(UsageError(format!(
            "spectrum supports at most {SPECTRUM_MAX_ORDER} vertices, got {}",
            g.order()
        )));
    }
    let m = RealMatrix::from_bits(g.adjacency())?;
    Ok(rounded(&spectral::jacobi_spectrum(&m, tol, spectral::default_group_tol(&m))?))
}

fn cmd_verify(path: &Path, expect_n: Option<usize>, json: bool, want_spectrum: bool) -> Result<bool, UsageError> {
    let (g, format) = read_graph(path)?;
    let rk = rank(g.adjacency());
    let n = expect_n.unwrap_or_else(|| {
        if g.order().is_power_of_two() {
            g.order().trailing_zeros() as usize
        } else {
            rk
        }
    });
    let spectrum = if want_spectrum { Some(graph_spectrum(&g, spectral::DEFAULT_TOL)?) } else { None };
    let mut report = verify::verify_extremal(&g, n);
    let (regular, srg) = regularity_checks(&g);
    report.extend(regular);
    report.extend(verify::decomposition_invariants(g.adjacency()));
    let pass = report.pass();
    if json {
        print_json(&VerifyOutput {
            input: InputInfo {
                order: g.order(),
                format: format.to_string(),
            },
            checks: &report.checks,
            rank: rk,
            srg,
            spectrum,
            pass,
        })?;
    } else {
        out!("order {} ({format}), rank {rk}", g.order());
        out!("{report}");
        if let Some(s) = spectrum {
            for e in s.entries() {
                out!("eigenvalue {} multiplicity {}", e.value, e.multiplicity);
            }
        }
    }
    Ok(pass)
}

/// Eigenvalues rounded to 9 decimals, with `-0` folded into `0`.
fn round9(v: f64) -> f64 {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn rounded(s: &Spectrum) -> Spectrum {
    Spectrum::new(
        s.entries()
            .iter()
            .map(|e| SpectrumEntry {
                value: round9(e.value),
                multiplicity: e.multiplicity,
            })
            .collect(),
    )
}

fn cmd_spectrum(path: &Path, tol: f64, json: bool) -> Result<bool, UsageError> {
    let (g, _) = read_graph(path)?;
    let s = graph_spectrum(&g, tol)?;
    if json {
        print_json(&s)?;
    } else {
        for e in s.entries() {
            out!("{} {}", e.value, e.multiplicity);
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct Certificate {
    mode: &'static str,
    candidates_examined: u64,
    violations: Vec<Value>,
    stats: Value,
    pass: bool,
    elapsed_ms: u128,
}

fn worker_count() -> Result<usize, UsageError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(UsageError(format!("{THREADS_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

fn cmd_search(mode: Mode) -> Result<bool, UsageError> {
    let start = Instant::now();
    let (candidates, violations, stats) = match mode {
        Mode::N2 => {
            let sols = search::enumerate_n2();
            let target = g2();
            let mut violations = Vec::new();
            for g in &sols {
                let iso = search::isomorphic(g, &target);
                let ext = verify::verify_extremal(g, 2).pass();
                if !iso || !ext {
                    violations.push(json!({"graph6": encode_graph6(g), "isomorphic_to_c3_k1": iso, "extremal": ext}));
                }
            }
            let stats = json!({
                "solutions": sols.len(),
                "graph6": sols.iter().map(encode_graph6).collect::<Vec<_>>(),
            });
            if sols.is_empty() {
                violations.push(json!("no solutions found"));
            }
            (64, violations, stats)
        }
        Mode::N3Structured => {
            let cases = search::n3_structured_cases();
            let mut violations = Vec::new();
            let mut summary = Vec::new();
            for c in &cases {
                let xyz = [u8::from(c.x), u8::from(c.y), u8::from(c.z)];
                summary.push(json!({"xyz": xyz, "twins": c.twins, "coset_closed": c.coset_closed}));
                if c.twins.is_none() || !c.coset_closed {
                    violations.push(json!({"xyz": xyz}));
                }
            }
            (cases.len() as u64, violations, json!({ "cases": summary }))
        }
        Mode::N3Exhaustive => {
            let s = search::sweep_n3(worker_count()?);
            let violations = s.violations.iter().map(|&c| json!(c)).collect();
            let stats = json!({
                "twin_free": s.twin_free,
                "rank3": s.rank3,
                "rank3_with_duplicates": s.rank3_with_duplicates,
                "subspace": s.subspace,
                "violation_count": s.violation_count,
            });
            (s.candidates, violations, stats)
        }
        Mode::N4Iso => {
            let l = linegraph_clique_plus_isolated(6)?;
            let p = g2_power(2)?;
            let map = search::isomorphism(&l, &p);
            let verified = map.as_ref().is_some_and(|m| search::is_isomorphism(&l, &p, m));
            let violations = if verified { Vec::new() } else { vec![json!("no verified isomorphism")] };
            (1, violations, json!({ "witness": map, "witness_verified": verified }))
        }
    };
    let pass = violations.is_empty();
    print_json(&Certificate {
        mode: mode.name(),
        candidates_examined: candidates,
        violations,
        stats,
        pass,
        elapsed_ms: start.elapsed().as_millis(),
    })?;
    Ok(pass)
}

fn cmd_iso(a: &Path, b: &Path, json: bool) -> Result<bool, UsageError> {
    let (g, _) = read_graph(a)?;
    let (h, _) = read_graph(b)?;
    let map = search::isomorphism(&g, &h);
    let verified = map.as_ref().is_some_and(|m| search::is_isomorphism(&g, &h, m));
    if json {
        print_json(&json!({"isomorphic": verified, "witness": map}))?;
    } else if let Some(m) = map.filter(|_| verified) {
        out!("isomorphic");
        let pairs: Vec<String> = m.iter().enumerate().map(|(u, v)| format!("{u}->{v}")).collect();
        out!("{}", pairs.join(" "));
    } else {
        out!("not isomorphic");
    }
    Ok(verified)
}

fn cmd_bench(op: BenchOp, size: usize, reps: usize, seed: u64) -> Result<bool, UsageError> {
    if size == 0 || reps == 0 {
        return Err(UsageError("size and reps must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = BitMatrix::from_fn(size, size, |_, _| rng.gen());
    let strategy = match op {
        BenchOp::Rank => EliminationStrategy::Plain,
        BenchOp::RankM4r => EliminationStrategy::FourRussians { k: 8 },
    };
    let mut times = Vec::with_capacity(reps);
    let mut r = 0;
    for _ in 0..reps {
        let t = Instant::now();
        r = rank_with(&m, strategy);
        times.push(t.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    let median = if reps % 2 == 1 {
        times[reps / 2]
    } else {
        (times[reps / 2 - 1] + times[reps / 2]) / 2.0
    };
    let name = match op {
        BenchOp::Rank => "rank",
        BenchOp::RankM4r => "rank-m4r",
    };
    out!("op {name} size {size} reps {reps} seed {seed} rank {r}");
    out!("median {:.3} ms", median * 1e3);
    out!("throughput {:.1} Mbit/s", (size * size) as f64 / median / 1e6);
    Ok(true)
}
