//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::ops::RangeInclusive;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use f2rank::constructions::{extremal_odd_plus_one, g2, g2_power, linegraph_clique_plus_isolated};
use f2rank::gf2::{rank, write_f2mat};
use f2rank::graph::encode_graph6;
use f2rank::products::{kronecker, parity_product, parity_product_graph, sign_map, unsign_map};
use f2rank::search::{self, SweepStats};
use f2rank::spectral::{self, RealMatrix};
use f2rank::verify;
use f2rank::{BitMatrix, Graph};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_matrix(rng: &mut impl Rng, max: usize) -> BitMatrix {
    let (r, c) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
    BitMatrix::from_fn(r, c, |_, _| rng.gen())
}

fn random_graph(rng: &mut impl Rng, sizes: RangeInclusive<usize>) -> Graph {
    let n = rng.gen_range(sizes);
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen()).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn extremal_family() -> Outcome {
    for m in 1..=6 {
        let g = g2_power(m).unwrap();
        let r = rank(g.adjacency());
        ensure(g.order() == 1 << (2 * m), || format!("m={m}: order {}", g.order()))?;
        ensure(r == 2 * m, || format!("m={m}: rank {r}"))?;
        ensure(g.is_twin_free(), || format!("m={m}: twins"))?;
        ensure(g.is_negation_free(), || format!("m={m}: negation pair"))?;
        let iso = g.isolated_vertices();
        ensure(iso.len() == 1, || format!("m={m}: isolated {iso:?}"))?;
    }
    Ok("m=1..6: order 4^m, rank 2m, twin-free, negation-free, one isolated vertex".into())
}

fn line_graph_bounds() -> Outcome {
    let mut ranks = Vec::new();
    for k in 5..=12 {
        let l = Graph::complete(k).line_graph().unwrap();
        let r = rank(l.adjacency());
        let bound = if k % 2 == 0 { k - 2 } else { k - 1 };
        ensure(r <= bound, || format!("k={k}: rank {r} > {bound}"))?;
        ranks.push(r);
    }
    let g = linegraph_clique_plus_isolated(6).unwrap();
    let r6 = rank(g.adjacency());
    ensure(g.order() == 16 && r6 == 4, || format!("k=6: order {}, rank {r6}", g.order()))?;
    Ok(format!("ranks of L(K_5..12) = {ranks:?}; L(K_6)+K_1 has order 16, rank 4"))
}

fn parity_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs = 250;
    for i in 0..pairs {
        let a = random_graph(&mut rng, 1..=10);
        let b = random_graph(&mut rng, 1..=10);
        let p = parity_product_graph(&a, &b);
        let (ra, rb, rp) = (rank(a.adjacency()), rank(b.adjacency()), rank(p.adjacency()));
        ensure(rp <= ra + rb, || format!("pair {i}: rank {rp} > {ra} + {rb}"))?;
    }
    let mut pool = vec![g2(), Graph::empty(1)];
    while pool.len() < 40 {
        let g = random_graph(&mut rng, 3..=8);
        if g.is_twin_free() && g.is_negation_free() {
            pool.push(g);
        }
    }
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let p = parity_product_graph(a, b);
            ensure(p.is_twin_free() && p.is_negation_free(), || format!("pool pair ({i}, {j})"))?;
        }
    }
    Ok(format!("{pairs} random pairs sub-additive; {} pool pairs twin-free and negation-free", pool.len() * pool.len()))
}

fn sign_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs = 150;
    for i in 0..pairs {
        let (n, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let a = BitMatrix::from_fn(n, n, |_, _| rng.gen());
        let b = BitMatrix::from_fn(m, m, |_, _| rng.gen());
        let via_signs = unsign_map(&sign_map(&a).kronecker(&sign_map(&b)));
        ensure(parity_product(&a, &b) == via_signs, || format!("pair {i}"))?;
    }
    Ok(format!("{pairs} random pairs up to 8x8"))
}

fn kronecker_rank() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs = 150;
    for i in 0..pairs {
        let a = random_matrix(&mut rng, 8);
        let b = random_matrix(&mut rng, 8);
        let (ra, rb, rk) = (rank(&a), rank(&b), rank(&kronecker(&a, &b)));
        ensure(rk == ra * rb, || format!("pair {i}: {rk} != {ra} * {rb}"))?;
    }
    Ok(format!("{pairs} random pairs up to 8x8"))
}

fn hadamard() -> Outcome {
    for m in 1..=5 {
        let s = sign_map(g2_power(m).unwrap().adjacency());
        ensure(spectral::is_hadamard(&s), || format!("m={m}"))?;
    }
    Ok("S S^T = 4^m I for m=1..5 in integer arithmetic".into())
}

fn regularity() -> Outcome {
    for m in 1..=5 {
        let g = g2_power(m).unwrap();
        let n = g.order();
        ensure(verify::check_balanced_rows(&g), || format!("m={m}: unbalanced row"))?;
        ensure(verify::check_pairwise_quarters(&g), || format!("m={m}: quarter count"))?;
        let h = g.remove_vertex(n - 1).unwrap();
        let p = verify::srg_parameters(&h).map_err(|e| format!("m={m}: {e}"))?;
        ensure(p.consistent_with(n - 1, n / 2, n / 4, n / 4), || format!("m={m}: {p:?}"))?;
    }
    Ok("balanced rows, N/4 intersections, SRG [N-1, N/2, N/4, N/4] for m=1..5 (m=1: mu vacuous)".into())
}

fn spectrum() -> Outcome {
    for m in 1..=4 {
        let a = RealMatrix::from_bits(g2_power(m).unwrap().adjacency()).unwrap();
        let s = spectral::spectrum_of(&a).map_err(|e| format!("m={m}: {e}"))?;
        let want = spectral::analytic_spectrum(m);
        ensure(s.matches(&want, 1e-8), || format!("m={m}: {s:?} vs {want:?}"))?;
        ensure(want.trace() == 0.0, || format!("m={m}: analytic trace {}", want.trace()))?;
        let swapped = spectral::swapped_multiplicity_spectrum(m);
        ensure(swapped.trace() != 0.0 && !s.matches(&swapped, 1e-8), || {
            format!("m={m}: swapped assignment unexpectedly consistent")
        })?;
    }
    let traces: Vec<f64> = (1..=4).map(|m| spectral::swapped_multiplicity_spectrum(m).trace()).collect();
    Ok(format!(
        "Jacobi matches the trace-zero spectrum for m=1..4; the swapped assignment is trace-inconsistent (traces {traces:?})"
    ))
}

fn n2_uniqueness() -> Outcome {
    let sols = search::enumerate_n2();
    ensure(!sols.is_empty(), || "no solutions".into())?;
    for g in &sols {
        let map = search::isomorphism(g, &g2()).ok_or_else(|| format!("{} not isomorphic to C3+K1", encode_graph6(g)))?;
        ensure(search::is_isomorphism(g, &g2(), &map), || "bad witness".into())?;
        ensure(verify::verify_extremal(g, 2).pass(), || format!("{} not extremal", encode_graph6(g)))?;
    }
    Ok(format!("{} labelled solutions among 64, all isomorphic to C3+K1", sols.len()))
}

fn n3_nonexistence(sweep: &SweepStats) -> Outcome {
    ensure(search::nonexistence_n3_structured(), || "structured case without twins".into())?;
    ensure(sweep.candidates == search::N3_CANDIDATES, || format!("examined {}", sweep.candidates))?;
    ensure(sweep.pass(), || format!("violations {:?}", sweep.violations))?;
    ensure(sweep.subspace == 0, || format!("{} subspace matrices", sweep.subspace))?;
    Ok(format!(
        "structured: 8/8 cases have twins; exhaustive: 0 of {} twin-free rank 3 ({} twin-free, {} of rank 3)",
        sweep.candidates, sweep.twin_free, sweep.rank3
    ))
}

fn odd_construction() -> Outcome {
    for n in [3, 5, 7, 9] {
        let g = extremal_odd_plus_one(n).unwrap();
        let r = rank(g.adjacency());
        ensure(g.order() == 1 << n, || format!("n={n}: order {}", g.order()))?;
        ensure(g.is_twin_free(), || format!("n={n}: twins"))?;
        ensure(r == n + 1, || format!("n={n}: rank {r}"))?;
    }
    Ok("n=3,5,7,9: order 2^n, twin-free, rank n+1".into())
}

fn n4_iso() -> Outcome {
    let l = linegraph_clique_plus_isolated(6).unwrap();
    let p = g2_power(2).unwrap();
    let map = search::isomorphism(&l, &p).ok_or("not isomorphic")?;
    ensure(search::is_isomorphism(&l, &p, &map), || "witness fails".into())?;
    Ok(format!("witness {map:?}"))
}

fn decomposition() -> Outcome {
    let required = [
        "u_eq_u_hat",
        "rank_b",
        "u_not_in_rowsp_b",
        "s_eq_t",
        "wsxy_relation",
        "xw_membership",
        "rank_identity",
    ];
    for m in 2..=5 {
        let r = verify::decomposition_invariants(g2_power(m).unwrap().adjacency());
        for name in required {
            let c = r.get(name).ok_or_else(|| format!("m={m}: missing {name}"))?;
            ensure(c.pass, || format!("m={m}: {name}: {}", c.details))?;
        }
        ensure(r.pass(), || format!("m={m}:\n{r}"))?;
    }
    Ok("all invariants hold on g2_power(m), m=2..5".into())
}

fn run_cli(args: &[&str], threads: Option<&str>) -> Result<(Option<i32>, String), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_f2rank"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("F2RANK_THREADS", t),
        None => cmd.env_remove("F2RANK_THREADS"),
    };
    let o = cmd.output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&o.stdout)
        .lines()
        .filter(|l| !l.contains("elapsed_ms") && !l.starts_with("median") && !l.starts_with("throughput"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok((o.status.code(), text))
}

fn determinism(sweep: &SweepStats) -> Outcome {
    let dir = std::env::temp_dir().join(format!("f2rank-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = |name: &str, text: String| {
        let p = dir.join(name);
        std::fs::write(&p, text).map(|_| p.to_str().unwrap().to_string())
    };
    let g2p = file("g2.f2m", write_f2mat(g2_power(2).unwrap().adjacency())).map_err(|e| e.to_string())?;
    let g3p = file("g3.g6", encode_graph6(&g2_power(3).unwrap()) + "\n").map_err(|e| e.to_string())?;
    let l6 = file("l6.f2m", write_f2mat(linegraph_clique_plus_isolated(6).unwrap().adjacency())).map_err(|e| e.to_string())?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["construct", "--family", "g2pow", "--param", "3", "--format", "graph6"],
        vec!["construct", "--family", "linegraph-k", "--param", "7"],
        vec!["construct", "--family", "odd", "--param", "5", "--format", "f2mat"],
        vec!["verify", &g2p],
        vec!["verify", &g3p, "--json", "--spectrum"],
        vec!["rank", &l6],
        vec!["rank", &g3p, "--method", "m4r"],
        vec!["spectrum", &g2p, "--json"],
        vec!["search", "--mode", "n2"],
        vec!["search", "--mode", "n3-structured"],
        vec!["search", "--mode", "n4-iso"],
        vec!["iso", &l6, &g2p],
        vec!["convert", &g3p, "--format", "f2mat"],
        vec!["bench", "--op", "rank", "--size", "512", "--reps", "3"],
    ];
    for args in &commands {
        let first = run_cli(args, None)?;
        let second = run_cli(args, None)?;
        ensure(first.0 == Some(0), || format!("{args:?} exited {:?}", first.0))?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
    }
    let mut outputs = Vec::new();
    for t in ["1", "2", "4", "8"] {
        let (code, text) = run_cli(&["search", "--mode", "n3-exhaustive"], Some(t))?;
        ensure(code == Some(0), || format!("sweep with {t} workers exited {code:?}"))?;
        outputs.push(text);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "sweep output depends on worker count".into())?;
    ensure(outputs[0].contains(&format!("\"twin_free\": {}", sweep.twin_free)), || {
        "CLI sweep disagrees with library sweep".into()
    })?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across runs; sweep identical for 1, 2, 4, 8 workers", commands.len()))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {id:>2} {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL {id:>2} {name} ({secs:.2}s): {msg}");
            }
        }
    };
    report(1, "extremal family", &mut extremal_family);
    report(2, "line-graph bounds", &mut line_graph_bounds);
    report(3, "parity product laws", &mut parity_laws);
    report(4, "sign-map identity", &mut sign_identity);
    report(5, "kronecker rank multiplicativity", &mut kronecker_rank);
    report(6, "hadamard", &mut hadamard);
    report(7, "regularity", &mut regularity);
    report(8, "spectrum", &mut spectrum);
    report(9, "n=2 uniqueness", &mut n2_uniqueness);
    let mut sweep = SweepStats::default();
    report(10, "n=3 nonexistence", &mut || {
        sweep = search::sweep_n3(1);
        n3_nonexistence(&sweep)
    });
    report(11, "odd-n construction", &mut odd_construction);
    report(12, "n=4 uniqueness cross-check", &mut n4_iso);
    report(13, "decomposition invariants", &mut decomposition);
    report(14, "determinism", &mut || determinism(&sweep));
    println!("acceptance: {} of 14 criteria passed", 14 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
