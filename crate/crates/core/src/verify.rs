//! Checkers for extremal graphs and their coset decomposition.
//!
//! Every checker returns data. Failures become report entries so callers can
//! always print a complete report.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{rank, row_space_contains, rows_form_subspace, BitMatrix, BitVector};
use crate::graph::Graph;
use crate::products::kronecker;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, pass: bool, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            details: details.into(),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// True iff every check passed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.details)?;
        }
        write!(f, "overall: {}", if self.pass() { "PASS" } else { "FAIL" })
    }
}

fn pow2(n: usize) -> Option<usize> {
    (n < usize::BITS as usize - 1).then(|| 1usize << n)
}

/// Order `2^n`, twin-free, rank `n`, rows form a subspace, exactly one
/// isolated vertex.
pub fn verify_extremal(g: &Graph, n: usize) -> VerificationReport {
    let mut r = VerificationReport::new();
    let order = g.order();
    let want = pow2(n);
    r.push(
        "order",
        want == Some(order),
        format!("order {order}, expected 2^{n}"),
    );
    match g.find_twins() {
        None => r.push("twin_free", true, "all rows distinct"),
        Some((a, b)) => r.push("twin_free", false, format!("vertices {a} and {b} are twins")),
    }
    let rk = rank(g.adjacency());
    r.push("rank", rk == n, format!("rank {rk}, expected {n}"));
    let sub = rows_form_subspace(g.adjacency());
    r.push(
        "rows_form_subspace",
        sub,
        if sub { "rows are a subspace" } else { "rows are not a subspace" },
    );
    let iso = g.isolated_vertices();
    r.push(
        "one_isolated_vertex",
        iso.len() == 1,
        format!("isolated vertices {iso:?}"),
    );
    r
}

/// Every nonzero row has popcount `order / 2`.
pub fn check_balanced_rows(g: &Graph) -> bool {
    let v = g.order();
    (0..v).all(|i| {
        let d = g.degree(i);
        d == 0 || 2 * d == v
    })
}

/// For every pair of distinct nonzero rows `x, y` and all `b, b'`, the set
/// `{i : x_i = b, y_i = b'}` has `order / 4` elements.
pub fn check_pairwise_quarters(g: &Graph) -> bool {
    let v = g.order();
    if v % 4 != 0 {
        return (0..v).filter(|&i| g.degree(i) > 0).count() < 2;
    }
    let q = v / 4;
    let nonzero: Vec<usize> = (0..v).filter(|&i| g.degree(i) > 0).collect();
    for (a, &i) in nonzero.iter().enumerate() {
        let (x, dx) = (g.neighborhood(i), g.degree(i));
        for &j in &nonzero[a + 1..] {
            let (y, dy) = (g.neighborhood(j), g.degree(j));
            let both = x.and_popcount(y);
            let counts = [v + both - dx - dy, dx - both, dy - both, both];
            if counts.iter().any(|&c| c != q) {
                return false;
            }
        }
    }
    true
}

/// Parameters of a strongly regular graph. `lambda` is `None` when there is
/// no adjacent pair and `mu` is `None` when there is no non-adjacent pair;
/// any value is then consistent with the definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: Option<usize>,
    pub mu: Option<usize>,
}

impl SrgParams {
    /// `[v, k, lambda, mu]` with vacuous parameters written as 0.
    pub fn as_array(&self) -> [usize; 4] {
        [self.v, self.k, self.lambda.unwrap_or(0), self.mu.unwrap_or(0)]
    }

    /// Whether the graph is also strongly regular with the given parameters.
    pub fn consistent_with(&self, v: usize, k: usize, lambda: usize, mu: usize) -> bool {
        self.v == v && self.k == k && self.lambda.is_none_or(|l| l == lambda) && self.mu.is_none_or(|m| m == mu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotSrgReason {
    Irregular { degrees: (usize, usize) },
    AdjacentCommon { expected: usize, found: usize },
    NonAdjacentCommon { expected: usize, found: usize },
}

/// Why a graph is not strongly regular, with a witness pair of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("not strongly regular: vertices {pair:?} ({reason:?})")]
pub struct NotSrg {
    pub pair: (usize, usize),
    pub reason: NotSrgReason,
}

pub fn srg_parameters(g: &Graph) -> Result<SrgParams, NotSrg> {
    let v = g.order();
    let k = if v == 0 { 0 } else { g.degree(0) };
    if let Some(u) = (1..v).find(|&u| g.degree(u) != k) {
        return Err(NotSrg {
            pair: (0, u),
            reason: NotSrgReason::Irregular { degrees: (k, g.degree(u)) },
        });
    }
    let mut lambda = None;
    let mut mu = None;
    for a in 0..v {
        for b in a + 1..v {
            let c = g.common_neighbors(a, b);
            let adjacent = g.has_edge(a, b);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(expected) if expected != c => {
                    let reason = if adjacent {
                        NotSrgReason::AdjacentCommon { expected, found: c }
                    } else {
                        NotSrgReason::NonAdjacentCommon { expected, found: c }
                    };
                    return Err(NotSrg { pair: (a, b), reason });
                }
                Some(_) => {}
            }
        }
    }
    Ok(SrgParams { v, k, lambda, mu })
}

/// `(1/v^3) * sum over ordered pairs x != y of | |N(x) ∩ N(y)| - p^2 v |`
/// with `p = 2e / (v (v - 1))` the edge density of `g`.
pub fn quasirandom_deviation(g: &Graph) -> f64 {
    let v = g.order();
    if v < 2 {
        return 0.0;
    }
    let vf = v as f64;
    let p = 2.0 * g.edge_count() as f64 / (vf * (vf - 1.0));
    let target = p * p * vf;
    let mut sum = 0.0;
    for a in 0..v {
        for b in a + 1..v {
            sum += 2.0 * (g.common_neighbors(a, b) as f64 - target).abs();
        }
    }
    sum / (vf * vf * vf)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has a nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("rows do not form a subspace")]
    NotSubspace,
    #[error("need rank at least {needed}, got {rank}")]
    TooSmall { needed: usize, rank: usize },
    #[error("coset vector halves differ: u != û")]
    CosetHalvesDiffer,
    #[error("block identity violated: {0}")]
    BlockIdentity(String),
}

/// A subspace matrix conjugated into coset order, in which row `k` is the
/// XOR of the basis vectors selected by the binary digits of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// Row `k` of `reordered` is row `perm[k]` of the input.
    pub perm: Vec<usize>,
    /// `basis[i]` is row `2^i` of `reordered`.
    pub basis: Vec<BitVector>,
    pub reordered: BitMatrix,
    /// Top-left `2^(n-1)` square block of `reordered`.
    pub top_block: BitMatrix,
    /// First half of the last basis vector.
    pub coset_vector: BitVector,
}

impl CosetDecomposition {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn check_graph_shape(a: &BitMatrix) -> Result<(), DecomposeError> {
    if !a.is_square() {
        return Err(DecomposeError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_symmetric() {
        return Err(DecomposeError::NotSymmetric);
    }
    if let Some(i) = (0..a.rows()).find(|&i| a.get(i, i)) {
        return Err(DecomposeError::NonzeroDiagonal(i));
    }
    Ok(())
}

/// Basis by first appearance, coset permutation and reordered matrix. No
/// block structure is checked here.
fn coset_order(a: &BitMatrix) -> Result<(Vec<usize>, Vec<BitVector>, BitMatrix), DecomposeError> {
    check_graph_shape(a)?;
    if !rows_form_subspace(a) {
        return Err(DecomposeError::NotSubspace);
    }
    let mut echelon: Vec<(usize, BitVector)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in a.row_slice().iter().enumerate() {
        let mut x = row.clone();
        for (pc, b) in &echelon {
            if x.get(*pc) {
                x.xor_assign(b);
            }
        }
        if let Some(pc) = x.first_one_from(0) {
            echelon.push((pc, x));
            chosen.push(i);
        }
    }
    let index: HashMap<&BitVector, usize> = a.row_slice().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let n = chosen.len();
    let mut perm = Vec::with_capacity(a.rows());
    for k in 0..1usize << n {
        let mut v = BitVector::zeros(a.cols());
        for (i, &c) in chosen.iter().enumerate() {
            if k >> i & 1 == 1 {
                v.xor_assign(a.row(c));
            }
        }
        perm.push(*index.get(&v).ok_or(DecomposeError::NotSubspace)?);
    }
    let reordered = a.permute_symmetric(&perm).expect("perm is a permutation");
    let basis: Vec<BitVector> = (0..n).map(|i| reordered.row(1 << i).clone()).collect();
    for k in 0..reordered.rows() {
        let mut v = BitVector::zeros(reordered.cols());
        for (i, b) in basis.iter().enumerate() {
            if k >> i & 1 == 1 {
                v.xor_assign(b);
            }
        }
        if &v != reordered.row(k) {
            return Err(DecomposeError::BlockIdentity(format!("row {k} is not its basis combination")));
        }
    }
    Ok((perm, basis, reordered))
}

/// `[B | B+V^T ; B+V | B+V+V^T]` where `V` repeats the row `v`.
fn coset_blocks(b: &BitMatrix, v: &BitVector) -> BitMatrix {
    let m = b.rows();
    let rows = BitMatrix::repeat_row(v, m);
    let cols = rows.transpose();
    let top = b.hconcat(&b.xor(&cols).expect("shape")).expect("shape");
    let bl = b.xor(&rows).expect("shape");
    let bottom = bl.hconcat(&bl.xor(&cols).expect("shape")).expect("shape");
    top.vconcat(&bottom).expect("shape")
}

/// Reorders a subspace adjacency matrix into coset order and splits off the
/// top block `B` and the coset vector `u`. Fails unless the result has the
/// form `[B | B+U^T ; B+U | B+U+U^T]`.
pub fn coset_decompose(a: &BitMatrix) -> Result<CosetDecomposition, DecomposeError> {
    let (perm, basis, reordered) = coset_order(a)?;
    let n = basis.len();
    if n < 1 {
        return Err(DecomposeError::TooSmall { needed: 1, rank: n });
    }
    let half = 1 << (n - 1);
    let top_block = reordered.block(0, half, 0, half);
    let last = &basis[n - 1];
    let (u, u_hat) = (last.slice(0, half), last.slice(half, 2 * half));
    if u != u_hat {
        return Err(DecomposeError::CosetHalvesDiffer);
    }
    if coset_blocks(&top_block, &u) != reordered {
        return Err(DecomposeError::BlockIdentity("top level".into()));
    }
    Ok(CosetDecomposition {
        perm,
        basis,
        reordered,
        top_block,
        coset_vector: u,
    })
}

/// Vectors longer than a word are summarised.
fn show(v: &BitVector) -> String {
    if v.len() <= 64 {
        v.to_string01()
    } else {
        format!("<{} bits, weight {}>", v.len(), v.popcount())
    }
}

fn in_out(b: bool) -> &'static str {
    if b {
        "in"
    } else {
        "not in"
    }
}

/// Two levels of the coset decomposition and the structural facts relating
/// them. With `A` in coset order of rank `n`, `q = 2^(n-2)`:
///
/// * `B` is the top-left `2q` block and `v_n = (u, û)`;
/// * `C` is the top-left `q` block and `v_(n-1) = (w, ŵ, s, t)` in quarters;
/// * `u = (x, y)` in halves.
pub fn decomposition_invariants(a: &BitMatrix) -> VerificationReport {
    let mut r = VerificationReport::new();
    let (_, basis, reordered) = match coset_order(a) {
        Ok(t) => t,
        Err(e) => {
            r.push("precondition", false, e.to_string());
            return r;
        }
    };
    let n = basis.len();
    if n < 2 {
        r.push("precondition", false, format!("need rank at least 2, got {n}"));
        return r;
    }
    r.push("precondition", true, format!("subspace matrix of rank {n}"));
    let half = 1 << (n - 1);
    let q = half / 2;

    let b = reordered.block(0, half, 0, half);
    let (u, u_hat) = (basis[n - 1].slice(0, half), basis[n - 1].slice(half, 2 * half));
    r.push("u_eq_u_hat", u == u_hat, format!("u={} û={}", show(&u), show(&u_hat)));
    let outer_ok = u == u_hat && coset_blocks(&b, &u) == reordered;
    r.push("block_identity_a", outer_ok, "A = [B | B+U^T ; B+U | B+U+U^T]");

    let rb = rank(&b);
    r.push("rank_b", rb == n - 2, format!("rank(B) = {rb}, expected {}", n - 2));
    let u_in_b = row_space_contains(&b, &u).expect("widths match");
    r.push("u_not_in_rowsp_b", !u_in_b, format!("u {} rowsp(B)", in_out(u_in_b)));

    let c = reordered.block(0, q, 0, q);
    let v = &basis[n - 2];
    let (w, w_hat, s, t) = (v.slice(0, q), v.slice(q, half), v.slice(half, half + q), v.slice(half + q, 2 * half));
    let inner_ok = w == w_hat && coset_blocks(&c, &w) == b;
    r.push("block_identity_b", inner_ok, "B = [C | C+W^T ; C+W | C+W+W^T]");
    r.push("s_eq_t", s == t, format!("s={} t={}", show(&s), show(&t)));

    let (x, y) = (u.slice(0, q), u.slice(q, half));
    let case_one = w == s && x == y;
    let case_two = w == s.complement() && x == y.complement();
    r.push(
        "wsxy_relation",
        case_one || case_two,
        match (case_one, case_two) {
            (true, _) => "w = s and x = y".to_string(),
            (_, true) => "w = ~s and x = ~y".to_string(),
            _ => format!("w={} s={} x={} y={}", show(&w), show(&s), show(&x), show(&y)),
        },
    );

    let x_in = row_space_contains(&c, &x).expect("widths match");
    let w_in = row_space_contains(&c, &w).expect("widths match");
    r.push(
        "xw_membership",
        x_in == w_in,
        format!("x {} rowsp(C), w {} rowsp(C)", in_out(x_in), in_out(w_in)),
    );

    let rc = rank(&c);
    let wt = BitMatrix::repeat_row(&w, q).transpose();
    let xt = BitMatrix::repeat_row(&x, q).transpose();
    let cw = c.xor(&wt).expect("shape");
    let cx = c.xor(&xt).expect("shape");
    let cwx = cw.xor(&xt).expect("shape");
    let strip = c
        .hconcat(&cw)
        .and_then(|m| m.hconcat(&cx))
        .and_then(|m| m.hconcat(&cwx))
        .expect("shape");
    let rs = rank(&strip);
    let predicted = rc + usize::from(!x_in) + usize::from(!w_in);
    r.push(
        "rank_identity",
        rs == predicted && rs == n - 2,
        format!("rank(C | C+W^T | C+X^T | C+W^T+X^T) = {rs}, rank(C) = {rc}, predicted {predicted}, expected {}", n - 2),
    );

    match (x_in, w_in) {
        (false, false) => quarter_checks(&mut r, &c, &x, &w, n),
        (true, true) => {
            let tf = Graph::new(c.clone()).map(|g| g.is_twin_free()).unwrap_or(false);
            r.push(
                "c_twin_free_rank",
                tf && rc == n - 2,
                format!("C twin-free: {tf}, rank(C) = {rc}, expected {}", n - 2),
            );
        }
        _ => {}
    }
    r
}

/// Both `x` and `w` outside `rowsp(C)`: balanced intersections and
/// `C = J_4 ⊗ D` after grouping indices by `(w_i, x_i)`.
fn quarter_checks(r: &mut VerificationReport, c: &BitMatrix, x: &BitVector, w: &BitVector, n: usize) {
    let q = c.rows();
    let mut groups: [Vec<usize>; 4] = Default::default();
    for i in 0..q {
        groups[2 * usize::from(w.get(i)) + usize::from(x.get(i))].push(i);
    }
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let want = n.checked_sub(4).map(|e| 1usize << e);
    let balanced = sizes.iter().all(|&s| Some(s) == want);
    r.push(
        "xw_intersections",
        balanced,
        format!("sizes {sizes:?} for (w,x) = 00,01,10,11, expected {want:?}"),
    );
    if !balanced {
        return;
    }
    for g in &mut groups {
        g.sort_by(|&a, &b| c.row(a).cmp(c.row(b)));
    }
    let perm: Vec<usize> = groups.concat();
    let cp = c.permute_symmetric(&perm).expect("perm is a permutation");
    let m = q / 4;
    let d = cp.block(0, m, 0, m);
    let kron = cp == kronecker(&BitMatrix::all_ones(4, 4), &d);
    r.push("c_eq_j4_kron_d", kron, format!("C conjugated by the grouping permutation {} J_4 ⊗ D", if kron { "equals" } else { "differs from" }));
    let rd = rank(&d);
    let tf = Graph::new(d).map(|g| g.is_twin_free()).unwrap_or(false);
    r.push(
        "d_twin_free_rank",
        tf && rd == n - 4,
        format!("D twin-free: {tf}, rank(D) = {rd}, expected {}", n - 4),
    );
}
