//! Finite searches: all candidates on 4 and 8 vertices, and graph
//! isomorphism for small instances.

use std::collections::BTreeMap;
use std::ops::Range;
use std::thread;

use crate::gf2::{rank, BitMatrix};
use crate::graph::Graph;

/// All labelled twin-free graphs on 4 vertices with adjacency rank 2, in
/// increasing order of their upper-triangle bit pattern.
pub fn enumerate_n2() -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
        let g = Graph::from_edges(4, edges).expect("valid edges");
        if g.is_twin_free() && rank(g.adjacency()) == 2 {
            out.push(g);
        }
    }
    out
}

/// Entries of the fully determined 8-vertex matrix as linear forms in
/// `(x, y, z)`: bit 0 is `x`, bit 1 is `y`, bit 2 is `z`. Row and column 7
/// are zero.
const N3_FORMS: [[u8; 8]; 8] = [
    [0, 1, 2, 1, 2, 3, 3, 0],
    [1, 0, 4, 1, 5, 4, 5, 0],
    [2, 4, 0, 6, 2, 4, 6, 0],
    [1, 1, 6, 0, 7, 7, 6, 0],
    [2, 5, 2, 7, 0, 7, 5, 0],
    [3, 4, 4, 7, 7, 0, 3, 0],
    [3, 5, 6, 6, 5, 3, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
];

/// Rows 3..=6 as sums of the basis rows 0, 1, 2.
const N3_COSETS: [(usize, &[usize]); 4] = [(3, &[0, 1]), (4, &[0, 2]), (5, &[1, 2]), (6, &[0, 1, 2])];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredCase {
    pub x: bool,
    pub y: bool,
    pub z: bool,
    pub matrix: BitMatrix,
    pub coset_closed: bool,
    pub twins: Option<(usize, usize)>,
}

/// Fills in the 8-vertex matrix for one assignment of `(x, y, z)`.
pub fn n3_structured_matrix(x: bool, y: bool, z: bool) -> BitMatrix {
    let assignment = u8::from(x) | u8::from(y) << 1 | u8::from(z) << 2;
    BitMatrix::from_fn(8, 8, |i, j| (N3_FORMS[i][j] & assignment).count_ones() % 2 == 1)
}

/// The eight cases of the structured argument. Panics if a filled matrix is
/// not an adjacency matrix, which would mean the table above is wrong.
pub fn n3_structured_cases() -> Vec<StructuredCase> {
    (0u8..8)
        .map(|a| {
            let (x, y, z) = (a & 1 == 1, a & 2 == 2, a & 4 == 4);
            let matrix = n3_structured_matrix(x, y, z);
            let g = Graph::new(matrix.clone()).expect("filled matrix must be symmetric with zero diagonal");
            let coset_closed = N3_COSETS.iter().all(|&(r, parts)| {
                let mut v = matrix.row(parts[0]).clone();
                for &p in &parts[1..] {
                    v.xor_assign(matrix.row(p));
                }
                &v == matrix.row(r)
            });
            StructuredCase {
                x,
                y,
                z,
                coset_closed,
                twins: g.find_twins(),
                matrix,
            }
        })
        .collect()
}

/// True iff every structured case is coset-closed and has twin rows.
pub fn nonexistence_n3_structured() -> bool {
    n3_structured_cases().iter().all(|c| c.coset_closed && c.twins.is_some())
}

const N3_PAIRS: usize = 28;
/// Number of `(i, j)` pairs handled by one lookup table.
const CHUNK: usize = 7;
/// Total number of counters for 8 vertices.
pub const N3_CANDIDATES: u64 = 1 << N3_PAIRS;
/// Counter values are split as `hi << 7 | lo`; work is partitioned over `hi`.
pub const N3_HI_RANGE: u32 = 1 << (N3_PAIRS - CHUNK);
const MAX_RECORDED: usize = 16;

fn n3_pairs() -> [(usize, usize); N3_PAIRS] {
    let mut out = [(0, 0); N3_PAIRS];
    let mut p = 0;
    for i in 0..8 {
        for j in i + 1..8 {
            out[p] = (i, j);
            p += 1;
        }
    }
    out
}

/// The symmetric zero-diagonal matrix whose upper-triangle bit `p` (pairs in
/// lexicographic order) is bit `p` of `counter`.
pub fn n3_matrix_from_counter(counter: u32) -> BitMatrix {
    let mut m = BitMatrix::zeros(8, 8);
    for (p, (i, j)) in n3_pairs().into_iter().enumerate() {
        if counter >> p & 1 == 1 {
            m.set_bit(i, j, true).expect("in range");
            m.set_bit(j, i, true).expect("in range");
        }
    }
    m
}

/// `tables[k][v]`: the 8 rows, one per byte, contributed by chunk `k` of the
/// counter having value `v`.
fn n3_tables() -> [[u64; 1 << CHUNK]; N3_PAIRS / CHUNK] {
    let pairs = n3_pairs();
    let mut tables = [[0u64; 1 << CHUNK]; N3_PAIRS / CHUNK];
    for (k, table) in tables.iter_mut().enumerate() {
        for (v, entry) in table.iter_mut().enumerate() {
            for b in 0..CHUNK {
                if v >> b & 1 == 1 {
                    let (i, j) = pairs[k * CHUNK + b];
                    *entry |= 1 << (8 * i + j) | 1 << (8 * j + i);
                }
            }
        }
    }
    tables
}

#[inline]
fn has_duplicate_row(rows: u64) -> bool {
    let mut seen = [0u64; 4];
    for i in 0..8 {
        let b = (rows >> (8 * i)) as u8;
        let (w, bit) = ((b >> 6) as usize, 1u64 << (b & 63));
        if seen[w] & bit != 0 {
            return true;
        }
        seen[w] |= bit;
    }
    false
}

/// Rank of the 8 byte-rows, capped at 4.
#[inline]
fn rank_capped4(rows: u64) -> u32 {
    let mut basis = [0u8; 8];
    let mut r = 0;
    for i in 0..8 {
        let mut x = (rows >> (8 * i)) as u8;
        while x != 0 {
            let h = 7 - x.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = x;
                r += 1;
                if r == 4 {
                    return 4;
                }
                break;
            }
            x ^= basis[h];
        }
    }
    r
}

/// Tallies of the 8-vertex sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub candidates: u64,
    pub twin_free: u64,
    pub rank3: u64,
    pub rank3_with_duplicates: u64,
    /// Matrices whose rows are a subspace listed once each.
    pub subspace: u64,
    /// Twin-free candidates of rank 3.
    pub violation_count: u64,
    /// The first few violating counters, ascending.
    pub violations: Vec<u32>,
}

impl SweepStats {
    pub fn merge(mut self, other: SweepStats) -> SweepStats {
        self.candidates += other.candidates;
        self.twin_free += other.twin_free;
        self.rank3 += other.rank3;
        self.rank3_with_duplicates += other.rank3_with_duplicates;
        self.subspace += other.subspace;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.truncate(MAX_RECORDED);
        self
    }

    pub fn pass(&self) -> bool {
        self.violation_count == 0
    }
}

/// Sweeps counters `hi << 7 | lo` for `hi` in `hi_range` and all `lo`.
pub fn sweep_n3_range(hi_range: Range<u32>) -> SweepStats {
    let t = n3_tables();
    let mut s = SweepStats::default();
    let hi_range = hi_range.start.min(N3_HI_RANGE)..hi_range.end.min(N3_HI_RANGE);
    s.candidates = u64::from(hi_range.len() as u32) << CHUNK;
    for hi in hi_range {
        let h = hi as usize;
        let base = t[1][h & 0x7f] ^ t[2][(h >> 7) & 0x7f] ^ t[3][h >> 14];
        for (lo, &low) in t[0].iter().enumerate() {
            let rows = base ^ low;
            let dup = has_duplicate_row(rows);
            let r = rank_capped4(rows);
            if r == 3 {
                s.rank3 += 1;
            }
            if dup {
                if r == 3 {
                    s.rank3_with_duplicates += 1;
                }
                continue;
            }
            s.twin_free += 1;
            // eight distinct rows of rank 3 are the whole span, which contains zero
            if r == 3 {
                s.subspace += 1;
                s.violation_count += 1;
                if s.violations.len() < MAX_RECORDED {
                    s.violations.push(hi << CHUNK | lo as u32);
                }
            }
        }
    }
    s
}

/// The full sweep, split into `workers` contiguous ranges run on scoped
/// threads and merged in range order.
pub fn sweep_n3(workers: usize) -> SweepStats {
    let workers = workers.clamp(1, N3_HI_RANGE as usize) as u32;
    let step = N3_HI_RANGE.div_ceil(workers);
    let ranges: Vec<Range<u32>> = (0..workers)
        .map(|w| (w * step).min(N3_HI_RANGE)..((w + 1) * step).min(N3_HI_RANGE))
        .collect();
    let parts: Vec<SweepStats> = thread::scope(|scope| {
        let handles: Vec<_> = ranges.into_iter().map(|r| scope.spawn(move || sweep_n3_range(r))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    parts.into_iter().fold(SweepStats::default(), SweepStats::merge)
}

/// True iff no symmetric zero-diagonal 8x8 matrix is twin-free of rank 3.
pub fn nonexistence_n3_exhaustive() -> bool {
    sweep_n3(1).pass()
}

/// Joint colour refinement of two graphs, starting from degrees. Returns a
/// colour per vertex of each graph; colours are comparable across the two.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg = g.degrees();
    let mut ch = h.degrees();
    let mut classes = 0;
    loop {
        let sig = |graph: &Graph, colours: &[usize], v: usize| {
            let mut nb: Vec<usize> = graph.neighbors(v).into_iter().map(|u| colours[u]).collect();
            nb.sort_unstable();
            (colours[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.entry(s.clone()).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return (cg, ch);
        }
        classes = ids.len();
    }
}

/// An isomorphism `map` with `u ~ v` in `g` iff `map[u] ~ map[v]` in `h`,
/// if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = refine(g, h);
    let mut count = BTreeMap::new();
    for &c in &cg {
        *count.entry(c).or_insert(0i64) += 1;
    }
    for &c in &ch {
        *count.entry(c).or_insert(0i64) -= 1;
    }
    if count.values().any(|&d| d != 0) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: usize| cg.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&v| (class_size(cg[v]), cg[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used).then_some(map)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for u in 0..h.order() {
        if used[u] || ch[u] != cg[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&p| g.has_edge(v, p) == h.has_edge(u, map[p]));
        if !consistent {
            continue;
        }
        map[v] = u;
        used[u] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[u] = false;
        map[v] = usize::MAX;
    }
    false
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// Whether `map` is a bijection carrying the edges of `g` exactly onto the
/// edges of `h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    (0..n).all(|a| (a + 1..n).all(|b| g.has_edge(a, b) == h.has_edge(map[a], map[b])))
}
