use std::collections::HashSet;

use super::{BitMatrix, BitVector, Gf2Error, WORD_BITS};

/// How [`rank_with`] eliminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EliminationStrategy {
    /// Column-by-column forward elimination; the pivot is the lowest-index
    /// remaining row with a one in the current column.
    #[default]
    Plain,
    /// Method of Four Russians: pivots are gathered `k` columns at a time and
    /// the remaining rows are cleared with a table of all `2^k` pivot-row
    /// combinations.
    FourRussians { k: usize },
}

/// Rank over GF(2). The input is not modified.
pub fn rank(m: &BitMatrix) -> usize {
    rank_with(m, EliminationStrategy::Plain)
}

pub fn rank_with(m: &BitMatrix, strategy: EliminationStrategy) -> usize {
    let mut rows = m.row_slice().to_vec();
    match strategy {
        EliminationStrategy::Plain => plain_rank(&mut rows, m.cols()),
        EliminationStrategy::FourRussians { k } => four_russians_rank(&mut rows, m.cols(), k.clamp(1, 16)),
    }
}

fn plain_rank(rows: &mut [BitVector], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        let w0 = c / WORD_BITS;
        for row in tail.iter_mut() {
            if row.get(c) {
                row.xor_assign_from(pivot, w0);
            }
        }
        r += 1;
    }
    r
}

fn four_russians_rank(rows: &mut [BitVector], cols: usize, k: usize) -> usize {
    let n = rows.len();
    let mut r = 0;
    let mut col = 0;
    let mut table: Vec<BitVector> = Vec::with_capacity(1 << k);
    while col < cols && r < n {
        let block_end = (col + k).min(cols);
        // Pivot columns found in this block; pivot row for pivots[j] sits at r + j.
        let mut pivots: Vec<usize> = Vec::with_capacity(k);
        for c in col..block_end {
            let base = r + pivots.len();
            let mut found = None;
            for i in base..n {
                for (j, &pc) in pivots.iter().enumerate() {
                    if rows[i].get(pc) {
                        let (a, b) = rows.split_at_mut(i);
                        b[0].xor_assign_from(&a[r + j], pc / WORD_BITS);
                    }
                }
                if rows[i].get(c) {
                    found = Some(i);
                    break;
                }
            }
            let Some(p) = found else { continue };
            rows.swap(base, p);
            // Keep the block's pivot rows reduced against each other.
            for j in 0..pivots.len() {
                if rows[r + j].get(c) {
                    let (a, b) = rows.split_at_mut(base);
                    a[r + j].xor_assign_from(&b[0], c / WORD_BITS);
                }
            }
            pivots.push(c);
        }
        let p = pivots.len();
        if p > 0 {
            let w0 = col / WORD_BITS;
            table.clear();
            table.push(BitVector::zeros(rows[0].len()));
            for mask in 1usize..(1 << p) {
                let low = mask.trailing_zeros() as usize;
                let mut e = table[mask & (mask - 1)].clone();
                e.xor_assign_from(&rows[r + low], w0);
                table.push(e);
            }
            for i in (r + p)..n {
                let key = pivots
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (j, &pc)| acc | (usize::from(rows[i].get(pc)) << j));
                if key != 0 {
                    rows[i].xor_assign_from(&table[key], w0);
                }
            }
        }
        r += p;
        col = block_end;
    }
    r
}

/// Row-reduced basis of the row space, each basis vector tagged with its pivot column.
fn echelon_basis(m: &BitMatrix) -> Vec<(usize, BitVector)> {
    let mut basis: Vec<(usize, BitVector)> = Vec::new();
    for row in m.row_slice() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if v.get(*pc) {
                v.xor_assign(b);
            }
        }
        if let Some(pc) = v.first_one_from(0) {
            basis.push((pc, v));
        }
    }
    basis
}

/// Whether `v` is a GF(2) combination of the rows of `m`.
pub fn row_space_contains(m: &BitMatrix, v: &BitVector) -> Result<bool, Gf2Error> {
    if v.len() != m.cols() {
        return Err(Gf2Error::LengthMismatch {
            expected: m.cols(),
            actual: v.len(),
        });
    }
    let mut x = v.clone();
    for (pc, b) in echelon_basis(m) {
        if x.get(pc) {
            x.xor_assign(&b);
        }
    }
    Ok(x.is_zero())
}

/// True iff the rows of `m`, taken as a multiset, are exactly one linear
/// subspace listed without repetition.
pub fn rows_form_subspace(m: &BitMatrix) -> bool {
    let r = rank(m);
    if r >= usize::BITS as usize || m.rows() != 1usize << r {
        return false;
    }
    let mut seen = HashSet::with_capacity(m.rows());
    let mut has_zero = false;
    for row in m.row_slice() {
        has_zero |= row.is_zero();
        if !seen.insert(row) {
            return false;
        }
    }
    has_zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    /// Every vector reachable as a combination of rows, by brute force.
    fn span_by_enumeration(m: &BitMatrix) -> HashSet<BitVector> {
        let mut out = HashSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let mut v = BitVector::zeros(m.cols());
            for i in 0..m.rows() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(m.row(i));
                }
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(rank(&BitMatrix::identity(3)), 3);
        assert_eq!(rank(&BitMatrix::zeros(5, 7)), 0);
    }

    #[test]
    fn triangle_plus_isolated_vertex_has_rank_two() {
        let a = BitMatrix::from_str_rows(&["0110", "1010", "1100", "0000"]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rank_does_not_touch_input() {
        let a = BitMatrix::from_str_rows(&["011", "110", "101"]);
        let before = a.clone();
        let _ = rank(&a);
        let _ = rank_with(&a, EliminationStrategy::FourRussians { k: 2 });
        assert_eq!(a, before);
    }

    #[test]
    fn row_space_membership_examples() {
        let i3 = BitMatrix::identity(3);
        assert!(row_space_contains(&i3, &BitVector::zeros(3)).unwrap());
        assert!(row_space_contains(&i3, &BitVector::from_str01("110")).unwrap());
        let m = BitMatrix::from_str_rows(&["100", "010"]);
        assert!(!row_space_contains(&m, &BitVector::from_str01("001")).unwrap());
        assert!(row_space_contains(&i3, &BitVector::zeros(4)).is_err());
    }

    #[test]
    fn subspace_examples() {
        assert!(rows_form_subspace(&BitMatrix::from_str_rows(&["00", "01", "10", "11"])));
        assert!(!rows_form_subspace(&BitMatrix::from_str_rows(&["00", "01", "10"])));
        // right count but a repeated row
        assert!(!rows_form_subspace(&BitMatrix::from_str_rows(&["00", "01", "01", "11"])));
        // all-zero matrix: one distinct row repeated
        assert!(!rows_form_subspace(&BitMatrix::zeros(4, 4)));
        assert!(rows_form_subspace(&BitMatrix::zeros(1, 4)));
    }

    #[test]
    fn four_russians_on_wide_matrix() {
        let m = BitMatrix::from_fn(40, 300, |i, j| (i * 7 + j * 13) % 5 < 2 || i == j);
        let plain = rank(&m);
        for k in 1..=10 {
            assert_eq!(rank_with(&m, EliminationStrategy::FourRussians { k }), plain);
        }
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix(12, 12)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_matches_span_enumeration(m in arb_matrix(10, 10)) {
            let span = span_by_enumeration(&m);
            prop_assert_eq!(1usize << rank(&m), span.len());
        }

        #[test]
        fn membership_matches_enumeration(m in arb_matrix(10, 9), probe in proptest::collection::vec(any::<bool>(), 9)) {
            let v = BitVector::from_bits(probe.into_iter().take(m.cols()));
            let span = span_by_enumeration(&m);
            prop_assert_eq!(row_space_contains(&m, &v).unwrap(), span.contains(&v));
        }

        #[test]
        fn rank_invariant_under_row_ops(m in arb_matrix(12, 12), seed in any::<u64>()) {
            let r = rank(&m);
            let n = m.rows();
            let i = (seed % n as u64) as usize;
            let j = ((seed >> 16) % n as u64) as usize;
            let mut rows = m.row_slice().to_vec();
            rows.reverse();
            let reversed = BitMatrix::from_rows(m.cols(), rows.clone()).unwrap();
            prop_assert_eq!(rank(&reversed), r);
            if i != j {
                let add = rows[j].clone();
                rows[i].xor_assign(&add);
                prop_assert_eq!(rank(&BitMatrix::from_rows(m.cols(), rows).unwrap()), r);
            }
            let cols: Vec<usize> = (0..m.cols()).rev().collect();
            let all_rows: Vec<usize> = (0..n).collect();
            prop_assert_eq!(rank(&m.submatrix(&all_rows, &cols).unwrap()), r);
        }

        #[test]
        fn four_russians_is_identical_to_plain(m in arb_matrix(40, 200), k in 1usize..9) {
            prop_assert_eq!(rank_with(&m, EliminationStrategy::FourRussians { k }), rank(&m));
        }
    }
}
