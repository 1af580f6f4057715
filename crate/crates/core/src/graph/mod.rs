//! Simple undirected graphs stored as their GF(2) adjacency matrix.

mod graph6;

pub use graph6::{decode_graph6, encode_graph6};

use std::collections::HashMap;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("adjacency matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("adjacency matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("adjacency matrix has a nonzero diagonal entry at vertex {vertex}")]
    NonzeroDiagonal { vertex: usize },
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("line graph requires at least one edge")]
    NoEdges,
    #[error("graph6 parse error: {0}")]
    Graph6(String),
}

/// A simple undirected graph. The adjacency matrix is symmetric with an
/// all-zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: BitMatrix,
}

impl Graph {
    pub fn new(adj: BitMatrix) -> Result<Self, GraphError> {
        if !adj.is_square() {
            return Err(GraphError::NotSquare {
                rows: adj.rows(),
                cols: adj.cols(),
            });
        }
        let n = adj.rows();
        if let Some(vertex) = (0..n).find(|&i| adj.get(i, i)) {
            return Err(GraphError::NonzeroDiagonal { vertex });
        }
        let t = adj.transpose();
        if let Some(row) = (0..n).find(|&i| adj.row(i) != t.row(i)) {
            let col = (0..n).find(|&j| adj.get(row, j) != adj.get(j, row)).unwrap_or(row);
            return Err(GraphError::NotSymmetric { row, col });
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: BitMatrix::zeros(n, n),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            adj: BitMatrix::all_ones(n, n).xor(&BitMatrix::identity(n)).expect("same shape"),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = BitMatrix::zeros(n, n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::NonzeroDiagonal { vertex: u });
            }
            adj.set_bit(u, v, true).expect("checked");
            adj.set_bit(v, u, true).expect("checked");
        }
        Ok(Self { adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.rows()
    }

    #[inline]
    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn into_adjacency(self) -> BitMatrix {
        self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// Indicator vector of `N(v)`.
    #[inline]
    pub fn neighborhood(&self, v: usize) -> &BitVector {
        self.adj.row(v)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adj.row(v).support(true)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.popcount_row(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.adj.row(u).and_popcount(self.adj.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..n {
            let row = self.adj.row(i);
            let mut j = row.first_one_from(i + 1);
            while let Some(jj) = j {
                out.push((i, jj));
                j = row.first_one_from(jj + 1);
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.adj.row(v).is_zero()).collect()
    }

    /// Appends a new isolated vertex with index `order()`.
    pub fn add_isolated_vertex(&self) -> Self {
        let n = self.order();
        Self {
            adj: BitMatrix::from_fn(n + 1, n + 1, |i, j| i < n && j < n && self.adj.get(i, j)),
        }
    }

    /// The induced subgraph on all vertices except `v`, remaining vertices
    /// keeping their relative order.
    pub fn remove_vertex(&self, v: usize) -> Result<Self, GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        Ok(Self {
            adj: self.adj.permute_symmetric(&keep).expect("indices in range"),
        })
    }

    /// Relabels vertices: vertex `k` of the result is vertex `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.order();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::VertexOutOfRange { vertex: p, order: n });
            }
        }
        if perm.len() != n {
            return Err(GraphError::VertexOutOfRange { vertex: perm.len(), order: n });
        }
        Ok(Self {
            adj: self.adj.permute_symmetric(perm).expect("validated permutation"),
        })
    }

    /// A pair of distinct vertices with identical neighbourhoods, if any.
    ///
    /// Two such vertices are never adjacent: with a zero diagonal, `u ~ v`
    /// would put `v` in `N(u)` but not in `N(v)`.
    pub fn find_twins(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&BitVector, usize> = HashMap::with_capacity(self.order());
        for v in 0..self.order() {
            if let Some(&u) = seen.get(self.adj.row(v)) {
                return Some((u, v));
            }
            seen.insert(self.adj.row(v), v);
        }
        None
    }

    pub fn is_twin_free(&self) -> bool {
        self.find_twins().is_none()
    }

    /// A pair `(u, v)`, `u < v`, with `N(v) = V \ N(u)`, if any.
    pub fn find_negation_pair(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<BitVector, usize> = HashMap::with_capacity(self.order());
        for v in 0..self.order() {
            let row = self.adj.row(v);
            if let Some(&u) = seen.get(row) {
                debug_assert!(row.is_complement_of(self.adj.row(u)));
                return Some((u, v));
            }
            seen.insert(row.complement(), v);
        }
        None
    }

    pub fn is_negation_free(&self) -> bool {
        self.find_negation_pair().is_none()
    }

    /// The line graph. Its vertex `k` is the `k`-th edge `(i, j)`, `i < j`,
    /// of `self` in lexicographic order; two vertices are adjacent iff the
    /// edges share exactly one endpoint.
    pub fn line_graph(&self) -> Result<Self, GraphError> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let m = edges.len();
        let adj = BitMatrix::from_fn(m, m, |a, b| {
            let (e, f) = (edges[a], edges[b]);
            a != b && (e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1)
        });
        Ok(Self { adj })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triangle_plus_isolated() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(
            Graph::new(BitMatrix::identity(2)),
            Err(GraphError::NonzeroDiagonal { vertex: 0 })
        );
        let g = Graph::new(BitMatrix::zeros(3, 3)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (3, 0));
        let asym = BitMatrix::from_str_rows(&["01", "00"]);
        assert!(matches!(Graph::new(asym), Err(GraphError::NotSymmetric { .. })));
        assert!(matches!(Graph::new(BitMatrix::zeros(2, 3)), Err(GraphError::NotSquare { .. })));
        let a1 = BitMatrix::from_str_rows(&["0110", "1010", "1100", "0000"]);
        assert_eq!(Graph::new(a1).unwrap(), triangle_plus_isolated());
    }

    #[test]
    fn twin_examples() {
        assert!(!Graph::empty(2).is_twin_free());
        assert!(triangle_plus_isolated().is_twin_free());
        assert_eq!(Graph::path(3).find_twins(), Some((0, 2)));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(Graph::complete(2).find_negation_pair(), Some((0, 1)));
        assert!(triangle_plus_isolated().is_negation_free());
        assert!(Graph::empty(2).is_negation_free());
    }

    #[test]
    fn line_graph_examples() {
        let l3 = Graph::complete(3).line_graph().unwrap();
        assert_eq!((l3.order(), l3.edge_count()), (3, 3));
        let l4 = Graph::complete(4).line_graph().unwrap();
        assert_eq!(l4.order(), 6);
        assert!(l4.degrees().iter().all(|&d| d == 4));
        assert_eq!(Graph::complete(6).line_graph().unwrap().order(), 15);
        assert_eq!(Graph::empty(3).line_graph(), Err(GraphError::NoEdges));
    }

    #[test]
    fn line_graph_vertex_order_is_lexicographic() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 3)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 3), (2, 3)]);
        let l = g.line_graph().unwrap();
        // (0,1)~(1,3), (1,3)~(2,3), (0,1) and (2,3) disjoint
        assert!(l.has_edge(0, 1) && l.has_edge(1, 2) && !l.has_edge(0, 2));
    }

    #[test]
    fn plumbing_examples() {
        let g = triangle_plus_isolated();
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.common_neighbors(0, 1), 1);
        assert_eq!(g.isolated_vertices(), vec![3]);
        assert_eq!(g.neighbors(1), vec![0, 2]);
        let h = g.add_isolated_vertex();
        assert_eq!(rank(h.adjacency()), rank(g.adjacency()));
        assert_eq!(h.remove_vertex(4).unwrap(), g);
        assert!(g.remove_vertex(9).is_err());
        assert!(g.permuted(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn perfect_matching_rows_cancel_in_even_clique_line_graphs() {
        for n in (6..=14).step_by(2) {
            let kn = Graph::complete(n);
            let l = kn.line_graph().unwrap();
            let edges = kn.edges();
            let mut sum = BitVector::zeros(l.order());
            for i in (0..n).step_by(2) {
                let idx = edges.iter().position(|&e| e == (i, i + 1)).unwrap();
                sum.xor_assign(l.neighborhood(idx));
            }
            assert!(sum.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn line_graphs_of_min_degree_above_three_are_twin_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let n = rng.gen_range(5..=12);
            let g = random_graph(&mut rng, n, 0.75);
            if g.degrees().into_iter().min().unwrap() <= 3 {
                continue;
            }
            assert!(g.line_graph().unwrap().is_twin_free(), "{g:?}");
            tested += 1;
        }
    }

    proptest! {
        #[test]
        fn twin_free_iff_rows_distinct(n in 1usize..10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, 0.4);
            let distinct = (0..n).all(|u| (u + 1..n).all(|v| g.neighborhood(u) != g.neighborhood(v)));
            prop_assert_eq!(g.is_twin_free(), distinct);
            let neg = (0..n).any(|u| (0..n).any(|v| u != v && g.neighborhood(u).is_complement_of(g.neighborhood(v))));
            prop_assert_eq!(g.is_negation_free(), !neg);
        }

        #[test]
        fn adjacency_rank_is_even(n in 1usize..24, seed in any::<u64>()) {
            // symmetric with zero diagonal means alternating over GF(2)
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, 0.5);
            prop_assert_eq!(rank(g.adjacency()) % 2, 0);
        }

        #[test]
        fn adding_isolated_vertex(n in 1usize..10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, 0.5);
            let h = g.add_isolated_vertex();
            prop_assert_eq!(rank(h.adjacency()), rank(g.adjacency()));
            prop_assert_eq!(h.is_twin_free(), g.is_twin_free() && g.isolated_vertices().is_empty());
        }
    }
}
