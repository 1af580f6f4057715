//! Builders for the concrete graph families.
//!
//! Isolated vertices are always appended last, and repeated parity products
//! are folded from the left, so every builder is byte-stable.

use thiserror::Error;

use crate::graph::Graph;
use crate::products::parity_product_graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parity power needs m >= 1")]
    ZeroPower,
    #[error("clique line graph needs k >= 5, got {0}")]
    CliqueTooSmall(usize),
    #[error("odd construction needs odd n >= 3, got {0}")]
    NotOddEnough(usize),
}

/// The triangle on vertices 0, 1, 2 plus the isolated vertex 3.
pub fn g2() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (1, 2)]).expect("valid edges")
}

/// `g2 ⊞ g2 ⊞ ... ⊞ g2` (`m` factors, folded from the left); order `4^m`.
pub fn g2_power(m: usize) -> Result<Graph, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroPower);
    }
    let base = g2();
    Ok((1..m).fold(base.clone(), |acc, _| parity_product_graph(&acc, &base)))
}

/// Line graph of `K_k` with one isolated vertex appended; order `C(k,2) + 1`.
pub fn linegraph_clique_plus_isolated(k: usize) -> Result<Graph, ConstructionError> {
    if k < 5 {
        return Err(ConstructionError::CliqueTooSmall(k));
    }
    let l = Graph::complete(k).line_graph().expect("K_k has edges for k >= 2");
    Ok(l.add_isolated_vertex())
}

/// `K_2 ⊞ g2_power((n - 1) / 2)` for odd `n >= 3`: order `2^n`, adjacency
/// `[A | J+A ; J+A | A]` with `A` the adjacency of the parity power.
pub fn extremal_odd_plus_one(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 || n % 2 == 0 {
        return Err(ConstructionError::NotOddEnough(n));
    }
    let inner = g2_power((n - 1) / 2)?;
    Ok(parity_product_graph(&Graph::complete(2), &inner))
}
