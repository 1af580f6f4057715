//! Exact Hadamard checks and a cyclic Jacobi eigensolver for small dense
//! symmetric matrices.
//!
//! The eigensolver is the only floating-point code in the crate. Everything
//! that can be decided exactly (orthogonality of sign matrices, symmetry of
//! integer inputs) is decided in integer arithmetic.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::BitMatrix;
use crate::products::SignMatrix;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("no convergence after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

/// `true` iff `S S^T = n I`, evaluated in integer arithmetic.
pub fn is_hadamard(s: &SignMatrix) -> bool {
    let n = s.rows();
    if n != s.cols() {
        return false;
    }
    for i in 0..n {
        let ri = s.row(i);
        for j in i..n {
            let rj = s.row(j);
            let dot: i64 = ri.iter().zip(rj).map(|(&a, &b)| i64::from(a * b)).sum();
            let want = if i == j { n as i64 } else { 0 };
            if dot != want {
                return false;
            }
        }
    }
    true
}

/// `is_hadamard(&sign_map(m))` without expanding to signs: the inner product
/// of two sign rows is `n - 2 * popcount(x ^ y)`.
pub fn sign_map_is_hadamard(m: &BitMatrix) -> bool {
    let n = m.rows();
    if n != m.cols() {
        return false;
    }
    let rows = m.row_slice();
    (0..n).all(|i| (i + 1..n).all(|j| 2 * rows[i].xor(&rows[j]).popcount() == n))
}

/// Dense row-major real square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, SpectralError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(SpectralError::NotSquare { rows: n, cols: r.len() });
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.extend((0..n).map(|j| f(i, j)));
        }
        Self { n, data }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// 0/1 adjacency as a real matrix.
    pub fn from_bits(m: &BitMatrix) -> Result<Self, SpectralError> {
        if !m.is_square() {
            return Err(SpectralError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self::from_fn(m.rows(), |i, j| if m.get(i, j) { 1.0 } else { 0.0 }))
    }

    pub fn from_signs(s: &SignMatrix) -> Result<Self, SpectralError> {
        if s.rows() != s.cols() {
            return Err(SpectralError::NotSquare {
                rows: s.rows(),
                cols: s.cols(),
            });
        }
        Ok(Self::from_fn(s.rows(), |i, j| f64::from(s.get(i, j))))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    fn check_symmetric(&self) -> Result<(), SpectralError> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(SpectralError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

/// Eigenvalues (in the diagonal order the rotations left them) and the
/// accumulated rotation `Q` with `M = Q diag(values) Q^T`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
    pub sweeps: usize,
}

impl EigenDecomposition {
    /// `Q diag(values) Q^T`.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.values.len();
        let q = &self.vectors;
        RealMatrix::from_fn(n, |i, j| (0..n).map(|k| q.get(i, k) * self.values[k] * q.get(j, k)).sum())
    }
}

/// Cyclic-by-row Jacobi rotations until the off-diagonal Frobenius norm
/// drops below `tol * ||M||_F`, for at most [`MAX_SWEEPS`] sweeps.
pub fn jacobi_eigen(m: &RealMatrix, tol: f64) -> Result<EigenDecomposition, SpectralError> {
    m.check_symmetric()?;
    let n = m.n;
    let mut a = m.clone();
    let mut q = RealMatrix::diagonal(&vec![1.0; n]);
    let threshold = tol * m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
        sweeps += 1;
    }
    Ok(EigenDecomposition {
        values: (0..n).map(|i| a.get(i, i)).collect(),
        vectors: q,
        sweeps,
    })
}

/// One rotation in the `(p, r)` plane zeroing `a[p][r]`.
fn rotate(a: &mut RealMatrix, q: &mut RealMatrix, p: usize, r: usize) {
    let apr = a.get(p, r);
    if apr == 0.0 {
        return;
    }
    let (app, arr) = (a.get(p, p), a.get(r, r));
    let theta = (arr - app) / (2.0 * apr);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.n;
    for k in 0..n {
        if k == p || k == r {
            continue;
        }
        let (akp, akr) = (a.get(k, p), a.get(k, r));
        let new_kp = c * akp - s * akr;
        let new_kr = s * akp + c * akr;
        a.set(k, p, new_kp);
        a.set(p, k, new_kp);
        a.set(k, r, new_kr);
        a.set(r, k, new_kr);
    }
    a.set(p, p, app - t * apr);
    a.set(r, r, arr + t * apr);
    a.set(p, r, 0.0);
    a.set(r, p, 0.0);
    for k in 0..n {
        let (qkp, qkr) = (q.get(k, p), q.get(k, r));
        q.set(k, p, c * qkp - s * qkr);
        q.set(k, r, s * qkp + c * qkr);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
}

/// Eigenvalues with multiplicities, sorted by value, largest first.
/// Serializes as `[{"value": .., "multiplicity": ..}, ...]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn new(mut entries: Vec<SpectrumEntry>) -> Self {
        entries.sort_by(|a, b| b.value.total_cmp(&a.value));
        Self { entries }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn trace(&self) -> f64 {
        self.entries.iter().map(|e| e.value * e.multiplicity as f64).sum()
    }

    /// Same eigenvalues (within `tol`) with exactly the same multiplicities;
    /// zero-multiplicity entries are ignored on both sides.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        let a: Vec<_> = self.entries.iter().filter(|e| e.multiplicity > 0).collect();
        let b: Vec<_> = other.entries.iter().filter(|e| e.multiplicity > 0).collect();
        a.len() == b.len()
            && a.iter()
                .zip(&b)
                .all(|(x, y)| x.multiplicity == y.multiplicity && (x.value - y.value).abs() <= tol)
    }
}

/// Clusters sorted-descending eigenvalues: a value joins the current cluster
/// when it is within `group_tol` of the cluster's first (largest) member.
/// Each cluster reports the mean of its members.
pub fn group_eigenvalues(values: &[f64], group_tol: f64) -> Spectrum {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut entries = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let rep = sorted[i];
        let mut j = i;
        while j < sorted.len() && rep - sorted[j] <= group_tol {
            j += 1;
        }
        let mean = sorted[i..j].iter().sum::<f64>() / (j - i) as f64;
        entries.push(SpectrumEntry {
            value: mean,
            multiplicity: j - i,
        });
        i = j;
    }
    Spectrum { entries }
}

pub fn default_group_tol(m: &RealMatrix) -> f64 {
    1e-6 * m.inf_norm().max(1.0)
}

pub fn jacobi_spectrum(m: &RealMatrix, tol: f64, group_tol: f64) -> Result<Spectrum, SpectralError> {
    let eig = jacobi_eigen(m, tol)?;
    Ok(group_eigenvalues(&eig.values, group_tol))
}

/// [`jacobi_spectrum`] with the default tolerances.
pub fn spectrum_of(m: &RealMatrix) -> Result<Spectrum, SpectralError> {
    jacobi_spectrum(m, DEFAULT_TOL, default_group_tol(m))
}

/// Closed-form spectrum of the adjacency matrix of `g2_power(m)`, with
/// `N = 4^m`: `N/2` and `0` once each, `+sqrt(N)/2` with multiplicity
/// `(N - sqrt(N))/2 - 1` and `-sqrt(N)/2` with `(N + sqrt(N))/2 - 1`. These
/// multiplicities are the only ones compatible with a zero trace.
pub fn analytic_spectrum(m: usize) -> Spectrum {
    let (n, root) = parity_power_sizes(m);
    Spectrum::new(vec![
        SpectrumEntry { value: n as f64 / 2.0, multiplicity: 1 },
        SpectrumEntry { value: root as f64 / 2.0, multiplicity: (n - root) / 2 - 1 },
        SpectrumEntry { value: 0.0, multiplicity: 1 },
        SpectrumEntry { value: -(root as f64) / 2.0, multiplicity: (n + root) / 2 - 1 },
    ])
}

/// [`analytic_spectrum`] with the multiplicities of `±sqrt(N)/2` exchanged.
/// Kept so reports can show that this assignment fails the trace test.
pub fn swapped_multiplicity_spectrum(m: usize) -> Spectrum {
    let (n, root) = parity_power_sizes(m);
    Spectrum::new(vec![
        SpectrumEntry { value: n as f64 / 2.0, multiplicity: 1 },
        SpectrumEntry { value: root as f64 / 2.0, multiplicity: (n + root) / 2 - 1 },
        SpectrumEntry { value: 0.0, multiplicity: 1 },
        SpectrumEntry { value: -(root as f64) / 2.0, multiplicity: (n - root) / 2 - 1 },
    ])
}

/// Spectrum of the signed adjacency of `g2_power(m)`: `±sqrt(N)` with
/// multiplicities `(N ± sqrt(N))/2`.
pub fn analytic_signed_spectrum(m: usize) -> Spectrum {
    let (n, root) = parity_power_sizes(m);
    Spectrum::new(vec![
        SpectrumEntry { value: root as f64, multiplicity: (n + root) / 2 },
        SpectrumEntry { value: -(root as f64), multiplicity: (n - root) / 2 },
    ])
}

fn parity_power_sizes(m: usize) -> (usize, usize) {
    assert!(m >= 1, "parity power needs m >= 1");
    (1usize << (2 * m), 1usize << m)
}
