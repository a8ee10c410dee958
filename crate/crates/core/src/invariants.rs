//! Sombor index, adjacency and Sombor matrices, energies, and the reduced
//! `(m+1) × (m+1)` arrowhead matrices whose Kronecker product with `A(G)`
//! gives the Sombor matrix of a transformed regular graph.

use crate::eigen::{symmetric_eigenvalues, Spectrum};
use crate::graph::Graph;
use crate::matrix::{DenseSymMatrix, MatrixError};

/// `sqrt(du² + dv²)`, evaluated as the square root of an exact integer so
/// every caller producing the same degree pair gets the same bits.
pub fn degree_term(du: usize, dv: usize) -> f64 {
    ((du * du + dv * dv) as f64).sqrt()
}

/// Sum of `sqrt(d(u)² + d(v)²)` over the edges, in lexicographic edge order.
pub fn sombor_index(g: &Graph) -> f64 {
    let degrees = g.degrees();
    g.edges()
        .map(|e| degree_term(degrees[e.u], degrees[e.v]))
        .sum()
}

pub fn adjacency_matrix(g: &Graph) -> DenseSymMatrix {
    weighted_adjacency(g, |_, _| 1.0)
}

/// Symmetric matrix with `sqrt(d(u)² + d(v)²)` on edges, zero elsewhere.
pub fn sombor_matrix(g: &Graph) -> DenseSymMatrix {
    let degrees = g.degrees();
    weighted_adjacency(g, |u, v| degree_term(degrees[u], degrees[v]))
}

fn weighted_adjacency(g: &Graph, weight: impl Fn(usize, usize) -> f64) -> DenseSymMatrix {
    DenseSymMatrix::from_upper_fn(g.vertex_count(), |u, v| {
        if g.has_edge(u, v) {
            weight(u, v)
        } else {
            0.0
        }
    })
    .expect("edge weights are finite")
}

/// Sum of absolute eigenvalues.
pub fn energy(m: &DenseSymMatrix, tol: f64) -> Result<f64, MatrixError> {
    Ok(symmetric_eigenvalues(m, tol)?.energy())
}

/// Graph energy: energy of the adjacency matrix.
pub fn graph_energy(g: &Graph, tol: f64) -> Result<f64, MatrixError> {
    energy(&adjacency_matrix(g), tol)
}

/// Energy of the Sombor matrix.
pub fn sombor_energy(g: &Graph, tol: f64) -> Result<f64, MatrixError> {
    energy(&sombor_matrix(g), tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReducedKind {
    Splitting,
    Shadow,
}

/// Arrowhead matrix of order `m + 1`: `head` at `(0,0)`, `arm` along the
/// rest of row and column 0, zeros elsewhere.
pub fn arrowhead(head: f64, arm: f64, m: usize) -> Result<DenseSymMatrix, MatrixError> {
    DenseSymMatrix::from_upper_fn(m + 1, |i, j| match (i, j) {
        (0, 0) => head,
        (0, _) => arm,
        _ => 0.0,
    })
}

/// The `(m+1) × (m+1)` coefficient matrix for a `k`-regular base graph.
///
/// For splitting, head `(m+1)k√2` is the original–original Sombor weight and
/// the arms `k√(m²+2m+2)` are the original–clone weight, so that
/// `S(Spl_m(G)) = reduced ⊗ A(G)` under the copy-major layout. For shadow,
/// head and arms are both `mk√2`.
pub fn reduced_matrix(
    kind: ReducedKind,
    k: usize,
    m: usize,
) -> Result<DenseSymMatrix, MatrixError> {
    if k == 0 || m == 0 {
        return Err(MatrixError::Parameter(format!(
            "reduced matrix needs k >= 1 and m >= 1, got k={k}, m={m}"
        )));
    }
    let (head, arm) = match kind {
        ReducedKind::Splitting => {
            let original = (m + 1) * k;
            (degree_term(original, original), degree_term(k, original))
        }
        ReducedKind::Shadow => {
            let w = degree_term(m * k, m * k);
            (w, w)
        }
    };
    arrowhead(head, arm, m)
}

/// Closed-form spectrum of [`arrowhead`]`(a, b, m)`: zero with multiplicity
/// `m - 1` plus the roots of `μ² - aμ - mb² = 0`.
pub fn rank2_spectrum(a: f64, b: f64, m: usize) -> Spectrum {
    let c = m as f64 * b * b;
    let disc = (a * a + 4.0 * c).sqrt();
    // Larger-magnitude root first, then the other via μ₁μ₂ = -mb².
    let big = if a >= 0.0 {
        (a + disc) / 2.0
    } else {
        (a - disc) / 2.0
    };
    let small = if big == 0.0 { 0.0 } else { -c / big };
    let mut values = vec![0.0; m.saturating_sub(1)];
    values.extend([big, small]);
    Spectrum::new(values)
}
