//! Cyclic Jacobi eigenvalues of dense symmetric matrices.

use crate::matrix::{DenseSymMatrix, MatrixError};

/// Default relative off-diagonal threshold for [`symmetric_eigenvalues`].
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Sweep limit; Jacobi converges quadratically, so this is never reached for
/// sane inputs.
pub const MAX_SWEEPS: usize = 100;

/// Multiset of real eigenvalues, sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sum of absolute values.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).sum()
    }

    /// Largest absolute difference between the two sorted sequences, or
    /// `None` when the lengths differ.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Multiset equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }

    /// Pairwise products `λ_i μ_j`, the spectrum of a Kronecker product.
    pub fn products(&self, other: &Spectrum) -> Spectrum {
        Spectrum::new(
            self.values
                .iter()
                .flat_map(|a| other.values.iter().map(move |b| a * b))
                .collect(),
        )
    }
}

/// Eigenvalues of a symmetric matrix by row-cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops to
/// `tol * ‖M‖_F`.
pub fn symmetric_eigenvalues(m: &DenseSymMatrix, tol: f64) -> Result<Spectrum, MatrixError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(MatrixError::Parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = m.order();
    let threshold = tol * m.frobenius_norm();
    let mut a = m.entries().to_vec();
    let at = |i: usize, j: usize| i * n + j;

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[at(p, q)] * a[at(p, q)])
            .sum::<f64>()
            * 2.0;
        if off.sqrt() <= threshold {
            return Ok(Spectrum::new((0..n).map(|i| a[at(i, i)]).collect()));
        }

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[at(p, p)];
                let aqq = a[at(q, q)];

                // Past the first few sweeps, drop elements already below the
                // rounding level of both diagonal entries.
                let g = 100.0 * apq.abs();
                if sweep > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[at(p, q)] = 0.0;
                    a[at(q, p)] = 0.0;
                    continue;
                }

                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[at(r, p)];
                    let arq = a[at(r, q)];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[at(r, p)] = new_rp;
                    a[at(p, r)] = new_rp;
                    a[at(r, q)] = new_rq;
                    a[at(q, r)] = new_rq;
                }
                a[at(p, p)] = app - t * apq;
                a[at(q, q)] = aqq + t * apq;
                a[at(p, q)] = 0.0;
                a[at(q, p)] = 0.0;
            }
        }
    }
    Err(MatrixError::NoConvergence(MAX_SWEEPS))
}
