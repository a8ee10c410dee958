//! Dense real symmetric matrices.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::format::fmt_sig;

/// Largest order `kronecker` will produce by default.
pub const DEFAULT_KRONECKER_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("expected {expected} entries for order {order}, got {got}")]
    Shape {
        order: usize,
        expected: usize,
        got: usize,
    },

    #[error("entry ({row},{col}) = {value} is not finite")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("entries ({row},{col}) and ({col},{row}) differ")]
    Asymmetric { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("product order {order} exceeds cap {cap}")]
    TooLarge { order: usize, cap: usize },

    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
}

/// A real symmetric matrix stored densely in row-major order.
///
/// Symmetry is exact (`a[i][j] == a[j][i]` bitwise) and all entries are
/// finite; both are checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if entries.len() != order * order {
            return Err(MatrixError::Shape {
                order,
                expected: order * order,
                got: entries.len(),
            });
        }
        for row in 0..order {
            for col in 0..order {
                let value = entries[row * order + col];
                if !value.is_finite() {
                    return Err(MatrixError::NonFinite { row, col, value });
                }
                if col > row && value != entries[col * order + row] {
                    return Err(MatrixError::Asymmetric { row, col });
                }
            }
        }
        Ok(DenseSymMatrix { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let order = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(MatrixError::Shape {
                order,
                expected: order * order,
                got: order * (order - 1) + bad.len(),
            });
        }
        DenseSymMatrix::new(order, rows.concat())
    }

    pub fn zeros(order: usize) -> Self {
        DenseSymMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = DenseSymMatrix::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from the upper triangle of `f(i, j)` (`i <= j`).
    pub fn from_upper_fn(
        order: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, MatrixError> {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let value = f(i, j);
                entries[i * order + j] = value;
                entries[j * order + i] = value;
            }
        }
        DenseSymMatrix::new(order, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, MatrixError> {
        DenseSymMatrix::new(
            self.order,
            self.entries.iter().map(|x| x * factor).collect(),
        )
    }

    /// Largest `|a - b| / max(|a|, |b|)` over all entry pairs, with exact
    /// zeros on both sides contributing 0.
    pub fn max_relative_diff(&self, other: &DenseSymMatrix) -> Option<f64> {
        (self.order == other.order).then(|| {
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| {
                    let scale = a.abs().max(b.abs());
                    if scale == 0.0 {
                        0.0
                    } else {
                        (a - b).abs() / scale
                    }
                })
                .fold(0.0, f64::max)
        })
    }

    /// Writes the debug dump: the order, then one row per line with 17
    /// significant digits.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.order)?;
        for row in 0..self.order {
            let line: Vec<String> = self.row(row).iter().map(|&x| fmt_sig(x, 17)).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for DenseSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

/// Kronecker product with the default order cap.
pub fn kronecker(a: &DenseSymMatrix, b: &DenseSymMatrix) -> Result<DenseSymMatrix, MatrixError> {
    kronecker_with_cap(a, b, DEFAULT_KRONECKER_CAP)
}

/// `A ⊗ B`: block `(i, j)` of the result is `a_ij * B`.
pub fn kronecker_with_cap(
    a: &DenseSymMatrix,
    b: &DenseSymMatrix,
    cap: usize,
) -> Result<DenseSymMatrix, MatrixError> {
    let order =
        a.order
            .checked_mul(b.order)
            .filter(|&o| o <= cap)
            .ok_or(MatrixError::TooLarge {
                order: a.order.saturating_mul(b.order),
                cap,
            })?;
    let mut entries = vec![0.0; order * order];
    for i in 0..a.order {
        for j in 0..a.order {
            let aij = a.get(i, j);
            for p in 0..b.order {
                let row = i * b.order + p;
                let dst = &mut entries[row * order + j * b.order..row * order + (j + 1) * b.order];
                for (d, &bpq) in dst.iter_mut().zip(b.row(p)) {
                    *d = aij * bpq;
                }
            }
        }
    }
    DenseSymMatrix::new(order, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(matches!(
            DenseSymMatrix::new(2, vec![0.0; 3]),
            Err(MatrixError::Shape { .. })
        ));
        assert_eq!(
            DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(MatrixError::Asymmetric { row: 0, col: 1 })
        );
        assert!(matches!(
            DenseSymMatrix::from_rows(&[vec![f64::INFINITY]]),
            Err(MatrixError::NonFinite { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            DenseSymMatrix::from_rows(&[vec![1.0, f64::NAN], vec![f64::NAN, 1.0]]),
            Err(MatrixError::NonFinite { .. })
        ));
        assert!(matches!(
            DenseSymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0]]),
            Err(MatrixError::Shape { .. })
        ));
        assert!(DenseSymMatrix::identity(1)
            .scaled(f64::MAX)
            .unwrap()
            .scaled(10.0)
            .is_err());
    }

    #[test]
    fn kronecker_with_identity_is_block_diagonal() {
        let m = DenseSymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 3.0]]).unwrap();
        let k = kronecker(&DenseSymMatrix::identity(2), &m).unwrap();
        let expected = DenseSymMatrix::from_rows(&[
            vec![1.0, 2.0, 0.0, 0.0],
            vec![2.0, 3.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 2.0],
            vec![0.0, 0.0, 2.0, 3.0],
        ])
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kronecker_with_scalar() {
        let swap = DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let two = DenseSymMatrix::from_rows(&[vec![2.0]]).unwrap();
        let k = kronecker(&swap, &two).unwrap();
        assert_eq!(
            k,
            DenseSymMatrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn kronecker_cap() {
        let a = DenseSymMatrix::identity(65);
        assert_eq!(
            kronecker(&a, &a),
            Err(MatrixError::TooLarge {
                order: 4225,
                cap: 4096
            })
        );
        assert!(kronecker_with_cap(&a, &DenseSymMatrix::identity(2), 130).is_ok());
    }

    #[test]
    fn dump_format() {
        let m = DenseSymMatrix::from_rows(&[vec![0.0, 0.1], vec![0.1, -2.5]]).unwrap();
        assert_eq!(
            m.to_string(),
            "2\n0 0.10000000000000001\n0.10000000000000001 -2.5\n"
        );
    }
}
