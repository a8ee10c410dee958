//! Sombor index and Sombor energy of regular graphs and their m-splitting
//! and m-shadow transforms.
//!
//! The crate builds the transformed graphs explicitly, measures them by
//! direct definition (edge sums, dense Jacobi eigenvalues), and compares the
//! measurements against a registry of closed-form claims.
//!
//! ```
//! use sombor::{constructors::GraphSpec, invariants::sombor_index};
//!
//! let spec: GraphSpec = "cycle(6)|splitting(m=1)".parse().unwrap();
//! let g = spec.generate().unwrap();
//! assert_eq!(g.vertex_count(), 12);
//! let expected = 12.0 * 2f64.sqrt() * (10f64.sqrt() + 2.0);
//! assert!((sombor_index(&g) - expected).abs() < 1e-12);
//! ```

pub mod claims;
pub mod constructors;
pub mod eigen;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod matrix;
pub mod report;

pub use claims::{
    builtin_claims, check_claim, evaluate_formula, run_suite, Claim, ClaimResult, Instance,
    SuiteOptions, Verdict,
};
pub use constructors::{GraphSpec, ShadowConvention};
pub use eigen::{symmetric_eigenvalues, Spectrum, DEFAULT_EIGEN_TOL};
pub use graph::{Edge, Graph, GraphError};
pub use matrix::{kronecker, DenseSymMatrix, MatrixError};
