//! Eigenvalue checks against exact integer characteristic polynomials and
//! known closed-form spectra.

use sombor::constructors::{complete, cycle, hypercube};
use sombor::eigen::{symmetric_eigenvalues, Spectrum, DEFAULT_EIGEN_TOL};
use sombor::graph::Graph;
use sombor::invariants::{adjacency_matrix, graph_energy};

/// Characteristic polynomial `det(xI - A)` of an integer matrix by the
/// Faddeev–LeVerrier recurrence, in exact arithmetic. Coefficients are
/// returned highest degree first.
fn char_poly(a: &[Vec<i128>]) -> Vec<i128> {
    let n = a.len();
    let mul = |x: &[Vec<i128>], y: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|t| x[i][t] * y[t][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![1i128];
    let mut m: Vec<Vec<i128>> = vec![vec![0; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = mul(a, &m);
        let c_prev = *coeffs.last().unwrap();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c_prev;
        }
        m = next;
        let am = mul(a, &m);
        let trace: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(trace % k as i128, 0);
        coeffs.push(-trace / k as i128);
    }
    coeffs
}

/// Expands `prod (x - r)` for the given roots.
fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    roots.iter().fold(vec![1.0], |acc, &r| {
        let mut next = vec![0.0; acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= r * c;
        }
        next
    })
}

fn int_adjacency(g: &Graph) -> Vec<Vec<i128>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v) as i128).collect())
        .collect()
}

fn check_against_char_poly(g: &Graph) {
    let exact = char_poly(&int_adjacency(g));
    let spectrum = symmetric_eigenvalues(&adjacency_matrix(g), DEFAULT_EIGEN_TOL).unwrap();
    let numeric = poly_from_roots(spectrum.values());
    assert_eq!(exact.len(), numeric.len());
    for (e, x) in exact.iter().zip(&numeric) {
        assert!(
            (*e as f64 - x).abs() <= 1e-8 * (e.abs() as f64).max(1.0),
            "{exact:?} vs {numeric:?}"
        );
    }
}

#[test]
fn k4_char_poly() {
    let k4 = complete(4).unwrap();
    // (x - 3)(x + 1)^3
    assert_eq!(char_poly(&int_adjacency(&k4)), vec![1, 0, -6, -8, -3]);
    let s = symmetric_eigenvalues(&adjacency_matrix(&k4), DEFAULT_EIGEN_TOL).unwrap();
    assert!(s.approx_eq(&Spectrum::new(vec![3.0, -1.0, -1.0, -1.0]), 1e-12));
}

#[test]
fn char_poly_agrees_for_small_graphs() {
    for g in [
        cycle(5).unwrap(),
        cycle(6).unwrap(),
        complete(5).unwrap(),
        hypercube(3).unwrap(),
        Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap(),
    ] {
        check_against_char_poly(&g);
    }
}

#[test]
fn cycle_spectra() {
    let c6 =
        symmetric_eigenvalues(&adjacency_matrix(&cycle(6).unwrap()), DEFAULT_EIGEN_TOL).unwrap();
    assert!(c6.approx_eq(&Spectrum::new(vec![2.0, 1.0, 1.0, -1.0, -1.0, -2.0]), 1e-12));
    for n in 3..=16 {
        let s = symmetric_eigenvalues(&adjacency_matrix(&cycle(n).unwrap()), DEFAULT_EIGEN_TOL)
            .unwrap();
        let closed = Spectrum::new(
            (0..n)
                .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
                .collect(),
        );
        assert!(s.approx_eq(&closed, 1e-10), "C_{n}");
    }
    assert!((graph_energy(&cycle(4).unwrap(), DEFAULT_EIGEN_TOL).unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn hypercube_energy() {
    // Q_d has eigenvalues d - 2i with multiplicity C(d, i).
    for d in 1..=6u32 {
        let mut values = Vec::new();
        let mut binom = 1usize;
        for i in 0..=d as usize {
            values.extend(std::iter::repeat_n(d as f64 - 2.0 * i as f64, binom));
            binom = binom * (d as usize - i) / (i + 1);
        }
        let expected = Spectrum::new(values);
        let s = symmetric_eigenvalues(&adjacency_matrix(&hypercube(d).unwrap()), DEFAULT_EIGEN_TOL)
            .unwrap();
        assert!(s.approx_eq(&expected, 1e-10), "Q_{d}");
    }
}
