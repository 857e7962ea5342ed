//! Boundary conditions and direct solution of the assembled systems.

mod banded;

use thiserror::Error;

pub use banded::BandLu;

use crate::fem::SparseSystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("unknown dof {dof} (system has {n})")]
    UnknownDof { dof: usize, n: usize },
    #[error("matrix is singular: zero pivot in column {0}")]
    Singular(usize),
    #[error("relative residual {0:e} above tolerance after refinement")]
    NotConverged(f64),
    #[error("right-hand side has length {got}, expected {expected}")]
    RhsLength { expected: usize, got: usize },
    #[error("system contains non-finite entries")]
    NonFinite,
}

/// Required relative residual `‖Ax − b‖/‖b‖`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Solution vector with diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    /// Relative residual of the returned vector.
    pub residual: f64,
    /// Iterative-refinement steps after the initial solve.
    pub iterations: usize,
}

/// Imposes `x[dof] = value` for each pair: the row becomes a unit row and the
/// column is moved to the right-hand side, so symmetric blocks stay symmetric.
pub fn apply_dirichlet(
    system: &SparseSystem,
    values: &[(usize, f64)],
) -> Result<SparseSystem, SolverError> {
    let n = system.n();
    let mut fixed = vec![None; n];
    for &(dof, v) in values {
        if dof >= n {
            return Err(SolverError::UnknownDof { dof, n });
        }
        fixed[dof] = Some(v);
    }
    let mut out = system.clone();
    for i in 0..n {
        if fixed[i].is_some() {
            continue;
        }
        let (cols, vals) = out.matrix.row_mut(i);
        let mut shift = 0.0;
        for (&j, a) in cols.iter().zip(vals.iter_mut()) {
            if let Some(v) = fixed[j] {
                shift += *a * v;
                *a = 0.0;
            }
        }
        out.rhs[i] -= shift;
    }
    for (i, f) in fixed.iter().enumerate() {
        if let Some(v) = f {
            out.matrix.set_unit_row(i);
            out.rhs[i] = *v;
        }
    }
    Ok(out)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(system: &SparseSystem, x: &[f64]) -> Vec<f64> {
    system
        .matrix
        .mul_vec(x)
        .iter()
        .zip(&system.rhs)
        .map(|(ax, b)| b - ax)
        .collect()
}

/// Solves the system by banded LU with partial pivoting, followed by up to
/// three steps of iterative refinement.
pub fn solve(system: &SparseSystem) -> Result<Solution, SolverError> {
    let n = system.n();
    if system.rhs.len() != n {
        return Err(SolverError::RhsLength { expected: n, got: system.rhs.len() });
    }
    if !system.matrix.is_finite() || system.rhs.iter().any(|v| !v.is_finite()) {
        return Err(SolverError::NonFinite);
    }
    let lu = BandLu::factor(&system.matrix)?;
    let bnorm = norm(&system.rhs);
    if bnorm == 0.0 {
        return Ok(Solution { x: vec![0.0; n], residual: 0.0, iterations: 0 });
    }
    let mut x = lu.solve(&system.rhs);
    let mut r = residual(system, &x);
    let mut rel = norm(&r) / bnorm;
    let mut iterations = 0;
    while rel >= RESIDUAL_TOL * 1e-2 && iterations < 3 {
        let dx = lu.solve(&r);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        r = residual(system, &x);
        rel = norm(&r) / bnorm;
        iterations += 1;
    }
    if !(rel < RESIDUAL_TOL) {
        return Err(SolverError::NotConverged(rel));
    }
    Ok(Solution { x, residual: rel, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::CsrMatrix;

    fn system(n: usize, t: &[(usize, usize, f64)], rhs: Vec<f64>) -> SparseSystem {
        SparseSystem {
            matrix: CsrMatrix::from_triplets(n, t),
            rhs,
            boundary: vec![],
            interior: (0..n).collect(),
        }
    }

    #[test]
    fn identity_returns_rhs() {
        let s = SparseSystem {
            matrix: CsrMatrix::identity(4),
            rhs: vec![1.0, -2.0, 3.0, 0.5],
            boundary: vec![],
            interior: vec![],
        };
        let sol = solve(&s).unwrap();
        assert_eq!(sol.x, s.rhs);
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn dirichlet_moves_columns_to_rhs() {
        // Laplacian on 4 points.
        let t = [
            (0, 0, 2.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 2.0), (1, 2, -1.0),
            (2, 1, -1.0), (2, 2, 2.0), (2, 3, -1.0), (3, 2, -1.0), (3, 3, 2.0),
        ];
        let s = system(4, &t, vec![0.0; 4]);
        let d = apply_dirichlet(&s, &[(0, 3.0), (3, 3.0)]).unwrap();
        assert_eq!(d.matrix.get(1, 0), 0.0);
        assert_eq!(d.rhs[1], 3.0);
        assert_eq!(d.matrix.get(1, 2), d.matrix.get(2, 1));
        let x = solve(&d).unwrap().x;
        for v in x {
            assert!((v - 3.0).abs() < 1e-14);
        }
        assert!(matches!(apply_dirichlet(&s, &[(9, 0.0)]), Err(SolverError::UnknownDof { .. })));
    }

    #[test]
    fn singular_is_reported() {
        let s = system(2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)], vec![1.0, 2.0]);
        assert!(matches!(solve(&s), Err(SolverError::Singular(_))));
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let s = system(3, &[(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0), (2, 2, 1.0)], vec![2.0, 4.0, 5.0]);
        let x = solve(&s).unwrap().x;
        // x1 = 2, x0 + x2 = 4, x1 + x2 = 5
        assert!((x[1] - 2.0).abs() < 1e-14 && (x[2] - 3.0).abs() < 1e-14 && (x[0] - 1.0).abs() < 1e-14);
    }
}
