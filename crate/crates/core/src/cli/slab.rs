//! The moving-slab test problem: a conductor of depth `d` moving along z
//! through an applied field `B_x` that is switched on over a middle band.

use super::config::{OutflowBc, RefParams};
use crate::fem::{assemble_1d, assemble_2d, MaterialParams, SourceField, SourceMode};
use crate::mesh::{build_mesh_1d, DofMap, Mesh1D, Mesh2D};
use crate::postprocess::{graded_grid, reaction_field_1d, reaction_field_2d, GradedSpec};
use crate::solver::{apply_dirichlet, solve, Solution};
use crate::Error;

/// Trapezoidal profile of `B_x(z)`: zero outside `[k0, k3]`, `b_ax` on
/// `[k1, k2]`, linear in between. It is the piecewise-linear interpolant of
/// a step sampled on a base grid, so the kinks are base-grid nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepProfile {
    pub kinks: [f64; 4],
    pub b_ax: f64,
}

impl StepProfile {
    /// Profile with `B = b_ax` on base nodes `a ..= b` and zero elsewhere.
    pub fn on_base(z: &[f64], a: usize, b: usize, b_ax: f64) -> Result<Self, Error> {
        if !(a >= 1 && a <= b && b + 1 < z.len()) {
            return Err(Error::Config(format!("source nodes {a}..={b} do not fit a grid of {} nodes", z.len())));
        }
        Ok(Self { kinks: [z[a - 1], z[a], z[b], z[b + 1]], b_ax })
    }

    /// Band covering the base nodes closest to the fractions `from` and `to`
    /// of the grid.
    pub fn on_fraction(z: &[f64], from: f64, to: f64, b_ax: f64) -> Result<Self, Error> {
        let n = (z.len() - 1) as f64;
        Self::on_base(z, (from * n).round() as usize, (to * n).round() as usize, b_ax)
    }

    pub fn eval(&self, s: f64) -> f64 {
        let [k0, k1, k2, k3] = self.kinks;
        let tol = 1e-12 * (k3 - k0).abs();
        if s <= k0 + tol || s >= k3 - tol {
            0.0
        } else if s >= k1 - tol && s <= k2 + tol {
            self.b_ax
        } else if s < k1 {
            self.b_ax * (s - k0) / (k1 - k0)
        } else {
            self.b_ax * (k3 - s) / (k3 - k2)
        }
    }

    pub fn samples(&self, z: &[f64]) -> Vec<f64> {
        z.iter().map(|&s| self.eval(s)).collect()
    }
}

/// `z_i = i·L/n` for `i = 0..=n`.
pub fn uniform_grid(n: usize, length: f64) -> Vec<f64> {
    (0..=n).map(|i| i as f64 * length / n as f64).collect()
}

/// Elements per source third so the oscillatory mode `((Pe−1)/(Pe+1))^n`
/// decays below `tol` across the upstream third.
pub fn elements_per_third(pe: f64, tol: f64, min: usize) -> usize {
    let r = ((pe - 1.0) / (pe + 1.0)).abs();
    if r <= 0.0 || !r.is_finite() {
        return min;
    }
    let n = (tol.ln() / r.ln()).ceil();
    if n.is_finite() && n > 0.0 { (n as usize).max(min) } else { min }
}

/// Element flags: true where neither node of the element belongs to an
/// element with a nonzero source sample. Indexed along z.
pub fn outside_load(samples_z: &[f64]) -> Vec<bool> {
    let n = samples_z.len() - 1;
    let mut load_node = vec![false; n + 1];
    for e in 0..n {
        if samples_z[e] != 0.0 || samples_z[e + 1] != 0.0 {
            load_node[e] = true;
            load_node[e + 1] = true;
        }
    }
    (0..n).map(|e| !load_node[e] && !load_node[e + 1]).collect()
}

/// Computed 1D field and its diagnostics.
#[derive(Clone, Debug)]
pub struct Solve1D {
    pub mesh: Mesh1D,
    pub samples: Vec<f64>,
    pub solution: Solution,
    /// Per-element `b_x`.
    pub b: Vec<f64>,
}

pub fn solve_slab_1d(
    n_elems: usize,
    dz: f64,
    profile: &StepProfile,
    mat: &MaterialParams,
    mode: SourceMode,
    outflow: OutflowBc,
) -> Result<Solve1D, Error> {
    let mesh = build_mesh_1d(n_elems, dz)?;
    let z = uniform_grid(n_elems, n_elems as f64 * dz);
    let samples = profile.samples(&z);
    let sys = assemble_1d(&mesh, mat, &SourceField::new(samples.clone(), mode))?;
    let mut bc = vec![(0, 0.0)];
    if outflow == OutflowBc::Dirichlet {
        bc.push((n_elems, 0.0));
    }
    let solution = solve(&apply_dirichlet(&sys, &bc)?)?;
    let b = reaction_field_1d(&mesh, &solution.x)?;
    Ok(Solve1D { mesh, samples, solution, b })
}

/// Computed 2D fields and diagnostics.
#[derive(Clone, Debug)]
pub struct Solve2D {
    pub mesh: Mesh2D,
    pub samples: Vec<f64>,
    pub solution: Solution,
    pub phi: Vec<f64>,
    pub ay: Vec<f64>,
    pub az: Vec<f64>,
    /// Per-element `b_x`.
    pub b: Vec<f64>,
}

/// Dirichlet data: `A_y = 0` on the inflow edges (and outflow edges when
/// requested), `A_z = 0` on the walls, `φ = 0` at the inflow wall corner.
pub fn slab_boundary_2d(mesh: &Mesh2D, dofs: &DofMap, outflow: OutflowBc) -> Vec<(usize, f64)> {
    let (nz, ny) = (mesh.n_z(), mesh.n_y());
    let mut bc = vec![(dofs.node(mesh.node(0, 0)), 0.0)];
    for iy in 0..ny {
        bc.push((dofs.y_edge(mesh.y_edge(0, iy)), 0.0));
        if outflow == OutflowBc::Dirichlet {
            bc.push((dofs.y_edge(mesh.y_edge(nz, iy)), 0.0));
        }
    }
    for iz in 0..nz {
        bc.push((dofs.z_edge(mesh.z_edge(iz, 0)), 0.0));
        bc.push((dofs.z_edge(mesh.z_edge(iz, ny)), 0.0));
    }
    bc
}

pub fn solve_slab_2d(
    mesh: Mesh2D,
    profile: &StepProfile,
    mat: &MaterialParams,
    mode: SourceMode,
    outflow: OutflowBc,
) -> Result<Solve2D, Error> {
    let samples: Vec<f64> = (0..mesh.n_nodes()).map(|n| profile.eval(mesh.node_coords(n).0)).collect();
    let sys = assemble_2d(&mesh, mat, &SourceField::new(samples.clone(), mode))?;
    let dofs = DofMap::new(&mesh);
    let sys = apply_dirichlet(&sys, &slab_boundary_2d(&mesh, &dofs, outflow))?;
    let solution = solve(&sys)?;
    let (phi, ay, az) = dofs.split(&solution.x);
    let b = reaction_field_2d(&mesh, &ay, &az)?;
    Ok(Solve2D { mesh, samples, solution, phi, ay, az, b })
}

/// Fine-mesh solution graded towards the source kinks. `base_z` must be the
/// z-grid of the finest mesh to be compared, `n_y` its element count across.
pub fn reference_2d(
    base_z: &[f64],
    n_y: usize,
    depth: f64,
    profile: &StepProfile,
    mat: &MaterialParams,
    outflow: OutflowBc,
    params: &RefParams,
) -> Result<Solve2D, Error> {
    let h_base = base_z.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let spec = GradedSpec {
        h_min: mat.dz_for_peclet(params.pe).min(h_base / params.base_factor as f64),
        growth: params.growth,
        h_max: h_base / params.base_factor as f64,
    };
    let z = graded_grid(base_z, &profile.kinks, &spec)?;
    let y = uniform_grid(n_y * params.y_factor, depth);
    let mesh = Mesh2D::from_coordinates(z, y)?;
    solve_slab_2d(mesh, profile, mat, SourceMode::GaussPoint, outflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::MU0;

    #[test]
    fn profile_shape() {
        let z = uniform_grid(9, 9.0);
        let p = StepProfile::on_fraction(&z, 1.0 / 3.0, 2.0 / 3.0, 2.0).unwrap();
        assert_eq!(p.kinks, [2.0, 3.0, 6.0, 7.0]);
        assert_eq!(p.samples(&z), vec![0.0, 0.0, 0.0, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.eval(2.5), 1.0);
        assert_eq!(p.eval(6.75), 0.5);
        assert!(StepProfile::on_base(&z, 0, 3, 1.0).is_err());
        assert!(StepProfile::on_base(&z, 3, 9, 1.0).is_err());
    }

    #[test]
    fn load_mask() {
        let m = outside_load(&[0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m, vec![true, false, false, false, false, false, true]);
    }

    #[test]
    fn third_length() {
        assert_eq!(elements_per_third(1.0, 1e-6, 40), 40);
        assert_eq!(elements_per_third(0.5, 1e-6, 40), 40);
        let n = elements_per_third(200.0, 1e-6, 40);
        assert!((1370..1390).contains(&n), "{n}");
    }

    #[test]
    fn small_slab_solves() {
        let mat = MaterialParams::new(7.2e6, MU0, 50.0).unwrap();
        let dz = mat.dz_for_peclet(5.0);
        let z = uniform_grid(30, 30.0 * dz);
        let p = StepProfile::on_fraction(&z, 1.0 / 3.0, 2.0 / 3.0, 1.0).unwrap();
        let mesh = Mesh2D::from_coordinates(z, uniform_grid(4, 0.5)).unwrap();
        let s = solve_slab_2d(mesh, &p, &mat, SourceMode::ElementalAverage, OutflowBc::Natural).unwrap();
        assert!(s.solution.residual < 1e-10);
        assert!(s.b.iter().all(|v| v.is_finite()));
    }
}
