use mcfem::cli::slab::{slab_boundary_2d, uniform_grid, StepProfile};
use mcfem::cli::OutflowBc;
use mcfem::fem::{assemble_1d, assemble_2d, MaterialParams, SourceField, SourceMode, MU0};
use mcfem::mesh::{build_mesh_1d, build_mesh_2d, DofMap, Mesh2D};
use mcfem::postprocess::{exact_1d, reaction_field_1d};
use mcfem::solver::{apply_dirichlet, solve, RESIDUAL_TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn copper(u_z: f64) -> MaterialParams {
    MaterialParams::new(7.2e6, MU0, u_z).unwrap()
}

fn solve_1d(n: usize, dz: f64, b: &[f64], mat: &MaterialParams, mode: SourceMode, bc: &[(usize, f64)]) -> Vec<f64> {
    let mesh = build_mesh_1d(n, dz).unwrap();
    let sys = assemble_1d(&mesh, mat, &SourceField::new(b.to_vec(), mode)).unwrap();
    let sol = solve(&apply_dirichlet(&sys, bc).unwrap()).unwrap();
    assert!(sol.residual < RESIDUAL_TOL);
    sol.x
}

fn dense(m: &mcfem::fem::CsrMatrix) -> DMatrix<f64> {
    let n = m.n();
    DMatrix::from_fn(n, n, |i, j| m.get(i, j))
}

fn rank(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max();
    sv.iter().filter(|&&s| s > 1e-10 * top).count()
}

#[test]
fn low_peclet_galerkin_matches_closed_form() {
    let mat = copper(50.0);
    let n = 300;
    let dz = mat.dz_for_peclet(0.1);
    let z = uniform_grid(n, n as f64 * dz);
    let b = StepProfile::on_fraction(&z, 1.0 / 3.0, 2.0 / 3.0, 1.0).unwrap().samples(&z);
    let a = solve_1d(n, dz, &b, &mat, SourceMode::GaussPoint, &[(0, 0.0)]);
    let exact = exact_1d(&z, &b, mat.k(), false).unwrap();
    let scale = exact.a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (i, (x, e)) in a.iter().zip(&exact.a).enumerate() {
        assert!((x - e).abs() <= 0.01 * scale, "node {i}: {x} vs {e}");
    }
}

#[test]
fn constant_boundary_value_without_source_is_constant() {
    let mat = copper(50.0);
    let n = 40;
    let a = solve_1d(n, mat.dz_for_peclet(7.0), &vec![0.0; n + 1], &mat, SourceMode::GaussPoint, &[(0, 2.5), (n, 2.5)]);
    for v in a {
        assert!((v - 2.5).abs() < 1e-12);
    }
}

#[test]
fn velocity_reversal_mirrors_the_field() {
    let n = 90;
    let dz = copper(50.0).dz_for_peclet(4.0);
    let z = uniform_grid(n, n as f64 * dz);
    let b = StepProfile::on_base(&z, 20, 50, 1.0).unwrap().samples(&z);
    let mirrored: Vec<f64> = b.iter().rev().copied().collect();
    let bc = [(0, 0.0), (n, 0.0)];
    for mode in [SourceMode::GaussPoint, SourceMode::ElementalAverage] {
        let mesh = build_mesh_1d(n, dz).unwrap();
        let fwd = solve_1d(n, dz, &b, &copper(50.0), mode, &bc);
        let back = solve_1d(n, dz, &mirrored, &copper(-50.0), mode, &bc);
        let scale = fwd.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..=n {
            assert!((back[i] + fwd[n - i]).abs() <= 1e-9 * scale, "node {i}");
        }
        let bf = reaction_field_1d(&mesh, &fwd).unwrap();
        let bb = reaction_field_1d(&mesh, &back).unwrap();
        let bscale = bf.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for e in 0..n {
            assert!((bb[e] - bf[n - 1 - e]).abs() <= 1e-9 * bscale, "element {e}");
        }
    }
}

#[test]
fn grounding_one_node_makes_the_2d_system_nonsingular() {
    let mat = copper(50.0);
    let mesh = build_mesh_2d(4, 4, mat.dz_for_peclet(3.0), 0.125).unwrap();
    let dofs = DofMap::new(&mesh);
    let sys = assemble_2d(&mesh, &mat, &SourceField::new(vec![0.0; mesh.n_nodes()], SourceMode::GaussPoint)).unwrap();
    let bc = slab_boundary_2d(&mesh, &dofs, OutflowBc::Dirichlet);
    let n = sys.n();
    let grounded = apply_dirichlet(&sys, &bc).unwrap();
    assert_eq!(rank(&dense(&grounded.matrix)), n);
    let floating = apply_dirichlet(&sys, &bc[1..]).unwrap();
    assert_eq!(rank(&dense(&floating.matrix)), n - 1);
}

fn small_slab(scale: f64, mode: SourceMode) -> Vec<f64> {
    let mat = copper(50.0);
    let n_z = 24;
    let z = uniform_grid(n_z, n_z as f64 * mat.dz_for_peclet(6.0));
    let profile = StepProfile::on_fraction(&z, 1.0 / 3.0, 2.0 / 3.0, scale).unwrap();
    let mesh = Mesh2D::from_coordinates(z, uniform_grid(4, 0.5)).unwrap();
    let samples: Vec<f64> = (0..mesh.n_nodes()).map(|i| profile.eval(mesh.node_coords(i).0)).collect();
    let dofs = DofMap::new(&mesh);
    let sys = assemble_2d(&mesh, &mat, &SourceField::new(samples, mode)).unwrap();
    let sys = apply_dirichlet(&sys, &slab_boundary_2d(&mesh, &dofs, OutflowBc::Natural)).unwrap();
    let sol = solve(&sys).unwrap();
    assert!(sol.residual < RESIDUAL_TOL);
    sol.x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn solution_is_linear_in_the_source(alpha in -5.0f64..5.0) {
        prop_assume!(alpha.abs() > 1e-3);
        for mode in [SourceMode::GaussPoint, SourceMode::ElementalAverage] {
            let base = small_slab(1.0, mode);
            let scaled = small_slab(alpha, mode);
            let norm = base.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (s, b) in scaled.iter().zip(&base) {
                prop_assert!((s - alpha * b).abs() <= 1e-9 * alpha.abs() * norm);
            }
        }
    }
}
