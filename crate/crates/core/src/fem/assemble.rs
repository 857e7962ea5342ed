use super::element::{element_matrices, local_system};
use super::shape::GAUSS_2;
use super::sparse::{RowAccumulator, SparseSystem};
use super::{FemError, MaterialParams, SourceField, SourceMode};
use crate::mesh::{DofMap, Mesh1D, Mesh2D};

/// Assembles the reduced 1D equation `−A'' + μσu A' = μσu B` for the
/// y-directed edge values at the nodes of a uniform grid.
///
/// Every row is multiplied by `Δz`, so interior rows read
/// `−(1+Pe)A[n−1] + 2A[n] − (1−Pe)A[n+1] = Pe·Δz·(weights·B)`. The end rows
/// carry the natural boundary condition until Dirichlet values are imposed.
pub fn assemble_1d(
    mesh: &Mesh1D,
    mat: &MaterialParams,
    src: &SourceField,
) -> Result<SparseSystem, FemError> {
    let n = mesh.n_nodes();
    src.check_len(n)?;
    let h = mesh.dz;
    let k = mat.k();
    let mut acc = RowAccumulator::new(n);
    let mut rhs = vec![0.0; n];
    for e in 0..mesh.n_elems {
        let (b0, b1) = (src.samples[e], src.samples[e + 1]);
        let mut a = [[0.0; 2]; 2];
        let mut f = [0.0; 2];
        for &g in &GAUSS_2 {
            let m = [0.5 * (1.0 - g), 0.5 * (1.0 + g)];
            let dm = [-1.0 / h, 1.0 / h];
            let w = h / 2.0;
            let bq = match src.mode {
                SourceMode::GaussPoint => m[0] * b0 + m[1] * b1,
                SourceMode::ElementalAverage => 0.5 * (b0 + b1),
            };
            for i in 0..2 {
                for j in 0..2 {
                    a[i][j] += w * (dm[i] * dm[j] + k * m[i] * dm[j]);
                }
                f[i] += w * k * m[i] * bq;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                acc.add(e + i, e + j, h * a[i][j]);
            }
            rhs[e + i] += h * f[i];
        }
    }
    Ok(SparseSystem {
        matrix: acc.into_csr(),
        rhs,
        boundary: vec![0, n - 1],
        interior: (1..n - 1).collect(),
    })
}

/// Assembles the coupled φ–A system on a rectangle grid. Unknowns are
/// numbered by [`DofMap::new`] for the same mesh.
pub fn assemble_2d(
    mesh: &Mesh2D,
    mat: &MaterialParams,
    src: &SourceField,
) -> Result<SparseSystem, FemError> {
    src.check_len(mesh.n_nodes())?;
    let dofs = DofMap::new(mesh);
    let mut acc = RowAccumulator::new(dofs.n_dofs());
    let mut rhs = vec![0.0; dofs.n_dofs()];
    let mut cache: Option<((f64, f64), super::ElementMatrices)> = None;
    for el in mesh.elements() {
        let em = match &cache {
            Some((size, em)) if *size == (el.hz, el.hy) => em,
            _ => {
                cache = Some(((el.hz, el.hy), element_matrices(el.hz, el.hy)));
                &cache.as_ref().expect("just set").1
            }
        };
        let b = el.nodes.map(|n| src.samples[n]);
        let (a, f) = local_system(em, mat, &b, src.mode);
        let map = [
            dofs.node(el.nodes[0]),
            dofs.node(el.nodes[1]),
            dofs.node(el.nodes[2]),
            dofs.node(el.nodes[3]),
            dofs.y_edge(el.y_edges[0]),
            dofs.y_edge(el.y_edges[1]),
            dofs.z_edge(el.z_edges[0]),
            dofs.z_edge(el.z_edges[1]),
        ];
        for i in 0..8 {
            for j in 0..8 {
                if a[i][j] != 0.0 {
                    acc.add(map[i], map[j], a[i][j]);
                }
            }
            rhs[map[i]] += f[i];
        }
    }
    Ok(SparseSystem {
        matrix: acc.into_csr(),
        rhs,
        boundary: dofs.boundary_dofs(),
        interior: dofs.interior_dofs(),
    })
}
