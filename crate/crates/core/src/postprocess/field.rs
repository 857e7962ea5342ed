use super::PostError;
use crate::mesh::{Mesh1D, Mesh2D};

/// Per-element `b_x = ∂A_z/∂y − ∂A_y/∂z` from edge values (tangential
/// values, constant along each edge). Indexed like [`Mesh2D::elem_id`].
pub fn reaction_field_2d(mesh: &Mesh2D, ay: &[f64], az: &[f64]) -> Result<Vec<f64>, PostError> {
    if ay.len() != mesh.n_y_edges() {
        return Err(PostError::SizeMismatch { expected: mesh.n_y_edges(), got: ay.len() });
    }
    if az.len() != mesh.n_z_edges() {
        return Err(PostError::SizeMismatch { expected: mesh.n_z_edges(), got: az.len() });
    }
    Ok(mesh
        .elements()
        .map(|e| {
            (az[e.z_edges[1]] - az[e.z_edges[0]]) / e.hy - (ay[e.y_edges[1]] - ay[e.y_edges[0]]) / e.hz
        })
        .collect())
}

/// Per-element `b_x = −dA_y/dz` from nodal values of the reduced 1D problem.
pub fn reaction_field_1d(mesh: &Mesh1D, a: &[f64]) -> Result<Vec<f64>, PostError> {
    if a.len() != mesh.n_nodes() {
        return Err(PostError::SizeMismatch { expected: mesh.n_nodes(), got: a.len() });
    }
    Ok(a.windows(2).map(|w| -(w[1] - w[0]) / mesh.dz).collect())
}

/// Values of a per-element field along the element row `iy`.
pub fn element_row(mesh: &Mesh2D, field: &[f64], iy: usize) -> Vec<f64> {
    (0..mesh.n_z()).map(|iz| field[mesh.elem_id(iz, iy)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh_2d;

    fn edge_values(mesh: &Mesh2D, fy: impl Fn(f64, f64) -> f64, fz: impl Fn(f64, f64) -> f64) -> (Vec<f64>, Vec<f64>) {
        let mid = |(a, b): (usize, usize)| {
            let (za, ya) = mesh.node_coords(a);
            let (zb, yb) = mesh.node_coords(b);
            (0.5 * (za + zb), 0.5 * (ya + yb))
        };
        let ay = (0..mesh.n_y_edges()).map(|e| { let (z, y) = mid(mesh.y_edge_nodes(e)); fy(z, y) }).collect();
        let az = (0..mesh.n_z_edges()).map(|e| { let (z, y) = mid(mesh.z_edge_nodes(e)); fz(z, y) }).collect();
        (ay, az)
    }

    #[test]
    fn analytic_curls() {
        let mesh = Mesh2D::from_coordinates(vec![0.0, 0.3, 0.5, 1.2], vec![0.0, 0.1, 0.4]).unwrap();
        let (ay, az) = edge_values(&mesh, |z, _| z, |_, _| 0.0);
        for b in reaction_field_2d(&mesh, &ay, &az).unwrap() {
            assert!((b + 1.0).abs() < 1e-14);
        }
        let (ay, az) = edge_values(&mesh, |_, _| 0.0, |_, y| y);
        for b in reaction_field_2d(&mesh, &ay, &az).unwrap() {
            assert!((b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gradient_is_curl_free() {
        let mesh = build_mesh_2d(4, 3, 0.2, 0.1).unwrap();
        let phi: Vec<f64> = (0..mesh.n_nodes()).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
        let grad = |(a, b): (usize, usize), len: f64| (phi[b] - phi[a]) / len;
        let ay: Vec<f64> = (0..mesh.n_y_edges()).map(|e| grad(mesh.y_edge_nodes(e), 0.1)).collect();
        let az: Vec<f64> = (0..mesh.n_z_edges()).map(|e| grad(mesh.z_edge_nodes(e), 0.2)).collect();
        for b in reaction_field_2d(&mesh, &ay, &az).unwrap() {
            assert!(b.abs() < 1e-12);
        }
    }

    #[test]
    fn size_checks() {
        let mesh = build_mesh_2d(2, 2, 1.0, 1.0).unwrap();
        assert!(reaction_field_2d(&mesh, &[0.0; 5], &[0.0; 6]).is_err());
    }
}
