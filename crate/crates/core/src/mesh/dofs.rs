use super::Mesh2D;

/// What a global unknown is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DofKind {
    /// Scalar potential at a node.
    Node(usize),
    /// Tangential vector potential on a y-edge.
    YEdge(usize),
    /// Tangential vector potential on a z-edge.
    ZEdge(usize),
}

/// Global numbering of the 2D unknowns.
///
/// Unknowns are ordered slice by slice along z, interleaving the node, the
/// y-edge above it and the z-edge downstream of it, which keeps the matrix
/// bandwidth near three times the number of nodes across y.
#[derive(Clone, Debug, PartialEq)]
pub struct DofMap {
    node: Vec<usize>,
    y_edge: Vec<usize>,
    z_edge: Vec<usize>,
    kinds: Vec<DofKind>,
    on_boundary: Vec<bool>,
}

impl DofMap {
    pub fn new(mesh: &Mesh2D) -> Self {
        let (nz, ny) = (mesh.n_z(), mesh.n_y());
        let mut node = vec![usize::MAX; mesh.n_nodes()];
        let mut y_edge = vec![usize::MAX; mesh.n_y_edges()];
        let mut z_edge = vec![usize::MAX; mesh.n_z_edges()];
        let mut kinds = Vec::with_capacity(node.len() + y_edge.len() + z_edge.len());
        let mut on_boundary = Vec::with_capacity(kinds.capacity());
        for iz in 0..=nz {
            for iy in 0..=ny {
                let n = mesh.node(iz, iy);
                node[n] = kinds.len();
                kinds.push(DofKind::Node(n));
                on_boundary.push(iz == 0 || iz == nz || iy == 0 || iy == ny);
                if iy < ny {
                    let e = mesh.y_edge(iz, iy);
                    y_edge[e] = kinds.len();
                    kinds.push(DofKind::YEdge(e));
                    on_boundary.push(iz == 0 || iz == nz);
                }
                if iz < nz {
                    let e = mesh.z_edge(iz, iy);
                    z_edge[e] = kinds.len();
                    kinds.push(DofKind::ZEdge(e));
                    on_boundary.push(iy == 0 || iy == ny);
                }
            }
        }
        Self { node, y_edge, z_edge, kinds, on_boundary }
    }

    pub fn n_dofs(&self) -> usize {
        self.kinds.len()
    }
    pub fn node(&self, id: usize) -> usize {
        self.node[id]
    }
    pub fn y_edge(&self, id: usize) -> usize {
        self.y_edge[id]
    }
    pub fn z_edge(&self, id: usize) -> usize {
        self.z_edge[id]
    }
    pub fn kind(&self, dof: usize) -> DofKind {
        self.kinds[dof]
    }

    /// Unknowns lying on the outer boundary: boundary nodes, y-edges on the
    /// z-ends and z-edges on the y-walls.
    pub fn boundary_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| self.on_boundary[d]).collect()
    }

    pub fn interior_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| !self.on_boundary[d]).collect()
    }

    /// Splits a global vector into node, y-edge and z-edge values.
    pub fn split(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let pick = |ids: &[usize]| ids.iter().map(|&d| x[d]).collect();
        (pick(&self.node), pick(&self.y_edge), pick(&self.z_edge))
    }

    /// Inverse of [`DofMap::split`].
    pub fn join(&self, phi: &[f64], ay: &[f64], az: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.n_dofs()];
        for (ids, vals) in [(&self.node, phi), (&self.y_edge, ay), (&self.z_edge, az)] {
            for (&d, &v) in ids.iter().zip(vals) {
                x[d] = v;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh_2d;

    #[test]
    fn bijective_and_partitioned() {
        let m = build_mesh_2d(3, 4, 1.0, 1.0).unwrap();
        let d = DofMap::new(&m);
        assert_eq!(d.n_dofs(), m.n_nodes() + m.n_y_edges() + m.n_z_edges());
        let mut seen = vec![false; d.n_dofs()];
        for i in 0..m.n_nodes() {
            seen[d.node(i)] = true;
            assert_eq!(d.kind(d.node(i)), DofKind::Node(i));
        }
        for i in 0..m.n_y_edges() {
            seen[d.y_edge(i)] = true;
            assert_eq!(d.kind(d.y_edge(i)), DofKind::YEdge(i));
        }
        for i in 0..m.n_z_edges() {
            seen[d.z_edge(i)] = true;
        }
        assert!(seen.iter().all(|&s| s));
        let (b, i) = (d.boundary_dofs(), d.interior_dofs());
        assert_eq!(b.len() + i.len(), d.n_dofs());
        assert!(b.iter().all(|x| !i.contains(x)));
    }

    #[test]
    fn split_join_roundtrip() {
        let m = build_mesh_2d(2, 3, 1.0, 1.0).unwrap();
        let d = DofMap::new(&m);
        let x: Vec<f64> = (0..d.n_dofs()).map(|i| i as f64).collect();
        let (p, a, b) = d.split(&x);
        assert_eq!(d.join(&p, &a, &b), x);
    }
}
