use std::fmt::Write;

use super::MeshError;

/// Tensor-product rectangle grid, z along the first index and y along the second.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh2D {
    z: Vec<f64>,
    y: Vec<f64>,
}

/// Connectivity and geometry of one rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element {
    pub iz: usize,
    pub iy: usize,
    /// Corners `(z-,y-), (z+,y-), (z-,y+), (z+,y+)`.
    pub nodes: [usize; 4],
    /// y-edges at `z-` and `z+`.
    pub y_edges: [usize; 2],
    /// z-edges at `y-` and `y+`.
    pub z_edges: [usize; 2],
    pub z0: f64,
    pub y0: f64,
    pub hz: f64,
    pub hy: f64,
}

impl Element {
    pub fn area(&self) -> f64 {
        self.hz * self.hy
    }
    pub fn center(&self) -> (f64, f64) {
        (self.z0 + 0.5 * self.hz, self.y0 + 0.5 * self.hy)
    }
}

/// Uniform grid with `n_z × n_y` elements of size `dz × dy`.
pub fn build_mesh_2d(n_z: usize, n_y: usize, dz: f64, dy: f64) -> Result<Mesh2D, MeshError> {
    for (axis, n) in [("z", n_z), ("y", n_y)] {
        if n < 2 {
            return Err(MeshError::TooFewElements { axis, min: 2, got: n });
        }
    }
    for (axis, h) in [("z", dz), ("y", dy)] {
        if !(h.is_finite() && h > 0.0) {
            return Err(MeshError::BadSize { axis, got: h });
        }
    }
    Mesh2D::from_coordinates(
        (0..=n_z).map(|i| i as f64 * dz).collect(),
        (0..=n_y).map(|j| j as f64 * dy).collect(),
    )
}

impl Mesh2D {
    /// Grid with arbitrary strictly increasing node coordinates.
    pub fn from_coordinates(z: Vec<f64>, y: Vec<f64>) -> Result<Self, MeshError> {
        for (axis, c) in [("z", &z), ("y", &y)] {
            if c.len() < 3 {
                return Err(MeshError::TooFewElements { axis, min: 2, got: c.len().saturating_sub(1) });
            }
            if c.iter().any(|v| !v.is_finite()) || c.windows(2).any(|w| w[1] <= w[0]) {
                return Err(MeshError::NotIncreasing(axis));
            }
        }
        Ok(Self { z, y })
    }

    pub fn n_z(&self) -> usize {
        self.z.len() - 1
    }
    pub fn n_y(&self) -> usize {
        self.y.len() - 1
    }
    pub fn z_coords(&self) -> &[f64] {
        &self.z
    }
    pub fn y_coords(&self) -> &[f64] {
        &self.y
    }
    pub fn dz(&self, iz: usize) -> f64 {
        self.z[iz + 1] - self.z[iz]
    }
    pub fn dy(&self, iy: usize) -> f64 {
        self.y[iy + 1] - self.y[iy]
    }

    pub fn n_nodes(&self) -> usize {
        self.z.len() * self.y.len()
    }
    pub fn n_y_edges(&self) -> usize {
        self.z.len() * self.n_y()
    }
    pub fn n_z_edges(&self) -> usize {
        self.n_z() * self.y.len()
    }
    pub fn n_elems(&self) -> usize {
        self.n_z() * self.n_y()
    }

    pub fn node(&self, iz: usize, iy: usize) -> usize {
        iz * self.y.len() + iy
    }
    pub fn y_edge(&self, iz: usize, iy: usize) -> usize {
        iz * self.n_y() + iy
    }
    pub fn z_edge(&self, iz: usize, iy: usize) -> usize {
        iz * self.y.len() + iy
    }
    pub fn elem_id(&self, iz: usize, iy: usize) -> usize {
        iz * self.n_y() + iy
    }

    pub fn node_index(&self, id: usize) -> (usize, usize) {
        (id / self.y.len(), id % self.y.len())
    }
    pub fn node_coords(&self, id: usize) -> (f64, f64) {
        let (iz, iy) = self.node_index(id);
        (self.z[iz], self.y[iy])
    }
    /// End nodes of a y-edge, in the direction of the edge.
    pub fn y_edge_nodes(&self, id: usize) -> (usize, usize) {
        let (iz, iy) = (id / self.n_y(), id % self.n_y());
        (self.node(iz, iy), self.node(iz, iy + 1))
    }
    /// End nodes of a z-edge, in the direction of the edge.
    pub fn z_edge_nodes(&self, id: usize) -> (usize, usize) {
        let (iz, iy) = (id / self.y.len(), id % self.y.len());
        (self.node(iz, iy), self.node(iz + 1, iy))
    }

    pub fn element(&self, iz: usize, iy: usize) -> Element {
        Element {
            iz,
            iy,
            nodes: [
                self.node(iz, iy),
                self.node(iz + 1, iy),
                self.node(iz, iy + 1),
                self.node(iz + 1, iy + 1),
            ],
            y_edges: [self.y_edge(iz, iy), self.y_edge(iz + 1, iy)],
            z_edges: [self.z_edge(iz, iy), self.z_edge(iz, iy + 1)],
            z0: self.z[iz],
            y0: self.y[iy],
            hz: self.dz(iz),
            hy: self.dy(iy),
        }
    }

    /// Elements in id order (z-major).
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n_z()).flat_map(move |iz| (0..self.n_y()).map(move |iy| self.element(iz, iy)))
    }

    /// Nodes and edges of the 3×3 node patch centred on an interior node,
    /// numbered node `a + 3b` for z-offset `a` and y-offset `b`, edges
    /// `e0 … e11` in the local convention of the difference equations.
    pub fn patch(&self, iz: usize, iy: usize) -> Option<([usize; 9], [usize; 12])> {
        if iz == 0 || iy == 0 || iz >= self.n_z() || iy >= self.n_y() {
            return None;
        }
        let mut nodes = [0; 9];
        for b in 0..3 {
            for a in 0..3 {
                nodes[a + 3 * b] = self.node(iz + a - 1, iy + b - 1);
            }
        }
        let (zi, yi) = (iz - 1, iy - 1);
        let edges = [
            self.z_edge(zi, yi),         // e0: 0-1
            self.z_edge(zi, yi + 1),     // e1: 3-4
            self.y_edge(zi, yi),         // e2: 0-3
            self.y_edge(zi + 1, yi),     // e3: 1-4
            self.z_edge(zi + 1, yi),     // e4: 1-2
            self.z_edge(zi + 1, yi + 1), // e5: 4-5
            self.y_edge(zi + 2, yi),     // e6: 2-5
            self.z_edge(zi, yi + 2),     // e7: 6-7
            self.y_edge(zi, yi + 1),     // e8: 3-6
            self.y_edge(zi + 1, yi + 1), // e9: 4-7
            self.z_edge(zi + 1, yi + 2), // e10: 7-8
            self.y_edge(zi + 2, yi + 1), // e11: 5-8
        ];
        Some((nodes, edges))
    }

    /// y-edges incident to a node: below and above it.
    pub fn node_y_edges(&self, node: usize) -> [Option<usize>; 2] {
        let (iz, iy) = self.node_index(node);
        [
            (iy > 0).then(|| self.y_edge(iz, iy - 1)),
            (iy < self.n_y()).then(|| self.y_edge(iz, iy)),
        ]
    }

    /// z-edges incident to a node: upstream and downstream of it.
    pub fn node_z_edges(&self, node: usize) -> [Option<usize>; 2] {
        let (iz, iy) = self.node_index(node);
        [
            (iz > 0).then(|| self.z_edge(iz - 1, iy)),
            (iz < self.n_z()).then(|| self.z_edge(iz, iy)),
        ]
    }

    /// Plain-text listing of nodes, edges and elements.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# mesh {} x {} elements", self.n_z(), self.n_y());
        let _ = writeln!(s, "# nodes: id iz iy z y");
        for id in 0..self.n_nodes() {
            let (iz, iy) = self.node_index(id);
            let _ = writeln!(s, "node {id} {iz} {iy} {:.9e} {:.9e}", self.z[iz], self.y[iy]);
        }
        let _ = writeln!(s, "# y-edges: id from to");
        for id in 0..self.n_y_edges() {
            let (a, b) = self.y_edge_nodes(id);
            let _ = writeln!(s, "yedge {id} {a} {b}");
        }
        let _ = writeln!(s, "# z-edges: id from to");
        for id in 0..self.n_z_edges() {
            let (a, b) = self.z_edge_nodes(id);
            let _ = writeln!(s, "zedge {id} {a} {b}");
        }
        let _ = writeln!(s, "# elements: id nodes y-edges z-edges");
        for e in self.elements() {
            let _ = writeln!(
                s,
                "elem {} {} {} {} {} {} {} {} {}",
                self.elem_id(e.iz, e.iy),
                e.nodes[0],
                e.nodes[1],
                e.nodes[2],
                e.nodes[3],
                e.y_edges[0],
                e.y_edges[1],
                e.z_edges[0],
                e.z_edges[1]
            );
        }
        s
    }
}

fn mean_of(vals: &[f64], ids: [Option<usize>; 2]) -> f64 {
    let (sum, n) = ids
        .iter()
        .flatten()
        .fold((0.0, 0usize), |(s, n), &i| (s + vals[i], n + 1));
    sum / n as f64
}

/// Per-node averages `(A_y, A_z)` of the incident edge values of each
/// orientation. Boundary nodes use their single incident edge.
pub fn node_equivalent(
    mesh: &Mesh2D,
    y_edge_values: &[f64],
    z_edge_values: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), MeshError> {
    if y_edge_values.len() != mesh.n_y_edges() {
        return Err(MeshError::LengthMismatch { expected: mesh.n_y_edges(), got: y_edge_values.len() });
    }
    if z_edge_values.len() != mesh.n_z_edges() {
        return Err(MeshError::LengthMismatch { expected: mesh.n_z_edges(), got: z_edge_values.len() });
    }
    let ay = (0..mesh.n_nodes())
        .map(|n| mean_of(y_edge_values, mesh.node_y_edges(n)))
        .collect();
    let az = (0..mesh.n_nodes())
        .map(|n| mean_of(z_edge_values, mesh.node_z_edges(n)))
        .collect();
    Ok((ay, az))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let m = build_mesh_2d(2, 2, 1.0, 1.0).unwrap();
        assert_eq!((m.n_nodes(), m.n_y_edges(), m.n_z_edges()), (9, 6, 6));
        let m = build_mesh_2d(3, 2, 1.0, 1.0).unwrap();
        assert_eq!((m.n_nodes(), m.n_y_edges(), m.n_z_edges()), (12, 8, 9));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(build_mesh_2d(1, 2, 1.0, 1.0).is_err());
        assert!(build_mesh_2d(2, 2, 0.0, 1.0).is_err());
        assert!(build_mesh_2d(2, 2, 1.0, -1.0).is_err());
        assert!(Mesh2D::from_coordinates(vec![0.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn patch_matches_local_numbering() {
        let m = build_mesh_2d(4, 4, 1.0, 1.0).unwrap();
        let (nodes, edges) = m.patch(2, 2).unwrap();
        let ends = |e: usize, is_y: bool| if is_y { m.y_edge_nodes(e) } else { m.z_edge_nodes(e) };
        let expect: [(usize, usize, bool); 12] = [
            (0, 1, false),
            (3, 4, false),
            (0, 3, true),
            (1, 4, true),
            (1, 2, false),
            (4, 5, false),
            (2, 5, true),
            (6, 7, false),
            (3, 6, true),
            (4, 7, true),
            (7, 8, false),
            (5, 8, true),
        ];
        for (k, &(a, b, is_y)) in expect.iter().enumerate() {
            assert_eq!(ends(edges[k], is_y), (nodes[a], nodes[b]), "edge e{k}");
        }
        let centre = nodes[4];
        assert_eq!(m.node_y_edges(centre), [Some(edges[3]), Some(edges[9])]);
        assert_eq!(m.node_z_edges(centre), [Some(edges[1]), Some(edges[5])]);
        assert!(m.patch(0, 2).is_none());
    }

    #[test]
    fn interior_y_edges_shared_by_two_elements() {
        let m = build_mesh_2d(4, 3, 1.0, 1.0).unwrap();
        let mut count = vec![0; m.n_y_edges()];
        for e in m.elements() {
            for &k in &e.y_edges {
                count[k] += 1;
            }
        }
        for (id, c) in count.iter().enumerate() {
            let (a, _) = m.y_edge_nodes(id);
            let (iz, _) = m.node_index(a);
            let expected = if iz == 0 || iz == m.n_z() { 1 } else { 2 };
            assert_eq!(*c, expected);
        }
    }

    #[test]
    fn node_equivalent_examples() {
        let m = build_mesh_2d(4, 4, 1.0, 1.0).unwrap();
        let (ay, az) = node_equivalent(&m, &vec![2.5; m.n_y_edges()], &vec![2.5; m.n_z_edges()]).unwrap();
        assert!(ay.iter().chain(&az).all(|&v| v == 2.5));

        // Successive y-edges along each y-line alternate in sign.
        let alt: Vec<f64> = (0..m.n_y_edges())
            .map(|id| if (id % m.n_y()) % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let (ay, _) = node_equivalent(&m, &alt, &vec![0.0; m.n_z_edges()]).unwrap();
        for n in 0..m.n_nodes() {
            let (_, iy) = m.node_index(n);
            if iy > 0 && iy < m.n_y() {
                assert_eq!(ay[n], 0.0);
            }
        }

        let mut yv = vec![0.0; m.n_y_edges()];
        yv[m.y_edge(2, 1)] = 2.0;
        yv[m.y_edge(2, 2)] = 4.0;
        let (ay, _) = node_equivalent(&m, &yv, &vec![0.0; m.n_z_edges()]).unwrap();
        assert_eq!(ay[m.node(2, 2)], 3.0);
        assert!(node_equivalent(&m, &yv[1..], &vec![0.0; m.n_z_edges()]).is_err());
    }

    #[test]
    fn dump_lists_everything() {
        let m = build_mesh_2d(2, 2, 1.0, 0.5).unwrap();
        let d = m.dump();
        assert_eq!(d.lines().filter(|l| l.starts_with("node ")).count(), 9);
        assert_eq!(d.lines().filter(|l| l.starts_with("yedge ")).count(), 6);
        assert_eq!(d.lines().filter(|l| l.starts_with("elem ")).count(), 4);
    }
}
