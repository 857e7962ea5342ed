use super::shape::GAUSS_2;
use super::{FemError, SourceField};
use crate::mesh::Element;

/// Mean of the four corner samples of an element.
pub fn elemental_average_2d(src: &SourceField, el: &Element) -> f64 {
    0.25 * el.nodes.iter().map(|&n| src.samples[n]).sum::<f64>()
}

/// Per-element field from edge values:
/// `B_c = Σ_e B^e v^e_c / Σ_e |v^e_c|` for each Cartesian component `c`.
/// A component is `None` when no edge has a nonzero projection on it.
pub fn elemental_average_3d(
    edge_fields: &[f64],
    edge_dirs: &[[f64; 3]],
) -> Result<[Option<f64>; 3], FemError> {
    if edge_fields.len() != edge_dirs.len() {
        return Err(FemError::EdgeCount { expected: edge_dirs.len(), got: edge_fields.len() });
    }
    Ok(std::array::from_fn(|c| {
        let den: f64 = edge_dirs.iter().map(|v| v[c].abs()).sum();
        (den > 0.0).then(|| {
            edge_fields
                .iter()
                .zip(edge_dirs)
                .map(|(b, v)| b * v[c])
                .sum::<f64>()
                / den
        })
    }))
}

/// Field at a quadrature point from edge values: `B_g = Σ_e B^e M^e_g`.
pub fn gauss_point_source(edge_fields: &[f64], shape_values: &[[f64; 3]]) -> Result<[f64; 3], FemError> {
    if edge_fields.len() != shape_values.len() {
        return Err(FemError::EdgeCount { expected: shape_values.len(), got: edge_fields.len() });
    }
    let mut b = [0.0; 3];
    for (be, m) in edge_fields.iter().zip(shape_values) {
        for c in 0..3 {
            b[c] += be * m[c];
        }
    }
    Ok(b)
}

/// Axis-aligned brick `[0,lx] × [0,ly] × [0,lz]` with lowest-order edge
/// functions scaled to unit tangential value on their own edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hexahedron {
    pub size: [f64; 3],
}

impl Hexahedron {
    /// Edge directions: four edges along x, then four along y, then four along z.
    pub fn edge_dirs(&self) -> [[f64; 3]; 12] {
        std::array::from_fn(|e| {
            let mut v = [0.0; 3];
            v[e / 4] = 1.0;
            v
        })
    }

    /// Values of the 12 edge functions at reference point `r ∈ [-1,1]³`.
    /// Edge `4a + k` runs along axis `a`; bit 0 of `k` selects the low or
    /// high side of the first transverse axis, bit 1 that of the second.
    pub fn edge_shape(&self, r: [f64; 3]) -> [[f64; 3]; 12] {
        std::array::from_fn(|e| {
            let (axis, k) = (e / 4, e % 4);
            let (t1, t2) = ((axis + 1) % 3, (axis + 2) % 3);
            let s1 = if k & 1 == 0 { 1.0 - r[t1] } else { 1.0 + r[t1] };
            let s2 = if k & 2 == 0 { 1.0 - r[t2] } else { 1.0 + r[t2] };
            let mut v = [0.0; 3];
            v[axis] = 0.25 * s1 * s2;
            v
        })
    }

    /// The eight points of the 2×2×2 Gauss rule in reference coordinates.
    pub fn gauss_points(&self) -> Vec<[f64; 3]> {
        let mut pts = Vec::with_capacity(8);
        for &a in &GAUSS_2 {
            for &b in &GAUSS_2 {
                for &c in &GAUSS_2 {
                    pts.push([a, b, c]);
                }
            }
        }
        pts
    }

    /// Edge values `B·v^e` of a uniform field.
    pub fn project_uniform(&self, b: [f64; 3]) -> [f64; 12] {
        let dirs = self.edge_dirs();
        std::array::from_fn(|e| (0..3).map(|c| b[c] * dirs[e][c]).sum())
    }
}
