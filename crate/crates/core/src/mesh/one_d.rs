use super::MeshError;

/// Uniform grid along z. The reduced 1D problem carries one y-directed edge
/// value per node.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D {
    pub n_elems: usize,
    pub dz: f64,
    pub z: Vec<f64>,
}

pub fn build_mesh_1d(n_elems: usize, dz: f64) -> Result<Mesh1D, MeshError> {
    if n_elems < 2 {
        return Err(MeshError::TooFewElements { axis: "z", min: 2, got: n_elems });
    }
    if !(dz.is_finite() && dz > 0.0) {
        return Err(MeshError::BadSize { axis: "z", got: dz });
    }
    let z = (0..=n_elems).map(|i| i as f64 * dz).collect();
    Ok(Mesh1D { n_elems, dz, z })
}

impl Mesh1D {
    pub fn n_nodes(&self) -> usize {
        self.n_elems + 1
    }

    pub fn length(&self) -> f64 {
        self.n_elems as f64 * self.dz
    }

    pub fn element_center(&self, e: usize) -> f64 {
        0.5 * (self.z[e] + self.z[e + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_nodes() {
        let m = build_mesh_1d(4, 0.5).unwrap();
        assert_eq!(m.z, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(m.length(), 2.0);
        assert!(build_mesh_1d(1, 1.0).is_err());
        assert!(build_mesh_1d(3, -1.0).is_err());
    }
}
