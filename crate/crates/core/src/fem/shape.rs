/// Two-point Gauss abscissae on `[-1, 1]`; both weights are one.
pub const GAUSS_2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];

/// Reference-square shape functions at a point `(ξ, η)`, ξ along z and η along y.
///
/// Corners are ordered `(-1,-1), (1,-1), (-1,1), (1,1)`. Edge functions are
/// normalized to unit circulation along their own edge (length 2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefShape {
    pub n: [f64; 4],
    /// `[∂/∂ξ, ∂/∂η]` of each nodal function.
    pub dn: [[f64; 2]; 4],
    /// η-component of the y-edge functions on `ξ = -1` and `ξ = 1`.
    pub m_y: [f64; 2],
    /// ξ-component of the z-edge functions on `η = -1` and `η = 1`.
    pub m_z: [f64; 2],
    /// Scalar curl `∂M_η/∂ξ − ∂M_ξ/∂η` of the y-edge functions.
    pub curl_y: [f64; 2],
    /// Scalar curl of the z-edge functions.
    pub curl_z: [f64; 2],
}

const CORNERS: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0], [1.0, 1.0]];

pub fn shape_functions(xi: f64, eta: f64) -> RefShape {
    let mut n = [0.0; 4];
    let mut dn = [[0.0; 2]; 4];
    for (i, [a, b]) in CORNERS.iter().enumerate() {
        n[i] = 0.25 * (1.0 + a * xi) * (1.0 + b * eta);
        dn[i] = [0.25 * a * (1.0 + b * eta), 0.25 * b * (1.0 + a * xi)];
    }
    RefShape {
        n,
        dn,
        m_y: [0.25 * (1.0 - xi), 0.25 * (1.0 + xi)],
        m_z: [0.25 * (1.0 - eta), 0.25 * (1.0 + eta)],
        curl_y: [-0.25, 0.25],
        curl_z: [0.25, -0.25],
    }
}
