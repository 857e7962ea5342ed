use super::shape::{shape_functions, GAUSS_2};
use super::{MaterialParams, SourceMode};

/// Element integrals on an `hz × hy` rectangle.
///
/// Edge functions are scaled so that their tangential value on the own edge
/// is one; the edge unknowns are therefore tangential values in Wb/m.
/// Index order: nodes as in [`super::RefShape`], y-edges `[z-, z+]`,
/// z-edges `[y-, y+]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementMatrices {
    /// `∫∇N_a·∇N_b`
    pub k_phi: [[f64; 4]; 4],
    /// `∫∇My_k·∇My_l`
    pub k_y: [[f64; 2]; 2],
    /// `∫∇Mz_k·∇Mz_l`
    pub k_z: [[f64; 2]; 2],
    /// `∫My_k ∂zMy_l`
    pub c_yy: [[f64; 2]; 2],
    /// `∫My_k ∂yMz_l`
    pub c_yz: [[f64; 2]; 2],
    /// `∫∂yN_a ∂zMy_l`
    pub g_phi_y: [[f64; 2]; 4],
    /// `∫∂yN_a ∂yMz_l`
    pub g_phi_z: [[f64; 2]; 4],
    /// `∫My_k ∂yN_b`
    pub d_y_phi: [[f64; 4]; 2],
    /// `∫Mz_k ∂zN_b`
    pub d_z_phi: [[f64; 4]; 2],
    /// `∫∂yN_a N_b`, source of the φ rows for interpolated samples.
    pub s_phi: [[f64; 4]; 4],
    /// `∫My_k N_b`, source of the y-edge rows for interpolated samples.
    pub s_y: [[f64; 4]; 2],
    /// `∫∂yN_a`, source of the φ rows for a constant field.
    pub s_phi_avg: [f64; 4],
    /// `∫My_k`, source of the y-edge rows for a constant field.
    pub s_y_avg: [f64; 2],
}

/// Integrates all element blocks with the 2×2 Gauss rule.
pub fn element_matrices(hz: f64, hy: f64) -> ElementMatrices {
    let mut e = ElementMatrices {
        k_phi: [[0.0; 4]; 4],
        k_y: [[0.0; 2]; 2],
        k_z: [[0.0; 2]; 2],
        c_yy: [[0.0; 2]; 2],
        c_yz: [[0.0; 2]; 2],
        g_phi_y: [[0.0; 2]; 4],
        g_phi_z: [[0.0; 2]; 4],
        d_y_phi: [[0.0; 4]; 2],
        d_z_phi: [[0.0; 4]; 2],
        s_phi: [[0.0; 4]; 4],
        s_y: [[0.0; 4]; 2],
        s_phi_avg: [0.0; 4],
        s_y_avg: [0.0; 2],
    };
    let (jz, jy) = (2.0 / hz, 2.0 / hy);
    let w = hz * hy / 4.0;
    for &xi in &GAUSS_2 {
        for &eta in &GAUSS_2 {
            let s = shape_functions(xi, eta);
            let n = s.n;
            let dz_n: [f64; 4] = std::array::from_fn(|a| s.dn[a][0] * jz);
            let dy_n: [f64; 4] = std::array::from_fn(|a| s.dn[a][1] * jy);
            let my = [2.0 * s.m_y[0], 2.0 * s.m_y[1]];
            let dz_my = [-jz / 2.0, jz / 2.0];
            let mz = [2.0 * s.m_z[0], 2.0 * s.m_z[1]];
            let dy_mz = [-jy / 2.0, jy / 2.0];
            for a in 0..4 {
                for b in 0..4 {
                    e.k_phi[a][b] += w * (dz_n[a] * dz_n[b] + dy_n[a] * dy_n[b]);
                    e.s_phi[a][b] += w * dy_n[a] * n[b];
                }
                for l in 0..2 {
                    e.g_phi_y[a][l] += w * dy_n[a] * dz_my[l];
                    e.g_phi_z[a][l] += w * dy_n[a] * dy_mz[l];
                }
                e.s_phi_avg[a] += w * dy_n[a];
            }
            for k in 0..2 {
                for l in 0..2 {
                    e.k_y[k][l] += w * dz_my[k] * dz_my[l];
                    e.k_z[k][l] += w * dy_mz[k] * dy_mz[l];
                    e.c_yy[k][l] += w * my[k] * dz_my[l];
                    e.c_yz[k][l] += w * my[k] * dy_mz[l];
                }
                for b in 0..4 {
                    e.d_y_phi[k][b] += w * my[k] * dy_n[b];
                    e.d_z_phi[k][b] += w * mz[k] * dz_n[b];
                    e.s_y[k][b] += w * my[k] * n[b];
                }
                e.s_y_avg[k] += w * my[k];
            }
        }
    }
    e
}

/// Local 8×8 matrix and load vector in the order
/// `[φ0..φ3, Ay(z-), Ay(z+), Az(y-), Az(y+)]` for corner samples `b`.
pub fn local_system(
    e: &ElementMatrices,
    mat: &MaterialParams,
    b: &[f64; 4],
    mode: SourceMode,
) -> ([[f64; 8]; 8], [f64; 8]) {
    let u = mat.u_z;
    let ms = mat.mu * mat.sigma;
    let k = mat.k();
    let mut a = [[0.0; 8]; 8];
    let mut f = [0.0; 8];
    let bbar = 0.25 * b.iter().sum::<f64>();
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = -e.k_phi[i][j];
        }
        for l in 0..2 {
            a[i][4 + l] = -u * e.g_phi_y[i][l];
            a[i][6 + l] = u * e.g_phi_z[i][l];
        }
        let src = match mode {
            SourceMode::GaussPoint => (0..4).map(|j| e.s_phi[i][j] * b[j]).sum(),
            SourceMode::ElementalAverage => e.s_phi_avg[i] * bbar,
        };
        f[i] = -u * src;
    }
    for r in 0..2 {
        for j in 0..4 {
            a[4 + r][j] = ms * e.d_y_phi[r][j];
            a[6 + r][j] = ms * e.d_z_phi[r][j];
        }
        for l in 0..2 {
            a[4 + r][4 + l] = e.k_y[r][l] + k * e.c_yy[r][l];
            a[4 + r][6 + l] = -k * e.c_yz[r][l];
            a[6 + r][6 + l] = e.k_z[r][l];
        }
        let src = match mode {
            SourceMode::GaussPoint => (0..4).map(|j| e.s_y[r][j] * b[j]).sum(),
            SourceMode::ElementalAverage => e.s_y_avg[r] * bbar,
        };
        f[4 + r] = k * src;
    }
    (a, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffusion_blocks_symmetric() {
        let e = element_matrices(0.7, 0.3);
        for a in 0..4 {
            for b in 0..4 {
                assert!((e.k_phi[a][b] - e.k_phi[b][a]).abs() < 1e-14);
            }
        }
        assert_eq!(e.k_y[0][1], e.k_y[1][0]);
        assert_eq!(e.k_z[0][1], e.k_z[1][0]);
    }

    #[test]
    fn convection_annihilates_constants() {
        let e = element_matrices(0.7, 0.3);
        for k in 0..2 {
            assert!((e.c_yy[k][0] + e.c_yy[k][1]).abs() < 1e-15);
            assert!((e.c_yz[k][0] + e.c_yz[k][1]).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_integrals() {
        let (hz, hy) = (0.7, 0.3);
        let e = element_matrices(hz, hy);
        assert!((e.k_y[0][0] - hy / hz).abs() < 1e-14);
        assert!((e.k_z[0][0] - hz / hy).abs() < 1e-14);
        assert!((e.c_yy[0][1] - hy / 2.0).abs() < 1e-14);
        assert!((e.s_y_avg[0] - hz * hy / 2.0).abs() < 1e-15);
        // Interpolating a constant reproduces the constant-field source.
        for k in 0..2 {
            let s: f64 = e.s_y[k].iter().sum();
            assert!((s - e.s_y_avg[k]).abs() < 1e-15);
        }
    }
}
