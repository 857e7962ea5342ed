use super::PostError;
use crate::mesh::Mesh2D;

/// Exact solution of `−A'' + kA' = kB` on a grid for a source `B` that is
/// linear between the grid nodes, with `A(0) = 0` and either `A'(L) = 0`
/// or `A(L) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Exact1D {
    /// `A` at the nodes.
    pub a: Vec<f64>,
    /// Element averages of `b = −A'`.
    pub b_avg: Vec<f64>,
}

/// `(1 − e^{−x}(1 + x))/x`, accurate for small `x`.
fn ramp_weight(x: f64) -> f64 {
    if x < 1e-3 {
        x / 2.0 - x * x / 3.0 + x * x * x / 8.0
    } else {
        (-(-x).exp_m1() - x * (-x).exp()) / x
    }
}

pub fn exact_1d(z: &[f64], b: &[f64], k: f64, outflow_dirichlet: bool) -> Result<Exact1D, PostError> {
    if z.len() < 2 {
        return Err(PostError::TooFewSamples { min: 2, got: z.len() });
    }
    if b.len() != z.len() {
        return Err(PostError::SizeMismatch { expected: z.len(), got: b.len() });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(PostError::InvalidInput(format!("k = {k}")));
    }
    let n = z.len() - 1;
    // w = A' satisfies −w' + kw = kB with w(L) = 0: integrate upstream.
    let mut w = vec![0.0; n + 1];
    for i in (0..n).rev() {
        let x = k * (z[i + 1] - z[i]);
        let e = (-x).exp();
        w[i] = e * w[i + 1] + b[i] * (-(-x).exp_m1()) + (b[i + 1] - b[i]) * ramp_weight(x);
    }
    // ∫w = ∫B + Δw/k over each element.
    let mut w_avg: Vec<f64> = (0..n)
        .map(|i| {
            let h = z[i + 1] - z[i];
            0.5 * (b[i] + b[i + 1]) + (w[i + 1] - w[i]) / (k * h)
        })
        .collect();
    let mut a = vec![0.0; n + 1];
    for i in 0..n {
        a[i + 1] = a[i] + w_avg[i] * (z[i + 1] - z[i]);
    }
    if outflow_dirichlet {
        // Add c(z) = −A(L)(e^{k(z−L)} − e^{−kL})/(1 − e^{−kL}).
        let (z0, l) = (z[0], z[n] - z[0]);
        let a_l = a[n];
        let den = -(-k * l).exp_m1();
        let c = |s: f64| -a_l * ((k * (s - z0 - l)).exp() - (-k * l).exp()) / den;
        for i in 0..n {
            w_avg[i] += (c(z[i + 1]) - c(z[i])) / (z[i + 1] - z[i]);
        }
        for (ai, &zi) in a.iter_mut().zip(z) {
            *ai += c(zi);
        }
    }
    Ok(Exact1D { a, b_avg: w_avg.into_iter().map(|v| -v).collect() })
}

/// Parameters of a graded refinement of a base grid towards a set of kinks.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSpec {
    /// Smallest element length, used at the kinks.
    pub h_min: f64,
    /// Growth of the element length per unit distance from the nearest kink.
    pub growth: f64,
    /// Largest element length.
    pub h_max: f64,
}

/// Refines every interval of `base` so that the local element length follows
/// `min(h_max, h_min + growth·distance to nearest kink)`. Base nodes are kept.
pub fn graded_grid(base: &[f64], kinks: &[f64], spec: &GradedSpec) -> Result<Vec<f64>, PostError> {
    if !(spec.h_min > 0.0 && spec.h_max >= spec.h_min && spec.growth >= 0.0) {
        return Err(PostError::InvalidInput(format!("{spec:?}")));
    }
    if base.len() < 2 || base.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(PostError::InvalidInput("base grid must be increasing".into()));
    }
    let dist = |s: f64| kinks.iter().fold(f64::INFINITY, |d, k| d.min((s - k).abs()));
    let size = |s: f64| (spec.h_min + spec.growth * dist(s)).min(spec.h_max);
    let mut out = vec![base[0]];
    for w in base.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = b - a;
        let near = kinks.iter().fold(f64::INFINITY, |d, &k| {
            d.min(if k < a { a - k } else if k > b { k - b } else { 0.0 })
        });
        if spec.h_min + spec.growth * near >= spec.h_max {
            let m = (len / spec.h_max).ceil().max(1.0) as usize;
            out.extend((1..m).map(|j| a + len * j as f64 / m as f64));
            out.push(b);
            continue;
        }
        // Cumulative density Φ(s) = ∫ds/h by the trapezoid rule.
        let ns = ((8.0 * len / spec.h_min).ceil() as usize).clamp(16, 1 << 16);
        let mut phi = vec![0.0; ns + 1];
        let mut prev = 1.0 / size(a);
        for j in 1..=ns {
            let cur = 1.0 / size(a + len * j as f64 / ns as f64);
            phi[j] = phi[j - 1] + 0.5 * (prev + cur) * len / ns as f64;
            prev = cur;
        }
        let m = phi[ns].ceil().max(1.0) as usize;
        let mut seg = 0;
        for j in 1..m {
            let target = phi[ns] * j as f64 / m as f64;
            while phi[seg + 1] < target {
                seg += 1;
            }
            let t = (target - phi[seg]) / (phi[seg + 1] - phi[seg]);
            out.push(a + len * (seg as f64 + t) / ns as f64);
        }
        out.push(b);
    }
    Ok(out)
}

/// Overlap lengths `(coarse index, fine index, length)` of two 1D partitions.
fn overlaps(fine: &[f64], coarse: &[f64]) -> Result<Vec<(usize, usize, f64)>, PostError> {
    let (lo, hi) = (coarse[0], coarse[coarse.len() - 1]);
    let tol = 1e-9 * (hi - lo).abs().max(1e-300);
    if fine[0] > lo + tol || fine[fine.len() - 1] < hi - tol {
        return Err(PostError::NotCovered { lo, hi });
    }
    let mut out = Vec::new();
    let mut f = 0;
    for c in 0..coarse.len() - 1 {
        let (c0, c1) = (coarse[c], coarse[c + 1]);
        while f + 1 < fine.len() && fine[f + 1] <= c0 {
            f += 1;
        }
        let mut g = f;
        while g + 1 < fine.len() && fine[g] < c1 {
            let len = fine[g + 1].min(c1) - fine[g].max(c0);
            if len > 0.0 {
                out.push((c, g, len));
            }
            g += 1;
        }
    }
    Ok(out)
}

/// Averages a per-element field on the 1D grid `fine` over the elements of `coarse`.
pub fn restrict_1d(fine: &[f64], values: &[f64], coarse: &[f64]) -> Result<Vec<f64>, PostError> {
    if values.len() + 1 != fine.len() {
        return Err(PostError::SizeMismatch { expected: fine.len() - 1, got: values.len() });
    }
    let mut sum = vec![0.0; coarse.len() - 1];
    let mut len = vec![0.0; coarse.len() - 1];
    for (c, f, l) in overlaps(fine, coarse)? {
        sum[c] += values[f] * l;
        len[c] += l;
    }
    Ok(sum.iter().zip(&len).map(|(s, l)| s / l).collect())
}

/// Area-weighted average of a per-element field on `fine` over each element
/// of `coarse`.
pub fn restrict_2d(fine: &Mesh2D, values: &[f64], coarse: &Mesh2D) -> Result<Vec<f64>, PostError> {
    if values.len() != fine.n_elems() {
        return Err(PostError::SizeMismatch { expected: fine.n_elems(), got: values.len() });
    }
    let oz = overlaps(fine.z_coords(), coarse.z_coords())?;
    let oy = overlaps(fine.y_coords(), coarse.y_coords())?;
    let mut sum = vec![0.0; coarse.n_elems()];
    let mut area = vec![0.0; coarse.n_elems()];
    for &(cz, fz, lz) in &oz {
        for &(cy, fy, ly) in &oy {
            let c = coarse.elem_id(cz, cy);
            let a = lz * ly;
            sum[c] += values[fine.elem_id(fz, fy)] * a;
            area[c] += a;
        }
    }
    Ok(sum.iter().zip(&area).map(|(s, a)| s / a).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh_2d;

    #[test]
    fn constant_source_has_constant_field_away_from_outflow() {
        let z: Vec<f64> = (0..=50).map(|i| i as f64 * 0.1).collect();
        let ex = exact_1d(&z, &vec![1.0; 51], 3.0, false).unwrap();
        // w = 1 − e^{−k(L−z)}, so b → −1 upstream.
        let expect_w0 = 1.0 - (-3.0f64 * 5.0).exp();
        assert!((ex.a[1] / 0.1 - expect_w0).abs() < 1e-3);
        assert!((ex.b_avg[0] + 1.0).abs() < 1e-6);
        // Average of w over the last element: 1 − (1 − e^{−kh})/(kh).
        let x = 0.3f64;
        assert!((ex.b_avg[49] + 1.0 - (1.0 - (-x).exp()) / x).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_outflow_returns_to_zero() {
        let z: Vec<f64> = (0..=40).map(|i| i as f64 * 0.05).collect();
        let b: Vec<f64> = z.iter().map(|&s| if s < 1.0 { 1.0 } else { 0.0 }).collect();
        let ex = exact_1d(&z, &b, 2.0, true).unwrap();
        assert!(ex.a[40].abs() < 1e-12);
        assert_eq!(ex.a[0], 0.0);
        // Mean of b over the domain is −(A(L) − A(0))/L = 0.
        let mean: f64 = ex.b_avg.iter().sum::<f64>() / 40.0;
        assert!(mean.abs() < 1e-12);
    }

    #[test]
    fn small_k_matches_series() {
        // For kL ≪ 1 and B = 1: w ≈ k(L − z).
        let z: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let ex = exact_1d(&z, &vec![1.0; 11], 1e-6, false).unwrap();
        assert!((ex.a[10] - 1e-6 * 0.5).abs() < 1e-12);
    }

    #[test]
    fn graded_grid_keeps_base_and_refines_kinks() {
        let base: Vec<f64> = (0..=10).map(|i| i as f64).collect();
        let spec = GradedSpec { h_min: 0.01, growth: 0.2, h_max: 0.5 };
        let g = graded_grid(&base, &[5.0], &spec).unwrap();
        for b in &base {
            assert!(g.iter().any(|x| x == b));
        }
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let at_kink = g.windows(2).find(|w| w[0] == 5.0).unwrap();
        assert!(at_kink[1] - at_kink[0] < 0.02, "{at_kink:?}");
        let max = g.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        assert!(max <= 0.5 + 1e-12);
        let min = g.windows(2).map(|w| w[1] - w[0]).fold(1.0, f64::min);
        assert!(min < 0.03);
    }

    #[test]
    fn restriction_preserves_means() {
        let fine = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0];
        let v = [1.0, 3.0, 2.0, 4.0, 0.0];
        let r = restrict_1d(&fine, &v, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(r, vec![2.0, 2.0]);
        // Non-nested coarse grid.
        let r = restrict_1d(&fine, &v, &[0.0, 0.75, 2.0]).unwrap();
        assert!((r[0] - (0.25 + 0.75 + 0.5) / 0.75).abs() < 1e-14);
        assert!(restrict_1d(&fine, &v, &[0.0, 3.0]).is_err());
        let f = build_mesh_2d(4, 4, 0.5, 0.5).unwrap();
        let c = build_mesh_2d(2, 2, 1.0, 1.0).unwrap();
        let vals: Vec<f64> = (0..16).map(|i| i as f64).collect();
        let r = restrict_2d(&f, &vals, &c).unwrap();
        let id = |iz, iy| f.elem_id(iz, iy) as f64;
        assert!((r[c.elem_id(0, 0)] - (id(0, 0) + id(1, 0) + id(0, 1) + id(1, 1)) / 4.0).abs() < 1e-14);
    }
}
