use super::SolverError;
use crate::fem::CsrMatrix;

/// LU factorization with row partial pivoting of a band matrix.
///
/// Row `i` of the working array holds columns `i − kl ..= i + kl + ku`; the
/// extra `kl` upper diagonals absorb the fill created by row interchanges.
#[derive(Clone, Debug)]
pub struct BandLu {
    n: usize,
    kl: usize,
    /// Stored width per row, `2·kl + ku + 1`.
    w: usize,
    /// Row-major band, `lu[i*w + (j + kl − i)]` is entry `(i, j)`.
    lu: Vec<f64>,
    /// Row interchanged with row `k` at step `k`.
    piv: Vec<usize>,
}

impl BandLu {
    pub fn factor(a: &CsrMatrix) -> Result<Self, SolverError> {
        let n = a.n();
        let (kl, ku) = a.bandwidths();
        let w = 2 * kl + ku + 1;
        let mut lu = vec![0.0; n * w];
        for i in 0..n {
            let (cols, vals) = a.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                lu[i * w + j + kl - i] += v;
            }
        }
        let mut piv = vec![0; n];
        let scale = lu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tiny = scale * f64::EPSILON * 1e-3;
        for k in 0..n {
            // Column k in rows k..=k+kl sits at offset k + kl − i.
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = lu[k * w + kl].abs();
            for i in k + 1..=last {
                let v = lu[i * w + k + kl - i].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > tiny) {
                return Err(SolverError::Singular(k));
            }
            piv[k] = p;
            // Columns k ..= k + kl + ku of rows k and p.
            let jmax = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=jmax {
                    lu.swap(k * w + j + kl - k, p * w + j + kl - p);
                }
            }
            let d = lu[k * w + kl];
            for i in k + 1..=last {
                let l = lu[i * w + k + kl - i] / d;
                lu[i * w + k + kl - i] = l;
                if l == 0.0 {
                    continue;
                }
                let (pivot_row, row) = {
                    let (lo, hi) = lu.split_at_mut(i * w);
                    (&lo[k * w..k * w + w], &mut hi[..w])
                };
                // Entry (k, j) at j + kl − k, entry (i, j) at j + kl − i.
                for j in k + 1..=jmax {
                    row[j + kl - i] -= l * pivot_row[j + kl - k];
                }
            }
        }
        Ok(Self { n, kl, w, lu, piv })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, kl, w) = (self.n, self.kl, self.w);
        let mut x = b.to_vec();
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                x.swap(k, p);
            }
            let xk = x[k];
            if xk == 0.0 {
                continue;
            }
            for i in k + 1..=(k + kl).min(n.saturating_sub(1)) {
                x[i] -= self.lu[i * w + k + kl - i] * xk;
            }
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * w..i * w + w];
            let jmax = (i + w - 1 - kl).min(n - 1);
            let mut s = x[i];
            for j in i + 1..=jmax {
                s -= row[j + kl - i] * x[j];
            }
            x[i] = s / row[kl];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_dense_solution() {
        // Nonsymmetric pentadiagonal matrix with small diagonal entries.
        let n = 12;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 0.01 * (i as f64 + 1.0)));
            if i + 1 < n {
                t.push((i, i + 1, 1.0 + 0.1 * i as f64));
                t.push((i + 1, i, -2.0));
            }
            if i + 2 < n {
                t.push((i, i + 2, 0.3));
            }
        }
        let a = CsrMatrix::from_triplets(n, &t);
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        let b = a.mul_vec(&x_true);
        let x = BandLu::factor(&a).unwrap().solve(&b);
        for (u, v) in x.iter().zip(&x_true) {
            assert!((u - v).abs() < 1e-12, "{u} vs {v}");
        }
    }
}
