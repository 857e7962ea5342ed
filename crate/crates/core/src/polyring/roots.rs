use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{PolyError, UniPoly};

/// A root value together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootMult {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All complex roots of `p`, repeated according to multiplicity.
pub fn uni_roots(p: &UniPoly) -> Result<Vec<Complex64>, PolyError> {
    Ok(roots_with_multiplicity(p)?
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect())
}

/// Distinct roots with exact multiplicities.
///
/// Multiplicities come from an exact square-free decomposition, so a double
/// root is reported once with multiplicity two rather than as two nearby
/// floating-point values. Roots are sorted by real part, then imaginary part.
pub fn roots_with_multiplicity(p: &UniPoly) -> Result<Vec<RootMult>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in p.square_free() {
        for value in simple_roots(&factor)? {
            out.push(RootMult { value, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(out)
}

/// Roots of a square-free polynomial.
fn simple_roots(p: &UniPoly) -> Result<Vec<Complex64>, PolyError> {
    let c = p.monic().to_f64();
    match c.len() {
        0 | 1 => Ok(Vec::new()),
        2 => Ok(vec![Complex64::new(-c[0], 0.0)]),
        3 => Ok(quadratic(c[1], c[0]).to_vec()),
        _ => companion_roots(p, &c),
    }
}

/// Roots of `z^2 + b z + c` without cancellation in the smaller root.
fn quadratic(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b + b.signum() * s);
        if q == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let s = (-disc).sqrt();
        [Complex64::new(-0.5 * b, -0.5 * s), Complex64::new(-0.5 * b, 0.5 * s)]
    }
}

fn companion_roots(p: &UniPoly, monic: &[f64]) -> Result<Vec<Complex64>, PolyError> {
    let n = monic.len() - 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    let eig = m.complex_eigenvalues();
    let mut roots: Vec<Complex64> = eig.iter().map(|z| Complex64::new(z.re, z.im)).collect();
    let dp = p.derivative();
    for r in &mut roots {
        *r = polish(p, &dp, *r);
    }
    let scale = p.leading().map(super::uni::rational_to_f64).unwrap_or(1.0).abs();
    let worst = roots
        .iter()
        .map(|&r| p.eval_c64(r).norm() / scale)
        .fold(0.0, f64::max);
    if !worst.is_finite() || worst > 1e-6 {
        return Err(PolyError::RootFinding(format!("residual {worst:e}")));
    }
    Ok(roots)
}

fn polish(p: &UniPoly, dp: &UniPoly, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let d = dp.eval_c64(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval_c64(z) / d;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Rebuilds `lc · Π (Z - r)` in floating point, lowest power first.
pub fn reconstruct(lc: f64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(lc, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn roots_of_z2_4z_1() {
        let r = uni_roots(&UniPoly::from_ints(&[1, 4, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(close(r[0], -2.0 - 3f64.sqrt(), 0.0));
        assert!(close(r[1], -2.0 + 3f64.sqrt(), 0.0));
    }

    #[test]
    fn repeated_root() {
        let r = uni_roots(&UniPoly::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!(r, vec![Complex64::new(-1.0, 0.0); 2]);
        let rm = roots_with_multiplicity(&UniPoly::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!(rm.len(), 1);
        assert_eq!(rm[0].multiplicity, 2);
    }

    #[test]
    fn plus_minus_one() {
        let r = uni_roots(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert!(close(r[0], -1.0, 0.0) && close(r[1], 1.0, 0.0));
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(uni_roots(&UniPoly::zero()), Err(PolyError::ZeroPolynomial));
        assert!(uni_roots(&UniPoly::from_ints(&[3])).unwrap().is_empty());
    }

    #[test]
    fn complex_pair_and_quartic() {
        let r = uni_roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(close(r[0], 0.0, -1.0) && close(r[1], 0.0, 1.0));
        // (Z^2 - 2)(Z^2 + Z + 1)
        let p = &UniPoly::from_ints(&[-2, 0, 1]) * &UniPoly::from_ints(&[1, 1, 1]);
        let r = uni_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert!(p.eval_c64(z).norm() < 1e-10);
        }
    }
}
