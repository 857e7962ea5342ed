use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::uni::rational_to_f64;
use super::{BiPoly, PolyError, Rational, UniPoly};

/// Operations a coefficient polynomial needs inside a [`RationalTf`].
pub trait TfPoly: Clone + PartialEq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Coefficient used to normalize the polynomial to leading coefficient one.
    fn normalizer(&self) -> Option<Rational>;
    /// Removes common factors of `num` and `den`.
    fn cancel(num: &Self, den: &Self) -> (Self, Self);
}

impl TfPoly for UniPoly {
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        UniPoly::scale(self, c)
    }
    fn normalizer(&self) -> Option<Rational> {
        self.leading().cloned()
    }
    fn cancel(num: &Self, den: &Self) -> (Self, Self) {
        let g = UniPoly::gcd(num, den);
        if g.degree().unwrap_or(0) == 0 {
            return (num.clone(), den.clone());
        }
        (
            num.exact_div(&g).expect("gcd divides"),
            den.exact_div(&g).expect("gcd divides"),
        )
    }
}

impl TfPoly for BiPoly {
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        BiPoly::scale(self, c)
    }
    fn normalizer(&self) -> Option<Rational> {
        self.leading_coeff().cloned()
    }
    fn cancel(num: &Self, den: &Self) -> (Self, Self) {
        BiPoly::cancel_contents(num, den)
    }
}

/// Symbolic scalar factors carried beside the exact prefactor: `Δz^dz · Pe^pe`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Units {
    pub dz: i32,
    pub pe: i32,
}

impl Units {
    pub const NONE: Units = Units { dz: 0, pe: 0 };
    pub const DZ: Units = Units { dz: 1, pe: 0 };

    pub fn times(self, o: Units) -> Units {
        Units { dz: self.dz + o.dz, pe: self.pe + o.pe }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, k) in [("Pe", self.pe), ("dz", self.dz)] {
            match k {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Transfer function `scale · units · num / den` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTf<P: TfPoly> {
    num: P,
    den: P,
    scale: Rational,
    units: Units,
}

impl<P: TfPoly> RationalTf<P> {
    pub fn new(num: P, den: P, scale: Rational, units: Units) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self { num, den, scale, units })
    }

    pub fn num(&self) -> &P {
        &self.num
    }
    pub fn den(&self) -> &P {
        &self.den
    }
    pub fn scale(&self) -> &Rational {
        &self.scale
    }
    pub fn units(&self) -> Units {
        self.units
    }

    /// Moves the leading coefficients of numerator and denominator into the
    /// scalar prefactor, leaving both with leading coefficient one.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        if out.num.is_zero() {
            out.scale = Rational::zero();
            out.den = out.den.scale(&out.den.normalizer().expect("nonzero").recip());
            return out;
        }
        let ln = out.num.normalizer().expect("nonzero");
        let ld = out.den.normalizer().expect("nonzero");
        out.num = out.num.scale(&ln.recip());
        out.den = out.den.scale(&ld.recip());
        out.scale = &out.scale * &ln / &ld;
        out
    }

    /// Cancels common factors and normalizes. Idempotent.
    pub fn simplify(&self) -> Self {
        let (n, d) = P::cancel(&self.num, &self.den);
        Self { num: n, den: d, scale: self.scale.clone(), units: self.units }.normalized()
    }

    /// Product without cancellation.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            scale: &self.scale * &other.scale,
            units: self.units.times(other.units),
        }
    }

    /// Exact equality as rational functions (cross-multiplication).
    pub fn same_function(&self, other: &Self) -> bool {
        self.units == other.units
            && self.num.mul(&other.den).scale(&self.scale)
                == other.num.mul(&self.den).scale(&other.scale)
    }

    pub fn display(&self) -> String {
        format!(
            "({})*{} * ({}) / ({})",
            self.scale, self.units, self.num, self.den
        )
    }
}

impl RationalTf<UniPoly> {
    /// Numeric value at `z`, with the symbolic factors substituted.
    pub fn eval(&self, z: Complex64, dz: f64, pe: f64) -> Complex64 {
        let s = rational_to_f64(&self.scale) * dz.powi(self.units.dz) * pe.powi(self.units.pe);
        self.num.eval_c64(z) / self.den.eval_c64(z) * s
    }
}

impl RationalTf<BiPoly> {
    pub fn eval(&self, zn: Complex64, zm: Complex64, dz: f64, pe: f64) -> Complex64 {
        let s = rational_to_f64(&self.scale) * dz.powi(self.units.dz) * pe.powi(self.units.pe);
        self.num.eval_c64(&[zn, zm]) / self.den.eval_c64(&[zn, zm]) * s
    }
}

impl<P: TfPoly> fmt::Display for RationalTf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Shorthand for a unit prefactor with no symbolic factors.
pub fn unit_tf<P: TfPoly>(num: P, den: P) -> Result<RationalTf<P>, PolyError> {
    RationalTf::new(num, den, Rational::one(), Units::NONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn cancels_stabilized_limit() {
        let zp1 = UniPoly::from_ints(&[1, 1]);
        let zm1 = UniPoly::from_ints(&[-1, 1]);
        let tf = RationalTf::new(zp1.pow(2), &zm1 * &zp1, rat(1, 2), Units::DZ).unwrap();
        let s = tf.simplify();
        assert_eq!(s.num(), &zp1);
        assert_eq!(s.den(), &zm1);
        assert_eq!(s.scale(), &rat(1, 2));
        assert!(s.same_function(&tf));
    }

    #[test]
    fn self_ratio_is_one() {
        let zm1 = UniPoly::from_ints(&[-1, 1]);
        let s = unit_tf(zm1.clone(), zm1).unwrap().simplify();
        assert_eq!(s.num(), &UniPoly::one());
        assert_eq!(s.den(), &UniPoly::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            unit_tf(UniPoly::one(), UniPoly::zero()).unwrap_err(),
            PolyError::ZeroDenominator
        );
    }

    #[test]
    fn bivariate_cancellation_at_minus_one() {
        let zn = |c: &[i64]| BiPoly::from_uni(&UniPoly::from_ints(c), 0);
        let zm = |c: &[i64]| BiPoly::from_uni(&UniPoly::from_ints(c), 1);
        let f1 = zm(&[1, -2, -3]);
        let f2 = zm(&[-1, 2, 1]);
        let tf = unit_tf(&zn(&[1, 2, 1]) * &f1, &zn(&[1, 0, -1]) * &f2).unwrap();
        let s = tf.simplify();
        let expect = unit_tf(&zn(&[1, 1]) * &f1, &zn(&[1, -1]) * &f2).unwrap();
        assert!(s.same_function(&expect));
        assert_eq!(s.num().degree_in(0), Some(1));
        assert_eq!(s.den().degree_in(0), Some(1));
    }
}
