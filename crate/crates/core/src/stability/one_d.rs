use num_traits::{One, Signed, ToPrimitive};

use super::{PoleZeroReport, Scheme, StabilityError};
use crate::polyring::{rat, BiPoly, Rational, RationalTf, UniPoly, Units};

/// Three-point difference equation
/// `l0·A[n-1] + l1·A[n] + l2·A[n+1] = Pe·Δz·(r0·B[n-1] + r1·B[n] + r2·B[n+1])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil1D {
    pub scheme: Scheme,
    /// Left-hand coefficients as polynomials in Pe.
    lhs: [UniPoly; 3],
    rhs: [Rational; 3],
}

pub fn build_stencil_1d(scheme: Scheme) -> Stencil1D {
    let lhs = [
        UniPoly::from_ints(&[-1, -1]),
        UniPoly::from_ints(&[2]),
        UniPoly::from_ints(&[-1, 1]),
    ];
    let rhs = match scheme {
        Scheme::Galerkin => [rat(1, 3), rat(4, 3), rat(1, 3)],
        Scheme::SourceStabilized => [rat(1, 2), rat(1, 1), rat(1, 2)],
    };
    Stencil1D { scheme, lhs, rhs }
}

impl Stencil1D {
    pub fn lhs_in_pe(&self) -> &[UniPoly; 3] {
        &self.lhs
    }

    pub fn lhs_at(&self, pe: &Rational) -> [Rational; 3] {
        [self.lhs[0].eval(pe), self.lhs[1].eval(pe), self.lhs[2].eval(pe)]
    }

    /// Source weights, in units of `Pe·Δz`.
    pub fn rhs(&self) -> &[Rational; 3] {
        &self.rhs
    }

    /// `r0 + r1·Z + r2·Z²`: the source weights after the Z-transform.
    pub fn source_poly(&self) -> UniPoly {
        UniPoly::new(self.rhs.to_vec())
    }

    /// `l0 + l1·Z + l2·Z²` with Pe as the second variable.
    fn operator_in_z_pe(&self) -> BiPoly {
        let mut p = BiPoly::default();
        for (k, l) in self.lhs.iter().enumerate() {
            let zk = BiPoly::monomial(Rational::one(), [k as u32, 0]);
            p = &p + &(&zk * &BiPoly::from_uni(l, 1));
        }
        p
    }
}

fn check_pe(pe: &Rational) -> Result<(), StabilityError> {
    if !pe.is_positive() {
        return Err(StabilityError::InvalidPeclet(pe.to_f64().unwrap_or(f64::NAN)));
    }
    if pe.is_one() {
        return Err(StabilityError::DegeneratePole);
    }
    Ok(())
}

/// Transfer function `A/B` of the stencil at a fixed Peclet number.
pub fn tf_1d(stencil: &Stencil1D, pe: &Rational) -> Result<RationalTf<UniPoly>, StabilityError> {
    check_pe(pe)?;
    let den = UniPoly::new(stencil.lhs_at(pe).to_vec());
    let tf = RationalTf::new(stencil.source_poly(), den, pe.clone(), Units::DZ)?;
    Ok(tf.normalized())
}

/// Transfer function at fixed Pe together with its pole/zero report.
pub fn analyze_1d(
    stencil: &Stencil1D,
    pe: &Rational,
) -> Result<(RationalTf<UniPoly>, PoleZeroReport), StabilityError> {
    let raw = tf_1d(stencil, pe)?;
    let report = PoleZeroReport::from_raw(raw.num(), raw.den())?;
    Ok((raw.simplify(), report))
}

/// Leading order of the transfer function for large Pe, simplified, with the
/// report computed from the form before cancellation.
pub fn tf_1d_high_pe(
    scheme: Scheme,
) -> Result<(RationalTf<UniPoly>, PoleZeroReport), StabilityError> {
    let stencil = build_stencil_1d(scheme);
    let pe = BiPoly::var(1);
    let num = &pe * &BiPoly::from_uni(&stencil.source_poly(), 0);
    let den = stencil.operator_in_z_pe();
    let (kn, ln) = num.leading_in(1).ok_or(StabilityError::NoFiniteLimit)?;
    let (kd, ld) = den.leading_in(1).ok_or(StabilityError::NoFiniteLimit)?;
    if kn != kd {
        return Err(StabilityError::NoFiniteLimit);
    }
    let num = ln.as_uni(0).expect("univariate after extraction");
    let den = ld.as_uni(0).expect("univariate after extraction");
    let raw = RationalTf::new(num, den, Rational::one(), Units::DZ)?;
    let report = PoleZeroReport::from_raw(raw.num(), raw.den())?;
    Ok((raw.simplify(), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_weights() {
        let g = build_stencil_1d(Scheme::Galerkin);
        assert_eq!(g.rhs(), &[rat(1, 3), rat(4, 3), rat(1, 3)]);
        let s = build_stencil_1d(Scheme::SourceStabilized);
        assert_eq!(s.rhs(), &[rat(1, 2), rat(1, 1), rat(1, 2)]);
        for st in [g, s] {
            let l = st.lhs_at(&rat(7, 1));
            assert_eq!(&l[0] + &l[1] + &l[2], rat(0, 1));
            assert_eq!(st.rhs().iter().sum::<Rational>(), rat(2, 1));
        }
    }

    #[test]
    fn galerkin_at_pe_three() {
        let tf = tf_1d(&build_stencil_1d(Scheme::Galerkin), &rat(3, 1)).unwrap();
        assert_eq!(tf.num(), &UniPoly::from_ints(&[1, 4, 1]));
        // (Z - 1)(Z + 2)
        assert_eq!(tf.den(), &UniPoly::from_ints(&[-2, 1, 1]));
        assert_eq!(tf.scale(), &rat(1, 2));
    }

    #[test]
    fn unit_peclet_is_degenerate() {
        let st = build_stencil_1d(Scheme::Galerkin);
        assert_eq!(tf_1d(&st, &rat(1, 1)).unwrap_err(), StabilityError::DegeneratePole);
        assert!(matches!(tf_1d(&st, &rat(-2, 1)), Err(StabilityError::InvalidPeclet(_))));
    }

    #[test]
    fn high_pe_limits() {
        let (g, rg) = tf_1d_high_pe(Scheme::Galerkin).unwrap();
        assert_eq!(g.num(), &UniPoly::from_ints(&[1, 4, 1]));
        assert_eq!(g.den(), &UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(g.scale(), &rat(1, 3));
        assert!(!rg.cancelled_at_minus_one);
        assert!(rg.dc_pole_present && rg.has_pole_near(-1.0, 1e-12));

        let (s, rs) = tf_1d_high_pe(Scheme::SourceStabilized).unwrap();
        assert_eq!(s.num(), &UniPoly::from_ints(&[1, 1]));
        assert_eq!(s.den(), &UniPoly::from_ints(&[-1, 1]));
        assert_eq!(s.scale(), &rat(1, 2));
        assert!(rs.cancelled_at_minus_one);
        assert!(rs.dc_pole_present && !rs.has_pole_near(-1.0, 1e-6));
    }
}
