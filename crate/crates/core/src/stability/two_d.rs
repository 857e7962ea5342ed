use num_traits::{One, Zero};

use super::{build_stencil_1d, PoleZeroReport, Scheme, StabilityError};
use crate::polyring::{rat, BiPoly, Rational, RationalTf, TriPoly, UniPoly, Units};

const ZN: usize = 0;
const ZM: usize = 1;
const PE: usize = 2;

/// Bivariate Z-transform polynomials of the interior 2D difference
/// equations on a square grid (`Z_n` along z, `Z_m` along y).
#[derive(Clone, Debug, PartialEq)]
pub struct System2DZ {
    pub q1: BiPoly,
    pub q2: BiPoly,
    pub q2p: BiPoly,
    pub s1: BiPoly,
    pub s1p: BiPoly,
    pub s2: BiPoly,
    pub s3: BiPoly,
    pub m1: BiPoly,
}

fn bi(terms: &[([u32; 2], i64)]) -> BiPoly {
    BiPoly::from_int_terms(terms)
}

pub fn build_system_2d() -> System2DZ {
    System2DZ {
        q1: bi(&[([2, 2], 1), ([1, 2], 4), ([0, 2], 1), ([2, 0], -1), ([1, 0], -4), ([0, 0], -1)]),
        q2: bi(&[([2, 1], 1), ([0, 1], -1)]),
        q2p: bi(&[
            ([2, 2], 1),
            ([0, 2], -1),
            ([2, 1], 4),
            ([0, 1], -4),
            ([2, 0], 1),
            ([0, 0], -1),
        ]),
        s1: bi(&[
            ([0, 0], 1),
            ([1, 0], 1),
            ([2, 0], 1),
            ([0, 1], 1),
            ([2, 1], 1),
            ([0, 2], 1),
            ([1, 2], 1),
            ([2, 2], 1),
            ([1, 1], -8),
        ]),
        s1p: bi(&[([1, 0], 1), ([1, 1], -2), ([1, 2], 1)]),
        s2: bi(&[([0, 0], 1), ([2, 2], 1), ([2, 0], -1), ([0, 2], -1)]),
        s3: bi(&[([1, 0], 1), ([1, 2], -1)]),
        m1: bi(&[
            ([0, 0], 1),
            ([1, 0], 4),
            ([2, 0], 1),
            ([0, 1], 2),
            ([1, 1], 8),
            ([2, 1], 2),
            ([0, 2], 1),
            ([1, 2], 4),
            ([2, 2], 1),
        ]),
    }
}

/// `3·(r0 + r1 Z_n + r2 Z_n²)`: the z-direction source weights of a scheme,
/// scaled so the Galerkin weights are `(1, 4, 1)`.
fn source_weight(scheme: Scheme) -> UniPoly {
    build_stencil_1d(scheme).source_poly().scale(&rat(3, 1))
}

impl System2DZ {
    /// Source polynomials of the φ row and of the y-edge row for a scheme.
    /// For the Galerkin scheme these are `[Q1]` and `[M1]`; the stabilized
    /// scheme replaces their z-direction weights by the averaged ones.
    pub fn source_polys(&self, scheme: Scheme) -> (BiPoly, BiPoly) {
        let (q1y, m1y) = self.source_y_parts();
        let w = BiPoly::from_uni(&source_weight(scheme), ZN);
        (&q1y * &w, &m1y * &w)
    }

    /// `[Q1]` and `[M1]` with the Galerkin z-direction weights divided out.
    fn source_y_parts(&self) -> (BiPoly, BiPoly) {
        let w = source_weight(Scheme::Galerkin);
        (
            self.q1.div_uni(&w, ZN).expect("[Q1] carries the z weights"),
            self.m1.div_uni(&w, ZN).expect("[M1] carries the z weights"),
        )
    }

    /// Coefficient matrix acting on `(φ/u_z, A_y, A_z)`, entries in
    /// `(Z_n, Z_m, Pe)`. Rows: φ equation, y-edge equation, z-edge equation.
    pub fn matrix(&self) -> [[TriPoly; 3]; 3] {
        let t = |p: &BiPoly, c: Rational| p.to_tri().scale(&c);
        let pe = TriPoly::var(PE);
        [
            [t(&self.s1, rat(1, 3)), t(&self.s2, rat(1, 4)), t(&self.s3, rat(-1, 2))],
            [
                &pe * &t(&self.q1, rat(1, 6)),
                &(&pe * &self.q2.to_tri()) - &self.s1.to_tri(),
                &pe * &self.s3.to_tri(),
            ],
            [&pe * &t(&self.q2p, rat(1, 6)), TriPoly::zero(), t(&self.s1p, rat(-1, 1))],
        ]
    }

    /// Right-hand side per unit `Δz·B_x` for the given source polynomials.
    pub fn rhs(&self, q1: &BiPoly, m1: &BiPoly) -> [TriPoly; 3] {
        let pe = TriPoly::var(PE);
        [
            q1.to_tri().scale(&rat(1, 12)),
            &pe * &m1.to_tri().scale(&rat(1, 12)),
            TriPoly::zero(),
        ]
    }
}

fn det3(m: &[[TriPoly; 3]; 3]) -> TriPoly {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// `A_y/B_x` from Cramer's rule, keeping only the leading order in Pe.
fn high_pe_ratio(sys: &System2DZ, q1: &BiPoly, m1: &BiPoly) -> Result<RationalTf<BiPoly>, StabilityError> {
    let m = sys.matrix();
    let r = sys.rhs(q1, m1);
    let mut my = m.clone();
    for (row, rhs) in my.iter_mut().zip(r) {
        row[1] = rhs;
    }
    let (kn, n) = det3(&my).leading_in(PE).ok_or(StabilityError::NoFiniteLimit)?;
    let (kd, d) = det3(&m).leading_in(PE).ok_or(StabilityError::NoFiniteLimit)?;
    if kn != kd {
        return Err(StabilityError::NoFiniteLimit);
    }
    let n = n.to_bi().expect("Pe removed");
    let d = d.to_bi().expect("Pe removed");
    Ok(RationalTf::new(n, d, Rational::one(), Units::DZ)?)
}

/// Result of the 2D elimination in the large-Pe limit.
#[derive(Clone, Debug)]
pub struct Elimination2D {
    pub scheme: Scheme,
    /// Simplified `A_y/B_x`.
    pub tf: RationalTf<BiPoly>,
    /// `A_y/B_x` with the same cofactors but the full source polynomials,
    /// simplified; must agree with `tf`.
    pub direct: RationalTf<BiPoly>,
    /// Source weight times the reduced response to a unit weight, before
    /// cancellation between the two.
    pub unsimplified: RationalTf<BiPoly>,
    /// `Z_n` numerator of the unsimplified form, monic.
    pub zn_numerator: UniPoly,
    /// `Z_n` denominator of the unsimplified form, constant term one.
    pub zn_denominator: UniPoly,
    /// `Z_m` numerator factor, constant term one.
    pub f1: UniPoly,
    /// `Z_m` denominator factor, monic.
    pub f2: UniPoly,
    /// Prefactor multiplying `Δz` in the unsimplified form.
    pub scale: Rational,
    /// Poles and zeros in `Z_n` of the simplified transfer function.
    pub report: PoleZeroReport,
}

impl Elimination2D {
    /// `scale·Δz · zn_numerator·f1 / (zn_denominator·f2)`.
    pub fn factored_form(&self) -> RationalTf<BiPoly> {
        let n = &BiPoly::from_uni(&self.zn_numerator, ZN) * &BiPoly::from_uni(&self.f1, ZM);
        let d = &BiPoly::from_uni(&self.zn_denominator, ZN) * &BiPoly::from_uni(&self.f2, ZM);
        RationalTf::new(n, d, self.scale.clone(), Units::DZ).expect("nonzero denominator")
    }
}

fn normalize_constant_term(p: &UniPoly) -> (Rational, UniPoly) {
    let c = p.coeff(0);
    if c.is_zero() {
        let lc = p.leading().cloned().unwrap_or_else(Rational::one);
        (lc.clone(), p.scale(&lc.recip()))
    } else {
        (c.clone(), p.scale(&c.recip()))
    }
}

/// Eliminates φ and A_z from the 2D system and returns `A_y/B_x` for large Pe.
pub fn eliminate_2d(sys: &System2DZ, scheme: Scheme) -> Result<Elimination2D, StabilityError> {
    let (q1y, m1y) = sys.source_y_parts();
    let unit = high_pe_ratio(sys, &q1y, &m1y)?.simplify();
    let w = BiPoly::from_uni(&source_weight(scheme), ZN);
    let unsimplified = RationalTf::new(&w * unit.num(), unit.den().clone(), unit.scale().clone(), Units::DZ)?;

    let zp1 = UniPoly::from_ints(&[1, 1]);
    let cancelled = unsimplified.num().div_uni(&zp1, ZN).is_some()
        && unsimplified.den().div_uni(&zp1, ZN).is_some();

    let tf = unsimplified.simplify();
    let (q1, m1) = sys.source_polys(scheme);
    let direct = high_pe_ratio(sys, &q1, &m1)?.simplify();

    let (cn, gn, hn) = unsimplified.num().separate().ok_or(StabilityError::NotSeparable)?;
    let (cd, gd, hd) = unsimplified.den().separate().ok_or(StabilityError::NotSeparable)?;
    let (gd0, zn_denominator) = normalize_constant_term(&gd);
    let (hn0, f1) = normalize_constant_term(&hn);
    let scale = unsimplified.scale() * &cn * &hn0 / (&cd * &gd0);

    let (_, tgn, _) = tf.num().separate().ok_or(StabilityError::NotSeparable)?;
    let (_, tgd, _) = tf.den().separate().ok_or(StabilityError::NotSeparable)?;
    let mut report = PoleZeroReport::from_raw(&tgn, &tgd)?;
    report.cancelled_at_minus_one = cancelled;

    Ok(Elimination2D {
        scheme,
        tf,
        direct,
        unsimplified,
        zn_numerator: gn,
        zn_denominator,
        f1,
        f2: hd,
        scale,
        report,
    })
}

/// The reduced combination
/// `([M1]+2[Q1])[S3] / (12·[S3]([Q2]+[S2]/2))` obtained by eliminating φ and
/// A_z by hand, simplified.
pub fn combination_2d(sys: &System2DZ) -> Result<RationalTf<BiPoly>, StabilityError> {
    let num = &(&sys.m1 + &sys.q1.scale(&rat(2, 1))) * &sys.s3;
    let den = &sys.s3 * &(&sys.q2 + &sys.s2.scale(&rat(1, 2)));
    Ok(RationalTf::new(num, den, rat(1, 12), Units::DZ)?.simplify())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_polynomials() {
        let s = build_system_2d();
        assert_eq!(s.q2, bi(&[([2, 1], 1), ([0, 1], -1)]));
        assert_eq!(s.s2.eval(&[rat(1, 1), rat(1, 1)]), rat(0, 1));
        assert_eq!(s.m1.eval(&[rat(1, 1), rat(1, 1)]), rat(24, 1));
        let (q1, m1) = s.source_polys(Scheme::Galerkin);
        assert_eq!((q1, m1), (s.q1.clone(), s.m1.clone()));
    }

    #[test]
    fn galerkin_structure() {
        let e = eliminate_2d(&build_system_2d(), Scheme::Galerkin).unwrap();
        assert_eq!(e.zn_numerator, UniPoly::from_ints(&[1, 4, 1]));
        assert_eq!(e.zn_denominator, UniPoly::from_ints(&[1, 0, -1]));
        assert_eq!(e.f1, UniPoly::from_ints(&[1, -2, -3]));
        assert_eq!(e.f2, UniPoly::from_ints(&[-1, 2, 1]));
        assert_eq!(e.scale, rat(1, 6));
        assert!(e.tf.same_function(&e.direct));
        assert!(e.tf.same_function(&e.factored_form()));
        assert!(!e.report.cancelled_at_minus_one);
        assert!(e.report.has_pole_near(-1.0, 1e-12));
    }

    #[test]
    fn stabilized_cancels() {
        let e = eliminate_2d(&build_system_2d(), Scheme::SourceStabilized).unwrap();
        assert_eq!(e.zn_numerator, UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(e.scale, rat(1, 4));
        assert!(e.report.cancelled_at_minus_one);
        assert!(!e.report.has_pole_near(-1.0, 1e-6));
        assert!(e.report.dc_pole_present);
        assert!(e.tf.same_function(&e.direct));
    }

    #[test]
    fn combination_matches_elimination() {
        let s = build_system_2d();
        let e = eliminate_2d(&s, Scheme::Galerkin).unwrap();
        assert!(combination_2d(&s).unwrap().same_function(&e.tf));
    }
}
