use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::uni::{forward_owned, push_term, rational_to_f64};
use super::{Rational, UniPoly};

/// Sparse multivariate polynomial in `N` variables with exact coefficients.
///
/// Keys are exponent vectors. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<const N: usize> {
    terms: BTreeMap<[u32; N], Rational>,
}

/// Polynomial in `(Z_n, Z_m)`.
pub type BiPoly = MultiPoly<2>;
/// Polynomial in `(Z_n, Z_m, Pe)`, used for the large-Pe limit.
pub type TriPoly = MultiPoly<3>;

impl<const N: usize> Default for MultiPoly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> MultiPoly<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn monomial(c: Rational, exps: [u32; N]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The variable with index `var`.
    pub fn var(var: usize) -> Self {
        let mut e = [0; N];
        e[var] = 1;
        Self::monomial(Rational::one(), e)
    }

    /// Builds from `(exponents, integer coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_int_terms(terms: &[([u32; N], i64)]) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(*e, Rational::from_integer((*c).into()));
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_uni(p: &UniPoly, var: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = [0; N];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    fn add_term(&mut self, exps: [u32; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: [u32; N]) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent of `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficient of the last term in lexicographic exponent order.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn eval(&self, x: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                t *= num_traits::pow(xi.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_c64(&self, x: &[Complex64; N]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (xi, &k) in x.iter().zip(e) {
                t *= xi.powu(k);
            }
            acc += t;
        }
        acc
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables
    /// (exponent of `var` set to zero).
    pub fn coeff_of(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = *e;
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Highest power of `var` with its coefficient. This is the leading
    /// order of the polynomial when `var` grows without bound.
    pub fn leading_in(&self, var: usize) -> Option<(u32, Self)> {
        let k = self.degree_in(var)?;
        Some((k, self.coeff_of(var, k)))
    }

    /// The polynomial as univariate in `var`, if no other variable occurs.
    pub fn as_uni(&self, var: usize) -> Option<UniPoly> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Some(UniPoly::zero()),
        };
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Substitutes `var = value` exactly.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[var] = 0;
            out.add_term(e2, c * num_traits::pow(value.clone(), e[var] as usize));
        }
        out
    }

    /// Human-readable form with the given variable names.
    pub fn display_with(&self, names: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            push_term(&mut s, c, &mono.join("*"));
        }
        s
    }
}

impl TriPoly {
    /// Drops the third variable, which must not occur.
    pub fn to_bi(&self) -> Option<BiPoly> {
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            if e[2] != 0 {
                return None;
            }
            out.add_term([e[0], e[1]], c.clone());
        }
        Some(out)
    }
}

impl BiPoly {
    pub fn to_tri(&self) -> TriPoly {
        let mut out = TriPoly::zero();
        for (e, c) in &self.terms {
            out.add_term([e[0], e[1], 0], c.clone());
        }
        out
    }

    /// Coefficients with respect to `var`, each a univariate polynomial
    /// in the other variable, indexed by the power of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<UniPoly> {
        let other = 1 - var;
        let Some(deg) = self.degree_in(var) else {
            return Vec::new();
        };
        (0..=deg)
            .map(|k| self.coeff_of(var, k).as_uni(other).expect("bivariate"))
            .collect()
    }

    /// Content with respect to `var`: the monic gcd of the coefficients of
    /// the powers of `var`, a polynomial in the other variable.
    pub fn content_in(&self, var: usize) -> UniPoly {
        self.coeffs_in(var)
            .iter()
            .fold(UniPoly::zero(), |g, c| UniPoly::gcd(&g, c))
    }

    /// Exact division by a univariate polynomial `p` in variable `var_of_p`.
    pub fn div_uni(&self, p: &UniPoly, var_of_p: usize) -> Option<BiPoly> {
        let other = 1 - var_of_p;
        let mut out = BiPoly::zero();
        for (k, c) in self.coeffs_in(other).iter().enumerate() {
            let q = c.exact_div(p)?;
            let mut e = [0u32; 2];
            e[other] = k as u32;
            for (j, qc) in q.coeffs().iter().enumerate() {
                e[var_of_p] = j as u32;
                out.add_term(e, qc.clone());
            }
        }
        Some(out)
    }

    /// Splits a separable polynomial as `c · g(Z_n) · h(Z_m)` with `g`, `h`
    /// monic. Returns `None` when the polynomial does not separate.
    pub fn separate(&self) -> Option<(Rational, UniPoly, UniPoly)> {
        if self.is_zero() {
            return None;
        }
        let h = self.content_in(0);
        let rest = self.div_uni(&h, 1)?;
        let g = rest.as_uni(0)?;
        let c = g.leading()?.clone();
        Some((c, g.monic(), h))
    }

    /// Removes the common per-variable content of `num` and `den`.
    pub fn cancel_contents(num: &BiPoly, den: &BiPoly) -> (BiPoly, BiPoly) {
        let (mut n, mut d) = (num.clone(), den.clone());
        for var in 0..2 {
            let g = UniPoly::gcd(&n.content_in(var), &d.content_in(var));
            if g.degree().unwrap_or(0) > 0 {
                let other = 1 - var;
                n = n.div_uni(&g, other).expect("content divides");
                d = d.div_uni(&g, other).expect("content divides");
            }
        }
        // Primitive parts that agree up to a constant cancel as well.
        if let (Some(ln), Some(ld)) = (n.leading_coeff(), d.leading_coeff()) {
            let ratio = ln / ld;
            if !n.is_zero() && n == d.scale(&ratio) {
                return (BiPoly::constant(ratio), BiPoly::one());
            }
        }
        (n, d)
    }
}

impl<const N: usize> fmt::Display for MultiPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["Zn", "Zm", "Pe"];
        let mut names = [""; N];
        for (i, n) in names.iter_mut().enumerate() {
            *n = NAMES.get(i).copied().unwrap_or("x");
        }
        f.write_str(&self.display_with(&names))
    }
}

impl<const N: usize> Add for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn add(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn sub(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<const N: usize> Mul for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn mul(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = MultiPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, a * b);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn neg(self) -> MultiPoly<N> {
        self.scale(&-Rational::one())
    }
}

forward_owned!(BiPoly, Add add, Sub sub, Mul mul);
forward_owned!(TriPoly, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn s3() -> BiPoly {
        BiPoly::from_int_terms(&[([1, 0], 1), ([1, 2], -1)])
    }

    #[test]
    fn identity_product() {
        assert_eq!(&s3() * &BiPoly::one(), s3());
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let p = &s3() - &s3();
        assert!(p.is_zero());
        assert_eq!(p.n_terms(), 0);
    }

    #[test]
    fn leading_in_variable() {
        // (Pe - 1) Zn^2 + 2 Zn - (Pe + 1)
        let p = TriPoly::from_int_terms(&[
            ([2, 0, 1], 1),
            ([2, 0, 0], -1),
            ([1, 0, 0], 2),
            ([0, 0, 1], -1),
            ([0, 0, 0], -1),
        ]);
        let (k, lc) = p.leading_in(2).unwrap();
        assert_eq!(k, 1);
        assert_eq!(lc.to_bi().unwrap().as_uni(0).unwrap(), UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn separation_of_product() {
        let g = UniPoly::from_ints(&[1, 4, 1]);
        let h = UniPoly::from_ints(&[1, -2, -3]);
        let p = (&BiPoly::from_uni(&g, 0) * &BiPoly::from_uni(&h, 1)).scale(&rat(-7, 3));
        let (c, gs, hs) = p.separate().unwrap();
        assert_eq!(gs, g);
        assert_eq!(hs, h.monic());
        assert_eq!(c, rat(-7, 3) * rat(-3, 1));
        let mixed = BiPoly::from_int_terms(&[([1, 0], 1), ([0, 1], 1)]);
        assert!(mixed.separate().is_none());
    }

    #[test]
    fn content_cancellation() {
        let zn1 = BiPoly::from_uni(&UniPoly::from_ints(&[1, 1]), 0);
        let zm = BiPoly::from_uni(&UniPoly::from_ints(&[-1, 2, 1]), 1);
        let mixed = BiPoly::from_int_terms(&[([1, 0], 1), ([0, 1], 1), ([0, 0], 3)]);
        let num = &(&zn1 * &zn1) * &mixed;
        let den = &(&zn1 * &zm) * &BiPoly::from_int_terms(&[([0, 0], 2)]);
        let (n, d) = BiPoly::cancel_contents(&num, &den);
        assert_eq!(&n * &den, &d * &num);
        assert_eq!(n.degree_in(0), Some(2));
        assert_eq!(d.degree_in(0), Some(0));
    }

    #[test]
    fn substitution_and_eval() {
        let p = TriPoly::from_int_terms(&[([1, 0, 1], 3), ([0, 0, 0], 1)]);
        let q = p.substitute(2, &rat(2, 1));
        assert_eq!(q, TriPoly::from_int_terms(&[([1, 0, 0], 6), ([0, 0, 0], 1)]));
        assert_eq!(p.eval(&[rat(1, 2), rat(5, 1), rat(2, 1)]), rat(4, 1));
    }
}
