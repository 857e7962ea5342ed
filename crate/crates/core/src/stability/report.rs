use std::fmt::Write;

use num_traits::One;

use super::StabilityError;
use crate::polyring::{roots_with_multiplicity, Rational, RootMult, UniPoly};

/// Poles and zeros of a transfer function, plus the two structural flags the
/// stability argument rests on.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleZeroReport {
    pub poles: Vec<RootMult>,
    pub zeros: Vec<RootMult>,
    /// `(Z+1)` divides both numerator and denominator of the unsimplified form.
    pub cancelled_at_minus_one: bool,
    /// The simplified transfer function keeps a pole at `Z = 1`.
    pub dc_pole_present: bool,
}

impl PoleZeroReport {
    /// Builds the report from the numerator and denominator before
    /// cancellation; poles and zeros refer to the simplified form.
    pub fn from_raw(num: &UniPoly, den: &UniPoly) -> Result<Self, StabilityError> {
        let minus_one = -Rational::one();
        let cancelled = num.root_multiplicity(&minus_one) > 0 && den.root_multiplicity(&minus_one) > 0;
        let g = UniPoly::gcd(num, den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Ok(Self {
            poles: roots_with_multiplicity(&den)?,
            zeros: if num.degree().unwrap_or(0) == 0 {
                Vec::new()
            } else {
                roots_with_multiplicity(&num)?
            },
            cancelled_at_minus_one: cancelled,
            dc_pole_present: den.root_multiplicity(&Rational::one()) > 0,
        })
    }

    pub fn has_pole_near(&self, re: f64, tol: f64) -> bool {
        self.poles
            .iter()
            .any(|p| (p.value.re - re).abs() < tol && p.value.im.abs() < tol)
    }

    pub fn to_text(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{title}");
        for (label, set) in [("poles", &self.poles), ("zeros", &self.zeros)] {
            let _ = writeln!(s, "  {label}:");
            if set.is_empty() {
                let _ = writeln!(s, "    (none)");
            }
            for r in set {
                let _ = writeln!(
                    s,
                    "    {:+.12e} {:+.12e}i  multiplicity {}",
                    r.value.re, r.value.im, r.multiplicity
                );
            }
        }
        let _ = writeln!(s, "  cancelled_at_minus_one: {}", self.cancelled_at_minus_one);
        let _ = writeln!(s, "  dc_pole_present: {}", self.dc_pole_present);
        s
    }

    /// Rows `label,kind,re,im,multiplicity` for a CSV report.
    pub fn csv_rows(&self, label: &str) -> Vec<String> {
        let mut rows = Vec::new();
        for (kind, set) in [("pole", &self.poles), ("zero", &self.zeros)] {
            for r in set {
                rows.push(format!(
                    "{label},{kind},{:.12e},{:.12e},{}",
                    r.value.re, r.value.im, r.multiplicity
                ));
            }
        }
        rows
    }
}
