use super::{Scheme, StabilityError};

/// Peak oscillation error in percent of the applied field predicted by the
/// 1D difference equation for a step in the source.
pub fn peak_error_analytic(scheme: Scheme, pe: f64) -> Result<f64, StabilityError> {
    if !(pe.is_finite() && pe > 0.0) {
        return Err(StabilityError::InvalidPeclet(pe));
    }
    let p1 = (pe + 1.0).powi(3);
    let e = match scheme {
        Scheme::Galerkin => (pe * pe - 3.0) * (pe - 1.0) / (3.0 * p1),
        Scheme::SourceStabilized => (pe - 1.0) / p1,
    };
    Ok(e.abs() * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_zeros() {
        let g = peak_error_analytic(Scheme::Galerkin, 3f64.sqrt()).unwrap();
        assert!(g < 1e-13);
        assert_eq!(peak_error_analytic(Scheme::SourceStabilized, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn galerkin_limit_is_one_third() {
        let g = peak_error_analytic(Scheme::Galerkin, 1e9).unwrap();
        assert!((g - 100.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(peak_error_analytic(Scheme::Galerkin, 0.0).is_err());
        assert!(peak_error_analytic(Scheme::Galerkin, f64::NAN).is_err());
    }
}
