use super::PostError;

/// Errors normalized by the applied field magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport {
    /// Area-weighted root-mean-square error.
    pub l2_error: f64,
    /// Largest pointwise error.
    pub abs_error: f64,
    /// `100·abs_error`.
    pub peak_error_percent: f64,
    /// Order of convergence against the previous resolution, when known.
    pub eoc: Option<f64>,
}

fn check(computed: &[f64], reference: &[f64], b_ax: f64) -> Result<(), PostError> {
    if computed.len() != reference.len() {
        return Err(PostError::SizeMismatch { expected: reference.len(), got: computed.len() });
    }
    if b_ax == 0.0 || !b_ax.is_finite() {
        return Err(PostError::ZeroScale);
    }
    Ok(())
}

/// Error of `computed` against `reference` on the same elements with the
/// given element areas (weights).
pub fn error_metrics(
    computed: &[f64],
    reference: &[f64],
    areas: &[f64],
    b_ax: f64,
) -> Result<ErrorReport, PostError> {
    check(computed, reference, b_ax)?;
    if areas.len() != computed.len() {
        return Err(PostError::SizeMismatch { expected: computed.len(), got: areas.len() });
    }
    let (mut sq, mut total, mut peak) = (0.0, 0.0, 0.0f64);
    for ((c, r), a) in computed.iter().zip(reference).zip(areas) {
        let d = c - r;
        sq += d * d * a;
        total += a;
        peak = peak.max(d.abs());
    }
    let l2 = if total > 0.0 { (sq / total).sqrt() } else { 0.0 };
    let abs_error = peak / b_ax.abs();
    Ok(ErrorReport {
        l2_error: l2 / b_ax.abs(),
        abs_error,
        peak_error_percent: 100.0 * abs_error,
        eoc: None,
    })
}

/// Peak error in percent over the elements where `include` is true.
pub fn masked_peak_error(
    computed: &[f64],
    reference: &[f64],
    include: &[bool],
    b_ax: f64,
) -> Result<f64, PostError> {
    check(computed, reference, b_ax)?;
    if include.len() != computed.len() {
        return Err(PostError::SizeMismatch { expected: computed.len(), got: include.len() });
    }
    let peak = computed
        .iter()
        .zip(reference)
        .zip(include)
        .filter(|(_, &m)| m)
        .fold(0.0f64, |p, ((c, r), _)| p.max((c - r).abs()));
    Ok(100.0 * peak / b_ax.abs())
}

/// `log(e1/e2)/log(h1/h2)`.
pub fn eoc(e1: f64, e2: f64, h1: f64, h2: f64) -> f64 {
    (e1 / e2).ln() / (h1 / h2).ln()
}

/// Number of interior samples where consecutive first differences have
/// strictly opposite signs, ignoring differences below `1e−12·max|field|`.
pub fn oscillation_index(field: &[f64]) -> Result<usize, PostError> {
    if field.len() < 3 {
        return Err(PostError::TooFewSamples { min: 3, got: field.len() });
    }
    let floor = 1e-12 * field.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = |d: f64| {
        if d > floor {
            1
        } else if d < -floor {
            -1
        } else {
            0
        }
    };
    Ok(field
        .windows(3)
        .filter(|w| sign(w[1] - w[0]) * sign(w[2] - w[1]) < 0)
        .count())
}
