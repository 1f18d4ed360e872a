use super::PolicyError;
use crate::model::{Grid, PowerBounds};
use crate::muse::{available_spectrum_in, PowerField, SpectrumQuantity};

/// Lowers every cell by `margin_db`, never below p_min.
pub fn apply_guard_margin(
    opportunity: &PowerField,
    margin_db: f64,
    bounds: &PowerBounds,
) -> Result<PowerField, PolicyError> {
    if !(margin_db >= 0.0) {
        return Err(PolicyError::NegativeMargin(margin_db));
    }
    Ok(opportunity.map(bounds, |v| (v - margin_db).max(bounds.p_min_dbm)))
}

/// Spectrum made inexercisable by a guard margin: available(before) − available(after).
pub fn inexercisable_spectrum(
    before: &[PowerField],
    after: &[PowerField],
    grid: &Grid,
    bounds: &PowerBounds,
) -> SpectrumQuantity {
    let b = available_spectrum_in(before, grid, bounds);
    let a = available_spectrum_in(after, grid, bounds);
    let breakdown = b
        .breakdown
        .iter()
        .map(|(s, v)| (*s, (v - a.breakdown.get(s).copied().unwrap_or(0.0)).max(0.0)))
        .collect::<std::collections::BTreeMap<_, _>>();
    SpectrumQuantity {
        value: breakdown.values().sum(),
        breakdown,
    }
}
