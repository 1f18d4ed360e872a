use std::collections::BTreeMap;

use crate::model::{Grid, PowerBounds, Slice, SpectrumSpaceDims};
use crate::units::mw_to_w;

/// An amount of spectrum in W·m², optionally broken down per slice.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumQuantity {
    pub value: f64,
    pub breakdown: BTreeMap<Slice, f64>,
}

impl SpectrumQuantity {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(value_w_m2: f64) -> Self {
        Self {
            value: value_w_m2,
            breakdown: BTreeMap::new(),
        }
    }

    /// Converts per-slice mW·m² sums to W·m²; the value is the sum of the
    /// converted entries.
    pub fn from_mw_breakdown(per_slice_mw_m2: BTreeMap<Slice, f64>) -> Self {
        let breakdown: BTreeMap<Slice, f64> = per_slice_mw_m2
            .into_iter()
            .map(|(s, v)| (s, mw_to_w(v)))
            .collect();
        Self {
            value: breakdown.values().sum(),
            breakdown,
        }
    }

    /// Sum of two quantities; slice entries present in both are added.
    pub fn combine(&self, other: &SpectrumQuantity) -> SpectrumQuantity {
        if self.breakdown.is_empty() || other.breakdown.is_empty() {
            return Self::scalar(self.value + other.value);
        }
        let mut breakdown = self.breakdown.clone();
        for (s, v) in &other.breakdown {
            *breakdown.entry(*s).or_insert(0.0) += v;
        }
        Self {
            value: breakdown.values().sum(),
            breakdown,
        }
    }
}

/// Ψ_Total = P_CMAX · T̂ · Â · B̂ with unit-regions weighted by their area.
pub fn total_spectrum(grid: &Grid, dims: &SpectrumSpaceDims, bounds: &PowerBounds) -> SpectrumQuantity {
    SpectrumQuantity::scalar(
        mw_to_w(bounds.p_cmax_linear())
            * grid.cell_area()
            * grid.a_hat() as f64
            * dims.b_hat as f64
            * dims.t_hat as f64,
    )
}
