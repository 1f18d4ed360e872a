use std::collections::BTreeMap;

use crate::model::Slice;
use crate::muse::SpectrumQuantity;

/// Currency per W·m², optionally overridden per slice.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PriceSheet {
    pub rate: f64,
    pub slice_rates: BTreeMap<Slice, f64>,
}

impl PriceSheet {
    pub fn flat(rate: f64) -> Self {
        Self {
            rate,
            slice_rates: BTreeMap::new(),
        }
    }

    pub fn rate_for(&self, slice: Slice) -> f64 {
        self.slice_rates.get(&slice).copied().unwrap_or(self.rate)
    }
}

/// Price of a consumed quantity. Per-slice rates apply to breakdown entries.
pub fn price(consumed: &SpectrumQuantity, sheet: &PriceSheet) -> f64 {
    if consumed.breakdown.is_empty() {
        return sheet.rate * consumed.value;
    }
    consumed
        .breakdown
        .iter()
        .map(|(s, v)| sheet.rate_for(*s) * v)
        .sum()
}
