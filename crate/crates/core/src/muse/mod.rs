//! Spectrum-space quantification: occupancy and opportunity maps,
//! per-entity consumption spaces, total and available spectrum, and
//! harvest-performance metrics.

mod consumption;
mod field;
mod harvest;
mod occupancy;
mod opportunity;
mod quantity;

use thiserror::Error;

use crate::model::{OutOfExtent, Scenario, Slice};

pub use consumption::{
    quantify, receivers_consumption, rx_consumption, tx_consumption, ConsumptionSpace, EntitySet,
};
pub use field::PowerField;
pub use harvest::{harvest_from_linear, harvest_metrics, HarvestMetrics};
pub use occupancy::{occupancy_at, occupancy_linear, occupancy_map};
pub use opportunity::{
    available_spectrum, available_spectrum_in, cell_opportunity, opportunity_map, CellOpportunity,
    OpportunityMap, Protected, SliceConstraints,
};
pub use quantity::{total_spectrum, SpectrumQuantity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MuseError {
    #[error("slice {slice} outside the spectrum space ({b_hat} bands x {t_hat} quanta)")]
    SliceOutOfRange {
        slice: Slice,
        b_hat: usize,
        t_hat: usize,
    },
    #[error(transparent)]
    OutOfExtent(#[from] OutOfExtent),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub(crate) fn check_slice(scenario: &Scenario, slice: Slice) -> Result<(), MuseError> {
    if slice.band < scenario.dims.b_hat && slice.quantum < scenario.dims.t_hat {
        Ok(())
    } else {
        Err(MuseError::SliceOutOfRange {
            slice,
            b_hat: scenario.dims.b_hat,
            t_hat: scenario.dims.t_hat,
        })
    }
}
