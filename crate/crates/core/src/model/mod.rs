//! Scenario vocabulary shared by every engine module: power bounds, the
//! discretization grid, spectrum-space dimensions, antenna patterns and the
//! transceiver/network containment hierarchy.

mod antenna;
mod grid;
mod scenario;
mod validate;

pub use antenna::AntennaPattern;
pub use grid::{Cell, Grid, OutOfExtent, Point};
pub use scenario::{
    PowerBounds, Receiver, RfNetwork, Scenario, SpectrumSpaceDims, Transmitter,
};
pub use validate::{validate_scenario, ValidationError};

/// One (band, time quantum) slice of the spectrum space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slice {
    pub band: usize,
    pub quantum: usize,
}

impl Slice {
    pub fn new(band: usize, quantum: usize) -> Self {
        Self { band, quantum }
    }
}

impl std::fmt::Display for Slice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "b{}q{}", self.band, self.quantum)
    }
}
