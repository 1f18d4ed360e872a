use std::collections::BTreeSet;

use super::{AntennaPattern, Grid, Point, Slice};
use crate::propagation::PropagationConfig;
use crate::units::lin;

/// Maximum permissible power and the arbitrary floor below thermal noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBounds {
    pub p_max_dbm: f64,
    pub p_min_dbm: f64,
}

impl PowerBounds {
    pub fn new(p_max_dbm: f64, p_min_dbm: f64) -> Self {
        Self { p_max_dbm, p_min_dbm }
    }

    /// Maximum consumption at a point, in mW: lin(p_max) − lin(p_min).
    pub fn p_cmax_linear(&self) -> f64 {
        lin(self.p_max_dbm) - lin(self.p_min_dbm)
    }

    pub fn clip_dbm(&self, dbm: f64) -> f64 {
        if dbm.is_nan() {
            return self.p_min_dbm;
        }
        dbm.clamp(self.p_min_dbm, self.p_max_dbm)
    }

    pub fn clip_mw(&self, mw: f64) -> f64 {
        mw.clamp(lin(self.p_min_dbm), lin(self.p_max_dbm))
    }
}

/// Counts of unit frequency bands and unit time quanta.
///
/// `band_width_hz` and `quantum_duration_s` are descriptive only.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpaceDims {
    pub b_hat: usize,
    pub t_hat: usize,
    pub band_width_hz: f64,
    pub quantum_duration_s: f64,
}

impl SpectrumSpaceDims {
    pub fn new(b_hat: usize, t_hat: usize) -> Self {
        Self {
            b_hat,
            t_hat,
            band_width_hz: 0.0,
            quantum_duration_s: 0.0,
        }
    }

    /// Every slice, band-major.
    pub fn slices(&self) -> Vec<Slice> {
        (0..self.b_hat)
            .flat_map(|b| (0..self.t_hat).map(move |q| Slice::new(b, q)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transmitter {
    pub id: String,
    pub network_id: String,
    pub position: Point,
    pub tx_power_dbm: f64,
    pub band: usize,
    pub active_quanta: BTreeSet<usize>,
    pub pattern: AntennaPattern,
}

impl Transmitter {
    pub fn is_active(&self, slice: Slice) -> bool {
        self.band == slice.band && self.active_quanta.contains(&slice.quantum)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Receiver {
    pub id: String,
    pub network_id: String,
    pub position: Point,
    pub band: usize,
    pub active_quanta: BTreeSet<usize>,
    pub pattern: AntennaPattern,
    /// Receiver-specific SINR threshold.
    pub beta_db: f64,
    pub noise_floor_dbm: f64,
    pub linked_tx_id: String,
}

impl Receiver {
    pub fn is_active(&self, slice: Slice) -> bool {
        self.band == slice.band && self.active_quanta.contains(&slice.quantum)
    }
}

/// An aggregate of RF-links (one transmitter, one or more receivers each).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RfNetwork {
    pub id: String,
    pub transmitters: Vec<Transmitter>,
    pub receivers: Vec<Receiver>,
}

/// The RF-system: every network sharing the discretized spectrum space.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub grid: Grid,
    pub dims: SpectrumSpaceDims,
    pub bounds: PowerBounds,
    pub networks: Vec<RfNetwork>,
    pub propagation: PropagationConfig,
}

impl Scenario {
    pub fn empty(grid: Grid, dims: SpectrumSpaceDims, bounds: PowerBounds) -> Self {
        Self {
            grid,
            dims,
            bounds,
            networks: Vec::new(),
            propagation: PropagationConfig::default(),
        }
    }

    pub fn transmitters(&self) -> impl Iterator<Item = &Transmitter> {
        self.networks.iter().flat_map(|n| n.transmitters.iter())
    }

    pub fn receivers(&self) -> impl Iterator<Item = &Receiver> {
        self.networks.iter().flat_map(|n| n.receivers.iter())
    }

    pub fn transmitter(&self, id: &str) -> Option<&Transmitter> {
        self.transmitters().find(|t| t.id == id)
    }

    pub fn receiver(&self, id: &str) -> Option<&Receiver> {
        self.receivers().find(|r| r.id == id)
    }

    pub fn active_transmitters(&self, slice: Slice) -> impl Iterator<Item = &Transmitter> {
        self.transmitters().filter(move |t| t.is_active(slice))
    }

    pub fn network_mut(&mut self, id: &str) -> &mut RfNetwork {
        match self.networks.iter().position(|n| n.id == id) {
            Some(i) => &mut self.networks[i],
            None => {
                self.networks.push(RfNetwork {
                    id: id.to_string(),
                    ..Default::default()
                });
                self.networks.last_mut().unwrap()
            }
        }
    }

    /// Appends a transmitter to its network, creating the network if needed.
    pub fn add_transmitter(&mut self, tx: Transmitter) {
        let id = tx.network_id.clone();
        self.network_mut(&id).transmitters.push(tx);
    }

    pub fn add_receiver(&mut self, rx: Receiver) {
        let id = rx.network_id.clone();
        self.network_mut(&id).receivers.push(rx);
    }

    /// All transceiver and network ids currently in use.
    pub fn ids(&self) -> BTreeSet<&str> {
        let mut ids: BTreeSet<&str> = self.networks.iter().map(|n| n.id.as_str()).collect();
        ids.extend(self.transmitters().map(|t| t.id.as_str()));
        ids.extend(self.receivers().map(|r| r.id.as_str()));
        ids
    }
}
