//! Spectrum-access mechanisms: sequential quantified admission of request
//! batches, cross-band opportunity aggregation, and the binary
//! detect-and-transmit baseline used for comparison.

mod aggregate;
mod compare;
mod osa;
mod quantified;

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::model::{AntennaPattern, Cell, Point, Scenario, Slice, Transmitter};
use crate::muse::SpectrumQuantity;
use crate::policy::{Grant, Refusal};

pub use aggregate::{aggregate_opportunity, AggregateOpportunity, SliceOpportunity};
pub use compare::{compare_policies, induced_violations, PolicyComparison, PolicySummary, SinrViolation};
pub use osa::admit_osa;
pub use quantified::admit_quantified;

/// Network that admitted entrants join.
pub const ENTRANT_NETWORK: &str = "sam-entrants";

/// Slack on the SINR threshold when rechecking receivers after admission.
pub const SINR_SLACK_DB: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct AccessRequest {
    pub request_id: String,
    pub position: Point,
    pub desired_dbm: f64,
    pub min_useful_dbm: f64,
    pub required_bands: usize,
    pub acceptable_bands: BTreeSet<usize>,
    pub quanta: BTreeSet<usize>,
    /// Lower ranks are served first; ties go by request id.
    pub priority: u32,
}

impl AccessRequest {
    pub fn slices(&self, band: usize) -> impl Iterator<Item = Slice> + '_ {
        self.quanta.iter().map(move |&q| Slice::new(band, q))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RefusalDetail {
    /// The quantified rights check refused this band.
    Rights(Refusal),
    /// The baseline sensed the band busy at the requester's cell.
    SensedBusy {
        band: usize,
        occupancy_dbm: f64,
        sensitivity_dbm: f64,
    },
    /// Fewer usable bands than required; nothing is granted.
    NotEnoughBands { usable: usize, required: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RequestStatus {
    /// One grant per admitted band.
    Admitted(Vec<Grant>),
    Refused(Vec<RefusalDetail>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RequestDecision {
    pub request_id: String,
    pub status: RequestStatus,
}

impl RequestDecision {
    pub fn is_admitted(&self) -> bool {
        matches!(self.status, RequestStatus::Admitted(_))
    }

    pub fn grants(&self) -> &[Grant] {
        match &self.status {
            RequestStatus::Admitted(g) => g,
            RequestStatus::Refused(_) => &[],
        }
    }
}

/// Result of admitting one batch, in processing order.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissionOutcome {
    pub decisions: Vec<RequestDecision>,
    pub admitted_count: usize,
    pub available_after: SpectrumQuantity,
}

impl AdmissionOutcome {
    pub fn grants(&self) -> impl Iterator<Item = &Grant> {
        self.decisions.iter().flat_map(|d| d.grants())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RequestError {
    #[error("duplicate request id {0}")]
    DuplicateRequest(String),
    #[error("{0}: min useful power exceeds desired power")]
    MinAboveDesired(String),
    #[error("{0}: desired power outside [p_min, p_max]")]
    DesiredOutOfBounds(String),
    #[error("{id}: requires {required} bands but accepts {acceptable}")]
    TooManyBandsRequired {
        id: String,
        required: usize,
        acceptable: usize,
    },
    #[error("{0}: required band count must be at least 1")]
    NoBandsRequired(String),
    #[error("{id}: band {band} out of range")]
    BandOutOfRange { id: String, band: usize },
    #[error("{id}: quantum {quantum} out of range")]
    QuantumOutOfRange { id: String, quantum: usize },
    #[error("{0}: no time quanta requested")]
    NoQuanta(String),
    #[error("{0}: position outside the grid")]
    OutsideGrid(String),
    #[error("{0}: entrant id collides with an existing id")]
    IdCollision(String),
}

/// Checks a request batch against a scenario, reporting every problem.
pub fn validate_requests(scenario: &Scenario, requests: &[AccessRequest]) -> Vec<RequestError> {
    use RequestError as E;
    let mut errs = Vec::new();
    let mut seen = HashSet::new();
    let existing = scenario.ids();
    for r in requests {
        let id = &r.request_id;
        if !seen.insert(id.as_str()) {
            errs.push(E::DuplicateRequest(id.clone()));
        }
        if r.min_useful_dbm > r.desired_dbm {
            errs.push(E::MinAboveDesired(id.clone()));
        }
        let b = scenario.bounds;
        if !(r.desired_dbm >= b.p_min_dbm && r.desired_dbm <= b.p_max_dbm) {
            errs.push(E::DesiredOutOfBounds(id.clone()));
        }
        if r.required_bands == 0 {
            errs.push(E::NoBandsRequired(id.clone()));
        }
        if r.required_bands > r.acceptable_bands.len() {
            errs.push(E::TooManyBandsRequired {
                id: id.clone(),
                required: r.required_bands,
                acceptable: r.acceptable_bands.len(),
            });
        }
        for &band in r.acceptable_bands.iter().filter(|&&b| b >= scenario.dims.b_hat) {
            errs.push(E::BandOutOfRange { id: id.clone(), band });
        }
        for &quantum in r.quanta.iter().filter(|&&q| q >= scenario.dims.t_hat) {
            errs.push(E::QuantumOutOfRange {
                id: id.clone(),
                quantum,
            });
        }
        if r.quanta.is_empty() {
            errs.push(E::NoQuanta(id.clone()));
        }
        if scenario.grid.cell_of(&r.position).is_err() {
            errs.push(E::OutsideGrid(id.clone()));
        }
        if r.acceptable_bands
            .iter()
            .any(|&b| existing.contains(entrant_id(id, b).as_str()))
        {
            errs.push(E::IdCollision(id.clone()));
        }
    }
    errs
}

/// Transmitter id given to the entrant admitted for `request_id` in `band`.
pub fn entrant_id(request_id: &str, band: usize) -> String {
    format!("{request_id}/b{band}")
}

/// Requests in service order: ascending priority rank, then request id.
pub fn admission_order(requests: &[AccessRequest]) -> Vec<&AccessRequest> {
    let mut order: Vec<&AccessRequest> = requests.iter().collect();
    order.sort_by(|a, b| {
        a.priority
            .cmp(&b.priority)
            .then_with(|| a.request_id.cmp(&b.request_id))
    });
    order
}

/// Omni entrant transmitting from the center of `cell`.
pub(crate) fn entrant(scenario: &Scenario, request: &AccessRequest, band: usize, cell: Cell, power_dbm: f64) -> Transmitter {
    Transmitter {
        id: entrant_id(&request.request_id, band),
        network_id: ENTRANT_NETWORK.to_string(),
        position: scenario.grid.center(cell),
        tx_power_dbm: power_dbm,
        band,
        active_quanta: request.quanta.clone(),
        pattern: AntennaPattern::Omni,
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::model::*;

    pub fn request(id: &str, x: f64, y: f64, desired: f64, min_useful: f64) -> AccessRequest {
        AccessRequest {
            request_id: id.into(),
            position: Point::new(x, y),
            desired_dbm: desired,
            min_useful_dbm: min_useful,
            required_bands: 1,
            acceptable_bands: [0].into(),
            quanta: [0].into(),
            priority: 0,
        }
    }

    /// One link in band 0: t1 at (150, 550), r1 at (250, 550), S = −50 dBm.
    pub fn canonical() -> Scenario {
        let mut s = Scenario::empty(
            Grid::new(Point::new(0.0, 0.0), 100.0, 10, 10),
            SpectrumSpaceDims::new(2, 1),
            PowerBounds::new(30.0, -125.0),
        );
        s.add_transmitter(Transmitter {
            id: "t1".into(),
            network_id: "n1".into(),
            position: Point::new(150.0, 550.0),
            tx_power_dbm: 30.0,
            band: 0,
            active_quanta: [0].into(),
            pattern: AntennaPattern::Omni,
        });
        s.add_receiver(Receiver {
            id: "r1".into(),
            network_id: "n1".into(),
            position: Point::new(250.0, 550.0),
            band: 0,
            active_quanta: [0].into(),
            pattern: AntennaPattern::Omni,
            beta_db: 10.0,
            noise_floor_dbm: -100.0,
            linked_tx_id: "t1".into(),
        });
        s
    }
}
