use std::collections::BTreeSet;

use super::PolicyError;
use crate::model::{Cell, Point, Scenario, Slice};
use crate::muse::{PowerField, Protected, SliceConstraints};

/// A request for the right to transmit from one position in one band.
#[derive(Debug, Clone, PartialEq)]
pub struct RightsRequest {
    pub tx_id: String,
    pub position: Point,
    pub band: usize,
    pub quanta: BTreeSet<usize>,
    pub desired_dbm: f64,
    pub min_useful_dbm: f64,
}

/// A quantified spectrum-access right: per-slice transmit-power caps per cell.
///
/// The grantee may transmit up to `cap_dbm` from `cell`; every other cell is
/// capped at p_min.
#[derive(Debug, Clone, PartialEq)]
pub struct Grant {
    pub grant_id: String,
    pub grantee_tx_id: String,
    pub cell: Cell,
    pub cap_dbm: f64,
    pub caps: Vec<PowerField>,
    pub margin_db: f64,
    pub issued_at: u64,
}

impl Grant {
    pub fn cap_field(&self, slice: Slice) -> Option<&PowerField> {
        self.caps.iter().find(|f| f.slice == slice)
    }

    pub fn slices(&self) -> impl Iterator<Item = Slice> + '_ {
        self.caps.iter().map(|f| f.slice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefusalReason {
    /// The guarded opportunity is at the floor: nothing can be exercised.
    NoOpportunity,
    /// The cap would fall below the requester's minimum useful power.
    BelowMinimumUseful,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refusal {
    pub tx_id: String,
    pub band: usize,
    pub reason: RefusalReason,
    pub limiting_rx: Option<String>,
    pub guarded_opportunity_dbm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RightsDecision {
    Granted(Grant),
    Refused(Refusal),
}

impl RightsDecision {
    pub fn grant(&self) -> Option<&Grant> {
        match self {
            RightsDecision::Granted(g) => Some(g),
            RightsDecision::Refused(_) => None,
        }
    }
}

/// Guarded opportunity at the request cell over every requested quantum;
/// grants min(desired, guarded) or refuses.
pub fn define_rights(
    scenario: &Scenario,
    request: &RightsRequest,
    margin_db: f64,
    protected: &Protected,
    issued_at: u64,
) -> Result<RightsDecision, PolicyError> {
    if !(margin_db >= 0.0) {
        return Err(PolicyError::NegativeMargin(margin_db));
    }
    if request.quanta.is_empty() {
        return Err(PolicyError::EmptyQuanta(request.tx_id.clone()));
    }
    let bounds = &scenario.bounds;
    let grid = &scenario.grid;
    let cell = grid.cell_of(&request.position).map_err(crate::muse::MuseError::from)?;

    let mut guarded = f64::INFINITY;
    let mut limiting = None;
    for &q in &request.quanta {
        let slice = Slice::new(request.band, q);
        let at = SliceConstraints::build(scenario, slice, protected)?.at_cell(cell);
        let g = (at.dbm - margin_db).max(bounds.p_min_dbm);
        if g < guarded {
            guarded = g;
            limiting = at.limiting;
        }
    }

    let cap = request.desired_dbm.min(guarded);
    let refuse = |reason| {
        Ok(RightsDecision::Refused(Refusal {
            tx_id: request.tx_id.clone(),
            band: request.band,
            reason,
            limiting_rx: limiting.clone(),
            guarded_opportunity_dbm: guarded,
        }))
    };
    if guarded <= bounds.p_min_dbm {
        return refuse(RefusalReason::NoOpportunity);
    }
    if cap < request.min_useful_dbm {
        return refuse(RefusalReason::BelowMinimumUseful);
    }

    let idx = grid.index(cell);
    let caps = request
        .quanta
        .iter()
        .map(|&q| {
            let mut values = vec![bounds.p_min_dbm; grid.a_hat()];
            values[idx] = cap;
            PowerField::from_dbm(grid, Slice::new(request.band, q), values, bounds)
        })
        .collect();
    Ok(RightsDecision::Granted(Grant {
        grant_id: format!("{}@{}", request.tx_id, issued_at),
        grantee_tx_id: request.tx_id.clone(),
        cell,
        cap_dbm: cap,
        caps,
        margin_db,
        issued_at,
    }))
}
