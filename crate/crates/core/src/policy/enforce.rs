use std::collections::BTreeSet;

use super::Grant;
use crate::model::{Cell, Scenario, Slice};

pub const DEFAULT_TOLERANCE_DB: f64 = 0.5;

/// An observed transmission exceeding its granted cap.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// `None` for transmissions with no grant covering the slice.
    pub grant_id: Option<String>,
    pub tx_id: String,
    /// `None` when the transmitter is outside the grid.
    pub cell: Option<Cell>,
    pub slice: Slice,
    pub granted_dbm: f64,
    pub observed_dbm: f64,
    pub excess_db: f64,
}

/// Compares observed transmit powers against grant caps.
///
/// Transmitters listed in `licensed` are incumbents and never checked.
/// Every other transmitter is checked in each slice it occupies: against the
/// cap at its cell when a grant covers that slice, otherwise against p_min.
pub fn enforce(
    grants: &[Grant],
    observed: &Scenario,
    licensed: &BTreeSet<String>,
    tolerance_db: f64,
) -> Vec<Violation> {
    let p_min = observed.bounds.p_min_dbm;
    let mut out = Vec::new();
    for tx in observed.transmitters().filter(|t| !licensed.contains(&t.id)) {
        let cell = observed.grid.cell_of(&tx.position).ok();
        let own: Vec<&Grant> = grants.iter().filter(|g| g.grantee_tx_id == tx.id).collect();
        for &q in &tx.active_quanta {
            let slice = Slice::new(tx.band, q);
            let covering = own
                .iter()
                .find_map(|g| g.cap_field(slice).map(|f| (g.grant_id.clone(), f)));
            let (grant_id, granted) = match (covering, cell) {
                (Some((id, field)), Some(c)) => (Some(id), field.at(c)),
                (Some((id, _)), None) => (Some(id), p_min),
                (None, _) => (None, p_min),
            };
            let excess = tx.tx_power_dbm - granted;
            if excess > tolerance_db {
                out.push(Violation {
                    grant_id,
                    tx_id: tx.id.clone(),
                    cell,
                    slice,
                    granted_dbm: granted,
                    observed_dbm: tx.tx_power_dbm,
                    excess_db: excess,
                });
            }
        }
    }
    out
}
