use super::{admission_order, entrant, entrant_id, AccessRequest, AdmissionOutcome, RefusalDetail, RequestDecision, RequestStatus};
use crate::model::{Scenario, Slice};
use crate::muse::{available_spectrum, occupancy_at, Protected};
use crate::policy::Grant;

/// Binary detect-and-transmit baseline.
///
/// A band is usable when the aggregate occupancy sensed at the requester's
/// cell center is below `sensitivity_dbm` in every requested quantum. Usable
/// bands are admitted at full desired power, quietest first; receivers are
/// never consulted. `protected` only scopes the post-admission availability.
pub fn admit_osa(
    scenario: &Scenario,
    requests: &[AccessRequest],
    sensitivity_dbm: f64,
    protected: &Protected,
) -> (AdmissionOutcome, Scenario) {
    let mut current = scenario.clone();
    let mut decisions = Vec::with_capacity(requests.len());
    for (step, request) in admission_order(requests).into_iter().enumerate() {
        let Ok(cell) = current.grid.cell_of(&request.position) else {
            decisions.push(RequestDecision {
                request_id: request.request_id.clone(),
                status: RequestStatus::Refused(vec![RefusalDetail::NotEnoughBands {
                    usable: 0,
                    required: request.required_bands,
                }]),
            });
            continue;
        };
        let probe = current.grid.center(cell);
        let mut idle = Vec::new();
        let mut refusals = Vec::new();
        for &band in &request.acceptable_bands {
            let sensed = request
                .slices(band)
                .filter_map(|s: Slice| occupancy_at(&current, s, probe).ok())
                .fold(f64::NEG_INFINITY, f64::max);
            if sensed < sensitivity_dbm {
                idle.push((band, sensed));
            } else {
                refusals.push(RefusalDetail::SensedBusy {
                    band,
                    occupancy_dbm: sensed,
                    sensitivity_dbm,
                });
            }
        }

        let status = if idle.len() >= request.required_bands {
            idle.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            idle.truncate(request.required_bands);
            idle.sort_by_key(|(band, _)| *band);
            let bounds = &current.bounds;
            let grants: Vec<Grant> = idle
                .iter()
                .map(|&(band, _)| {
                    let tx_id = entrant_id(&request.request_id, band);
                    let idx = current.grid.index(cell);
                    let caps = request
                        .slices(band)
                        .map(|s| {
                            let mut v = vec![bounds.p_min_dbm; current.grid.a_hat()];
                            v[idx] = request.desired_dbm;
                            crate::muse::PowerField::from_dbm(&current.grid, s, v, bounds)
                        })
                        .collect();
                    Grant {
                        grant_id: format!("{tx_id}@{step}"),
                        grantee_tx_id: tx_id,
                        cell,
                        cap_dbm: request.desired_dbm,
                        caps,
                        margin_db: 0.0,
                        issued_at: step as u64,
                    }
                })
                .collect();
            for &(band, _) in &idle {
                let tx = entrant(&current, request, band, cell, request.desired_dbm);
                current.add_transmitter(tx);
            }
            RequestStatus::Admitted(grants)
        } else {
            refusals.push(RefusalDetail::NotEnoughBands {
                usable: idle.len(),
                required: request.required_bands,
            });
            RequestStatus::Refused(refusals)
        };
        decisions.push(RequestDecision {
            request_id: request.request_id.clone(),
            status,
        });
    }
    let admitted_count = decisions.iter().filter(|d| d.is_admitted()).count();
    let available_after = available_spectrum(&current, protected);
    (
        AdmissionOutcome {
            decisions,
            admitted_count,
            available_after,
        },
        current,
    )
}
