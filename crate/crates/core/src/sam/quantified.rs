use super::{admission_order, entrant, entrant_id, AccessRequest, AdmissionOutcome, RefusalDetail, RequestDecision, RequestStatus};
use crate::model::Scenario;
use crate::muse::{available_spectrum, Protected};
use crate::policy::{define_rights, Grant, PolicyError, RightsDecision, RightsRequest};

/// Greedy quantified admission.
///
/// Requests are served in priority order against the scenario augmented with
/// every entrant admitted so far. A request is admitted only if at least
/// `required_bands` of its acceptable bands can be granted; the bands with
/// the highest caps are taken. Entrants transmit at their cap from the
/// center of the requested cell.
pub fn admit_quantified(
    scenario: &Scenario,
    requests: &[AccessRequest],
    margin_db: f64,
    protected: &Protected,
) -> Result<(AdmissionOutcome, Scenario), PolicyError> {
    let mut current = scenario.clone();
    let mut decisions = Vec::with_capacity(requests.len());
    for (step, request) in admission_order(requests).into_iter().enumerate() {
        let mut granted: Vec<Grant> = Vec::new();
        let mut refusals = Vec::new();
        for &band in &request.acceptable_bands {
            let rights = RightsRequest {
                tx_id: entrant_id(&request.request_id, band),
                position: request.position,
                band,
                quanta: request.quanta.clone(),
                desired_dbm: request.desired_dbm,
                min_useful_dbm: request.min_useful_dbm,
            };
            match define_rights(&current, &rights, margin_db, protected, step as u64)? {
                RightsDecision::Granted(g) => granted.push(g),
                RightsDecision::Refused(r) => refusals.push(RefusalDetail::Rights(r)),
            }
        }

        let status = if granted.len() >= request.required_bands {
            granted.sort_by(|a, b| {
                b.cap_dbm
                    .total_cmp(&a.cap_dbm)
                    .then_with(|| band_of(a).cmp(&band_of(b)))
            });
            granted.truncate(request.required_bands);
            granted.sort_by_key(band_of);
            for g in &granted {
                current.add_transmitter(entrant(&current, request, band_of(g), g.cell, g.cap_dbm));
            }
            RequestStatus::Admitted(granted)
        } else {
            refusals.push(RefusalDetail::NotEnoughBands {
                usable: granted.len(),
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
    Ok((
        AdmissionOutcome {
            decisions,
            admitted_count,
            available_after,
        },
        current,
    ))
}

fn band_of(g: &Grant) -> usize {
    g.caps.first().map(|f| f.slice.band).unwrap_or(0)
}
