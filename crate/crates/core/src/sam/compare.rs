use super::{admit_osa, admit_quantified, AccessRequest, AdmissionOutcome, ENTRANT_NETWORK, SINR_SLACK_DB};
use crate::interference::link_budget;
use crate::model::Scenario;
use crate::muse::{quantify, tx_consumption, ConsumptionSpace, EntitySet, Protected, SpectrumQuantity};
use crate::policy::PolicyError;

/// A protected receiver pushed below β by admitted entrants.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrViolation {
    pub rx_id: String,
    pub quantum: usize,
    pub sinr_db: f64,
    pub beta_db: f64,
    pub deficit_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicySummary {
    pub outcome: AdmissionOutcome,
    pub admitted: usize,
    /// Spectrum consumed by the admitted entrants together.
    pub exploited: SpectrumQuantity,
    pub violations: Vec<SinrViolation>,
}

impl PolicySummary {
    pub fn total_deficit_db(&self) -> f64 {
        self.violations.iter().map(|v| v.deficit_db).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyComparison {
    pub quantified: PolicySummary,
    pub osa: PolicySummary,
}

/// Receivers (and quanta) meeting β in `before` but not in `after`.
pub fn induced_violations(before: &Scenario, after: &Scenario, protected: &Protected) -> Vec<SinrViolation> {
    let mut out = Vec::new();
    for rx in after.receivers().filter(|r| protected.includes(r)) {
        for &q in &rx.active_quanta {
            let now = link_budget(after, rx, q).sinr_db();
            if now >= rx.beta_db - SINR_SLACK_DB {
                continue;
            }
            let was_ok = before
                .receiver(&rx.id)
                .map(|r0| link_budget(before, r0, q).sinr_db() >= rx.beta_db - SINR_SLACK_DB)
                .unwrap_or(true);
            if was_ok {
                out.push(SinrViolation {
                    rx_id: rx.id.clone(),
                    quantum: q,
                    sinr_db: now,
                    beta_db: rx.beta_db,
                    deficit_db: rx.beta_db - now,
                });
            }
        }
    }
    out
}

fn exploited(after: &Scenario) -> SpectrumQuantity {
    let bands: Vec<usize> = (0..after.dims.b_hat).collect();
    let quanta: Vec<usize> = (0..after.dims.t_hat).collect();
    let mut acc = ConsumptionSpace::new(EntitySet::Ids(Default::default()), &after.grid);
    for tx in after.transmitters().filter(|t| t.network_id == ENTRANT_NETWORK) {
        let cs = tx_consumption(tx, after, &bands, &quanta);
        acc = acc.merge(&cs, &after.bounds).expect("same grid");
    }
    quantify(&acc, &after.grid).expect("same grid")
}

fn summarize(before: &Scenario, outcome: AdmissionOutcome, after: &Scenario, protected: &Protected) -> PolicySummary {
    PolicySummary {
        admitted: outcome.admitted_count,
        exploited: exploited(after),
        violations: induced_violations(before, after, protected),
        outcome,
    }
}

/// Runs both admission policies on identical inputs.
pub fn compare_policies(
    scenario: &Scenario,
    requests: &[AccessRequest],
    margin_db: f64,
    sensitivity_dbm: f64,
    protected: &Protected,
) -> Result<PolicyComparison, PolicyError> {
    let (q_out, q_after) = admit_quantified(scenario, requests, margin_db, protected)?;
    let (o_out, o_after) = admit_osa(scenario, requests, sensitivity_dbm, protected);
    Ok(PolicyComparison {
        quantified: summarize(scenario, q_out, &q_after, protected),
        osa: summarize(scenario, o_out, &o_after, protected),
    })
}
