use crate::interference::{interference_contributions, link_budget};
use crate::model::{Receiver, Scenario};

/// Per-transmitter share of the harmful interference at one receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribution {
    pub rx_id: String,
    pub quantum: usize,
    pub sinr_db: f64,
    pub interference_mw: f64,
    pub allowed_mw: f64,
    /// Interference above what the receiver tolerates; zero when SINR ≥ β.
    pub excess_mw: f64,
    pub shares: Vec<(String, f64)>,
}

/// Splits `max(0, I − allowed)` across interferers in proportion to their
/// contribution. Returns the excess and the shares.
pub fn proportional_shares(contributions: &[(String, f64)], allowed_mw: f64) -> (f64, Vec<(String, f64)>) {
    let total: f64 = contributions.iter().map(|(_, p)| p).sum();
    let excess = (total - allowed_mw).max(0.0);
    let shares = contributions
        .iter()
        .map(|(id, p)| {
            let share = if total > 0.0 { p / total * excess } else { 0.0 };
            (id.clone(), share)
        })
        .collect();
    (excess, shares)
}

/// Attributes the excess interference at `rx` in `quantum` to the active
/// co-channel transmitters.
pub fn attribute_harmful_interference(rx: &Receiver, scenario: &Scenario, quantum: usize) -> Attribution {
    let budget = link_budget(scenario, rx, quantum);
    let contributions: Vec<(String, f64)> = interference_contributions(scenario, rx, quantum)
        .into_iter()
        .map(|(t, p)| (t.id.clone(), p))
        .collect();
    let allowed = budget.allowed_interference_mw();
    let (excess, shares) = if budget.meets_threshold() {
        (0.0, contributions.iter().map(|(id, _)| (id.clone(), 0.0)).collect())
    } else {
        proportional_shares(&contributions, allowed)
    };
    Attribution {
        rx_id: rx.id.clone(),
        quantum,
        sinr_db: budget.sinr_db(),
        interference_mw: budget.interference_mw,
        allowed_mw: allowed,
        excess_mw: excess,
        shares,
    }
}
