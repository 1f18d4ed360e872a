//! Receiver link budgets: desired signal, co-channel interference, noise and
//! the interference margin left before SINR drops below β.

use crate::model::{Receiver, Scenario, Slice, Transmitter};
use crate::propagation::link_gain_linear;
use crate::units::{db, lin};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub signal_mw: f64,
    pub interference_mw: f64,
    pub noise_mw: f64,
    pub beta_lin: f64,
}

impl LinkBudget {
    pub fn sinr_db(&self) -> f64 {
        db(self.signal_mw / (self.interference_mw + self.noise_mw))
    }

    /// Total interference the receiver tolerates: lin(S)/β − N, floored at 0.
    pub fn allowed_interference_mw(&self) -> f64 {
        (self.signal_mw / self.beta_lin - self.noise_mw).max(0.0)
    }

    /// Interference headroom left for new entrants.
    pub fn margin_mw(&self) -> f64 {
        (self.allowed_interference_mw() - self.interference_mw).max(0.0)
    }

    pub fn meets_threshold(&self) -> bool {
        self.signal_mw >= self.beta_lin * (self.interference_mw + self.noise_mw)
    }
}

/// Linear power `tx` delivers into `rx`, both patterns applied.
pub fn power_at_receiver(tx: &Transmitter, rx: &Receiver, scenario: &Scenario) -> f64 {
    lin(tx.tx_power_dbm)
        * link_gain_linear(
            tx.position,
            &tx.pattern,
            rx.position,
            &rx.pattern,
            &scenario.propagation,
        )
}

/// Per-transmitter co-channel interference into `rx` during `quantum`.
pub fn interference_contributions<'a>(
    scenario: &'a Scenario,
    rx: &Receiver,
    quantum: usize,
) -> Vec<(&'a Transmitter, f64)> {
    let slice = Slice::new(rx.band, quantum);
    scenario
        .active_transmitters(slice)
        .filter(|t| t.id != rx.linked_tx_id)
        .map(|t| (t, power_at_receiver(t, rx, scenario)))
        .collect()
}

/// Link budget of `rx` in `quantum`. The desired signal comes from the linked
/// transmitter through the same propagation model.
pub fn link_budget(scenario: &Scenario, rx: &Receiver, quantum: usize) -> LinkBudget {
    let signal_mw = scenario
        .transmitter(&rx.linked_tx_id)
        .filter(|t| t.is_active(Slice::new(rx.band, quantum)))
        .map(|t| power_at_receiver(t, rx, scenario))
        .unwrap_or(0.0);
    let interference_mw = interference_contributions(scenario, rx, quantum)
        .iter()
        .map(|(_, p)| p)
        .sum();
    LinkBudget {
        signal_mw,
        interference_mw,
        noise_mw: lin(rx.noise_floor_dbm),
        beta_lin: lin(rx.beta_db),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;
    use approx::assert_relative_eq;

    pub(crate) fn canonical() -> Scenario {
        let mut s = Scenario::empty(
            Grid::new(Point::new(0.0, 0.0), 100.0, 10, 10),
            SpectrumSpaceDims::new(1, 1),
            PowerBounds::new(30.0, -125.0),
        );
        // 30 dBm transmitter 100 m from its receiver ⇒ S = −50 dBm
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

    #[test]
    fn canonical_margin() {
        let s = canonical();
        let rx = s.receiver("r1").unwrap();
        let lb = link_budget(&s, rx, 0);
        assert_relative_eq!(db(lb.signal_mw), -50.0, epsilon = 1e-9);
        assert_eq!(lb.interference_mw, 0.0);
        assert_relative_eq!(lb.sinr_db(), 50.0, epsilon = 1e-9);
        assert_relative_eq!(db(lb.margin_mw()), -60.000434, epsilon = 1e-6);
        assert!(lb.meets_threshold());
    }

    #[test]
    fn interferer_reduces_margin() {
        let mut s = canonical();
        s.add_transmitter(Transmitter {
            id: "t2".into(),
            network_id: "n2".into(),
            position: Point::new(250.0, 650.0),
            tx_power_dbm: 0.0,
            band: 0,
            active_quanta: [0].into(),
            pattern: AntennaPattern::Omni,
        });
        let rx = s.receiver("r1").unwrap();
        let lb = link_budget(&s, rx, 0);
        assert_relative_eq!(lb.interference_mw, 1e-8, max_relative = 1e-12);
        let contribs = interference_contributions(&s, rx, 0);
        assert_eq!(contribs.len(), 1);
        assert_eq!(contribs[0].0.id, "t2");
        assert_relative_eq!(lb.margin_mw(), 1e-6 - 1e-10 - 1e-8, max_relative = 1e-12);
    }
}
