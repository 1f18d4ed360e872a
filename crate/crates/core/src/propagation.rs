//! Deterministic log-distance path gain between points.

use crate::model::{AntennaPattern, Point, Transmitter};
use crate::units::{db, lin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathLossModel {
    /// Log-distance with the exponent fixed at 2.
    FreeSpace,
    #[default]
    LogDistance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    pub model: PathLossModel,
    /// Ignored by [`PathLossModel::FreeSpace`].
    pub path_loss_exponent: f64,
    pub reference_distance_m: f64,
    pub reference_loss_db: f64,
    pub min_distance_clamp_m: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self {
            model: PathLossModel::LogDistance,
            path_loss_exponent: 2.0,
            reference_distance_m: 1.0,
            reference_loss_db: 40.0,
            min_distance_clamp_m: 1.0,
        }
    }
}

impl PropagationConfig {
    pub fn exponent(&self) -> f64 {
        match self.model {
            PathLossModel::FreeSpace => 2.0,
            PathLossModel::LogDistance => self.path_loss_exponent,
        }
    }

    pub(crate) fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.model == PathLossModel::LogDistance && !(self.path_loss_exponent >= 1.0) {
            out.push(format!(
                "path_loss_exponent must be >= 1, got {}",
                self.path_loss_exponent
            ));
        }
        if !(self.reference_distance_m > 0.0 && self.reference_distance_m.is_finite()) {
            out.push(format!(
                "reference_distance must be positive, got {}",
                self.reference_distance_m
            ));
        }
        if !(self.min_distance_clamp_m > 0.0 && self.min_distance_clamp_m.is_finite()) {
            out.push(format!(
                "min_distance_clamp must be positive, got {}",
                self.min_distance_clamp_m
            ));
        }
        if !self.reference_loss_db.is_finite() {
            out.push("reference_loss must be finite".to_string());
        }
        out
    }
}

/// PL0 + 10·n·log10(max(d, clamp)/d0).
pub fn path_loss_db(distance_m: f64, cfg: &PropagationConfig) -> f64 {
    let d = distance_m.max(cfg.min_distance_clamp_m);
    cfg.reference_loss_db + 10.0 * cfg.exponent() * (d / cfg.reference_distance_m).log10()
}

/// Linear gain from a transmitting antenna at `from` to a receiving antenna
/// at `to`, including both pattern gains.
pub fn link_gain_linear(
    from: Point,
    from_pattern: &AntennaPattern,
    to: Point,
    to_pattern: &AntennaPattern,
    cfg: &PropagationConfig,
) -> f64 {
    let tx_gain = from_pattern.gain_db(from.bearing_to(&to));
    let rx_gain = to_pattern.gain_db(to.bearing_to(&from));
    lin(tx_gain + rx_gain - path_loss_db(from.distance(&to), cfg))
}

/// Gain from `tx` to an omni probe at `point`.
pub fn tx_gain_to(tx: &Transmitter, point: Point, cfg: &PropagationConfig) -> f64 {
    link_gain_linear(tx.position, &tx.pattern, point, &AntennaPattern::Omni, cfg)
}

/// Unclipped received power at `point`, dBm.
pub fn received_power_dbm(tx: &Transmitter, point: Point, cfg: &PropagationConfig) -> f64 {
    db(lin(tx.tx_power_dbm) * tx_gain_to(tx, point, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg() -> PropagationConfig {
        PropagationConfig::default()
    }

    fn tx_at(p: Point, pattern: AntennaPattern) -> Transmitter {
        Transmitter {
            id: "t".into(),
            network_id: "n".into(),
            position: p,
            tx_power_dbm: 30.0,
            band: 0,
            active_quanta: [0].into(),
            pattern,
        }
    }

    #[test]
    fn path_loss_examples() {
        assert_eq!(path_loss_db(1.0, &cfg()), 40.0);
        assert_relative_eq!(path_loss_db(100.0, &cfg()), 80.0, epsilon = 1e-12);
        assert_eq!(path_loss_db(0.0, &cfg()), 40.0);
    }

    #[test]
    fn gain_examples() {
        let o = Point::new(0.0, 0.0);
        let p = Point::new(100.0, 0.0);
        let omni = AntennaPattern::Omni;
        assert_relative_eq!(link_gain_linear(o, &omni, p, &omni, &cfg()), 1e-8, max_relative = 1e-12);

        let sector = AntennaPattern::Sectored {
            boresight_deg: 0.0,
            beamwidth_deg: 60.0,
            main_gain_db: 6.0,
            back_gain_db: -20.0,
        };
        assert_relative_eq!(
            link_gain_linear(o, &sector, p, &omni, &cfg()),
            10f64.powf(-7.4),
            max_relative = 1e-12
        );
        let behind = Point::new(-100.0, 0.0);
        assert_relative_eq!(
            link_gain_linear(o, &sector, behind, &omni, &cfg()),
            1e-10,
            max_relative = 1e-12
        );
        // receive pattern is evaluated towards the transmitter
        assert_relative_eq!(
            link_gain_linear(behind, &omni, o, &sector, &cfg()),
            1e-10,
            max_relative = 1e-12
        );
    }

    #[test]
    fn received_power_examples() {
        let t = tx_at(Point::new(0.0, 0.0), AntennaPattern::Omni);
        assert_relative_eq!(received_power_dbm(&t, Point::new(0.0, 100.0), &cfg()), -50.0, epsilon = 1e-9);
        assert_relative_eq!(received_power_dbm(&t, Point::new(0.0, 0.0), &cfg()), -10.0, epsilon = 1e-9);
        let null = tx_at(
            Point::new(0.0, 0.0),
            AntennaPattern::Sectored {
                boresight_deg: 180.0,
                beamwidth_deg: 10.0,
                main_gain_db: 0.0,
                back_gain_db: -300.0,
            },
        );
        let p = received_power_dbm(&null, Point::new(1.0, 0.0), &cfg());
        assert_relative_eq!(p, -310.0, epsilon = 1e-9);
    }

    #[test]
    fn invalid_configs() {
        let mut c = cfg();
        c.path_loss_exponent = 0.5;
        c.min_distance_clamp_m = 0.0;
        c.reference_distance_m = -1.0;
        assert_eq!(c.problems().len(), 3);
        c.model = PathLossModel::FreeSpace;
        assert_eq!(c.problems().len(), 2);
    }

    proptest! {
        #[test]
        fn free_space_is_exponent_two(d in 0.0f64..1e5) {
            let mut fs = cfg();
            fs.model = PathLossModel::FreeSpace;
            fs.path_loss_exponent = 3.7;
            let mut ld = cfg();
            ld.path_loss_exponent = 2.0;
            prop_assert_eq!(path_loss_db(d, &fs), path_loss_db(d, &ld));
        }

        #[test]
        fn monotone_beyond_clamp(a in 1.0f64..1e5, b in 1.0f64..1e5, n in 1.0f64..6.0) {
            let mut c = cfg();
            c.path_loss_exponent = n;
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(path_loss_db(lo, &c) <= path_loss_db(hi, &c));
        }

        #[test]
        fn reciprocal(ax in -1e3f64..1e3, ay in -1e3f64..1e3, bx in -1e3f64..1e3, by in -1e3f64..1e3) {
            let a = Point::new(ax, ay);
            let b = Point::new(bx, by);
            let o = AntennaPattern::Omni;
            prop_assert_eq!(path_loss_db(a.distance(&b), &cfg()), path_loss_db(b.distance(&a), &cfg()));
            prop_assert_eq!(link_gain_linear(a, &o, b, &o, &cfg()), link_gain_linear(b, &o, a, &o, &cfg()));
        }
    }
}
