/// Horizontal antenna gain pattern.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum AntennaPattern {
    #[default]
    Omni,
    /// Ideal sector: `main_gain_db` within ±beamwidth/2 of boresight,
    /// `back_gain_db` elsewhere.
    Sectored {
        boresight_deg: f64,
        beamwidth_deg: f64,
        main_gain_db: f64,
        back_gain_db: f64,
    },
}

impl AntennaPattern {
    /// Gain in dB towards `bearing_deg` (counter-clockwise from +x).
    pub fn gain_db(&self, bearing_deg: f64) -> f64 {
        match *self {
            AntennaPattern::Omni => 0.0,
            AntennaPattern::Sectored {
                boresight_deg,
                beamwidth_deg,
                main_gain_db,
                back_gain_db,
            } => {
                let off = angular_offset(bearing_deg, boresight_deg);
                if off <= beamwidth_deg / 2.0 {
                    main_gain_db
                } else {
                    back_gain_db
                }
            }
        }
    }

    pub(crate) fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let AntennaPattern::Sectored {
            boresight_deg,
            beamwidth_deg,
            main_gain_db,
            back_gain_db,
        } = *self
        {
            if !(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0) {
                out.push(format!("beamwidth {beamwidth_deg} outside (0, 360]"));
            }
            if ![boresight_deg, main_gain_db, back_gain_db]
                .iter()
                .all(|v| v.is_finite())
            {
                out.push("non-finite pattern parameter".to_string());
            }
        }
        out
    }
}

/// Absolute angular distance in degrees, in [0, 180].
fn angular_offset(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sector() -> AntennaPattern {
        AntennaPattern::Sectored {
            boresight_deg: 90.0,
            beamwidth_deg: 60.0,
            main_gain_db: 6.0,
            back_gain_db: -20.0,
        }
    }

    #[test]
    fn omni_is_flat() {
        for b in [-180.0, 0.0, 33.0, 359.0] {
            assert_eq!(AntennaPattern::Omni.gain_db(b), 0.0);
        }
    }

    #[test]
    fn sector_edges() {
        let s = sector();
        assert_eq!(s.gain_db(90.0), 6.0);
        assert_eq!(s.gain_db(120.0), 6.0);
        assert_eq!(s.gain_db(60.0), 6.0);
        assert_eq!(s.gain_db(121.0), -20.0);
        assert_eq!(s.gain_db(-90.0), -20.0);
        assert_eq!(s.gain_db(90.0 + 360.0), 6.0);
    }

    #[test]
    fn wraps_around_zero() {
        let s = AntennaPattern::Sectored {
            boresight_deg: 350.0,
            beamwidth_deg: 40.0,
            main_gain_db: 3.0,
            back_gain_db: -10.0,
        };
        assert_eq!(s.gain_db(5.0), 3.0);
        assert_eq!(s.gain_db(-15.0), 3.0);
        assert_eq!(s.gain_db(20.0), -10.0);
    }

    #[test]
    fn bad_beamwidth_reported() {
        let s = AntennaPattern::Sectored {
            boresight_deg: 0.0,
            beamwidth_deg: 0.0,
            main_gain_db: 0.0,
            back_gain_db: 0.0,
        };
        assert_eq!(s.problems().len(), 1);
    }
}
