use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Cell, Point, Scenario, Slice};
use crate::muse::{MuseError, Protected, SliceConstraints, SpectrumQuantity};
use crate::units::lin;

#[derive(Debug, Clone, PartialEq)]
pub struct SliceOpportunity {
    pub slice: Slice,
    pub dbm: f64,
    pub limiting: Option<String>,
}

/// Opportunity at one cell across every band.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateOpportunity {
    pub cell: Cell,
    /// Best opportunity first; ties by slice.
    pub per_slice: Vec<SliceOpportunity>,
    pub quantity: SpectrumQuantity,
}

/// Evaluates the opportunity at the cell containing `position` in every band
/// for each of `quanta` and sums it (linear above the floor × cell area).
pub fn aggregate_opportunity(
    scenario: &Scenario,
    position: Point,
    quanta: &BTreeSet<usize>,
    protected: &Protected,
) -> Result<AggregateOpportunity, MuseError> {
    let cell = scenario.grid.cell_of(&position)?;
    let floor = lin(scenario.bounds.p_min_dbm);
    let area = scenario.grid.cell_area();
    let mut per_slice = Vec::new();
    let mut breakdown = BTreeMap::new();
    for band in 0..scenario.dims.b_hat {
        for &q in quanta {
            let slice = Slice::new(band, q);
            let at = SliceConstraints::build(scenario, slice, protected)?.at_cell(cell);
            breakdown.insert(slice, (lin(at.dbm) - floor) * area);
            per_slice.push(SliceOpportunity {
                slice,
                dbm: at.dbm,
                limiting: at.limiting,
            });
        }
    }
    per_slice.sort_by(|a, b| b.dbm.total_cmp(&a.dbm).then(a.slice.cmp(&b.slice)));
    Ok(AggregateOpportunity {
        cell,
        per_slice,
        quantity: SpectrumQuantity::from_mw_breakdown(breakdown),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::canonical;
    use super::*;
    use crate::model::*;
    use approx::assert_relative_eq;

    #[test]
    fn empty_single_band() {
        let mut s = canonical();
        s.networks.clear();
        s.dims.b_hat = 1;
        let a = aggregate_opportunity(&s, Point::new(10.0, 10.0), &[0].into(), &Protected::All).unwrap();
        assert_eq!(a.per_slice.len(), 1);
        assert_eq!(a.per_slice[0].dbm, 30.0);
        assert_relative_eq!(
            a.quantity.value,
            s.bounds.p_cmax_linear() * 1e-3 * s.grid.cell_area(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn blocked_band_contributes_nothing() {
        // request cell hosts r1 in band 0
        let s = canonical();
        let a = aggregate_opportunity(&s, Point::new(250.0, 550.0), &[0].into(), &Protected::All).unwrap();
        assert_eq!(a.per_slice[0].slice.band, 1);
        assert_eq!(a.per_slice[1].dbm, -125.0);
        assert_eq!(a.quantity.breakdown[&Slice::new(0, 0)], 0.0);
        assert_relative_eq!(
            a.quantity.value,
            s.bounds.p_cmax_linear() * 1e-3 * s.grid.cell_area(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn two_band_sum() {
        // guard the p_max ceiling: opportunities of 20 and 10 dBm
        let mut s = canonical();
        s.bounds.p_max_dbm = 20.0;
        s.networks[0].transmitters[0].tx_power_dbm = 20.0;
        s.networks[0].receivers[0].beta_db = 10.0;
        // put a second copy of the link in band 1, 10 dB weaker
        let mut t = s.networks[0].transmitters[0].clone();
        t.id = "t1b".into();
        t.band = 1;
        t.tx_power_dbm = 10.0;
        let mut r = s.networks[0].receivers[0].clone();
        r.id = "r1b".into();
        r.band = 1;
        r.linked_tx_id = "t1b".into();
        r.noise_floor_dbm = -200.0;
        s.networks[0].receivers[0].noise_floor_dbm = -200.0;
        s.add_transmitter(t);
        s.add_receiver(r);
        let a = aggregate_opportunity(&s, Point::new(350.0, 550.0), &[0].into(), &Protected::All).unwrap();
        // S = 20 − 80 = −60 dBm, β 10 dB ⇒ margin −70 dBm; gain −80 dB ⇒ 10 dBm; band 1 is 10 dB lower
        assert_relative_eq!(a.per_slice[0].dbm, 10.0, epsilon = 1e-9);
        assert_relative_eq!(a.per_slice[1].dbm, 0.0, epsilon = 1e-9);
        let expected = (lin(10.0) + lin(0.0) - 2.0 * lin(-125.0)) * s.grid.cell_area() * 1e-3;
        assert_relative_eq!(a.quantity.value, expected, max_relative = 1e-12);
    }

    #[test]
    fn outside_grid() {
        let s = canonical();
        assert!(aggregate_opportunity(&s, Point::new(-1.0, 0.0), &[0].into(), &Protected::All).is_err());
    }
}
