use std::collections::BTreeMap;

use super::{MuseError, PowerField, SpectrumQuantity};
use crate::model::{Grid, PowerBounds, Slice};

/// Decomposition of an estimated opportunity against the true one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HarvestMetrics {
    pub recovered: SpectrumQuantity,
    pub lost_available: SpectrumQuantity,
    pub potentially_incursed: SpectrumQuantity,
}

impl HarvestMetrics {
    pub fn combine(&self, other: &HarvestMetrics) -> HarvestMetrics {
        HarvestMetrics {
            recovered: self.recovered.combine(&other.recovered),
            lost_available: self.lost_available.combine(&other.lost_available),
            potentially_incursed: self.potentially_incursed.combine(&other.potentially_incursed),
        }
    }
}

/// Compares an estimated opportunity field with the true one for the same slice.
pub fn harvest_metrics(
    estimated: &PowerField,
    truth: &PowerField,
    grid: &Grid,
    bounds: &PowerBounds,
) -> Result<HarvestMetrics, MuseError> {
    if !estimated.same_shape(truth) || estimated.values().len() != grid.a_hat() {
        return Err(MuseError::DimensionMismatch(format!(
            "estimated {}x{} {} vs truth {}x{} {}",
            estimated.n_x, estimated.n_y, estimated.slice, truth.n_x, truth.n_y, truth.slice
        )));
    }
    harvest_from_linear(
        &estimated.above_floor_mw(bounds),
        &truth.above_floor_mw(bounds),
        grid.cell_area(),
        estimated.slice,
    )
}

/// Harvest metrics from per-cell linear mW above the floor.
pub fn harvest_from_linear(
    estimated_mw: &[f64],
    truth_mw: &[f64],
    cell_area: f64,
    slice: Slice,
) -> Result<HarvestMetrics, MuseError> {
    if estimated_mw.len() != truth_mw.len() {
        return Err(MuseError::DimensionMismatch(format!(
            "{} estimated cells vs {} true cells",
            estimated_mw.len(),
            truth_mw.len()
        )));
    }
    let (mut rec, mut lost, mut inc) = (0.0, 0.0, 0.0);
    for (&e, &t) in estimated_mw.iter().zip(truth_mw) {
        rec += e.min(t) * cell_area;
        lost += (t - e).max(0.0) * cell_area;
        inc += (e - t).max(0.0) * cell_area;
    }
    let q = |v: f64| SpectrumQuantity::from_mw_breakdown(BTreeMap::from([(slice, v)]));
    Ok(HarvestMetrics {
        recovered: q(rec),
        lost_available: q(lost),
        potentially_incursed: q(inc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Point;
    use approx::assert_relative_eq;

    #[test]
    fn two_cell_hand_case() {
        let m = harvest_from_linear(&[40.0, 70.0], &[10.0, 100.0], 1.0, Slice::new(0, 0)).unwrap();
        // mW·m² → W·m²
        assert_relative_eq!(m.recovered.value, 0.080, max_relative = 1e-12);
        assert_relative_eq!(m.lost_available.value, 0.030, max_relative = 1e-12);
        assert_relative_eq!(m.potentially_incursed.value, 0.030, max_relative = 1e-12);
    }

    #[test]
    fn mismatch_rejected() {
        let g = Grid::new(Point::default(), 1.0, 2, 2);
        let b = PowerBounds::new(30.0, -125.0);
        let a = PowerField::uniform(&g, Slice::new(0, 0), 0.0, &b);
        let c = PowerField::uniform(&g, Slice::new(0, 1), 0.0, &b);
        assert!(harvest_metrics(&a, &c, &g, &b).is_err());
        assert!(harvest_from_linear(&[1.0], &[1.0, 2.0], 1.0, Slice::new(0, 0)).is_err());
    }

    #[test]
    fn identities() {
        let g = Grid::new(Point::default(), 10.0, 3, 1);
        let b = PowerBounds::new(30.0, -125.0);
        let s = Slice::new(0, 0);
        let truth = PowerField::from_dbm(&g, s, vec![-40.0, 12.5, 30.0], &b);
        let same = harvest_metrics(&truth, &truth, &g, &b).unwrap();
        assert_eq!(same.lost_available.value, 0.0);
        assert_eq!(same.potentially_incursed.value, 0.0);
        let floor = PowerField::uniform(&g, s, b.p_min_dbm, &b);
        let blind = harvest_metrics(&floor, &truth, &g, &b).unwrap();
        assert_eq!(blind.recovered.value, 0.0);
        assert_eq!(blind.lost_available.value, same.recovered.value);
    }
}
