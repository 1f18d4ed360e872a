use super::{check_slice, MuseError, PowerField};
use crate::model::{Point, Scenario, Slice};
use crate::propagation::tx_gain_to;
use crate::units::{db, lin};

/// Unclipped aggregate received power (mW) at every cell center.
pub fn occupancy_linear(scenario: &Scenario, slice: Slice) -> Result<Vec<f64>, MuseError> {
    check_slice(scenario, slice)?;
    let centers = scenario.grid.centers();
    let mut acc = vec![0.0; centers.len()];
    for tx in scenario.active_transmitters(slice) {
        let p = lin(tx.tx_power_dbm);
        for (a, c) in acc.iter_mut().zip(&centers) {
            *a += p * tx_gain_to(tx, *c, &scenario.propagation);
        }
    }
    Ok(acc)
}

/// Clipped aggregate received power at one point, dBm.
pub fn occupancy_at(scenario: &Scenario, slice: Slice, point: Point) -> Result<f64, MuseError> {
    check_slice(scenario, slice)?;
    let total: f64 = scenario
        .active_transmitters(slice)
        .map(|tx| lin(tx.tx_power_dbm) * tx_gain_to(tx, point, &scenario.propagation))
        .sum();
    Ok(scenario.bounds.clip_dbm(db(total)))
}

/// Aggregate man-made RF power per unit-region, clipped to the bounds.
/// Cells without any contribution report p_min.
pub fn occupancy_map(scenario: &Scenario, slice: Slice) -> Result<PowerField, MuseError> {
    let linear = occupancy_linear(scenario, slice)?;
    Ok(PowerField::from_dbm(
        &scenario.grid,
        slice,
        linear.into_iter().map(db).collect(),
        &scenario.bounds,
    ))
}
