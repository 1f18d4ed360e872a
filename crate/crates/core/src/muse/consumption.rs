use std::collections::{BTreeMap, BTreeSet};

use super::{MuseError, Protected, SliceConstraints, SpectrumQuantity};
use crate::model::{Grid, PowerBounds, Receiver, Scenario, Slice, Transmitter};
use crate::propagation::tx_gain_to;
use crate::units::lin;

/// Whose consumption a [`ConsumptionSpace`] records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntitySet {
    System,
    Ids(BTreeSet<String>),
}

impl EntitySet {
    pub fn single(id: &str) -> Self {
        EntitySet::Ids([id.to_string()].into())
    }

    fn union(&self, other: &EntitySet) -> EntitySet {
        match (self, other) {
            (EntitySet::Ids(a), EntitySet::Ids(b)) => EntitySet::Ids(a.union(b).cloned().collect()),
            _ => EntitySet::System,
        }
    }
}

/// Linear mW consumed per unit-region, for each sampled slice.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsumptionSpace {
    pub entities: EntitySet,
    pub n_x: usize,
    pub n_y: usize,
    pub slices: BTreeMap<Slice, Vec<f64>>,
}

impl ConsumptionSpace {
    pub fn new(entities: EntitySet, grid: &Grid) -> Self {
        Self {
            entities,
            n_x: grid.n_x,
            n_y: grid.n_y,
            slices: BTreeMap::new(),
        }
    }

    /// Union of two consumption spaces: fields are summed per cell and then
    /// clipped to p_cmax.
    pub fn merge(&self, other: &ConsumptionSpace, bounds: &PowerBounds) -> Result<ConsumptionSpace, MuseError> {
        if self.n_x != other.n_x || self.n_y != other.n_y {
            return Err(MuseError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n_x, self.n_y, other.n_x, other.n_y
            )));
        }
        let cap = bounds.p_cmax_linear();
        let mut slices = self.slices.clone();
        for (s, values) in &other.slices {
            let acc = slices
                .entry(*s)
                .or_insert_with(|| vec![0.0; values.len()]);
            for (a, v) in acc.iter_mut().zip(values) {
                *a = (*a + v).min(cap);
            }
        }
        Ok(ConsumptionSpace {
            entities: self.entities.union(&other.entities),
            n_x: self.n_x,
            n_y: self.n_y,
            slices,
        })
    }
}

fn slices_of<'a>(bands: &'a [usize], quanta: &'a [usize]) -> impl Iterator<Item = Slice> + 'a {
    bands
        .iter()
        .flat_map(move |&b| quanta.iter().map(move |&q| Slice::new(b, q)))
}

/// Power delivered by `tx` above the floor, sampled at every cell center.
pub fn tx_consumption(tx: &Transmitter, scenario: &Scenario, bands: &[usize], quanta: &[usize]) -> ConsumptionSpace {
    let grid = &scenario.grid;
    let bounds = &scenario.bounds;
    let floor = lin(bounds.p_min_dbm);
    let mut cs = ConsumptionSpace::new(EntitySet::single(&tx.id), grid);
    let mut active_field = None;
    for slice in slices_of(bands, quanta) {
        let values = if tx.is_active(slice) {
            active_field
                .get_or_insert_with(|| {
                    let p = lin(tx.tx_power_dbm);
                    grid.centers()
                        .into_iter()
                        .map(|c| bounds.clip_mw(p * tx_gain_to(tx, c, &scenario.propagation)) - floor)
                        .collect::<Vec<f64>>()
                })
                .clone()
        } else {
            vec![0.0; grid.a_hat()]
        };
        cs.slices.insert(slice, values);
    }
    cs
}

/// Power denied to potential entrants by `rx` alone:
/// lin(p_max) − lin(opportunity protecting only `rx`).
pub fn rx_consumption(rx: &Receiver, scenario: &Scenario, bands: &[usize], quanta: &[usize]) -> ConsumptionSpace {
    let mut cs = receivers_consumption(scenario, &Protected::receiver(&rx.id), bands, quanta);
    cs.entities = EntitySet::single(&rx.id);
    cs
}

/// Power jointly denied by the protected receiver set.
pub fn receivers_consumption(
    scenario: &Scenario,
    protected: &Protected,
    bands: &[usize],
    quanta: &[usize],
) -> ConsumptionSpace {
    let grid = &scenario.grid;
    let ceiling = lin(scenario.bounds.p_max_dbm);
    let entities = match protected {
        Protected::All => EntitySet::System,
        _ => EntitySet::Ids(
            scenario
                .receivers()
                .filter(|r| protected.includes(r))
                .map(|r| r.id.clone())
                .collect(),
        ),
    };
    let mut cs = ConsumptionSpace::new(entities, grid);
    for slice in slices_of(bands, quanta) {
        let values = match SliceConstraints::build(scenario, slice, protected) {
            Ok(constraints) => constraints
                .field()
                .values()
                .iter()
                .map(|&v| (ceiling - lin(v)).max(0.0))
                .collect(),
            Err(_) => vec![0.0; grid.a_hat()],
        };
        cs.slices.insert(slice, values);
    }
    cs
}

/// Aggregates a consumption space over all its unit spectrum-spaces.
pub fn quantify(cs: &ConsumptionSpace, grid: &Grid) -> Result<SpectrumQuantity, MuseError> {
    if cs.n_x != grid.n_x || cs.n_y != grid.n_y {
        return Err(MuseError::DimensionMismatch(format!(
            "consumption {}x{} vs grid {}x{}",
            cs.n_x, cs.n_y, grid.n_x, grid.n_y
        )));
    }
    let area = grid.cell_area();
    let mut per_slice = BTreeMap::new();
    for (slice, values) in &cs.slices {
        if values.len() != grid.a_hat() {
            return Err(MuseError::DimensionMismatch(format!(
                "slice {slice} has {} cells, grid has {}",
                values.len(),
                grid.a_hat()
            )));
        }
        per_slice.insert(*slice, values.iter().map(|v| v * area).sum());
    }
    Ok(SpectrumQuantity::from_mw_breakdown(per_slice))
}
