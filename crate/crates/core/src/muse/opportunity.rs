use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{check_slice, MuseError, PowerField, SpectrumQuantity};
use crate::interference::link_budget;
use crate::model::{AntennaPattern, Cell, Grid, PowerBounds, Receiver, Scenario, Slice};
use crate::propagation::link_gain_linear;
use crate::units::{db, lin};

/// Which receivers an opportunity computation must protect.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Protected {
    #[default]
    All,
    Networks(BTreeSet<String>),
    Receivers(BTreeSet<String>),
}

impl Protected {
    pub fn receiver(id: &str) -> Self {
        Protected::Receivers([id.to_string()].into())
    }

    pub fn includes(&self, rx: &Receiver) -> bool {
        match self {
            Protected::All => true,
            Protected::Networks(ids) => ids.contains(&rx.network_id),
            Protected::Receivers(ids) => ids.contains(&rx.id),
        }
    }
}

/// Opportunity at a single cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOpportunity {
    /// Tolerable entrant power clipped to the bounds.
    pub dbm: f64,
    /// Unclipped tolerable power; infinite when nothing is protected.
    pub linear_mw: f64,
    /// The protected receiver that sets the limit, if any.
    pub limiting: Option<String>,
}

/// Interference margins of the protected receivers active in one slice.
pub struct SliceConstraints<'a> {
    scenario: &'a Scenario,
    slice: Slice,
    margins: Vec<(&'a Receiver, f64)>,
    hosts: BTreeMap<Cell, &'a Receiver>,
    infeasible: Vec<String>,
}

impl<'a> SliceConstraints<'a> {
    pub fn build(scenario: &'a Scenario, slice: Slice, protected: &Protected) -> Result<Self, MuseError> {
        check_slice(scenario, slice)?;
        let mut margins = Vec::new();
        let mut hosts = BTreeMap::new();
        let mut infeasible = Vec::new();
        for rx in scenario
            .receivers()
            .filter(|r| r.is_active(slice) && protected.includes(r))
        {
            let budget = link_budget(scenario, rx, slice.quantum);
            if !budget.meets_threshold() {
                infeasible.push(rx.id.clone());
            }
            margins.push((rx, budget.margin_mw()));
            if let Ok(cell) = scenario.grid.cell_of(&rx.position) {
                hosts.entry(cell).or_insert(rx);
            }
        }
        Ok(Self {
            scenario,
            slice,
            margins,
            hosts,
            infeasible,
        })
    }

    pub fn slice(&self) -> Slice {
        self.slice
    }

    /// Protected receivers whose own link is already below β.
    pub fn infeasible(&self) -> &[String] {
        &self.infeasible
    }

    pub fn at_cell(&self, cell: Cell) -> CellOpportunity {
        let bounds = &self.scenario.bounds;
        if let Some(rx) = self.hosts.get(&cell) {
            return CellOpportunity {
                dbm: bounds.p_min_dbm,
                linear_mw: 0.0,
                limiting: Some(rx.id.clone()),
            };
        }
        let center = self.scenario.grid.center(cell);
        let mut best = f64::INFINITY;
        let mut limiting = None;
        for (rx, margin) in &self.margins {
            let gain = link_gain_linear(
                center,
                &AntennaPattern::Omni,
                rx.position,
                &rx.pattern,
                &self.scenario.propagation,
            );
            let tolerable = margin / gain;
            if tolerable < best {
                best = tolerable;
                limiting = Some(rx.id.clone());
            }
        }
        CellOpportunity {
            dbm: bounds.clip_dbm(db(best)),
            linear_mw: best,
            limiting,
        }
    }

    pub fn field(&self) -> PowerField {
        let grid = &self.scenario.grid;
        let values = grid.cells().map(|c| self.at_cell(c).dbm).collect();
        PowerField::from_dbm(grid, self.slice, values, &self.scenario.bounds)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpportunityMap {
    pub field: PowerField,
    /// Protected receivers already below β; their margin is zero.
    pub infeasible: Vec<String>,
}

/// Maximum power a single omni entrant at each cell center may use while
/// every protected receiver keeps SINR ≥ β.
pub fn opportunity_map(
    scenario: &Scenario,
    slice: Slice,
    protected: &Protected,
) -> Result<OpportunityMap, MuseError> {
    let constraints = SliceConstraints::build(scenario, slice, protected)?;
    Ok(OpportunityMap {
        field: constraints.field(),
        infeasible: constraints.infeasible().to_vec(),
    })
}

pub fn cell_opportunity(
    scenario: &Scenario,
    slice: Slice,
    protected: &Protected,
    cell: Cell,
) -> Result<CellOpportunity, MuseError> {
    Ok(SliceConstraints::build(scenario, slice, protected)?.at_cell(cell))
}

/// Unconsumed spectrum over every slice of the scenario.
pub fn available_spectrum(scenario: &Scenario, protected: &Protected) -> SpectrumQuantity {
    let per_slice: Vec<(Slice, f64)> = scenario
        .dims
        .slices()
        .into_par_iter()
        .map(|slice| {
            let field = SliceConstraints::build(scenario, slice, protected)
                .expect("slices enumerated from dims")
                .field();
            (slice, field_sum_mw_m2(&field, &scenario.grid, &scenario.bounds))
        })
        .collect();
    SpectrumQuantity::from_mw_breakdown(per_slice.into_iter().collect())
}

/// Available spectrum represented by a set of opportunity fields.
pub fn available_spectrum_in(fields: &[PowerField], grid: &Grid, bounds: &PowerBounds) -> SpectrumQuantity {
    let mut per_slice = BTreeMap::new();
    for f in fields {
        *per_slice.entry(f.slice).or_insert(0.0) += field_sum_mw_m2(f, grid, bounds);
    }
    SpectrumQuantity::from_mw_breakdown(per_slice)
}

fn field_sum_mw_m2(field: &PowerField, grid: &Grid, bounds: &PowerBounds) -> f64 {
    let area = grid.cell_area();
    let floor = lin(bounds.p_min_dbm);
    field.values().iter().map(|&v| (lin(v) - floor) * area).sum()
}
