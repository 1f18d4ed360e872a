use crate::model::{Cell, Grid, PowerBounds, Slice};
use crate::units::lin;

/// Per-unit-region dBm values for one slice, clipped to the power bounds.
/// Row-major, row 0 at minimum y.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerField {
    pub slice: Slice,
    pub n_x: usize,
    pub n_y: usize,
    values: Vec<f64>,
}

impl PowerField {
    /// Builds a field from raw dBm values, clipping each into `bounds`.
    pub fn from_dbm(grid: &Grid, slice: Slice, values: Vec<f64>, bounds: &PowerBounds) -> Self {
        assert_eq!(values.len(), grid.a_hat(), "field size must match grid");
        Self {
            slice,
            n_x: grid.n_x,
            n_y: grid.n_y,
            values: values.into_iter().map(|v| bounds.clip_dbm(v)).collect(),
        }
    }

    pub fn uniform(grid: &Grid, slice: Slice, dbm: f64, bounds: &PowerBounds) -> Self {
        Self::from_dbm(grid, slice, vec![dbm; grid.a_hat()], bounds)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, cell: Cell) -> f64 {
        self.values[cell.iy * self.n_x + cell.ix]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n_x)
    }

    /// Linear mW above the floor for every cell.
    pub fn above_floor_mw(&self, bounds: &PowerBounds) -> Vec<f64> {
        let floor = lin(bounds.p_min_dbm);
        self.values.iter().map(|&v| lin(v) - floor).collect()
    }

    pub fn map(&self, bounds: &PowerBounds, f: impl Fn(f64) -> f64) -> Self {
        Self {
            slice: self.slice,
            n_x: self.n_x,
            n_y: self.n_y,
            values: self.values.iter().map(|&v| bounds.clip_dbm(f(v))).collect(),
        }
    }

    pub fn same_shape(&self, other: &PowerField) -> bool {
        self.n_x == other.n_x && self.n_y == other.n_y && self.slice == other.slice
    }
}
