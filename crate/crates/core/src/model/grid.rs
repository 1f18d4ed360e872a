use thiserror::Error;

/// A planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Bearing towards `other`, degrees counter-clockwise from +x.
    pub fn bearing_to(&self, other: &Point) -> f64 {
        (other.y - self.y).atan2(other.x - self.x).to_degrees()
    }
}

/// Index of a unit-region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub ix: usize,
    pub iy: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("position ({}, {}) lies outside the grid extent", .0.x, .0.y)]
pub struct OutOfExtent(pub Point);

/// Uniform square discretization of the region of interest into unit-regions.
///
/// Cells are stored row-major with row 0 at the minimum y.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub origin: Point,
    pub cell_size: f64,
    pub n_x: usize,
    pub n_y: usize,
}

impl Grid {
    pub fn new(origin: Point, cell_size: f64, n_x: usize, n_y: usize) -> Self {
        Self { origin, cell_size, n_x, n_y }
    }

    /// Area of one unit-region in m².
    pub fn cell_area(&self) -> f64 {
        self.cell_size * self.cell_size
    }

    /// Number of unit-regions.
    pub fn a_hat(&self) -> usize {
        self.n_x * self.n_y
    }

    pub fn upper(&self) -> Point {
        Point::new(
            self.origin.x + self.n_x as f64 * self.cell_size,
            self.origin.y + self.n_y as f64 * self.cell_size,
        )
    }

    pub fn contains(&self, p: &Point) -> bool {
        let hi = self.upper();
        p.x >= self.origin.x && p.x <= hi.x && p.y >= self.origin.y && p.y <= hi.y
    }

    /// Maps a position to its cell. Interior boundaries belong to the
    /// higher-index cell; the upper edge of the extent belongs to the last cell.
    pub fn cell_of(&self, p: &Point) -> Result<Cell, OutOfExtent> {
        if !p.x.is_finite() || !p.y.is_finite() || !self.contains(p) {
            return Err(OutOfExtent(*p));
        }
        let ix = ((p.x - self.origin.x) / self.cell_size).floor() as usize;
        let iy = ((p.y - self.origin.y) / self.cell_size).floor() as usize;
        Ok(Cell {
            ix: ix.min(self.n_x - 1),
            iy: iy.min(self.n_y - 1),
        })
    }

    pub fn center(&self, cell: Cell) -> Point {
        Point::new(
            self.origin.x + (cell.ix as f64 + 0.5) * self.cell_size,
            self.origin.y + (cell.iy as f64 + 0.5) * self.cell_size,
        )
    }

    pub fn index(&self, cell: Cell) -> usize {
        cell.iy * self.n_x + cell.ix
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell {
            ix: index % self.n_x,
            iy: index / self.n_x,
        }
    }

    /// All cells in storage order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.a_hat()).map(move |i| self.cell_at(i))
    }

    /// Cell centers in storage order.
    pub fn centers(&self) -> Vec<Point> {
        self.cells().map(|c| self.center(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid() -> Grid {
        Grid::new(Point::new(0.0, 0.0), 100.0, 10, 10)
    }

    #[test]
    fn cell_of_examples() {
        let g = grid();
        assert_eq!(g.cell_of(&Point::new(50.0, 50.0)), Ok(Cell { ix: 0, iy: 0 }));
        assert_eq!(g.cell_of(&Point::new(100.0, 0.0)), Ok(Cell { ix: 1, iy: 0 }));
        assert!(g.cell_of(&Point::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn upper_edge_belongs_to_last_cell() {
        let g = grid();
        assert_eq!(
            g.cell_of(&Point::new(1000.0, 1000.0)),
            Ok(Cell { ix: 9, iy: 9 })
        );
        assert!(g.cell_of(&Point::new(1000.0 + 1e-9, 0.0)).is_err());
        assert!(g.cell_of(&Point::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn area_and_count() {
        let g = grid();
        assert_eq!(g.cell_area(), 1e4);
        assert_eq!(g.a_hat(), 100);
        assert_eq!(g.cell_at(g.index(Cell { ix: 3, iy: 7 })), Cell { ix: 3, iy: 7 });
    }

    proptest! {
        #[test]
        fn centers_map_back(ox in -1e4f64..1e4, oy in -1e4f64..1e4, size in 0.5f64..500.0,
                            nx in 1usize..40, ny in 1usize..40) {
            let g = Grid::new(Point::new(ox, oy), size, nx, ny);
            for c in g.cells() {
                prop_assert_eq!(g.cell_of(&g.center(c)).unwrap(), c);
            }
        }

        #[test]
        fn interior_points_land_in_one_cell(fx in 0.0f64..1.0, fy in 0.0f64..1.0,
                                            nx in 1usize..30, ny in 1usize..30) {
            let g = Grid::new(Point::new(-20.0, 35.0), 7.5, nx, ny);
            let hi = g.upper();
            let p = Point::new(g.origin.x + fx * (hi.x - g.origin.x), g.origin.y + fy * (hi.y - g.origin.y));
            let c = g.cell_of(&p).unwrap();
            prop_assert!(c.ix < nx && c.iy < ny);
            let lo_x = g.origin.x + c.ix as f64 * g.cell_size;
            let lo_y = g.origin.y + c.iy as f64 * g.cell_size;
            prop_assert!(p.x >= lo_x - 1e-9 && p.x <= lo_x + g.cell_size + 1e-9);
            prop_assert!(p.y >= lo_y - 1e-9 && p.y <= lo_y + g.cell_size + 1e-9);
        }
    }
}
