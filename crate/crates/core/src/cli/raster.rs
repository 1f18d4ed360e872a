//! Plain-text raster export of power fields.

use std::fmt::Write;

use crate::muse::PowerField;

fn cell(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// CSV with a one-line header, then `n_y` rows of `n_x` dBm values.
/// The first row is the minimum-y row.
pub fn export_field(field: &PowerField) -> String {
    let mut out = String::new();
    writeln!(out, "# band={} quantum={} unit=dBm", field.slice.band, field.slice.quantum).unwrap();
    for row in field.rows() {
        let line: Vec<String> = row.iter().map(|&v| cell(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Grid, Point, PowerBounds, Slice};

    #[test]
    fn layout() {
        let g = Grid::new(Point::default(), 1.0, 3, 2);
        let b = PowerBounds::new(30.0, -125.0);
        let f = PowerField::from_dbm(&g, Slice::new(1, 2), vec![1.0, -0.00001, 2.5, 30.0, 99.0, -200.0], &b);
        assert_eq!(
            export_field(&f),
            "# band=1 quantum=2 unit=dBm\n1.0000,0.0000,2.5000\n30.0000,30.0000,-125.0000\n"
        );
    }
}
