//! Straight-loop reference arithmetic, written without the engine's helpers.

use specspace::model::{AntennaPattern, Point, Receiver, Scenario, Transmitter};

pub fn lin(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

fn pattern_db(p: &AntennaPattern, from: Point, to: Point) -> f64 {
    match *p {
        AntennaPattern::Omni => 0.0,
        AntennaPattern::Sectored {
            boresight_deg,
            beamwidth_deg,
            main_gain_db,
            back_gain_db,
        } => {
            let bearing = (to.y - from.y).atan2(to.x - from.x).to_degrees();
            let mut off = (bearing - boresight_deg) % 360.0;
            if off < 0.0 {
                off += 360.0;
            }
            if off > 180.0 {
                off = 360.0 - off;
            }
            if off <= beamwidth_deg / 2.0 {
                main_gain_db
            } else {
                back_gain_db
            }
        }
    }
}

pub fn gain(s: &Scenario, from: Point, from_p: &AntennaPattern, to: Point, to_p: &AntennaPattern) -> f64 {
    let c = &s.propagation;
    let n = match c.model {
        specspace::propagation::PathLossModel::FreeSpace => 2.0,
        specspace::propagation::PathLossModel::LogDistance => c.path_loss_exponent,
    };
    let d = ((from.x - to.x).powi(2) + (from.y - to.y).powi(2)).sqrt();
    let pl = c.reference_loss_db + 10.0 * n * (d.max(c.min_distance_clamp_m) / c.reference_distance_m).log10();
    lin(pattern_db(from_p, from, to) + pattern_db(to_p, to, from) - pl)
}

fn active(t: &Transmitter, band: usize, q: usize) -> bool {
    t.band == band && t.active_quanta.contains(&q)
}

fn rx_active(r: &Receiver, band: usize, q: usize) -> bool {
    r.band == band && r.active_quanta.contains(&q)
}

fn at_rx(s: &Scenario, t: &Transmitter, r: &Receiver) -> f64 {
    lin(t.tx_power_dbm) * gain(s, t.position, &t.pattern, r.position, &r.pattern)
}

pub fn signal_mw(s: &Scenario, r: &Receiver, q: usize) -> f64 {
    s.transmitters()
        .filter(|t| t.id == r.linked_tx_id && active(t, r.band, q))
        .map(|t| at_rx(s, t, r))
        .sum()
}

pub fn interference_mw(s: &Scenario, r: &Receiver, q: usize) -> f64 {
    s.transmitters()
        .filter(|t| t.id != r.linked_tx_id && active(t, r.band, q))
        .map(|t| at_rx(s, t, r))
        .sum()
}

pub fn sinr_db(s: &Scenario, r: &Receiver, q: usize) -> f64 {
    10.0 * (signal_mw(s, r, q) / (lin(r.noise_floor_dbm) + interference_mw(s, r, q))).log10()
}

pub fn centers(s: &Scenario) -> Vec<Point> {
    let g = &s.grid;
    let mut out = Vec::new();
    for iy in 0..g.n_y {
        for ix in 0..g.n_x {
            out.push(Point::new(
                g.origin.x + (ix as f64 + 0.5) * g.cell_size,
                g.origin.y + (iy as f64 + 0.5) * g.cell_size,
            ));
        }
    }
    out
}

fn host_index(s: &Scenario, p: Point) -> usize {
    let g = &s.grid;
    let ix = (((p.x - g.origin.x) / g.cell_size).floor() as usize).min(g.n_x - 1);
    let iy = (((p.y - g.origin.y) / g.cell_size).floor() as usize).min(g.n_y - 1);
    iy * g.n_x + ix
}

fn clip_mw(s: &Scenario, v: f64) -> f64 {
    v.max(lin(s.bounds.p_min_dbm)).min(lin(s.bounds.p_max_dbm))
}

/// Unclipped linear occupancy per cell.
pub fn occupancy_mw(s: &Scenario, band: usize, q: usize) -> Vec<f64> {
    centers(s)
        .into_iter()
        .map(|c| {
            s.transmitters()
                .filter(|t| active(t, band, q))
                .map(|t| lin(t.tx_power_dbm) * gain(s, t.position, &t.pattern, c, &AntennaPattern::Omni))
                .sum()
        })
        .collect()
}

/// Clipped linear opportunity per cell, protecting receivers accepted by `keep`.
pub fn opportunity_mw(s: &Scenario, band: usize, q: usize, keep: &dyn Fn(&Receiver) -> bool) -> Vec<f64> {
    let rxs: Vec<&Receiver> = s.receivers().filter(|r| keep(r) && rx_active(r, band, q)).collect();
    let mut hosts = vec![false; s.grid.n_x * s.grid.n_y];
    for r in &rxs {
        hosts[host_index(s, r.position)] = true;
    }
    centers(s)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if hosts[i] {
                return lin(s.bounds.p_min_dbm);
            }
            let mut best = f64::INFINITY;
            for r in &rxs {
                let margin = (signal_mw(s, r, q) / lin(r.beta_db) - lin(r.noise_floor_dbm) - interference_mw(s, r, q)).max(0.0);
                let g = gain(s, c, &AntennaPattern::Omni, r.position, &r.pattern);
                best = best.min(margin / g);
            }
            if best.is_infinite() {
                lin(s.bounds.p_max_dbm)
            } else {
                clip_mw(s, best)
            }
        })
        .collect()
}

fn area(s: &Scenario) -> f64 {
    s.grid.cell_size * s.grid.cell_size
}

/// Available spectrum in W*m^2.
pub fn available_w(s: &Scenario) -> f64 {
    let floor = lin(s.bounds.p_min_dbm);
    let mut total = 0.0;
    for b in 0..s.dims.b_hat {
        for q in 0..s.dims.t_hat {
            for v in opportunity_mw(s, b, q, &|_| true) {
                total += (v - floor) * area(s);
            }
        }
    }
    total / 1000.0
}

/// Spectrum consumed by one transmitter over every slice, W*m^2.
pub fn tx_consumed_w(s: &Scenario, t: &Transmitter) -> f64 {
    let floor = lin(s.bounds.p_min_dbm);
    let mut total = 0.0;
    for b in 0..s.dims.b_hat {
        for q in 0..s.dims.t_hat {
            if !active(t, b, q) {
                continue;
            }
            for c in centers(s) {
                let p = lin(t.tx_power_dbm) * gain(s, t.position, &t.pattern, c, &AntennaPattern::Omni);
                total += (clip_mw(s, p) - floor) * area(s);
            }
        }
    }
    total / 1000.0
}

/// Spectrum denied by the receivers accepted by `keep`, W*m^2.
pub fn rx_consumed_w(s: &Scenario, keep: &dyn Fn(&Receiver) -> bool) -> f64 {
    let ceiling = lin(s.bounds.p_max_dbm);
    let mut total = 0.0;
    for b in 0..s.dims.b_hat {
        for q in 0..s.dims.t_hat {
            for v in opportunity_mw(s, b, q, keep) {
                total += (ceiling - v).max(0.0) * area(s);
            }
        }
    }
    total / 1000.0
}
