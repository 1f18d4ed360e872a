#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use specspace::model::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_n: usize,
    pub bands: usize,
    pub quanta: usize,
    pub links: usize,
    pub extra_tx: usize,
    pub sectored: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_n: 12,
            bands: 2,
            quanta: 2,
            links: 3,
            extra_tx: 2,
            sectored: true,
        }
    }
}

fn quanta_subset(rng: &mut ChaCha8Rng, t_hat: usize) -> std::collections::BTreeSet<usize> {
    let mut s: std::collections::BTreeSet<usize> = (0..t_hat).filter(|_| rng.gen_bool(0.6)).collect();
    if s.is_empty() {
        s.insert(rng.gen_range(0..t_hat));
    }
    s
}

fn pattern(rng: &mut ChaCha8Rng, sectored: bool) -> AntennaPattern {
    if sectored && rng.gen_bool(0.3) {
        AntennaPattern::Sectored {
            boresight_deg: rng.gen_range(0.0..360.0),
            beamwidth_deg: rng.gen_range(30.0..180.0),
            main_gain_db: rng.gen_range(0.0..12.0),
            back_gain_db: rng.gen_range(-25.0..0.0),
        }
    } else {
        AntennaPattern::Omni
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, grid: &Grid) -> Point {
    let up = grid.upper();
    Point::new(
        rng.gen_range(grid.origin.x..up.x),
        rng.gen_range(grid.origin.y..up.y),
    )
}

fn near(rng: &mut ChaCha8Rng, grid: &Grid, p: Point, max_d: f64) -> Point {
    let up = grid.upper();
    let r = rng.gen_range(5.0..max_d);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let eps = 1e-6;
    Point::new(
        (p.x + r * a.cos()).clamp(grid.origin.x, up.x - eps),
        (p.y + r * a.sin()).clamp(grid.origin.y, up.y - eps),
    )
}

pub fn random_grid(rng: &mut ChaCha8Rng, max_n: usize) -> Grid {
    Grid::new(
        Point::new(rng.gen_range(-500.0..500.0), rng.gen_range(-500.0..500.0)),
        rng.gen_range(20.0..150.0),
        rng.gen_range(1..=max_n),
        rng.gen_range(1..=max_n),
    )
}

pub fn random_bounds(rng: &mut ChaCha8Rng) -> PowerBounds {
    PowerBounds::new(rng.gen_range(20.0..36.0), rng.gen_range(-140.0..-110.0))
}

pub fn random_transmitter(rng: &mut ChaCha8Rng, s: &Scenario, id: String, network: &str, sectored: bool) -> Transmitter {
    Transmitter {
        id,
        network_id: network.to_string(),
        position: random_point(rng, &s.grid),
        tx_power_dbm: rng.gen_range(0.0..s.bounds.p_max_dbm),
        band: rng.gen_range(0..s.dims.b_hat),
        active_quanta: quanta_subset(rng, s.dims.t_hat),
        pattern: pattern(rng, sectored),
    }
}

/// Receiver near `tx`, active only when `tx` is.
pub fn linked_receiver(rng: &mut ChaCha8Rng, s: &Scenario, tx: &Transmitter, id: String, sectored: bool) -> Receiver {
    let quanta: Vec<usize> = tx.active_quanta.iter().copied().collect();
    let mut active: std::collections::BTreeSet<usize> = quanta.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    if active.is_empty() {
        active.insert(quanta[0]);
    }
    Receiver {
        id,
        network_id: tx.network_id.clone(),
        position: near(rng, &s.grid, tx.position, 150.0),
        band: tx.band,
        active_quanta: active,
        pattern: pattern(rng, sectored),
        beta_db: rng.gen_range(0.0..15.0),
        noise_floor_dbm: rng.gen_range(-110.0..-90.0),
        linked_tx_id: tx.id.clone(),
    }
}

pub fn random_scenario(rng: &mut ChaCha8Rng, shape: Shape) -> Scenario {
    let grid = random_grid(rng, shape.max_n);
    let dims = SpectrumSpaceDims::new(rng.gen_range(1..=shape.bands), rng.gen_range(1..=shape.quanta));
    let mut s = Scenario::empty(grid, dims, random_bounds(rng));
    s.propagation.path_loss_exponent = rng.gen_range(2.0..4.0);
    for i in 0..shape.links {
        let net = format!("n{}", i % 2);
        let tx = random_transmitter(rng, &s, format!("t{i}"), &net, shape.sectored);
        let rx = linked_receiver(rng, &s, &tx, format!("r{i}"), shape.sectored);
        s.add_transmitter(tx);
        s.add_receiver(rx);
    }
    for i in 0..shape.extra_tx {
        let tx = random_transmitter(rng, &s, format!("x{i}"), "other", shape.sectored);
        s.add_transmitter(tx);
    }
    validate_scenario(s).expect("generated scenarios are valid")
}

/// Drops receivers that already miss β in some active quantum.
pub fn keep_feasible(mut s: Scenario) -> Scenario {
    let failing: Vec<String> = s
        .receivers()
        .filter(|r| {
            r.active_quanta
                .iter()
                .any(|&q| oracle::sinr_db(&s, r, q) < r.beta_db)
        })
        .map(|r| r.id.clone())
        .collect();
    for n in &mut s.networks {
        n.receivers.retain(|r| !failing.contains(&r.id));
    }
    s
}

/// The single-link reference case: 10x10 cells of 100 m, t1 at 30 dBm
/// 100 m west of r1 (S = -50 dBm), beta 10 dB, noise -100 dBm.
pub fn canonical() -> Scenario {
    let mut s = Scenario::empty(
        Grid::new(Point::new(0.0, 0.0), 100.0, 10, 10),
        SpectrumSpaceDims::new(1, 1),
        PowerBounds::new(30.0, -125.0),
    );
    s.add_transmitter(Transmitter {
        id: "t1".into(),
        network_id: "incumbent".into(),
        position: Point::new(150.0, 550.0),
        tx_power_dbm: 30.0,
        band: 0,
        active_quanta: [0].into(),
        pattern: AntennaPattern::Omni,
    });
    s.add_receiver(Receiver {
        id: "r1".into(),
        network_id: "incumbent".into(),
        position: Point::new(250.0, 550.0),
        band: 0,
        active_quanta: [0].into(),
        pattern: AntennaPattern::Omni,
        beta_db: 10.0,
        noise_floor_dbm: -100.0,
        linked_tx_id: "t1".into(),
    });
    validate_scenario(s).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
