use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::Scenario;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("grid cell_size must be positive and finite, got {0}")]
    NonPositiveCellSize(f64),
    #[error("grid must have at least one cell per axis, got {n_x}x{n_y}")]
    EmptyGrid { n_x: usize, n_y: usize },
    #[error("grid origin must be finite")]
    NonFiniteOrigin,
    #[error("spectrum space needs at least one band and one quantum, got {b_hat} bands x {t_hat} quanta")]
    EmptyDims { b_hat: usize, t_hat: usize },
    #[error("p_max {p_max} dBm must exceed p_min {p_min} dBm")]
    InvertedBounds { p_max: f64, p_min: f64 },
    #[error("propagation: {0}")]
    Propagation(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("{id}: network_id {claimed} does not match enclosing network {actual}")]
    NetworkMismatch {
        id: String,
        claimed: String,
        actual: String,
    },
    #[error("{id}: power above p_max ({power} > {p_max} dBm)")]
    PowerAboveMax { id: String, power: f64, p_max: f64 },
    #[error("{id}: power below p_min ({power} < {p_min} dBm)")]
    PowerBelowMin { id: String, power: f64, p_min: f64 },
    #[error("{id}: band {band} out of range (b_hat = {b_hat})")]
    BandOutOfRange { id: String, band: usize, b_hat: usize },
    #[error("{id}: quantum {quantum} out of range (t_hat = {t_hat})")]
    QuantumOutOfRange {
        id: String,
        quantum: usize,
        t_hat: usize,
    },
    #[error("{id}: position must be finite")]
    NonFinitePosition { id: String },
    #[error("{id}: antenna pattern {reason}")]
    InvalidPattern { id: String, reason: String },
    #[error("{id}: beta must be positive, got {beta_db} dB")]
    NonPositiveBeta { id: String, beta_db: f64 },
    #[error("{id}: noise floor must be finite")]
    NonFiniteNoise { id: String },
    #[error("{receiver}: dangling link {link}")]
    DanglingLink { receiver: String, link: String },
    #[error("{receiver}: linked transmitter {link} is in another network or band")]
    LinkMismatch { receiver: String, link: String },
    #[error("{receiver}: active in quantum {quantum} while linked transmitter {link} is not")]
    LinkInactive {
        receiver: String,
        link: String,
        quantum: usize,
    },
}

/// Checks every scenario invariant and reports all violations found.
pub fn validate_scenario(raw: Scenario) -> Result<Scenario, Vec<ValidationError>> {
    let errors = collect_errors(&raw);
    if errors.is_empty() {
        Ok(raw)
    } else {
        Err(errors)
    }
}

pub(crate) fn collect_errors(s: &Scenario) -> Vec<ValidationError> {
    use ValidationError as E;
    let mut errs = Vec::new();

    let g = &s.grid;
    if !(g.cell_size > 0.0 && g.cell_size.is_finite()) {
        errs.push(E::NonPositiveCellSize(g.cell_size));
    }
    if g.n_x == 0 || g.n_y == 0 {
        errs.push(E::EmptyGrid { n_x: g.n_x, n_y: g.n_y });
    }
    if !(g.origin.x.is_finite() && g.origin.y.is_finite()) {
        errs.push(E::NonFiniteOrigin);
    }
    if s.dims.b_hat == 0 || s.dims.t_hat == 0 {
        errs.push(E::EmptyDims {
            b_hat: s.dims.b_hat,
            t_hat: s.dims.t_hat,
        });
    }
    let b = s.bounds;
    let bounds_ok = b.p_max_dbm.is_finite() && b.p_min_dbm.is_finite() && b.p_max_dbm > b.p_min_dbm;
    if !bounds_ok {
        errs.push(E::InvertedBounds {
            p_max: b.p_max_dbm,
            p_min: b.p_min_dbm,
        });
    }
    errs.extend(s.propagation.problems().into_iter().map(E::Propagation));

    let mut seen = BTreeSet::new();
    let mut check_id = |id: &str, errs: &mut Vec<ValidationError>| {
        if !seen.insert(id.to_string()) {
            errs.push(E::DuplicateId(id.to_string()));
        }
    };
    for net in &s.networks {
        check_id(&net.id, &mut errs);
        for t in &net.transmitters {
            check_id(&t.id, &mut errs);
        }
        for r in &net.receivers {
            check_id(&r.id, &mut errs);
        }
    }

    let check_slots = |id: &str, band: usize, quanta: &BTreeSet<usize>, errs: &mut Vec<ValidationError>| {
        if band >= s.dims.b_hat {
            errs.push(E::BandOutOfRange {
                id: id.to_string(),
                band,
                b_hat: s.dims.b_hat,
            });
        }
        for &q in quanta.iter().filter(|&&q| q >= s.dims.t_hat) {
            errs.push(E::QuantumOutOfRange {
                id: id.to_string(),
                quantum: q,
                t_hat: s.dims.t_hat,
            });
        }
    };

    let mut tx_index = BTreeMap::new();
    for net in &s.networks {
        for t in &net.transmitters {
            tx_index.entry(t.id.as_str()).or_insert(t);
            if t.network_id != net.id {
                errs.push(E::NetworkMismatch {
                    id: t.id.clone(),
                    claimed: t.network_id.clone(),
                    actual: net.id.clone(),
                });
            }
            if !(t.position.x.is_finite() && t.position.y.is_finite()) {
                errs.push(E::NonFinitePosition { id: t.id.clone() });
            }
            if bounds_ok {
                if t.tx_power_dbm > b.p_max_dbm {
                    errs.push(E::PowerAboveMax {
                        id: t.id.clone(),
                        power: t.tx_power_dbm,
                        p_max: b.p_max_dbm,
                    });
                } else if !(t.tx_power_dbm >= b.p_min_dbm) {
                    errs.push(E::PowerBelowMin {
                        id: t.id.clone(),
                        power: t.tx_power_dbm,
                        p_min: b.p_min_dbm,
                    });
                }
            }
            check_slots(&t.id, t.band, &t.active_quanta, &mut errs);
            for reason in t.pattern.problems() {
                errs.push(E::InvalidPattern {
                    id: t.id.clone(),
                    reason,
                });
            }
        }
    }

    for net in &s.networks {
        for r in &net.receivers {
            if r.network_id != net.id {
                errs.push(E::NetworkMismatch {
                    id: r.id.clone(),
                    claimed: r.network_id.clone(),
                    actual: net.id.clone(),
                });
            }
            if !(r.position.x.is_finite() && r.position.y.is_finite()) {
                errs.push(E::NonFinitePosition { id: r.id.clone() });
            }
            if !(r.beta_db > 0.0 && r.beta_db.is_finite()) {
                errs.push(E::NonPositiveBeta {
                    id: r.id.clone(),
                    beta_db: r.beta_db,
                });
            }
            if !r.noise_floor_dbm.is_finite() {
                errs.push(E::NonFiniteNoise { id: r.id.clone() });
            }
            check_slots(&r.id, r.band, &r.active_quanta, &mut errs);
            for reason in r.pattern.problems() {
                errs.push(E::InvalidPattern {
                    id: r.id.clone(),
                    reason,
                });
            }
            match tx_index.get(r.linked_tx_id.as_str()) {
                None => errs.push(E::DanglingLink {
                    receiver: r.id.clone(),
                    link: r.linked_tx_id.clone(),
                }),
                Some(t) if t.network_id != net.id || t.band != r.band => {
                    errs.push(E::LinkMismatch {
                        receiver: r.id.clone(),
                        link: r.linked_tx_id.clone(),
                    })
                }
                Some(t) => {
                    for &q in r.active_quanta.difference(&t.active_quanta) {
                        errs.push(E::LinkInactive {
                            receiver: r.id.clone(),
                            link: t.id.clone(),
                            quantum: q,
                        });
                    }
                }
            }
        }
    }
    errs
}
