//! Strict TOML scenario document and its mapping onto engine types.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::model::{
    validate_scenario, AntennaPattern, Grid, Point, PowerBounds, Receiver, RfNetwork, Scenario, Slice,
    SpectrumSpaceDims, Transmitter,
};
use crate::policy::{PriceSheet, DEFAULT_TOLERANCE_DB};
use crate::propagation::{PathLossModel, PropagationConfig};
use crate::sam::{validate_requests, AccessRequest};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub grid: GridDoc,
    #[serde(default)]
    pub dims: DimsDoc,
    pub bounds: BoundsDoc,
    #[serde(default)]
    pub propagation: PropagationDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub networks: Vec<NetworkDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requests: Vec<RequestDoc>,
    /// Transmitters observed on air in addition to the scenario's own,
    /// checked by enforcement.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observed: Vec<TransmitterDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<PolicyDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    #[serde(default)]
    pub origin: [f64; 2],
    pub cell_size: f64,
    pub n_x: usize,
    pub n_y: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsDoc {
    pub bands: usize,
    pub quanta: usize,
    #[serde(default)]
    pub band_width_hz: f64,
    #[serde(default)]
    pub quantum_duration_s: f64,
}

impl Default for DimsDoc {
    fn default() -> Self {
        Self {
            bands: 1,
            quanta: 1,
            band_width_hz: 0.0,
            quantum_duration_s: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    pub p_max_dbm: f64,
    pub p_min_dbm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelDoc {
    FreeSpace,
    LogDistance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropagationDoc {
    pub model: ModelDoc,
    pub path_loss_exponent: f64,
    pub reference_distance_m: f64,
    pub reference_loss_db: f64,
    pub min_distance_clamp_m: f64,
}

impl Default for PropagationDoc {
    fn default() -> Self {
        PropagationConfig::default().into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PatternDoc {
    Omni {},
    Sectored {
        boresight_deg: f64,
        beamwidth_deg: f64,
        main_gain_db: f64,
        back_gain_db: f64,
    },
}

impl Default for PatternDoc {
    fn default() -> Self {
        PatternDoc::Omni {}
    }
}

fn is_omni(p: &PatternDoc) -> bool {
    *p == PatternDoc::Omni {}
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transmitters: Vec<TransmitterDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub receivers: Vec<ReceiverDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmitterDoc {
    pub id: String,
    pub position: [f64; 2],
    pub power_dbm: f64,
    pub band: usize,
    pub quanta: BTreeSet<usize>,
    #[serde(default, skip_serializing_if = "is_omni")]
    pub pattern: PatternDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReceiverDoc {
    pub id: String,
    pub position: [f64; 2],
    pub band: usize,
    pub quanta: BTreeSet<usize>,
    pub beta_db: f64,
    pub noise_floor_dbm: f64,
    pub linked_tx: String,
    #[serde(default, skip_serializing_if = "is_omni")]
    pub pattern: PatternDoc,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestDoc {
    pub id: String,
    pub position: [f64; 2],
    pub desired_dbm: f64,
    pub min_useful_dbm: f64,
    #[serde(default = "one")]
    pub required_bands: usize,
    pub bands: BTreeSet<usize>,
    pub quanta: BTreeSet<usize>,
    #[serde(default)]
    pub priority: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PolicyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub price_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slice_rates: Vec<SliceRateDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceRateDoc {
    pub band: usize,
    pub quantum: usize,
    pub rate: f64,
}

/// Policy parameters with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyParams {
    pub margin_db: f64,
    pub sensitivity_dbm: f64,
    pub tolerance_db: f64,
    pub prices: Option<PriceSheet>,
}

pub const DEFAULT_SENSITIVITY_DBM: f64 = -90.0;

impl Default for PolicyParams {
    fn default() -> Self {
        Self {
            margin_db: 0.0,
            sensitivity_dbm: DEFAULT_SENSITIVITY_DBM,
            tolerance_db: DEFAULT_TOLERANCE_DB,
            prices: None,
        }
    }
}

/// A parsed and validated document.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDocument {
    pub scenario: Scenario,
    pub requests: Vec<AccessRequest>,
    pub observed: Vec<Transmitter>,
    pub policy: PolicyParams,
}

/// Network that observed-only transmitters are placed in.
pub const OBSERVED_NETWORK: &str = "observed";

impl From<PropagationConfig> for PropagationDoc {
    fn from(c: PropagationConfig) -> Self {
        Self {
            model: match c.model {
                PathLossModel::FreeSpace => ModelDoc::FreeSpace,
                PathLossModel::LogDistance => ModelDoc::LogDistance,
            },
            path_loss_exponent: c.path_loss_exponent,
            reference_distance_m: c.reference_distance_m,
            reference_loss_db: c.reference_loss_db,
            min_distance_clamp_m: c.min_distance_clamp_m,
        }
    }
}

impl From<&PropagationDoc> for PropagationConfig {
    fn from(d: &PropagationDoc) -> Self {
        Self {
            model: match d.model {
                ModelDoc::FreeSpace => PathLossModel::FreeSpace,
                ModelDoc::LogDistance => PathLossModel::LogDistance,
            },
            path_loss_exponent: d.path_loss_exponent,
            reference_distance_m: d.reference_distance_m,
            reference_loss_db: d.reference_loss_db,
            min_distance_clamp_m: d.min_distance_clamp_m,
        }
    }
}

impl From<PatternDoc> for AntennaPattern {
    fn from(p: PatternDoc) -> Self {
        match p {
            PatternDoc::Omni {} => AntennaPattern::Omni,
            PatternDoc::Sectored {
                boresight_deg,
                beamwidth_deg,
                main_gain_db,
                back_gain_db,
            } => AntennaPattern::Sectored {
                boresight_deg,
                beamwidth_deg,
                main_gain_db,
                back_gain_db,
            },
        }
    }
}

impl From<AntennaPattern> for PatternDoc {
    fn from(p: AntennaPattern) -> Self {
        match p {
            AntennaPattern::Omni => PatternDoc::Omni {},
            AntennaPattern::Sectored {
                boresight_deg,
                beamwidth_deg,
                main_gain_db,
                back_gain_db,
            } => PatternDoc::Sectored {
                boresight_deg,
                beamwidth_deg,
                main_gain_db,
                back_gain_db,
            },
        }
    }
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

impl TransmitterDoc {
    fn to_model(&self, network_id: &str) -> Transmitter {
        Transmitter {
            id: self.id.clone(),
            network_id: network_id.to_string(),
            position: point(self.position),
            tx_power_dbm: self.power_dbm,
            band: self.band,
            active_quanta: self.quanta.clone(),
            pattern: self.pattern.into(),
        }
    }

    fn from_model(t: &Transmitter) -> Self {
        Self {
            id: t.id.clone(),
            position: [t.position.x, t.position.y],
            power_dbm: t.tx_power_dbm,
            band: t.band,
            quanta: t.active_quanta.clone(),
            pattern: t.pattern.into(),
        }
    }
}

impl ScenarioDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario documents always serialize")
    }

    /// Builds the engine scenario without validating it.
    pub fn scenario(&self) -> Scenario {
        Scenario {
            grid: Grid::new(point(self.grid.origin), self.grid.cell_size, self.grid.n_x, self.grid.n_y),
            dims: SpectrumSpaceDims {
                b_hat: self.dims.bands,
                t_hat: self.dims.quanta,
                band_width_hz: self.dims.band_width_hz,
                quantum_duration_s: self.dims.quantum_duration_s,
            },
            bounds: PowerBounds::new(self.bounds.p_max_dbm, self.bounds.p_min_dbm),
            propagation: (&self.propagation).into(),
            networks: self
                .networks
                .iter()
                .map(|n| RfNetwork {
                    id: n.id.clone(),
                    transmitters: n.transmitters.iter().map(|t| t.to_model(&n.id)).collect(),
                    receivers: n
                        .receivers
                        .iter()
                        .map(|r| Receiver {
                            id: r.id.clone(),
                            network_id: n.id.clone(),
                            position: point(r.position),
                            band: r.band,
                            active_quanta: r.quanta.clone(),
                            pattern: r.pattern.into(),
                            beta_db: r.beta_db,
                            noise_floor_dbm: r.noise_floor_dbm,
                            linked_tx_id: r.linked_tx.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn requests(&self) -> Vec<AccessRequest> {
        self.requests
            .iter()
            .map(|r| AccessRequest {
                request_id: r.id.clone(),
                position: point(r.position),
                desired_dbm: r.desired_dbm,
                min_useful_dbm: r.min_useful_dbm,
                required_bands: r.required_bands,
                acceptable_bands: r.bands.clone(),
                quanta: r.quanta.clone(),
                priority: r.priority,
            })
            .collect()
    }

    pub fn policy_params(&self) -> PolicyParams {
        let mut p = PolicyParams::default();
        if let Some(doc) = &self.policy {
            p.margin_db = doc.margin_db.unwrap_or(p.margin_db);
            p.sensitivity_dbm = doc.sensitivity_dbm.unwrap_or(p.sensitivity_dbm);
            p.tolerance_db = doc.tolerance_db.unwrap_or(p.tolerance_db);
            if doc.price_rate.is_some() || !doc.slice_rates.is_empty() {
                p.prices = Some(PriceSheet {
                    rate: doc.price_rate.unwrap_or(0.0),
                    slice_rates: doc
                        .slice_rates
                        .iter()
                        .map(|r| (Slice::new(r.band, r.quantum), r.rate))
                        .collect::<BTreeMap<_, _>>(),
                });
            }
        }
        p
    }

    /// Document describing `scenario` alone (no requests, observations or policy).
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            grid: GridDoc {
                origin: [s.grid.origin.x, s.grid.origin.y],
                cell_size: s.grid.cell_size,
                n_x: s.grid.n_x,
                n_y: s.grid.n_y,
            },
            dims: DimsDoc {
                bands: s.dims.b_hat,
                quanta: s.dims.t_hat,
                band_width_hz: s.dims.band_width_hz,
                quantum_duration_s: s.dims.quantum_duration_s,
            },
            bounds: BoundsDoc {
                p_max_dbm: s.bounds.p_max_dbm,
                p_min_dbm: s.bounds.p_min_dbm,
            },
            propagation: s.propagation.into(),
            networks: s
                .networks
                .iter()
                .map(|n| NetworkDoc {
                    id: n.id.clone(),
                    transmitters: n.transmitters.iter().map(TransmitterDoc::from_model).collect(),
                    receivers: n
                        .receivers
                        .iter()
                        .map(|r| ReceiverDoc {
                            id: r.id.clone(),
                            position: [r.position.x, r.position.y],
                            band: r.band,
                            quanta: r.active_quanta.clone(),
                            beta_db: r.beta_db,
                            noise_floor_dbm: r.noise_floor_dbm,
                            linked_tx: r.linked_tx_id.clone(),
                            pattern: r.pattern.into(),
                        })
                        .collect(),
                })
                .collect(),
            requests: Vec::new(),
            observed: Vec::new(),
            policy: None,
        }
    }

    /// Parses the full document and validates scenario, requests and
    /// observations.
    pub fn load(&self) -> Result<LoadedDocument, CliError> {
        let scenario = validate_scenario(self.scenario()).map_err(CliError::Validation)?;
        let requests = self.requests();
        let request_errors = validate_requests(&scenario, &requests);
        if !request_errors.is_empty() {
            return Err(CliError::Requests(request_errors));
        }
        let observed: Vec<Transmitter> = self
            .observed
            .iter()
            .map(|t| t.to_model(OBSERVED_NETWORK))
            .collect();
        if !observed.is_empty() {
            let mut probe = scenario.clone();
            for t in &observed {
                probe.add_transmitter(t.clone());
            }
            validate_scenario(probe).map_err(CliError::Validation)?;
        }
        let policy = self.policy_params();
        if !(policy.margin_db >= 0.0) {
            return Err(CliError::Invalid(format!("margin_db must be >= 0, got {}", policy.margin_db)));
        }
        if !(policy.tolerance_db >= 0.0) {
            return Err(CliError::Invalid(format!(
                "tolerance_db must be >= 0, got {}",
                policy.tolerance_db
            )));
        }
        if let Some(p) = &policy.prices {
            if p.rate < 0.0 || p.slice_rates.values().any(|r| !(*r >= 0.0)) {
                return Err(CliError::Invalid("price rates must be >= 0".into()));
            }
        }
        Ok(LoadedDocument {
            scenario,
            requests,
            observed,
            policy,
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads, parses and validates a scenario document.
pub fn load_document(path: &Path) -> Result<LoadedDocument, CliError> {
    ScenarioDocument::parse(&read(path)?)?.load()
}

/// Reads, parses and validates the scenario part of a document.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    load_document(path).map(|d| d.scenario)
}
