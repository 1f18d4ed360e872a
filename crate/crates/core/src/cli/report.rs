//! TOML report document.

use serde::Serialize;

use crate::model::Cell;
use crate::muse::{HarvestMetrics, SpectrumQuantity};
use crate::policy::{Attribution, Grant, RefusalReason, Violation};
use crate::sam::{AdmissionOutcome, PolicySummary, RefusalDetail, RequestStatus, SinrViolation};

pub const QUANTITY_UNIT: &str = "W*m^2";

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceValue {
    pub band: usize,
    pub quantum: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub slices: Vec<SliceValue>,
}

impl From<&SpectrumQuantity> for Quantity {
    fn from(q: &SpectrumQuantity) -> Self {
        Self {
            value: sig12(q.value),
            unit: QUANTITY_UNIT,
            slices: q
                .breakdown
                .iter()
                .map(|(s, v)| SliceValue {
                    band: s.band,
                    quantum: s.quantum,
                    value: sig12(*v),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntityEntry {
    pub id: String,
    pub kind: &'static str,
    pub network: String,
    pub consumed: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub price: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrantEntry {
    pub grant_id: String,
    pub grantee: String,
    pub band: usize,
    pub quanta: Vec<usize>,
    pub cell: [usize; 2],
    pub cap_dbm: f64,
    pub margin_db: f64,
}

impl From<&Grant> for GrantEntry {
    fn from(g: &Grant) -> Self {
        Self {
            grant_id: g.grant_id.clone(),
            grantee: g.grantee_tx_id.clone(),
            band: g.caps.first().map(|f| f.slice.band).unwrap_or(0),
            quanta: g.slices().map(|s| s.quantum).collect(),
            cell: [g.cell.ix, g.cell.iy],
            cap_dbm: sig12(g.cap_dbm),
            margin_db: sig12(g.margin_db),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct RefusalEntry {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limiting_rx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarded_opportunity_dbm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occupancy_dbm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity_dbm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub usable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required: Option<usize>,
}

impl From<&RefusalDetail> for RefusalEntry {
    fn from(d: &RefusalDetail) -> Self {
        match d {
            RefusalDetail::Rights(r) => Self {
                kind: "rights",
                band: Some(r.band),
                reason: Some(match r.reason {
                    RefusalReason::NoOpportunity => "no-opportunity",
                    RefusalReason::BelowMinimumUseful => "below-minimum-useful",
                }),
                limiting_rx: r.limiting_rx.clone(),
                guarded_opportunity_dbm: Some(sig12(r.guarded_opportunity_dbm)),
                ..Default::default()
            },
            RefusalDetail::SensedBusy {
                band,
                occupancy_dbm,
                sensitivity_dbm,
            } => Self {
                kind: "sensed-busy",
                band: Some(*band),
                occupancy_dbm: Some(sig12(*occupancy_dbm)),
                sensitivity_dbm: Some(sig12(*sensitivity_dbm)),
                ..Default::default()
            },
            RefusalDetail::NotEnoughBands { usable, required } => Self {
                kind: "not-enough-bands",
                usable: Some(*usable),
                required: Some(*required),
                ..Default::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RequestEntry {
    pub id: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub grants: Vec<GrantEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub refusals: Vec<RefusalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissionSection {
    pub policy: &'static str,
    pub admitted: usize,
    pub available_after: Quantity,
    pub requests: Vec<RequestEntry>,
}

impl AdmissionSection {
    pub fn new(policy: &'static str, outcome: &AdmissionOutcome) -> Self {
        Self {
            policy,
            admitted: outcome.admitted_count,
            available_after: (&outcome.available_after).into(),
            requests: outcome
                .decisions
                .iter()
                .map(|d| match &d.status {
                    RequestStatus::Admitted(g) => RequestEntry {
                        id: d.request_id.clone(),
                        status: "admitted",
                        grants: g.iter().map(GrantEntry::from).collect(),
                        refusals: Vec::new(),
                    },
                    RequestStatus::Refused(r) => RequestEntry {
                        id: d.request_id.clone(),
                        status: "refused",
                        grants: Vec::new(),
                        refusals: r.iter().map(RefusalEntry::from).collect(),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grant_id: Option<String>,
    pub tx_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<[usize; 2]>,
    pub band: usize,
    pub quantum: usize,
    pub granted_dbm: f64,
    pub observed_dbm: f64,
    pub excess_db: f64,
}

impl From<&Violation> for ViolationEntry {
    fn from(v: &Violation) -> Self {
        Self {
            grant_id: v.grant_id.clone(),
            tx_id: v.tx_id.clone(),
            cell: v.cell.map(|Cell { ix, iy }| [ix, iy]),
            band: v.slice.band,
            quantum: v.slice.quantum,
            granted_dbm: sig12(v.granted_dbm),
            observed_dbm: sig12(v.observed_dbm),
            excess_db: sig12(v.excess_db),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShareEntry {
    pub tx_id: String,
    pub excess_mw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributionEntry {
    pub rx_id: String,
    pub quantum: usize,
    pub sinr_db: f64,
    pub interference_mw: f64,
    pub allowed_mw: f64,
    pub excess_mw: f64,
    pub shares: Vec<ShareEntry>,
}

impl From<&Attribution> for AttributionEntry {
    fn from(a: &Attribution) -> Self {
        Self {
            rx_id: a.rx_id.clone(),
            quantum: a.quantum,
            sinr_db: sig12(a.sinr_db),
            interference_mw: sig12(a.interference_mw),
            allowed_mw: sig12(a.allowed_mw),
            excess_mw: sig12(a.excess_mw),
            shares: a
                .shares
                .iter()
                .map(|(id, v)| ShareEntry {
                    tx_id: id.clone(),
                    excess_mw: sig12(*v),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnforcementSection {
    pub tolerance_db: f64,
    pub violations: Vec<ViolationEntry>,
    pub harmful_interference: Vec<AttributionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarvestSection {
    pub margin_db: f64,
    pub recovered: Quantity,
    pub lost_available: Quantity,
    pub potentially_incursed: Quantity,
}

impl HarvestSection {
    pub fn new(margin_db: f64, h: &HarvestMetrics) -> Self {
        Self {
            margin_db: sig12(margin_db),
            recovered: (&h.recovered).into(),
            lost_available: (&h.lost_available).into(),
            potentially_incursed: (&h.potentially_incursed).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinrViolationEntry {
    pub rx_id: String,
    pub quantum: usize,
    pub sinr_db: f64,
    pub beta_db: f64,
    pub deficit_db: f64,
}

impl From<&SinrViolation> for SinrViolationEntry {
    fn from(v: &SinrViolation) -> Self {
        Self {
            rx_id: v.rx_id.clone(),
            quantum: v.quantum,
            sinr_db: sig12(v.sinr_db),
            beta_db: sig12(v.beta_db),
            deficit_db: sig12(v.deficit_db),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyEntry {
    pub admitted: usize,
    pub exploited: Quantity,
    pub violation_count: usize,
    pub total_deficit_db: f64,
    pub violations: Vec<SinrViolationEntry>,
}

impl From<&PolicySummary> for PolicyEntry {
    fn from(p: &PolicySummary) -> Self {
        Self {
            admitted: p.admitted,
            exploited: (&p.exploited).into(),
            violation_count: p.violations.len(),
            total_deficit_db: sig12(p.total_deficit_db()),
            violations: p.violations.iter().map(SinrViolationEntry::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonSection {
    pub margin_db: f64,
    pub sensitivity_dbm: f64,
    pub quantified: PolicyEntry,
    pub osa: PolicyEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriceEntry {
    pub id: String,
    pub consumed: Quantity,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriceSection {
    pub rate: f64,
    pub total_amount: f64,
    pub entrants: Vec<PriceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub protected: Vec<String>,
    pub psi_total: Quantity,
    pub psi_available: Quantity,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub consumption: Vec<EntityEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admission: Option<AdmissionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enforcement: Option<EnforcementSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harvest: Option<HarvestSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prices: Option<PriceSection>,
}

impl ReportDocument {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("reports always serialize")
    }
}
