//! Quantified access rights: guard margins, grant issuance, enforcement,
//! harmful-interference attribution and consumption-based pricing.

mod attribution;
mod enforce;
mod guard;
mod pricing;
mod rights;

use thiserror::Error;

use crate::muse::MuseError;

pub use attribution::{attribute_harmful_interference, proportional_shares, Attribution};
pub use enforce::{enforce, Violation, DEFAULT_TOLERANCE_DB};
pub use guard::{apply_guard_margin, inexercisable_spectrum};
pub use pricing::{price, PriceSheet};
pub use rights::{define_rights, Grant, Refusal, RefusalReason, RightsDecision, RightsRequest};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error("guard margin must be non-negative, got {0} dB")]
    NegativeMargin(f64),
    #[error("request {0} names no time quanta")]
    EmptyQuanta(String),
    #[error(transparent)]
    Muse(#[from] MuseError),
}
