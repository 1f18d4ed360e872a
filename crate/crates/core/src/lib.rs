//! Discretized spectrum-space quantification.
//!
//! The region of interest is split into unit-regions, unit frequency bands
//! and unit time quanta. Over that grid the engine computes occupancy and
//! opportunity maps, the spectrum consumed by individual transmitters and
//! receivers, the spectrum still available, and quantified access rights
//! (grants) that can be issued, enforced and priced. A binary
//! detect-and-transmit admission baseline is included for comparison.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod interference;
pub mod model;
pub mod muse;
pub mod propagation;
pub mod units;
pub mod policy;
pub mod sam;
