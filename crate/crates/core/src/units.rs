//! dBm / milliwatt conversions.
//!
//! Every field is exchanged in dBm and aggregated in linear milliwatts. These
//! two functions are the only conversion path in the crate.

/// dBm (or dB) to linear milliwatts (or a linear ratio).
#[inline]
pub fn lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear milliwatts (or a linear ratio) to dBm (or dB). Zero maps to `-inf`.
#[inline]
pub fn db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Milliwatts to watts.
#[inline]
pub fn mw_to_w(mw: f64) -> f64 {
    mw * 1e-3
}
