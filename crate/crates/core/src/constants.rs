//! Numeric constants used by the discrepancy bounds.
//!
//! Values are stored as literals. The test suite re-derives each one from
//! its defining series or limit, so a transcription error fails the build.

use crate::{Error, Real, Result};

/// Catalan's constant, `sum_{k>=0} (-1)^k / (2k+1)^2`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932;

/// Euler-Mascheroni constant, `lim (H_n - ln n)`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// `sqrt(2 pi / CATALAN)`, the factor in front of every angular
/// discrepancy bound.
pub const GANELIUS_FACTOR: f64 = 2.619_089_586_147_239_310_440_186_497_15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedConstant {
    pub name: &'static str,
    pub value: f64,
    /// How the value is independently reproduced in the tests.
    pub oracle: &'static str,
}

const TABLE: [CertifiedConstant; 3] = [
    CertifiedConstant {
        name: "catalan",
        value: CATALAN,
        oracle: "alternating series sum (-1)^k/(2k+1)^2 with Euler-transform acceleration",
    },
    CertifiedConstant {
        name: "euler_gamma",
        value: EULER_GAMMA,
        oracle: "H_n - ln n with Richardson extrapolation in 1/n",
    },
    CertifiedConstant {
        name: "ganelius_factor",
        value: GANELIUS_FACTOR,
        oracle: "sqrt(2 pi / catalan)",
    },
];

/// Looks up a constant by name: `catalan`, `euler_gamma` or `ganelius_factor`.
pub fn get(name: &str) -> Result<CertifiedConstant> {
    TABLE
        .iter()
        .find(|c| c.name == name)
        .copied()
        .ok_or_else(|| Error::UnknownConstant(name.to_string()))
}

pub fn all() -> &'static [CertifiedConstant] {
    &TABLE
}

#[inline]
pub fn catalan<T: Real>() -> T {
    T::lit(CATALAN)
}

#[inline]
pub fn euler_gamma<T: Real>() -> T {
    T::lit(EULER_GAMMA)
}

#[inline]
pub fn ganelius_factor<T: Real>() -> T {
    T::lit(GANELIUS_FACTOR)
}

/// Partial sum of the Catalan series through index `k` (inclusive).
pub fn catalan_partial_sum(k: usize) -> f64 {
    (0..=k)
        .map(|j| {
            let d = (2 * j + 1) as f64;
            let term = 1.0 / (d * d);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}
