//! State parameters: momentum cutoff, pair-momentum cutoff, lower-cutoff
//! multiplier, spectral amplitude and the derived normalization.

use std::f64::consts::PI;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default lower-cutoff multiplier `q`.
pub const DEFAULT_Q: f64 = 10.0;

/// Below this `q` the approximation is accepted but logged as doubtful.
pub const Q_WARN_BELOW: f64 = 5.0;

/// How the spectral amplitude `chi0` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Chi0 {
    /// `chi0 = 3 / (800 pi p0)`, a tenth of the central-negativity threshold.
    /// Written as `"paper-default"` in configuration files.
    #[default]
    Standard,
    Value(f64),
}

impl Chi0 {
    pub fn resolve(self, p0: f64) -> f64 {
        match self {
            Chi0::Standard => 3.0 / (800.0 * PI * p0),
            Chi0::Value(v) => v,
        }
    }
}

const STANDARD_TAG: &str = "paper-default";

impl Serialize for Chi0 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Chi0::Standard => serializer.serialize_str(STANDARD_TAG),
            Chi0::Value(v) => serializer.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Chi0 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Chi0Visitor;

        impl Visitor<'_> for Chi0Visitor {
            type Value = Chi0;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a nonnegative number or \"{STANDARD_TAG}\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Chi0, E> {
                if v == STANDARD_TAG {
                    Ok(Chi0::Standard)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Chi0, E> {
                Ok(Chi0::Value(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Chi0, E> {
                Ok(Chi0::Value(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Chi0, E> {
                Ok(Chi0::Value(v as f64))
            }
        }

        deserializer.deserialize_any(Chi0Visitor)
    }
}

/// Validated state parameters. Immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HelferParams {
    /// Single-particle momentum cutoff.
    pub lambda: f64,
    /// Cutoff on the pair momentum `|k1 + k2|`.
    pub p0: f64,
    /// The frequency integrals run over `[q p0, lambda]`.
    pub q: f64,
    /// Top-hat spectral amplitude.
    pub chi0: f64,
    /// Normalization `N` of the state.
    pub n_norm: f64,
}

impl HelferParams {
    pub fn new(lambda: f64, p0: f64, q: f64, chi0: Chi0) -> Result<Self> {
        positive("lambda", lambda)?;
        positive("p0", p0)?;
        if !q.is_finite() || q <= 1.0 {
            return Err(Error::CutoffMultiplier(q));
        }
        if lambda <= q * p0 {
            return Err(Error::EmptyFrequencyRange {
                lambda,
                lower: q * p0,
            });
        }
        let chi0 = chi0.resolve(p0);
        if !chi0.is_finite() || chi0 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "chi0",
                value: chi0,
                reason: "must be finite and nonnegative",
            });
        }
        if q < Q_WARN_BELOW {
            log::warn!("q = {q} is small; the high-frequency approximation assumes q >> 1");
        }
        Ok(HelferParams {
            lambda,
            p0,
            q,
            chi0,
            n_norm: normalization_parts(lambda, p0, q, chi0),
        })
    }

    /// Parameters used for the fixed-time profiles: `p0 = 1`, `q = 10`,
    /// default amplitude, with the given cutoff.
    pub fn figure(lambda: f64) -> Result<Self> {
        Self::new(lambda, 1.0, DEFAULT_Q, Chi0::Standard)
    }

    /// `q p0`, the effective lower frequency cutoff.
    pub fn lower_cutoff(&self) -> f64 {
        self.q * self.p0
    }

    /// `ln(lambda / (q p0))`.
    pub fn log_ratio(&self) -> f64 {
        (self.lambda / self.lower_cutoff()).ln()
    }

    pub fn n_squared(&self) -> f64 {
        self.n_norm * self.n_norm
    }

    /// Common prefactor `chi0 N^2 / (6 pi^2)` of the terms linear in the amplitude.
    pub fn linear_prefactor(&self) -> f64 {
        self.chi0 * self.n_squared() / (6.0 * PI * PI)
    }

    /// Prefactor `2 chi0^2 N^2 / pi^2` of the term quadratic in the amplitude.
    pub fn quadratic_prefactor(&self) -> f64 {
        2.0 * self.chi0 * self.chi0 * self.n_squared() / (PI * PI)
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

/// Norm integral `I = (16 pi^2 / 3) chi0^2 (p0^2/q - p0^3/lambda)`.
fn norm_integral(lambda: f64, p0: f64, q: f64, chi0: f64) -> f64 {
    16.0 * PI * PI / 3.0 * chi0 * chi0 * (p0 * p0 / q - p0 * p0 * p0 / lambda)
}

fn normalization_parts(lambda: f64, p0: f64, q: f64, chi0: f64) -> f64 {
    (1.0 + 2.0 * norm_integral(lambda, p0, q, chi0)).powf(-0.5)
}

/// Normalization `N = (1 + 2I)^(-1/2)` with the finite-cutoff norm integral.
pub fn normalization(params: &HelferParams) -> f64 {
    normalization_parts(params.lambda, params.p0, params.q, params.chi0)
}

/// The `lambda -> infinity` form `(1 + 32 pi^2/3 chi0^2 p0^2/q)^(-1/2)`.
pub fn normalization_limit(params: &HelferParams) -> f64 {
    let p0 = params.p0;
    let chi0 = params.chi0;
    (1.0 + 32.0 * PI * PI / 3.0 * chi0 * chi0 * p0 * p0 / params.q).powf(-0.5)
}

/// Amplitude below which the energy density near the origin is negative at
/// `t = 0`: `3 / (80 pi p0)`.
pub fn chi0_bound(p0: f64) -> Result<f64> {
    positive("p0", p0)?;
    Ok(3.0 / (80.0 * PI * p0))
}
