//! Closed-form energy density and radial energy flux of the state in the
//! high-frequency approximation.
//!
//! The density splits as `rho = rho1 + rho2`. `rho1`, quadratic in the
//! amplitude, is positive and varies only on time scales `~1/p0`; it is
//! evaluated at `t = 0` and reused. `rho2`, linear in the amplitude, carries the
//! fast `cos(2 omega t)` dependence:
//!
//! ```text
//! rho2(r, t) = -(chi0 N^2 / 6 pi^2) f2(p0, r) ∫_{q p0}^{Λ} cos(2 ω t) / ω dω
//! F(r, t)    = -(chi0 N^2 / 6 pi^2) g2(p0, r) [cos(2Λt) - cos(2 q p0 t)] / t
//! ```
//!
//! The slow part of the flux is dropped: it vanishes at `t = 0` and changes on
//! the same `1/p0` scale as `rho1`. Flux values are only meaningful for
//! `|t| < 0.1/p0`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::grid::GridSpec;
use crate::params::HelferParams;
use crate::specfun::{cosine_integral, f1, f2, g2};

/// Times beyond `VALIDITY_TIMES_P0 / p0` are outside the short-time regime.
pub const VALIDITY_TIMES_P0: f64 = 0.1;

/// Below this value of `2 Λ |t|` the flux time factor is evaluated by Taylor
/// series.
const FLUX_TAYLOR_MAX: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub r: f64,
    pub t: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho: f64,
    pub flux: f64,
}

/// Positive part of the energy density, `(2 chi0^2 N^2 / pi^2) f1 ln(Λ/(q p0))`.
pub fn rho1(params: &HelferParams, r: f64) -> f64 {
    params.quadratic_prefactor() * f1(params.p0, r) * params.log_ratio()
}

/// `∫_{q p0}^{Λ} cos(2 ω t)/ω dω = Ci(2Λ|t|) − Ci(2 q p0 |t|)`, and
/// `ln(Λ/(q p0))` at `t = 0`.
pub fn cos_log_integral(params: &HelferParams, t: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        return params.log_ratio();
    }
    let hi = cosine_integral(2.0 * params.lambda * t).expect("positive argument");
    let lo = cosine_integral(2.0 * params.lower_cutoff() * t).expect("positive argument");
    hi - lo
}

/// Amplitude-linear part of the energy density. Even in `t`.
pub fn rho2(params: &HelferParams, r: f64, t: f64) -> f64 {
    -params.linear_prefactor() * f2(params.p0, r) * cos_log_integral(params, t)
}

pub fn rho_total(params: &HelferParams, r: f64, t: f64) -> f64 {
    rho1(params, r) + rho2(params, r, t)
}

/// `[cos(2Λt) − cos(2 q p0 t)] / t`, odd in `t` and zero at `t = 0`.
pub fn flux_time_factor(lambda: f64, lower: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let a = 2.0 * lambda;
    let b = 2.0 * lower;
    if a.max(b) * t.abs() < FLUX_TAYLOR_MAX {
        let (a2, b2) = (a * a, b * b);
        let t2 = t * t;
        return t
            * (-(a2 - b2) / 2.0 + (a2 * a2 - b2 * b2) * t2 / 24.0
                - (a2 * a2 * a2 - b2 * b2 * b2) * t2 * t2 / 720.0);
    }
    // cos x − cos y = −2 sin((x+y)/2) sin((x−y)/2), free of cancellation
    -2.0 * ((lambda + lower) * t).sin() * ((lambda - lower) * t).sin() / t
}

/// Radial energy flux `F = <T^{rt}>`; positive is outward.
pub fn flux(params: &HelferParams, r: f64, t: f64) -> f64 {
    if r == 0.0 || t == 0.0 {
        return 0.0;
    }
    -params.linear_prefactor()
        * g2(params.p0, r)
        * flux_time_factor(params.lambda, params.lower_cutoff(), t)
}

/// `dF/dt` at `t = 0`: `(chi0 N^2 / 3 pi^2) g2 (Λ^2 − q^2 p0^2)`.
pub fn flux_slope_at_origin(params: &HelferParams, r: f64) -> f64 {
    let lo = params.lower_cutoff();
    2.0 * params.linear_prefactor() * g2(params.p0, r) * (params.lambda.powi(2) - lo * lo)
}

pub fn sample(params: &HelferParams, r: f64, t: f64) -> FieldSample {
    let rho1 = rho1(params, r);
    let rho2 = rho2(params, r, t);
    FieldSample {
        r,
        t,
        rho1,
        rho2,
        rho: rho1 + rho2,
        flux: flux(params, r, t),
    }
}

/// Evaluates every `(r, t)` pair, `r` outer and `t` inner.
pub fn field_grid(
    params: &HelferParams,
    r_grid: &GridSpec,
    t_grid: &GridSpec,
) -> Result<Vec<FieldSample>> {
    r_grid.validate()?;
    t_grid.validate()?;
    if r_grid.min < 0.0 {
        return Err(crate::Error::Grid(format!(
            "radius grid must be nonnegative, got min {}",
            r_grid.min
        )));
    }
    let t_limit = VALIDITY_TIMES_P0 / params.p0;
    if t_grid.min.abs().max(t_grid.max.abs()) > t_limit {
        log::warn!(
            "time grid reaches beyond |t| = {t_limit}; the short-time closed forms are not reliable there"
        );
    }
    let rs = r_grid.points();
    let ts = t_grid.points();
    Ok(rs
        .par_iter()
        .flat_map_iter(|&r| ts.iter().map(move |&t| sample(params, r, t)))
        .collect())
}
