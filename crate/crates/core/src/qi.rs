//! Time averages of the energy density along static worldlines.
//!
//! All averages are done analytically against the closed-form density. With the
//! normalized Lorentzian `τ / (π (t² + τ²))`, `cos(2ωt)` averages to `e^{−2ωτ}`,
//! so the frequency integral becomes a difference of `E1`. Over a sharp window
//! `[−T, T]` it integrates to `sin(2ωT)/ω`, and the frequency integral reduces to
//! sines and `Ci`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Scale};
use crate::helfer::rho1;
use crate::params::HelferParams;
use crate::specfun::{cosine_integral, exp_integral_e1, f2};

/// Lorentzian-sampling bound constant for a massless scalar in four
/// dimensions, `3/(32π²)`; the bound is `−C/τ⁴`. It is an external input, not
/// derived here.
pub const DEFAULT_BOUND_CONST: f64 = 3.0 / (32.0 * PI * PI);

pub const MIN_HORIZON_GRID: usize = 64;

/// Smallest window scanned by [`positivity_horizon`], in units of `1/Λ`.
const HORIZON_START_TIMES_INV_LAMBDA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QIReport {
    pub r: f64,
    /// Lorentzian width `τ`.
    pub tau: f64,
    pub averaged_rho: f64,
    pub bound_value: f64,
    pub margin: f64,
    pub passed: bool,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

/// Lorentzian-weighted average of the density at radius `r`:
/// `rho1(r) − (chi0 N²/6π²) f2(p0, r) [E1(2 q p0 τ) − E1(2Λτ)]`.
pub fn lorentzian_average(params: &HelferParams, r: f64, tau: f64) -> Result<f64> {
    positive("tau", tau)?;
    let lo = exp_integral_e1(2.0 * params.lower_cutoff() * tau)?;
    let hi = exp_integral_e1(2.0 * params.lambda * tau)?;
    Ok(rho1(params, r) - params.linear_prefactor() * f2(params.p0, r) * (lo - hi))
}

/// `∫_{−T}^{T} rho(r, t) dt` for the closed-form density.
pub fn window_integral(params: &HelferParams, r: f64, half_width: f64) -> Result<f64> {
    positive("T", half_width)?;
    let t = half_width;
    let (lo, hi) = (params.lower_cutoff(), params.lambda);
    let oscillatory = (2.0 * lo * t).sin() / lo - (2.0 * hi * t).sin() / hi
        + 2.0 * t * (cosine_integral(2.0 * hi * t)? - cosine_integral(2.0 * lo * t)?);
    Ok(2.0 * t * rho1(params, r) - params.linear_prefactor() * f2(params.p0, r) * oscillatory)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Horizon {
    /// Largest window half-width at which the window integral changes sign.
    pub t_star: Option<f64>,
    /// The integral is positive at every scanned width above `t_star` (or
    /// vanishes identically).
    pub all_positive_beyond: bool,
    pub sign_changes: usize,
}

/// Scans `W(T)` on a log grid from `0.01/Λ` to `t_max` and locates the last
/// sign change, refined by bisection.
pub fn positivity_horizon(
    params: &HelferParams,
    r: f64,
    t_max: f64,
    grid_n: usize,
) -> Result<Horizon> {
    positive("T_max", t_max)?;
    if grid_n < MIN_HORIZON_GRID {
        return Err(Error::Grid(format!(
            "horizon scan needs at least {MIN_HORIZON_GRID} points, got {grid_n}"
        )));
    }
    let t_min = HORIZON_START_TIMES_INV_LAMBDA / params.lambda;
    let grid = GridSpec::new(t_min, t_max, grid_n, Scale::Log)?;
    let ts = grid.points();
    let ws = ts
        .iter()
        .map(|&t| window_integral(params, r, t))
        .collect::<Result<Vec<_>>>()?;

    if ws.iter().all(|&w| w == 0.0) {
        return Ok(Horizon {
            t_star: None,
            all_positive_beyond: true,
            sign_changes: 0,
        });
    }

    let mut sign_changes = 0;
    let mut last = None;
    for i in 0..ws.len() - 1 {
        if (ws[i] > 0.0) != (ws[i + 1] > 0.0) {
            sign_changes += 1;
            last = Some(i);
        }
    }
    let (t_star, beyond) = match last {
        Some(i) => {
            let t_star = bisect(|t| window_integral(params, r, t), ts[i], ts[i + 1])?;
            (Some(t_star), i + 1)
        }
        None => (None, 0),
    };
    Ok(Horizon {
        t_star,
        all_positive_beyond: ws[beyond..].iter().all(|&w| w > 0.0),
        sign_changes,
    })
}

fn bisect(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Compares the Lorentzian average against `−bound_const / τ⁴` at each width.
pub fn qi_margin(
    params: &HelferParams,
    r: f64,
    tau_grid: &GridSpec,
    bound_const: f64,
) -> Result<Vec<QIReport>> {
    positive("bound_const", bound_const)?;
    tau_grid.validate()?;
    if tau_grid.scale != Scale::Log && !tau_grid.is_point() {
        return Err(Error::Grid("tau grid must be log-scaled".into()));
    }
    if tau_grid.min <= 0.0 {
        return Err(Error::Grid("tau grid must be positive".into()));
    }
    tau_grid
        .points()
        .into_iter()
        .map(|tau| {
            let averaged_rho = lorentzian_average(params, r, tau)?;
            let bound_value = -bound_const / tau.powi(4);
            let margin = averaged_rho - bound_value;
            Ok(QIReport {
                r,
                tau,
                averaged_rho,
                bound_value,
                margin,
                passed: margin >= 0.0,
            })
        })
        .collect()
}
