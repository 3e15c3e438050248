//! Vacuum correlation between radial energy flux and energy density for a
//! massless scalar in two and four dimensions.
//!
//! Both share the form `C = Δx Δt (Δx² + Δt²) [G''(σ)]²` with
//! `σ = (Δx² − Δt²)/2`; only the two-point function differs:
//! `G = −ln(σ)/(4π)` in 2D and `G = 1/(8π² σ)` in 4D.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Scale};

/// Points with `|Δx² − Δt²|` below this are treated as on the light cone.
pub const LIGHTCONE_EPS: f64 = 1e-9;

/// Sign classification of a correlator sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    /// `t' < 0`, `x > 0`: a positive density at `x' = 0` is followed by
    /// outward flux on the right, on average.
    APositive,
    /// `t' < 0`, `x < 0`: a positive density is followed by outward flux on
    /// the left, on average.
    ANegative,
    /// `t' > 0`, `x < 0`: flux directed toward the origin from the left
    /// precedes a positive density, on average.
    BPositive,
    /// `t' > 0`, `x > 0`: flux directed toward the origin from the right
    /// precedes a positive density, on average.
    BNegative,
    /// 4D, `Δt > 0`: the density at the earlier time is positively correlated
    /// with outward flux later.
    OutgoingCorrelated,
    /// 4D, `Δt < 0`: the density at the later time is positively correlated
    /// with inward flux earlier.
    IngoingCorrelated,
    /// `x = 0` or `t' = 0` in 2D, `Δt = 0` in 4D: the correlator vanishes.
    Uncorrelated,
    /// `σ = 0`; the correlator diverges.
    Lightcone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrSample {
    /// `x` in 2D, `r` in 4D.
    pub coord_a: f64,
    /// `t'` in 2D (with `t = 0`, `x' = 0`), `Δt = t − t'` in 4D (with `r' = 0`).
    pub coord_b: f64,
    /// `None` on the light cone.
    pub c_value: Option<f64>,
    pub case_label: CaseLabel,
}

fn on_lightcone(a: f64, b: f64) -> bool {
    (a * a - b * b).abs() < LIGHTCONE_EPS
}

/// Quadrant label for the 2D correlator at `(x, t')`.
pub fn sign_case_2d(x: f64, tprime: f64) -> CaseLabel {
    if on_lightcone(x, tprime) {
        return CaseLabel::Lightcone;
    }
    if x == 0.0 || tprime == 0.0 {
        return CaseLabel::Uncorrelated;
    }
    match (tprime < 0.0, x > 0.0) {
        (true, true) => CaseLabel::APositive,
        (true, false) => CaseLabel::ANegative,
        (false, false) => CaseLabel::BPositive,
        (false, true) => CaseLabel::BNegative,
    }
}

fn sign_case_4d(r: f64, dt: f64) -> CaseLabel {
    if on_lightcone(r, dt) {
        CaseLabel::Lightcone
    } else if dt > 0.0 {
        CaseLabel::OutgoingCorrelated
    } else if dt < 0.0 {
        CaseLabel::IngoingCorrelated
    } else {
        CaseLabel::Uncorrelated
    }
}

/// `[G''(σ)]²` in 2D, `1 / (π² (x² − t'²)^4)`.
pub fn g2nd_squared_2d(x: f64, tprime: f64) -> f64 {
    let s = x * x - tprime * tprime;
    1.0 / (PI * PI * s.powi(4))
}

/// `[G''(σ)]²` in 4D, `4 / (π⁴ (r² − Δt²)^6)`.
pub fn g2nd_squared_4d(r: f64, dt: f64) -> f64 {
    let s = r * r - dt * dt;
    4.0 / (PI.powi(4) * s.powi(6))
}

/// Flux at `(x, t = 0)` against density at `(x' = 0, t')` in two dimensions:
/// `C = −x t' (x² + t'²) [G''(σ)]²`.
pub fn corr2d(x: f64, tprime: f64) -> CorrSample {
    let case_label = sign_case_2d(x, tprime);
    let c_value = (case_label != CaseLabel::Lightcone)
        .then(|| -x * tprime * (x * x + tprime * tprime) * g2nd_squared_2d(x, tprime));
    CorrSample {
        coord_a: x,
        coord_b: tprime,
        c_value,
        case_label,
    }
}

/// Radial flux at `(r, t)` against density at the origin at `t'`, with
/// `dt = t − t'`: `C = r Δt (Δt² + r²) [G''(σ)]²`. Its sign is that of `dt`.
pub fn corr4d(r: f64, dt: f64) -> Result<CorrSample> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "radial flux needs r > 0",
        });
    }
    let case_label = sign_case_4d(r, dt);
    let c_value = (case_label != CaseLabel::Lightcone)
        .then(|| r * dt * (dt * dt + r * r) * g2nd_squared_4d(r, dt));
    Ok(CorrSample {
        coord_a: r,
        coord_b: dt,
        c_value,
        case_label,
    })
}

/// Which coordinate is swept in a falloff fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FalloffAxis {
    /// 2D, sweep `x` at fixed `t'`.
    Space2d,
    /// 2D, sweep `t'` at fixed `x`.
    Time2d,
    /// 4D, sweep `r` at fixed `Δt`.
    Space4d,
    /// 4D, sweep `Δt` at fixed `r`.
    Time4d,
}

impl FalloffAxis {
    /// Asymptotic power of the swept coordinate.
    pub fn expected_exponent(self) -> f64 {
        match self {
            FalloffAxis::Space2d | FalloffAxis::Time2d => -5.0,
            FalloffAxis::Space4d | FalloffAxis::Time4d => -9.0,
        }
    }

    fn evaluate(self, fixed: f64, varying: f64) -> Result<CorrSample> {
        match self {
            FalloffAxis::Space2d => Ok(corr2d(varying, fixed)),
            FalloffAxis::Time2d => Ok(corr2d(fixed, varying)),
            FalloffAxis::Space4d => corr4d(varying, fixed),
            FalloffAxis::Time4d => corr4d(fixed, varying),
        }
    }
}

pub const MIN_FIT_POINTS: usize = 32;

/// Least-squares slope of `ln|C|` against `ln(coordinate)` along one axis.
pub fn falloff_exponent(axis: FalloffAxis, fixed: f64, varying: &GridSpec) -> Result<f64> {
    varying.validate()?;
    if varying.scale != Scale::Log {
        return Err(Error::Grid("falloff fit needs a log-scaled range".into()));
    }
    if varying.count < MIN_FIT_POINTS {
        return Err(Error::Grid(format!(
            "falloff fit needs at least {MIN_FIT_POINTS} points, got {}",
            varying.count
        )));
    }
    if varying.min < 10.0 * fixed.abs() {
        return Err(Error::Grid(format!(
            "falloff range must start at 10x the fixed coordinate ({}), got {}",
            10.0 * fixed.abs(),
            varying.min
        )));
    }
    let mut xs = Vec::with_capacity(varying.count);
    let mut ys = Vec::with_capacity(varying.count);
    for (i, v) in varying.points().into_iter().enumerate() {
        let s = axis.evaluate(fixed, v)?;
        match s.c_value {
            Some(c) if c != 0.0 => {
                xs.push(v.ln());
                ys.push(c.abs().ln());
            }
            Some(_) => {
                return Err(Error::Grid(format!(
                    "correlator vanishes at index {i} ({v}); no log available"
                )))
            }
            None => return Err(Error::LightCone(format!("index {i} ({v})"))),
        }
    }
    Ok(ols_slope(&xs, &ys))
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn corr2d_reference_point() {
        let s = corr2d(2.0, -1.0);
        assert_relative_eq!(
            s.c_value.unwrap(),
            10.0 / (81.0 * PI * PI),
            max_relative = 1e-14
        );
        assert_relative_eq!(s.c_value.unwrap(), 1.25088e-2, max_relative = 1e-5);
        assert_eq!(s.case_label, CaseLabel::APositive);

        let s = corr2d(-2.0, -1.0);
        assert_relative_eq!(s.c_value.unwrap(), -1.25088e-2, max_relative = 1e-5);
        assert_eq!(s.case_label, CaseLabel::ANegative);
    }

    #[test]
    fn lightcone_points() {
        let s = corr2d(1.0, 1.0);
        assert_eq!(s.case_label, CaseLabel::Lightcone);
        assert!(s.c_value.is_none());
        assert_eq!(corr2d(1.0, -1.0 - 1e-11).case_label, CaseLabel::Lightcone);
        let s = corr4d(2.0, -2.0).unwrap();
        assert_eq!(s.case_label, CaseLabel::Lightcone);
        assert!(s.c_value.is_none());
    }

    #[test]
    fn quadrant_table() {
        assert_eq!(sign_case_2d(1.0, -3.0), CaseLabel::APositive);
        assert_eq!(sign_case_2d(-1.0, -3.0), CaseLabel::ANegative);
        assert_eq!(sign_case_2d(1.0, 3.0), CaseLabel::BNegative);
        assert_eq!(sign_case_2d(-1.0, 3.0), CaseLabel::BPositive);
        assert_eq!(sign_case_2d(0.0, 3.0), CaseLabel::Uncorrelated);
        assert_eq!(sign_case_2d(0.0, 0.0), CaseLabel::Lightcone);
        for (x, t) in [(3.0, -1.0), (-3.0, -1.0), (3.0, 1.0), (-3.0, 1.0)] {
            let s = corr2d(x, t);
            let c = s.c_value.unwrap();
            let positive = matches!(s.case_label, CaseLabel::APositive | CaseLabel::BPositive);
            assert_eq!(c > 0.0, positive, "({x}, {t})");
        }
    }

    #[test]
    fn corr4d_values() {
        let s = corr4d(1.0, 2.0).unwrap();
        assert_relative_eq!(
            s.c_value.unwrap(),
            40.0 / (729.0 * PI.powi(4)),
            max_relative = 1e-14
        );
        assert_relative_eq!(s.c_value.unwrap(), 5.6329e-4, max_relative = 1e-4);
        assert_eq!(s.case_label, CaseLabel::OutgoingCorrelated);
        let s = corr4d(1.0, -2.0).unwrap();
        assert_relative_eq!(s.c_value.unwrap(), -5.6329e-4, max_relative = 1e-4);
        assert_eq!(s.case_label, CaseLabel::IngoingCorrelated);
        let tiny = corr4d(3.0, 1e-12).unwrap().c_value.unwrap();
        assert!(tiny > 0.0 && tiny < 1e-14);
        assert!(corr4d(0.0, 1.0).is_err());
    }

    #[test]
    fn falloff_slopes() {
        let range = GridSpec::log(10.0, 1000.0, 64).unwrap();
        for axis in [
            FalloffAxis::Space2d,
            FalloffAxis::Time2d,
            FalloffAxis::Space4d,
            FalloffAxis::Time4d,
        ] {
            let slope = falloff_exponent(axis, 1.0, &range).unwrap();
            assert!(
                (slope - axis.expected_exponent()).abs() < 0.05,
                "{axis:?}: {slope}"
            );
        }
    }

    #[test]
    fn falloff_preconditions() {
        let lin = GridSpec::linear(10.0, 1000.0, 64).unwrap();
        assert!(falloff_exponent(FalloffAxis::Space2d, 1.0, &lin).is_err());
        let near = GridSpec::log(5.0, 1000.0, 64).unwrap();
        assert!(falloff_exponent(FalloffAxis::Space2d, 1.0, &near).is_err());
        let sparse = GridSpec::log(10.0, 1000.0, 8).unwrap();
        assert!(falloff_exponent(FalloffAxis::Space4d, 1.0, &sparse).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn off_cone(a: f64, b: f64) -> bool {
            (a * a - b * b).abs() > 1e-3 * (a * a + b * b)
        }

        proptest! {
            #[test]
            fn antisymmetry_2d(x in -50.0f64..50.0, t in -50.0f64..50.0) {
                prop_assume!(off_cone(x, t));
                let c = corr2d(x, t).c_value.unwrap();
                let cx = corr2d(-x, t).c_value.unwrap();
                let ct = corr2d(x, -t).c_value.unwrap();
                prop_assert!((cx + c).abs() <= 1e-14 * c.abs());
                prop_assert!((ct + c).abs() <= 1e-14 * c.abs());
            }

            #[test]
            fn exchange_symmetry_2d(x in -50.0f64..50.0, t in -50.0f64..50.0) {
                prop_assume!(off_cone(x, t));
                let a = corr2d(x, t).c_value.unwrap().abs();
                let b = corr2d(t, x).c_value.unwrap().abs();
                prop_assert!((a - b).abs() <= 1e-14 * a);
            }

            #[test]
            fn antisymmetry_4d(r in 1e-3f64..50.0, dt in -50.0f64..50.0) {
                prop_assume!(off_cone(r, dt));
                let c = corr4d(r, dt).unwrap().c_value.unwrap();
                let m = corr4d(r, -dt).unwrap().c_value.unwrap();
                prop_assert!((c + m).abs() <= 1e-14 * c.abs());
                prop_assert_eq!(c > 0.0, dt > 0.0);
            }

            #[test]
            fn sign_carried_by_prefactor(a in 1e-3f64..50.0, b in -50.0f64..50.0) {
                prop_assume!(off_cone(a, b) && b != 0.0);
                prop_assert!(g2nd_squared_2d(a, b) > 0.0);
                prop_assert!(g2nd_squared_4d(a, b) > 0.0);
                let c2 = corr2d(a, b).c_value.unwrap();
                prop_assert!(c2 / (-a * b * (a * a + b * b)) > 0.0);
                let c4 = corr4d(a, b).unwrap().c_value.unwrap();
                prop_assert!(c4 / (a * b * (a * a + b * b)) > 0.0);
            }
        }
    }
}
