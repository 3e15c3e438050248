//! Cosine and exponential integrals, plus the radial profile functions that
//! carry the spatial dependence of the energy density and flux.
//!
//! The profiles are the Fourier transforms of simple moments over the ball
//! `|p| <= p0`:
//!
//! * `f2(p0, r) = ∫ p^2 e^{ip·x} d^3p`
//! * `f1(p0, r) = (∫ e^{ip·x} d^3p)^2`
//! * `g2(p0, r) = i ∫ p_z e^{ip·x} d^3p` with `x` along `z`
//!
//! Each closed form has a removable singularity at `r = 0` and loses digits to
//! cancellation for small `p0 r`; below [`SWITCH_RADIUS`] a Maclaurin series is
//! used instead.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Profiles are evaluated by series when `p0 r` is below this value.
pub const SWITCH_RADIUS: f64 = 0.5;

/// Number of series terms kept beyond the leading one. At `p0 r = 0.5` the
/// first dropped term is below `1e-25` relative.
const SERIES_TERMS: usize = 12;

const CI_SERIES_MAX: f64 = 4.0;
const E1_SERIES_MAX: f64 = 1.0;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// Cosine integral `Ci(x) = -∫_x^∞ cos(t)/t dt` for `x > 0`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain {
            function: "Ci",
            x,
            domain: "0 < x < inf",
        });
    }
    Ok(if x <= CI_SERIES_MAX {
        ci_series(x)
    } else {
        ci_continued_fraction(x)
    })
}

/// `Ci(x) = γ + ln x + Σ_{k≥1} (-1)^k x^{2k} / (2k (2k)!)`.
fn ci_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut sum = 0.0;
    // term_k = (-1)^k x^{2k} / (2k)!
    let mut term = 1.0;
    for k in 1..200 {
        let kk = 2 * k;
        term *= -x2 / ((kk - 1) as f64 * kk as f64);
        let contrib = term / kk as f64;
        sum += contrib;
        if contrib.abs() < EPS * sum.abs().max(1e-300) {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// Lentz evaluation of the continued fraction for `E1(ix)`; then
/// `Ci(x) = -Re E1(ix)`.
fn ci_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 2..MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    let e1_ix = Complex64::new(x.cos(), -x.sin()) * h;
    -e1_ix.re
}

/// Exponential integral `E1(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            function: "E1",
            x,
            domain: "0 < x",
        });
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(if x <= E1_SERIES_MAX {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    })
}

/// `E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k k!)`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let contrib = term / k as f64;
        sum += contrib;
        if contrib.abs() < EPS * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

fn e1_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h * (-x).exp()
}

/// Which evaluation path produced a profile value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Series,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileValue {
    pub value: f64,
    pub branch: Branch,
}

fn branch_for(u: f64) -> Branch {
    if u < SWITCH_RADIUS {
        Branch::Series
    } else {
        Branch::ClosedForm
    }
}

/// Evaluates `Σ_{k=0}^{SERIES_TERMS} (-1)^k u^{2k} / ((2k+1)! (2k + offset))`.
fn moment_series(u: f64, offset: usize) -> f64 {
    let u2 = u * u;
    let mut pow_over_fact = 1.0; // (-1)^k u^{2k} / (2k+1)!
    let mut sum = 1.0 / offset as f64;
    for k in 1..=SERIES_TERMS {
        let kk = 2 * k;
        pow_over_fact *= -u2 / (kk as f64 * (kk + 1) as f64);
        sum += pow_over_fact / (kk + offset) as f64;
    }
    sum
}

/// Dimensionless `f2` at `u = p0 r`.
fn f2_unit(u: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Series => 4.0 * PI * moment_series(u, 5),
        Branch::ClosedForm => {
            let (s, c) = u.sin_cos();
            4.0 * PI * (3.0 * (u * u - 2.0) * s - u * (u * u - 6.0) * c) / u.powi(5)
        }
    }
}

/// `(sin u - u cos u) / u^3`.
fn ball_transform_unit(u: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Series => moment_series(u, 3),
        Branch::ClosedForm => {
            let (s, c) = u.sin_cos();
            (s - u * c) / (u * u * u)
        }
    }
}

fn f1_unit(u: f64, branch: Branch) -> f64 {
    let b = 4.0 * PI * ball_transform_unit(u, branch);
    b * b
}

fn g2_unit(u: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Series => {
            // -4π Σ_{k≥1} (-1)^{k+1} 2k u^{2k-1} / ((2k+1)! (2k+3))
            let u2 = u * u;
            // (-1)^{k+1} u^{2k-1} / (2k+1)!, starting at k = 1
            let mut pow_over_fact = u / 6.0;
            let mut sum = 2.0 * pow_over_fact / 5.0;
            for k in 2..=SERIES_TERMS + 1 {
                let kk = 2 * k;
                pow_over_fact *= -u2 / (kk as f64 * (kk + 1) as f64);
                sum += kk as f64 * pow_over_fact / (kk + 3) as f64;
            }
            -4.0 * PI * sum
        }
        Branch::ClosedForm => {
            let (s, c) = u.sin_cos();
            4.0 * PI * (3.0 * u * c + (u * u - 3.0) * s) / u.powi(4)
        }
    }
}

fn profile(p0: f64, r: f64, power: i32, unit: fn(f64, Branch) -> f64) -> ProfileValue {
    debug_assert!(p0 > 0.0 && r >= 0.0, "profile needs p0 > 0, r >= 0");
    let u = p0 * r;
    let branch = branch_for(u);
    ProfileValue {
        value: p0.powi(power) * unit(u, branch),
        branch,
    }
}

pub fn f2_profile(p0: f64, r: f64) -> ProfileValue {
    profile(p0, r, 5, f2_unit)
}

pub fn f1_profile(p0: f64, r: f64) -> ProfileValue {
    profile(p0, r, 6, f1_unit)
}

pub fn g2_profile(p0: f64, r: f64) -> ProfileValue {
    profile(p0, r, 4, g2_unit)
}

/// `f2(p0, r) = (4π/r^5) [3(p0²r² − 2) sin(p0 r) − p0 r (p0²r² − 6) cos(p0 r)]`,
/// with `f2(p0, 0) = 4π p0^5 / 5`.
pub fn f2(p0: f64, r: f64) -> f64 {
    f2_profile(p0, r).value
}

/// `f1(p0, r) = ((4π)^2 / r^6) [sin(p0 r) − p0 r cos(p0 r)]^2`, never negative.
pub fn f1(p0: f64, r: f64) -> f64 {
    f1_profile(p0, r).value
}

/// `g2(p0, r) = (4π/r^4) [3 p0 r cos(p0 r) + (p0²r² − 3) sin(p0 r)]`, vanishing
/// linearly at the origin with slope `−4π p0^5 / 15`.
pub fn g2(p0: f64, r: f64) -> f64 {
    g2_profile(p0, r).value
}

/// Evaluates a profile on a fixed branch regardless of the switch radius.
/// Used to check the two paths against each other.
pub fn profile_on_branch(which: Profile, p0: f64, r: f64, branch: Branch) -> f64 {
    let u = p0 * r;
    match which {
        Profile::F1 => p0.powi(6) * f1_unit(u, branch),
        Profile::F2 => p0.powi(5) * f2_unit(u, branch),
        Profile::G2 => p0.powi(4) * g2_unit(u, branch),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    F1,
    F2,
    G2,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from 40-digit evaluation of the defining integrals.
    #[allow(clippy::excessive_precision)]
    const CI_REF: [(f64, f64); 20] = [
        (1e-08, -17.843465079050832616),
        (0.0001, -8.6331247095746498265),
        (0.01, -4.0279795209823920514),
        (0.1, -1.7278683866572965838),
        (0.2, -1.042205595672781921),
        (0.5, -0.17778407880661290134),
        (1.0, 0.33740392290096813466),
        (2.0, 0.4229808287748649957),
        (3.0, 0.11962978600800032763),
        (3.9, -0.12349934920781512614),
        (4.0, -0.14098169788693041164),
        (4.1, -0.15616539182812105976),
        (5.0, -0.19002974965664387862),
        (7.5, 0.11563320323793427044),
        (10.0, -0.045456433004455372635),
        (20.0, 0.04441982084535331654),
        (50.0, -0.0056283863241163054402),
        (100.0, -0.0051488251426104921444),
        (1000.0, 0.000826315511090682282),
        (100000.0, 3.575879157293513569e-7),
    ];

    #[allow(clippy::excessive_precision)]
    const E1_REF: [(f64, f64); 20] = [
        (1e-08, 17.843465089050832566),
        (0.0001, 8.6332247045747053821),
        (0.01, 4.0379295765381138112),
        (0.1, 1.8229239584193906159),
        (0.2, 1.2226505441838930429),
        (0.5, 0.55977359477616081175),
        (0.99, 0.22309982579017724023),
        (1.0, 0.21938393439552027368),
        (1.01, 0.21574162379448997161),
        (1.5, 0.1000195824066326519),
        (2.0, 0.048900510708061119567),
        (3.0, 0.013048381094197037413),
        (5.0, 0.0011482955912753257973),
        (10.0, 4.1569689296853242774e-6),
        (20.0, 9.8355252906498816904e-11),
        (30.0, 3.0215520106888125448e-15),
        (50.0, 3.7832640295504590187e-24),
        (100.0, 3.6835977616820321802e-46),
        (200.0, 6.8852261063076355977e-90),
        (500.0, 1.4220767822536384221e-220),
    ];

    #[test]
    fn ci_reference_values() {
        for (x, want) in CI_REF {
            let got = cosine_integral(x).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn e1_reference_values() {
        for (x, want) in E1_REF {
            let got = exp_integral_e1(x).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn ci_examples() {
        assert_relative_eq!(
            cosine_integral(1.0).unwrap(),
            0.337403922900968,
            max_relative = 1e-13
        );
        let small = cosine_integral(1e-8).unwrap();
        assert_relative_eq!(small, EULER_GAMMA + (1e-8f64).ln(), max_relative = 1e-14);
        assert_relative_eq!(small, -17.8434650, max_relative = 1e-8);
        let big = cosine_integral(100.0).unwrap();
        assert!((big - 100f64.sin() / 100.0).abs() < 1e-4);
        // Power series on one side of x = 4 and continued fraction on the other.
        let lo = cosine_integral(4.0).unwrap();
        let hi = cosine_integral(4.0 + 1e-12).unwrap();
        assert!((lo - hi).abs() < 1e-12);
    }

    #[test]
    fn e1_examples() {
        assert_relative_eq!(
            exp_integral_e1(1.0).unwrap(),
            0.219383934395520,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            exp_integral_e1(0.2).unwrap(),
            1.22265054,
            max_relative = 1e-8
        );
        assert!(exp_integral_e1(200.0).unwrap() < 1e-85);
    }

    #[test]
    fn domain_errors() {
        assert!(cosine_integral(0.0).is_err());
        assert!(cosine_integral(-1.0).is_err());
        assert!(cosine_integral(f64::NAN).is_err());
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-2.0).is_err());
        assert_eq!(exp_integral_e1(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn e1_monotone_and_bounded() {
        let mut prev = f64::INFINITY;
        for i in 1..400 {
            let x = 0.05 * i as f64;
            let e = exp_integral_e1(x).unwrap();
            assert!(e < prev);
            assert!(e < (-x).exp() / x);
            prev = e;
        }
    }

    #[test]
    fn f2_examples() {
        assert_relative_eq!(f2(1.0, 0.0), 4.0 * PI / 5.0, max_relative = 1e-15);
        assert_relative_eq!(f2(1.0, 0.0), 2.5132741, max_relative = 1e-7);
        let want = 4.0 * PI * (-3.0 * 1f64.sin() + 5.0 * 1f64.cos());
        assert_relative_eq!(f2(1.0, 1.0), want, max_relative = 1e-14);
        assert_relative_eq!(f2(1.0, 1.0), 2.22549, max_relative = 1e-5);
        let exact = f2(1.0, 100.0);
        let asym = -(4.0 * PI / 1e4) * 100f64.cos();
        assert_relative_eq!(asym, -1.0836e-3, max_relative = 1e-3);
        assert!(((exact - asym) / exact).abs() < 0.02);
    }

    #[test]
    fn f1_examples() {
        assert_relative_eq!(f1(1.0, 0.0), (4.0 * PI / 3.0).powi(2), max_relative = 1e-15);
        assert_relative_eq!(f1(1.0, 0.0), 17.54596, max_relative = 1e-6);
        let want = 16.0 * PI * PI * (1f64.sin() - 1f64.cos()).powi(2);
        assert_relative_eq!(f1(1.0, 1.0), want, max_relative = 1e-14);
        assert_relative_eq!(f1(1.0, 1.0), 14.3233, max_relative = 1e-5);
    }

    #[test]
    fn g2_examples() {
        assert_eq!(g2(1.0, 0.0), 0.0);
        assert_relative_eq!(g2(1.0, 1e-3) / 1e-3, -4.0 * PI / 15.0, max_relative = 1e-6);
        let want = 4.0 * PI * (3.0 * 1f64.cos() - 2.0 * 1f64.sin());
        assert_relative_eq!(g2(1.0, 1.0), want, max_relative = 1e-14);
        assert_relative_eq!(g2(1.0, 1.0), -0.779555, max_relative = 1e-5);
        let exact = g2(1.0, 100.0);
        let asym = 4.0 * PI * 100f64.sin() / 1e4;
        assert_relative_eq!(asym, -6.363e-4, max_relative = 1e-3);
        // next-order term is 3 cos(r)/(r sin r) relative, about 5% at r = 100
        assert_relative_eq!(exact, -6.0363e-4, max_relative = 1e-4);
        assert!(((exact - asym) / exact).abs() < 0.06);
    }

    #[test]
    fn branch_flag_matches_switch() {
        assert_eq!(f2_profile(1.0, 0.49).branch, Branch::Series);
        assert_eq!(f2_profile(1.0, 0.5).branch, Branch::ClosedForm);
        assert_eq!(g2_profile(2.0, 0.2).branch, Branch::Series);
        assert_eq!(f1_profile(2.0, 0.3).branch, Branch::ClosedForm);
    }

    #[test]
    fn branches_agree_near_switch() {
        for which in [Profile::F1, Profile::F2, Profile::G2] {
            for i in 0..41 {
                let u = SWITCH_RADIUS * (0.8 + 0.01 * i as f64);
                let s = profile_on_branch(which, 1.0, u, Branch::Series);
                let c = profile_on_branch(which, 1.0, u, Branch::ClosedForm);
                assert!(
                    ((s - c) / c).abs() < 1e-10,
                    "{which:?} at u={u}: series {s} closed {c}"
                );
            }
        }
    }

    /// `(1/r^2) d(r^2 g2)/dr = -f2` by central differences.
    #[test]
    fn divergence_identity_finite_difference() {
        for p0 in [0.5, 1.0, 3.0] {
            for i in 0..200 {
                let r = 1e-3 * 10f64.powf(i as f64 * 5.0 / 199.0) / p0;
                let h = 1e-5 * r;
                let flux = |r: f64| r * r * g2(p0, r);
                let lhs = (flux(r + h) - flux(r - h)) / (2.0 * h) / (r * r);
                let rhs = -f2(p0, r);
                // envelope of |f2|, so zeros of f2 do not blow up the ratio
                let u = p0 * r;
                let envelope = 4.0 * PI * p0.powi(5) / (1.0 + u * u);
                assert!(
                    (lhs - rhs).abs() < 1e-6 * envelope.max(rhs.abs()),
                    "p0={p0} r={r}: {lhs} vs {rhs}"
                );
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn f1_nonnegative(p0 in 1e-3f64..1e3, r in 0.0f64..1e3) {
                prop_assert!(f1(p0, r) >= 0.0);
            }

            #[test]
            fn dimensional_scaling(p0 in 0.05f64..20.0, u in 0.0f64..50.0) {
                let r = u / p0;
                let tol = 1e-12;
                let check = |a: f64, b: f64, scale: f64| (a - b).abs() <= tol * scale.max(a.abs());
                prop_assert!(check(f2(p0, r), p0.powi(5) * f2(1.0, u), p0.powi(5)));
                prop_assert!(check(f1(p0, r), p0.powi(6) * f1(1.0, u), p0.powi(6)));
                prop_assert!(check(g2(p0, r), p0.powi(4) * g2(1.0, u), p0.powi(4)));
            }

            #[test]
            fn ci_tracks_sine_over_x(x in 200.0f64..1e6) {
                let ci = cosine_integral(x).unwrap();
                prop_assert!((ci - x.sin() / x).abs() < 2.0 / (x * x));
            }
        }
    }
}
