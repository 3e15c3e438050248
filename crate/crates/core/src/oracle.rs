//! Monte Carlo evaluation of the exact momentum-space integrals for the energy
//! density and flux, before any high-frequency approximation.
//!
//! The closed forms depend on an undetermined lower cutoff `q p0`. Restricting
//! the summed mode momentum to a shell `Λ1 < |k| < Λ2` removes it: the closed
//! forms then predict a coefficient of `ln(Λ2/Λ1)` (or the corresponding
//! oscillatory difference) with no `q` at all, and the Monte Carlo integrand
//! never sees `q` either.
//!
//! # Sampling
//!
//! Shell momenta are drawn uniformly in the shell volume and pair momenta
//! uniformly in the ball `|p| <= p0`; the product of the volumes is the sample
//! weight. Points whose partner momentum exceeds the cutoff `Λ` contribute zero.
//!
//! # Determinism
//!
//! The `n` samples are split over [`SUBSTREAMS`] substreams. Substream `j`
//! draws `n / 64` samples (one more when `j < n % 64`) from a ChaCha8 generator
//! built by `seed_from_u64(seed)` with its stream id set to `j`. Each substream
//! is reduced serially and the partial moments are merged in index order, so
//! the result is bit-identical for any worker count.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::helfer::{flux_time_factor, VALIDITY_TIMES_P0};
use crate::params::HelferParams;
use crate::specfun::{cosine_integral, f1, f2, g2};

pub const SUBSTREAMS: usize = 64;

/// Inner shell radius must be at least this multiple of `p0`.
pub const SHELL_FLOOR_TIMES_P0: f64 = 20.0;

/// Time must satisfy `|t| <= OSCILLATION_GUARD / Λ1`.
pub const OSCILLATION_GUARD: f64 = 0.5;

pub const MIN_SAMPLES_6D: u64 = 10_000;
pub const MIN_SAMPLES_9D: u64 = 100_000;

/// Cutoff window `Λ1 < |k| < Λ2` for the summed mode momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellSpec {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
}

impl ShellSpec {
    pub fn new(lambda_lo: f64, lambda_hi: f64) -> Self {
        ShellSpec {
            lambda_lo,
            lambda_hi,
        }
    }

    pub fn validate(&self, params: &HelferParams) -> Result<()> {
        let (lo, hi) = (self.lambda_lo, self.lambda_hi);
        let fail = |reason: String| Err(Error::Shell { lo, hi, reason });
        if !(lo.is_finite() && hi.is_finite()) {
            return fail("bounds must be finite".into());
        }
        if lo <= params.lower_cutoff() {
            return fail(format!(
                "inner radius must exceed q*p0 = {}",
                params.lower_cutoff()
            ));
        }
        if lo < SHELL_FLOOR_TIMES_P0 * params.p0 {
            return fail(format!(
                "inner radius must be at least {SHELL_FLOOR_TIMES_P0}*p0 = {}",
                SHELL_FLOOR_TIMES_P0 * params.p0
            ));
        }
        if hi <= lo {
            return fail("outer radius must exceed inner radius".into());
        }
        if hi > params.lambda {
            return fail(format!(
                "outer radius must not exceed lambda = {}",
                params.lambda
            ));
        }
        Ok(())
    }

    pub fn log_ratio(&self) -> f64 {
        (self.lambda_hi / self.lambda_lo).ln()
    }

    fn volume(&self) -> f64 {
        4.0 * PI / 3.0 * (self.lambda_hi.powi(3) - self.lambda_lo.powi(3))
    }
}

/// Sample count, seed and worker count for one estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McRun {
    pub n: u64,
    pub seed: u64,
    /// `0` uses the global rayon pool; `1` runs on the calling thread.
    pub workers: usize,
}

impl McRun {
    pub fn new(n: u64, seed: u64) -> Self {
        McRun {
            n,
            seed,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    /// Mean of the real part of the integrand.
    pub mean: f64,
    pub std_error: f64,
    /// Mean of the imaginary part. Zero in expectation at `t = 0`, where the
    /// integrand is symmetric under `k -> -k`.
    pub imag_mean: f64,
    pub imag_std_error: f64,
    /// Includes rejected points.
    pub n_samples: u64,
    pub seed: u64,
    /// Wall-clock seconds. Not serialized, so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

impl MCEstimate {
    /// `|mean − target| <= max(3 std_error, rel_tol |target|)`.
    pub fn agrees_with(&self, target: f64, rel_tol: f64) -> bool {
        (self.mean - target).abs() <= (3.0 * self.std_error).max(rel_tol * target.abs())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Moments {
            n,
            mean: self.mean + delta * nb / n as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n as f64,
        }
    }

    fn std_error(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

fn substream_rng(seed: u64, stream: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

fn substream_len(n: u64, stream: usize) -> u64 {
    let base = n / SUBSTREAMS as u64;
    base + u64::from((stream as u64) < n % SUBSTREAMS as u64)
}

fn integrate<F>(run: &McRun, integrand: F) -> MCEstimate
where
    F: Fn(&mut ChaCha8Rng) -> Complex64 + Sync,
{
    let start = Instant::now();
    let reduce = |stream: usize| {
        let mut rng = substream_rng(run.seed, stream);
        let (mut re, mut im) = (Moments::default(), Moments::default());
        for _ in 0..substream_len(run.n, stream) {
            let z = integrand(&mut rng);
            re.push(z.re);
            im.push(z.im);
        }
        (re, im)
    };
    let partials: Vec<(Moments, Moments)> = match run.workers {
        1 => (0..SUBSTREAMS).map(reduce).collect(),
        0 => (0..SUBSTREAMS).into_par_iter().map(reduce).collect(),
        w => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(|| (0..SUBSTREAMS).into_par_iter().map(reduce).collect()),
    };
    let (re, im) = partials.into_iter().fold(
        (Moments::default(), Moments::default()),
        |(a, b), (c, d)| (a.merge(c), b.merge(d)),
    );
    MCEstimate {
        mean: re.mean,
        std_error: re.std_error(),
        imag_mean: im.mean,
        imag_std_error: im.std_error(),
        n_samples: run.n,
        seed: run.seed,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

type Vec3 = [f64; 3];

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scaled_direction<R: Rng>(rng: &mut R, radius: f64) -> Vec3 {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.gen::<f64>();
    let s = (1.0 - z * z).max(0.0).sqrt();
    let (sp, cp) = phi.sin_cos();
    [radius * s * cp, radius * s * sp, radius * z]
}

fn uniform_in_ball<R: Rng>(rng: &mut R, radius: f64) -> Vec3 {
    let rad = radius * rng.gen::<f64>().cbrt();
    scaled_direction(rng, rad)
}

fn uniform_in_shell<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Vec3 {
    let (lo3, hi3) = (lo.powi(3), hi.powi(3));
    let rad = (lo3 + rng.gen::<f64>() * (hi3 - lo3)).cbrt();
    scaled_direction(rng, rad)
}

fn ball_volume(radius: f64) -> f64 {
    4.0 * PI / 3.0 * radius.powi(3)
}

fn check_time(params: &HelferParams, shell: &ShellSpec, t: f64) -> Result<()> {
    let limit = VALIDITY_TIMES_P0 / params.p0;
    if t.is_nan() || t.abs() >= limit {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "oracle comparisons need |t| < 0.1/p0",
        });
    }
    if t.abs() > OSCILLATION_GUARD / shell.lambda_lo {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "oracle comparisons need |t| <= 0.5/lambda_lo",
        });
    }
    Ok(())
}

fn check_samples(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "too few Monte Carlo samples for this integral",
        });
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "radius must be finite and nonnegative",
        });
    }
    Ok(())
}

/// Amplitude-linear density from mode pairs with `|k|` in the shell.
///
/// Integrand: `−(N² chi0 / (2π)³) √(ωω') (1 + k̂·k̂') / (ωω') e^{i(p·x − (ω+ω')t)}`
/// with `k' = p − k`. The factor `ωω'(1 + k̂·k̂')` is evaluated as
/// `|k × p|² / (ωω' − k·k')`, which avoids cancellation when `k' ≈ −k`.
pub fn mc_rho2_shell(
    params: &HelferParams,
    shell: &ShellSpec,
    r: f64,
    t: f64,
    run: &McRun,
) -> Result<MCEstimate> {
    shell.validate(params)?;
    check_radius(r)?;
    check_time(params, shell, t)?;
    check_samples(run.n, MIN_SAMPLES_6D)?;

    let pref = params.n_squared() * params.chi0 / (2.0 * PI).powi(3);
    let weight = shell.volume() * ball_volume(params.p0);
    let (lo, hi, p0, lambda) = (shell.lambda_lo, shell.lambda_hi, params.p0, params.lambda);
    Ok(integrate(run, move |rng| {
        let k = uniform_in_shell(rng, lo, hi);
        let p = uniform_in_ball(rng, p0);
        let kp = sub(p, k);
        let (w, wp) = (norm(k), norm(kp));
        if wp >= lambda {
            return Complex64::new(0.0, 0.0);
        }
        let kxp = cross(k, p);
        let ang = dot(kxp, kxp) / (w * wp - dot(k, kp));
        let amp = -pref * ang / (w * wp).powf(1.5) * weight;
        let phase = p[2] * r - (w + wp) * t;
        Complex64::from_polar(amp, phase)
    }))
}

/// Amplitude-quadratic density from modes whose shared momentum `k1` lies in
/// the shell, at `t = 0`.
///
/// Integrand: `(2 chi0² N² / (2π)³) |k1|⁻² (1 + k̂·k̂') (ωω')^{-1/2} e^{−i(p − p')·x}`
/// with `k = p − k1`, `k' = p' − k1`.
pub fn mc_rho1_shell(
    params: &HelferParams,
    shell: &ShellSpec,
    r: f64,
    run: &McRun,
) -> Result<MCEstimate> {
    shell.validate(params)?;
    check_radius(r)?;
    check_samples(run.n, MIN_SAMPLES_9D)?;

    let pref = 2.0 * params.chi0 * params.chi0 * params.n_squared() / (2.0 * PI).powi(3);
    let weight = shell.volume() * ball_volume(params.p0).powi(2);
    let (lo, hi, p0, lambda) = (shell.lambda_lo, shell.lambda_hi, params.p0, params.lambda);
    Ok(integrate(run, move |rng| {
        let k1 = uniform_in_shell(rng, lo, hi);
        let p = uniform_in_ball(rng, p0);
        let pp = uniform_in_ball(rng, p0);
        let k = sub(p, k1);
        let kp = sub(pp, k1);
        let (w, wp) = (norm(k), norm(kp));
        if w >= lambda || wp >= lambda {
            return Complex64::new(0.0, 0.0);
        }
        let ang = 1.0 + dot(k, kp) / (w * wp);
        let amp = pref * ang / (dot(k1, k1) * (w * wp).sqrt()) * weight;
        let phase = -(p[2] - pp[2]) * r;
        Complex64::from_polar(amp, phase)
    }))
}

/// Fast flux term `I2` (the flux is `F = −I2`) from mode pairs with `|k|` in
/// the shell.
///
/// Integrand: `(N² chi0 / (2π)³) (ω k'_z + ω' k_z) / (ωω')^{3/2} e^{i(p·x − (ω+ω')t)}`
/// with `x = r ẑ`.
pub fn mc_flux_shell(
    params: &HelferParams,
    shell: &ShellSpec,
    r: f64,
    t: f64,
    run: &McRun,
) -> Result<MCEstimate> {
    shell.validate(params)?;
    check_time(params, shell, t)?;
    check_samples(run.n, MIN_SAMPLES_6D)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "flux needs r > 0",
        });
    }

    let pref = params.n_squared() * params.chi0 / (2.0 * PI).powi(3);
    let weight = shell.volume() * ball_volume(params.p0);
    let (lo, hi, p0, lambda) = (shell.lambda_lo, shell.lambda_hi, params.p0, params.lambda);
    Ok(integrate(run, move |rng| {
        let k = uniform_in_shell(rng, lo, hi);
        let p = uniform_in_ball(rng, p0);
        let kp = sub(p, k);
        let (w, wp) = (norm(k), norm(kp));
        if wp >= lambda {
            return Complex64::new(0.0, 0.0);
        }
        // ω k'_z + ω' k_z = ω p_z + (ω' − ω) k_z
        let dw = (dot(p, p) - 2.0 * dot(k, p)) / (w + wp);
        let num = w * p[2] + dw * k[2];
        let amp = pref * num / (w * wp).powf(1.5) * weight;
        let phase = p[2] * r - (w + wp) * t;
        Complex64::from_polar(amp, phase)
    }))
}

/// Slow flux term `I1` at `t = 0` over the whole momentum range.
///
/// Integrand: `−(2N² chi0² / (2π)³) (ω k'_z + ω' k_z) / (ωω')^{3/2} |k1|⁻² e^{i(p' − p)·x}`
/// with `k = p − k1`, `k' = p' − k1`. `|k1|` is drawn uniformly on `[0, Λ]`
/// with isotropic direction, which absorbs the `|k1|⁻²` singularity.
pub fn mc_i1_t0(params: &HelferParams, r: f64, run: &McRun) -> Result<MCEstimate> {
    check_radius(r)?;
    check_samples(run.n, MIN_SAMPLES_9D)?;

    let pref = -2.0 * params.n_squared() * params.chi0 * params.chi0 / (2.0 * PI).powi(3);
    let (p0, lambda) = (params.p0, params.lambda);
    // radial density 1/Λ times angular density 1/(4π |k1|²)
    let weight = 4.0 * PI * lambda * ball_volume(p0).powi(2);
    Ok(integrate(run, move |rng| {
        let radius = lambda * (1.0 - rng.gen::<f64>());
        let k1 = scaled_direction(rng, radius);
        let p = uniform_in_ball(rng, p0);
        let pp = uniform_in_ball(rng, p0);
        let k = sub(p, k1);
        let kp = sub(pp, k1);
        let (w, wp) = (norm(k), norm(kp));
        if w >= lambda || wp >= lambda || w == 0.0 || wp == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let num = w * kp[2] + wp * k[2];
        let amp = pref * num / (w * wp).powf(1.5) * weight;
        let phase = (pp[2] - p[2]) * r;
        Complex64::from_polar(amp, phase)
    }))
}

/// Closed-form shell value of `rho2`: `−(chi0 N²/6π²) f2 ∫_{Λ1}^{Λ2} cos(2ωt)/ω dω`.
pub fn rho2_shell_closed(params: &HelferParams, shell: &ShellSpec, r: f64, t: f64) -> f64 {
    let integral = if t == 0.0 {
        shell.log_ratio()
    } else {
        let t = t.abs();
        cosine_integral(2.0 * shell.lambda_hi * t).expect("positive argument")
            - cosine_integral(2.0 * shell.lambda_lo * t).expect("positive argument")
    };
    -params.linear_prefactor() * f2(params.p0, r) * integral
}

/// Closed-form shell value of `rho1`: `(2 chi0² N²/π²) f1 ln(Λ2/Λ1)`.
pub fn rho1_shell_closed(params: &HelferParams, shell: &ShellSpec, r: f64) -> f64 {
    params.quadratic_prefactor() * f1(params.p0, r) * shell.log_ratio()
}

/// Closed-form shell value of `I2`:
/// `(chi0 N²/6π²) g2 [cos(2Λ2 t) − cos(2Λ1 t)] / t`.
pub fn i2_shell_closed(params: &HelferParams, shell: &ShellSpec, r: f64, t: f64) -> f64 {
    params.linear_prefactor()
        * g2(params.p0, r)
        * flux_time_factor(shell.lambda_hi, shell.lambda_lo, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Chi0;

    fn fig1() -> HelferParams {
        HelferParams::figure(1000.0).unwrap()
    }

    fn fig3() -> HelferParams {
        HelferParams::figure(100.0).unwrap()
    }

    #[test]
    fn shell_validation() {
        let p = fig1();
        assert!(ShellSpec::new(50.0, 500.0).validate(&p).is_ok());
        assert!(ShellSpec::new(5.0, 500.0).validate(&p).is_err());
        assert!(ShellSpec::new(15.0, 500.0).validate(&p).is_err());
        assert!(ShellSpec::new(500.0, 50.0).validate(&p).is_err());
        assert!(ShellSpec::new(50.0, 2000.0).validate(&p).is_err());
    }

    #[test]
    fn input_validation() {
        let p = fig1();
        let shell = ShellSpec::new(50.0, 500.0);
        let run = McRun::new(20_000, 1);
        assert!(mc_rho2_shell(&p, &shell, 0.0, 0.0, &McRun::new(100, 1)).is_err());
        assert!(mc_rho2_shell(&p, &shell, 0.0, 0.2, &run).is_err());
        assert!(mc_rho2_shell(&p, &shell, 0.0, 0.011, &run).is_err());
        assert!(mc_rho1_shell(&p, &shell, 0.0, &run).is_err());
        assert!(mc_flux_shell(&p, &shell, 0.0, 0.0, &run).is_err());
        assert!(mc_i1_t0(&p, -1.0, &McRun::new(200_000, 1)).is_err());
    }

    #[test]
    fn zero_amplitude_gives_exact_zero() {
        let p = HelferParams::new(1000.0, 1.0, 10.0, Chi0::Value(0.0)).unwrap();
        let shell = ShellSpec::new(50.0, 500.0);
        let run = McRun::new(100_000, 3);
        for est in [
            mc_rho2_shell(&p, &shell, 0.0, 0.0, &run).unwrap(),
            mc_rho1_shell(&p, &shell, 0.0, &run).unwrap(),
            mc_flux_shell(&p, &shell, 1.0, 0.005, &run).unwrap(),
            mc_i1_t0(&p, 2.0, &run).unwrap(),
        ] {
            assert_eq!(est.mean, 0.0);
            assert_eq!(est.std_error, 0.0);
        }
    }

    #[test]
    fn same_seed_same_mean() {
        let p = fig1();
        let shell = ShellSpec::new(50.0, 500.0);
        let a = mc_rho2_shell(&p, &shell, 0.0, 0.0, &McRun::new(50_000, 9)).unwrap();
        let b = mc_rho2_shell(&p, &shell, 0.0, 0.0, &McRun::new(50_000, 9)).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = mc_rho2_shell(&p, &shell, 0.0, 0.0, &McRun::new(50_000, 10)).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let p = fig3();
        let shell = ShellSpec::new(50.0, 90.0);
        let base = mc_flux_shell(
            &p,
            &shell,
            1.0,
            0.01,
            &McRun::new(30_001, 4).with_workers(1),
        )
        .unwrap();
        for w in [0, 2, 8, 64] {
            let other = mc_flux_shell(
                &p,
                &shell,
                1.0,
                0.01,
                &McRun::new(30_001, 4).with_workers(w),
            )
            .unwrap();
            assert_eq!(base.mean.to_bits(), other.mean.to_bits(), "workers {w}");
        }
    }

    #[test]
    fn substreams_cover_all_samples() {
        for n in [0u64, 1, 63, 64, 65, 1000, 123_457] {
            let total: u64 = (0..SUBSTREAMS).map(|j| substream_len(n, j)).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000)
            .map(|i| ((i * 7919) % 1009) as f64 * 0.1 - 30.0)
            .collect();
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..317].iter().for_each(|&x| a.push(x));
        xs[317..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert_eq!(m.n, all.n);
        assert!((m.mean - all.mean).abs() < 1e-12);
        assert!((m.m2 - all.m2).abs() < 1e-8 * all.m2);
    }

    #[test]
    fn rho2_shell_small_run_agrees() {
        let p = fig1();
        let shell = ShellSpec::new(50.0, 500.0);
        let est = mc_rho2_shell(&p, &shell, 0.0, 0.0, &McRun::new(400_000, 11)).unwrap();
        let target = rho2_shell_closed(&p, &shell, 0.0, 0.0);
        assert!((target - -1.1665e-4).abs() < 1e-8);
        assert!(est.agrees_with(target, 0.03), "{est:?} vs {target}");
        // imaginary part is a free zero check
        assert!(est.imag_mean.abs() <= 3.0 * est.imag_std_error + 1e-18);
    }

    #[test]
    fn rho1_shell_small_run_agrees() {
        let p = fig1();
        let shell = ShellSpec::new(50.0, 500.0);
        let est = mc_rho1_shell(&p, &shell, 0.0, &McRun::new(400_000, 12)).unwrap();
        let target = rho1_shell_closed(&p, &shell, 0.0);
        assert!((target - 1.1665e-5).abs() < 1e-9);
        assert!(est.agrees_with(target, 0.05), "{est:?} vs {target}");
    }

    #[test]
    fn rho1_outside_center_not_negative() {
        let p = fig1();
        let shell = ShellSpec::new(50.0, 500.0);
        let est = mc_rho1_shell(&p, &shell, 10.0, &McRun::new(400_000, 13)).unwrap();
        assert!(est.mean > -3.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn flux_zero_at_t0() {
        let p = fig3();
        let shell = ShellSpec::new(50.0, 90.0);
        let est = mc_flux_shell(&p, &shell, 1.0, 0.0, &McRun::new(200_000, 14)).unwrap();
        assert_eq!(i2_shell_closed(&p, &shell, 1.0, 0.0), 0.0);
        assert!(est.mean.abs() <= 3.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn flux_shell_small_run_agrees() {
        let p = fig3();
        let shell = ShellSpec::new(50.0, 90.0);
        let est = mc_flux_shell(&p, &shell, 1.0, 0.01, &McRun::new(400_000, 15)).unwrap();
        let target = i2_shell_closed(&p, &shell, 1.0, 0.01);
        assert!(est.agrees_with(target, 0.05), "{est:?} vs {target}");
    }

    #[test]
    fn i1_vanishes_at_t0() {
        let p = fig3();
        for r in [0.0, 2.0] {
            let est = mc_i1_t0(&p, r, &McRun::new(200_000, 16)).unwrap();
            assert!(est.mean.abs() <= 3.0 * est.std_error, "r={r}: {est:?}");
        }
    }
}
