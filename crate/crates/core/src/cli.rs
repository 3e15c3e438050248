//! Command implementations behind the `negflux` binary: configuration, figure
//! datasets, Monte Carlo validation, QI reports, correlator grids and density
//! grids.
//!
//! Every CSV starts with a `#` line naming columns and units, followed by a `#`
//! line carrying the parameters. Numbers are written with 17 significant
//! digits so that they parse back to the same `f64`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::helfer::{field_grid, flux, rho_total};
use crate::oracle::{
    i2_shell_closed, mc_flux_shell, mc_i1_t0, mc_rho1_shell, mc_rho2_shell, rho1_shell_closed,
    rho2_shell_closed, MCEstimate, McRun, ShellSpec, OSCILLATION_GUARD,
};
use crate::params::{Chi0, HelferParams, DEFAULT_Q};
use crate::qi::{positivity_horizon, qi_margin};
use crate::vacuum::{corr2d, corr4d, falloff_exponent, FalloffAxis, LIGHTCONE_EPS};

pub const DEFAULT_SEED: u64 = 20_251_016;
pub const DEFAULT_SAMPLES: u64 = 10_000_000;
pub const DEFAULT_SHELL: (f64, f64) = (50.0, 500.0);

/// Relative tolerances used by `validate` alongside the 3σ criterion.
pub const RHO2_REL_TOL: f64 = 0.03;
pub const RHO1_REL_TOL: f64 = 0.05;
pub const FLUX_REL_TOL: f64 = 0.05;

const CUTOFFS_FIG1: [f64; 3] = [100.0, 300.0, 1000.0];
const TIMES_FIG2: [f64; 3] = [0.0, 0.005, 0.05];
const FIG34_RADIUS: f64 = 2.0;

/// Outcome of a command that ran to completion. Errors are reported
/// separately and map to exit status 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    PhysicsFailure,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::PhysicsFailure => 1,
        }
    }

    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Outcome::Success
        } else {
            Outcome::PhysicsFailure
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamInputs {
    pub lambda: f64,
    pub p0: f64,
    pub q: f64,
    pub chi0: Chi0,
}

impl Default for ParamInputs {
    fn default() -> Self {
        ParamInputs {
            lambda: 1000.0,
            p0: 1.0,
            q: DEFAULT_Q,
            chi0: Chi0::Standard,
        }
    }
}

impl ParamInputs {
    pub fn build(&self) -> Result<HelferParams> {
        HelferParams::new(self.lambda, self.p0, self.q, self.chi0)
    }

    /// Same inputs with a different cutoff.
    pub fn build_with_lambda(&self, lambda: f64) -> Result<HelferParams> {
        HelferParams::new(lambda, self.p0, self.q, self.chi0)
    }
}

/// Named grids understood by the commands, with their defaults.
pub fn default_grids() -> BTreeMap<String, GridSpec> {
    let g = |min, max, n| GridSpec::linear(min, max, n).expect("static grid");
    let lg = |min, max, n| GridSpec::log(min, max, n).expect("static grid");
    let pt = |v| GridSpec::point(v).expect("static grid");
    [
        ("fig1_r", g(0.0, 10.0, 256)),
        ("fig2_r", g(0.0, 10.0, 256)),
        ("fig34_t", g(-0.05, 0.05, 1001)),
        ("fig5_axis", g(-3.0, 3.0, 60)),
        ("fig7_r", g(0.05, 3.0, 60)),
        ("fig7_dt", g(-3.0, 3.0, 60)),
        ("qi_tau", lg(1e-3, 10.0, 64)),
        ("corr_a", lg(10.0, 1000.0, 64)),
        ("corr_b", pt(1.0)),
        ("density_r", g(0.0, 5.0, 101)),
        ("density_t", pt(0.0)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamInputs,
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Overrides for the named grids; missing names take their defaults.
    #[serde(default)]
    pub grids: BTreeMap<String, GridSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ParamInputs::default(),
            seed: DEFAULT_SEED,
            output_dir: PathBuf::from("out"),
            grids: default_grids(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn validate(&self) -> Result<()> {
        self.params.build()?;
        let known = default_grids();
        for (name, grid) in &self.grids {
            if !known.contains_key(name) {
                let names: Vec<_> = known.keys().map(String::as_str).collect();
                return Err(Error::Config(format!(
                    "unknown grid '{name}'; expected one of {}",
                    names.join(", ")
                )));
            }
            grid.validate()
                .map_err(|e| Error::Config(format!("grid '{name}': {e}")))?;
        }
        Ok(())
    }

    pub fn grid(&self, name: &str) -> GridSpec {
        self.grids
            .get(name)
            .copied()
            .or_else(|| default_grids().get(name).copied())
            .unwrap_or_else(|| panic!("no grid named {name}"))
    }
}

/// Formats with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn params_line(p: &HelferParams) -> String {
    format!(
        "# params: lambda={} p0={} q={} chi0={} n_norm={}",
        num(p.lambda),
        num(p.p0),
        num(p.q),
        num(p.chi0),
        num(p.n_norm)
    )
}

fn write_csv(path: &Path, columns: &[&str], meta: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "# {}", columns.join(",")).unwrap();
    for line in meta {
        writeln!(s, "{line}").unwrap();
    }
    for row in rows {
        writeln!(s, "{}", row.join(",")).unwrap();
    }
    fs::write(path, s).map_err(|e| Error::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn sign(c: Option<f64>) -> &'static str {
    match c {
        Some(v) if v > 0.0 => "1",
        Some(v) if v < 0.0 => "-1",
        Some(_) => "0",
        None => "nan",
    }
}

fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    version: &'static str,
    params: &'a ParamInputs,
    resolved: HelferParams,
    grids: BTreeMap<String, GridSpec>,
    files: Vec<String>,
}

/// Writes the figure datasets and `manifest.json`; returns the written paths.
pub fn cmd_figures(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    config.validate()?;
    ensure_dir(out)?;
    let inputs = &config.params;
    let mut written = Vec::new();
    let mut used_grids = BTreeMap::new();
    let mut grid = |name: &str| {
        let g = config.grid(name);
        used_grids.insert(name.to_string(), g);
        g
    };

    // fig1.csv: density against r at t = 0 for several cutoffs.
    let by_cutoff = CUTOFFS_FIG1
        .iter()
        .map(|&l| inputs.build_with_lambda(l))
        .collect::<Result<Vec<_>>>()?;
    let rows = grid("fig1_r")
        .points()
        .into_iter()
        .map(|r| {
            let mut row = vec![num(r)];
            row.extend(by_cutoff.iter().map(|p| num(rho_total(p, r, 0.0))));
            row
        })
        .collect::<Vec<_>>();
    let meta: Vec<String> = by_cutoff.iter().map(params_line).collect();
    let path = out.join("fig1.csv");
    write_csv(
        &path,
        &[
            "r[L]",
            "rho_lambda100[L^-4]",
            "rho_lambda300[L^-4]",
            "rho_lambda1000[L^-4]",
        ],
        &meta,
        &rows,
    )?;
    written.push(path);

    // fig2.csv: density against r at three times, Λ = 1000.
    let p = inputs.build_with_lambda(1000.0)?;
    let rows = grid("fig2_r")
        .points()
        .into_iter()
        .map(|r| {
            let mut row = vec![num(r)];
            row.extend(TIMES_FIG2.iter().map(|&t| num(rho_total(&p, r, t))));
            row
        })
        .collect::<Vec<_>>();
    let path = out.join("fig2.csv");
    write_csv(
        &path,
        &[
            "r[L]",
            "rho_t0[L^-4]",
            "rho_t0.005[L^-4]",
            "rho_t0.05[L^-4]",
        ],
        &[params_line(&p)],
        &rows,
    )?;
    written.push(path);

    // fig3.csv and fig4.csv: density and flux against t at r = 2.
    let ts = grid("fig34_t").points();
    for (file, lambda, scale) in [("fig3.csv", 100.0, 50.0), ("fig4.csv", 1000.0, 300.0)] {
        let p = inputs.build_with_lambda(lambda)?;
        let rows = ts
            .iter()
            .map(|&t| {
                let rho = rho_total(&p, FIG34_RADIUS, t);
                vec![
                    num(t),
                    num(rho),
                    num(flux(&p, FIG34_RADIUS, t)),
                    num(scale * rho),
                ]
            })
            .collect::<Vec<_>>();
        let scaled = format!("rho_x{scale}[L^-4]");
        let path = out.join(file);
        write_csv(
            &path,
            &["t[L]", "rho[L^-4]", "flux[L^-4]", &scaled],
            &[params_line(&p), format!("# r={}", num(FIG34_RADIUS))],
            &rows,
        )?;
        written.push(path);
    }

    // fig5.csv: sign map of the two-dimensional correlator.
    let axis = grid("fig5_axis").points();
    let mut rows = Vec::with_capacity(axis.len() * axis.len());
    for &x in &axis {
        for &tp in &axis {
            let s = corr2d(x, tp);
            rows.push(vec![
                num(x),
                num(tp),
                s.c_value.map_or_else(|| "NaN".into(), num),
                sign(s.c_value).into(),
                label(&s.case_label),
            ]);
        }
    }
    let path = out.join("fig5.csv");
    write_csv(
        &path,
        &["x[L]", "tprime[L]", "c[L^-4]", "sign", "case"],
        &[],
        &rows,
    )?;
    written.push(path);

    // fig7.csv: sign map of the four-dimensional correlator.
    let rs = grid("fig7_r").points();
    let dts = grid("fig7_dt").points();
    let mut rows = Vec::with_capacity(rs.len() * dts.len());
    for &r in &rs {
        for &dt in &dts {
            let s = corr4d(r, dt)?;
            let matches = match s.c_value {
                Some(c) => (c > 0.0) == (dt > 0.0) && c != 0.0,
                None => false,
            };
            rows.push(vec![
                num(r),
                num(dt),
                s.c_value.map_or_else(|| "NaN".into(), num),
                sign(s.c_value).into(),
                label(&s.case_label),
                matches.to_string(),
            ]);
        }
    }
    let path = out.join("fig7.csv");
    write_csv(
        &path,
        &[
            "r[L]",
            "dt[L]",
            "c[L^-8]",
            "sign",
            "case",
            "sign_matches_dt",
        ],
        &[],
        &rows,
    )?;
    written.push(path);

    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        params: inputs,
        resolved: inputs.build()?,
        grids: used_grids,
        files: written
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect(),
    };
    let path = out.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub r: f64,
    pub t: f64,
    pub estimate: MCEstimate,
    pub target: f64,
    pub rel_tol: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub version: &'static str,
    pub params: HelferParams,
    pub shell: ShellSpec,
    pub samples: u64,
    pub seed: u64,
    pub checks: Vec<OracleCheck>,
    pub passed: bool,
}

impl ValidateReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Runs the Monte Carlo oracle against the closed forms.
pub fn validate_report(
    config: &RunConfig,
    shell: ShellSpec,
    run: &McRun,
) -> Result<ValidateReport> {
    config.validate()?;
    let params = config.params.build()?;
    shell.validate(&params)?;
    let t_flux = OSCILLATION_GUARD / shell.lambda_lo;
    let mut checks = Vec::new();
    let mut check = |name, r, t, estimate: MCEstimate, target, rel_tol| {
        let passed = estimate.agrees_with(target, rel_tol);
        log::info!(
            "{name} r={r} t={t}: mc={} target={target} passed={passed}",
            estimate.mean
        );
        checks.push(OracleCheck {
            name,
            r,
            t,
            estimate,
            target,
            rel_tol,
            passed,
        });
    };
    for r in [0.0, 1.0] {
        let est = mc_rho2_shell(&params, &shell, r, 0.0, run)?;
        check(
            "rho2_shell",
            r,
            0.0,
            est,
            rho2_shell_closed(&params, &shell, r, 0.0),
            RHO2_REL_TOL,
        );
    }
    for r in [0.0, 1.0] {
        let est = mc_rho1_shell(&params, &shell, r, run)?;
        check(
            "rho1_shell",
            r,
            0.0,
            est,
            rho1_shell_closed(&params, &shell, r),
            RHO1_REL_TOL,
        );
    }
    for t in [0.0, t_flux] {
        let est = mc_flux_shell(&params, &shell, 1.0, t, run)?;
        check(
            "i2_shell",
            1.0,
            t,
            est,
            i2_shell_closed(&params, &shell, 1.0, t),
            FLUX_REL_TOL,
        );
    }
    let est = mc_i1_t0(&params, 2.0, run)?;
    check("i1_t0", 2.0, 0.0, est, 0.0, 0.0);

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidateReport {
        version: env!("CARGO_PKG_VERSION"),
        params,
        shell,
        samples: run.n,
        seed: run.seed,
        checks,
        passed,
    })
}

/// Writes `validate.json` into `out`.
pub fn cmd_validate(
    config: &RunConfig,
    shell: ShellSpec,
    run: &McRun,
    out: &Path,
) -> Result<(ValidateReport, PathBuf)> {
    let report = validate_report(config, shell, run)?;
    ensure_dir(out)?;
    let path = out.join("validate.json");
    fs::write(&path, report.to_json()?).map_err(|e| Error::io(&path, e))?;
    Ok((report, path))
}

#[derive(Debug, Clone, Serialize)]
pub struct QiSummary {
    pub rows: usize,
    pub passed_rows: usize,
    pub min_margin: f64,
    /// Largest sign change of the sharp-window integral, scanned to `1e4 / p0`.
    pub window_t_star: Option<f64>,
    pub window_positive_beyond: bool,
}

impl QiSummary {
    pub fn passed(&self) -> bool {
        self.passed_rows == self.rows
    }

    pub fn line(&self) -> String {
        format!(
            "qi: {}/{} widths passed, min margin {}, window integral sign change at T*={} (positive beyond: {})",
            self.passed_rows,
            self.rows,
            num(self.min_margin),
            self.window_t_star.map_or_else(|| "none".into(), num),
            self.window_positive_beyond
        )
    }
}

/// Writes `qi.csv`; the summary is also appended as a final comment line.
pub fn cmd_qi(
    config: &RunConfig,
    r: f64,
    bound_const: f64,
    out: &Path,
) -> Result<(QiSummary, PathBuf)> {
    config.validate()?;
    let params = config.params.build()?;
    let reports = qi_margin(&params, r, &config.grid("qi_tau"), bound_const)?;
    let horizon = positivity_horizon(&params, r, 1e4 / params.p0, 512)?;
    let summary = QiSummary {
        rows: reports.len(),
        passed_rows: reports.iter().filter(|q| q.passed).count(),
        min_margin: reports
            .iter()
            .map(|q| q.margin)
            .fold(f64::INFINITY, f64::min),
        window_t_star: horizon.t_star,
        window_positive_beyond: horizon.all_positive_beyond,
    };
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|q| {
            vec![
                num(q.r),
                num(q.tau),
                num(q.averaged_rho),
                num(q.bound_value),
                num(q.margin),
                q.passed.to_string(),
            ]
        })
        .collect();
    ensure_dir(out)?;
    let path = out.join("qi.csv");
    let meta = [
        params_line(&params),
        format!(
            "# bound: -C/tau^4 with C={} (external Lorentzian-sampling bound)",
            num(bound_const)
        ),
    ];
    let mut rows = rows;
    rows.push(vec![format!("# {}", summary.line())]);
    write_csv(
        &path,
        &[
            "r[L]",
            "tau[L]",
            "averaged_rho[L^-4]",
            "bound[L^-4]",
            "margin[L^-4]",
            "passed",
        ],
        &meta,
        &rows,
    )?;
    Ok((summary, path))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrMode {
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "4d")]
    FourD,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FalloffFit {
    pub axis: FalloffAxis,
    pub fixed: f64,
    pub exponent: f64,
    pub expected: f64,
}

/// Index pairs `(i, j)` of `(a[i], b[j])` inside the light-cone band.
pub fn lightcone_hits(a: &[f64], b: &[f64]) -> Vec<(usize, usize)> {
    let mut hits = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if (x * x - y * y).abs() < LIGHTCONE_EPS {
                hits.push((i, j));
            }
        }
    }
    hits
}

/// Evaluates the correlator on `corr_a × corr_b` (space × time) and writes
/// `corr2d.csv` or `corr4d.csv`. When one grid is a single point, the falloff
/// exponent along the other is fitted as well.
pub fn cmd_corr(
    config: &RunConfig,
    mode: CorrMode,
    out: &Path,
) -> Result<(Option<FalloffFit>, PathBuf)> {
    config.validate()?;
    let ga = config.grid("corr_a");
    let gb = config.grid("corr_b");
    let a = ga.points();
    let b = gb.points();
    let hits = lightcone_hits(&a, &b);
    if !hits.is_empty() {
        let listed: Vec<String> = hits
            .iter()
            .map(|&(i, j)| format!("({i}, {j}) at ({}, {})", a[i], b[j]))
            .collect();
        return Err(Error::LightCone(format!(
            "{} grid point(s) within the light-cone band: {}",
            hits.len(),
            listed.join("; ")
        )));
    }
    let mut rows = Vec::with_capacity(a.len() * b.len());
    for &x in &a {
        for &y in &b {
            let s = match mode {
                CorrMode::TwoD => corr2d(x, y),
                CorrMode::FourD => corr4d(x, y)?,
            };
            rows.push(vec![
                num(s.coord_a),
                num(s.coord_b),
                s.c_value.map_or_else(|| "NaN".into(), num),
                label(&s.case_label),
            ]);
        }
    }

    let fit_axis = match (mode, ga.is_point(), gb.is_point()) {
        (CorrMode::TwoD, false, true) => Some((FalloffAxis::Space2d, b[0], ga)),
        (CorrMode::TwoD, true, false) => Some((FalloffAxis::Time2d, a[0], gb)),
        (CorrMode::FourD, false, true) => Some((FalloffAxis::Space4d, b[0], ga)),
        (CorrMode::FourD, true, false) => Some((FalloffAxis::Time4d, a[0], gb)),
        _ => None,
    };
    let fit = match fit_axis {
        Some((axis, fixed, grid)) => match falloff_exponent(axis, fixed, &grid) {
            Ok(exponent) => Some(FalloffFit {
                axis,
                fixed,
                exponent,
                expected: axis.expected_exponent(),
            }),
            Err(e) => {
                log::warn!("falloff fit skipped: {e}");
                None
            }
        },
        None => None,
    };

    let (file, columns) = match mode {
        CorrMode::TwoD => ("corr2d.csv", ["x[L]", "tprime[L]", "c[L^-4]", "case"]),
        CorrMode::FourD => ("corr4d.csv", ["r[L]", "dt[L]", "c[L^-8]", "case"]),
    };
    let mut meta = Vec::new();
    if let Some(f) = &fit {
        meta.push(format!(
            "# falloff: axis={} fixed={} exponent={} expected={}",
            label(&f.axis),
            num(f.fixed),
            num(f.exponent),
            num(f.expected)
        ));
    }
    ensure_dir(out)?;
    let path = out.join(file);
    write_csv(&path, &columns, &meta, &rows)?;
    Ok((fit, path))
}

/// Writes the closed-form field on `density_r × density_t` to `density.csv`.
pub fn cmd_density(config: &RunConfig, out: &Path) -> Result<PathBuf> {
    config.validate()?;
    let params = config.params.build()?;
    let samples = field_grid(
        &params,
        &config.grid("density_r"),
        &config.grid("density_t"),
    )?;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            vec![
                num(s.r),
                num(s.t),
                num(s.rho1),
                num(s.rho2),
                num(s.rho),
                num(s.flux),
            ]
        })
        .collect();
    ensure_dir(out)?;
    let path = out.join("density.csv");
    write_csv(
        &path,
        &[
            "r[L]",
            "t[L]",
            "rho1[L^-4]",
            "rho2[L^-4]",
            "rho[L^-4]",
            "flux[L^-4]",
        ],
        &[params_line(&params)],
        &rows,
    )?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.params.chi0 = Chi0::Value(0.1 + 0.2);
        cfg.params.lambda = 1234.5678901234567;
        cfg.grids
            .insert("qi_tau".into(), GridSpec::log(1.0 / 3.0, 7.0, 33).unwrap());
        let text = cfg.to_json().unwrap();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let text = RunConfig::default()
            .to_json()
            .unwrap()
            .replacen("\"seed\"", "\"sead\"", 1);
        assert!(RunConfig::from_json(&text).is_err());
        let mut cfg = RunConfig::default();
        cfg.grids
            .insert("fig9_r".into(), GridSpec::linear(0.0, 1.0, 4).unwrap());
        assert!(RunConfig::from_json(&cfg.to_json().unwrap()).is_err());
    }

    #[test]
    fn config_rejects_bad_physics() {
        let mut cfg = RunConfig::default();
        cfg.params.lambda = 5.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn standard_chi0_serializes_as_tag() {
        let text = RunConfig::default().to_json().unwrap();
        assert!(text.contains("\"paper-default\""));
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, -2.0997e-4, 1.0 / 3.0, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn lightcone_hits_listed() {
        let hits = lightcone_hits(&[1.0, 2.0, 3.0], &[-3.0, 0.5, 2.0]);
        assert_eq!(hits, vec![(1, 2), (2, 0)]);
    }
}
