//! Run configuration, CSV tables and text reports.
//!
//! Config files are flat `key = value` lines with `#` comments. Numbers
//! in CSV output use the shortest decimal form that parses back to the
//! same `f64`, so tables round-trip bit-exactly.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::cycles::{Band, DistributionReport};
use crate::detection::{table_grid, DetectionSample, Detector, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::hamiltonian::Family;
use crate::ode::{Verification, DEFAULT_ODE_TOL};
use crate::params::SystemParams;

/// Scale between the raw coefficients and the `ρ = 10⁴u`, `ω = 10⁴v`
/// columns used for the large-valued families.
pub const PAPER_SCALE: f64 = 1e4;

/// Published band endpoints of the case study, printed next to the
/// computed ones for comparison.
pub const REFERENCE_BREAKPOINTS: [f64; 7] = [176.22, 242.6, 286.76, 288.49, 288.92, 289.99, 290.82];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    /// Per-family energy grids; `None` selects the default table grid.
    pub grids: [Option<Vec<f64>>; 4],
    pub tol: f64,
    pub ode_tol: f64,
    pub output_path: Option<PathBuf>,
    pub paper_scale: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::default(),
            grids: Default::default(),
            tol: DEFAULT_TOL,
            ode_tol: DEFAULT_ODE_TOL,
            output_path: None,
            paper_scale: false,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses config text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut degree: Option<u32> = None;
        let mut split = (None, None);
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("`{key}` expects a number, got `{value}`")))
            };
            let int = || -> Result<u32> {
                value.parse::<u32>().map_err(|_| {
                    err(format!(
                        "`{key}` expects a non-negative integer, got `{value}`"
                    ))
                })
            };
            match key {
                "a" => cfg.params.a = real()?,
                "b" => cfg.params.b = real()?,
                "u" => cfg.params.u = real()?,
                "v" => cfg.params.v = real()?,
                "lambda" => cfg.params.lambda0 = real()?,
                "epsilon" => cfg.params.epsilon = real()?,
                "n" => degree = Some(int()?),
                "mu" => split.0 = Some(int()?),
                "beta" => split.1 = Some(int()?),
                "tol" => cfg.tol = real()?,
                "ode_tol" => cfg.ode_tol = real()?,
                "output" => cfg.output_path = Some(PathBuf::from(value)),
                "paper_scale" => {
                    cfg.paper_scale = match value {
                        "true" | "1" | "yes" => true,
                        "false" | "0" | "no" => false,
                        _ => {
                            return Err(err(format!(
                                "`paper_scale` expects true or false, got `{value}`"
                            )))
                        }
                    }
                }
                "grid1" | "grid2" | "grid3" | "grid4" => {
                    let j = key[4..].parse::<usize>().expect("matched digit") - 1;
                    cfg.grids[j] = Some(parse_grid(value).map_err(err)?);
                }
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        cfg.params = apply_degree(cfg.params, degree, split.0, split.1);
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.tol > 0.0) || !(self.ode_tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "tolerances must be positive, got tol = {}, ode_tol = {}",
                self.tol, self.ode_tol
            )));
        }
        let det = self.detector();
        for family in Family::ALL {
            if let Some(g) = &self.grids[family.index() - 1] {
                for &h in g {
                    det.check_range(family, h)?;
                }
            }
        }
        Ok(())
    }

    pub fn detector(&self) -> Detector {
        Detector::new(&self.params, self.tol)
    }

    /// The configured grid of a family, or its default table grid.
    pub fn grid(&self, family: Family) -> Vec<f64> {
        self.grids[family.index() - 1]
            .clone()
            .unwrap_or_else(|| table_grid(family, &self.params.hamiltonian()))
    }
}

/// Sets the degree and its split. With only `n` given the split is even;
/// with only one of `μ`, `β` the other makes up `n`.
pub fn apply_degree(
    mut p: SystemParams,
    n: Option<u32>,
    mu: Option<u32>,
    beta: Option<u32>,
) -> SystemParams {
    if let Some(n) = n {
        p = p.with_degree(n);
    }
    match (mu, beta) {
        (Some(m), Some(b)) => {
            p.mu = m;
            p.beta = b;
        }
        (Some(m), None) => {
            p.mu = m;
            p.beta = p.n.saturating_sub(m);
        }
        (None, Some(b)) => {
            p.beta = b;
            p.mu = p.n.saturating_sub(b);
        }
        (None, None) => {}
    }
    p
}

/// A grid written either as `start:end:step` or as a comma-separated list.
pub fn parse_grid(value: &str) -> std::result::Result<Vec<f64>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number `{}` in grid", s.trim()))
    };
    let parts: Vec<&str> = value.split(':').collect();
    if parts.len() == 3 {
        return range_grid(num(parts[0])?, num(parts[1])?, num(parts[2])?);
    }
    value.split(',').map(num).collect()
}

/// `start, start + step, …` up to `end` inclusive (with a small slack for
/// rounding), each value rounded to 12 decimals.
pub fn range_grid(start: f64, end: f64, step: f64) -> std::result::Result<Vec<f64>, String> {
    if !(step > 0.0) || !(end >= start) || !start.is_finite() || !end.is_finite() {
        return Err(format!(
            "need start <= end and step > 0, got {start}:{end}:{step}"
        ));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(format!("grid {start}:{end}:{step} has too many points"));
    }
    Ok((0..=count)
        .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

fn num(x: f64) -> String {
    // Display gives the shortest string that parses back to the same value
    format!("{x}")
}

/// Whether a family's table uses the `ρ, ω` scaling.
pub fn scaled_family(family: Family) -> bool {
    family != Family::Gamma2
}

/// Writes `h,cu,cv,area`, or with `paper_scale` the `h,cu_rho,cv_omega`
/// columns divided by 10⁴ (Γ2 keeps raw `h,cu,cv`).
pub fn write_table<W: Write>(
    out: W,
    family: Family,
    samples: &[DetectionSample],
    paper_scale: bool,
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if !paper_scale {
        w.write_record(["h", "cu", "cv", "area"])?;
        for s in samples {
            w.write_record([num(s.h), num(s.cu), num(s.cv), num(s.area)])?;
        }
    } else if scaled_family(family) {
        w.write_record(["h", "cu_rho", "cv_omega"])?;
        for s in samples {
            w.write_record([num(s.h), num(s.cu / PAPER_SCALE), num(s.cv / PAPER_SCALE)])?;
        }
    } else {
        w.write_record(["h", "cu", "cv"])?;
        for s in samples {
            w.write_record([num(s.h), num(s.cu), num(s.cv)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads any table written by [`write_table`] as rows of numbers, with
/// the header.
pub fn read_table<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::Domain(format!("non-numeric CSV field `{f}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

fn params_block(out: &mut String, p: &SystemParams) {
    let _ = writeln!(out, "a: {}", p.a);
    let _ = writeln!(out, "b: {}", p.b);
    let _ = writeln!(out, "n: {}", p.n);
    let _ = writeln!(out, "mu: {}", p.mu);
    let _ = writeln!(out, "beta: {}", p.beta);
    let _ = writeln!(out, "u: {}", p.u);
    let _ = writeln!(out, "v: {}", p.v);
}

fn pattern_line(pattern: &[usize; 4]) -> String {
    Family::ALL
        .iter()
        .zip(pattern)
        .map(|(f, k)| format!("{f}={k}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn findings_line(report: &DistributionReport) -> String {
    if report.findings.is_empty() {
        return "none".into();
    }
    report
        .findings
        .iter()
        .map(|f| {
            format!(
                "{}@{:.6}:{}x{}",
                f.family.id, f.h_root, f.stability, f.count
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Key-value report of the λ0 bands, one blank-line separated block per
/// band, preceded by a parameter block.
pub fn bands_report(params: &SystemParams, bands: &[Band], breakpoints: &[f64]) -> String {
    let mut out = String::new();
    params_block(&mut out, params);
    let bp: Vec<String> = breakpoints.iter().map(|b| format!("{b:.6}")).collect();
    let _ = writeln!(out, "breakpoints: {}", bp.join(", "));
    let case_study = SystemParams::default();
    if params.a == case_study.a
        && params.b == case_study.b
        && params.n == case_study.n
        && params.u == case_study.u
        && params.v == case_study.v
    {
        let r: Vec<String> = REFERENCE_BREAKPOINTS
            .iter()
            .map(|b| b.to_string())
            .collect();
        let _ = writeln!(out, "reference_breakpoints: {}", r.join(", "));
    }
    let _ = writeln!(out, "bands: {}", bands.len());
    for (i, b) in bands.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "band: {}", i + 1);
        let _ = writeln!(out, "lambda_lo: {}", b.lo);
        let _ = writeln!(out, "lambda_hi: {}", b.hi);
        let _ = writeln!(out, "pattern: {}", pattern_line(&b.pattern));
        let _ = writeln!(out, "total: {}", b.total);
        let _ = writeln!(out, "cycles: {}", findings_line(&b.report));
    }
    out
}

pub fn distribution_report(params: &SystemParams, report: &DistributionReport) -> String {
    let mut out = String::new();
    params_block(&mut out, params);
    let _ = writeln!(out, "lambda: {}", report.lambda0);
    let _ = writeln!(out, "band_lo: {}", report.band.0);
    let _ = writeln!(out, "band_hi: {}", report.band.1);
    let _ = writeln!(out, "pattern: {}", pattern_line(&report.pattern()));
    let _ = writeln!(out, "total: {}", report.total);
    let _ = writeln!(out, "findings: {}", report.findings.len());
    for f in &report.findings {
        let _ = writeln!(out);
        let _ = writeln!(out, "family: {}", f.family.id);
        let _ = writeln!(out, "h_root: {}", f.h_root);
        let _ = writeln!(out, "slope: {}", f.slope);
        let _ = writeln!(out, "stability: {}", f.stability);
        let _ = writeln!(out, "count: {}", f.count);
        if f.near_critical {
            let _ = writeln!(out, "warning: near-critical, unreliable");
        }
    }
    for (family, h) in &report.tangencies {
        let _ = writeln!(out);
        let _ = writeln!(out, "tangency: {family} at h = {h}");
    }
    out
}

pub fn verification_report(
    params: &SystemParams,
    lambda0: f64,
    epsilon: f64,
    records: &[Verification],
) -> String {
    let mut out = String::new();
    params_block(&mut out, params);
    let _ = writeln!(out, "lambda: {lambda0}");
    let _ = writeln!(out, "epsilon: {epsilon}");
    if records.is_empty() {
        let _ = writeln!(out, "findings: none");
        return out;
    }
    let ok = records.iter().filter(|r| r.verified).count();
    let _ = writeln!(out, "findings: {}", records.len());
    let _ = writeln!(out, "verified: {ok}");
    for r in records {
        let _ = writeln!(out);
        let _ = writeln!(out, "family: {}", r.family);
        let _ = writeln!(out, "h_root: {}", r.h_root);
        let _ = writeln!(out, "predicted: {}", r.predicted);
        if let Some(fp) = &r.fixed_point {
            let _ = writeln!(out, "h_star: {}", fp.h_star);
            let _ = writeln!(out, "h_error: {}", (fp.h_star - r.h_root).abs());
            let _ = writeln!(out, "derivative: {}", fp.derivative);
            let _ = writeln!(out, "residual: {:e}", fp.residual);
            let _ = writeln!(out, "period: {}", fp.period);
        }
        if let Some(s) = r.observed {
            let _ = writeln!(out, "observed: {s}");
        }
        let _ = writeln!(out, "stability_agrees: {}", r.observed == Some(r.predicted));
        let _ = writeln!(out, "verified: {}", r.verified);
        if let Some(msg) = &r.failure {
            let _ = writeln!(out, "failure: {msg}");
        }
    }
    out
}
