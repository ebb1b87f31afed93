// negated comparisons are deliberate: NaN must fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use limcycle::cycles::{distribution, lambda_bands, CurveSet};
use limcycle::detection::{abelian_integral_with, band_grid, detection_curve_with};
use limcycle::hamiltonian::Boundary;
use limcycle::io::{self, RunConfig};
use limcycle::ode::verify_prediction;
use limcycle::{Error, Family};

/// Limit cycles of the perturbed quartic Hamiltonian system.
#[derive(Parser, Debug)]
#[command(name = "limcycle", version)]
struct Cli {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    u: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Perturbation degree (even, at least 4).
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    mu: Option<u32>,
    #[arg(long, global = true)]
    beta: Option<u32>,
    /// Quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Integrator tolerance.
    #[arg(long, global = true)]
    ode_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the nine finite singular points.
    Singular,
    /// Classify the level set H = h.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
    },
    /// Sample a detection function into a CSV table.
    #[command(alias = "curve")]
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: u8,
        #[arg(long, allow_hyphen_values = true, requires_all = ["h_end", "step"])]
        h_start: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["h_start", "step"])]
        h_end: Option<f64>,
        #[arg(long, requires_all = ["h_start", "h_end"])]
        step: Option<f64>,
        /// Divide the coefficients by 10⁴ (families 1, 3, 4).
        #[arg(long)]
        paper_scale: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the λ bands of constant cycle pattern.
    Bands {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the predicted cycles at one λ.
    Distribution {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check predicted cycles against direct integration.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<f64>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: Option<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the Abelian integral A(h) at λ.
    Abelian {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: u8,
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
}

/// Failure with a stage name for the message.
struct Failure {
    stage: &'static str,
    error: Error,
}

fn at(stage: &'static str) -> impl FnOnce(Error) -> Failure {
    move |error| Failure { stage, error }
}

const EXIT_MISMATCH: u8 = 5;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}: {}", f.stage, f.error);
            ExitCode::from(f.error.exit_code() as u8)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let p = &mut cfg.params;
    if let Some(a) = cli.a {
        p.a = a;
    }
    if let Some(b) = cli.b {
        p.b = b;
    }
    if let Some(u) = cli.u {
        p.u = u;
    }
    if let Some(v) = cli.v {
        p.v = v;
    }
    cfg.params = io::apply_degree(cfg.params, cli.n, cli.mu, cli.beta);
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(t) = cli.ode_tol {
        cfg.ode_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &[u8], out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text)?,
    }
    Ok(())
}

fn family(i: u8) -> Family {
    Family::from_index(i as usize).expect("range checked by the parser")
}

fn fixed(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.6}")
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = load_config(&cli).map_err(at("config"))?;
    let p = cfg.params;
    let out_default = cfg.output_path.clone();
    let out_path = |o: &Option<PathBuf>| o.clone().or_else(|| out_default.clone());
    match &cli.command {
        Command::Singular => {
            let mut text = String::from("label, x, y, kind, energy\n");
            for s in p.hamiltonian().singular_points() {
                text += &format!(
                    "{}, {}, {}, {}, {}\n",
                    s.label,
                    fixed(s.x),
                    fixed(s.y),
                    s.kind,
                    fixed(s.energy)
                );
            }
            emit(text.as_bytes(), None).map_err(at("singular"))?;
        }
        Command::Classify { h } => {
            if !h.is_finite() {
                return Err(at("classify")(Error::Domain(format!(
                    "h must be finite, got {h}"
                ))));
            }
            let c = p.hamiltonian().classify(*h);
            let fams: Vec<String> = c.families.iter().map(|f| f.to_string()).collect();
            let boundary = match c.boundary {
                None => "none",
                Some(Boundary::Origin) => "origin",
                Some(Boundary::Heteroclinic) => "heteroclinic",
                Some(Boundary::Homoclinic) => "homoclinic",
                Some(Boundary::Centers) => "centers",
            };
            let text = format!(
                "h: {h}\nfamilies: {}\nboundary: {boundary}\n",
                if fams.is_empty() {
                    "none".into()
                } else {
                    fams.join(", ")
                }
            );
            emit(text.as_bytes(), None).map_err(at("classify"))?;
        }
        Command::Table {
            family: f,
            h_start,
            h_end,
            step,
            paper_scale,
            out,
        } => {
            let fam = family(*f);
            let grid = match (h_start, h_end, step) {
                (Some(s), Some(e), Some(d)) => {
                    io::range_grid(*s, *e, *d).map_err(|m| at("table")(Error::InvalidParams(m)))?
                }
                _ => cfg.grid(fam),
            };
            let curve = detection_curve_with(cfg.detector(), fam, &grid).map_err(at("table"))?;
            let mut buf = Vec::new();
            io::write_table(
                &mut buf,
                fam,
                curve.samples(),
                *paper_scale || cfg.paper_scale,
            )
            .map_err(at("table"))?;
            emit(&buf, out_path(out).as_deref()).map_err(at("table"))?;
        }
        Command::Bands { out } => {
            let set = curve_set(&cfg).map_err(at("bands: sampling detection curves"))?;
            let bands = lambda_bands(&set).map_err(at("bands: counting roots"))?;
            let text = io::bands_report(&p, &bands, &set.breakpoints());
            emit(text.as_bytes(), out_path(out).as_deref()).map_err(at("bands"))?;
        }
        Command::Distribution { lambda, out } => {
            let set = curve_set(&cfg).map_err(at("distribution: sampling detection curves"))?;
            let report = distribution(*lambda, &set).map_err(at("distribution"))?;
            let text = io::distribution_report(&p, &report);
            emit(text.as_bytes(), out_path(out).as_deref()).map_err(at("distribution"))?;
        }
        Command::Verify {
            lambda,
            epsilon,
            family: f,
            out,
        } => {
            let eps = epsilon.unwrap_or(p.epsilon);
            if eps == 0.0 {
                return Err(at("verify")(Error::InvalidParams("degenerate: ε=0".into())));
            }
            let set = curve_set(&cfg).map_err(at("verify: sampling detection curves"))?;
            let report = distribution(*lambda, &set).map_err(at("verify: distribution"))?;
            let findings: Vec<_> = report
                .findings
                .iter()
                .filter(|x| f.is_none_or(|f| x.family.id == family(f)))
                .collect();
            let records = findings
                .par_iter()
                .map(|x| verify_prediction(x, &p, eps, cfg.ode_tol))
                .collect::<Result<Vec<_>, _>>()
                .map_err(at("verify: integration"))?;
            let text = io::verification_report(&p, *lambda, eps, &records);
            emit(text.as_bytes(), out_path(out).as_deref()).map_err(at("verify"))?;
            if records.iter().any(|r| !r.verified) {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Abelian {
            family: f,
            h,
            lambda,
        } => {
            let q = p.with_lambda(*lambda);
            let value = abelian_integral_with(&cfg.detector(), family(*f), *h, &q)
                .map_err(at("abelian"))?;
            emit(format!("{value}\n").as_bytes(), None).map_err(at("abelian"))?;
        }
    }
    Ok(0)
}

fn curve_set(cfg: &RunConfig) -> Result<CurveSet, Error> {
    let ham = cfg.params.hamiltonian();
    let grids = Family::ALL.map(|f| {
        cfg.grids[f.index() - 1]
            .clone()
            .unwrap_or_else(|| band_grid(f, &ham))
    });
    CurveSet::sample_on(&cfg.params, cfg.tol, &grids)
}
