//! Command-line front end. Every command produces one output document
//! (JSON, CSV or a single line of text) and a verdict; a violated invariant
//! turns into exit code 1, bad input into exit code 2.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperzero_core::curve::{self, theta_grid};
use hyperzero_core::exactpoly::{f64_to_rat, isolate_roots};
use hyperzero_core::family::{self, FamilyParams};
use hyperzero_core::qspec::solve_q;
use hyperzero_core::verify::{check_hyperbolicity, check_sign_pattern, cross_check_roots, density_scan, expsum_sign};
use hyperzero_core::{BigRat, IntPoly};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "hyperzero/1";

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "hyperzero", version, about = "Zeros of the polynomials generated by 1/((1-t)^n + z t^r)")]
pub struct RunConfig {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy, Serialize)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
}

impl FamilyArgs {
    fn params(self) -> Result<FamilyParams, CliError> {
        Ok(FamilyParams::new(self.n, self.r)?)
    }
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Exact coefficients of P_0, ..., P_{m_max}.
    Gen {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m_max: usize,
    },
    /// Sturm-isolated real zeros of P_m.
    Roots {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        /// Width to which isolating intervals are refined.
        #[arg(long, default_value_t = 1e-12)]
        width: f64,
    },
    /// Samples of z(theta) and the quantities derived from it.
    Curve {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Only the (theta, z) columns, for plotting.
        #[arg(long)]
        figure: bool,
    },
    /// Roots of Q at one theta.
    Qroots {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Signs of R_m on the theta_h grid and next to pi/r.
    Signs {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
    },
    /// Real-rootedness and containment in I for m = 0..=m_max.
    Verify {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m_max: usize,
    },
    /// Fraction of theta-bins hit by zeros of R_m, m <= m_max.
    Density {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m_max: usize,
        #[arg(long, default_value_t = 50)]
        bins: usize,
    },
    /// Match the zeros of R_m against the Sturm-isolated zeros of P_m.
    Crosscheck {
        #[command(flatten)]
        #[serde(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sign of the exponential sum for (n, h).
    Expsum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u32,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hyperzero_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use hyperzero_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::InvalidParams { .. }
                | E::OutOfDomain { .. }
                | E::OutOfInterval { .. }
                | E::InvalidArgument(_)
                | E::WrongCase { .. }
                | E::WrongDegree(_)
                | E::NonPositiveWidth
                | E::EmptyInterval { .. },
            ) => 2,
            _ => 1,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    /// False when a checked invariant failed.
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn envelope(config: &RunConfig, result: Value) -> Result<String, CliError> {
    let doc = json!({
        "schema": SCHEMA,
        "config": config,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io {
        path: PathBuf::from("<memory>"),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn format_or(config: &RunConfig, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = config.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command")))
    }
}

fn coeff_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Coefficient lists as written by `gen`: one array of decimal strings per
/// polynomial, constant term first.
pub fn polys_to_json(polys: &[IntPoly]) -> Value {
    Value::Array(
        polys
            .iter()
            .map(|p| Value::Array(coeff_strings(p).into_iter().map(Value::String).collect()))
            .collect(),
    )
}

/// Inverse of [`polys_to_json`].
pub fn polys_from_json(v: &Value) -> Result<Vec<IntPoly>, CliError> {
    let bad = || CliError::Usage("expected an array of arrays of decimal strings".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            let coeffs = p
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| c.as_str().and_then(|s| s.parse().ok()).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntPoly::new(coeffs))
        })
        .collect()
}

fn figure_csv(params: FamilyParams, samples: usize) -> Result<String, CliError> {
    if samples < 2 {
        return Err(CliError::Usage("figure data needs at least 2 samples".into()));
    }
    let rows = theta_grid(params, samples)
        .into_iter()
        .map(|t| curve::z_of_theta(params, t).map(|s| vec![t.to_string(), s.z.to_string()]))
        .collect::<Result<Vec<_>, _>>()?;
    csv_string(&["theta", "z"], rows)
}

/// Write `(theta, z)` samples of the curve to `out_path` as CSV.
pub fn emit_figure_data(params: FamilyParams, samples: usize, out_path: &Path) -> Result<(), CliError> {
    let data = figure_csv(params, samples)?;
    fs::write(out_path, data).map_err(|source| CliError::Io {
        path: out_path.to_path_buf(),
        source,
    })
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    if config.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build()?;
    pool.install(|| dispatch(config))
}

fn dispatch(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        Command::Gen { family, m_max } => {
            let params = family.params()?;
            let polys = family::generate(params, m_max);
            let output = match format_or(config, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => envelope(config, json!({ "polynomials": polys_to_json(&polys) }))?,
                Format::Csv => {
                    let rows = polys.iter().enumerate().flat_map(|(m, p)| {
                        coeff_strings(p)
                            .into_iter()
                            .enumerate()
                            .map(move |(k, c)| vec![m.to_string(), k.to_string(), c])
                    });
                    csv_string(&["m", "k", "coefficient"], rows)?
                }
            };
            Ok(Outcome { output, passed: true })
        }
        Command::Roots { family, m, width } => {
            let params = family.params()?;
            if !(width > 0.0) {
                return Err(CliError::Usage("--width must be positive".into()));
            }
            let pm = family::generate(params, m).pop().unwrap();
            let interval = curve::interval_i(params);
            let roots = if pm.degree() == Some(0) {
                Vec::new()
            } else {
                let b = pm.cauchy_bound();
                isolate_roots(&pm.to_rat(), &-b.clone(), &b, &f64_to_rat(width))?
            };
            let in_i = |lo: &BigRat, hi: &BigRat| interval.contains_rat(lo) && interval.contains_rat(hi);
            let passed = roots.iter().all(|iv| in_i(&iv.lo, &iv.hi));
            let output = match format_or(config, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => {
                    let list: Vec<Value> = roots
                        .iter()
                        .map(|iv| {
                            json!({
                                "lo": iv.lo.to_string(),
                                "hi": iv.hi.to_string(),
                                "exact": iv.exact.as_ref().map(|x| x.to_string()),
                                "midpoint": iv.midpoint_f64(),
                                "in_interval": in_i(&iv.lo, &iv.hi),
                            })
                        })
                        .collect();
                    envelope(
                        config,
                        json!({
                            "m": m,
                            "degree": pm.degree(),
                            "interval": interval,
                            "count": roots.len(),
                            "roots": list,
                        }),
                    )?
                }
                Format::Csv => csv_string(
                    &["lo", "hi", "midpoint", "in_interval"],
                    roots.iter().map(|iv| {
                        vec![
                            iv.lo.to_string(),
                            iv.hi.to_string(),
                            iv.midpoint_f64().to_string(),
                            in_i(&iv.lo, &iv.hi).to_string(),
                        ]
                    }),
                )?,
            };
            Ok(Outcome { output, passed })
        }
        Command::Curve { family, samples, figure } => {
            let params = family.params()?;
            if samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            let points = theta_grid(params, samples)
                .into_iter()
                .map(|t| curve::z_of_theta(params, t))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = points.windows(2).all(|w| w[1].z > w[0].z);
            let output = match format_or(config, Format::Csv, &[Format::Json, Format::Csv])? {
                Format::Csv if figure => figure_csv(params, samples)?,
                Format::Csv => csv_string(
                    &["theta", "phi", "z", "A", "B", "t0_ratio"],
                    points.iter().map(|s| {
                        [s.theta, s.phi, s.z, s.a_val, s.b_val, s.t0_ratio]
                            .iter()
                            .map(f64::to_string)
                            .collect()
                    }),
                )?,
                Format::Json => envelope(
                    config,
                    json!({
                        "interval": curve::interval_i(params),
                        "samples": points,
                    }),
                )?,
            };
            Ok(Outcome { output, passed })
        }
        Command::Qroots { family, theta, tol } => {
            let params = family.params()?;
            format_or(config, Format::Json, &[Format::Json])?;
            let spec = solve_q(params, theta, tol)?;
            Ok(Outcome {
                output: envelope(config, serde_json::to_value(&spec)?)?,
                passed: spec.margin > 0.0,
            })
        }
        Command::Signs { family, m } => {
            let params = family.params()?;
            format_or(config, Format::Json, &[Format::Json])?;
            let pattern = check_sign_pattern(params, m)?;
            Ok(Outcome {
                output: envelope(config, serde_json::to_value(&pattern)?)?,
                passed: pattern.matches_prediction,
            })
        }
        Command::Verify { family, m_max } => {
            let params = family.params()?;
            let report = check_hyperbolicity(params, m_max)?;
            let passed = match report.first_all_pass_m {
                None => false,
                Some(first) => params.order() != 3 || first == 0,
            };
            let output = match format_or(config, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Json => envelope(config, serde_json::to_value(&report)?)?,
                Format::Csv => csv_string(
                    &["m", "degree", "real_roots_in_i", "total_real_roots", "hyperbolic", "containment"],
                    report.per_m.iter().map(|c| {
                        vec![
                            c.m.to_string(),
                            c.degree.to_string(),
                            c.real_roots_in_i.to_string(),
                            c.total_real_roots.to_string(),
                            c.hyperbolic.to_string(),
                            c.containment.to_string(),
                        ]
                    }),
                )?,
            };
            Ok(Outcome { output, passed })
        }
        Command::Density { family, m_max, bins } => {
            let params = family.params()?;
            format_or(config, Format::Json, &[Format::Json])?;
            let report = density_scan(params, m_max, bins)?;
            Ok(Outcome {
                output: envelope(config, serde_json::to_value(&report)?)?,
                passed: true,
            })
        }
        Command::Crosscheck { family, m, tol } => {
            let params = family.params()?;
            format_or(config, Format::Json, &[Format::Json])?;
            let check = cross_check_roots(params, m, tol)?;
            Ok(Outcome {
                output: envelope(config, serde_json::to_value(&check)?)?,
                passed: check.pass,
            })
        }
        Command::Expsum { n, h } => {
            let sign = expsum_sign(n, h)?;
            let expected = if h % 2 == 0 { 1 } else { -1 };
            let output = match config.format {
                Some(Format::Json) => envelope(config, json!({ "sign": sign }))?,
                Some(Format::Csv) => return Err(CliError::Usage("expsum has no csv output".into())),
                None => format!("{sign:+}\n"),
            };
            Ok(Outcome {
                output,
                passed: sign == expected,
            })
        }
    }
}

/// Write the outcome where the config asks for it.
pub fn deliver(config: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    match &config.out {
        Some(path) => fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    }
}
