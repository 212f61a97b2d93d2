//! Command-line front end: argument parsing, run configuration, dispatch to
//! the library, and deterministic persistence of results.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analytic::{annulus_lowest_modes, disk_lowest_modes};
use crate::discretize::{assemble_operator, build_grid};
use crate::eigensolve::{lowest_eigenpairs_with, SolverOptions};
use crate::experiments::{
    bound_check, center_scan, halfplane_check, omega_scan, weyl_check, ExperimentOptions, ScanMode,
};
use crate::geometry::{BoundingBox, Domain, HalfplaneCut, Point};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    DiskSpectrum,
    AnnulusSpectrum,
    Solve,
    CenterScan,
    OmegaScan,
    Weyl,
    Bound,
    Halfplane,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::DiskSpectrum => "disk-spectrum",
            CommandName::AnnulusSpectrum => "annulus-spectrum",
            CommandName::Solve => "solve",
            CommandName::CenterScan => "center-scan",
            CommandName::OmegaScan => "omega-scan",
            CommandName::Weyl => "weyl",
            CommandName::Bound => "bound",
            CommandName::Halfplane => "halfplane",
        }
    }
}

fn default_tol() -> f64 {
    1e-9
}

fn default_seed() -> u64 {
    0x5eed
}

fn default_out() -> PathBuf {
    PathBuf::from("results")
}

/// Everything that determines a run's results, plus the output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<BoundingBox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ScanMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<HalfplaneCut>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(command: CommandName) -> Self {
        RunConfig {
            command,
            domain: None,
            omega: None,
            omegas: None,
            center: None,
            window: None,
            step: None,
            mode: None,
            h: None,
            k: None,
            radius: None,
            inner_radius: None,
            outer_radius: None,
            modes: None,
            lambda_max: None,
            ladder: None,
            cut: None,
            tol: default_tol(),
            seed: default_seed(),
            out: default_out(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Hex SHA-256 of the configuration with the output directory blanked.
    pub fn content_hash(&self) -> String {
        let mut c = self.clone();
        c.out = PathBuf::new();
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    /// File stem shared by every output of this run.
    pub fn stem(&self) -> String {
        format!("{}-{}", self.command.as_str(), &self.content_hash()[..16])
    }

    fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::InvalidArgument(format!("missing required field `{name}`")))
    }

    fn domain(&self) -> Result<&Domain> {
        self.domain
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("missing required field `domain`".into()))
    }

    fn positive(v: f64, name: &str) -> Result<f64> {
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(Error::InvalidArgument(format!("`{name}` must be positive, got {v}")))
        }
    }

    fn omega_value(&self) -> Result<f64> {
        let w = Self::need(self.omega, "omega")?;
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "`omega` must be finite and non-negative, got {w}"
            )));
        }
        Ok(w)
    }

    /// Checks that every field the command needs is present and in range.
    pub fn validate(&self) -> Result<()> {
        if !(1e-12..=1e-4).contains(&self.tol) {
            return Err(Error::InvalidArgument(format!("`tol` must lie in [1e-12, 1e-4], got {}", self.tol)));
        }
        if let Some(d) = &self.domain {
            d.validate()?;
        }
        if let Some(h) = self.h {
            Self::positive(h, "h")?;
        }
        use CommandName::*;
        match self.command {
            DiskSpectrum => {
                Self::positive(Self::need(self.radius, "radius")?, "radius")?;
                self.omega_value()?;
            }
            AnnulusSpectrum => {
                let r0 = Self::positive(Self::need(self.inner_radius, "inner_radius")?, "inner_radius")?;
                let r1 = Self::positive(Self::need(self.outer_radius, "outer_radius")?, "outer_radius")?;
                if r1 <= r0 {
                    return Err(Error::InvalidArgument("outer radius must exceed inner radius".into()));
                }
                self.omega_value()?;
            }
            Solve => {
                self.domain()?;
                self.omega_value()?;
                Self::need(self.h, "h")?;
                if Self::need(self.k, "k")? == 0 {
                    return Err(Error::InvalidArgument("`k` must be at least 1".into()));
                }
            }
            CenterScan => {
                self.domain()?;
                self.omega_value()?;
                Self::need(self.h, "h")?;
                Self::positive(Self::need(self.step, "step")?, "step")?;
            }
            OmegaScan => {
                self.domain()?;
                Self::need(self.h, "h")?;
                let list = self
                    .omegas
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("missing required field `omegas`".into()))?;
                if list.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
                    return Err(Error::InvalidArgument("`omegas` must be finite and non-negative".into()));
                }
            }
            Weyl => {
                self.domain()?;
                self.omega_value()?;
                Self::need(self.h, "h")?;
                Self::positive(Self::need(self.lambda_max, "lambda_max")?, "lambda_max")?;
            }
            Bound => {
                self.domain()?.star_boundary()?;
                self.omega_value()?;
                Self::need(self.h, "h")?;
            }
            Halfplane => {
                self.domain()?;
                self.omega_value()?;
                Self::need(self.h, "h")?;
                let cut = Self::need(self.cut, "cut")?;
                HalfplaneCut::new(cut.point(), cut.normal())?;
            }
        }
        Ok(())
    }
}

/// Result of one command before it is written out.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub summary: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Per-sample wall time, written to a separate sidecar.
    pub timing: Option<Vec<f64>>,
    /// `(name, value)` pairs echoed to stdout; each also sits in `summary`.
    pub report: Vec<(String, String)>,
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn strip(mut v: Value, keys: &[&str]) -> Value {
    if let Value::Object(map) = &mut v {
        for k in keys {
            map.remove(*k);
        }
    }
    v
}

/// Runs the configured command.
pub fn execute(cfg: &RunConfig, jobs: usize) -> Result<Outcome> {
    cfg.validate()?;
    let opts = ExperimentOptions {
        tol: cfg.tol,
        seed: cfg.seed,
        jobs,
    };
    use CommandName::*;
    match cfg.command {
        DiskSpectrum => {
            let r = cfg.radius.expect("validated");
            let omega = cfg.omega.expect("validated");
            let modes = disk_lowest_modes(r, omega, cfg.modes.unwrap_or(1))?;
            let rows = modes
                .iter()
                .enumerate()
                .map(|(i, m)| vec![(i + 1).to_string(), m.m.to_string(), m.k.to_string(), num(m.eigenvalue), num(m.zero)])
                .collect();
            let report = modes
                .iter()
                .enumerate()
                .map(|(i, m)| (format!("lambda_{}", i + 1), num(m.eigenvalue)))
                .collect();
            Ok(Outcome {
                summary: json!({ "radius": r, "omega": omega, "modes": modes }),
                header: vec!["index", "m", "k", "lambda", "zero"],
                rows,
                timing: None,
                report,
            })
        }
        AnnulusSpectrum => {
            let (r0, r1) = (cfg.inner_radius.expect("validated"), cfg.outer_radius.expect("validated"));
            let omega = cfg.omega.expect("validated");
            let modes = annulus_lowest_modes(r0, r1, omega, cfg.modes.unwrap_or(1))?;
            let rows = modes
                .iter()
                .enumerate()
                .map(|(i, (l, m, k))| vec![(i + 1).to_string(), m.to_string(), k.to_string(), num(*l)])
                .collect();
            let report = modes
                .iter()
                .enumerate()
                .map(|(i, (l, _, _))| (format!("lambda_{}", i + 1), num(*l)))
                .collect();
            let listed: Vec<Value> = modes
                .iter()
                .map(|(l, m, k)| json!({ "m": m, "k": k, "eigenvalue": l }))
                .collect();
            Ok(Outcome {
                summary: json!({ "inner_radius": r0, "outer_radius": r1, "omega": omega, "modes": listed }),
                header: vec!["index", "m", "k", "lambda"],
                rows,
                timing: None,
                report,
            })
        }
        Solve => {
            let domain = cfg.domain.as_ref().expect("validated");
            let (omega, h, k) = (cfg.omega.unwrap(), cfg.h.unwrap(), cfg.k.unwrap());
            let center = cfg.center.unwrap_or_else(|| domain.center());
            let grid = build_grid(domain, h)?;
            let op = assemble_operator(&grid, omega, center)?;
            let solver = SolverOptions {
                seed: cfg.seed,
                ..SolverOptions::default()
            };
            let s = lowest_eigenpairs_with(&op, k, cfg.tol, &solver)?;
            let rows = s
                .eigenvalues
                .iter()
                .zip(&s.residuals)
                .enumerate()
                .map(|(i, (l, r))| vec![(i + 1).to_string(), num(*l), num(*r)])
                .collect();
            let report = s
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(i, l)| (format!("lambda_{}", i + 1), num(*l)))
                .collect();
            Ok(Outcome {
                summary: json!({
                    "omega": omega, "h": h, "center": center, "n": op.n(),
                    "eigenvalues": s.eigenvalues, "residuals": s.residuals,
                    "next_eigenvalue": s.next_eigenvalue, "degenerate": s.degenerate,
                    "max_imaginary": s.max_imaginary, "method": s.method,
                    "iterations": s.iterations, "tolerance": s.tolerance, "shift": s.shift,
                }),
                header: vec!["index", "lambda", "residual"],
                rows,
                timing: None,
                report,
            })
        }
        CenterScan => {
            let domain = cfg.domain.as_ref().expect("validated");
            let mode = cfg.mode.unwrap_or(ScanMode::Free);
            let window = cfg.window.unwrap_or_else(|| match mode {
                ScanMode::Free => domain.bounding_box().expanded(domain.diameter()),
                ScanMode::Inner => domain.bounding_box(),
            });
            let scan = center_scan(domain, cfg.omega.unwrap(), window, cfg.step.unwrap(), cfg.h.unwrap(), mode, &opts)?;
            let rows = scan
                .samples
                .iter()
                .map(|s| {
                    let (ix, iy) = s.lattice.map_or((String::new(), String::new()), |(i, j)| (i.to_string(), j.to_string()));
                    vec![
                        s.index.to_string(),
                        ix,
                        iy,
                        num(s.center.x),
                        num(s.center.y),
                        num(s.lambda),
                        num(s.residual),
                        s.degenerate.to_string(),
                        serde_json::to_value(s.class).unwrap().as_str().unwrap().to_string(),
                        s.error.clone().unwrap_or_else(|| "ok".into()),
                    ]
                })
                .collect();
            let top = scan.argmax_sample();
            let margin = window_margin(domain, &window);
            let verdicts = json!({
                "single_interior_max": scan.interior_maxima == 1,
                "no_interior_min": scan.interior_minima == 0,
                "rays_decreasing": scan.rays_decreasing,
                "centroid_at_argmax": scan.centroid_ok,
                "below_dirichlet": scan.max_excess <= scan.tie,
            });
            let mut summary = strip(serde_json::to_value(&scan)?, &["samples"]);
            summary["window_margin"] = json!(margin);
            summary["argmax_center"] = json!(top.center);
            summary["argmax_lambda"] = json!(top.lambda);
            summary["verdicts"] = verdicts;
            let report = vec![
                ("argmax_x".into(), num(top.center.x)),
                ("argmax_y".into(), num(top.center.y)),
                ("argmax_lambda".into(), num(top.lambda)),
                ("interior_maxima".into(), scan.interior_maxima.to_string()),
                ("interior_minima".into(), scan.interior_minima.to_string()),
            ];
            Ok(Outcome {
                summary,
                header: vec!["index", "ix", "iy", "x0", "y0", "lambda", "residual", "degenerate", "class", "status"],
                rows,
                timing: Some(scan.seconds.clone()),
                report,
            })
        }
        OmegaScan => {
            let domain = cfg.domain.as_ref().expect("validated");
            let center = cfg.center.unwrap_or_else(|| domain.center());
            let scan = omega_scan(domain, center, cfg.omegas.as_ref().unwrap(), cfg.h.unwrap(), &opts)?;
            let rows = scan
                .samples
                .iter()
                .map(|s| {
                    vec![
                        s.index.to_string(),
                        num(s.omega),
                        num(s.lambda),
                        num(s.residual),
                        s.degenerate.to_string(),
                        s.error.clone().unwrap_or_else(|| "ok".into()),
                    ]
                })
                .collect();
            let report = vec![
                ("a_est".into(), num(scan.a_est)),
                ("b_est".into(), num(scan.b_est)),
                ("max_at_zero".into(), scan.max_at_zero.to_string()),
            ];
            Ok(Outcome {
                summary: strip(serde_json::to_value(&scan)?, &["samples"]),
                header: vec!["index", "omega", "lambda", "residual", "degenerate", "status"],
                rows,
                timing: Some(scan.seconds.clone()),
                report,
            })
        }
        Weyl => {
            let domain = cfg.domain.as_ref().expect("validated");
            let r = weyl_check(
                domain,
                cfg.omega.unwrap(),
                cfg.lambda_max.unwrap(),
                cfg.h.unwrap(),
                cfg.ladder.unwrap_or(10),
            )?;
            let rows = r
                .thresholds
                .iter()
                .zip(&r.counts)
                .zip(&r.ratios)
                .enumerate()
                .map(|(i, ((t, c), q))| vec![i.to_string(), num(*t), c.to_string(), num(*q)])
                .collect();
            let report = vec![
                ("fitted_limit".into(), num(r.fitted_limit)),
                ("ratio_at_max".into(), num(*r.ratios.last().unwrap())),
            ];
            let mut summary = serde_json::to_value(&r)?;
            summary["ratio_at_max"] = json!(r.ratios.last());
            Ok(Outcome {
                summary,
                header: vec!["index", "threshold", "count", "ratio"],
                rows,
                timing: None,
                report,
            })
        }
        Bound => {
            let domain = cfg.domain.as_ref().expect("validated");
            let boundary = domain.star_boundary()?;
            let r = bound_check(&boundary, cfg.omega.unwrap(), cfg.h.unwrap(), &opts)?;
            let rows = vec![vec![
                num(r.h),
                num(r.lambda_h),
                num(r.lambda_half),
                num(r.allowance),
                num(r.report.rhs),
                num(r.margin),
                r.passed.to_string(),
            ]];
            let report = vec![
                ("lambda".into(), num(r.lambda_half)),
                ("rhs".into(), num(r.report.rhs)),
                ("margin".into(), num(r.margin)),
                ("passed".into(), r.passed.to_string()),
            ];
            Ok(Outcome {
                summary: serde_json::to_value(&r)?,
                header: vec!["h", "lambda_h", "lambda_half", "allowance", "rhs", "margin", "passed"],
                rows,
                timing: None,
                report,
            })
        }
        Halfplane => {
            let domain = cfg.domain.as_ref().expect("validated");
            let r = halfplane_check(domain, &cfg.cut.unwrap(), cfg.omega.unwrap(), cfg.h.unwrap(), &opts)?;
            let rows = vec![vec![
                num(r.omega_small),
                num(r.spectral_gap),
                num(r.argmax.x),
                num(r.argmax.y),
                num(r.argmax_lambda),
                r.argmax_in_first_part.to_string(),
                r.passed.to_string(),
            ]];
            let report = vec![
                ("argmax_x".into(), num(r.argmax.x)),
                ("argmax_y".into(), num(r.argmax.y)),
                ("passed".into(), r.passed.to_string()),
            ];
            Ok(Outcome {
                summary: serde_json::to_value(&r)?,
                header: vec!["omega", "gap", "argmax_x", "argmax_y", "lambda", "in_first_part", "passed"],
                rows,
                timing: None,
                report,
            })
        }
    }
}

/// Smallest distance from the domain's bounding box to the window edge.
fn window_margin(domain: &Domain, window: &BoundingBox) -> f64 {
    let b = domain.bounding_box();
    (b.xmin - window.xmin)
        .min(window.xmax - b.xmax)
        .min(b.ymin - window.ymin)
        .min(window.ymax - b.ymax)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: CommandName,
    pub config_hash: String,
    pub config: RunConfig,
    pub files: Vec<String>,
}

/// Writes the outcome of `cfg` under `dir` with names derived from the
/// configuration hash. Identical configurations overwrite identical bytes,
/// except for the wall-time sidecar.
pub fn persist(outcome: &Outcome, cfg: &RunConfig, dir: &Path, plot_data: bool) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let stem = cfg.stem();
    let mut files = Vec::new();

    let csv_name = format!("{stem}.csv");
    let mut w = csv::Writer::from_path(dir.join(&csv_name))?;
    w.write_record(&outcome.header)?;
    for row in &outcome.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    files.push(csv_name);

    let json_name = format!("{stem}.json");
    let mut summary = outcome.summary.clone();
    summary["command"] = json!(cfg.command);
    summary["config_hash"] = json!(cfg.content_hash());
    fs::write(dir.join(&json_name), serde_json::to_string_pretty(&summary)? + "\n")?;
    files.push(json_name);

    if plot_data {
        let dat_name = format!("{stem}.dat");
        let mut text = format!("# {} {}\n# {}\n", cfg.command.as_str(), cfg.content_hash(), outcome.header.join(" "));
        for row in &outcome.rows {
            let cols: Vec<String> = row.iter().map(|c| plot_column(c)).collect();
            text.push_str(&cols.join(" "));
            text.push('\n');
        }
        fs::write(dir.join(&dat_name), text)?;
        files.push(dat_name);
    }

    if let Some(t) = &outcome.timing {
        let timing_name = format!("{stem}.timing.csv");
        let mut w = csv::Writer::from_path(dir.join(&timing_name))?;
        w.write_record(["index", "seconds"])?;
        for (i, s) in t.iter().enumerate() {
            w.write_record([i.to_string(), num(*s)])?;
        }
        w.flush()?;
        files.push(timing_name);
    }

    let manifest_name = format!("{stem}.manifest.json");
    files.push(manifest_name.clone());
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.command,
        config_hash: cfg.content_hash(),
        config: cfg.clone(),
        files,
    };
    fs::write(dir.join(&manifest_name), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(manifest)
}

/// Plot columns are numeric: booleans become 0/1, blanks and labels `nan`.
fn plot_column(c: &str) -> String {
    match c {
        "true" => "1".into(),
        "false" => "0".into(),
        _ if c.parse::<f64>().is_ok() => c.into(),
        _ => "nan".into(),
    }
}

fn parse_pair(s: &str) -> std::result::Result<Point, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [x, y] => Ok(Point::new(*x, *y)),
        _ => Err(format!("expected `x,y`, got `{s}`")),
    }
}

fn parse_window(s: &str) -> std::result::Result<BoundingBox, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok(BoundingBox::new(*a, *b, *c, *d)),
        _ => Err(format!("expected `xmin,xmax,ymin,ymax`, got `{s}`")),
    }
}

fn parse_mode(s: &str) -> std::result::Result<ScanMode, String> {
    match s {
        "free" => Ok(ScanMode::Free),
        "inner" => Ok(ScanMode::Inner),
        _ => Err(format!("mode must be `free` or `inner`, got `{s}`")),
    }
}

/// Reads a domain from a JSON file, or from inline JSON.
fn load_domain(arg: &str) -> Result<Domain> {
    if arg.trim_start().starts_with('{') {
        return Domain::from_json(arg);
    }
    Domain::from_json(&fs::read_to_string(arg)?)
}

#[derive(Parser, Debug)]
#[command(name = "rotspec", version, about = "Spectra of rotating planar domains")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output directory.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    /// Worker threads for scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Residual tolerance for eigenpairs.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Also write whitespace-separated columns for plotting.
    #[arg(long, global = true)]
    plot_data: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Lowest eigenvalues of the rotating disk.
    #[command(allow_negative_numbers = true)]
    DiskSpectrum {
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 1)]
        modes: usize,
    },
    /// Lowest eigenvalues of the rotating annulus.
    #[command(allow_negative_numbers = true)]
    AnnulusSpectrum {
        #[arg(long = "R0")]
        inner: f64,
        #[arg(long = "R1")]
        outer: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 1)]
        modes: usize,
    },
    /// Lowest eigenpairs of the discretized operator.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Rotation center `x,y` (default: domain center).
        #[arg(long, value_parser = parse_pair)]
        center: Option<Point>,
    },
    /// Ground-state eigenvalue over a lattice of rotation centers.
    #[command(allow_negative_numbers = true)]
    CenterScan {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        step: f64,
        /// `xmin,xmax,ymin,ymax`.
        #[arg(long, value_parser = parse_window)]
        window: Option<BoundingBox>,
        #[arg(long, value_parser = parse_mode, default_value = "free")]
        mode: ScanMode,
    },
    /// Ground-state eigenvalue over a list of angular velocities.
    #[command(allow_negative_numbers = true)]
    OmegaScan {
        #[arg(long)]
        domain: String,
        /// Comma-separated, ascending, starting at 0.
        #[arg(long, value_delimiter = ',', required = true)]
        omegas: Vec<f64>,
        #[arg(long)]
        h: f64,
        #[arg(long, value_parser = parse_pair)]
        center: Option<Point>,
    },
    /// Eigenvalue counts against the Weyl term.
    #[command(allow_negative_numbers = true)]
    Weyl {
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 0.0)]
        omega: f64,
        #[arg(long)]
        lambda_max: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 10)]
        ladder: usize,
    },
    /// Measured ground state against the comparison bound.
    #[command(allow_negative_numbers = true)]
    Bound {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        h: f64,
    },
    /// Slow-rotation argmax against a half-plane cut.
    #[command(allow_negative_numbers = true)]
    Halfplane {
        #[arg(long)]
        domain: String,
        #[arg(long = "cut-point", value_parser = parse_pair)]
        point: Point,
        #[arg(long = "cut-normal", value_parser = parse_pair)]
        normal: Point,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        h: f64,
    },
    /// Runs a JSON configuration file.
    Run { config: PathBuf },
}

fn to_config(cli: Cli) -> Result<(RunConfig, bool)> {
    let mut out_given = true;
    let mut cfg = match cli.command {
        Cmd::DiskSpectrum { radius, omega, modes } => RunConfig {
            radius: Some(radius),
            omega: Some(omega),
            modes: Some(modes),
            ..RunConfig::new(CommandName::DiskSpectrum)
        },
        Cmd::AnnulusSpectrum { inner, outer, omega, modes } => RunConfig {
            inner_radius: Some(inner),
            outer_radius: Some(outer),
            omega: Some(omega),
            modes: Some(modes),
            ..RunConfig::new(CommandName::AnnulusSpectrum)
        },
        Cmd::Solve { domain, omega, h, k, center } => RunConfig {
            domain: Some(load_domain(&domain)?),
            omega: Some(omega),
            h: Some(h),
            k: Some(k),
            center,
            ..RunConfig::new(CommandName::Solve)
        },
        Cmd::CenterScan { domain, omega, h, step, window, mode } => RunConfig {
            domain: Some(load_domain(&domain)?),
            omega: Some(omega),
            h: Some(h),
            step: Some(step),
            window,
            mode: Some(mode),
            ..RunConfig::new(CommandName::CenterScan)
        },
        Cmd::OmegaScan { domain, omegas, h, center } => RunConfig {
            domain: Some(load_domain(&domain)?),
            omegas: Some(omegas),
            h: Some(h),
            center,
            ..RunConfig::new(CommandName::OmegaScan)
        },
        Cmd::Weyl { domain, omega, lambda_max, h, ladder } => RunConfig {
            domain: Some(load_domain(&domain)?),
            omega: Some(omega),
            lambda_max: Some(lambda_max),
            h: Some(h),
            ladder: Some(ladder),
            ..RunConfig::new(CommandName::Weyl)
        },
        Cmd::Bound { domain, omega, h } => RunConfig {
            domain: Some(load_domain(&domain)?),
            omega: Some(omega),
            h: Some(h),
            ..RunConfig::new(CommandName::Bound)
        },
        Cmd::Halfplane { domain, point, normal, omega, h } => RunConfig {
            domain: Some(load_domain(&domain)?),
            cut: Some(HalfplaneCut::new(point, normal)?),
            omega: Some(omega),
            h: Some(h),
            ..RunConfig::new(CommandName::Halfplane)
        },
        Cmd::Run { config } => {
            // tolerance, seed and output directory come from the file
            out_given = false;
            RunConfig::from_json(&fs::read_to_string(config)?)?
        }
    };
    if out_given {
        cfg.tol = cli.tol;
        cfg.seed = cli.seed;
        cfg.out = cli.out;
    }
    cfg.validate()?;
    Ok((cfg, cli.plot_data))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_solver_failure() {
        3
    } else {
        2
    }
}

fn report_error(stderr: &mut dyn Write, kind: &str, message: &str, code: i32) -> i32 {
    let body = json!({ "error": kind, "message": message, "exit_code": code });
    let _ = writeln!(stderr, "{body}");
    code
}

/// Parses `argv` (program name first), runs the command, writes results, and
/// returns the process exit code: 0 on success, 2 on invalid input, 3 when
/// the eigensolver fails.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            return report_error(stderr, "UsageError", e.to_string().trim(), 2);
        }
    };
    let jobs = cli.jobs;
    let result = to_config(cli).and_then(|(cfg, plot)| {
        let outcome = execute(&cfg, jobs)?;
        let manifest = persist(&outcome, &cfg, &cfg.out, plot)?;
        Ok((outcome, manifest))
    });
    match result {
        Ok((outcome, manifest)) => {
            for (k, v) in &outcome.report {
                let _ = writeln!(stdout, "{k} = {v}");
            }
            let _ = writeln!(stdout, "manifest = {}", manifest.files.last().expect("manifest listed"));
            0
        }
        Err(e) => report_error(stderr, e.kind(), &e.to_string(), exit_code(&e)),
    }
}
