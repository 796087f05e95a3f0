//! Command-line front end. Every command writes CSV with a header row and a
//! trailing `#` metadata block.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;

use crate::amplitude;
use crate::error::Error;
use crate::fields;
use crate::geometry::{PolarPoint, WedgeScene, DEFAULT_BAND};
use crate::kernels;
use crate::profiles::{Profile, ProfileKind};
use crate::quadrature::QuadratureSpec;
use crate::validation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nnwedge",
    version,
    about = "Plane-wave scattering by a Neumann wedge"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileArg {
    Ramp,
    Heaviside,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Wedge magnitude phi
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub phi: Option<f64>,
    /// Incidence direction alpha
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub omega0: Option<f64>,
    #[arg(long, value_enum, global = true)]
    pub profile: Option<ProfileArg>,
    /// Ramp width
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub abs_tol: Option<f64>,
    /// Half-width of the excluded band around critical rays
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub band: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Exit with code 3 if any point fails numerically
    #[arg(long, global = true)]
    pub strict: bool,
    /// Angles given in degrees
    #[arg(long, global = true)]
    pub degrees: bool,
    /// JSON file with any of the flags above; flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// `value` or `start:stop:count`
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total field and its components on a grid
    Field(GridArgs),
    /// Convergence of u e^{i omega0 t} to the limiting amplitude
    Amplitude(GridArgs),
    /// Large-t rates of the residual against their predictions
    Rate(RateArgs),
    /// Half-plane diffracted wave against the Hewett form
    Halfplane(GridArgs),
    /// Full validation suite
    Validate,
    /// Kernel values on a beta grid
    Kernel(KernelArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RateArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Lower end of the t window, in units of rho
    #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
    pub t_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1000.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 16)]
    pub per_decade: usize,
    /// Predict from the first term even when it vanishes
    #[arg(long)]
    pub first_term: bool,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// Real parts of beta, `value` or `start:stop:count`
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:101")]
    pub beta: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    phi: Option<f64>,
    alpha: Option<f64>,
    omega0: Option<f64>,
    profile: Option<ProfileArg>,
    s0: Option<f64>,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    band: Option<f64>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    strict: Option<bool>,
    degrees: Option<bool>,
    rho: Option<String>,
    theta: Option<String>,
    t: Option<String>,
}

/// Validated settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scene: WedgeScene,
    pub profile: Profile,
    pub spec: QuadratureSpec,
    pub out: Option<PathBuf>,
    pub threads: usize,
    pub strict: bool,
    pub degrees: bool,
    pub rho: Option<String>,
    pub theta: Option<String>,
    pub t: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl RunConfig {
    pub fn resolve(common: &CommonArgs) -> Result<Self, CliError> {
        let file = match &common.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let degrees = common.degrees || file.degrees.unwrap_or(false);
        let ang = |x: f64| if degrees { x.to_radians() } else { x };
        let phi = ang(common.phi.or(file.phi).unwrap_or(if degrees {
            90.0
        } else {
            std::f64::consts::FRAC_PI_2
        }));
        let alpha = ang(common.alpha.or(file.alpha).unwrap_or(if degrees {
            45.0
        } else {
            std::f64::consts::FRAC_PI_4
        }));
        let omega0 = common.omega0.or(file.omega0).unwrap_or(1.0);
        let scene =
            WedgeScene::derive(phi, alpha, omega0).map_err(|e| CliError::Config(e.to_string()))?;
        let kind = common.profile.or(file.profile).unwrap_or(ProfileArg::Ramp);
        let profile = match kind {
            ProfileArg::Ramp => Profile::smooth_ramp(common.s0.or(file.s0).unwrap_or(0.5))
                .map_err(|e| CliError::Config(format!("s0: {e}")))?,
            ProfileArg::Heaviside => Profile::heaviside(),
        };
        let defaults = QuadratureSpec::default();
        let spec = QuadratureSpec {
            rel_tol: common.rel_tol.or(file.rel_tol).unwrap_or(defaults.rel_tol),
            abs_tol: common.abs_tol.or(file.abs_tol).unwrap_or(defaults.abs_tol),
            band: common.band.or(file.band).unwrap_or(DEFAULT_BAND),
            ..defaults
        };
        spec.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let threads = common
            .threads
            .or(file.threads)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if threads == 0 {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        Ok(RunConfig {
            scene,
            profile,
            spec,
            out: common.out.clone().or(file.out),
            threads,
            strict: common.strict || file.strict.unwrap_or(false),
            degrees,
            rho: file.rho,
            theta: file.theta,
            t: file.t,
        })
    }

    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    /// Grid from the flag, else the config file, else `default`.
    fn axis(
        &self,
        flag: &Option<String>,
        file: &Option<String>,
        default: &str,
        name: &str,
        angle: bool,
    ) -> Result<Vec<f64>, CliError> {
        let text = flag.as_deref().or(file.as_deref()).unwrap_or(default);
        let vals = parse_range(text).map_err(|e| CliError::Config(format!("--{name}: {e}")))?;
        Ok(if angle {
            vals.into_iter().map(|x| self.angle(x)).collect()
        } else {
            vals
        })
    }

    fn grid(
        &self,
        g: &GridArgs,
        default_theta: f64,
    ) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), CliError> {
        let th_default = format!(
            "{}",
            if self.degrees {
                default_theta.to_degrees()
            } else {
                default_theta
            }
        );
        Ok((
            self.axis(&g.rho, &self.rho, "1", "rho", false)?,
            self.axis(&g.theta, &self.theta, &th_default, "theta", true)?,
            self.axis(&g.t, &self.t, "5", "t", false)?,
        ))
    }

    fn metadata(&self) -> String {
        let s = &self.scene;
        let mut m = String::new();
        let _ = writeln!(
            m,
            "# scene=phi={:.16e},alpha={:.16e},omega0={:.16e},profile={},s0={:.16e}",
            s.phi(),
            s.alpha(),
            s.omega0(),
            match self.profile.kind {
                ProfileKind::SmoothRamp => "ramp",
                ProfileKind::Heaviside => "heaviside",
            },
            self.profile.s0
        );
        let _ = writeln!(
            m,
            "# tolerances=rel_tol={:e},abs_tol={:e},band={:e}",
            self.spec.rel_tol, self.spec.abs_tol, self.spec.band
        );
        let _ = writeln!(m, "# version={}", env!("CARGO_PKG_VERSION"));
        m
    }
}

/// `value` or `start:stop:count` (inclusive, evenly spaced).
pub fn parse_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("'{s}': {e}"));
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.parse().map_err(|e| format!("'{n}': {e}"))?;
            match n {
                0 => Err("count must be positive".into()),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
                    .collect()),
            }
        }
        _ => Err(format!("'{text}' is neither a number nor start:stop:count")),
    }
}

/// Status column values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CriticalBand,
    QuadFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CriticalBand => "critical_band",
            Status::QuadFail => "quad_fail",
        }
    }

    fn of(err: &Error) -> Self {
        if err.is_critical() {
            Status::CriticalBand
        } else {
            Status::QuadFail
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cnum(z: Complex64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

const NAN: Complex64 = Complex64::new(f64::NAN, f64::NAN);

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    trailer: Vec<String>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    fn write(&self, out: &mut dyn Write, meta: &str) -> Result<(), CliError> {
        {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&self.header)?;
            for r in &self.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        for line in &self.trailer {
            writeln!(out, "# {line}")?;
        }
        out.write_all(meta.as_bytes())?;
        Ok(())
    }
}

/// Result of one command before it is written out.
pub struct Outcome {
    table: Table,
    /// Checks that did not pass.
    pub failures: usize,
    /// Points whose quadrature failed.
    pub numerical: usize,
}

impl Outcome {
    pub fn header(&self) -> &[&'static str] {
        &self.table.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.table.rows
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn points3(a: &[f64], b: &[f64], c: &[f64]) -> Vec<(f64, f64, f64)> {
    let mut v = Vec::with_capacity(a.len() * b.len() * c.len());
    for &x in a {
        for &y in b {
            for &z in c {
                v.push((x, y, z));
            }
        }
    }
    v
}

fn default_theta(scene: &WedgeScene) -> f64 {
    if scene.is_admissible() {
        0.5 * (scene.theta1() + scene.theta2())
    } else {
        scene.phi() + 0.37 * (2.0 * std::f64::consts::PI - scene.phi())
    }
}

pub fn cmd_field(cfg: &RunConfig, g: &GridArgs) -> Result<Outcome, CliError> {
    let (rhos, thetas, ts) = cfg.grid(g, default_theta(&cfg.scene))?;
    let pts = points3(&rhos, &thetas, &ts);
    for &(r, th, _) in &pts {
        PolarPoint::new(&cfg.scene, r, th).map_err(|e| CliError::Config(e.to_string()))?;
    }
    let rows: Vec<(Vec<String>, Status)> = pool(cfg.threads)?.install(|| {
        pts.par_iter()
            .map(|&(rho, theta, t)| {
                let p = PolarPoint { rho, theta };
                let ui = fields::u_in(&cfg.scene, &cfg.profile, &p, t);
                let ur = fields::u_r(&cfg.scene, &cfg.profile, &p, t);
                let (ud, err, st) = match fields::u_d(&cfg.scene, &cfg.profile, &p, t, &cfg.spec) {
                    Ok(e) => (e.value, e.error, Status::Ok),
                    Err(e) => (NAN, f64::NAN, Status::of(&e)),
                };
                let mut row = vec![num(rho), num(theta), num(t)];
                for z in [ui, ur, ud, ui + ur + ud] {
                    row.extend(cnum(z));
                }
                row.push(num(err));
                row.push(st.as_str().into());
                (row, st)
            })
            .collect()
    });
    let mut table = Table::new(vec![
        "rho",
        "theta",
        "t",
        "u_in_re",
        "u_in_im",
        "u_r_re",
        "u_r_im",
        "u_d_re",
        "u_d_im",
        "u_re",
        "u_im",
        "error_estimate",
        "status",
    ]);
    let numerical = rows.iter().filter(|r| r.1 == Status::QuadFail).count();
    table.rows = rows.into_iter().map(|r| r.0).collect();
    Ok(Outcome {
        table,
        failures: 0,
        numerical,
    })
}

pub fn cmd_amplitude(cfg: &RunConfig, g: &GridArgs) -> Result<Outcome, CliError> {
    let (rhos, thetas, _) = cfg.grid(g, default_theta(&cfg.scene))?;
    let ts = cfg.axis(&g.t, &cfg.t, "5:320:7", "t", false)?;
    let pts = points3(&rhos, &thetas, &ts);
    let rows: Vec<(Vec<String>, Status)> = pool(cfg.threads)?.install(|| {
        pts.par_iter()
            .map(|&(rho, theta, t)| {
                let p = PolarPoint { rho, theta };
                let res = (|| -> crate::Result<_> {
                    let u = fields::u_total(&cfg.scene, &cfg.profile, &p, t, &cfg.spec)?.value
                        * Complex64::from_polar(1.0, cfg.scene.omega0() * t);
                    let sum = amplitude::a_components(&cfg.scene, &p, &cfg.spec)?.a_inf;
                    let contour = if cfg.scene.is_admissible() && rho > 0.0 {
                        amplitude::a_inf_contour(&cfg.scene, &p, &cfg.spec)?.value
                    } else {
                        NAN
                    };
                    Ok((u, sum, contour))
                })();
                let ((a, s, c), st) = match res {
                    Ok(v) => (v, Status::Ok),
                    Err(e) => ((NAN, NAN, NAN), Status::of(&e)),
                };
                let mut row = vec![num(rho), num(theta), num(t)];
                for z in [a, s, c] {
                    row.extend(cnum(z));
                }
                row.push(num((a - s).norm()));
                row.push(st.as_str().into());
                (row, st)
            })
            .collect()
    });
    let mut table = Table::new(vec![
        "rho",
        "theta",
        "t",
        "a_re",
        "a_im",
        "a_inf_sum_re",
        "a_inf_sum_im",
        "a_inf_contour_re",
        "a_inf_contour_im",
        "abs_diff",
        "status",
    ]);
    let numerical = rows.iter().filter(|r| r.1 == Status::QuadFail).count();
    table.rows = rows.into_iter().map(|r| r.0).collect();
    Ok(Outcome {
        table,
        failures: 0,
        numerical,
    })
}

pub fn cmd_rate(cfg: &RunConfig, a: &RateArgs) -> Result<Outcome, CliError> {
    let theta = a
        .theta
        .map(|x| cfg.angle(x))
        .unwrap_or_else(|| default_theta(&cfg.scene));
    let p =
        PolarPoint::new(&cfg.scene, a.rho, theta).map_err(|e| CliError::Config(e.to_string()))?;
    if !(a.t_min > 1.0 && a.t_max > a.t_min && a.per_decade > 0) {
        return Err(CliError::Config(
            "need 1 < t-min < t-max and per-decade > 0".into(),
        ));
    }
    let pred = if a.first_term {
        amplitude::rate_prediction(&cfg.scene, &p)
    } else {
        amplitude::rate_prediction_leading(&cfg.scene, &p)
    };
    let grid = amplitude::geometric_grid(a.t_min * a.rho, a.t_max * a.rho, a.per_decade);
    let fit = amplitude::rate_fit(&cfg.scene, &p, &grid, &cfg.spec)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let re_pts: Vec<(f64, f64)> = fit
        .samples
        .iter()
        .map(|s| (s.0, s.1.re))
        .filter(|s| s.1 != 0.0)
        .collect();
    let im_pts: Vec<(f64, f64)> = fit
        .samples
        .iter()
        .map(|s| (s.0, s.1.im))
        .filter(|s| s.1 != 0.0)
        .collect();
    let re_amp = amplitude::fixed_slope_amplitude(&re_pts, pred.re_exponent).unwrap_or(f64::NAN);
    let im_amp = amplitude::fixed_slope_amplitude(&im_pts, pred.im_exponent).unwrap_or(f64::NAN);
    let mut table = Table::new(vec!["quantity", "predicted", "fitted"]);
    table.rows = vec![
        vec![
            "im_exponent".into(),
            num(pred.im_exponent),
            num(fit.im_slope),
        ],
        vec![
            "re_exponent".into(),
            num(pred.re_exponent),
            num(fit.re_slope),
        ],
        vec![
            "im_coeff".into(),
            num(pred.im_coeff),
            num(fit.im_sign * im_amp),
        ],
        vec![
            "re_coeff".into(),
            num(pred.re_coeff),
            num(fit.re_sign * re_amp),
        ],
    ];
    table.trailer = vec![
        format!("point=rho={:.16e},theta={:.16e}", p.rho, p.theta),
        format!("expansion_order={}", pred.order),
        format!(
            "samples={},re_points={},im_points={}",
            fit.samples.len(),
            fit.re_points,
            fit.im_points
        ),
    ];
    let failures = [
        (fit.im_slope - pred.im_exponent).abs() > validation::IM_SLOPE_TOL,
        (fit.re_slope - pred.re_exponent).abs() > validation::RE_SLOPE_TOL,
    ]
    .iter()
    .filter(|x| **x)
    .count();
    Ok(Outcome {
        table,
        failures,
        numerical: 0,
    })
}

pub fn cmd_halfplane(cfg: &RunConfig, g: &GridArgs) -> Result<Outcome, CliError> {
    let alpha = cfg.scene.alpha();
    let omega0 = cfg.scene.omega0();
    let (rhos, thetas, ts) = cfg.grid(g, 2.0)?;
    let pts = points3(&rhos, &thetas, &ts);
    let rows: Vec<(Vec<String>, Status, f64, f64)> = pool(cfg.threads)?.install(|| {
        pts.par_iter()
            .map(|&(rho, theta, t)| {
                let r = amplitude::halfplane_compare(
                    alpha,
                    &PolarPoint { rho, theta },
                    t,
                    omega0,
                    &cfg.spec,
                );
                let mut row = vec![
                    num(rho),
                    num(theta),
                    num(t),
                    num(alpha - std::f64::consts::PI),
                ];
                match r {
                    Ok(r) => {
                        for z in [r.u_d, r.phi_d_s, r.phi_d_beta] {
                            row.extend(cnum(z));
                        }
                        row.extend([
                            num(r.factor),
                            num(r.max_deviation()),
                            Status::Ok.as_str().into(),
                        ]);
                        (row, Status::Ok, r.max_deviation(), r.factor)
                    }
                    Err(e) => {
                        let st = Status::of(&e);
                        for _ in 0..3 {
                            row.extend(cnum(NAN));
                        }
                        row.extend([num(f64::NAN), num(f64::NAN), st.as_str().into()]);
                        (row, st, f64::NAN, f64::NAN)
                    }
                }
            })
            .collect()
    });
    let max_dev = rows
        .iter()
        .filter(|r| r.1 == Status::Ok)
        .map(|r| r.2)
        .fold(0.0f64, f64::max);
    let factor = if alpha == std::f64::consts::PI {
        2.0
    } else {
        1.0
    };
    let confirmed = rows.iter().any(|r| r.1 == Status::Ok) && max_dev <= validation::HALFPLANE_TOL;
    let mut table = Table::new(vec![
        "rho",
        "theta",
        "t",
        "theta0",
        "u_d_re",
        "u_d_im",
        "phi_d_s_re",
        "phi_d_s_im",
        "phi_d_beta_re",
        "phi_d_beta_im",
        "factor",
        "deviation",
        "status",
    ]);
    let numerical = rows.iter().filter(|r| r.1 == Status::QuadFail).count();
    table.rows = rows.into_iter().map(|r| r.0).collect();
    let relation = if factor == 2.0 {
        "u_d = 2*Phi_d"
    } else {
        "u_d = Phi_d"
    };
    table.trailer = vec![
        format!("max_deviation={}", num(max_dev)),
        format!(
            "relation={relation} {}",
            if confirmed {
                "confirmed"
            } else {
                "not confirmed"
            }
        ),
    ];
    Ok(Outcome {
        table,
        failures: usize::from(!confirmed),
        numerical,
    })
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let reports =
        pool(cfg.threads)?.install(|| validation::run_suite(&cfg.scene, &cfg.profile, &cfg.spec));
    let mut table = Table::new(vec![
        "name",
        "passed",
        "observed",
        "expected",
        "tolerance",
        "details",
    ]);
    let failures = reports.iter().filter(|r| !r.passed).count();
    table.rows = reports
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.passed.to_string(),
                r.observed.to_string(),
                r.expected.to_string(),
                num(r.tolerance),
                r.details.clone(),
            ]
        })
        .collect();
    table.trailer = vec![format!("checks={},failed={failures}", reports.len())];
    Ok(Outcome {
        table,
        failures,
        numerical: 0,
    })
}

pub fn cmd_kernel(cfg: &RunConfig, a: &KernelArgs) -> Result<Outcome, CliError> {
    let betas = parse_range(&a.beta).map_err(|e| CliError::Config(format!("--beta: {e}")))?;
    let theta = a
        .theta
        .map(|x| cfg.angle(x))
        .unwrap_or_else(|| default_theta(&cfg.scene));
    cfg.scene
        .check_angle(theta)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let s = &cfg.scene;
    let mut table = Table::new(vec![
        "beta_re", "beta_im", "h_nn_re", "h_nn_im", "h_dd_re", "h_dd_im", "h_dn_re", "h_dn_im",
        "z_nn_re", "z_nn_im", "status",
    ]);
    for x in betas {
        let b = Complex64::new(x, a.beta_im);
        let vals = [
            kernels::h_nn(s, b),
            kernels::h_dd(s, b),
            kernels::h_dn(s, b),
            kernels::z_nn(s, b, theta),
        ];
        let mut row = vec![num(b.re), num(b.im)];
        let mut st = Status::Ok;
        for v in vals {
            match v {
                Ok(z) => row.extend(cnum(z)),
                Err(_) => {
                    st = Status::CriticalBand;
                    row.extend(cnum(NAN));
                }
            }
        }
        row.push(st.as_str().into());
        table.rows.push(row);
    }
    table.trailer = vec![format!("theta={}", num(theta))];
    Ok(Outcome {
        table,
        failures: 0,
        numerical: 0,
    })
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let outcome = match &cli.command {
        Command::Field(g) => cmd_field(&cfg, g)?,
        Command::Amplitude(g) => cmd_amplitude(&cfg, g)?,
        Command::Rate(a) => cmd_rate(&cfg, a)?,
        Command::Halfplane(g) => cmd_halfplane(&cfg, g)?,
        Command::Validate => cmd_validate(&cfg)?,
        Command::Kernel(a) => cmd_kernel(&cfg, a)?,
    };
    let meta = cfg.metadata();
    match &cfg.out {
        Some(path) => {
            let mut f = io::BufWriter::new(File::create(path)?);
            outcome.table.write(&mut f, &meta)?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            outcome.table.write(&mut lock, &meta)?;
        }
    }
    Ok(if cfg.strict && outcome.numerical > 0 {
        EXIT_NUMERICAL
    } else if outcome.failures > 0 {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            EXIT_CONFIG
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            EXIT_NUMERICAL
        }
        Err(CliError::Io(e)) => {
            eprintln!("i/o error: {e}");
            EXIT_NUMERICAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2.5").unwrap(), vec![2.5]);
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn flags_override_defaults() {
        let cli = Cli::try_parse_from([
            "nnwedge",
            "--phi",
            "60",
            "--alpha",
            "20",
            "--degrees",
            "field",
        ])
        .unwrap();
        let cfg = RunConfig::resolve(&cli.common).unwrap();
        assert!((cfg.scene.phi() - std::f64::consts::PI / 3.0).abs() < 1e-15);
        assert!((cfg.scene.alpha() - 20f64.to_radians()).abs() < 1e-15);
    }

    #[test]
    fn bad_scene_is_config_error() {
        assert_eq!(run(["nnwedge", "--omega0", "-1", "kernel"]), EXIT_CONFIG);
        assert_eq!(run(["nnwedge", "nonsense"]), EXIT_CONFIG);
    }
}
