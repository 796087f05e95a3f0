//! Packaged numerical checks. Every check returns a [`CheckReport`]; a failing
//! check never aborts a suite.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::amplitude::{self, RatePrediction};
use crate::error::{Error, Result};
use crate::fields::{self, Representation};
use crate::geometry::{PolarPoint, WedgeScene};
use crate::kernels::{h_nn_raw, z_raw, zn_expansion, zn_series_eval, ZN_TERMS};
use crate::profiles::{g_hat_direct, Profile};
use crate::quadrature::QuadratureSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Quantity {
    Real(f64),
    Complex(Complex64),
    /// Convergence order or decay exponent.
    Order(f64),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Real(x) => write!(f, "{x:.6e}"),
            Quantity::Complex(z) => write!(f, "{:.6e}{:+.6e}i", z.re, z.im),
            Quantity::Order(p) => write!(f, "order {p:.4}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub observed: Quantity,
    pub expected: Quantity,
    pub tolerance: f64,
    pub passed: bool,
    pub details: String,
}

impl CheckReport {
    fn new(
        name: impl Into<String>,
        observed: Quantity,
        expected: Quantity,
        tolerance: f64,
        passed: bool,
        details: String,
    ) -> Self {
        CheckReport {
            name: name.into(),
            observed,
            expected,
            tolerance,
            passed,
            details,
        }
    }

    /// Report for `|observed - expected| <= tolerance` on reals.
    pub fn close(
        name: impl Into<String>,
        observed: f64,
        expected: f64,
        tolerance: f64,
        details: String,
    ) -> Self {
        let passed = (observed - expected).abs() <= tolerance;
        Self::new(
            name,
            Quantity::Real(observed),
            Quantity::Real(expected),
            tolerance,
            passed,
            details,
        )
    }

    /// Report for a quantity that should vanish.
    pub fn small(name: impl Into<String>, observed: f64, tolerance: f64, details: String) -> Self {
        Self::close(name, observed, 0.0, tolerance, details)
    }

    /// Report for a check that could not be evaluated.
    pub fn failed(name: impl Into<String>, err: &Error) -> Self {
        Self::new(
            name,
            Quantity::Real(f64::NAN),
            Quantity::Real(0.0),
            0.0,
            false,
            format!("error: {err}"),
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {}: observed {} expected {} tol {:.1e}",
            self.name, self.observed, self.expected, self.tolerance
        )?;
        if !self.details.is_empty() {
            write!(f, " ({})", self.details)?;
        }
        Ok(())
    }
}

fn or_failed(name: &str, r: Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::failed(name, &e))
}

/// Ratio window accepted as second-order convergence under halving.
pub const ORDER2_RATIO: (f64, f64) = (3.4, 4.6);

/// Second-order test on residuals at `h, h/2, h/4, ...`: median of the
/// successive ratios, or all residuals below `floor`.
fn order2(name: &str, residuals: &[f64], floor: f64, extra: &str) -> CheckReport {
    let (median, quiet, details) = ratio_summary(residuals, floor, extra);
    let passed = quiet || (ORDER2_RATIO.0..=ORDER2_RATIO.1).contains(&median);
    CheckReport::new(
        name,
        Quantity::Real(median),
        Quantity::Real(4.0),
        0.6,
        passed,
        details,
    )
}

/// Convergence of at least second order: median observed order `log2(ratio)`
/// not below `log2(3.4)`.
fn order_at_least2(name: &str, residuals: &[f64], floor: f64, extra: &str) -> CheckReport {
    let (median, quiet, details) = ratio_summary(residuals, floor, extra);
    let order = median.log2();
    let passed = quiet || order >= ORDER2_RATIO.0.log2();
    CheckReport::new(
        name,
        Quantity::Order(order),
        Quantity::Order(2.0),
        2.0 - ORDER2_RATIO.0.log2(),
        passed,
        details,
    )
}

fn ratio_summary(residuals: &[f64], floor: f64, extra: &str) -> (f64, bool, String) {
    let mut ratios: Vec<f64> = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    ratios.sort_by(f64::total_cmp);
    let median = if ratios.is_empty() {
        f64::NAN
    } else if ratios.len() % 2 == 1 {
        ratios[ratios.len() / 2]
    } else {
        0.5 * (ratios[ratios.len() / 2 - 1] + ratios[ratios.len() / 2])
    };
    let quiet = residuals.iter().all(|r| *r < floor);
    let res: Vec<String> = residuals.iter().map(|r| format!("{r:.3e}")).collect();
    let mut details = format!("residuals [{}]", res.join(", "));
    if quiet {
        details.push_str("; all below floor");
    }
    if !extra.is_empty() {
        details.push_str("; ");
        details.push_str(extra);
    }
    (median, quiet, details)
}

const LEVELS: usize = 3;

/// The split `u_in + u_r + u_d` solves the wedge problem only for admissible
/// incidence; elsewhere `u_in` would need a shadow.
fn require_admissible(scene: &WedgeScene) -> Result<()> {
    if scene.is_admissible() {
        Ok(())
    } else {
        Err(Error::Domain("check needs an admissible scene".into()))
    }
}

fn require_smooth(profile: &Profile) -> Result<()> {
    if profile.is_smooth() {
        Ok(())
    } else {
        Err(Error::Domain(
            "derivative checks need the smooth profile".into(),
        ))
    }
}

/// Distance from `t` to every wavefront through `y`.
fn front_gap(scene: &WedgeScene, p: &PolarPoint, t: f64) -> f64 {
    let proj = |dir: f64| p.rho * (p.theta - dir).cos();
    [
        p.rho,
        proj(scene.alpha()),
        proj(scene.theta1()),
        proj(scene.theta2()),
    ]
    .iter()
    .map(|f| (t - f).abs())
    .fold(f64::INFINITY, f64::min)
}

fn check_front(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    h0: f64,
) -> Result<()> {
    let need = 3.0 * h0.max(profile.width());
    let gap = front_gap(scene, p, t);
    if gap < need {
        return Err(Error::Domain(format!(
            "t = {t} within {gap:.3} of a wavefront, need {need:.3}"
        )));
    }
    Ok(())
}

fn check_stencil_room(scene: &WedgeScene, p: &PolarPoint, h0: f64, band: f64) -> Result<()> {
    if p.rho <= 2.0 * h0 {
        return Err(Error::Domain(format!(
            "rho = {} too small for step {h0}",
            p.rho
        )));
    }
    let dth = h0 / p.rho;
    if p.theta - dth < scene.phi() || p.theta + dth > 2.0 * PI {
        return Err(Error::Domain(format!(
            "theta = {} too close to the boundary",
            p.theta
        )));
    }
    let (d, _) = scene.critical_distance(p.theta);
    if !scene.is_degenerate() && d <= dth + band {
        return Err(Error::Domain(format!(
            "theta = {} too close to a critical ray",
            p.theta
        )));
    }
    Ok(())
}

/// `box_h u` with steps `h` in `rho` and `t` and `h/rho` in `theta`.
fn dalembert<F>(u: &F, p: &PolarPoint, t: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64, f64) -> Result<Complex64>,
{
    let (r, th) = (p.rho, p.theta);
    let d = h / r;
    let u0 = u(r, th, t)?;
    let utt = u(r, th, t + h)? + u(r, th, t - h)? - 2.0 * u0;
    let (rp, rm) = (u(r + h, th, t)?, u(r - h, th, t)?);
    let urr = rp + rm - 2.0 * u0;
    let ur = (rp - rm) / (2.0 * h * r);
    let uqq = u(r, th + d, t)? + u(r, th - d, t)? - 2.0 * u0;
    Ok((utt - urr - uqq) / (h * h) - ur)
}

/// `(Delta + k2) u` with steps `h` in `rho` and `h/rho` in `theta`.
fn helmholtz<F>(u: &F, p: &PolarPoint, k2: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let (r, th) = (p.rho, p.theta);
    let d = h / r;
    let u0 = u(r, th)?;
    let (rp, rm) = (u(r + h, th)?, u(r - h, th)?);
    let lap = (rp + rm - 2.0 * u0 + u(r, th + d)? + u(r, th - d)? - 2.0 * u0) / (h * h)
        + (rp - rm) / (2.0 * h * r);
    Ok(lap + k2 * u0)
}

fn total_field<'a>(
    scene: &'a WedgeScene,
    profile: &'a Profile,
    spec: &'a QuadratureSpec,
) -> impl Fn(f64, f64, f64) -> Result<Complex64> + 'a {
    move |r, th, t| {
        Ok(fields::u_total(scene, profile, &PolarPoint { rho: r, theta: th }, t, spec)?.value)
    }
}

/// Second-order convergence of the discrete D'Alembert residual of `u`.
pub fn check_pde(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    h0: f64,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    require_smooth(profile)?;
    require_admissible(scene)?;
    p.validate(scene)?;
    check_stencil_room(scene, p, h0, spec.band)?;
    check_front(scene, profile, p, t, h0)?;
    let u = total_field(scene, profile, spec);
    let mut res = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        res.push(dalembert(&u, p, t, h0 / 2f64.powi(k as i32))?.norm());
    }
    let name = format!("pde rho={:.3} theta={:.4} t={:.3}", p.rho, p.theta, t);
    Ok(order2(&name, &res, 10.0 * spec.abs_tol, ""))
}

/// Second-order convergence of the Helmholtz residual `(Delta + omega^2) u_hat_s`.
pub fn check_helmholtz_scattered(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    omega: Complex64,
    h0: f64,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    p.validate(scene)?;
    if p.rho <= 2.0 * h0 || p.theta - h0 / p.rho < scene.phi() || p.theta + h0 / p.rho > 2.0 * PI {
        return Err(Error::Domain("stencil leaves the domain".into()));
    }
    let u = |r: f64, th: f64| {
        Ok(fields::u_hat_s(
            scene,
            profile,
            &PolarPoint { rho: r, theta: th },
            omega,
            spec,
        )?
        .value)
    };
    let mut res = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        res.push(helmholtz(&u, p, omega * omega, h0 / 2f64.powi(k as i32))?.norm());
    }
    let name = format!(
        "helmholtz u_hat_s rho={:.3} theta={:.4} omega={omega}",
        p.rho, p.theta
    );
    Ok(order2(&name, &res, 10.0 * spec.abs_tol, ""))
}

/// Second-order convergence of `(Delta + omega0^2) A_inf`, with the residual of
/// `(Delta - omega0^2) A_inf` reported alongside.
pub fn check_helmholtz_amplitude(
    scene: &WedgeScene,
    p: &PolarPoint,
    h0: f64,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    p.validate(scene)?;
    check_stencil_room(scene, p, h0, spec.band)?;
    let u = |r: f64, th: f64| {
        Ok(amplitude::a_inf_contour(scene, &PolarPoint { rho: r, theta: th }, spec)?.value)
    };
    let k2 = Complex64::new(scene.omega0() * scene.omega0(), 0.0);
    let mut res = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        res.push(helmholtz(&u, p, k2, h0 / 2f64.powi(k as i32))?.norm());
    }
    let minus = helmholtz(&u, p, -k2, h0 / 2f64.powi(LEVELS as i32 - 1))?.norm();
    let name = format!("helmholtz A_inf rho={:.3} theta={:.4}", p.rho, p.theta);
    Ok(order2(
        &name,
        &res,
        10.0 * spec.abs_tol,
        &format!("(Delta - omega0^2) residual {minus:.3e}"),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Face `theta = 2pi`.
    Q1,
    /// Face `theta = phi`.
    Q2,
}

impl Side {
    pub fn angle_and_step(self, scene: &WedgeScene) -> (f64, f64) {
        match self {
            Side::Q1 => (2.0 * PI, -1.0),
            Side::Q2 => (scene.phi(), 1.0),
        }
    }
}

/// One-sided second-order normal derivative `(1/rho) du/dtheta` at the face.
fn face_derivative<F>(u: &F, theta_b: f64, dir: f64, rho: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d = h / rho;
    let (u0, u1, u2) = (
        u(theta_b)?,
        u(theta_b + dir * d)?,
        u(theta_b + 2.0 * dir * d)?,
    );
    Ok((-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h))
}

/// Neumann condition on a face: the one-sided normal derivative of `u`
/// vanishes at least as `O(h^2)`. The field is even about each face, so the
/// third-derivative error term of the stencil drops out and the observed
/// order is usually 3.
pub fn check_neumann(
    scene: &WedgeScene,
    profile: &Profile,
    side: Side,
    rho: f64,
    t: f64,
    h0: f64,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    require_smooth(profile)?;
    require_admissible(scene)?;
    let (theta_b, dir) = side.angle_and_step(scene);
    let p = PolarPoint::new(scene, rho, theta_b)?;
    if rho <= 0.0 {
        return Err(Error::Domain("rho must be positive".into()));
    }
    check_front(scene, profile, &p, t, 2.0 * h0)?;
    let (d, _) = scene.critical_distance(theta_b);
    if !scene.is_degenerate() && d <= 2.0 * h0 / rho + spec.band {
        return Err(Error::Domain("face stencil reaches a critical ray".into()));
    }
    let u = |th: f64| {
        Ok(fields::u_total(scene, profile, &PolarPoint { rho, theta: th }, t, spec)?.value)
    };
    let mut res = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        res.push(face_derivative(&u, theta_b, dir, rho, h0 / 2f64.powi(k as i32))?.norm());
    }
    let name = format!("neumann {side:?} rho={rho:.3} t={t:.3}");
    Ok(order_at_least2(&name, &res, 10.0 * spec.abs_tol, ""))
}

/// Neumann condition for the stationary total field `g_hat e^{i omega n0.y} + u_hat_s`.
pub fn check_neumann_stationary(
    scene: &WedgeScene,
    profile: &Profile,
    side: Side,
    rho: f64,
    omega: Complex64,
    h0: f64,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    let (theta_b, dir) = side.angle_and_step(scene);
    PolarPoint::new(scene, rho, theta_b)?;
    let g = g_hat_direct(profile, scene.omega0(), omega, spec)?.value;
    let u = |th: f64| {
        let us =
            fields::u_hat_s(scene, profile, &PolarPoint { rho, theta: th }, omega, spec)?.value;
        Ok(us + g * (I * omega * rho * (th - scene.alpha()).cos()).exp())
    };
    let mut res = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        res.push(face_derivative(&u, theta_b, dir, rho, h0 / 2f64.powi(k as i32))?.norm());
    }
    let name = format!("neumann stationary {side:?} rho={rho:.3} omega={omega}");
    Ok(order_at_least2(&name, &res, 10.0 * spec.abs_tol, ""))
}

/// Default probe ladder for the jump check.
pub const JUMP_LADDER: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Tolerance on the extrapolated jump.
pub const JUMP_TOL: f64 = 1e-5;

/// `d^k u_s / d theta^k` with `u_s = u_r + u_d`.
fn scattered_k(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    k: u8,
    spec: &QuadratureSpec,
) -> Result<(Complex64, Complex64)> {
    if k == 0 {
        Ok((
            fields::u_r(scene, profile, p, t),
            fields::u_d(scene, profile, p, t, spec)?.value,
        ))
    } else {
        Ok((
            fields::u_r_dtheta(scene, profile, p, t),
            fields::u_d_dtheta(scene, profile, p, t, spec)?.value,
        ))
    }
}

/// Across-ray mismatch of `d^k u_s / d theta^k` at `theta_l`, extrapolated to
/// zero probe width.
pub fn check_jump(
    scene: &WedgeScene,
    profile: &Profile,
    l: u8,
    rho: f64,
    t: f64,
    k: u8,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    if !(l == 1 || l == 2) || k > 1 {
        return Err(Error::Domain(
            "l must be 1 or 2 and k must be 0 or 1".into(),
        ));
    }
    require_admissible(scene)?;
    let theta_l = if l == 1 {
        scene.theta1()
    } else {
        scene.theta2()
    };
    let spec0 = spec.with_band(0.0);
    let mut jumps = Vec::with_capacity(JUMP_LADDER.len());
    let mut ud_jump = Complex64::new(0.0, 0.0);
    for &eps in &JUMP_LADDER {
        let hi = PolarPoint::new(scene, rho, theta_l + eps)?;
        let lo = PolarPoint::new(scene, rho, theta_l - eps)?;
        let (r_hi, d_hi) = scattered_k(scene, profile, &hi, t, k, &spec0)?;
        let (r_lo, d_lo) = scattered_k(scene, profile, &lo, t, k, &spec0)?;
        jumps.push((r_hi + d_hi) - (r_lo + d_lo));
        ud_jump = d_hi - d_lo;
    }
    let n = jumps.len();
    let extrapolated = 2.0 * jumps[n - 1] - jumps[n - 2];
    let coarse = 2.0 * jumps[n - 2] - jumps[n - 3];
    let on_ray = PolarPoint {
        rho,
        theta: theta_l,
    };
    let ur_l = if k == 0 {
        fields::u_r_wave(scene, profile, l, &on_ray, t)
    } else {
        fields::u_r_dtheta(scene, profile, &on_ray, t)
    };
    let expected_ud = if l == 1 { ur_l } else { -ur_l };
    let raw: Vec<String> = jumps.iter().map(|j| format!("{:.3e}", j.norm())).collect();
    let details = format!(
        "raw [{}], coarser extrapolation {:.3e}, u_d jump {:.6e}{:+.6e}i vs reflected {:.6e}{:+.6e}i",
        raw.join(", "),
        coarse.norm(),
        ud_jump.re,
        ud_jump.im,
        expected_ud.re,
        expected_ud.im
    );
    let name = format!("jump l={l} k={k} rho={rho:.3} t={t:.3}");
    Ok(CheckReport::small(
        name,
        extrapolated.norm(),
        JUMP_TOL,
        details,
    ))
}

/// Fractions of `[phi, 2pi]` used for deterministic probe angles.
const PROBE_FRACTIONS: [f64; 7] = [0.08, 0.23, 0.37, 0.5, 0.61, 0.77, 0.92];

/// Probe angles at least `margin` away from every critical angle.
pub fn probe_angles(scene: &WedgeScene, margin: f64) -> Vec<f64> {
    PROBE_FRACTIONS
        .iter()
        .map(|f| scene.phi() + f * (2.0 * PI - scene.phi()))
        .filter(|th| scene.is_degenerate() || scene.critical_distance(*th).0 > margin)
        .collect()
}

/// Tolerance for the representation equivalences.
pub const EQUIV_TOL: f64 = 1e-6;

/// Two-route agreements: `J_d` representations, the two `A_inf` routes
/// (admissible scenes only),
/// the two `g_hat` routes inside `u_hat_d`, the residue split of `u_hat_s`,
/// and the half-plane comparison when `phi = 0`.
pub fn check_equivalences(
    scene: &WedgeScene,
    profile: &Profile,
    spec: &QuadratureSpec,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let angles = probe_angles(scene, 0.05);
    let rhos = [0.3, 1.0, 2.5];
    for (i, &theta) in angles.iter().enumerate() {
        let rho = rhos[i % rhos.len()];
        let p = PolarPoint { rho, theta };
        for w2 in [0.1, 1.0, 10.0] {
            let omega = Complex64::new(-1.5 + 0.5 * i as f64, w2);
            let name = format!("J_d C0 vs real line rho={rho} theta={theta:.4} omega={omega}");
            out.push(or_failed(
                &name,
                (|| {
                    let a = fields::j_d(scene, &p, omega, Representation::ContourC0, spec)?;
                    let b = fields::j_d(scene, &p, omega, Representation::RealLine, spec)?;
                    Ok(CheckReport::small(
                        &name,
                        (a.value - b.value).norm(),
                        EQUIV_TOL,
                        format!("error estimates {:.1e} + {:.1e}", a.error, b.error),
                    ))
                })(),
            ));
        }
        let name = format!("A_inf sum vs contour rho={rho} theta={theta:.4}");
        if scene.is_admissible() {
            out.push(or_failed(
                &name,
                (|| {
                    let a = amplitude::a_components(scene, &p, spec)?;
                    let b = amplitude::a_inf_contour(scene, &p, spec)?;
                    Ok(CheckReport::small(
                        &name,
                        (a.a_inf - b.value).norm(),
                        EQUIV_TOL,
                        String::new(),
                    ))
                })(),
            ));
        }
        if profile.is_smooth() {
            let omega = Complex64::new(0.4 + 0.3 * i as f64, 1.0);
            let name = format!("u_hat_d g_hat routes rho={rho} theta={theta:.4}");
            out.push(or_failed(
                &name,
                (|| {
                    let a = fields::u_hat_d(scene, profile, &p, omega, spec)?;
                    let g = g_hat_direct(profile, scene.omega0(), omega, spec)?;
                    let j = fields::j_d(scene, &p, omega, Representation::RealLine, spec)?;
                    let b = I / (4.0 * scene.big_phi()) * g.value * j.value;
                    Ok(CheckReport::small(
                        &name,
                        (a.value - b).norm(),
                        EQUIV_TOL,
                        String::new(),
                    ))
                })(),
            ));
            let name = format!("u_hat_s = u_hat_r + u_hat_d rho={rho} theta={theta:.4}");
            out.push(or_failed(
                &name,
                (|| {
                    let s = fields::u_hat_s(scene, profile, &p, omega, spec)?;
                    let r = fields::u_hat_r(scene, profile, &p, omega, spec)?;
                    let d = fields::u_hat_d(scene, profile, &p, omega, spec)?;
                    Ok(CheckReport::small(
                        &name,
                        (s.value - r.value - d.value).norm(),
                        EQUIV_TOL,
                        String::new(),
                    ))
                })(),
            ));
        }
    }
    if scene.is_half_plane() {
        out.extend(check_halfplane(scene.alpha(), scene.omega0(), spec));
    }
    out
}

/// Tolerance for the half-plane comparison.
pub const HALFPLANE_TOL: f64 = 1e-6;

/// `u_d` against Hewett's `Phi_d` (doubled at grazing incidence) on a fixed
/// set of points with `t > 2 rho`.
pub fn check_halfplane(alpha: f64, omega0: f64, spec: &QuadratureSpec) -> Vec<CheckReport> {
    let theta0 = alpha - PI;
    let pts = [
        (0.5, 0.7, 1.3),
        (1.0, 1.9, 2.4),
        (1.3, 4.4, 3.1),
        (2.0, 5.5, 5.0),
        (0.8, 2.8, 4.0),
    ];
    let mut out = Vec::new();
    for &(rho, theta, tf) in &pts {
        let near = [theta - theta0, theta + theta0].iter().any(|psi| {
            let d = psi - PI;
            (d - 2.0 * PI * (d / (2.0 * PI)).round()).abs() < 0.1
        });
        if near {
            continue;
        }
        let t = tf * rho + 2.0 * rho;
        let name = format!("half-plane theta0={theta0:.4} rho={rho} theta={theta} t={t:.3}");
        out.push(or_failed(
            &name,
            (|| {
                let r = amplitude::halfplane_compare(
                    alpha,
                    &PolarPoint { rho, theta },
                    t,
                    omega0,
                    spec,
                )?;
                Ok(CheckReport::small(
                    &name,
                    r.max_deviation(),
                    HALFPLANE_TOL,
                    format!("factor {}, route gap {:.2e}", r.factor, r.route_gap),
                ))
            })(),
        ))
    }
    out
}

/// Slope tolerances of the rate fits.
pub const IM_SLOPE_TOL: f64 = 0.05;
pub const RE_SLOPE_TOL: f64 = 0.1;
pub const COEFF_REL_TOL: f64 = 0.1;

/// Rate fits of `e^{-i omega0 t} R_d` against a prediction: both slopes on
/// `t in [10 rho, 1000 rho]` and the `Im` amplitude on `[100 rho, 800 rho]`.
pub fn check_rates_against(
    scene: &WedgeScene,
    p: &PolarPoint,
    pred: &RatePrediction,
    spec: &QuadratureSpec,
) -> Result<Vec<CheckReport>> {
    let grid = amplitude::geometric_grid(10.0 * p.rho, 1000.0 * p.rho, 16);
    let fit = amplitude::rate_fit(scene, p, &grid, spec)?;
    let tag = format!("rho={:.3} theta={:.4} order {}", p.rho, p.theta, pred.order);
    let mut out = vec![
        CheckReport::close(
            format!("Im slope {tag}"),
            fit.im_slope,
            pred.im_exponent,
            IM_SLOPE_TOL,
            format!("{} points", fit.im_points),
        ),
        CheckReport::close(
            format!("Re slope {tag}"),
            fit.re_slope,
            pred.re_exponent,
            RE_SLOPE_TOL,
            format!("{} points", fit.re_points),
        ),
    ];
    let late = amplitude::geometric_grid(100.0 * p.rho, 800.0 * p.rho, 16);
    let late_fit = amplitude::rate_fit(scene, p, &late, spec)?;
    let pts: Vec<(f64, f64)> = late_fit
        .samples
        .iter()
        .map(|s| (s.0, s.1.im))
        .filter(|s| s.1 != 0.0)
        .collect();
    let amp = amplitude::fixed_slope_amplitude(&pts, pred.im_exponent).unwrap_or(f64::NAN);
    let want = pred.im_coeff.abs();
    let rel = if want > 0.0 {
        (amp - want).abs() / want
    } else {
        f64::INFINITY
    };
    let sign_match = late_fit.im_sign == pred.im_coeff.signum();
    out.push(CheckReport::new(
        format!("Im coefficient {tag}"),
        Quantity::Real(amp),
        Quantity::Real(want),
        COEFF_REL_TOL,
        rel <= COEFF_REL_TOL,
        format!(
            "relative deviation {rel:.3e}; sign of Im {} predicted {}",
            late_fit.im_sign,
            pred.im_coeff.signum()
        ) + if sign_match { "" } else { " (sign differs)" },
    ));
    Ok(out)
}

/// Rate fits against the first non-vanishing expansion term.
pub fn check_rates(scene: &WedgeScene, p: &PolarPoint, spec: &QuadratureSpec) -> Vec<CheckReport> {
    let pred = amplitude::rate_prediction_leading(scene, p);
    check_rates_against(scene, p, &pred, spec)
        .unwrap_or_else(|e| vec![CheckReport::failed("rates", &e)])
}

/// Relative tolerance of the kernel identities.
pub const IDENTITY_TOL: f64 = 1e-10;

/// `H_N(-beta + i pi) + H_N(beta) = 0` and `H_N(beta + 2i Phi) = H_N(beta)`
/// at the supplied points, reported as the worst relative defect.
pub fn check_kernel_identities(scene: &WedgeScene, betas: &[Complex64]) -> Vec<CheckReport> {
    let mut odd = 0.0f64;
    let mut per = 0.0f64;
    let mut used = 0;
    for &b in betas {
        let h = h_nn_raw(scene, b);
        let h_odd = h_nn_raw(scene, -b + I * PI);
        let h_per = h_nn_raw(scene, b + 2.0 * I * scene.big_phi());
        if !(h.is_finite() && h_odd.is_finite() && h_per.is_finite()) || h.norm() > 1e8 {
            continue;
        }
        let scale = h.norm().max(1.0);
        odd = odd.max((h_odd + h).norm() / scale);
        per = per.max((h_per - h).norm() / scale);
        used += 1;
    }
    vec![
        CheckReport::small(
            "H_N(-beta + i pi) + H_N(beta)",
            odd,
            IDENTITY_TOL,
            format!("{used} points"),
        ),
        CheckReport::small(
            "H_N(beta + 2i Phi) - H_N(beta)",
            per,
            IDENTITY_TOL,
            format!("{used} points"),
        ),
    ]
}

/// Decay exponent of `|Z_N(beta + i theta)|` on `beta in [5, 15]` against
/// `-2qm`, `m` the first non-vanishing expansion order (within 2%), and of the
/// six-term expansion remainder on the range where the expansion holds
/// (expected at most `-14q * 0.9`).
pub fn check_zn_decay(scene: &WedgeScene, theta: f64) -> Vec<CheckReport> {
    let q = scene.q();
    let exp = zn_expansion(scene, theta);
    let scale = exp.z_plus.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    let m = exp
        .z_plus
        .iter()
        .position(|z| z.norm() > 1e-10 * scale)
        .map_or(1, |i| i + 1);
    let pts: Vec<(f64, f64)> = (0..=40)
        .map(|k| 5.0 + 10.0 * k as f64 / 40.0)
        .map(|b| (b, z_raw(scene, Complex64::new(b, 0.0), theta).norm()))
        .collect();
    let slope = semilog_slope(&pts);
    let want = -2.0 * q * m as f64;
    let mut out = vec![CheckReport::close(
        format!("Z_N decay theta={theta:.4}"),
        slope,
        want,
        0.02 * want.abs(),
        format!("fit of ln|Z_N| against beta, leading order {m}"),
    )];
    let start = exp.core_radius() + 0.5;
    let stop = start + 12.0 / (14.0 * q);
    let mut rem = Vec::new();
    for k in 0..=30 {
        let b = start + (stop - start) * k as f64 / 30.0;
        for s in [1.0, -1.0] {
            let bb = s * b;
            if let Ok(series) = zn_series_eval(&exp, bb, ZN_TERMS) {
                let r = (z_raw(scene, Complex64::new(bb, 0.0), theta) - series).norm();
                if r > 1e-15
                    * z_raw(scene, Complex64::new(bb, 0.0), theta)
                        .norm()
                        .max(1e-300)
                    * 1e3
                {
                    rem.push((b, r));
                }
            }
        }
    }
    let rslope = semilog_slope(&rem);
    out.push(CheckReport::new(
        format!("Z_N expansion remainder theta={theta:.4}"),
        Quantity::Order(rslope),
        Quantity::Order(-14.0 * q * 0.9),
        0.0,
        rslope <= -14.0 * q * 0.9,
        format!("{} points on |beta| in [{start:.3}, {stop:.3}]", rem.len()),
    ));
    out
}

fn semilog_slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in pts {
        let ly = y.ln();
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Large-`t` identities behind the rate predictions: the fourth-order
/// remainder of the `t/(t + sqrt(t^2 - rho^2))` expansion, the leading term of
/// `E_p`, and the six-term assembly of `R_d` from `E_{2qm}`.
pub fn check_asymptotics(
    scene: &WedgeScene,
    p: &PolarPoint,
    spec: &QuadratureSpec,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let m = 2.0 * scene.q();
    let pts: Vec<(f64, f64)> = amplitude::geometric_grid(10.0 * p.rho, 100.0 * p.rho, 8)
        .into_iter()
        .map(|t| (t, amplitude::asy_b_remainder(m, p.rho, t)))
        .collect();
    let (slope, _) = amplitude::loglog_fit(&pts).unwrap_or((f64::NAN, f64::NAN));
    out.push(CheckReport::new(
        "expansion remainder order",
        Quantity::Order(slope),
        Quantity::Order(-3.8),
        0.0,
        slope <= -3.8,
        String::new(),
    ));

    let w0 = scene.omega0();
    let lead = -p.rho.powf(m) / (2f64.powf(m) * I * w0);
    let name = "E_p leading term";
    out.push(or_failed(
        name,
        (|| {
            let dev = |t: f64| -> Result<f64> {
                Ok((amplitude::e_p(p.rho, t, m, w0, spec)?.value
                    * t.powf(m + 1.0)
                    * Complex64::from_polar(1.0, -w0 * t)
                    - lead)
                    .norm()
                    / lead.norm())
            };
            let (d1, d2) = (dev(50.0 * p.rho)?, dev(400.0 * p.rho)?);
            Ok(CheckReport::new(
                name,
                Quantity::Real(d2),
                Quantity::Real(0.0),
                1e-2,
                d2 < d1 && d2 < 1e-2,
                format!("relative deviation {d1:.3e} at 50 rho"),
            ))
        })(),
    ));

    let name = "R_d six-term assembly";
    out.push(or_failed(
        name,
        (|| {
            let exp = zn_expansion(scene, p.theta);
            let t0 = p.rho * (exp.core_radius() + 0.3).cosh();
            let mut pts = Vec::new();
            for t in amplitude::geometric_grid(t0, 8.0 * t0, 12) {
                let direct = amplitude::r_d(scene, p, t, spec)?.value;
                let series = amplitude::r_d_series(scene, p, t, ZN_TERMS, spec)?;
                let r = (direct - series).norm();
                if r > 1e3 * spec.abs_tol {
                    pts.push((t, r));
                }
            }
            let (slope, _) = amplitude::loglog_fit(&pts).unwrap_or((f64::NAN, f64::NAN));
            let want = -14.0 * scene.q() * 0.9;
            Ok(CheckReport::new(
                name,
                Quantity::Order(slope),
                Quantity::Order(want),
                0.0,
                slope <= want,
                format!("{} points from t = {t0:.3}", pts.len()),
            ))
        })(),
    ));
    out
}

/// Full suite for one scene: kernel identities, decay, PDE and boundary
/// residuals, jumps, equivalences, asymptotics and rates.
pub fn run_suite(scene: &WedgeScene, profile: &Profile, spec: &QuadratureSpec) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let betas: Vec<Complex64> = (0..40)
        .map(|k| {
            let x = -6.0 + 12.0 * (k as f64 * 0.618_033_988_75).fract();
            let y = -9.0 + 18.0 * (k as f64 * 0.414_213_562_37).fract();
            Complex64::new(x, y)
        })
        .collect();
    out.extend(check_kernel_identities(scene, &betas));
    for th in probe_angles(scene, 0.05).into_iter().take(3) {
        if !scene.is_degenerate() {
            out.extend(check_zn_decay(scene, th));
        }
    }

    if profile.is_smooth() && scene.is_admissible() {
        let h0 = 0.05;
        for th in probe_angles(scene, 0.2).into_iter().take(3) {
            let p = PolarPoint {
                rho: 1.5,
                theta: th,
            };
            let t = pick_time(scene, profile, &p, h0);
            out.push(or_failed("pde", check_pde(scene, profile, &p, t, h0, spec)));
        }
        for side in [Side::Q1, Side::Q2] {
            let p = PolarPoint {
                rho: 1.5,
                theta: side.angle_and_step(scene).0,
            };
            let t = pick_time(scene, profile, &p, 2.0 * h0);
            out.push(or_failed(
                "neumann",
                check_neumann(scene, profile, side, 1.5, t, h0, spec),
            ));
            let omega = Complex64::new(0.8, 1.0);
            out.push(or_failed(
                "neumann stationary",
                check_neumann_stationary(scene, profile, side, 1.5, omega, h0, spec),
            ));
        }
        if let Some(&th) = probe_angles(scene, 0.2).get(1) {
            let p = PolarPoint {
                rho: 1.5,
                theta: th,
            };
            out.push(or_failed(
                "helmholtz u_hat_s",
                check_helmholtz_scattered(scene, profile, &p, Complex64::new(0.8, 1.0), h0, spec),
            ));
            out.push(or_failed(
                "helmholtz A_inf",
                check_helmholtz_amplitude(scene, &p, h0, spec),
            ));
        }
    }

    if scene.is_admissible() && !scene.is_degenerate() {
        for l in [1u8, 2] {
            for k in [0u8, 1] {
                out.push(or_failed(
                    "jump",
                    check_jump(scene, profile, l, 1.0, 4.0, k, spec),
                ));
            }
        }
    }

    out.extend(check_equivalences(scene, profile, spec));

    if !scene.is_degenerate() {
        let tight = QuadratureSpec {
            band: spec.band,
            ..QuadratureSpec::tight()
        };
        if let Some(&th) = probe_angles(scene, 0.2).get(2) {
            let p = PolarPoint {
                rho: 1.0,
                theta: th,
            };
            out.extend(check_asymptotics(scene, &p, &tight));
            out.extend(check_rates(scene, &p, &tight));
        }
    }
    out
}

/// First time after every front with room for the stencil.
pub fn pick_time(scene: &WedgeScene, profile: &Profile, p: &PolarPoint, h0: f64) -> f64 {
    let need = 3.0 * h0.max(profile.width());
    let proj = |dir: f64| p.rho * (p.theta - dir).cos();
    let last = [
        p.rho,
        proj(scene.alpha()),
        proj(scene.theta1()),
        proj(scene.theta2()),
    ]
    .iter()
    .cloned()
    .fold(f64::NEG_INFINITY, f64::max);
    last + need + 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order2_window() {
        let r = order2("x", &[1.6e-3, 4e-4, 1e-4], 1e-14, "");
        assert!(r.passed);
        let r = order2("x", &[1.6e-3, 8e-4, 4e-4], 1e-14, "");
        assert!(!r.passed);
        let r = order2("x", &[0.0, 0.0, 0.0], 1e-14, "");
        assert!(r.passed);
    }

    #[test]
    fn kernel_identities_hold() {
        let s = WedgeScene::reference();
        let betas = [
            Complex64::new(0.3, 0.2),
            Complex64::new(-2.0, 1.3),
            Complex64::new(4.0, -7.0),
        ];
        for r in check_kernel_identities(&s, &betas) {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn zn_decay_reference() {
        let s = WedgeScene::reference();
        for r in check_zn_decay(&s, 3.0) {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn front_guard() {
        let s = WedgeScene::reference();
        let prof = Profile::smooth_ramp(0.5).unwrap();
        let p = PolarPoint::new(&s, 1.5, PI).unwrap();
        assert!(check_pde(&s, &prof, &p, 1.6, 0.05, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn neumann_before_arrival_is_exact() {
        let s = WedgeScene::reference();
        let prof = Profile::smooth_ramp(0.5).unwrap();
        let spec = QuadratureSpec::default();
        let r = check_neumann(&s, &prof, Side::Q1, 1.5, -5.0, 0.05, &spec).unwrap();
        assert!(r.passed && r.details.contains("below floor"), "{r}");
    }
}
