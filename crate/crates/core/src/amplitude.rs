//! Limiting amplitudes, the residual `R_d`, the `E_p` integrals, the large-`t`
//! rate predictors and the half-plane comparison with the Hewett form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{self, full_line, middle, tails, Kernel, Route};
use crate::geometry::{ac, PolarPoint, WedgeScene};
use crate::kernels::{b_halfplane, exp_i_cosh, exp_minus_sinh, h_nn_raw, zn_expansion, ZN_TERMS};
use crate::profiles::Profile;
use crate::quadrature::{
    integrate_contour, integrate_oscillatory_finite, integrate_ray, integrate_segment_graded,
    ContourPath, Estimate, QuadratureSpec, Ray,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Limiting amplitudes at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeSet {
    pub a_in: Complex64,
    pub a_r: Complex64,
    pub a_d: Complex64,
    pub a_inf: Complex64,
    /// Quadrature error carried by `a_d`.
    pub error: f64,
}

/// `A_in + A_r + A_d`, with `A_r = 0` on the closed sector `[theta1, theta2]`.
pub fn a_components(
    scene: &WedgeScene,
    p: &PolarPoint,
    spec: &QuadratureSpec,
) -> Result<AmplitudeSet> {
    p.validate(scene)?;
    scene.check_noncritical(p.theta, spec.band)?;
    let w0 = scene.omega0();
    let plane = |dir: f64| Complex64::from_polar(1.0, w0 * p.rho * (p.theta - dir).cos());
    let a_in = plane(scene.alpha());
    let a_r = if p.theta < scene.theta1() {
        plane(scene.theta1())
    } else if p.theta > scene.theta2() {
        plane(scene.theta2())
    } else {
        c(0.0, 0.0)
    };
    let d = if scene.is_degenerate() {
        Estimate::zero()
    } else {
        full_line(scene, p.theta, Kernel::Z, p.rho, c(w0, 0.0), spec)?
            .scale(I / (4.0 * scene.big_phi()))
    };
    Ok(AmplitudeSet {
        a_in,
        a_r,
        a_d: d.value,
        a_inf: a_in + a_r + d.value,
        error: d.error,
    })
}

fn c1_plus() -> [ContourPath; 2] {
    let (a0, a1) = (c(1.0, -PI / 4.0), c(1.0, -2.25 * PI));
    let (b0, b1) = (c(-1.0, -2.75 * PI), c(-1.0, -0.75 * PI));
    [
        ContourPath::new(
            Some(Ray::new(a0, c(1.0, 0.0))),
            vec![(a0, a1)],
            Some(Ray::new(a1, c(1.0, 0.0))),
        )
        .expect("valid path"),
        ContourPath::new(
            Some(Ray::new(b0, c(-1.0, 0.0))),
            vec![(b0, b1)],
            Some(Ray::new(b1, c(-1.0, 0.0))),
        )
        .expect("valid path"),
    ]
}

/// `A_inf` through the single contour integral of `e^{-omega0 rho sinh} H_N`,
/// independent of the sector split.
pub fn a_inf_contour(
    scene: &WedgeScene,
    p: &PolarPoint,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    p.validate(scene)?;
    scene.check_noncritical(p.theta, spec.band)?;
    if p.rho == 0.0 {
        return Err(Error::Domain("the contour route needs rho > 0".into()));
    }
    let ro = c(scene.omega0() * p.rho, 0.0);
    let theta = p.theta;
    let f = |b: Complex64| exp_minus_sinh(ro, b) * h_nn_raw(scene, b + I * theta);
    let decay = scene.omega0() * p.rho * 0.5;
    let mut total = Estimate::zero();
    for path in c1_plus() {
        total += integrate_contour(f, &path, decay, spec)?;
    }
    Ok(total.scale(I / (4.0 * scene.big_phi())))
}

/// `A_d(rho, theta, t) = u_d e^{i omega0 t}`.
pub fn a_d_time(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    Ok(fields::u_d(scene, profile, p, t, spec)?
        .scale(Complex64::from_polar(1.0, scene.omega0() * t)))
}

/// `R_d = A_d - A_d(t)` for the Heaviside profile.
pub fn r_d(scene: &WedgeScene, p: &PolarPoint, t: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    p.validate(scene)?;
    scene.check_noncritical(p.theta, spec.band)?;
    if !(t > 0.0 && p.rho > 0.0) {
        return Err(Error::Domain("r_d needs t > 0 and rho > 0".into()));
    }
    if scene.is_degenerate() {
        return Ok(Estimate::zero());
    }
    let a = ac(t / p.rho);
    let w0 = scene.omega0();
    let tail = if a >= 1.0 {
        tails(scene, p.theta, Kernel::Z, p.rho, w0, a, spec)?
    } else {
        full_line(scene, p.theta, Kernel::Z, p.rho, c(w0, 0.0), spec)?
            - middle(scene, p.theta, Kernel::Z, p.rho, w0, a, Route::Direct, spec)?
    };
    Ok(tail.scale(I / (4.0 * scene.big_phi())))
}

/// `E_p(rho, t) = int_{ac(t/rho)}^inf e^{i omega0 rho cosh(beta) - p beta} d(beta)`.
pub fn e_p(rho: f64, t: f64, pexp: f64, omega0: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(rho > 0.0 && pexp > 0.0 && omega0 > 0.0) {
        return Err(Error::Domain("e_p needs rho, p, omega0 > 0".into()));
    }
    let a = ac(t / rho);
    let ro = c(rho * omega0, 0.0);
    let g = |b: Complex64| exp_i_cosh(ro, b) * (-pexp * b).exp();
    let start = a.max(1.0);
    let mut total = Estimate::zero();
    if a < start {
        let lf = |x: f64| rho * omega0 * x.sinh();
        total += integrate_oscillatory_finite(|x| g(c(x, 0.0)), a, start, lf, spec)?;
    }
    let top = c(start, PI / 2.0);
    let scale = 1.0 / (rho * omega0 * start.sinh());
    total += integrate_segment_graded(&g, c(start, 0.0), top, scale, spec)?;
    total += integrate_ray(&g, Ray::new(top, c(1.0, 0.0)), pexp, spec)?;
    Ok(total)
}

/// `R_d` assembled from the `Z_N` expansion: `-(b1/4Phi) sum z_m E_{2qm}`.
pub fn r_d_series(
    scene: &WedgeScene,
    p: &PolarPoint,
    t: f64,
    terms: usize,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(1..=ZN_TERMS).contains(&terms) {
        return Err(Error::Domain(format!(
            "terms = {terms} outside 1..={ZN_TERMS}"
        )));
    }
    let exp = zn_expansion(scene, p.theta);
    let mut acc = c(0.0, 0.0);
    for m in 1..=terms {
        let z = exp.z_plus[m - 1] + exp.z_minus[m - 1];
        if z.norm() == 0.0 {
            continue;
        }
        acc += z * e_p(p.rho, t, 2.0 * exp.q * m as f64, scene.omega0(), spec)?.value;
    }
    Ok(-acc * exp.b1 / (4.0 * scene.big_phi()))
}

/// Leading large-`t` behaviour of `e^{-i omega0 t} R_d`:
/// `Re ~ re_coeff t^re_exponent`, `Im ~ im_coeff t^im_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePrediction {
    /// Index `m` of the expansion term the prediction is built on.
    pub order: usize,
    pub re_coeff: f64,
    pub re_exponent: f64,
    pub im_coeff: f64,
    pub im_exponent: f64,
}

fn prediction_for(scene: &WedgeScene, p: &PolarPoint, m: usize) -> RatePrediction {
    let exp = zn_expansion(scene, p.theta);
    let k = 2.0 * scene.q() * m as f64;
    let zm = exp.z[m - 1];
    let w0 = scene.omega0();
    let common = -exp.b1 * zm / (4.0 * scene.big_phi()) * (p.rho / 2.0).powf(k);
    RatePrediction {
        order: m,
        re_coeff: common * (k + 1.0) / (w0 * w0),
        re_exponent: -(k + 2.0),
        im_coeff: common / w0,
        im_exponent: -(k + 1.0),
    }
}

/// Prediction from the first expansion term, whatever its size.
pub fn rate_prediction(scene: &WedgeScene, p: &PolarPoint) -> RatePrediction {
    prediction_for(scene, p, 1)
}

/// Prediction from the first expansion term that does not vanish at `theta`.
pub fn rate_prediction_leading(scene: &WedgeScene, p: &PolarPoint) -> RatePrediction {
    let exp = zn_expansion(scene, p.theta);
    let scale = exp
        .z
        .iter()
        .fold(0.0f64, |m, z| m.max(z.abs()))
        .max(f64::MIN_POSITIVE);
    let m = exp
        .z
        .iter()
        .position(|z| z.abs() > 1e-10 * scale)
        .map_or(1, |i| i + 1);
    prediction_for(scene, p, m)
}

/// Log-log fit of `e^{-i omega0 t} R_d` over a geometric `t` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub re_slope: f64,
    pub im_slope: f64,
    /// Fitted amplitude `C` in `|Re| ~ C t^slope`.
    pub re_amplitude: f64,
    pub im_amplitude: f64,
    /// Sign of the real and imaginary parts at the largest `t` kept.
    pub re_sign: f64,
    pub im_sign: f64,
    pub re_points: usize,
    pub im_points: usize,
    pub samples: Vec<(f64, Complex64)>,
}

/// Geometric grid from `t0` to `t1` with `per_decade` points per decade.
pub fn geometric_grid(t0: f64, t1: f64, per_decade: usize) -> Vec<f64> {
    let decades = (t1 / t0).log10();
    let n = (decades * per_decade as f64).round().max(1.0) as usize;
    (0..=n)
        .map(|k| t0 * 10f64.powf(decades * k as f64 / n as f64))
        .collect()
}

/// Least-squares line through `(ln x, ln |y|)`; returns `(slope, e^intercept)`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.abs().ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let den = n * sxx - sx * sx;
    if den == 0.0 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / den;
    Some((slope, ((sy - slope * sx) / n).exp()))
}

/// Amplitude `C` of `|y| ~ C x^exponent` with the exponent held fixed.
pub fn fixed_slope_amplitude(points: &[(f64, f64)], exponent: f64) -> Option<f64> {
    if points.is_empty() {
        return None;
    }
    let s: f64 = points
        .iter()
        .map(|&(x, y)| y.abs().ln() - exponent * x.ln())
        .sum();
    Some((s / points.len() as f64).exp())
}

/// Samples `e^{-i omega0 t} R_d` on `ts` and fits both parts. Samples with
/// magnitude below `1e3 abs_tol` are dropped.
pub fn rate_fit(
    scene: &WedgeScene,
    p: &PolarPoint,
    ts: &[f64],
    spec: &QuadratureSpec,
) -> Result<RateFit> {
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        let r = r_d(scene, p, t, spec)?.value * Complex64::from_polar(1.0, -scene.omega0() * t);
        samples.push((t, r));
    }
    let floor = 1e3 * spec.abs_tol;
    let re: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.1.re.abs() > floor)
        .map(|s| (s.0, s.1.re))
        .collect();
    let im: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.1.im.abs() > floor)
        .map(|s| (s.0, s.1.im))
        .collect();
    let (re_slope, re_amplitude) = loglog_fit(&re).unwrap_or((f64::NAN, f64::NAN));
    let (im_slope, im_amplitude) = loglog_fit(&im).unwrap_or((f64::NAN, f64::NAN));
    let last_sign = |v: &[(f64, f64)]| v.last().map_or(0.0, |s| s.1.signum());
    Ok(RateFit {
        re_slope,
        im_slope,
        re_amplitude,
        im_amplitude,
        re_sign: last_sign(&re),
        im_sign: last_sign(&im),
        re_points: re.len(),
        im_points: im.len(),
        samples,
    })
}

/// `[t/(t+sqrt(t^2-rho^2))]^m - [(1/2)^m + m (1/2)^{m-1} rho^2/(8t^2)]`, the
/// remainder of the large-`t` expansion behind the rate predictions.
pub fn asy_b_remainder(m: f64, rho: f64, t: f64) -> f64 {
    let x = t / (t + (t * t - rho * rho).sqrt());
    x.powf(m) - (0.5f64.powf(m) + m * 0.5f64.powf(m - 1.0) * rho * rho / (8.0 * t * t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HewettRoute {
    /// Integrals over `s in [rho, t]`, taken in the variable `s = rho cosh(beta)`.
    SIntegral,
    /// Single `beta` integral of the rational `cosh` kernel.
    BetaIntegral,
}

fn check_hewett(rho: f64, theta: f64, t: f64, theta0: f64, omega0: f64, band: f64) -> Result<()> {
    if !(rho > 0.0 && t > rho && omega0 > 0.0) {
        return Err(Error::Domain(
            "the half-plane form needs rho > 0, t > rho, omega0 > 0".into(),
        ));
    }
    if !(0.0..=2.0 * PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, 2pi]")));
    }
    for psi in [theta - theta0, theta + theta0] {
        let d = psi - PI;
        let r = (d - 2.0 * PI * (d / (2.0 * PI)).round()).abs();
        if r <= band.max(1e-9) {
            return Err(Error::Domain(format!(
                "theta = {theta} on an optical boundary of theta0 = {theta0}"
            )));
        }
    }
    Ok(())
}

fn s_term(rho: f64, psi: f64, a: f64, omega0: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let sg = (PI - psi).signum();
    let pre = sg * (rho * (1.0 + psi.cos())).sqrt();
    let root = (2.0 * rho).sqrt();
    let cp = psi.cos();
    let ro = c(rho * omega0, 0.0);
    let g =
        |b: f64| exp_i_cosh(ro, c(b, 0.0)) * (root * (b / 2.0).cosh() / (rho * (b.cosh() + cp)));
    let lf = |b: f64| rho * omega0 * b.sinh();
    Ok(integrate_oscillatory_finite(g, 0.0, a, lf, spec)?.scale(c(pre, 0.0)))
}

fn hewett_s(
    rho: f64,
    theta: f64,
    t: f64,
    theta0: f64,
    omega0: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let a = ac(t / rho);
    let sum = if theta0 == 0.0 {
        s_term(rho, theta, a, omega0, spec)?
    } else {
        s_term(rho, theta - theta0, a, omega0, spec)?
            + s_term(rho, theta + theta0, a, omega0, spec)?
    };
    Ok(sum.scale(Complex64::from_polar(1.0, -omega0 * t) / (2.0 * PI)))
}

/// Hewett's diffracted field `Phi_d` for the half-plane and Heaviside
/// incidence from direction `theta0`.
///
/// The s-integral form is used with a leading `+` sign; the printed `-` makes
/// it the negative of the beta form (see [`hewett_phi_d_as_printed`]).
pub fn hewett_phi_d(
    rho: f64,
    theta: f64,
    t: f64,
    theta0: f64,
    omega0: f64,
    route: HewettRoute,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_hewett(rho, theta, t, theta0, omega0, spec.band)?;
    match route {
        HewettRoute::SIntegral => hewett_s(rho, theta, t, theta0, omega0, spec),
        HewettRoute::BetaIntegral => {
            let a = ac(t / rho);
            let alpha = theta0 + PI;
            let ro = c(rho * omega0, 0.0);
            let g = |b: f64| {
                exp_i_cosh(ro, c(b, 0.0))
                    * b_halfplane(alpha, c(b, 0.0), theta).unwrap_or(c(f64::NAN, 0.0))
            };
            let lf = |b: f64| rho * omega0 * b.sinh().abs();
            let left = integrate_oscillatory_finite(g, -a, 0.0, lf, spec)?;
            let both = left + integrate_oscillatory_finite(g, 0.0, a, lf, spec)?;
            let half = if theta0 == 0.0 { 0.5 } else { 1.0 };
            Ok(both.scale(I * Complex64::from_polar(half, -omega0 * t) / (2.0 * PI)))
        }
    }
}

/// The s-integral form with the sign exactly as usually printed.
pub fn hewett_phi_d_as_printed(
    rho: f64,
    theta: f64,
    t: f64,
    theta0: f64,
    omega0: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_hewett(rho, theta, t, theta0, omega0, spec.band)?;
    Ok(-hewett_s(rho, theta, t, theta0, omega0, spec)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlaneReport {
    pub rho: f64,
    pub theta: f64,
    pub t: f64,
    pub theta0: f64,
    pub u_d: Complex64,
    pub phi_d_s: Complex64,
    pub phi_d_beta: Complex64,
    /// 2 at grazing incidence, 1 otherwise.
    pub factor: f64,
    /// `|u_d - factor * Phi_d|` for the s route.
    pub deviation_s: f64,
    pub deviation_beta: f64,
    /// `|Phi_d(s) - Phi_d(beta)|`.
    pub route_gap: f64,
}

impl HalfPlaneReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviation_s.max(self.deviation_beta)
    }
}

/// Compares `u_d` of the `phi = 0` scene with Hewett's `Phi_d`.
pub fn halfplane_compare(
    alpha: f64,
    p: &PolarPoint,
    t: f64,
    omega0: f64,
    spec: &QuadratureSpec,
) -> Result<HalfPlaneReport> {
    let scene = WedgeScene::half_plane(alpha, omega0)?;
    let theta0 = alpha - PI;
    let u = fields::u_d(&scene, &Profile::heaviside(), p, t, spec)?.value;
    let s = hewett_phi_d(
        p.rho,
        p.theta,
        t,
        theta0,
        omega0,
        HewettRoute::SIntegral,
        spec,
    )?
    .value;
    let b = hewett_phi_d(
        p.rho,
        p.theta,
        t,
        theta0,
        omega0,
        HewettRoute::BetaIntegral,
        spec,
    )?
    .value;
    let factor = if theta0 == 0.0 { 2.0 } else { 1.0 };
    Ok(HalfPlaneReport {
        rho: p.rho,
        theta: p.theta,
        t,
        theta0,
        u_d: u,
        phi_d_s: s,
        phi_d_beta: b,
        factor,
        deviation_s: (u - s * factor).norm(),
        deviation_beta: (u - b * factor).norm(),
        route_gap: (s - b).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_breaks;

    fn a_d_literal_check(
        scene: &WedgeScene,
        p: &PolarPoint,
        b: f64,
        spec: &QuadratureSpec,
    ) -> Result<Estimate> {
        let ro = c(scene.omega0() * p.rho, 0.0);
        let g =
            |x: f64| exp_i_cosh(ro, c(x, 0.0)) * crate::kernels::z_raw(scene, c(x, 0.0), p.theta);
        integrate_breaks(g, &[-b, 0.0, b], spec)
    }

    #[test]
    fn sum_and_contour_routes_agree() {
        let spec = QuadratureSpec::tight();
        let s = WedgeScene::reference();
        for &(rho, theta) in &[(1.0, 3.0), (0.5, 2.0), (2.0, 5.9)] {
            let p = PolarPoint::new(&s, rho, theta).unwrap();
            let a = a_components(&s, &p, &spec).unwrap();
            let b = a_inf_contour(&s, &p, &spec).unwrap();
            assert!(
                (a.a_inf - b.value).norm() < 1e-10,
                "{} vs {}",
                a.a_inf,
                b.value
            );
        }
    }

    #[test]
    fn sector_two_has_no_reflection() {
        let s = WedgeScene::reference();
        let p = PolarPoint::new(&s, 1.0, PI).unwrap();
        let a = a_components(&s, &p, &QuadratureSpec::default()).unwrap();
        assert_eq!(a.a_r, c(0.0, 0.0));
        assert!((a.a_in.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_is_the_complement_of_the_window() {
        let spec = QuadratureSpec::tight();
        let s = WedgeScene::reference();
        let p = PolarPoint::new(&s, 1.0, 3.3).unwrap();
        let full = a_components(&s, &p, &spec).unwrap().a_d;
        for t in [1.2, 3.0, 20.0] {
            let at = a_d_time(&s, &Profile::heaviside(), &p, t, &spec)
                .unwrap()
                .value;
            let r = r_d(&s, &p, t, &spec).unwrap().value;
            assert!((full - at - r).norm() < 1e-11);
        }
    }

    #[test]
    fn e_p_small_frequency_limit() {
        let spec = QuadratureSpec::tight();
        let (rho, t, p) = (1e-30, 3e-30, 0.8);
        let v = e_p(rho, t, p, 1.0, &spec).unwrap().value;
        let expect = (-p * ac(t / rho)).exp() / p;
        assert!((v - expect).norm() < 1e-8, "{v} vs {expect}");
    }

    #[test]
    fn e_p_leading_order() {
        let spec = QuadratureSpec::tight();
        let (rho, p, w0) = (1.0f64, 2.0 / 3.0, 1.0);
        let lead = -rho.powf(p) / (2f64.powf(p) * I * w0);
        let err = |t: f64| {
            (e_p(rho, t, p, w0, &spec).unwrap().value
                * t.powf(p + 1.0)
                * Complex64::from_polar(1.0, -w0 * t)
                - lead)
                .norm()
        };
        assert!(err(400.0) < err(50.0));
        assert!(err(400.0) < 1e-2 * lead.norm());
    }

    #[test]
    fn prediction_exponents_follow_q() {
        let s = WedgeScene::reference();
        let p = PolarPoint::new(&s, 1.0, 3.0).unwrap();
        let r = rate_prediction(&s, &p);
        assert!((r.re_exponent + 8.0 / 3.0).abs() < 1e-14);
        assert!((r.im_exponent + 5.0 / 3.0).abs() < 1e-14);
        let l = rate_prediction_leading(&s, &p);
        assert_eq!(l.order, 2);
    }

    #[test]
    fn half_plane_prediction_magnitude() {
        let s = WedgeScene::half_plane(PI, 1.0).unwrap();
        for &(rho, theta) in &[(1.0, 1.0), (2.0, 4.0)] {
            let p = PolarPoint::new(&s, rho, theta).unwrap();
            let r = rate_prediction(&s, &p);
            let expect = (2.0 * rho).sqrt() * (theta / 2.0).cos() / PI;
            assert!(
                (r.im_coeff - expect).abs() < 1e-12,
                "{} vs {expect}",
                r.im_coeff
            );
        }
    }

    #[test]
    fn asy_b_remainder_is_fourth_order() {
        let r1 = asy_b_remainder(2.0 / 3.0, 1.0, 20.0);
        let r2 = asy_b_remainder(2.0 / 3.0, 1.0, 40.0);
        assert!(((r1 / r2).log2() - 4.0).abs() < 0.2);
    }

    #[test]
    fn hewett_grazing_doubling() {
        let spec = QuadratureSpec::tight();
        let s = WedgeScene::half_plane(PI, 1.0).unwrap();
        let p = PolarPoint::new(&s, 1.3, 2.0).unwrap();
        let r = halfplane_compare(PI, &p, 4.0, 1.0, &spec).unwrap();
        assert!(r.max_deviation() < 1e-10, "{r:?}");
        let printed = hewett_phi_d_as_printed(1.3, 2.0, 4.0, 0.0, 1.0, &spec)
            .unwrap()
            .value;
        assert!((printed + r.phi_d_s).norm() < 1e-14);
    }

    #[test]
    fn literal_window_matches_middle() {
        let spec = QuadratureSpec::tight();
        let s = WedgeScene::reference();
        let p = PolarPoint::new(&s, 0.8, 2.5).unwrap();
        let lit = a_d_literal_check(&s, &p, 0.7, &spec).unwrap().value;
        let m = middle(
            &s,
            p.theta,
            Kernel::Z,
            p.rho,
            1.0,
            0.7,
            Route::Complement,
            &spec,
        )
        .unwrap()
        .value;
        assert!((lit - m).norm() < 1e-11);
    }

    #[test]
    fn residual_keeps_its_rate_at_large_t() {
        let spec = QuadratureSpec::tight();
        let s = WedgeScene::derive(PI / 3.0, PI / 4.0, 1.0).unwrap();
        let p = PolarPoint::new(&s, 1.0, 4.5).unwrap();
        let pred = rate_prediction(&s, &p);
        for t in [8.0e3, 2.0e4, 5.0e4] {
            let r = r_d(&s, &p, t, &spec).unwrap().value;
            let scaled = r.norm() * t.powf(-pred.im_exponent);
            assert!(
                (scaled / pred.im_coeff.abs() - 1.0).abs() < 0.05,
                "t={t}: {scaled}"
            );
        }
    }
}
