//! Time-domain fields `u_in`, `u_r`, `u_d`, `u` and the frequency-domain
//! objects `J_d`, `u_hat_d`, `u_hat_s`, `w_d`.
//!
//! Real-line integrals of `e^{i rho omega cosh(beta)} Z_N(beta + i theta)` are
//! never evaluated on the literal real axis when they oscillate: the poles of
//! `Z_N(. + i theta)` all sit on the imaginary axis, so the path is bent into
//! the half-strips where the exponential decays.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{ac, PolarPoint, WedgeScene};
use crate::kernels::{dz_raw, exp_i_cosh, exp_minus_sinh, h_nn_raw, z_raw};
use crate::profiles::{f_eval, g1_hat, Profile, ProfileKind};
use crate::quadrature::{
    integrate_breaks, integrate_contour, integrate_decaying, integrate_oscillatory_finite,
    integrate_ray, integrate_segment_graded, phase_breaks, ContourPath, Estimate, QuadratureSpec,
    Ray,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Which kernel multiplies the phase factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    Z,
    /// `d/dtheta Z_N(beta + i theta)`
    DZ,
}

pub(crate) fn kernel_fn(
    scene: &WedgeScene,
    theta: f64,
    k: Kernel,
) -> impl Fn(Complex64) -> Complex64 + '_ {
    move |b| match k {
        Kernel::Z => z_raw(scene, b, theta),
        Kernel::DZ => dz_raw(scene, b, theta),
    }
}

/// Where the bent paths leave the real axis.
const BEND: f64 = 1.0;

/// `int_R e^{i rho omega cosh(beta)} K(beta) d(beta)` for `omega` in the closed
/// upper half-plane.
pub(crate) fn full_line(
    scene: &WedgeScene,
    theta: f64,
    k: Kernel,
    rho: f64,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if omega.im < 0.0 {
        return Err(Error::Domain(
            "omega must lie in the closed upper half-plane".into(),
        ));
    }
    let kern = kernel_fn(scene, theta, k);
    let ro = omega * rho;
    if ro.norm() == 0.0 {
        return integrate_decaying(|x| kern(c(x, 0.0)), 2.0 * scene.q(), spec);
    }
    let g = |b: Complex64| exp_i_cosh(ro, b) * kern(b);
    let chi = omega.arg();
    let psi_r = PI / 2.0 - chi;
    let psi_l = chi - PI / 2.0;
    let decay = 2.0 * scene.q();
    let mut total = integrate_breaks(|x| g(c(x, 0.0)), &[-BEND, 0.0, BEND], spec)?;
    let scale = 1.0 / (ro.norm() * BEND.sinh());
    let top_r = c(BEND, psi_r);
    total += integrate_segment_graded(&g, c(BEND, 0.0), top_r, scale, spec)?;
    total += integrate_ray(&g, Ray::new(top_r, c(1.0, 0.0)), decay, spec)?;
    let top_l = c(-BEND, psi_l);
    total += -integrate_ray(&g, Ray::new(top_l, c(-1.0, 0.0)), decay, spec)?;
    total += -integrate_segment_graded(&g, c(-BEND, 0.0), top_l, scale, spec)?;
    Ok(total)
}

/// `int_{|beta| > b} e^{i rho omega0 cosh(beta)} K(beta) d(beta)` for real
/// `omega0 > 0`, on paths that climb to `Im beta = ±pi/2`.
pub(crate) fn tails(
    scene: &WedgeScene,
    theta: f64,
    k: Kernel,
    rho: f64,
    omega0: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if b < 0.25 {
        return Err(Error::Domain(format!(
            "tail start {b} too close to the pole axis"
        )));
    }
    let kern = kernel_fn(scene, theta, k);
    let ro = c(rho * omega0, 0.0);
    let g = |z: Complex64| exp_i_cosh(ro, z) * kern(z);
    let decay = 2.0 * scene.q();
    let h = PI / 2.0;
    let scale = 1.0 / (rho * omega0 * b.sinh());
    let mut total = integrate_segment_graded(&g, c(b, 0.0), c(b, h), scale, spec)?;
    total += integrate_ray(&g, Ray::new(c(b, h), c(1.0, 0.0)), decay, spec)?;
    total += -integrate_ray(&g, Ray::new(c(-b, -h), c(-1.0, 0.0)), decay, spec)?;
    total += -integrate_segment_graded(&g, c(-b, 0.0), c(-b, -h), scale, spec)?;
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Route {
    Auto,
    Direct,
    #[cfg_attr(not(test), allow(dead_code))]
    Complement,
}

/// `int_{-b}^{b} e^{i rho omega0 cosh(beta)} K(beta) d(beta)`.
pub(crate) fn middle(
    scene: &WedgeScene,
    theta: f64,
    k: Kernel,
    rho: f64,
    omega0: f64,
    b: f64,
    route: Route,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if b <= 0.0 {
        return Ok(Estimate::zero());
    }
    let direct = match route {
        Route::Direct => true,
        Route::Complement => false,
        Route::Auto => b <= BEND,
    };
    if direct {
        let kern = kernel_fn(scene, theta, k);
        let ro = c(rho * omega0, 0.0);
        let g = |x: f64| exp_i_cosh(ro, c(x, 0.0)) * kern(c(x, 0.0));
        let lf = |x: f64| rho * omega0 * x.sinh().abs();
        let mut breaks = phase_breaks(-b, 0.0, &lf, spec)?;
        breaks.pop();
        breaks.extend(phase_breaks(0.0, b, &lf, spec)?);
        integrate_breaks(g, &breaks, spec)
    } else {
        Ok(full_line(scene, theta, k, rho, c(omega0, 0.0), spec)?
            - tails(scene, theta, k, rho, omega0, b, spec)?)
    }
}

fn check_point(scene: &WedgeScene, p: &PolarPoint, spec: &QuadratureSpec) -> Result<()> {
    p.validate(scene)?;
    scene.check_noncritical(p.theta, spec.band)
}

/// Incident plane wave.
pub fn u_in(scene: &WedgeScene, profile: &Profile, p: &PolarPoint, t: f64) -> Complex64 {
    plane_wave(scene.omega0(), profile, p, t, scene.alpha())
}

fn plane_wave(omega0: f64, profile: &Profile, p: &PolarPoint, t: f64, dir: f64) -> Complex64 {
    let proj = p.rho * (p.theta - dir).cos();
    let f = f_eval(profile, t - proj);
    if f == 0.0 {
        return c(0.0, 0.0);
    }
    Complex64::from_polar(f, omega0 * (proj - t))
}

fn plane_wave_dtheta(
    omega0: f64,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    dir: f64,
) -> Complex64 {
    let proj = p.rho * (p.theta - dir).cos();
    let dproj = -p.rho * (p.theta - dir).sin();
    let s = t - proj;
    let f = f_eval(profile, s);
    let fp = match profile.kind {
        ProfileKind::SmoothRamp => crate::profiles::f_prime_eval(profile, s).unwrap_or(0.0),
        ProfileKind::Heaviside => 0.0,
    };
    Complex64::from_polar(1.0, omega0 * (proj - t)) * (I * omega0 * dproj * f - fp * dproj)
}

/// Reflected plane wave `l` (1 or 2) irrespective of sector.
pub fn u_r_wave(scene: &WedgeScene, profile: &Profile, l: u8, p: &PolarPoint, t: f64) -> Complex64 {
    let dir = if l == 1 {
        scene.theta1()
    } else {
        scene.theta2()
    };
    plane_wave(scene.omega0(), profile, p, t, dir)
}

fn reflected_index(scene: &WedgeScene, theta: f64) -> Option<u8> {
    if theta <= scene.theta1() {
        Some(1)
    } else if theta >= scene.theta2() {
        Some(2)
    } else {
        None
    }
}

/// Reflected field: wave 1 on `[phi, theta1]`, wave 2 on `[theta2, 2pi]`, zero
/// between.
pub fn u_r(scene: &WedgeScene, profile: &Profile, p: &PolarPoint, t: f64) -> Complex64 {
    match reflected_index(scene, p.theta) {
        Some(l) => u_r_wave(scene, profile, l, p, t),
        None => c(0.0, 0.0),
    }
}

/// `du_r/dtheta`; the distributional part at the front of a Heaviside wave is
/// dropped.
pub fn u_r_dtheta(scene: &WedgeScene, profile: &Profile, p: &PolarPoint, t: f64) -> Complex64 {
    match reflected_index(scene, p.theta) {
        Some(1) => plane_wave_dtheta(scene.omega0(), profile, p, t, scene.theta1()),
        Some(_) => plane_wave_dtheta(scene.omega0(), profile, p, t, scene.theta2()),
        None => c(0.0, 0.0),
    }
}

fn diffracted(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    k: Kernel,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_point(scene, p, spec)?;
    if scene.is_degenerate() {
        return Ok(Estimate::zero());
    }
    let w0 = scene.omega0();
    let pre = I * Complex64::from_polar(1.0, -w0 * t) / (4.0 * scene.big_phi());
    let rho = p.rho;
    let theta = p.theta;
    if rho == 0.0 {
        let f = f_eval(profile, t);
        if f == 0.0 {
            return Ok(Estimate::zero());
        }
        let kern = kernel_fn(scene, theta, k);
        let line = integrate_decaying(|x| kern(c(x, 0.0)), 2.0 * scene.q(), spec)?;
        return Ok(line.scale(pre * f));
    }
    let a = ac(t / rho);
    if a == 0.0 {
        return Ok(Estimate::zero());
    }
    let total = match profile.kind {
        ProfileKind::Heaviside => middle(scene, theta, k, rho, w0, a, Route::Auto, spec)?,
        ProfileKind::SmoothRamp => {
            let b = ac((t - profile.s0) / rho);
            let core = middle(scene, theta, k, rho, w0, b, Route::Auto, spec)?;
            let kern = kernel_fn(scene, theta, k);
            let ro = c(rho * w0, 0.0);
            let g = |x: f64| {
                exp_i_cosh(ro, c(x, 0.0)) * kern(c(x, 0.0)) * f_eval(profile, t - rho * x.cosh())
            };
            let lf = |x: f64| rho * w0 * x.sinh().abs();
            if b == 0.0 {
                let left = integrate_oscillatory_finite(g, -a, 0.0, lf, spec)?;
                left + integrate_oscillatory_finite(g, 0.0, a, lf, spec)?
            } else {
                let right = integrate_oscillatory_finite(g, b, a, lf, spec)?;
                core + right + integrate_oscillatory_finite(g, -a, -b, lf, spec)?
            }
        }
    };
    Ok(total.scale(pre))
}

/// Edge-diffracted wave.
pub fn u_d(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    diffracted(scene, profile, p, t, Kernel::Z, spec)
}

/// `du_d/dtheta`.
pub fn u_d_dtheta(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    diffracted(scene, profile, p, t, Kernel::DZ, spec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub u_in: Complex64,
    pub u_r: Complex64,
    pub u_d: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue {
    pub value: Complex64,
    pub components: Option<Components>,
    pub error_estimate: f64,
}

/// Total field `u_in + u_r + u_d`.
pub fn u_total(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<FieldValue> {
    let d = u_d(scene, profile, p, t, spec)?;
    let comps = Components {
        u_in: u_in(scene, profile, p, t),
        u_r: u_r(scene, profile, p, t),
        u_d: d.value,
    };
    Ok(FieldValue {
        value: comps.u_in + comps.u_r + comps.u_d,
        components: Some(comps),
        error_estimate: d.error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Integral of `e^{-rho omega sinh} H_N` over the two horizontal lines.
    ContourC0,
    /// Real-line integral of `e^{i rho omega cosh} Z_N`.
    RealLine,
    /// Integral over the contour used for the scattered field.
    ContourC,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryValue {
    pub omega: Complex64,
    pub value: Complex64,
    pub error: f64,
    pub representation: Representation,
}

fn c0_paths() -> [ContourPath; 2] {
    let g1 = c(0.0, -PI / 2.0);
    let g2 = c(0.0, -2.5 * PI);
    [
        ContourPath::new(
            Some(Ray::new(g1, c(1.0, 0.0))),
            vec![],
            Some(Ray::new(g1, c(-1.0, 0.0))),
        )
        .expect("valid path"),
        ContourPath::new(
            Some(Ray::new(g2, c(-1.0, 0.0))),
            vec![],
            Some(Ray::new(g2, c(1.0, 0.0))),
        )
        .expect("valid path"),
    ]
}

/// Contour `C = C1 ∪ C2` of the scattered-field representation.
pub fn contour_c() -> [ContourPath; 2] {
    let (a, b) = (c(1.0, -PI / 2.0), c(1.0, -2.5 * PI));
    let c1 = ContourPath::new(
        Some(Ray::new(a, c(1.0, 0.0))),
        vec![(a, b)],
        Some(Ray::new(b, c(1.0, 0.0))),
    )
    .expect("valid path");
    let (a2, b2) = (c(-1.0, -2.5 * PI), c(-1.0, -PI / 2.0));
    let c2 = ContourPath::new(
        Some(Ray::new(a2, c(-1.0, 0.0))),
        vec![(a2, b2)],
        Some(Ray::new(b2, c(-1.0, 0.0))),
    )
    .expect("valid path");
    [c1, c2]
}

/// `J_d(rho, theta, omega)` through the requested representation.
pub fn j_d(
    scene: &WedgeScene,
    p: &PolarPoint,
    omega: Complex64,
    rep: Representation,
    spec: &QuadratureSpec,
) -> Result<StationaryValue> {
    check_point(scene, p, spec)?;
    let est = match rep {
        Representation::ContourC0 => {
            if !(omega.im > 0.0) || p.rho == 0.0 {
                return Err(Error::Domain(
                    "the C0 representation needs Im omega > 0 and rho > 0".into(),
                ));
            }
            let ro = omega * p.rho;
            let theta = p.theta;
            let f = |b: Complex64| exp_minus_sinh(ro, b) * h_nn_raw(scene, b + I * theta);
            let decay = p.rho * omega.im;
            let mut total = Estimate::zero();
            for path in c0_paths() {
                total += integrate_contour(f, &path, decay, spec)?;
            }
            total
        }
        Representation::RealLine => full_line(scene, p.theta, Kernel::Z, p.rho, omega, spec)?,
        Representation::ContourC => {
            return Err(Error::Unsupported(
                "J_d has no contour-C representation".into(),
            ));
        }
    };
    Ok(StationaryValue {
        omega,
        value: est.value,
        error: est.error,
        representation: rep,
    })
}

fn check_omega_hat(scene: &WedgeScene, omega: Complex64) -> Result<()> {
    if omega.im < 0.0 {
        return Err(Error::Domain(
            "omega must lie in the closed upper half-plane".into(),
        ));
    }
    if omega.im == 0.0 && omega.re == scene.omega0() {
        return Err(Error::Domain(
            "omega = omega0 on the real axis is a pole".into(),
        ));
    }
    Ok(())
}

/// Fourier-Laplace transform of the diffracted wave.
pub fn u_hat_d(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_omega_hat(scene, omega)?;
    let g1 = g1_hat(profile, scene.omega0(), omega, spec)?;
    let j = j_d(scene, p, omega, Representation::RealLine, spec)?;
    let pre = I / (4.0 * scene.big_phi()) / (omega - scene.omega0());
    let value = pre * g1.value * j.value;
    let error = pre.norm() * (g1.error * j.value.norm() + g1.value.norm() * j.error);
    Ok(Estimate::new(value, error))
}

/// Fourier-Laplace transform of the reflected wave.
pub fn u_hat_r(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_omega_hat(scene, omega)?;
    let dir = if p.theta < scene.theta1() {
        scene.theta1()
    } else if p.theta > scene.theta2() {
        scene.theta2()
    } else {
        return Ok(Estimate::zero());
    };
    let g = crate::profiles::g_hat(profile, scene.omega0(), omega, spec)?;
    Ok(g.scale((I * omega * p.rho * (p.theta - dir).cos()).exp()))
}

/// Scattered field in the frequency domain, through contour `C`.
pub fn u_hat_s(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    p.validate(scene)?;
    if !(omega.im > 0.0) || p.rho == 0.0 {
        return Err(Error::Domain(
            "the scattered-field contour needs Im omega > 0 and rho > 0".into(),
        ));
    }
    let g = crate::profiles::g_hat(profile, scene.omega0(), omega, spec)?;
    let ro = omega * p.rho;
    let theta = p.theta;
    let f = |b: Complex64| exp_minus_sinh(ro, b) * h_nn_raw(scene, b + I * theta);
    let decay = p.rho * omega.im * 1f64.cosh() / 2.0;
    let mut integral = Estimate::zero();
    for path in contour_c() {
        integral += integrate_contour(f, &path, decay, spec)?;
    }
    let incident = -g.value * (I * ro * (theta - scene.alpha()).cos()).exp();
    let scat = integral.scale(I * g.value / (4.0 * scene.big_phi()));
    Ok(Estimate::new(
        incident + scat.value,
        scat.error + g.error * (1.0 + integral.value.norm()),
    ))
}

/// Auxiliary wave `w_d`, the kernel integral against `f'`.
pub fn w_d(
    scene: &WedgeScene,
    profile: &Profile,
    p: &PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !profile.is_smooth() {
        return Err(Error::Unsupported("w_d needs the smooth ramp".into()));
    }
    check_point(scene, p, spec)?;
    let w0 = scene.omega0();
    let pre = I * Complex64::from_polar(1.0, -w0 * t);
    let fp = |s: f64| crate::profiles::f_prime_eval(profile, s).unwrap_or(0.0);
    let kern = kernel_fn(scene, p.theta, Kernel::Z);
    if p.rho == 0.0 {
        let v = fp(t);
        if v == 0.0 {
            return Ok(Estimate::zero());
        }
        return Ok(integrate_decaying(|x| kern(c(x, 0.0)), 2.0 * scene.q(), spec)?.scale(pre * v));
    }
    let a = ac(t / p.rho);
    if a == 0.0 {
        return Ok(Estimate::zero());
    }
    let b = ac((t - profile.s0) / p.rho);
    let ro = c(p.rho * w0, 0.0);
    let rho = p.rho;
    let g = |x: f64| exp_i_cosh(ro, c(x, 0.0)) * kern(c(x, 0.0)) * fp(t - rho * x.cosh());
    let lf = |x: f64| rho * w0 * x.sinh().abs();
    let total = if b == 0.0 {
        integrate_oscillatory_finite(g, -a, 0.0, lf, spec)?
            + integrate_oscillatory_finite(g, 0.0, a, lf, spec)?
    } else {
        integrate_oscillatory_finite(g, -a, -b, lf, spec)?
            + integrate_oscillatory_finite(g, b, a, lf, spec)?
    };
    Ok(total.scale(pre))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> (WedgeScene, QuadratureSpec) {
        (WedgeScene::reference(), QuadratureSpec::tight())
    }

    #[test]
    fn incident_examples() {
        let s = WedgeScene::reference();
        let h = Profile::heaviside();
        let p = PolarPoint::new(&s, 2.0, 3.0).unwrap();
        let proj = 2.0 * (3.0 - s.alpha()).cos();
        assert_eq!(u_in(&s, &h, &p, proj - 0.1), c(0.0, 0.0));
        assert!((u_in(&s, &h, &p, proj + 1.0).norm() - 1.0).abs() < 1e-15);
        let r = Profile::smooth_ramp(0.5).unwrap();
        let o = PolarPoint::new(&s, 0.0, 3.0).unwrap();
        assert!((u_in(&s, &r, &o, 2.0) - Complex64::from_polar(1.0, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn reflected_sector_dispatch() {
        let s = WedgeScene::reference();
        let h = Profile::heaviside();
        let p = PolarPoint::new(&s, 1.0, PI).unwrap();
        assert_eq!(u_r(&s, &h, &p, 10.0), c(0.0, 0.0));
        let q = PolarPoint::new(&s, 1.0, s.phi()).unwrap();
        assert!(u_r(&s, &h, &q, 10.0).norm() <= 1.0 + 1e-15);
        let proj = (s.phi() - s.theta1()).cos();
        assert_eq!(u_r(&s, &h, &q, proj - 0.01), c(0.0, 0.0));
    }

    #[test]
    fn causality_both_profiles() {
        let (s, spec) = reference();
        for prof in [Profile::heaviside(), Profile::smooth_ramp(0.5).unwrap()] {
            let p = PolarPoint::new(&s, 2.0, 3.5).unwrap();
            assert_eq!(u_d(&s, &prof, &p, 1.99, &spec).unwrap().value, c(0.0, 0.0));
        }
    }

    #[test]
    fn middle_routes_agree() {
        let s = WedgeScene::reference();
        let spec = QuadratureSpec::tight();
        for &(rho, theta, b) in &[(1.0, 3.0, 1.5), (0.4, 5.7, 3.0), (2.0, 1.9, 2.2)] {
            let d = middle(&s, theta, Kernel::Z, rho, 1.0, b, Route::Direct, &spec).unwrap();
            let m = middle(&s, theta, Kernel::Z, rho, 1.0, b, Route::Complement, &spec).unwrap();
            assert!(
                (d.value - m.value).norm() < 1e-10,
                "{} vs {}",
                d.value,
                m.value
            );
        }
    }

    #[test]
    fn full_line_deformation_matches_literal_when_damped() {
        // with Im omega large, the literal real line converges fast
        let s = WedgeScene::reference();
        let spec = QuadratureSpec::tight();
        let (rho, theta) = (1.3, 3.4);
        let omega = c(0.7, 2.0);
        let ro = omega * rho;
        let lit = integrate_decaying(
            |x| exp_i_cosh(ro, c(x, 0.0)) * z_raw(&s, c(x, 0.0), theta),
            1.0,
            &spec,
        )
        .unwrap();
        let def = full_line(&s, theta, Kernel::Z, rho, omega, &spec).unwrap();
        assert!((lit.value - def.value).norm() < 1e-11);
    }

    #[test]
    fn degenerate_wedge_is_silent() {
        let s = WedgeScene::derive(PI, 0.3, 1.0).unwrap();
        let p = PolarPoint::new(&s, 1.0, 4.0).unwrap();
        let v = u_d(
            &s,
            &Profile::heaviside(),
            &p,
            5.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(v.value.norm() < 1e-12);
    }

    #[test]
    fn critical_band_rejected() {
        let (s, spec) = reference();
        let p = PolarPoint::new(&s, 1.0, s.theta1() + 1e-8).unwrap();
        assert!(matches!(
            u_d(&s, &Profile::heaviside(), &p, 3.0, &spec),
            Err(Error::CriticalRay { ray: 1, .. })
        ));
    }

    #[test]
    fn stationary_split() {
        let (s, spec) = reference();
        let prof = Profile::smooth_ramp(0.5).unwrap();
        for &(rho, theta) in &[(1.0, 2.0), (0.7, 3.5), (1.5, 5.9)] {
            let p = PolarPoint::new(&s, rho, theta).unwrap();
            let w = c(0.8, 1.0);
            let us = u_hat_s(&s, &prof, &p, w, &spec).unwrap();
            let ur = u_hat_r(&s, &prof, &p, w, &spec).unwrap();
            let ud = u_hat_d(&s, &prof, &p, w, &spec).unwrap();
            assert!(
                (us.value - ur.value - ud.value).norm() < 1e-9,
                "{} vs {}",
                us.value,
                ur.value + ud.value
            );
        }
    }

    #[test]
    fn w_d_causal() {
        let (s, spec) = reference();
        let prof = Profile::smooth_ramp(0.5).unwrap();
        let p = PolarPoint::new(&s, 1.5, 3.0).unwrap();
        assert_eq!(w_d(&s, &prof, &p, 1.4, &spec).unwrap().value, c(0.0, 0.0));
    }

    #[test]
    fn ramp_field_converges_to_heaviside_shape() {
        // for t well past the front both profiles give the same u_d up to a
        // smooth correction that vanishes with s0
        let (s, spec) = reference();
        let p = PolarPoint::new(&s, 1.0, 3.0).unwrap();
        let h = u_d(&s, &Profile::heaviside(), &p, 4.0, &spec)
            .unwrap()
            .value;
        let r = u_d(&s, &Profile::smooth_ramp(1e-4).unwrap(), &p, 4.0, &spec)
            .unwrap()
            .value;
        assert!((h - r).norm() < 1e-3);
    }
}
