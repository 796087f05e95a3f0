//! Malyuzhinets-type kernels of the wedge problem, their pole lattice, the
//! exponential expansion of the shifted Neumann kernel, and the two
//! half-plane kernels.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::WedgeScene;

/// Evaluations closer than this to a pole are rejected.
pub const POLE_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let s = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * s * s, x.exp() * y.sin())
}

/// `e^z`, flushed to zero far in the left half-plane so that huge imaginary
/// parts cannot produce NaN.
pub(crate) fn exp_safe(z: Complex64) -> Complex64 {
    if z.re < -745.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z.exp()
    }
}

/// `e^{i rho omega cosh(beta)}` for any `beta`, returning zero wherever the
/// exponent has a hugely negative real part.
pub(crate) fn exp_i_cosh(rho_omega: Complex64, beta: Complex64) -> Complex64 {
    if rho_omega == Complex64::new(0.0, 0.0) {
        return Complex64::new(1.0, 0.0);
    }
    let x = beta.re;
    if x.abs() < 350.0 {
        return exp_safe(I * rho_omega * beta.cosh());
    }
    // cosh(beta) ~ e^{|x|} e^{i sign(x) y} / 2
    let y = if x > 0.0 { beta.im } else { -beta.im };
    let angle = PI / 2.0 + rho_omega.arg() + y;
    if angle.cos() < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(f64::NAN, f64::NAN)
    }
}

/// `e^{-rho omega sinh(beta)}` with the same far-field guard.
pub(crate) fn exp_minus_sinh(rho_omega: Complex64, beta: Complex64) -> Complex64 {
    if rho_omega == Complex64::new(0.0, 0.0) {
        return Complex64::new(1.0, 0.0);
    }
    let x = beta.re;
    if x.abs() < 350.0 {
        return exp_safe(-rho_omega * beta.sinh());
    }
    // sinh(beta) ~ sign(x) e^{|x|} e^{i sign(x) y} / 2
    let (sign, y) = if x > 0.0 {
        (1.0, beta.im)
    } else {
        (-1.0, -beta.im)
    };
    let w = -rho_omega * sign * Complex64::from_polar(1.0, y);
    if w.re < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(f64::NAN, f64::NAN)
    }
}

/// Hyperbolic cotangent, accurate for large `|Re z|` and near the poles.
pub fn coth(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -coth(-z);
    }
    let y = z.im - PI * (z.im / PI).round();
    let m = expm1(Complex64::new(-2.0 * z.re, -2.0 * y));
    (2.0 + m) / (-m)
}

/// Hyperbolic cosecant with the same reductions.
pub fn csch(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -csch(-z);
    }
    let k = (z.im / PI).round();
    let y = z.im - PI * k;
    let parity = if (k as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let w = Complex64::new(z.re, y);
    let m = expm1(-2.0 * w);
    parity * 2.0 * exp_safe(-w) / (-m)
}

/// Distance from `w` to the lattice `i * spacing * Z`.
fn lattice_distance(w: Complex64, spacing: f64) -> (f64, Complex64) {
    let n = (w.im / spacing).round();
    let pole = Complex64::new(0.0, n * spacing);
    ((w - pole).norm(), pole)
}

fn check_pole(w: Complex64, spacing: f64, offset: Complex64) -> Result<()> {
    let (d, p) = lattice_distance(w, spacing);
    if d < POLE_TOL {
        Err(Error::PoleProximity {
            pole: p - offset,
            distance: d,
        })
    } else {
        Ok(())
    }
}

/// Arguments `w` of the two terms `coth(q w)` in the Neumann kernel.
fn hn_args(scene: &WedgeScene, beta: Complex64) -> (Complex64, Complex64) {
    let a = scene.alpha();
    (beta + I * (PI / 2.0 - a), beta + I * (a - 1.5 * PI))
}

fn check_hn_poles(scene: &WedgeScene, beta: Complex64) -> Result<()> {
    let spacing = 2.0 * scene.big_phi();
    let (w1, w2) = hn_args(scene, beta);
    check_pole(w1, spacing, w1 - beta)?;
    check_pole(w2, spacing, w2 - beta)
}

/// Neumann-Neumann kernel `H_N`.
pub fn h_nn(scene: &WedgeScene, beta: Complex64) -> Result<Complex64> {
    check_hn_poles(scene, beta)?;
    Ok(h_nn_raw(scene, beta))
}

pub(crate) fn h_nn_raw(scene: &WedgeScene, beta: Complex64) -> Complex64 {
    let q = scene.q();
    let (w1, w2) = hn_args(scene, beta);
    coth(q * w1) + coth(q * w2)
}

/// Dirichlet-Dirichlet kernel.
pub fn h_dd(scene: &WedgeScene, beta: Complex64) -> Result<Complex64> {
    check_hn_poles(scene, beta)?;
    let q = scene.q();
    let (w1, w2) = hn_args(scene, beta);
    Ok(coth(q * w1) - coth(q * w2))
}

/// Dirichlet-Neumann kernel.
pub fn h_dn(scene: &WedgeScene, beta: Complex64) -> Result<Complex64> {
    check_hn_poles(scene, beta)?;
    let q = scene.q();
    let (w1, w2) = hn_args(scene, beta);
    Ok(csch(q * w1) + csch(q * w2))
}

/// Shifted kernel `Z_N(beta + i theta) = H_N(beta + i theta - 5i pi/2) - H_N(beta + i theta - i pi/2)`.
///
/// Only pole proximity is checked here; the critical-ray band is enforced
/// by the field evaluators, which know the quadrature settings.
pub fn z_nn(scene: &WedgeScene, beta: Complex64, theta: f64) -> Result<Complex64> {
    let spacing = 2.0 * scene.big_phi();
    for (_, c) in scene.kernel_terms() {
        let w = beta + I * (theta - c);
        check_pole(w, spacing, w - beta)?;
    }
    Ok(z_raw(scene, beta, theta))
}

pub(crate) fn z_raw(scene: &WedgeScene, beta: Complex64, theta: f64) -> Complex64 {
    if scene.is_degenerate() {
        return Complex64::new(0.0, 0.0);
    }
    let q = scene.q();
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, c) in scene.kernel_terms() {
        acc += s * coth(q * (beta + I * (theta - c)));
    }
    acc
}

/// `d/dtheta Z_N(beta + i theta)`.
pub fn z_nn_dtheta(scene: &WedgeScene, beta: Complex64, theta: f64) -> Result<Complex64> {
    z_nn(scene, beta, theta)?;
    Ok(dz_raw(scene, beta, theta))
}

pub(crate) fn dz_raw(scene: &WedgeScene, beta: Complex64, theta: f64) -> Complex64 {
    if scene.is_degenerate() {
        return Complex64::new(0.0, 0.0);
    }
    let q = scene.q();
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, c) in scene.kernel_terms() {
        let k = coth(q * (beta + I * (theta - c)));
        acc += s * (1.0 - k * k);
    }
    acc * I * q
}

/// Rectangle `[re_min, re_max] x [im_min, im_max]` in the beta-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BetaWindow {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// Poles of `H_N(beta + i theta)` inside a window.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleLattice {
    pub theta: f64,
    pub poles: Vec<Complex64>,
}

impl PoleLattice {
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.poles.iter().any(|p| (p - z).norm() <= tol)
    }
}

pub fn poles(scene: &WedgeScene, theta: f64, window: BetaWindow) -> PoleLattice {
    let mut poles = Vec::new();
    if window.re_min <= 0.0 && window.re_max >= 0.0 {
        let period = 2.0 * scene.big_phi();
        let a = scene.alpha();
        // P1 = { i(-pi/2 + alpha - theta) + 2ik Phi } and its reflection
        for base in [-PI / 2.0 + a - theta, 1.5 * PI - a - theta] {
            let k_lo = ((window.im_min - base) / period).floor() as i64 - 1;
            let k_hi = ((window.im_max - base) / period).ceil() as i64 + 1;
            for k in k_lo..=k_hi {
                let z = Complex64::new(0.0, base + k as f64 * period);
                if window.contains(z) {
                    poles.push(z);
                }
            }
        }
    }
    poles.sort_by(|x, y| x.im.total_cmp(&y.im));
    PoleLattice { theta, poles }
}

/// Number of coefficient pairs kept in [`ZnExpansion`].
pub const ZN_TERMS: usize = 6;

/// Coefficients of `Z_N(beta + i theta) = i b1 sum_k z_k^± e^{∓2kq beta}` for
/// `±beta > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZnExpansion {
    pub theta: f64,
    pub q: f64,
    pub b1: f64,
    pub z_plus: [Complex64; ZN_TERMS],
    pub z_minus: [Complex64; ZN_TERMS],
    pub z: [f64; ZN_TERMS],
}

impl ZnExpansion {
    /// Smallest `|beta|` at which the truncated series is used.
    pub fn core_radius(&self) -> f64 {
        LN_2 / self.q
    }
}

/// Expansion coefficients from the geometric series of `coth`, exact for
/// every order.
pub fn zn_expansion(scene: &WedgeScene, theta: f64) -> ZnExpansion {
    let q = scene.q();
    let b1 = 4.0 * (PI * PI / scene.big_phi()).sin();
    let mut z_plus = [Complex64::new(0.0, 0.0); ZN_TERMS];
    let mut z_minus = [Complex64::new(0.0, 0.0); ZN_TERMS];
    let mut z = [0.0; ZN_TERMS];
    if b1.abs() > 1e-12 {
        let ib1 = I * b1;
        for k in 1..=ZN_TERMS {
            let kk = 2.0 * k as f64 * q;
            let mut zp = Complex64::new(0.0, 0.0);
            let mut zm = Complex64::new(0.0, 0.0);
            for (s, c) in scene.kernel_terms() {
                let phase = kk * (theta - c);
                zp += 2.0 * s * Complex64::from_polar(1.0, -phase);
                zm -= 2.0 * s * Complex64::from_polar(1.0, phase);
            }
            z_plus[k - 1] = zp / ib1;
            z_minus[k - 1] = zm / ib1;
            z[k - 1] = (z_plus[k - 1] + z_minus[k - 1]).re;
        }
    }
    ZnExpansion {
        theta,
        q,
        b1,
        z_plus,
        z_minus,
        z,
    }
}

/// Truncated series `i b1 sum_{k <= terms} z_k^± e^{∓2kq beta}`.
pub fn zn_series_eval(exp: &ZnExpansion, beta: f64, terms: usize) -> Result<Complex64> {
    if !(1..=ZN_TERMS).contains(&terms) {
        return Err(Error::Domain(format!(
            "terms = {terms} outside 1..={ZN_TERMS}"
        )));
    }
    if beta.abs() < exp.core_radius() {
        return Err(Error::Domain(format!(
            "|beta| = {} below ln2/q = {}",
            beta.abs(),
            exp.core_radius()
        )));
    }
    let (coeffs, sign) = if beta > 0.0 {
        (&exp.z_plus, -1.0)
    } else {
        (&exp.z_minus, 1.0)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in coeffs.iter().take(terms).enumerate() {
        acc += c * (sign * 2.0 * (k + 1) as f64 * exp.q * beta).exp();
    }
    Ok(I * exp.b1 * acc)
}

/// Closed form of the first coefficient `z_1`.
pub fn z1_closed_form(scene: &WedgeScene, theta: f64) -> f64 {
    let r = PI / scene.big_phi();
    4.0 * (r * (2.0 * PI - theta)).cos() * (r * (PI - scene.alpha())).cos()
}

fn check_sinh_half(w: Complex64, offset: Complex64) -> Result<()> {
    // sinh(w/2) vanishes on 2 pi i Z
    check_pole(w, 2.0 * PI, offset)
}

/// Half-plane kernel `A`.
pub fn a_halfplane(alpha: f64, beta: Complex64, theta: f64) -> Result<Complex64> {
    let shifts = [theta + alpha, theta - alpha, -theta - alpha, -theta + alpha];
    for s in shifts {
        check_sinh_half(beta + I * s, I * s)?;
    }
    let sh = |z: Complex64| (0.5 * z).sinh();
    let ch = |z: Complex64| (0.5 * z).cosh();
    let bp = beta + I * theta;
    let bm = beta - I * theta;
    let ia = I * alpha;
    let t1 = ch(bp) / (sh(bp + ia) * sh(bp - ia));
    let t2 = ch(bm) / (sh(bm - ia) * sh(bm + ia));
    Ok(-sh(ia) * 0.5 * (t1 + t2))
}

/// Half-plane kernel `B`.
pub fn b_halfplane(alpha: f64, beta: Complex64, theta: f64) -> Result<Complex64> {
    for s in [theta - alpha, theta + alpha] {
        check_sinh_half(beta + I * s, I * s)?;
        check_sinh_half(beta - I * s, -I * s)?;
    }
    let cb = beta.cosh();
    let term = |psi: f64| (I * psi * 0.5).sinh() / (cb - (I * psi).cosh());
    Ok((term(theta - alpha) - term(theta + alpha)) * (0.5 * beta).cosh())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coth_matches_definition() {
        for z in [
            c(0.3, 0.2),
            c(-1.2, 2.9),
            c(4.0, -7.0),
            c(0.01, 1.4),
            c(-0.5, 100.0),
        ] {
            let direct = z.cosh() / z.sinh();
            assert!(
                (coth(z) - direct).norm() < 1e-12 * direct.norm().max(1.0),
                "{z}"
            );
            let d2 = 1.0 / z.sinh();
            assert!((csch(z) - d2).norm() < 1e-12 * d2.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn coth_far_field() {
        assert_eq!(coth(c(800.0, 0.3)), c(1.0, 0.0));
        assert_eq!(coth(c(-800.0, 0.3)), c(-1.0, 0.0));
        assert_eq!(csch(c(800.0, 0.3)), c(0.0, 0.0));
        let small = coth(c(1e-10, 0.0));
        assert!((small.re - 1e10).abs() < 1e-3);
    }

    #[test]
    fn h_nn_limit() {
        let s = WedgeScene::reference();
        let v = h_nn(&s, c(60.0, 0.0)).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn h_dd_h_dn_decay() {
        let s = WedgeScene::reference();
        assert!(h_dd(&s, c(60.0, 0.4)).unwrap().norm() < 1e-15);
        let a = h_dn(&s, c(20.0, 0.4)).unwrap().norm();
        let b = h_dn(&s, c(40.0, 0.4)).unwrap().norm();
        let rate = (b / a).ln() / 20.0;
        assert!((rate + s.q()).abs() < 1e-5, "{rate}");
    }

    #[test]
    fn pole_rejected() {
        let s = WedgeScene::reference();
        // first term pole at beta = i(alpha - pi/2)
        let p = c(0.0, s.alpha() - PI / 2.0);
        assert!(matches!(h_nn(&s, p), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn z_matches_shifted_h() {
        let s = WedgeScene::reference();
        for &(b, th) in &[(0.3, 2.5), (-1.7, 4.0), (2.2, 1.8)] {
            let beta = c(b, 0.1);
            let x = beta + I * th;
            let direct = h_nn(&s, x - I * 2.5 * PI).unwrap() - h_nn(&s, x - I * 0.5 * PI).unwrap();
            let z = z_nn(&s, beta, th).unwrap();
            assert!((z - direct).norm() < 1e-12, "{z} vs {direct}");
        }
    }

    #[test]
    fn dz_matches_finite_difference() {
        let s = WedgeScene::reference();
        let (beta, th, h) = (c(0.7, 0.0), 2.4, 1e-5);
        let fd = (z_raw(&s, beta, th + h) - z_raw(&s, beta, th - h)) / (2.0 * h);
        assert!((dz_raw(&s, beta, th) - fd).norm() < 1e-8);
    }

    #[test]
    fn z1_of_expansion_matches_closed_form() {
        for (phi, alpha, th) in [
            (PI / 2.0, PI / 4.0, 3.0),
            (PI / 2.0, 0.6, 4.5),
            (0.0, PI, 1.0),
            (0.2 * PI, 0.3, 2.0),
        ] {
            let s = WedgeScene::derive(phi, alpha, 1.0).unwrap();
            let e = zn_expansion(&s, th);
            assert!((e.z[0] - z1_closed_form(&s, th)).abs() < 1e-12);
            for k in 0..ZN_TERMS {
                assert!((e.z_plus[k] + e.z_minus[k]).im.abs() < 1e-12);
            }
        }
    }
}
