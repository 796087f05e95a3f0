//! Incident-wave profiles and their Fourier-Laplace transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_breaks, integrate_oscillatory_finite, Estimate, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    SmoothRamp,
    Heaviside,
}

/// Ramp `f` switching the incident wave on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub kind: ProfileKind,
    pub s0: f64,
}

impl Profile {
    pub fn smooth_ramp(s0: f64) -> Result<Self> {
        if !(s0 > 0.0 && s0.is_finite()) {
            return Err(Error::Domain(format!(
                "ramp width s0 = {s0} must be positive"
            )));
        }
        Ok(Profile {
            kind: ProfileKind::SmoothRamp,
            s0,
        })
    }

    pub fn heaviside() -> Self {
        Profile {
            kind: ProfileKind::Heaviside,
            s0: 0.0,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.kind == ProfileKind::SmoothRamp
    }

    /// Length of the interval on which `f` is neither 0 nor 1.
    pub fn width(&self) -> f64 {
        match self.kind {
            ProfileKind::SmoothRamp => self.s0,
            ProfileKind::Heaviside => 0.0,
        }
    }

    fn require_smooth(&self) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "the Heaviside profile has no pointwise derivative".into(),
            ))
        }
    }
}

// h(x) = 1 / (1 + e^u), u = 1/x - 1/(1-x), equivalently e(x) / (e(x) + e(1-x))
fn ramp_parts(x: f64) -> (f64, f64) {
    let u = 1.0 / x - 1.0 / (1.0 - x);
    let h = 1.0 / (1.0 + u.exp());
    let one_minus_h = 1.0 / (1.0 + (-u).exp());
    (h, one_minus_h)
}

pub fn f_eval(p: &Profile, s: f64) -> f64 {
    match p.kind {
        ProfileKind::Heaviside => {
            if s >= 0.0 {
                1.0
            } else {
                0.0
            }
        }
        ProfileKind::SmoothRamp => {
            let x = s / p.s0;
            if x <= 0.0 {
                0.0
            } else if x >= 1.0 {
                1.0
            } else {
                ramp_parts(x).0
            }
        }
    }
}

pub fn f_prime_eval(p: &Profile, s: f64) -> Result<f64> {
    p.require_smooth()?;
    Ok(ramp_prime(p.s0, s))
}

fn ramp_prime(s0: f64, s: f64) -> f64 {
    let x = s / s0;
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let (h, g) = ramp_parts(x);
    let d = 1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x));
    let v = h * g * d / s0;
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// `g1(s) = i e^{-i omega0 s} f'(s)`.
pub fn g1_eval(p: &Profile, omega0: f64, s: f64) -> Result<Complex64> {
    let fp = f_prime_eval(p, s)?;
    Ok(I * Complex64::from_polar(fp, -omega0 * s))
}

/// `g1_hat(omega) = int_0^{s0} e^{i omega s} g1(s) ds`, entire in `omega`.
pub fn g1_hat(
    p: &Profile,
    omega0: f64,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    p.require_smooth()?;
    let s0 = p.s0;
    let k = omega - omega0;
    let integrand = |s: f64| I * (I * k * s).exp() * ramp_prime(s0, s);
    let freq = k.re.abs().max(1e-300);
    integrate_oscillatory_finite(integrand, 0.0, s0, |_| freq, spec)
}

/// `g_hat(omega) = g1_hat(omega) / (omega - omega0)`.
pub fn g_hat(
    p: &Profile,
    omega0: f64,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let d = omega - omega0;
    if d.norm() == 0.0 {
        return Err(Error::Domain("g_hat has a pole at omega = omega0".into()));
    }
    Ok(g1_hat(p, omega0, omega, spec)?.scale(1.0 / d))
}

/// Direct quadrature of `int_0^inf e^{i(omega - omega0)s} f(s) ds` for
/// `Im omega > 0`, truncated where `e^{-Im(omega) s}` drops below `1e-12`
/// of its start value.
pub fn g_hat_direct(
    p: &Profile,
    omega0: f64,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(omega.im > 0.0) {
        return Err(Error::Domain(
            "direct transform requires Im omega > 0".into(),
        ));
    }
    let k = omega - omega0;
    let end = p.width() + 12.0 * std::f64::consts::LN_10 / omega.im;
    let integrand = |s: f64| (I * k * s).exp() * f_eval(p, s);
    let step = spec.osc_panel_phase / k.re.abs().max(1e-300);
    let n = ((end / step).ceil() as usize).clamp(8, spec.max_panels);
    let mut breaks: Vec<f64> = (0..=n).map(|j| end * j as f64 / n as f64).collect();
    if p.width() > 0.0 {
        breaks.push(p.width());
        breaks.sort_by(f64::total_cmp);
    }
    let mut e = integrate_breaks(integrand, &breaks, spec)?;
    e.error += (-omega.im * end).exp() / omega.im;
    Ok(e)
}
