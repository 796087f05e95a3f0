//! Wedge and incidence configuration, derived constants and sector logic.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Slack allowed when testing `theta` against the closed interval `[phi, 2pi]`.
pub const ANGLE_SLACK: f64 = 1e-12;

/// Default half-width of the excluded band around the critical rays.
pub const DEFAULT_BAND: f64 = 1e-6;

/// Wedge magnitude `phi`, incidence direction `alpha`, carrier frequency `omega0`
/// and the constants derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeScene {
    phi: f64,
    alpha: f64,
    omega0: f64,
    big_phi: f64,
    q: f64,
    theta1: f64,
    theta2: f64,
    admissible: bool,
}

impl WedgeScene {
    pub fn derive(phi: f64, alpha: f64, omega0: f64) -> Result<Self> {
        if !(phi.is_finite() && alpha.is_finite() && omega0.is_finite()) {
            return Err(Error::InvalidScene("non-finite parameter".into()));
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::InvalidScene(format!("phi = {phi} outside [0, pi]")));
        }
        if omega0 <= 0.0 {
            return Err(Error::InvalidScene(format!(
                "omega0 = {omega0} must be positive"
            )));
        }
        let big_phi = TWO_PI - phi;
        let q = PI / (2.0 * big_phi);
        let mut theta1 = 2.0 * phi - alpha;
        if phi == 0.0 && theta1 < phi {
            theta1 += TWO_PI;
        }
        let theta2 = TWO_PI - alpha;
        let lo = (phi - PI / 2.0).max(0.0);
        let hi = (PI / 2.0).min(phi);
        let admissible = lo < alpha && alpha < hi;
        Ok(WedgeScene {
            phi,
            alpha,
            omega0,
            big_phi,
            q,
            theta1,
            theta2,
            admissible,
        })
    }

    /// Reference configuration used throughout the docs and tests.
    pub fn reference() -> Self {
        Self::derive(PI / 2.0, PI / 4.0, 1.0).expect("reference scene is valid")
    }

    /// Half-plane with grazing incidence.
    pub fn half_plane(alpha: f64, omega0: f64) -> Result<Self> {
        Self::derive(0.0, alpha, omega0)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn omega0(&self) -> f64 {
        self.omega0
    }
    /// Exterior angle `2pi - phi`.
    pub fn big_phi(&self) -> f64 {
        self.big_phi
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn theta1(&self) -> f64 {
        self.theta1
    }
    pub fn theta2(&self) -> f64 {
        self.theta2
    }
    pub fn is_admissible(&self) -> bool {
        self.admissible
    }
    pub fn is_half_plane(&self) -> bool {
        self.phi == 0.0
    }
    /// `phi = pi`: the kernel vanishes identically.
    pub fn is_degenerate(&self) -> bool {
        self.phi == PI
    }

    pub fn with_omega0(&self, omega0: f64) -> Result<Self> {
        Self::derive(self.phi, self.alpha, omega0)
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        theta >= self.phi - ANGLE_SLACK && theta <= TWO_PI + ANGLE_SLACK
    }

    pub fn check_angle(&self, theta: f64) -> Result<()> {
        if self.contains_angle(theta) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "theta = {theta} outside [{}, 2pi]",
                self.phi
            )))
        }
    }

    /// Offsets `c` of the four `coth[q(beta + i(theta - c))]` terms of the
    /// shifted kernel, with their signs. Poles of those terms reach the real
    /// `beta` axis when `theta - c` is a multiple of `2 Phi`.
    pub(crate) fn kernel_terms(&self) -> [(f64, f64); 4] {
        let a = self.alpha;
        [
            (1.0, 4.0 * PI - a),
            (-1.0, TWO_PI - a),
            (1.0, TWO_PI + a),
            (-1.0, a),
        ]
    }

    /// Distance from `theta` to the nearest angle where the shifted kernel has
    /// a real-axis pole, and a label for it: 1 and 2 for the critical rays,
    /// 0 for the incident shadow boundary (reachable only for non-admissible
    /// scenes).
    pub fn critical_distance(&self, theta: f64) -> (f64, u8) {
        let period = 2.0 * self.big_phi;
        let labels = [1u8, 2, 0, 0];
        let mut best = (f64::INFINITY, 0u8);
        for ((_, c), label) in self.kernel_terms().iter().zip(labels) {
            let d = theta - c;
            let r = (d - period * (d / period).round()).abs();
            if r < best.0 {
                best = (r, label);
            }
        }
        best
    }

    /// Rejects `theta` inside the critical band.
    pub fn check_noncritical(&self, theta: f64, band: f64) -> Result<()> {
        if self.is_degenerate() {
            return Ok(());
        }
        let (distance, ray) = self.critical_distance(theta);
        if distance <= band {
            Err(Error::CriticalRay {
                theta,
                ray,
                distance,
            })
        } else {
            Ok(())
        }
    }

    /// Unit propagation direction of the incident wave.
    pub fn n0(&self) -> (f64, f64) {
        (self.alpha.cos(), self.alpha.sin())
    }
}

/// Evaluation location in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub rho: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(scene: &WedgeScene, rho: f64, theta: f64) -> Result<Self> {
        let p = PolarPoint { rho, theta };
        p.validate(scene)?;
        Ok(p)
    }

    pub fn validate(&self, scene: &WedgeScene) -> Result<()> {
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(Error::Domain(format!(
                "rho = {} must be finite and nonnegative",
                self.rho
            )));
        }
        scene.check_angle(self.theta)
    }

    pub fn cartesian(&self) -> (f64, f64) {
        (self.rho * self.theta.cos(), self.rho * self.theta.sin())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// `phi <= theta < theta1`
    I,
    /// `theta1 < theta < theta2`
    II,
    /// `theta2 < theta <= 2pi`
    III,
    Critical1,
    Critical2,
}

impl Sector {
    pub fn is_critical(self) -> bool {
        matches!(self, Sector::Critical1 | Sector::Critical2)
    }
}

pub fn classify(scene: &WedgeScene, theta: f64, band: f64) -> Result<Sector> {
    scene.check_angle(theta)?;
    if (theta - scene.theta1).abs() <= band {
        return Ok(Sector::Critical1);
    }
    if (theta - scene.theta2).abs() <= band {
        return Ok(Sector::Critical2);
    }
    Ok(if theta < scene.theta1 {
        Sector::I
    } else if theta < scene.theta2 {
        Sector::II
    } else {
        Sector::III
    })
}

/// `arcosh(x)` for `x >= 1`, zero below.
pub fn ac(x: f64) -> f64 {
    if x >= 1.0 {
        x.acosh()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_constants() {
        let s = WedgeScene::reference();
        assert!((s.big_phi() - 1.5 * PI).abs() < 1e-15);
        assert!((s.q() - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.theta1() - 0.75 * PI).abs() < 1e-15);
        assert!((s.theta2() - 1.75 * PI).abs() < 1e-15);
        assert!(s.is_admissible());
    }

    #[test]
    fn half_plane_reduction() {
        let s = WedgeScene::derive(0.0, PI, 1.0).unwrap();
        assert_eq!(s.big_phi(), TWO_PI);
        assert_eq!(s.q(), 0.25);
        assert!((s.theta1() - PI).abs() < 1e-15);
        assert!((s.theta2() - PI).abs() < 1e-15);
        // theta0 = alpha - pi = 0 is the grazing case
        assert_eq!(s.alpha() - PI, 0.0);
    }

    #[test]
    fn inadmissible_flagged() {
        let s = WedgeScene::derive(PI / 2.0, 0.75 * PI, 1.0).unwrap();
        assert!(!s.is_admissible());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(WedgeScene::derive(PI / 2.0, 0.3, 0.0).is_err());
        assert!(WedgeScene::derive(-0.1, 0.3, 1.0).is_err());
        assert!(WedgeScene::derive(3.2, 0.3, 1.0).is_err());
    }

    #[test]
    fn classify_examples() {
        let s = WedgeScene::reference();
        assert_eq!(classify(&s, PI, 1e-3).unwrap(), Sector::II);
        assert_eq!(classify(&s, s.theta1(), 1e-3).unwrap(), Sector::Critical1);
        assert_eq!(classify(&s, s.theta2(), 1e-3).unwrap(), Sector::Critical2);
        assert_eq!(classify(&s, TWO_PI, 1e-3).unwrap(), Sector::III);
        assert_eq!(classify(&s, PI / 2.0 + 0.1, 1e-3).unwrap(), Sector::I);
        assert!(classify(&s, 0.2, 1e-3).is_err());
    }

    #[test]
    fn ac_values() {
        assert_eq!(ac(0.5), 0.0);
        assert_eq!(ac(1.0), 0.0);
        let a2 = ac(2.0);
        assert!((a2 - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-15);
        assert!((a2 - 1.3169578969248166).abs() < 1e-15);
        assert!((a2.cosh() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn critical_distance_matches_rays_for_admissible() {
        let s = WedgeScene::reference();
        for k in 0..50 {
            let th = s.phi() + (TWO_PI - s.phi()) * k as f64 / 49.0;
            let (d, _) = s.critical_distance(th);
            let direct = (th - s.theta1()).abs().min((th - s.theta2()).abs());
            assert!((d - direct).abs() < 1e-12, "{th}: {d} vs {direct}");
        }
    }
}
