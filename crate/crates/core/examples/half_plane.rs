//! Diffracted wave of the half-plane next to the closed-form comparison field,
//! for grazing and oblique incidence.

use nnwedge::amplitude::halfplane_compare;
use nnwedge::{PolarPoint, QuadratureSpec};
use std::f64::consts::PI;

fn main() {
    let spec = QuadratureSpec::default();
    for alpha in [PI, PI - 0.8, PI + 1.2] {
        println!("alpha = {alpha:.4} (theta0 = {:.4})", alpha - PI);
        for (rho, theta, t) in [(0.5, 1.0, 2.0), (1.0, 2.5, 3.5), (2.0, 5.0, 7.0)] {
            let r = halfplane_compare(alpha, &PolarPoint { rho, theta }, t, 1.0, &spec).unwrap();
            println!(
                "    rho={rho} theta={theta} t={t}: u_d = {:.8}, {} Phi_d = {:.8}, deviation {:.1e}",
                r.u_d,
                r.factor,
                r.phi_d_s * r.factor,
                r.max_deviation()
            );
        }
    }
}
