//! Stationary quantities: the two representations of J_d, the transformed
//! diffracted and reflected waves, and their residue-form sum.

use nnwedge::fields::{j_d, u_hat_d, u_hat_r, u_hat_s, Representation};
use nnwedge::{PolarPoint, Profile, QuadratureSpec, WedgeScene};
use num_complex::Complex64;

fn main() {
    let s = WedgeScene::reference();
    let prof = Profile::smooth_ramp(0.5).unwrap();
    let spec = QuadratureSpec::tight();
    let p = PolarPoint::new(&s, 1.2, 3.4).unwrap();
    for omega in [
        Complex64::new(-2.0, 1.0),
        Complex64::new(0.5, 0.3),
        Complex64::new(2.5, 4.0),
    ] {
        let c0 = j_d(&s, &p, omega, Representation::ContourC0, &spec).unwrap();
        let line = j_d(&s, &p, omega, Representation::RealLine, &spec).unwrap();
        println!(
            "omega = {omega}: J_d = {:.10}, routes differ by {:.1e}",
            c0.value,
            (c0.value - line.value).norm()
        );
        let d = u_hat_d(&s, &prof, &p, omega, &spec).unwrap().value;
        let r = u_hat_r(&s, &prof, &p, omega, &spec).unwrap().value;
        let sum = u_hat_s(&s, &prof, &p, omega, &spec).unwrap().value;
        println!(
            "    u_hat_r + u_hat_d = {:.10}, u_hat_s = {:.10}",
            r + d,
            sum
        );
    }
}
