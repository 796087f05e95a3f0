//! Convergence of u e^{i omega0 t} to the limiting amplitude, and the two ways
//! of computing that amplitude.

use nnwedge::amplitude::{a_components, a_inf_contour};
use nnwedge::fields::u_total;
use nnwedge::{PolarPoint, Profile, QuadratureSpec, WedgeScene};
use num_complex::Complex64;

fn main() {
    let s = WedgeScene::reference();
    let prof = Profile::smooth_ramp(0.5).unwrap();
    let spec = QuadratureSpec::tight();
    let p = PolarPoint::new(&s, 1.0, 3.3).unwrap();
    let parts = a_components(&s, &p, &spec).unwrap();
    let contour = a_inf_contour(&s, &p, &spec).unwrap();
    println!(
        "A_in = {:.8}, A_r = {:.8}, A_d = {:.8}",
        parts.a_in, parts.a_r, parts.a_d
    );
    println!(
        "A_inf: sum {:.12}, contour {:.12}",
        parts.a_inf, contour.value
    );
    println!("t,|A(t) - A_inf|");
    for k in 0..=10 {
        let t = 5.0 * 2f64.powi(k);
        let u = u_total(&s, &prof, &p, t, &spec).unwrap().value;
        let a = u * Complex64::from_polar(1.0, s.omega0() * t);
        println!("{t},{:.4e}", (a - parts.a_inf).norm());
    }
}
