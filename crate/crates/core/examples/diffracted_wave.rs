//! Time trace of the three field components at one observation point, for
//! the smooth ramp and the Heaviside profile.
//!
//! `cargo run --release --example diffracted_wave [rho theta]`

use nnwedge::fields::u_total;
use nnwedge::{PolarPoint, Profile, QuadratureSpec, WedgeScene};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("number"))
        .collect();
    let (rho, theta) = match args.as_slice() {
        [r, t, ..] => (*r, *t),
        _ => (1.5, 3.3),
    };
    let s = WedgeScene::reference();
    let spec = QuadratureSpec::default();
    let p = PolarPoint::new(&s, rho, theta).expect("point");
    for (name, prof) in [
        ("ramp s0=0.5", Profile::smooth_ramp(0.5).unwrap()),
        ("heaviside", Profile::heaviside()),
    ] {
        println!("# {name}, rho = {rho}, theta = {theta}");
        println!("t,|u_in|,|u_r|,|u_d|,Re u,Im u");
        for k in 0..=24 {
            let t = -1.0 + 0.5 * k as f64;
            let v = u_total(&s, &prof, &p, t, &spec).expect("field");
            let c = v.components.unwrap();
            println!(
                "{t:.2},{:.6},{:.6},{:.6},{:.6},{:.6}",
                c.u_in.norm(),
                c.u_r.norm(),
                c.u_d.norm(),
                v.value.re,
                v.value.im
            );
        }
    }
}
