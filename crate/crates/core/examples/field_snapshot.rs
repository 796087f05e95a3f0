//! Real part of the total field on a Cartesian grid at a fixed time, as
//! gnuplot-ready `x y value` rows. Points inside the wedge print as blank.
//!
//! `cargo run --release --example field_snapshot [t] > snapshot.dat`

use nnwedge::fields::u_total;
use nnwedge::{PolarPoint, Profile, QuadratureSpec, WedgeScene};
use rayon::prelude::*;
use std::f64::consts::PI;

fn main() {
    let t: f64 = std::env::args()
        .nth(1)
        .map_or(6.0, |a| a.parse().expect("t"));
    let s = WedgeScene::reference();
    let prof = Profile::smooth_ramp(0.5).unwrap();
    let spec = QuadratureSpec::default();
    let n = 81;
    let half = 4.0;
    let rows: Vec<String> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let x = -half + 2.0 * half * (k / n) as f64 / (n - 1) as f64;
            let y = -half + 2.0 * half * (k % n) as f64 / (n - 1) as f64;
            let rho = x.hypot(y);
            let mut theta = y.atan2(x);
            if theta < 0.0 {
                theta += 2.0 * PI;
            }
            if rho == 0.0 {
                theta = 2.0 * PI;
            }
            let value = if theta < s.phi() {
                String::new()
            } else {
                match u_total(&s, &prof, &PolarPoint { rho, theta }, t, &spec) {
                    Ok(v) => format!("{:.6}", v.value.re),
                    Err(_) => "nan".into(),
                }
            };
            let sep = if k % n == n - 1 { "\n" } else { "" };
            format!("{x:.4} {y:.4} {value}{sep}")
        })
        .collect();
    println!("# Re u at t = {t}, phi = pi/2, alpha = pi/4");
    for r in rows {
        println!("{r}");
    }
}
