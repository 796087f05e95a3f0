//! Runs the packaged checks on one scene and prints one line each.
//!
//! `cargo run --release --example validation_suite [phi alpha [ramp|heaviside]]`

use std::time::Instant;

use nnwedge::validation::run_suite;
use nnwedge::{Profile, QuadratureSpec, WedgeScene};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scene = match args.as_slice() {
        [phi, alpha, ..] => WedgeScene::derive(
            phi.parse().expect("phi"),
            alpha.parse().expect("alpha"),
            1.0,
        )
        .expect("valid scene"),
        _ => WedgeScene::reference(),
    };
    let profile = match args.get(2).map(String::as_str) {
        Some("heaviside") => Profile::heaviside(),
        _ => Profile::smooth_ramp(0.5).expect("valid ramp"),
    };
    let spec = QuadratureSpec::tight();
    let start = Instant::now();
    let reports = run_suite(&scene, &profile, &spec);
    let failed = reports.iter().filter(|r| !r.passed).count();
    for r in &reports {
        println!("{r}");
    }
    println!(
        "{} checks, {failed} failed, {:.1} s",
        reports.len(),
        start.elapsed().as_secs_f64()
    );
}
