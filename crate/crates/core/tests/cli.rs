use std::path::PathBuf;
use std::time::Instant;

use nnwedge::cli::{run, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nnwedge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_to_string(args: &[&str], name: &str) -> (i32, String) {
    let out = scratch(name);
    let mut full = vec!["nnwedge", "--out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    let code = run(full);
    (code, std::fs::read_to_string(&out).unwrap_or_default())
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn field_csv_has_header_and_metadata() {
    let (code, csv) = run_to_string(
        &["field", "--rho", "1", "--theta", "3.3", "--t", "2"],
        "meta.csv",
    );
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("rho,theta,t,u_in_re"));
    assert!(lines.iter().any(|l| l.starts_with("# scene=phi=")));
    assert!(lines.iter().any(|l| l.starts_with("# tolerances=")));
    assert!(lines.last().unwrap().starts_with("# version="));
}

#[test]
fn before_arrival_the_field_is_incident() {
    let (_, csv) = run_to_string(
        &["field", "--rho", "1.5", "--theta", "3.3", "--t", "-0.5"],
        "early.csv",
    );
    let r = &rows(&csv)[0];
    assert_eq!(r[12], "ok");
    assert_eq!(r[3], r[9]);
    assert_eq!(r[4], r[10]);
}

#[test]
fn heaviside_diffracted_columns_vanish_before_rho() {
    let (_, csv) = run_to_string(
        &[
            "--profile",
            "heaviside",
            "field",
            "--rho",
            "2",
            "--theta",
            "3.3",
            "--t",
            "0:1.9:5",
        ],
        "heaviside.csv",
    );
    for r in rows(&csv) {
        assert_eq!(r[7].parse::<f64>().unwrap(), 0.0);
        assert_eq!(r[8].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn critical_points_are_flagged_not_dropped() {
    let theta1 = std::f64::consts::FRAC_PI_4 * 3.0;
    let (code, csv) = run_to_string(&["field", "--theta", &theta1.to_string()], "critical.csv");
    assert_eq!(code, EXIT_OK);
    let r = rows(&csv);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][12], "critical_band");
    let (_, amp) = run_to_string(
        &["amplitude", "--theta", &theta1.to_string(), "--t", "5"],
        "critical-a.csv",
    );
    assert_eq!(rows(&amp)[0].last().unwrap(), "critical_band");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = scratch("run.json");
    std::fs::write(
        &cfg,
        r#"{"phi": 60, "alpha": 40, "degrees": true, "theta": "200"}"#,
    )
    .unwrap();
    let (code, csv) = run_to_string(
        &["--config", cfg.to_str().unwrap(), "--alpha", "30", "field"],
        "cfg.csv",
    );
    assert_eq!(code, EXIT_OK);
    let scene = csv.lines().find(|l| l.starts_with("# scene=")).unwrap();
    assert!(scene.contains(&format!("alpha={:.16e}", 30f64.to_radians())));
    assert!(scene.contains(&format!("phi={:.16e}", 60f64.to_radians())));
    let theta: f64 = rows(&csv)[0][1].parse().unwrap();
    assert!((theta - 200f64.to_radians()).abs() < 1e-15);
}

#[test]
fn bad_configs_exit_with_two() {
    let cfg = scratch("bad.json");
    std::fs::write(&cfg, r#"{"phi": 1.0, "colour": 3}"#).unwrap();
    assert_eq!(
        run(["nnwedge", "--config", cfg.to_str().unwrap(), "field"]),
        EXIT_CONFIG
    );
    assert_eq!(run(["nnwedge", "--phi", "7", "field"]), EXIT_CONFIG);
    assert_eq!(run(["nnwedge", "field", "--rho", "-1"]), EXIT_CONFIG);
    assert_eq!(run(["nnwedge", "field", "--t", "1:2"]), EXIT_CONFIG);
    assert_eq!(run(["nnwedge", "--threads", "0", "validate"]), EXIT_CONFIG);
}

#[test]
fn halfplane_grazing_relation_is_confirmed() {
    let (code, csv) = run_to_string(
        &[
            "--phi",
            "0",
            "--alpha",
            "3.141592653589793",
            "halfplane",
            "--rho",
            "0.5:2:3",
            "--theta",
            "1:5:3",
            "--t",
            "5",
        ],
        "halfplane.csv",
    );
    assert_eq!(code, EXIT_OK);
    assert!(csv.contains("# relation=u_d = 2*Phi_d confirmed"));
}

#[test]
fn rate_prints_first_term_exponents() {
    // reference scene: q = 1/3, but the first term vanishes there
    let (code, csv) = run_to_string(&["rate", "--theta", "3.3", "--first-term"], "rate-ref.csv");
    assert_eq!(code, EXIT_CHECK_FAILED);
    let r = rows(&csv);
    let want_im: f64 = r[0][1].parse().unwrap();
    let want_re: f64 = r[1][1].parse().unwrap();
    assert!((want_im + 5.0 / 3.0).abs() < 1e-12);
    assert!((want_re + 8.0 / 3.0).abs() < 1e-12);
}

#[test]
fn rate_fits_match_on_the_half_plane() {
    let (code, csv) = run_to_string(
        &[
            "--phi",
            "0",
            "--alpha",
            "3.141592653589793",
            "rate",
            "--theta",
            "2",
        ],
        "rate-hp.csv",
    );
    assert_eq!(code, EXIT_OK, "{csv}");
    let r = rows(&csv);
    let fitted: f64 = r[0][2].parse().unwrap();
    assert!((fitted + 1.5).abs() < 0.05);
}

#[test]
fn validate_passes_on_the_reference_scene() {
    let (code, csv) = run_to_string(&["validate"], "validate.csv");
    assert_eq!(code, EXIT_OK, "{csv}");
    assert!(csv.contains("failed=0"));
}

#[test]
fn kernel_dump_flags_poles() {
    // theta = alpha + 2 Phi k hits a real-axis pole at beta = 0
    let (code, csv) = run_to_string(
        &["kernel", "--beta", "-1:1:3", "--theta", "4.71238898038469"],
        "kernel.csv",
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(rows(&csv).len(), 3);
}

#[test]
fn full_grid_fits_the_time_budget() {
    let start = Instant::now();
    let (code, csv) = run_to_string(
        &[
            "field",
            "--rho",
            "0.1:5:101",
            "--theta",
            "1.6:6.2:101",
            "--t",
            "4",
        ],
        "grid.csv",
    );
    let elapsed = start.elapsed().as_secs_f64();
    assert_eq!(code, EXIT_OK);
    assert_eq!(rows(&csv).len(), 101 * 101);
    assert!(elapsed < 60.0, "{elapsed} s");
}
