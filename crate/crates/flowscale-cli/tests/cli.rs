//! End-to-end tests of the `flowscale` binary: exit-code contract, frozen
//! table output, and byte-level determinism of the reports.

use std::process::{Command, Output};

fn flowscale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowscale"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

#[test]
fn exponent_table_csv_is_frozen() {
    let out = flowscale(&["table1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "r,omega_exp,u_exp,E_exp\n\
         -2,-7,-6,-9\n\
         -1,-5,-4,-5\n\
         -0.5,-4,-3,-3\n\
         0,-3,-2,-1\n\
         0.5,-2,-1,1\n\
         1,-1,0,3\n\
         1.2,-0.6,0.4,3.8\n\
         1.5,0,1,5\n\
         2,1,2,7\n\
         3,3,4,11\n"
    );
}

#[test]
fn weight_of_the_composite_similarity_expression_prints_minus_one() {
    let out = flowscale(&[
        "weights",
        "t^(-1/2)*sin(x*t^(-1/2))",
        "--alpha-x",
        "1",
        "--alpha-t",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "-1\n");
}

#[test]
fn symbolic_weights_render_the_exponent_form() {
    let out = flowscale(&["weights", "nu*(d(d(u,x),x))"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "alpha_x - 2*alpha_t\n");
}

#[test]
fn non_isobaric_expression_exits_one() {
    let out = flowscale(&["weights", "x + t", "--alpha-x", "1", "--alpha-t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("not isobaric"));
}

#[test]
fn invariance_is_symbolic_by_default_and_breaks_off_the_parabolic_ray() {
    let symbolic = flowscale(&["invariance"]);
    assert_eq!(symbolic.status.code(), Some(0));
    let text = stdout_of(&symbolic);
    assert!(text.contains("invariant with common weight alpha_x - 2*alpha_t"));
    assert!(text.contains("invariant with common weight -alpha_t"));

    let off_ray = flowscale(&[
        "invariance",
        "--alpha-x",
        "1",
        "--alpha-t",
        "3",
        "--fixed-viscosity",
    ]);
    assert_eq!(off_ray.status.code(), Some(1));
    assert!(stdout_of(&off_ray).contains("not invariant"));

    let on_ray = flowscale(&[
        "invariance",
        "--alpha-x",
        "1",
        "--alpha-t",
        "2",
        "--fixed-viscosity",
    ]);
    assert_eq!(on_ray.status.code(), Some(0));
}

#[test]
fn verify_reports_are_byte_deterministic() {
    let first = flowscale(&["verify", "tg-embedded-2d", "--format", "json"]);
    let second = flowscale(&["verify", "tg-embedded-2d", "--format", "json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    // Valid JSON with one entry per check.
    let parsed: serde_json::Value =
        serde_json::from_str(stdout_of(&first)).expect("report parses");
    assert_eq!(parsed.as_array().map(|a| a.len()), Some(3));
}

#[test]
fn usage_errors_exit_two_with_a_diagnostic() {
    let unknown = flowscale(&["verify", "no-such-field"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr_of(&unknown).starts_with("error:"));
    assert!(stderr_of(&unknown).contains("no-such-field"));

    let malformed = flowscale(&["exponents", "--beta-x", "5", "--beta-t", "three"]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(stderr_of(&malformed).starts_with("error:"));

    let bad_grid = flowscale(&["verify", "taylor-green-init", "--grid", "hexagonal:32"]);
    assert_eq!(bad_grid.status.code(), Some(2));
    assert!(stderr_of(&bad_grid).contains("grid"));

    let unknown_flag = flowscale(&["table1", "--format", "xml"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = flowscale(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("flowscale"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("flowscale-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("table1.csv");
    let out = flowscale(&["table1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let written = std::fs::read_to_string(&path).expect("file written");
    assert!(written.starts_with("r,omega_exp,u_exp,E_exp\n"));
    assert!(written.ends_with("3,3,4,11\n"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn measured_slope_is_reported_with_its_exact_prediction() {
    let out = flowscale(&[
        "measure",
        "tg-embedded-2d",
        "--norm",
        "sup-velocity",
        "--n",
        "16",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(stdout_of(&out)).expect("report parses");
    let slope = parsed["slope"].as_f64().expect("slope");
    assert!((slope - 4.0 / 3.0).abs() < 1e-6, "slope {slope}");
    assert_eq!(parsed["predicted_slope"]["num"], 4);
    assert_eq!(parsed["predicted_slope"]["den"], 3);
}

#[test]
fn gallery_listing_names_every_field() {
    let out = flowscale(&["gallery-list", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(stdout_of(&out)).expect("listing parses");
    let rows = parsed.as_array().expect("array");
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().any(|r| r["name"] == "taylor-green-exact-2d"
        && r["exact_nse_solution"] == true));
    assert!(rows
        .iter()
        .any(|r| r["name"] == "tg-embedded-2d" && r["beta"]["beta_x"]["num"] == 5));
}
