use std::process::{Command, Output};

fn ptc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptc")).args(args).output().expect("ptc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn pi_to_twenty_digits() {
    let o = ptc(&["--digits", "20", "pi"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3.14159265358979323846");
}

#[test]
fn default_is_ten_digits() {
    let o = ptc(&["root(x^2 - 2, 1.4)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1.4142135624");
}

#[test]
fn prec_prints_matching_places() {
    let o = ptc(&["--prec", "1000", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.333");
}

#[test]
fn complex_output_and_leading_minus() {
    let o = ptc(&["--digits", "3", "-root(x^2 + 1, 0 + 1i)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.000 - 1.000i");
}

#[test]
fn rational_flag_prints_the_oracle_fraction() {
    let o = ptc(&["--prec", "7", "--rational", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    // the oracle answers on the grid 1/7
    let out = stdout(&o);
    let (num, den) = out.split_once('/').expect("a fraction");
    let (num, den): (f64, f64) = (num.parse().unwrap(), den.parse().unwrap());
    assert_eq!(den, 7.0);
    assert!((num / den - 0.5).abs() <= 1.0 / 7.0, "{out}");
}

#[test]
fn stats_go_to_stderr() {
    let o = ptc(&["--digits", "5", "--stats", "root(x^2 - 2, 1.4)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).parse().unwrap();
    assert!((v - 2f64.sqrt()).abs() <= 1e-5, "{v}");
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("rational_ops:"), "{err}");
    assert!(err.contains("newton_iterations="), "{err}");
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(ptc(&["1 +"]).status.code(), Some(2));
    assert_eq!(ptc(&["root(x^2 + 1, #5)"]).status.code(), Some(2));
}

#[test]
fn possibly_zero_exits_3() {
    let o = ptc(&["--zero-cap", "1000", "1/(pi - pi)"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn double_root_exits_4() {
    let o = ptc(&["root(x^2 - 2*x + 1)"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn prec_and_digits_conflict() {
    let o = ptc(&["--prec", "10", "--digits", "3", "pi"]);
    assert_ne!(o.status.code(), Some(0));
}
