use std::process::Command;

use bondmagic::cli::{parse_args, ArgsError, RunConfig, EXIT_IO, EXIT_USAGE};
use bondmagic::integrals::BasisName;
use bondmagic::io::{read_csv, read_summary};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bondmagic"))
}

fn parse(args: &str) -> Result<RunConfig, ArgsError> {
    parse_args(std::iter::once("bondmagic").chain(args.split_whitespace()))
}

#[test]
fn scan_defaults_and_explicit_config() {
    let Ok(RunConfig::Scan { config, out, .. }) =
        parse("scan --basis sto-3g --rmin 0.3 --rmax 3.5 --step 0.01 --out scan.csv")
    else {
        panic!("scan did not parse");
    };
    assert_eq!(config.basis, BasisName::Sto3g);
    assert_eq!((config.ell_min, config.ell_max, config.step), (0.3, 3.5, 0.01));
    assert_eq!(out.unwrap().to_str(), Some("scan.csv"));
    let Ok(RunConfig::Scan { config: d, .. }) = parse("scan") else { panic!() };
    assert_eq!(d, config);
}

#[test]
fn usage_errors() {
    for args in [
        "scan --rmin 2 --rmax 1",
        "scan --step 0",
        "scan --basis cc-pvdz",
        "scan --bogus 1",
        "point",
        "point --r -1",
        "frobnicate",
    ] {
        assert!(matches!(parse(args), Err(ArgsError::Usage(_))), "{args}");
    }
}

#[test]
fn analytic_accepts_negative_thetas() {
    let Ok(RunConfig::Analytic { thetas }) = parse("analytic --thetas -0.3927,0,-0.1") else { panic!() };
    assert!((thetas[0] + std::f64::consts::FRAC_PI_8).abs() < 1e-4);
    assert_eq!(thetas.len(), 3);
    let Ok(RunConfig::Analytic { thetas }) = parse("analytic --thetas -0.3926990816987241") else { panic!() };
    assert!((thetas[0] + std::f64::consts::FRAC_PI_8).abs() < 1e-6);
}

#[test]
fn exit_codes_by_failure_class() {
    let status = bin().args(["scan", "--rmin", "2", "--rmax", "1"]).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_USAGE));
    let status = bin()
        .args(["scan", "--step", "0.5", "--out", "/nonexistent-dir/x/scan.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_IO));
    let ok = bin().args(["verify-gates"]).output().unwrap();
    assert!(ok.status.success());
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.contains("T^dagger") || text.contains("Tdg"), "{text}");
}

#[test]
fn scan_artifacts_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let csv = dir.path().join(format!("{name}.csv"));
        let summary = dir.path().join(format!("{name}.txt"));
        let svg = dir.path().join(format!("{name}.svg"));
        let status = bin()
            .args(["scan", "--out"])
            .arg(&csv)
            .arg("--summary")
            .arg(&summary)
            .arg("--svg")
            .arg(&svg)
            .status()
            .unwrap();
        assert!(status.success());
        (csv, summary, svg)
    };
    let (csv_a, sum_a, svg_a) = run("a");
    let (csv_b, sum_b, svg_b) = run("b");
    for (a, b) in [(&csv_a, &csv_b), (&sum_a, &sum_b), (&svg_a, &svg_b)] {
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }
    assert_eq!(read_csv(&csv_a).unwrap().len(), 321);
    let summary = read_summary(&sum_a).unwrap();
    assert!((summary.theta_at_peak + std::f64::consts::FRAC_PI_8).abs() < 0.01);
    let svg = std::fs::read_to_string(&svg_a).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let dashed = doc
        .descendants()
        .filter(|n| n.has_tag_name("line") && n.attribute("stroke-dasharray").is_some())
        .count();
    assert_eq!(dashed, 1);
}

#[test]
fn point_reports_equilibrium_quantities() {
    let out = bin().args(["point", "--r", "0.7414"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let e: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("e_total_hartree: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((e + 1.137270175242571).abs() < 1e-6);
}
