use std::io::Write;
use std::process::{Command, Stdio};

use toric_cli::{run, Outcome, Payload, Report};
use toric_core::HomologyGroup;

const FILES: [&str; 5] = ["one-point", "two-points", "crossing-circles", "grid", "coordinate-cube"];

fn data(name: &str) -> String {
    format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> Outcome {
    let argv = std::iter::once("toric-salvetti").chain(args.iter().copied());
    run(argv, &mut std::io::empty())
}

fn cli_stdin(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("toric-salvetti").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn json(args: &[&str]) -> Report {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = cli(&a);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("report parses")
}

fn z(b: usize) -> HomologyGroup {
    HomologyGroup { betti: b, torsion: vec![] }
}

#[test]
fn salvetti_homology_of_one_point() {
    let r = json(&["homology", "--space", "salvetti", &data("one-point")]);
    match r.result {
        Payload::Homology { space, groups } => {
            assert_eq!(space, "salvetti");
            assert_eq!(groups[..2], [z(1), z(2)]);
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn face_homology_is_the_torus() {
    let r = json(&["homology", "--space", "face", &data("grid")]);
    let Payload::Homology { groups, .. } = r.result else { panic!() };
    assert_eq!(groups, vec![z(1), z(2), z(1)]);
}

#[test]
fn grid_is_thick() {
    let r = json(&["salvetti", &data("grid")]);
    let Payload::Salvetti { thick, poset, .. } = r.result else { panic!() };
    assert!(thick && poset);
    let r = json(&["salvetti", &data("crossing-circles")]);
    let Payload::Salvetti { thick, objects_by_codim, .. } = r.result else { panic!() };
    assert!(!thick);
    assert_eq!(objects_by_codim, vec![2, 8, 8]);
}

#[test]
fn two_points_group_is_free_of_rank_three() {
    let r = json(&["pi1", "--simplify", &data("two-points")]);
    let Payload::Pi1 { generators, relators, abelianization, .. } = r.result else { panic!() };
    assert_eq!(generators.len(), 3);
    assert!(relators.is_empty());
    assert_eq!(abelianization, z(3));
}

#[test]
fn max_dim_caps_homology() {
    let r = json(&["homology", "--max-dim", "1", &data("coordinate-cube")]);
    let Payload::Homology { groups, .. } = r.result else { panic!() };
    assert_eq!(groups, vec![z(1), z(6)]);
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let commands: [&[&str]; 7] =
        [&["validate"], &["faces"], &["layers"], &["salvetti"], &["homology"], &["pi1", "--simplify"], &["check"]];
    for f in FILES {
        for c in commands {
            let mut args = c.to_vec();
            let path = data(f);
            args.extend([path.as_str(), "--format", "json"]);
            let first = cli(&args);
            assert_eq!(first.code, 0, "{f} {c:?}: {}", first.stderr);
            let report: Report = serde_json::from_str(&first.stdout).unwrap();
            assert_eq!(report.to_json(), first.stdout, "{f} {c:?}");
            assert_eq!(cli(&args).stdout, first.stdout, "{f} {c:?}");
            assert!(!first.stdout.contains("elapsed"));
        }
    }
}

#[test]
fn check_passes_on_the_samples() {
    for f in FILES {
        let r = json(&["check", &data(f)]);
        let Payload::Check { passed, checks } = r.result else { panic!() };
        assert!(passed, "{f}: {checks:?}");
    }
}

#[test]
fn window_is_echoed() {
    let r = json(&["validate", "--window", "2", &data("grid")]);
    assert_eq!(r.window.k, 2);
    assert_eq!(r.window.lo, vec!["-2", "-2"]);
    assert_eq!(r.window.hi, vec!["3", "3"]);
    assert_eq!(r.arrangement.hypersurfaces[1].q, "1/2");
}

#[test]
fn spec_errors_exit_with_one() {
    let non_essential = r#"{"rank": 2, "hypersurfaces": [{"chi": [1, 1], "q": "0"}]}"#;
    let out = cli_stdin(&["faces", "-"], non_essential);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not essential"));
    assert_eq!(cli_stdin(&["faces", "-"], "{").code, 1);
    assert_eq!(cli_stdin(&["faces", "-"], r#"{"rank": 1, "hypersurfaces": [{"chi": [1], "q": "1"}]}"#).code, 1);
    assert_eq!(cli_stdin(&["faces", "-"], r#"{"rank": 1, "hypersurfaces": [{"chi": [0], "q": "0"}]}"#).code, 1);
    assert_eq!(cli(&["faces", "/no/such/file.json"]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
}

#[test]
fn small_window_exits_with_two_and_a_hint() {
    let out = cli(&["faces", "--window", "0", &data("grid")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--window 1"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn help_exits_cleanly() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("pi1"));
}

#[test]
fn binary_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric-salvetti"))
        .args(["homology", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let spec = std::fs::read_to_string(data("two-points")).unwrap();
    child.stdin.take().unwrap().write_all(spec.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H_1 = Z^3"), "{text}");
    assert!(String::from_utf8(out.stderr).unwrap().contains("elapsed"));
}
