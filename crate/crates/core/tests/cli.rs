mod common;

use common::{broken_qzx, exit_code_matrix, fixture, gqt};

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for (args, code) in exit_code_matrix(dir.path()) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = gqt(&args);
        assert_eq!(
            run.code, code,
            "{args:?}\nstdout: {}\nstderr: {}",
            run.stdout, run.stderr
        );
        if code == 2 {
            assert!(
                run.stdout.is_empty(),
                "{args:?} wrote to stdout: {}",
                run.stdout
            );
            assert!(!run.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn broken_model_names_the_law_and_state() {
    let dir = tempfile::tempdir().unwrap();
    let run = gqt(&["check", &broken_qzx(dir.path())]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("PP=P"), "{}", run.stdout);
    assert!(run.stdout.contains("z0"), "{}", run.stdout);
}

#[test]
fn entangle_lists_the_bell_states() {
    let run = gqt(&[
        "entangle",
        &fixture("bell.json"),
        "--global",
        "BELL",
        "--locals",
        "ZA,ZB",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("preconditions: ok"));
    assert!(
        run.stdout.contains("entangled: phiM, phiP"),
        "{}",
        run.stdout
    );

    let run = gqt(&[
        "--format",
        "json",
        "entangle",
        &fixture("bell.json"),
        "--global",
        "BELL",
        "--locals",
        "ZA,ZB",
    ]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["states"], serde_json::json!(["phiM", "phiP"]));
}

#[test]
fn measure_reports_each_step() {
    let run = gqt(&[
        "measure",
        &fixture("qzx.json"),
        "--state",
        "zp",
        "--steps",
        "X=+,Z=0",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(
        run.stdout.trim_end().ends_with("final: z0"),
        "{}",
        run.stdout
    );
}

#[test]
fn report_in_both_formats() {
    let run = gqt(&["report", &fixture("qzx.json")]);
    assert_eq!(run.code, 0);
    assert!(
        run.stdout.contains("StronglyComplementary"),
        "{}",
        run.stdout
    );
    let run = gqt(&["--format", "json", "report", &fixture("qzx.json")]);
    assert_eq!(run.code, 0);
    serde_json::from_str::<serde_json::Value>(&run.stdout).unwrap();
}

#[test]
fn quantum_build_writes_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["qzx", "bell"] {
        let out = dir.path().join(format!("{name}.json"));
        let run = gqt(&[
            "quantum",
            "build",
            &fixture(&format!("{name}.quantum.json")),
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert_eq!(
            std::fs::read_to_string(&out).unwrap(),
            std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap()
        );
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format", "json", "fuzz", "--states", "8", "--props", "4", "--obs", "3", "--seed", "9",
        "--count", "100",
    ];
    let a = gqt(&args);
    let b = gqt(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["models_checked"], 100);
}

#[test]
fn help_goes_to_stdout() {
    let run = gqt(&["--help"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("quantum"));
}
