use std::path::{Path, PathBuf};

use groupmatch_cli::report::Report;
use groupmatch_cli::{run, EXIT_ABSENT, EXIT_INVALID, EXIT_LIMIT, EXIT_OK};
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Run {
    let mut argv = vec!["groupmatch"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn report(r: &Run) -> Report {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("bad report ({e}):\n{}", r.out))
}

fn temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("groupmatch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

const EXAMPLE: &str = "z12-paper.json";

#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str], i32)] = &[
        ("deficiency.json", &["deficiency"], EXIT_OK),
        ("witness-ell2.json", &["witness", "--ell", "2"], EXIT_OK),
        ("witness-ell3.json", &["witness", "--ell", "3"], EXIT_ABSENT),
        ("rho.json", &["rho"], EXIT_OK),
        ("lambda.json", &["lambda"], EXIT_OK),
        (
            "partition-right.json",
            &["partition", "--side", "right"],
            EXIT_OK,
        ),
        ("chowla.json", &["chowla"], EXIT_OK),
    ];
    let path = fixture(EXAMPLE);
    for (golden, args, code) in cases {
        let mut argv = args.to_vec();
        argv.insert(1, &path);
        let r = call(&argv);
        assert_eq!(r.code, *code, "{golden}: {}", r.err);
        let expected =
            std::fs::read_to_string(root().join("fixtures/golden").join(golden)).unwrap();
        assert_eq!(r.out, expected, "{golden} differs");
    }
    let r = call(&["construct", "--group", "Z12", "--n", "7", "--ell", "2"]);
    let expected =
        std::fs::read_to_string(root().join("fixtures/golden/construct-z12-7-2.json")).unwrap();
    assert_eq!(r.out, expected);
}

#[test]
fn example_fixture_values() {
    let r = call(&["deficiency", &fixture(EXAMPLE)]);
    let rep = report(&r);
    assert_eq!(rep.results["delta"], 3);
    assert_eq!(rep.results["by_subsets"], 3);
    assert_eq!(rep.results["by_subgroups"], 3);
    assert_eq!(rep.results["agreement"], true);

    let r = call(&["witness", &fixture(EXAMPLE), "--ell", "3"]);
    assert_eq!(r.code, EXIT_ABSENT);
    assert_eq!(
        report(&r).results["reason"],
        "no witness: deficiency not greater than ell"
    );
    assert!(r
        .err
        .contains("no witness: deficiency not greater than ell"));

    let r = call(&["partition", &fixture(EXAMPLE), "--side", "right"]);
    let rep = report(&r);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(rep.results["k"], 3);
    match &rep.certificates[0] {
        groupmatch_cli::report::Certificate::Partition { classes, .. } => {
            assert_eq!(classes.len(), 3)
        }
        other => panic!("unexpected certificate {other:?}"),
    }

    let r = call(&[
        "partition",
        &fixture(EXAMPLE),
        "--side",
        "right",
        "--k",
        "2",
    ]);
    assert_eq!(r.code, EXIT_ABSENT);
    assert_eq!(report(&r).results["found"], false);
}

#[test]
fn reports_are_deterministic() {
    let args: &[&[&str]] = &[
        &["deficiency"],
        &["rho"],
        &["lambda"],
        &["partition", "--side", "left"],
        &["match", "--defect", "4"],
    ];
    for f in ["z12-paper.json", "z12-infinite-rho.json", "z2xz-mixed.json"] {
        let path = fixture(f);
        for a in args {
            let mut argv = a.to_vec();
            argv.insert(1, &path);
            let first = call(&argv);
            for _ in 0..3 {
                let again = call(&argv);
                assert_eq!(first.out, again.out);
                assert_eq!(first.code, again.code);
            }
        }
    }
}

/// Every certificate produced on every fixture re-verifies.
#[test]
fn certificates_round_trip() {
    let mut commands: Vec<Vec<String>> = Vec::new();
    for f in ["z12-paper.json", "z12-infinite-rho.json", "z2xz-mixed.json"] {
        let p = fixture(f);
        for a in [
            vec!["deficiency"],
            vec!["rho"],
            vec!["lambda"],
            vec!["chowla"],
            vec!["partition", "--side", "left"],
            vec!["partition", "--side", "right"],
            vec!["partition", "--side", "left", "--k", "4"],
            vec!["match", "--defect", "4"],
            vec!["witness", "--ell", "0"],
            vec!["witness", "--ell", "2"],
        ] {
            let mut v: Vec<String> = a.iter().map(|s| s.to_string()).collect();
            v.insert(1, p.clone());
            commands.push(v);
        }
    }
    let mut verified = 0;
    for (i, argv) in commands.iter().enumerate() {
        let args: Vec<&str> = argv.iter().map(String::as_str).collect();
        let r = call(&args);
        if r.code != EXIT_OK {
            continue;
        }
        let rep = report(&r);
        if rep.certificates.is_empty() {
            continue;
        }
        let cert = temp(&format!("report-{i}.json"), &r.out);
        let v = call(&["verify", &argv[1], "--certificate", &cert]);
        assert_eq!(v.code, EXIT_OK, "{argv:?}: {}", v.err);
        assert_eq!(report(&v).results["valid"], true);
        verified += rep.certificates.len();
    }
    assert!(verified >= 20, "only {verified} certificates checked");

    // construct: the instance lives in the results.
    for (g, n, l) in [("Z12", "7", "2"), ("Z2xZ4", "5", "1"), ("Z9", "4", "0")] {
        let r = call(&["construct", "--group", g, "--n", n, "--ell", l]);
        assert_eq!(r.code, EXIT_OK, "{}", r.err);
        let rep = report(&r);
        let inst = temp(
            &format!("inst-{g}-{n}-{l}.json"),
            &rep.results["instance"].to_string(),
        );
        let cert = temp(&format!("cert-{g}-{n}-{l}.json"), &r.out);
        let v = call(&["verify", &inst, "--certificate", &cert]);
        assert_eq!(v.code, EXIT_OK, "{}", v.err);
        assert!(rep.results["delta"].as_u64().unwrap() > l.parse::<u64>().unwrap());
    }
}

#[test]
fn verify_accepts_bare_certificates_and_rejects_bad_ones() {
    let p = fixture(EXAMPLE);
    let good = r#"{"kind": "matching", "pairs": [[[0],[3]], [[1],[2]]], "defect": 6}"#;
    let v = call(&["verify", &p, "--certificate", &temp("bare.json", good)]);
    assert_eq!(v.code, EXIT_OK, "{}", v.err);

    let list = format!("[{good}, {good}]");
    let v = call(&["verify", &p, "--certificate", &temp("list.json", &list)]);
    assert_eq!(report(&v).results["checked"], 2);

    // 0 + 4 = 4 lies in A.
    let bad = r#"{"kind": "matching", "pairs": [[[0],[4]]], "defect": 7}"#;
    let v = call(&["verify", &p, "--certificate", &temp("bad.json", bad)]);
    assert_eq!(v.code, EXIT_ABSENT);
    assert_eq!(report(&v).results["valid"], false);

    // A matching of defect 2 would contradict deficiency 3.
    let forged = r#"{"kind": "stabilizer_pair", "S": [[0],[2],[4],[6],[8],[10]], "R": [[0],[2],[4],[6],[8],[10]], "value": 4}"#;
    let v = call(&["verify", &p, "--certificate", &temp("forged.json", forged)]);
    assert_eq!(v.code, EXIT_ABSENT);

    let wrong_level = r#"{"kind": "witness", "S": [[0],[2],[4],[6],[8],[10]], "R": [[2],[4],[6],[8],[10]], "Y": [[1],[11]], "Z": [[1],[3],[11]], "level": 3}"#;
    let v = call(&[
        "verify",
        &p,
        "--certificate",
        &temp("level.json", wrong_level),
    ]);
    assert_eq!(v.code, EXIT_ABSENT);
    assert!(v.err.contains("|Y| = 2"));

    let overlapping = r#"{"kind": "partition", "side": "right", "classes": [
        {"elements": [[1]], "pairs": [[[0],[1]]]},
        {"elements": [[1]], "pairs": [[[0],[1]]]}]}"#;
    let v = call(&[
        "verify",
        &p,
        "--certificate",
        &temp("overlap.json", overlapping),
    ]);
    assert_eq!(v.code, EXIT_ABSENT);

    let garbage = r#"{"kind": "teapot"}"#;
    let v = call(&[
        "verify",
        &p,
        "--certificate",
        &temp("garbage.json", garbage),
    ]);
    assert_eq!(v.code, EXIT_INVALID);
    let v = call(&["verify", &p, "--certificate", &temp("empty.json", "[]")]);
    assert_eq!(v.code, EXIT_INVALID);
}

#[test]
fn invalid_inputs_exit_two() {
    let identity_in_b = temp(
        "identity.json",
        r#"{"group": "Z6", "A": [[1],[2]], "B": [[0],[3]]}"#,
    );
    let r = call(&["deficiency", &identity_in_b]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("identity"), "{}", r.err);
    assert!(r.out.is_empty());

    let cases = [
        (r#"{"group": "Q8", "A": [[1]], "B": [[1]]}"#, "`group`"),
        (r#"{"group": "Z6", "A": [[1, 2]], "B": [[1]]}"#, "`A`[0]"),
        (r#"{"group": "Z6", "A": [[1]], "B": [[1], [2]]}"#, "|A| = 1"),
        (r#"{"group": "Z6", "A": [[1]]}"#, "`B`"),
        (r#"{"group": "Z6", "A": [[1]], "B": [[1]], "C": []}"#, "`C`"),
        (r#"{"group": "Z6", "A": [], "B": []}"#, "empty"),
        ("not json", "expected"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let r = call(&["deficiency", &temp(&format!("bad-{i}.json"), text)]);
        assert_eq!(r.code, EXIT_INVALID, "{text}");
        assert!(r.err.contains(needle), "{text}: {}", r.err);
    }

    let r = call(&["deficiency", "/nonexistent/instance.json"]);
    assert_eq!(r.code, EXIT_INVALID);
    let r = call(&["match", &fixture(EXAMPLE), "--defect", "9"]);
    assert_eq!(r.code, EXIT_INVALID);
    let r = call(&["construct", "--group", "Z", "--n", "3", "--ell", "0"]);
    assert_eq!(r.code, EXIT_INVALID);
    let r = call(&["construct", "--group", "Z12", "--n", "12", "--ell", "0"]);
    assert_eq!(r.code, EXIT_INVALID);
}

#[test]
fn usage_errors_exit_two_with_usage_on_stderr() {
    for args in [
        &["frobnicate"][..],
        &["deficiency"],
        &["witness", "x.json"],
        &["deficiency", "x.json", "--bogus"],
        &["partition", "x.json", "--side", "up"],
        &["partition", "x.json", "--side", "left", "--k", "0"],
        &[],
    ] {
        let r = call(args);
        assert_eq!(r.code, EXIT_INVALID, "{args:?}");
        assert!(r.err.contains("Usage"), "{args:?}: {}", r.err);
        assert!(r.out.is_empty());
    }
    let r = call(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("deficiency"));
}

#[test]
fn duplicates_are_removed_with_a_warning() {
    let dup = temp(
        "dup.json",
        r#"{"group": "Z6", "A": [[1],[7],[2]], "B": [[1],[2]]}"#,
    );
    let r = call(&["deficiency", &dup]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.err.contains("warning: duplicate elements in `A`"));
    assert_eq!(
        report(&r).inputs["instance"]["A"],
        serde_json::json!([[1], [2]])
    );

    let short = temp(
        "dup-short.json",
        r#"{"group": "Z6", "A": [[1],[7]], "B": [[1],[2]]}"#,
    );
    let r = call(&["deficiency", &short]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("|A| = 1 but |B| = 2"), "{}", r.err);
}

#[test]
fn absent_objects_exit_one() {
    let p = fixture(EXAMPLE);
    assert_eq!(call(&["match", &p, "--defect", "2"]).code, EXIT_ABSENT);
    assert_eq!(call(&["match", &p, "--defect", "3"]).code, EXIT_OK);
    assert_eq!(
        call(&["partition", &p, "--side", "left", "--k", "1"]).code,
        EXIT_ABSENT
    );
    let inf = fixture("z12-infinite-rho.json");
    let r = call(&["partition", &inf, "--side", "right"]);
    assert_eq!(r.code, EXIT_ABSENT);
    let r = call(&["rho", &inf]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(report(&r).results["rho"], "infinite");
    // Z12, n = 11, ell = 0: every proper subgroup order divides 12.
    let r = call(&["construct", "--group", "Z12", "--n", "11", "--ell", "0"]);
    assert_eq!(r.code, EXIT_ABSENT, "{}", r.err);
}

#[test]
fn large_instances_fall_back_or_hit_limits() {
    // |A| = 30 is beyond the subset sweep; subgroup routes still answer.
    let a: Vec<String> = (0..30).map(|i| format!("[{i}]")).collect();
    let b: Vec<String> = (1..31).map(|i| format!("[{i}]")).collect();
    let text = format!(
        r#"{{"group": "Z64", "A": [{}], "B": [{}]}}"#,
        a.join(","),
        b.join(",")
    );
    let p = temp("large.json", &text);
    let r = call(&["deficiency", &p]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let rep = report(&r);
    assert_eq!(rep.results["by_subsets"], Value::Null);
    assert_eq!(rep.results["agreement"], true);
    let r = call(&["rho", &p]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(report(&r).results["method"], "stabilizer_pairs");

    // A group above the order limit cannot enumerate subgroups.
    let huge = temp(
        "huge.json",
        r#"{"group": "Z100000", "A": [[1]], "B": [[5]]}"#,
    );
    let r = call(&["witness", &huge, "--ell", "0"]);
    assert_eq!(r.code, EXIT_LIMIT, "{}", r.err);
}

#[test]
fn pretty_renders_the_same_payload() {
    let r = call(&["--pretty", "deficiency", &fixture(EXAMPLE)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("delta"));
    assert!(r.out.contains("{1, 2, 3, 4, 6, 8, 10, 11}"));
    let r = call(&["deficiency", &fixture(EXAMPLE), "--pretty"]);
    assert!(r.out.starts_with("deficiency"));
}

#[test]
fn binary_matches_library() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_groupmatch"))
        .args(["deficiency", &fixture(EXAMPLE)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        call(&["deficiency", &fixture(EXAMPLE)]).out
    );
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_groupmatch"))
        .args(["witness", &fixture(EXAMPLE), "--ell", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ABSENT));
}
