use curvejac_cli::{run, EXIT_DIMENSION, EXIT_EMPTY, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("curvejac").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const LINE: &str = r#"{"n": 4, "d": 1, "components": [{"coeffs": ["1"]}, {"coeffs": ["0", "1"]}, {"coeffs": []}, {"coeffs": []}, {"coeffs": []}]}"#;
const TOY: &str =
    r#"{"n": 4, "e": 1, "f": {"nvars": 5, "homogeneous_degree": 1, "terms": [{"exp": [0, 0, 0, 0, 1], "coef": "1"}]}}"#;

#[test]
fn fixture_catalog() {
    let r = cli(&["fixture", "A"], "");
    assert_eq!(r.code, EXIT_OK);
    let v = json(&r);
    assert_eq!(v["d"], 1);
    for key in ["q", "l", "p", "f0"] {
        assert_eq!(v[key]["nvars"], 5, "{key}");
    }
    assert_eq!(v["c0"]["components"].as_array().unwrap().len(), 5);
    assert_eq!(cli(&["fixture", "A"], "").stdout, r.stdout);
    let z = cli(&["fixture", "Z"], "");
    assert_eq!(z.code, EXIT_INPUT);
    assert!(z.stdout.is_empty() && z.stderr.contains("unknown fixture"));
}

#[test]
fn fixture_round_trip_through_verify() {
    for name in ["A", "B"] {
        let bundle = cli(&["fixture", name], "").stdout;
        let r = cli(&["verify", "-"], &bundle);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        let v = json(&r);
        assert_eq!(v["checks"].as_array().unwrap().len(), 10);
        assert_eq!(v["passed"], true);
        assert_eq!(v["run"]["seed"], 0);
        assert_eq!(v["run"]["tolerance"], "1e-8");
    }
}

#[test]
fn verify_reports_broken_invariant() {
    let mut v: Value = serde_json::from_str(&cli(&["fixture", "A"], "").stdout).unwrap();
    v["c0"]["components"][2] = serde_json::json!({"coeffs": ["1"]});
    v.as_object_mut().unwrap().remove("f0");
    let r = cli(&["verify", "-"], &v.to_string());
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("q(c0(t)) ≡ 0"), "{}", r.stderr);
}

#[test]
fn verify_failing_mandatory_check_exits_2() {
    let r = cli(&["verify", "--fixture", "A-fermat"], "");
    assert_eq!(r.code, EXIT_INPUT);
    let v = json(&r);
    assert_eq!(v["passed"], false);
    assert_eq!(v["rank"], 5);
}

#[test]
fn verify_is_deterministic() {
    for format in ["json", "text"] {
        let a = cli(&["verify", "--fixture", "B", "--seed", "9", "--format", format], "");
        let b = cli(&["verify", "--fixture", "B", "--seed", "9", "--format", format], "");
        assert_eq!(a.code, EXIT_OK);
        assert_eq!(a.stdout, b.stdout);
    }
    let text = cli(&["verify", "--fixture", "A", "--format", "text"], "").stdout;
    assert!(text.contains("-51/16") && text.contains("summary: 10 checks, 0 failed"));
}

#[test]
fn jacobian_ranks() {
    let r = json(&cli(&["jacobian", "--fixture", "A"], ""));
    assert_eq!((r["rank"].as_u64(), r["tangent_dim"].as_u64()), (Some(6), Some(4)));
    assert_eq!(r["rank_method"], "exact");

    let dir = tempfile::tempdir().unwrap();
    let toy = write(&dir, "toy.json", TOY);
    let line = write(&dir, "line.json", LINE);
    let t = json(&cli(&["jacobian", "--problem", &toy, "--curve", &line], ""));
    assert_eq!((t["rank"].as_u64(), t["tangent_dim"].as_u64()), (Some(2), Some(8)));

    let e = json(&cli(
        &[
            "jacobian",
            "--fixture",
            "A",
            "--form",
            "eval",
            "--points",
            "-1/2,1,2,3,4,5",
        ],
        "",
    ));
    assert_eq!(e["rank"], r["rank"]);
    assert_eq!(e["jacobian"]["form"], "evaluation");

    let c = json(&cli(
        &[
            "jacobian",
            "--fixture",
            "B-complex",
            "--form",
            "eval",
            "--points",
            "i,-i,-2,-3/2,-1/2,0,1/2,3/2,2,1/4,-3/4",
        ],
        "",
    ));
    assert_eq!(c["rank_method"], "numeric");
    assert_eq!(c["rank"], 11);
    assert_eq!(c["singular_values"].as_array().unwrap().len(), 11);
}

#[test]
fn jacobian_errors() {
    let dir = tempfile::tempdir().unwrap();
    let line = write(&dir, "line.json", LINE);
    let broken = write(&dir, "broken.json", "{\"n\": 4,\n \"e\": }");
    let r = cli(&["jacobian", "--problem", &broken, "--curve", &line], "");
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let wrong_d = write(&dir, "d.json", &TOY.replace("\"e\": 1", "\"d\": 2, \"e\": 1"));
    assert_eq!(
        cli(&["jacobian", "--problem", &wrong_d, "--curve", &line], "").code,
        EXIT_DIMENSION
    );
    let wrong_n = write(&dir, "n.json", &TOY.replace("\"n\": 4", "\"n\": 3"));
    assert_eq!(
        cli(&["jacobian", "--problem", &wrong_n, "--curve", &line], "").code,
        EXIT_DIMENSION
    );
    assert_eq!(
        cli(&["jacobian", "--fixture", "A", "--form", "eval", "--points", "1,2"], "").code,
        EXIT_DIMENSION
    );
    assert_eq!(
        cli(
            &[
                "jacobian",
                "--fixture",
                "A",
                "--form",
                "eval",
                "--points",
                "1,1,2,3,4,5"
            ],
            ""
        )
        .code,
        EXIT_INPUT
    );
    assert_eq!(cli(&["jacobian", "--fixture", "A", "--tol", "-1"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["jacobian"], "").code, EXIT_INPUT);
}

#[test]
fn through_dimensions() {
    let dim = |fx: &str, e: &str| json(&cli(&["through", "--fixture", fx, "--degree", e], ""))["dimension"].as_u64();
    assert_eq!(dim("A", "1"), Some(3));
    assert_eq!(dim("A", "5"), Some(120));
    assert_eq!(dim("B", "5"), Some(115));
    let r = json(&cli(&["through", "-", "--degree", "1"], LINE));
    assert_eq!(r["basis"].as_array().unwrap().len(), 3);
    assert_eq!(
        json(&cli(&["through", "--fixture", "B", "--degree", "5"], ""))["contains_f0"],
        true
    );
}

#[test]
fn sampling() {
    let r = cli(&["sample", "--fixture", "A", "--degree", "5", "--count", "20"], "");
    assert_eq!(r.code, EXIT_OK);
    let v = json(&r);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 20);
    assert!(records
        .iter()
        .all(|r| r["rank"] == 6 && r["tangent_dim"] == 4 && r["full_rank"] == true));
    assert_eq!(v["summary"]["fraction"], "20/20");
    assert_eq!(v["run"]["sample_count"], 20);
    let draws: Vec<u64> = records.iter().map(|r| r["draw"].as_u64().unwrap()).collect();
    assert_eq!(draws, (0..20).collect::<Vec<_>>());
    assert_eq!(
        cli(&["sample", "--fixture", "A", "--degree", "5", "--count", "20"], "").stdout,
        r.stdout
    );
    let other = cli(
        &[
            "sample",
            "--fixture",
            "A",
            "--degree",
            "5",
            "--count",
            "20",
            "--seed",
            "1",
        ],
        "",
    )
    .stdout;
    assert_ne!(other, r.stdout);

    let empty = json(&cli(&["sample", "--fixture", "A", "--degree", "5", "--count", "0"], ""));
    assert_eq!(empty["summary"]["fraction"], "0/0");
    assert!(empty["records"].as_array().unwrap().is_empty());

    let conic =
        r#"{"n": 2, "d": 2, "components": [{"coeffs": ["1"]}, {"coeffs": ["0", "1"]}, {"coeffs": ["0", "0", "1"]}]}"#;
    assert_eq!(
        cli(&["sample", "-", "--degree", "1", "--count", "3"], conic).code,
        EXIT_EMPTY
    );
    let flat = r#"{"n": 4, "d": 1, "components": [{"coeffs": ["1"]}, {"coeffs": ["1"]}, {"coeffs": []}, {"coeffs": []}, {"coeffs": []}]}"#;
    assert_eq!(
        cli(&["sample", "-", "--degree", "5", "--count", "3"], flat).code,
        EXIT_INPUT
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let r = cli(&["verify", "--fixture", "A", "--out", p], "");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["run"]["output"], p);
}

#[test]
fn only_documented_exit_codes() {
    let cases: [&[&str]; 6] = [
        &["bogus"],
        &["verify"],
        &["through", "--fixture", "A"],
        &["fixture", "A", "--precision", "99"],
        &["verify", "missing-file.json"],
        &["--help"],
    ];
    for args in cases {
        let code = cli(args, "").code;
        assert!(
            [EXIT_OK, EXIT_INPUT, EXIT_DIMENSION, EXIT_EMPTY].contains(&code),
            "{args:?} -> {code}"
        );
    }
}
