//! End-to-end coverage of the subcommand surface: exit codes, report
//! shapes, file input, and the report re-verification loop (outputs fed
//! back through `check`/`apply` reproduce their claimed statuses).

use std::io::Write;
use std::process::Command;

fn run_cli(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fueter"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("non-JSON report for {args:?}: {e}\n{text}"));
    (code, v)
}

fn write_temp(name: &str, value: &serde_json::Value) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("fueter-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "{value}").unwrap();
    path
}

#[test]
fn check_exit_codes() {
    // harmonic scalar: exit 0
    let (code, v) = run_cli(&["check", "--expr", "x0^2 - x1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 0);
    // non-harmonic scalar: exit 1
    let (code, v) = run_cli(&["check", "--expr", "x0^2"]);
    assert_eq!(code, 1);
    assert_eq!(v["regular"], false);
    // parse error: exit 2 with position
    let (code, v) = run_cli(&["check", "--expr", "x0 +"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "syntax");
    // non-r2 denominator: exit 2
    let (code, v) = run_cli(&["check", "--expr", "x0/x1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "non-r2-denominator");
    // 1-regular pair
    let (code, _) = run_cli(&["check", "--k", "1", "--expr-components", "0 - x2 - i*x3, 0"]);
    assert_eq!(code, 0);
    // rank mismatch is a usage error
    let (code, _) = run_cli(&["check", "--k", "3", "--expr-components", "1,0,0"]);
    assert_eq!(code, 2);
}

#[test]
fn apply_and_reverify() {
    // applying Dk to a non-regular rank-2 field, then feeding the mixed
    // result through D1k exercises the reported output directly
    let (code, v) = run_cli(&["apply", "--op", "Dk", "--expr-components", "x0^2,x1*x2,0"]);
    assert_eq!(code, 0);
    let result = v["result"].clone();
    let path = write_temp("dk_result.json", &result);
    // feed the mixed field into D1k: the complex property makes it zero
    let (code, v2) = run_cli(&["apply", "--op", "D1k", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let comps = v2["result"]["comps"].as_array().unwrap();
    for c in comps {
        assert_eq!(c["terms"].as_array().unwrap().len(), 0, "D1k o Dk = 0");
    }

    // D on the coordinate quaternion = -2
    let (code, v) = run_cli(&["apply", "--op", "D", "--expr-components", "x0,x1,x2,x3"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["w"]["terms"],
        serde_json::json!([[[0, 0, 0, 0], [-2, 1, 0, 1]]])
    );

    // eta of the constant (0,1,0) field = 2i e1
    let (code, v) = run_cli(&["apply", "--op", "eta", "--expr-components", "0,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["e"][0]["terms"],
        serde_json::json!([[[0, 0, 0, 0], [0, 1, 2, 1]]])
    );
    // and eta-inv returns the original field
    let path = write_temp("eta_result.json", &v["result"]);
    let (code, v2) = run_cli(&["apply", "--op", "eta-inv", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v2["result"]["comps"][1]["terms"][0][1], serde_json::json!([1, 1, 0, 1]));

    // d then star through files
    let form = serde_json::json!({
        "kind": "form", "p": 1,
        "comps": [[[1], {"m": 0, "terms": [[[1,0,0,0],[1,1,0,1]]]}]]
    });
    let path = write_temp("one_form.json", &form);
    let (code, v) = run_cli(&["apply", "--op", "d", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let d_path = write_temp("two_form.json", &v["result"]);
    let (code, v2) = run_cli(&["apply", "--op", "star", "--in", d_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // *(dx0^dx1) = dx2^dx3
    assert_eq!(v2["result"]["comps"][0][0], serde_json::json!([2, 3]));

    // Dbar on the coordinate quaternion = 4
    let (code, v) = run_cli(&["apply", "--op", "Dbar", "--expr-components", "x0,x1,x2,x3"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["w"]["terms"],
        serde_json::json!([[[0, 0, 0, 0], [4, 1, 0, 1]]])
    );

    // L1 of the constant (0,1) pair = z_1^{1'} = -x2 + i x3
    let (code, v) = run_cli(&["apply", "--op", "L1", "--expr-components", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["comps"][0]["terms"],
        serde_json::json!([[[0, 0, 0, 1], [0, 1, 1, 1]], [[0, 0, 1, 0], [-1, 1, 0, 1]]])
    );

    // unknown op: exit 2
    let (code, _) = run_cli(&["apply", "--op", "Q", "--expr", "x0"]);
    assert_eq!(code, 2);
}

#[test]
fn basis_dimensions() {
    let (code, v) = run_cli(&["basis", "--k", "1", "--deg", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 6);
    let (code, v) = run_cli(&["basis", "--k", "2", "--deg", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 3);
    // k = 0 is the harmonic basis
    let (code, v) = run_cli(&["basis", "--k", "0", "--deg", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 9);
}

#[test]
fn decompose_exit_codes_and_reverify() {
    let (code, v) = run_cli(&["decompose", "--h", "x0", "--max-denom", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["minimal_denom"], 1);
    // every claim in the certificate is exact
    for claim in v["certificate"]["claims"].as_array().unwrap() {
        assert_ne!(claim["status"], "nonzero", "claim {claim}");
    }
    // re-verify: the reported pairs are 1-regular through `check`
    let path = write_temp("f_pair.json", &v["f_pair"]);
    let (code, _) = run_cli(&["check", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0, "reported f_pair re-verifies as 1-regular");
    let path = write_temp("g_pair.json", &v["g_pair"]);
    let (code, _) = run_cli(&["check", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0, "reported g_pair re-verifies as 1-regular");

    // the constant function cannot decompose on punctured R^4: exit 3
    let (code, v) = run_cli(&["decompose", "--h", "1", "--max-denom", "4"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "no-solution-in-ansatz");

    // non-harmonic input: exit 2
    let (code, v) = run_cli(&["decompose", "--h", "x0^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "not-harmonic");
}

#[test]
fn obstruction_clear_case() {
    let (code, v) = run_cli(&["obstruction", "--h", "x0^2 - x1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "clear");
    assert_eq!(v["period_pi2"], serde_json::json!([0, 1]));
    // conjugate re-verifies the clear case constructively
    let (code, _) = run_cli(&["conjugate", "--h", "x0^2 - x1^2"]);
    assert_eq!(code, 0);
}

#[test]
fn selftest_runs_clean_and_deterministic() {
    let (code, v) = run_cli(&["selftest", "--seed", "42"]);
    assert_eq!(code, 0, "selftest failures: {}", v["checks"]);
    assert_eq!(v["failed"], 0);
    let (code2, v2) = run_cli(&["selftest", "--seed", "42"]);
    assert_eq!(code2, 0);
    assert_eq!(v, v2, "selftest reports are deterministic");
}
