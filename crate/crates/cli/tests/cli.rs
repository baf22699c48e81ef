//! End-to-end runs of the `qfano` binary.

use std::process::{Command, Output};

use qfano_core::search::SearchResult;
use qfano_core::LinkSolution;

fn qfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfano")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qfano(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn hilbert_row() {
    assert_eq!(stdout(&["hilbert", "--q", "5", "--A3", "1/12", "--basket", "2,2,3,4", "--to", "5"]).trim(), "1 1 2 3 5 7");
    let explicit = stdout(&["hilbert", "--q", "7", "--A3", "1/30", "--basket", "2:1,6:1,10:3", "--to", "7"]);
    assert_eq!(explicit.trim(), "1 1 1 1 2 3 5 7");
}

#[test]
fn search_tables() {
    let six = stdout(&["search", "--q", "6", "--require-dim3A-le", "0", "--format", "table"]);
    assert!(six.contains("2/85") && six.contains("(5,17)"));
    assert_eq!(six.lines().count(), 4);
    let seven = stdout(&["search", "--q", "7", "--require-dim3A-le", "0"]);
    for basket in ["(2^3,3,4,5)", "(2^3,5,8)", "(3,8,9)", "(2,6,10)", "(2,3,13)"] {
        assert!(seven.contains(basket), "{basket}");
    }
    let csv = stdout(&["search", "--q", "6", "--require-dim3A-le", "0", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("A3,B,g,1,2,3,4,5,pairing"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn search_json_round_trip() {
    let text = stdout(&["search", "--q", "6", "--require-dim3A-le", "0", "--format", "json"]);
    let parsed: SearchResult = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.rows.len(), 3);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text.trim_end());
}

#[test]
fn search_config_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("search-q6.json");
    std::fs::write(&path, r#"{"q": 6, "require_dim3a_le": 0}"#).unwrap();
    let from_file = stdout(&["search", "--config", path.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["search", "--q", "6", "--require-dim3A-le", "0"]));
}

#[test]
fn replay_trace() {
    let short = stdout(&["link", "replay", "--id", "q7-basket-2-2-2-3-4-5-m4"]);
    assert!(short.trim_end().ends_with("SURVIVORS: 1"));
    let trace = stdout(&["link", "replay", "--id", "q5-torsion", "--trace"]);
    assert!(trace.contains(" KILLED torsion-index-6"));
    assert!(trace.trim_end().ends_with("SURVIVORS: 0"));
    assert_eq!(stdout(&["link", "list"]).lines().count(), 12);
}

#[test]
fn link_solve_scenario() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("conic.json");
    let scenario = r#"{
        "q": 5, "n": 3, "dim_m": 2, "torsion_order": 1, "qw_equals_q": true,
        "known_dims": [[1, 0], [2, 1], [3, 2]],
        "qhat_domain": [1, 2, 3],
        "smooth_centers": false,
        "points": [
            {"label": "P2", "kind": "cyclic-quotient", "r": 2, "aw": 1, "local_m": 1, "local_a": 1},
            {"label": "P3", "kind": "cyclic-quotient", "r": 3, "aw": 1, "local_m": 0, "local_a": 2},
            {"label": "P4", "kind": "cyclic-quotient", "r": 4, "aw": 1, "local_m": 3, "local_a": 1}
        ]
    }"#;
    std::fs::write(&path, scenario).unwrap();
    let p = path.to_str().unwrap();
    let sols: Vec<LinkSolution> = serde_json::from_str(&stdout(&["link", "solve", "--scenario", p, "--format", "json"])).unwrap();
    let p4: Vec<_> = sols.iter().filter(|s| s.center == "P4").collect();
    assert_eq!(p4.len(), 1);
    assert_eq!(qfano_core::ratmod::fmt_rational(&p4[0].beta), "3/4");
    assert!(stdout(&["link", "solve", "--scenario", p, "--trace"]).contains(" KILLED "));
}

#[test]
fn other_commands() {
    assert!(stdout(&["wps", "--weights", "1,2,3,4,5", "--degree", "10", "--to", "5"]).contains("1/12"));
    let eq = stdout(&["equivariant", "--model", "1,2,3,4,5 : 8 / mu 2 : 0,1,1,1,1 ; 0"]);
    assert!(eq.contains("t^2(1+s) + t^3(1+2s) + t^4(2+3s) + t^5(3+4s)"));
    assert!(stdout(&["classify-x10", "--poly", "x4^2*x2 + x3^2*x4 + x1^10"]).contains("non-terminal"));
    let dp = stdout(&["dp", "--surface", "P(1,2,3)"]);
    let row: Vec<&str> = dp.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row, ["P(1,2,3)", "6", "6", "1/6", "A1A2", "0", "1", "2", "3", "4"]);
}

#[test]
fn exit_codes_and_messages() {
    let domain = qfano(&["hilbert", "--q", "5", "--A3", "1/13", "--basket", "2:1"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("is not an integer"));
    let bad_q = qfano(&["search", "--q", "10"]);
    assert_eq!(bad_q.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_q.stderr).contains("10"));
    assert_eq!(qfano(&["hilbert", "--q", "5", "--A3", "0.5", "--basket", "2"]).status.code(), Some(2));
    assert_eq!(qfano(&["search", "--q", "6", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(qfano(&["link", "solve", "--scenario", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(qfano(&["link", "replay", "--id", "nope"]).status.code(), Some(1));
}
