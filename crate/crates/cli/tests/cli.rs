//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output, Stdio};

fn pg240(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pg240"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_single_check_passes() {
    let out = pg240(&["verify", "--check", "remark-hhz"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("remark-hhz"));
    assert!(text.contains("pass"));
    assert!(text.contains("1 checks passed"));
}

#[test]
fn verify_filters_to_the_named_checks() {
    let out = pg240(&["verify", "--check", "prop-combo", "--check", "lemma-x0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("prop-combo"));
    assert!(text.contains("lemma-x0"));
    assert!(!text.contains("thm-corresp"));
}

#[test]
fn verify_rejects_unknown_ids() {
    let out = pg240(&["verify", "--check", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_requires_a_target() {
    let out = pg240(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_lists_the_catalogue() {
    let out = pg240(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 21);
}

#[test]
fn export_packings_is_deterministic_json() {
    let a = pg240(&["export", "--what", "packings", "--format", "json"]);
    let b = pg240(&["export", "--what", "packings", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-identical across runs");
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let records = parsed.as_array().unwrap();
    assert_eq!(records.len(), 240);
    assert_eq!(records[0]["id"], "0.0.0.0");
    assert_eq!(records[0]["basepoint"], 8);
    assert_eq!(records[239]["id"], "7.4.2.1");
    assert_eq!(records[239]["height"], 14);
}

#[test]
fn export_codes_csv_has_240_rows() {
    let out = pg240(&["export", "--what", "codes", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("index,id,k8,k5,k3,k2,height\n"));
    assert_eq!(text.lines().count(), 241);
}

#[test]
fn export_poset_dot_has_240_nodes() {
    let out = pg240(&["export", "--what", "poset", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("digraph hasse {"));
    assert_eq!(text.matches("rank=same").count(), 15);
    assert!(text.contains("\"0.0.0.0\" -> \"0.0.0.1\";"));
}

#[test]
fn export_rejects_unsupported_pairs() {
    let out = pg240(&["export", "--what", "packings", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn packing_detail_views() {
    let out = pg240(&["packing", "--id", "0.0.0.0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("basepoint:    8"));
    assert!(text.contains("127 136 145 235 246 347 567"));

    let out = pg240(&["packing", "--triples", "124,235,346,457,156,267,137"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("height:       4 geodesic"));

    let out = pg240(&["packing", "--index", "239"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("14 geodesic"));
}

#[test]
fn packing_selector_errors_exit_2() {
    assert_eq!(pg240(&["packing"]).status.code(), Some(2));
    assert_eq!(
        pg240(&["packing", "--id", "0.0.0.0", "--index", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pg240(&["packing", "--id", "9.9.9.9"]).status.code(),
        Some(2)
    );
    assert_eq!(pg240(&["packing", "--index", "240"]).status.code(), Some(2));
    assert_eq!(
        pg240(&["packing", "--triples", "123,124"]).status.code(),
        Some(2)
    );
}

#[test]
fn kirkman_text_and_json_agree() {
    let text_out = pg240(&["kirkman", "--id", "0.0.0.0"]);
    assert_eq!(text_out.status.code(), Some(0));
    let text = stdout(&text_out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("day 1:"));

    let json_out = pg240(&["kirkman", "--id", "0.0.0.0", "--json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let days = parsed["days"].as_array().unwrap();
    assert_eq!(days.len(), 7);
    // Same girls per day in both renderings.
    for (line, day) in text.lines().zip(days) {
        let mut from_text: Vec<u32> = line
            .split(':')
            .nth(1)
            .unwrap()
            .split(['|', ' '])
            .filter_map(|t| t.trim().parse().ok())
            .collect();
        from_text.sort_unstable();
        let mut from_json: Vec<u32> = day
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|g| g.as_array().unwrap().iter())
            .map(|v| v.as_u64().unwrap() as u32)
            .collect();
        from_json.sort_unstable();
        assert_eq!(from_text, from_json);
    }
}

#[test]
fn game_solve_lists_eight_positions() {
    let out = pg240(&["game", "solve"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches('[').count(), 8 * 7);
    assert!(text.contains("(3 4 5 6)"));
    assert!(text.contains("(empty)"));
}

#[test]
fn game_play_engine_first_runs_to_a_win() {
    // The engine opens; the human's stdin is closed, so the game ends by
    // resignation after the engine's move.
    let mut child = Command::new(env!("CARGO_BIN_EXE_pg240"))
        .args(["game", "play", "--first", "engine"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("engine plays:"));
    assert!(text.contains("the winner is the engine") || text.contains("resigning"));
}

#[test]
fn game_play_writes_a_json_transcript() {
    let dir = std::env::temp_dir().join("pg240-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("transcript.json");
    let _ = std::fs::remove_file(&path);
    let mut child = Command::new(env!("CARGO_BIN_EXE_pg240"))
        .args([
            "game",
            "play",
            "--first",
            "human",
            "--json-transcript",
            path.to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    {
        use std::io::Write;
        let stdin = child.stdin.as_mut().unwrap();
        // A legal human opening; everything after is up to the engine.
        writeln!(stdin, "take 6 7").unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert!(parsed["moves"].as_array().unwrap().len() >= 1);
    assert_eq!(parsed["moves"][0]["mv"], "take 6 7");
    assert!(parsed["winner"].is_string());
}
