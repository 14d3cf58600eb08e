use std::process::{Command, Output};

fn liars(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liars")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_golden_rows() {
    let o = liars(&["census", "--limit", "10000", "--algorithm", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,count,normalized,predicted");
    assert_eq!(lines[1], "10,2,,");
    assert!(lines[2].starts_with("100,21,"));
    assert_eq!(lines[3], "1000,243,0.1601,852.1301");
    assert!(lines[4].starts_with("10000,2553,0.2036,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alg1:"));
}

#[test]
fn semiprime_golden_rows() {
    let o = liars(&["semiprimes", "--limit", "1e4", "--checkpoints", "1000,10000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "x,count1,prediction1,count2,prediction2\n1000,166,184.70,28,46.17\n10000,1544,1591.44,298,397.86\n"
    );
}

#[test]
fn formats_change_layout_not_values() {
    let json = liars(&["semiprimes", "--limit", "1000", "--checkpoints", "1000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v[0]["count_coprime"], 166);
    assert_eq!(v[0]["count_1mod4"], 28);
    let md = liars(&["census", "--limit", "1000", "--checkpoints", "1000", "--format", "markdown"]);
    assert!(stdout(&md).contains("| 1000 | 243 | 0.1601 | 852.1301 |"));
}

#[test]
fn inspect_reports_classification() {
    let o = liars(&["inspect", "8911"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("factorization,7 * 19 * 67\n"));
    assert!(text.contains("strong,1782\n"));
    assert!(text.contains("carmichael,true\n"));
    assert!(text.contains("worst_case,case3_carmichael3\n"));
    assert!(text.contains("brute_force_checked,true\n"));
    let nine = stdout(&liars(&["inspect", "9"]));
    assert!(nine.contains("two_euler_liars,true\n"));
    assert!(nine.contains("two_euler_liars_by_cases,false\n"));
    assert!(nine.contains("strong_liars,{1 8}\n"));
}

#[test]
fn verify_reports_euler_case_disagreements() {
    let o = liars(&["verify", "--limit", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("strong_count,"));
    let line = text.lines().find(|l| l.starts_with("euler_case_split_disagreement")).unwrap();
    assert!(line.ends_with(",9 81"), "{line}");
}

#[test]
fn exit_codes() {
    assert_eq!(liars(&["census", "--limit", "10", "--checkpoints", "50"]).status.code(), Some(1));
    assert_eq!(liars(&["nonsense"]).status.code(), Some(1));
    assert_eq!(liars(&["verify", "--limit", "2000000"]).status.code(), Some(1));
    assert_eq!(liars(&["inspect", "2"]).status.code(), Some(1));
    assert_eq!(liars(&["--help"]).status.code(), Some(0));
    let refused = Command::new(env!("CARGO_BIN_EXE_liars"))
        .args(["census", "--limit", "100000"])
        .env("LIARS_MAX_TABLE_ENTRIES", "1000")
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn table_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.bin");
    let p = path.to_str().unwrap();
    let first = liars(&["census", "--limit", "10000", "--table-cache", p]);
    assert!(path.exists());
    let second = liars(&["census", "--limit", "1000", "--table-cache", p, "--threads", "2"]);
    assert_eq!(second.status.code(), Some(0));
    assert!(stdout(&first).contains("1000,243,0.1601"));
    assert!(stdout(&second).contains("1000,243,0.1601"));
}

#[test]
fn constants_and_bench() {
    let c = stdout(&liars(&["constants", "--bound", "100000"]));
    assert!(c.contains("exp_neg_gamma,0.5614594835"));
    for line in c.lines() {
        assert_eq!(line.split(',').count(), 3, "{line}");
    }
    let b = liars(&["bench", "--limit", "10000", "--checkpoints", "1000,10000"]);
    assert_eq!(b.status.code(), Some(0));
    let text = stdout(&b);
    assert!(text.lines().nth(1).unwrap().starts_with("1000,243,"));
    assert!(text.lines().nth(2).unwrap().starts_with("10000,2553,"));
}
