use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn count_both_sides_agree() {
    let o = run(&["count", "--N", "7", "--a", "1,2,4", "--n-max", "8", "--side", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert!(v["first_mismatch"].is_null());
    for table in v["tables"].as_array().unwrap() {
        assert_eq!(table["rows"][8]["by_k"], serde_json::json!(["1", "2", "1"]));
    }
}

#[test]
fn invalid_system_exits_2() {
    let o = run(&["count", "--N", "7", "--a", "1,2,3", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SumsNotDistinct"));
    assert!(o.stdout.is_empty());
    let o = run(&["count", "--N", "6", "--a", "1,2,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--N", "7", "--a", "1,2,4", "--checks", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_table_at_zero() {
    let o = run(&["count", "--N", "3", "--a", "1,2", "--n-max", "0", "--side", "F"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rows"], serde_json::json!([{"by_k": ["1"], "n": 0}]));
}

#[test]
fn csv_is_zero_padded() {
    let o = run(&[
        "count", "--N", "7", "--a", "1,2,4", "--n-max", "8", "--side", "G", "--output", "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "side,n,k0,k1,k2");
    assert_eq!(lines[1], "G,0,1,0,0");
    assert_eq!(lines[9], "G,8,1,2,1");
    assert!(lines.iter().all(|l| l.split(',').count() == 5));
}

#[test]
fn expand_product_row() {
    let o = run(&[
        "expand", "--what", "product", "--N", "7", "--a", "1,2,4", "--trunc", "8", "--output", "table",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.trim() == "q^8  1 + 2d + d^2"));
}

#[test]
fn expand_g_zero_is_one() {
    let o = run(&[
        "expand", "--what", "gm", "--m", "0", "--N", "7", "--a", "1,2,4", "--trunc", "10",
    ]);
    assert_eq!(stdout(&o).trim(), r#"{"terms":[{"c":"1","d":0,"q":0}],"trunc":10}"#);
}

#[test]
fn limit_and_product_are_byte_identical() {
    let sys = ["--N", "9", "--a", "1,3,5", "--trunc", "20"];
    let limit = run(&[&["expand", "--what", "limit"][..], &sys].concat());
    let product = run(&[&["expand", "--what", "product"][..], &sys].concat());
    assert_eq!(limit.status.code(), Some(0));
    assert_eq!(limit.stdout, product.stdout);
}

#[test]
fn verify_theorem() {
    let o = run(&[
        "verify", "--N", "7", "--a", "1,2,4", "--trunc", "40", "--checks", "theorem",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["checks"][0]["check"], "theorem");
}

#[test]
fn verify_tmj() {
    let o = run(&["verify", "--N", "7", "--a", "1,2,4", "--checks", "tmj"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"][0]["cases"], 9);
}

#[test]
fn verify_battery_in_order() {
    let o = run(&["verify", "--battery"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    let moduli: Vec<u64> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["system"]["N"].as_u64().unwrap())
        .collect();
    assert_eq!(moduli, vec![3, 7, 9, 15]);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["checks"].as_array().unwrap().len(), 8);
    }
}

#[test]
fn battery_excludes_explicit_system() {
    let o = run(&["verify", "--battery", "--N", "7"]);
    assert_eq!(o.status.code(), Some(2));
}
