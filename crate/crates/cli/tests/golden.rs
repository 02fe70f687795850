use std::process::{Command, Output};

use serde_json::Value;

fn patwait(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patwait"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = patwait(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn abracadabra_expected() {
    assert_eq!(
        stdout(&["expected", "--pattern", "ABRACADABRA", "--alphabet", "A-Z", "--uniform"]),
        "3670344487444778\n"
    );
}

#[test]
fn eulerian_table() {
    let out = stdout(&["table", "eulerian", "--n", "4"]);
    assert_eq!(
        out,
        "n\\i\t0\t1\t2\t3\t4\n0\t1\t\t\t\t\n1\t\t1\t\t\t\n2\t\t1\t1\t\t\n3\t\t1\t4\t1\t\n4\t\t1\t11\t11\t1\n"
    );
    let row7 = stdout(&["table", "eulerian", "--n", "7"])
        .lines()
        .last()
        .unwrap()
        .to_string();
    assert_eq!(row7, "7\t\t1\t120\t1191\t2416\t1191\t120\t1");
}

#[test]
fn extended_eulerian_tables() {
    let poly = stdout(&["table", "eulerian-ext", "--poly", "--n", "4"]);
    let rows: Vec<&str> = poly.lines().collect();
    assert_eq!(rows[2], "1\t1+k\t-k\t\t\t");
    assert_eq!(rows[3], "2\t1+2k+k^2\t1-2k-2k^2\tk^2\t\t");
    assert_eq!(
        rows[5],
        "4\t1+4k+6k^2+4k^3+k^4\t11+12k-6k^2-12k^3-4k^4\t11-12k-6k^2+12k^3+6k^4\t1-4k+6k^2-4k^3-4k^4\tk^4"
    );
    let at2 = stdout(&["table", "eulerian-ext", "--k", "2", "--n", "2"]);
    assert_eq!(at2, "n\\i\t0\t1\t2\n0\t1\t\t\n1\t3\t-2\t\n2\t9\t-11\t4\n");
}

#[test]
fn ht_moments() {
    assert_eq!(
        stdout(&["moments", "--pattern", "HT", "--probs", "1/2,1/2", "--n", "4"]),
        "4\n20\n124\n932\n"
    );
}

#[test]
fn moments_json_report() {
    let v = json(&[
        "moments",
        "--pattern",
        "ABRACADABRA",
        "--alphabet",
        "A-Z",
        "--uniform",
        "--n",
        "3",
        "--json",
    ]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["expected"], "3670344487444778/1");
    assert_eq!(v["expected_decimal"], "3670344487440000");
    assert_eq!(v["moments"].as_array().unwrap().len(), 3);
    assert_eq!(v["moments"][0], v["expected"]);
    assert_eq!(v["letters"][2], 18);
}

#[test]
fn variance_of_hh() {
    assert_eq!(stdout(&["variance", "--pattern", "HH", "--uniform"]), "22\n");
}

#[test]
fn gf_coefficients() {
    let out = stdout(&["gf", "--pattern", "HH", "--probs", "1/2,1/2", "--order", "20"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 21);
    assert_eq!(&lines[..7], ["0/1", "0/1", "1/4", "1/8", "1/8", "3/32", "5/64"]);
    let counts = stdout(&[
        "gf",
        "--pattern",
        "HH",
        "--uniform",
        "--order",
        "6",
        "--counts",
        "--avoiding",
    ]);
    assert_eq!(counts, "1\n2\n3\n5\n8\n13\n21\n");
    let biased = patwait(&["gf", "--pattern", "HH", "--probs", "1/3,2/3", "--counts"]);
    assert_eq!(biased.status.code(), Some(2));
}

#[test]
fn distribution_rows() {
    let out = stdout(&["distribution", "--pattern", "HH", "--uniform", "--order", "4"]);
    assert_eq!(out, "1\t0/1\n2\t1/4\n3\t1/8\n4\t1/8\ntail\t1/2\n");
    let auto = json(&["distribution", "--pattern", "HT", "--uniform", "--json"]);
    let order = auto["order"].as_u64().unwrap();
    assert!(order > 30 && order < 60, "{order}");
}

#[test]
fn sequences() {
    assert_eq!(
        stdout(&["sequence", "fubini", "--n", "4"]),
        "0\t1\n1\t1\n2\t3\n3\t13\n4\t75\n"
    );
    assert_eq!(
        stdout(&["sequence", "fib", "--k", "2", "--n", "5"]),
        "0\t0\n1\t1\n2\t1\n3\t2\n4\t3\n5\t5\n"
    );
    assert_eq!(
        stdout(&["sequence", "fib-bar", "--k", "1", "--n", "3"]),
        "0\t1\n1\t2\n2\t3\n3\t4\n"
    );
    assert_eq!(stdout(&["sequence", "c-coeff", "--n", "2"]), "0\t1\n1\t4\n2\t6\n");
}

#[test]
fn simulate_json() {
    let args = [
        "simulate",
        "--pattern",
        "HH",
        "--probs",
        "1/2,1/2",
        "--trials",
        "100000",
        "--seed",
        "42",
    ];
    let v = json(&args);
    assert_eq!(v, json(&args));
    assert_eq!(v["cap"], 600);
    assert_eq!(v["warning"], false);
    let rows = v["moments"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["exact"], "6/1");
    for row in rows {
        assert!(row["z"].as_f64().unwrap().abs() < 4.0, "{row}");
    }
}

#[test]
fn compare_predictions() {
    let v = json(&[
        "compare",
        "--pattern",
        "HH",
        "--vs",
        "HT",
        "--uniform",
        "--rolls",
        "100",
        "--json",
    ]);
    assert_eq!(v["more_frequent"], "second");
    assert_eq!(v["first"]["occurrences"], "50/3");
    assert_eq!(v["second"]["occurrences"], "25/1");
    assert_eq!(v["first"]["overlaps"], 2);
    for (a, b, alphabet) in [("HTH", "HTH", "HT"), ("HHT", "THH", "HT"), ("ABRA", "ARBA", "A-Z")] {
        let v = json(&[
            "compare",
            "--pattern",
            a,
            "--vs",
            b,
            "--alphabet",
            alphabet,
            "--uniform",
            "--json",
        ]);
        assert_eq!(v["more_frequent"], "tie", "{a} vs {b}");
    }
}

#[test]
fn exit_codes() {
    let unreachable = patwait(&["expected", "--pattern", "HT", "--probs", "1,0", "--json"]);
    assert_eq!(unreachable.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&unreachable.stdout).unwrap();
    assert_eq!(v["expected"], "infinite");

    for bad in [
        &["expected", "--pattern", "HT", "--probs", "1/2,1/3"][..],
        &["expected", "--pattern", "HT"],
        &["expected", "--pattern", "HT", "--uniform", "--probs", "1/2,1/2"],
        &["expected", "--pattern", "HX", "--uniform"],
        &["expected", "--pattern", "1,4", "--m", "3", "--uniform"],
        &["expected", "--pattern", "HT", "--probs", "1/3,1/3,1/3"],
        &["moments", "--pattern", "HT", "--uniform", "--n", "13"],
        &["check", "--only", "nonsense"],
    ] {
        let out = patwait(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8(patwait(&["expected", "--pattern", "HT", "--probs", "1/2,x"]).stderr).unwrap();
    assert!(err.contains("--probs") && err.contains("example"), "{err}");
}

#[test]
fn numeric_alphabets() {
    assert_eq!(
        stdout(&["expected", "--pattern", "1,3,2,1,1", "--m", "3", "--uniform"]),
        "246\n"
    );
    assert_eq!(
        stdout(&["expected", "--pattern", "1,3", "--probs", "1/2,1/4,1/4"]),
        "8\n"
    );
}

#[test]
fn check_suite_passes() {
    let out = stdout(&["check", "--only", "worpitzky", "--only", "fubini"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("PASS\t")));
    let v = json(&["check", "--only", "reversal", "--json"]);
    assert_eq!(v["passed"], true);
}
