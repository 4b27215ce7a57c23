use std::process::{Command, Output};

use pierce_core::exact::parse_rational;

fn pierce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pierce"))
        .args(args)
        .env_remove("PIERCE_PRECISION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn leap_forms() {
    let o = pierce(&["leap", "gregorian", "2100"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "false\n"));
    let o = pierce(&["leap", "--rule", "4,25,4", "--year", "2400"]);
    assert_eq!(stdout(&o), "true\n");
    let o = pierce(&["leap", "--year", "2028"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_both_methods() {
    let o = pierce(&[
        "count",
        "--rule",
        "4,25,4",
        "--through",
        "400",
        "--method",
        "both",
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "97 97\n"));
}

#[test]
fn series_and_codec() {
    assert_eq!(
        stdout(&pierce(&["series", "--rule", "gregorian"])),
        "97/400 (0.2425)\n"
    );
    assert_eq!(stdout(&pierce(&["expand", "97/400"])), "4,33,100\n");
    assert_eq!(stdout(&pierce(&["decode", "1,3,7"])), "5/7\n");
    assert_eq!(stdout(&pierce(&["step", "2/3"])), "1 1/3\n");
    assert_eq!(stdout(&pierce(&["step", "0"])), "inf 0/1\n");
    assert_eq!(stdout(&pierce(&["interval", "2,3"])), "(1/3, 3/8)\n");
    assert_eq!(
        stdout(&pierce(&["construct", "--alpha", "1", "--n", "3"])),
        "3,8,21,...\n"
    );
}

#[test]
fn domain_errors_exit_one_with_json() {
    let o = pierce(&["decode", "2,3,..."]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["error"]["kind"].is_string());
    let o = pierce(&["expand", "3/2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pierce(&["expand"]).status.code(), Some(2));
    assert_eq!(pierce(&["expand", "1/2", "--nope"]).status.code(), Some(2));
    assert_eq!(pierce(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        pierce(&["leap", "--rule", "4,1", "--year", "4"])
            .status
            .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_pierce"))
        .args(["trajectory", "--alpha", "1", "--rmax", "1"])
        .env("PIERCE_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "lln-sample",
            "--count",
            "20",
            "--n",
            "10",
            "--seed",
            "9",
            "--output",
            "csv",
        ][..],
        &["trajectory", "--alpha", "1", "--rmax", "4"][..],
        &["zc", "--c", "2", "--depth", "6"][..],
    ] {
        assert_eq!(pierce(args).stdout, pierce(args).stdout, "{args:?}");
    }
    let a = pierce(&[
        "lln-sample",
        "--count",
        "5",
        "--n",
        "5",
        "--seed",
        "1",
        "--output",
        "csv",
    ]);
    let b = pierce(&[
        "lln-sample",
        "--count",
        "5",
        "--n",
        "5",
        "--seed",
        "2",
        "--output",
        "csv",
    ]);
    assert_ne!(a.stdout, b.stdout);
}

fn read_csv(out: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn trajectory_csv_round_trips() {
    let o = pierce(&["trajectory", "--alpha", "1", "--rmax", "3", "--guard", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = read_csv(&o.stdout);
    assert_eq!(
        header,
        [
            "branch",
            "r",
            "N",
            "L",
            "drift_lo",
            "drift_hi",
            "quotient_lo",
            "quotient_hi",
            "thm2"
        ]
    );
    assert_eq!(rows.len(), 6);
    let order: Vec<(String, String)> = rows.iter().map(|r| (r[0].clone(), r[1].clone())).collect();
    let expected: Vec<(String, String)> = ["N", "M"]
        .iter()
        .flat_map(|b| (1..=3).map(move |r| (b.to_string(), r.to_string())))
        .collect();
    assert_eq!(order, expected);
    assert_eq!((rows[0][2].as_str(), rows[0][8].as_str()), ("482", "true"));
    assert_eq!((rows[3][2].as_str(), rows[3][8].as_str()), ("22", ""));
    for row in &rows {
        row[2].parse::<u128>().unwrap();
        row[3].parse::<u128>().unwrap();
        for pair in [(4, 5), (6, 7)] {
            let lo = parse_rational(&row[pair.0]).unwrap();
            let hi = parse_rational(&row[pair.1]).unwrap();
            assert!(lo <= hi);
        }
    }
}

#[test]
fn drift_csv_round_trips() {
    let o = pierce(&[
        "drift",
        "--rule",
        "4,25,4",
        "--x",
        "97/400",
        "--through",
        "800",
    ]);
    let (header, rows) = read_csv(&o.stdout);
    assert_eq!(header, ["N", "L", "drift_lo", "drift_hi"]);
    assert_eq!(rows.len(), 800);
    assert_eq!(rows[399], ["400", "97", "0/1", "0/1"]);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (i + 1).to_string());
        assert!(parse_rational(&row[2]).unwrap() <= parse_rational(&row[3]).unwrap());
    }
}

#[test]
fn json_outputs_parse() {
    for args in [
        &["interval", "1,4", "--output", "json"][..],
        &["children", "2", "--jmax", "5", "--output", "json"][..],
        &["diagnose", "--alpha", "1", "--n", "10", "--output", "json"][..],
        &[
            "trajectory",
            "--alpha",
            "4",
            "--rmax",
            "2",
            "--output",
            "json",
        ][..],
        &["lln-sample", "--count", "3", "--n", "5", "--output", "json"][..],
    ] {
        let o = pierce(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
    }
    let o = pierce(&["interval", "1,4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["left"], "3/4");
    assert_eq!(v["rightOpen"], true);
}
