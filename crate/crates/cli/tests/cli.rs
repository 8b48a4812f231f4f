use std::process::{Command, Output};

use aplus_core::{import_table, APlus};

fn aplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aplus"))
        .args(args)
        .env_remove("APLUS_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn count_prints_the_formula() {
    let o = aplus(&["count", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("29 = (2!+1)·4 + 16 + 1"));

    let o = aplus(&["count", "--n", "1"]);
    assert!(stdout(&o).starts_with("3 = "));

    let v = json(&aplus(&["count", "--n", "30", "--format", "json"]));
    assert_eq!(v["total"], "238727573830971952772677632000810901");
    assert_eq!(v["constants"], 901);
}

#[test]
fn verify_two_passes() {
    let o = aplus(&["verify", "--n", "2", "--budget", "300"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    for line in ["r2 = 6", "r3 = 6", "r4 = 14", "r5 = 29"] {
        assert!(text.contains(line), "{line} missing from\n{text}");
    }
    assert!(!text.contains("FAIL"));

    let v = json(&aplus(&["verify", "--n", "2", "--format", "json"]));
    assert_eq!(v["ranks"]["ranks"]["r2"]["value"], 6);
    assert_eq!(v["ranks"]["ranks"]["r5"]["provenance"], "exact-search");
}

#[test]
fn search_r4_reports_bounds_at_three() {
    for extra in [None, Some("--strata-caps")] {
        let mut args = vec!["search-r4", "--n", "3", "--budget", "1"];
        args.extend(extra);
        let o = aplus(&args);
        assert_eq!(o.status.code(), Some(3));
        assert!(stdout(&o).starts_with("r4 in [57, 104]"), "{}", stdout(&o));
    }
    let o = aplus(&["search-r4", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], 14);
    assert_eq!(v["witness"].as_array().unwrap().len(), 14);
}

#[test]
fn ranks_and_formulas() {
    let o = aplus(&["rank", "--n", "6", "--which", "formulas"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r4 = 25926"));
    let o = aplus(&["rank", "--n", "3", "--which", "formulas"]);
    assert!(stdout(&o).contains("r4 = [57, 104]"));

    for (which, expected) in [
        ("r1", "r1 = 1"),
        ("r2", "r2 = 6"),
        ("r3", "r3 = 6"),
        ("r5", "r5 = 29"),
    ] {
        let o = aplus(&["rank", "--n", "2", "--which", which]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with(expected), "{}", stdout(&o));
    }
    let o = aplus(&["rank", "--n", "3", "--which", "r5"]);
    assert!(stdout(&o).starts_with("r5 = 144"));
}

#[test]
fn prime_and_greens() {
    let o = aplus(&["prime", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("smallest prime subset (1): xi(1,2)"));
    let o = aplus(&["prime", "--n", "3", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = aplus(&["greens", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n-support R-classes 18"));
}

#[test]
fn build_round_trips() {
    let expected = APlus::new(2).unwrap();
    let o = aplus(&["build", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(&import_table(&o.stdout).unwrap(), expected.semigroup());

    let dir = std::env::temp_dir().join(format!("aplus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.csv");
    let o = aplus(&[
        "build",
        "--n",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let back = import_table(&std::fs::read(&path).unwrap())
        .unwrap()
        .with_n(Some(2));
    assert_eq!(&back, expected.semigroup());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["count", "--n", "0"][..],
        &["build", "--n", "2", "--format", "text"],
        &["rank", "--n", "2"],
        &["greens", "--n", "2", "--format", "csv"],
        &["verify", "--n", "2", "--budget", "0"],
        &["build", "--n", "6"],
        &["frobnicate"],
    ] {
        assert_eq!(aplus(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_aplus"))
            .args(["search-r4", "--n", "3"])
            .env("APLUS_BUDGET_SECS", value)
            .output()
            .unwrap()
    };
    assert_eq!(run("soon").status.code(), Some(2));
    let o = run("0.5");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_reproducible() {
    let strip = |o: Output| {
        let mut v = json(&o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let first = strip(aplus(&[
        "rank", "--n", "2", "--which", "r2", "--format", "json",
    ]));
    let second = strip(aplus(&[
        "rank", "--n", "2", "--which", "r2", "--format", "json",
    ]));
    assert_eq!(first, second);
    assert_eq!(
        aplus(&["build", "--n", "3"]).stdout,
        aplus(&["build", "--n", "3"]).stdout
    );
}
