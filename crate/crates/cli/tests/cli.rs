//! End-to-end runs of the `popcount` binary.

use std::process::{Command, Output};

use popcount_cli::read_csv;

fn popcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_subcommand() {
    let o = popcount(&[
        "count",
        "--hex",
        "0x11",
        "--width",
        "8",
        "--algo",
        "nonoblivious",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count=2 iterations=2"));

    let o = popcount(&["count", "--hex", "0x0", "--width", "8", "--algo", "wegner"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count=0 iterations=0"));

    let o = popcount(&["count", "--hex", "0xZZ", "--width", "8", "--algo", "ref"]);
    assert_eq!(o.status.code(), Some(2));
    let o = popcount(&["count", "--hex", "0x1", "--width", "8", "--algo", "hakmem"]);
    assert_eq!(o.status.code(), Some(2));
    let o = popcount(&["count", "--width", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_trace_lines() {
    let o = popcount(&[
        "count",
        "--hex",
        "0x11",
        "--width",
        "8",
        "--algo",
        "nonoblivious",
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[1], "k=1 x=0x11 p=0x05A5 guard=true");
    assert_eq!(lines[2], "k=2 x=0x11 p=0x0121 guard=false");
}

#[test]
fn verify_subcommand() {
    let o = popcount(&["verify", "--width", "8", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "256/256 values, 4 algorithms, iteration law: pass"
    );

    let o = popcount(&["verify", "--width", "16", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("65536/65536 values"));

    let o = popcount(&["verify", "--width", "64", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(2));

    let o = popcount(&["verify", "--width", "128", "--random", "200", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("200/200 values"));

    let o = popcount(&["verify", "--width", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = popcount(&["verify", "--width", "8", "--exhaustive", "--random", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_subcommand_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let o = popcount(&[
        "bench",
        "--widths",
        "64,256",
        "--ones",
        "0,4",
        "--trials",
        "5",
        "--seed",
        "9",
        "--algos",
        "nonoblivious,gm",
        "--output",
        p,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# popcount bench: generator=ChaCha8Rng"));
    assert!(text.contains("seed=9"));
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.all_correct));

    // same config, same bytes
    let again = dir.path().join("again.csv");
    popcount(&[
        "bench",
        "--widths",
        "64,256",
        "--ones",
        "0,4",
        "--trials",
        "5",
        "--seed",
        "9",
        "--algos",
        "nonoblivious,gm",
        "--output",
        again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn bench_usage_errors() {
    let o = popcount(&[
        "bench",
        "--widths",
        "64",
        "--ones",
        "4",
        "--output",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = popcount(&["bench", "--widths", "64", "--ones", "65", "--output", "-"]);
    assert_eq!(o.status.code(), Some(2));
    let o = popcount(&["bench", "--widths", "12", "--ones", "1", "--output", "-"]);
    assert_eq!(o.status.code(), Some(2));
}
