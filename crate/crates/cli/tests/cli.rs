use std::path::PathBuf;
use std::process::{Command, Output};

use yesno_core::rng::derive_seed;
use yesno_core::simulate::draw_sets;
use yesno_core::{BloomFilter, Sketcher, YesNoParams};

fn yesno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yesno"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = yesno(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn field<'a>(csv: &'a str, row: &str, col: usize) -> &'a str {
    csv.lines()
        .find(|l| l.starts_with(&format!("{row},")))
        .unwrap_or_else(|| panic!("no row {row}"))
        .split(',')
        .nth(col)
        .unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    let out = yesno(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let sweep_help = stdout(&["sweep", "--help"]);
    assert!(sweep_help.contains("[default: 10000]"));
    assert!(sweep_help.contains("fixed_m"));
    assert_eq!(yesno(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(yesno(&[]).status.code(), Some(1));
    assert_eq!(yesno(&["sweep", "--var", "z"]).status.code(), Some(1));
    assert_eq!(
        yesno(&["sweep", "--var", "k", "--range", "5:1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        yesno(&["sweep", "--var", "k", "--trials", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(yesno(&["analyze", "--pr-s", "1.5"]).status.code(), Some(1));
    assert_eq!(
        yesno(&["sweep", "--var", "k", "--q", "200"]).status.code(),
        Some(1)
    );
}

#[test]
fn analyze_baseline_row() {
    let csv = stdout(&[
        "analyze", "--m", "256", "--k", "6", "--n", "30", "--t", "100",
    ]);
    assert!(csv.starts_with("quantity,value,status\n"));
    assert_eq!(field(&csv, "f_s_exact", 1), "0.016714");
    assert_eq!(field(&csv, "fp_count_bf", 1), "1.671381");
    assert_eq!(field(&csv, "pr_e", 2), "OK");
}

#[test]
fn analyze_empty_set_is_all_zero() {
    let csv = stdout(&["analyze", "--n", "0"]);
    for line in csv.lines().skip(1) {
        assert_eq!(line.split(',').nth(1), Some("0.000000"), "{line}");
    }
}

#[test]
fn analyze_flags_inconsistent_priors() {
    let csv = stdout(&["analyze", "--pr-s", "0.5", "--pr-r", "0.9"]);
    assert_eq!(field(&csv, "pr_e", 2), "INCONSISTENT");
    assert!(field(&csv, "pr_e", 1).starts_with('-'));
}

#[test]
fn sweep_k_has_fourteen_rows() {
    let args = [
        "sweep", "--var", "k", "--range", "1:14", "--trials", "50", "--seed", "7",
    ];
    let csv = stdout(&args);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(
        lines[0],
        "swept,value,mean_fp,std_fp,min,q25,median,q75,max,baseline_bf_m,baseline_bf_p,error"
    );
    assert!(lines[1..]
        .iter()
        .all(|l| l.starts_with("k,") && l.ends_with(',')));
    assert_eq!(csv, stdout(&args));
}

#[test]
fn sweep_r_zero_matches_classic_filter() {
    let trials = 300;
    let csv = stdout(&[
        "sweep", "--var", "r", "--mode", "fixed_m", "--range", "0:7", "--trials", "300",
    ]);
    let params = YesNoParams::new(256, 32, 0, 4, 5).unwrap();
    let mut total = 0usize;
    for i in 0..trials {
        let seed = derive_seed(7, &[i]);
        let (s, t) = draw_sets(30, 100, seed);
        let sk = Sketcher::new(&params, derive_seed(seed, &[3])).unwrap();
        let mut bf = BloomFilter::with_hash(sk.yes_family().clone()).unwrap();
        bf.extend(s.iter().copied());
        total += t.iter().filter(|e| bf.contains(*e)).count();
    }
    let expected = format!("{:.6}", total as f64 / trials as f64);
    assert_eq!(field(&csv, "r_fixed_m", 2), expected);
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn sweep_error_column_for_impossible_geometry() {
    let csv = stdout(&["sweep", "--var", "r", "--range", "8:8", "--trials", "5"]);
    let row = csv.lines().nth(1).unwrap();
    assert!(row.starts_with("r_fixed_m,8,,,,,,,,,,"));
    assert!(row.contains("not positive"));
}

#[test]
fn sweep_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let printed = stdout(&[
        "sweep", "--var", "n", "--range", "10:20", "--step", "10", "--trials", "20",
    ]);
    assert!(stdout(&[
        "sweep", "--var", "n", "--range", "10:20", "--step", "10", "--trials", "20", "--output", p
    ])
    .is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn topology_path_without_side_links_has_zero_rows() {
    let csv = stdout(&[
        "topology",
        "--files",
        &data("line.edgelist"),
        "--exclude-reverse",
        "--allocations",
        "50",
    ]);
    assert_eq!(
        csv,
        "topology,path_len,t_size,fp_yesno_mean,fp_bf_mean,ratio\nline,3,0,0.000000,0.000000,\n"
    );
}

#[test]
fn topology_path_override_on_triangle() {
    let csv = stdout(&[
        "topology",
        "--files",
        &data("triangle.edgelist"),
        "--path",
        "a,b,c",
        "--allocations",
        "10",
    ]);
    assert!(csv.ends_with("triangle,2,4,0.000000,0.000000,\n"), "{csv}");
    let csv = stdout(&[
        "topology",
        "--files",
        &data("triangle.edgelist"),
        "--path",
        "a,b,c",
        "--exclude-reverse",
        "--allocations",
        "10",
    ]);
    assert!(csv.ends_with("triangle,2,2,0.000000,0.000000,\n"), "{csv}");
}

#[test]
fn topology_skips_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graphml");
    std::fs::write(&bad, "<graphml><graph><edge source=").unwrap();
    let bad = bad.to_str().unwrap();

    let out = yesno(&[
        "topology",
        "--files",
        bad,
        &data("ladder.graphml"),
        "--allocations",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.graphml"));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.contains("\nladder,3,6,"));

    let out = yesno(&["topology", "--files", bad, "/nonexistent/x.edgelist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn topology_aggregate_file() {
    let dir = tempfile::tempdir().unwrap();
    let agg = dir.path().join("agg.csv");
    stdout(&[
        "topology",
        "--synthetic",
        "--allocations",
        "20",
        "--aggregate",
        agg.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&agg).unwrap();
    assert!(text.starts_with("n,rate_yesno,rate_bf,ratio\n"));
    let ns: Vec<usize> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!((5..=35).all(|n| ns.contains(&n)));
}

#[test]
fn demo_runs() {
    let text = stdout(&["demo"]);
    assert!(text.contains("member 5705: yes=0100100000010 no=01"));
    assert!(text.contains("false negatives=0"));
}
