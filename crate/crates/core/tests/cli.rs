//! End-to-end runs of the command-line tool through `cli::run`.

use std::process::Command;

use serde_json::Value;
use syzal::cli::{run, Outcome};
use syzal::io;
use syzal::modfree::ModulePresentation;
use syzal::resolution::maximal_ideal;
use syzal::RingSpec;
use tempfile::TempDir;

fn syzal(args: &[&str]) -> Outcome {
    run(std::iter::once("syzal").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn max_ideal_file(dir: &TempDir) -> String {
    let m = maximal_ideal(&RingSpec::new(2, 2).unwrap());
    write(dir, "m.pres", &io::write_presentation(&m))
}

#[test]
fn toric_ab_report() {
    let out = syzal(&["toric", "--r", "3", "ab"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("H^1(AB) = k\n"), "{}", out.stdout);
    assert!(out.stdout.contains("H^2(AB) = 0\n"));
    assert!(out.stdout.contains("H^3(AB) = k[-1]\n"));

    let doc = json(&syzal(&["toric", "--r", "3", "ab", "--json"]));
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["result"]["positions"][1]["label"], "k");
    assert_eq!(doc["result"]["flags"]["exact_through"], 0);
    assert_eq!(doc["result"]["flags"]["coherent"], true);
}

#[test]
fn koszul_check() {
    let out = syzal(&["koszul", "--r", "2", "--check"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("       0 1 2\ntotal: 1 2 1\n"));
    assert!(out.stdout.ends_with("checks: ok\n"));
}

#[test]
fn ext_from_file_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let f = max_ideal_file(&dir);
    let out = syzal(&["ext", "--file", &f, "--j", "1", "--check", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&out);
    let e = &doc["result"]["ext"][0];
    assert_eq!(e["j"], 1);
    // Ext^1(m) = Ext^2(k) = k[-4]
    assert_eq!(e["label"], "k[-4]");
    let dims: Vec<(i64, i64)> = e["oracle"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect();
    assert!(dims.iter().any(|&(q, n)| q == -4 && n == 1), "{dims:?}");
    assert!(dims.iter().all(|&(q, n)| n == i64::from(q == -4)));
    assert_eq!(doc["checks"]["passed"], true);
}

#[test]
fn file_commands() {
    let dir = TempDir::new().unwrap();
    let f = max_ideal_file(&dir);
    let out = syzal(&["resolve", "--file", &f, "--strategy", "schreyer", "--order", "glex", "--check"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("total: 2 1\n"), "{}", out.stdout);
    assert_eq!(syzal(&["depth", "--file", &f]).stdout, "depth 1\ndim 2\n");
    assert_eq!(syzal(&["cm", "--file", &f]).stdout, "cohen-macaulay false\n");
    assert_eq!(syzal(&["syzygy-order", "--file", &f]).stdout, "syzygy order 1\n");
    let hs = syzal(&["hilbert", "--file", &f, "--window", "0,6", "--check"]);
    assert_eq!(hs.code, 0, "{}", hs.stderr);
    assert!(hs.stdout.contains("dims [0, 6]: 0 0 2 0 3 0 4\n"), "{}", hs.stdout);
    let or = syzal(&["oracle", "--file", &f, "--window", "0:6", "--check"]);
    assert_eq!(or.stdout, "dims [0, 6]: 0 0 2 0 3 0 4\nchecks: ok\n");
}

#[test]
fn fixtures_and_gkm() {
    let out = syzal(&["mutant", "syzygy-order"]);
    assert_eq!(out.stdout, "syzygy order 1\n");
    let out = syzal(&["homogeneous", "--r", "3", "--i", "1", "ext"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("Ext^0 = 0\n"), "{}", out.stdout);
    let out = syzal(&["gkm", "--hypercube", "--r", "2", "--dim", "4", "ab", "--check"]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p1.gkm", "# CP^1\nvertex N\nvertex S\nedge N S 2*t1\n");
    let out = syzal(&["gkm", "--file", &g, "--r", "1", "ht"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("R ⊕ R[2]\n"), "{}", out.stdout);
    let out = syzal(&["gkm", "--file", &g, "--r", "1", "ab"]);
    assert_eq!(out.code, 2);
}

#[test]
fn ab_from_files() {
    let dir = TempDir::new().unwrap();
    let ht = syzal(&["toric", "--r", "2", "present"]).stdout;
    let hht = io::write_presentation(&syzal::equivariant::toric_hht(2).unwrap());
    let ht = write(&dir, "ht.pres", &ht);
    let hht = write(&dir, "hht.pres", &hht);
    let a = syzal(&["ab", "--hht", &hht, "--ht", &ht, "--json"]);
    let b = syzal(&["toric", "--r", "2", "ab", "--json"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(json(&a)["result"], json(&b)["result"]);
}

#[test]
fn deterministic_json() {
    let a = syzal(&["toric", "--r", "3", "ext", "--json"]);
    let b = syzal(&["toric", "--r", "3", "ext", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad_poly = write(
        &dir,
        "bad.pres",
        r#"{"ring": {"r": 2, "d": 2}, "generators": [0], "relation_generators": [2], "matrix": [["t1 + *"]]}"#,
    );
    let inhomogeneous = write(
        &dir,
        "inh.pres",
        r#"{"ring": {"r": 2, "d": 2}, "generators": [0], "relation_generators": [2], "matrix": [["t1 + t2^2"]]}"#,
    );
    for f in [&bad_poly, &inhomogeneous] {
        let out = syzal(&["resolve", "--file", f]);
        assert_eq!(out.code, 2, "{f}");
        assert!(out.stderr.starts_with("error: "));
    }
    assert_eq!(syzal(&["resolve", "--file", "/nonexistent/x.pres"]).code, 2);
    assert_eq!(syzal(&["nonsense"]).code, 2);
    assert_eq!(syzal(&["toric", "--r", "2", "bogus-view"]).code, 2);
    assert_eq!(syzal(&["homogeneous", "--r", "2", "--i", "3"]).code, 2);
    let f = max_ideal_file(&dir);
    assert_eq!(syzal(&["ext", "--file", &f, "--j", "3"]).code, 2);
    assert_eq!(syzal(&["oracle", "--file", &f, "--window", "0,1"]).code, 2);
}

#[test]
fn verification_failure_exits_1() {
    // H_T^* = R^2 cannot embed in H^0(AB) = R: the augmented position 0
    // goes negative.
    let dir = TempDir::new().unwrap();
    let ring = RingSpec::new(1, 2).unwrap();
    let hht = write(&dir, "hht.pres", &io::write_presentation(&ModulePresentation::free(&ring, vec![0])));
    let ht = write(&dir, "ht.pres", &io::write_presentation(&ModulePresentation::free(&ring, vec![0, 0])));
    let out = syzal(&["ab", "--hht", &hht, "--ht", &ht]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stderr.starts_with("check failed: "));
}

#[test]
fn help_exits_0() {
    let out = syzal(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("syzygy-order"));
}

#[test]
fn binary_reads_window_from_env() {
    let dir = TempDir::new().unwrap();
    let f = max_ideal_file(&dir);
    let bin = env!("CARGO_BIN_EXE_syzal");
    let out = Command::new(bin).args(["oracle", "--file", &f]).env("SYZAL_ORACLE_WINDOW", "2,4").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dims [2, 4]: 2 0 3\n");
    let out = Command::new(bin).args(["oracle", "--file", &f]).env("SYZAL_ORACLE_WINDOW", "junk").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["oracle", "--file", &f, "--window", "0,2"])
        .env("SYZAL_ORACLE_WINDOW", "2,4")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dims [0, 2]: 0 0 2\n");
}
