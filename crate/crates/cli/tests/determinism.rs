//! Byte-identity of every output file across repeated runs with the same
//! flags, including the parallel benchmark path.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_grades"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn bytes(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn gen_rip_solve_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let s = |path: &std::path::PathBuf| path.to_str().unwrap().to_string();

    for round in ["a", "b"] {
        let inst = s(&p(&format!("inst_{round}.json")));
        let bounds = s(&p(&format!("bounds_{round}.json")));
        let result = s(&p(&format!("result_{round}.json")));
        let trace = s(&p(&format!("trace_{round}.csv")));
        run(&["gen", "-m", "24", "-n", "16", "-s", "3", "--seed", "9", "-o", &inst]);
        run(&["rip", "-i", &inst, "--mode", "sampled", "--trials", "300", "--seed", "4", "-o", &bounds]);
        run(&["solve", "-i", &inst, "-b", &bounds, "--eps", "1e-9", "-o", &result, "--trace-out", &trace]);
    }

    assert_eq!(bytes(&p("inst_a.json")), bytes(&p("inst_b.json")));
    assert_eq!(bytes(&p("bounds_a.json")), bytes(&p("bounds_b.json")));
    assert_eq!(bytes(&p("result_a.json")), bytes(&p("result_b.json")));
    assert_eq!(bytes(&p("trace_a.csv")), bytes(&p("trace_b.csv")));
}

#[test]
fn parallel_bench_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("bench_a.csv");
    let b = dir.path().join("bench_b.csv");
    for out in [&a, &b] {
        run(&[
            "bench", "-m", "32", "-n", "24", "-s", "2", "--num-seeds", "12",
            "--mode", "sampled", "--trials", "200", "--eps", "1e-9",
            "-o", out.to_str().unwrap(), "--no-timing",
        ]);
    }
    assert_eq!(bytes(&a), bytes(&b));
}
