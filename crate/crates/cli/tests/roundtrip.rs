//! File-format round-trips and CLI contract behavior, driven through the
//! real binary.

use std::path::Path;
use std::process::{Command, Output};

use grades_cli::formats::{read_json, write_json, BoundsFile, InstanceFile, ResultFile};
use grades_core::{MeasurementMatrix, ProblemInstance, SignalVector};

fn grades(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grades"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_round_trips_and_truth_explains_y() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    let out = grades(&["gen", "-m", "4", "-n", "8", "-s", "2", "--seed", "1", "-o", path_str(&inst_path)]);
    assert!(out.status.success());

    let file: InstanceFile = read_json(&inst_path).unwrap();
    let inst = file.to_instance().unwrap();
    assert_eq!(inst.phi().rows(), 4);
    assert_eq!(inst.phi().cols(), 8);
    assert_eq!(inst.sparsity(), Some(2));
    let truth = inst.truth().unwrap().clone();
    assert_eq!(truth.support().len(), 2);
    let f = inst.objective_value(&truth).unwrap();
    assert!(f <= 1e-12 * inst.y_norm_sq().max(1.0));

    // parse(write(x)) == x
    let rewritten = dir.path().join("copy.json");
    write_json(&rewritten, &InstanceFile::from_instance(&inst, file.meta.clone())).unwrap();
    assert_eq!(
        std::fs::read(&inst_path).unwrap(),
        std::fs::read(&rewritten).unwrap()
    );
}

#[test]
fn gen_rejects_oversparse_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = grades(&["gen", "-m", "4", "-n", "3", "-s", "5", "-o", path_str(&dir.path().join("x.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

fn write_identity_instance(path: &Path, n: usize, y: Vec<f64>, sparsity: usize) {
    let phi = MeasurementMatrix::identity(n).unwrap();
    let truth = SignalVector::new(y.clone()).unwrap();
    let inst = ProblemInstance::new(phi, y)
        .unwrap()
        .with_truth(truth, Some(sparsity))
        .unwrap();
    write_json(path, &InstanceFile::from_instance(&inst, None)).unwrap();
}

#[test]
fn rip_on_identity_instance_is_perfect_isometry() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("id.json");
    write_identity_instance(&inst_path, 5, vec![1.0, 0.0, -2.0, 0.0, 0.5], 3);

    for level in ["1", "3", "5"] {
        let bounds_path = dir.path().join(format!("b{level}.json"));
        let out = grades(&["rip", "-i", path_str(&inst_path), "--level", level, "-o", path_str(&bounds_path)]);
        assert!(out.status.success());
        let file: BoundsFile = read_json(&bounds_path).unwrap();
        assert!((file.alpha - 1.0).abs() <= 1e-12);
        assert!((file.beta - 1.0).abs() <= 1e-12);
        assert!(file.condition_ok);
        assert_eq!(file.delta, 0.0);
        // bounds round-trip through the core type
        let b = file.to_bounds().unwrap();
        assert_eq!(b.alpha(), file.alpha);
    }
}

#[test]
fn rip_exact_matches_brute_force_on_generated_instance() {
    // cross-check the CLI path against a direct in-process enumeration
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    assert!(grades(&["gen", "-m", "16", "-n", "10", "-s", "2", "--seed", "3", "-o", path_str(&inst_path)])
        .status
        .success());
    let bounds_path = dir.path().join("bounds.json");
    assert!(grades(&["rip", "-i", path_str(&inst_path), "-o", path_str(&bounds_path)])
        .status
        .success());

    let inst = read_json::<InstanceFile>(&inst_path).unwrap().to_instance().unwrap();
    let expected = grades_core::exact_rip_bounds(inst.phi(), 4).unwrap();
    let got: BoundsFile = read_json(&bounds_path).unwrap();
    assert_eq!(got.level, 4);
    assert_eq!(got.alpha, expected.alpha());
    assert_eq!(got.beta, expected.beta());
}

#[test]
fn rip_sampled_single_trial_at_level_one_collapses() {
    // one trial at level 1 sees a single 1x1 Gram, so the interval
    // degenerates to that column's squared norm
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    assert!(grades(&["gen", "-m", "6", "-n", "9", "-s", "2", "--seed", "8", "-o", path_str(&inst_path)])
        .status
        .success());
    let bounds_path = dir.path().join("bounds.json");
    let out = grades(&[
        "rip", "-i", path_str(&inst_path), "--mode", "sampled", "--level", "1", "--trials", "1",
        "--seed", "4", "-o", path_str(&bounds_path),
    ]);
    assert!(out.status.success());
    let file: BoundsFile = read_json(&bounds_path).unwrap();
    assert_eq!(file.alpha, file.beta);
    assert_eq!(file.provenance.mode, "sampled");
    assert_eq!(file.provenance.trials, Some(1));
}

#[test]
fn rip_over_budget_names_budget_and_suggests_sampled() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    assert!(grades(&["gen", "-m", "4", "-n", "30", "-s", "8", "--seed", "1", "-o", path_str(&inst_path)])
        .status
        .success());
    let out = grades(&["rip", "-i", path_str(&inst_path), "--budget", "1000", "-o", path_str(&dir.path().join("b.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("1000"), "budget missing from: {stderr}");
    assert!(stderr.contains("sampled"), "no fallback suggestion in: {stderr}");
}

#[test]
fn solve_identity_converges_in_one_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("id.json");
    write_identity_instance(&inst_path, 4, vec![3.0, 0.0, 1.0, 0.0], 2);
    let bounds_path = dir.path().join("b.json");
    assert!(grades(&["rip", "-i", path_str(&inst_path), "-o", path_str(&bounds_path)]).status.success());

    let result_path = dir.path().join("r.json");
    let trace_path = dir.path().join("t.csv");
    let out = grades(&[
        "solve", "-i", path_str(&inst_path), "-b", path_str(&bounds_path), "--eps", "1e-12",
        "-o", path_str(&result_path), "--trace-out", path_str(&trace_path),
    ]);
    assert!(out.status.success());

    let result: ResultFile = read_json(&result_path).unwrap();
    assert_eq!(result.status, "converged");
    assert_eq!(result.iterations, 1);
    assert_eq!(result.mode, "certified");
    assert_eq!(result.x, vec![3.0, 0.0, 1.0, 0.0]);
    assert_eq!(result.recovery_error, Some(0.0));

    let trace = std::fs::read_to_string(&trace_path).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines[0], "iteration,objective");
    assert_eq!(lines.len(), 3); // header + f(x0) + f(x1)
    assert!(lines[1].starts_with("0,10")); // ||y||^2 = 10
    assert!(!trace.contains('\r'));
}

#[test]
fn solve_with_loose_eps_stops_at_zero_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("id.json");
    write_identity_instance(&inst_path, 3, vec![1.0, 2.0, 0.0], 2);
    let result_path = dir.path().join("r.json");
    let out = grades(&[
        "solve", "-i", path_str(&inst_path), "--gamma", "1.0", "--eps", "100",
        "-o", path_str(&result_path),
    ]);
    assert!(out.status.success());
    let result: ResultFile = read_json(&result_path).unwrap();
    assert_eq!(result.iterations, 0);
    assert_eq!(result.status, "converged");
    assert_eq!(result.mode, "manual");
}

#[test]
fn solve_without_bounds_or_gamma_instructs_rip_first() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("id.json");
    write_identity_instance(&inst_path, 3, vec![1.0, 2.0, 0.0], 2);
    let out = grades(&["solve", "-i", path_str(&inst_path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rip"));
}

#[test]
fn solve_rejects_bounds_at_wrong_level() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("id.json");
    write_identity_instance(&inst_path, 5, vec![1.0, 2.0, 0.0, 0.0, 0.0], 2);
    let bounds_path = dir.path().join("b3.json");
    assert!(grades(&["rip", "-i", path_str(&inst_path), "--level", "3", "-o", path_str(&bounds_path)])
        .status
        .success());
    let out = grades(&["solve", "-i", path_str(&inst_path), "-b", path_str(&bounds_path)]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("level"), "{stderr}");
}

#[test]
fn strict_flag_turns_condition_violation_into_exit_3() {
    // near-square Gaussian instances never satisfy beta < 2 alpha
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    assert!(grades(&["gen", "-m", "8", "-n", "10", "-s", "2", "--seed", "2", "-o", path_str(&inst_path)])
        .status
        .success());
    let bounds_path = dir.path().join("b.json");
    assert!(grades(&["rip", "-i", path_str(&inst_path), "-o", path_str(&bounds_path)]).status.success());
    let bounds: BoundsFile = read_json(&bounds_path).unwrap();
    assert!(!bounds.condition_ok, "unexpectedly well-conditioned instance");

    let relaxed = grades(&["solve", "-i", path_str(&inst_path), "-b", path_str(&bounds_path)]);
    assert_eq!(relaxed.status.code(), Some(0));

    let strict = grades(&["solve", "-i", path_str(&inst_path), "-b", path_str(&bounds_path), "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn bench_single_identity_style_row() {
    // m >> n makes the certified path near-deterministic at tiny sizes
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = grades(&[
        "bench", "-m", "400", "-n", "6", "-s", "1", "--num-seeds", "1", "--eps", "1e-12",
        "-o", path_str(&csv_path), "--no-timing",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "seed,alpha,beta,condition_ok,predicted_bound,iterations,final_objective,recovery_error,wall_time_ms"
    );
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "0");
    assert_eq!(fields[3], "true");
    assert_eq!(fields[8], "0"); // no-timing zeroes the wall clock column
}

#[test]
fn bench_certified_rows_respect_predicted_bound() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = grades(&[
        "bench", "-m", "512", "-n", "14", "-s", "2", "--num-seeds", "6", "--eps", "1e-10",
        "-o", path_str(&csv_path), "--no-timing",
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut certified_rows = 0;
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let condition_ok: bool = fields[3].parse().unwrap();
        if condition_ok {
            certified_rows += 1;
            let predicted: u64 = fields[4].parse().unwrap();
            let iterations: u64 = fields[5].parse().unwrap();
            assert!(iterations <= predicted, "row: {line}");
        }
    }
    assert!(certified_rows >= 4, "only {certified_rows} certified rows");
}

#[test]
fn bench_strict_fails_on_condition_violation() {
    // near-square sampled bounds never satisfy the condition
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let args = [
        "bench", "-m", "12", "-n", "16", "-s", "2", "--num-seeds", "2",
        "--mode", "sampled", "--trials", "100",
        "-o", path_str(&csv_path), "--no-timing",
    ];
    assert_eq!(grades(&args).status.code(), Some(0));
    let mut strict_args = args.to_vec();
    strict_args.push("--strict");
    assert_eq!(grades(&strict_args).status.code(), Some(3));
}

#[test]
fn bench_moderate_scale_recovery_regression() {
    // flagship heuristic configuration through the full CLI path; the
    // recovery-rate floor was frozen after one calibration run
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = grades(&[
        "bench", "-m", "100", "-n", "256", "-s", "5", "--num-seeds", "20",
        "--eps", "1e-12", "-o", path_str(&csv_path), "--no-timing",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let recovered = csv
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(7).unwrap().parse::<f64>().unwrap() <= 1e-5)
        .count();
    assert!(recovered >= 18, "recovery rate {recovered}/20 under the frozen floor");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("recovery rate"), "missing aggregate line: {stdout}");
}

#[test]
fn certified_traces_decrease_strictly() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    assert!(grades(&["gen", "-m", "512", "-n", "12", "-s", "2", "--seed", "11", "-o", path_str(&inst_path)])
        .status
        .success());
    let bounds_path = dir.path().join("b.json");
    assert!(grades(&["rip", "-i", path_str(&inst_path), "-o", path_str(&bounds_path)]).status.success());
    let bounds: BoundsFile = read_json(&bounds_path).unwrap();
    assert!(bounds.condition_ok);

    let trace_path = dir.path().join("t.csv");
    assert!(grades(&[
        "solve", "-i", path_str(&inst_path), "-b", path_str(&bounds_path), "--eps", "1e-11",
        "--trace-out", path_str(&trace_path),
    ])
    .status
    .success());

    let trace: Vec<f64> = std::fs::read_to_string(&trace_path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(trace.len() >= 2);
    for w in trace.windows(2) {
        assert!(w[1] < w[0], "trace not strictly decreasing: {w:?}");
    }
}

#[test]
fn help_is_available_everywhere() {
    for sub in ["gen", "rip", "solve", "bench"] {
        let out = grades(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(!out.stdout.is_empty());
    }
    assert!(grades(&["--help"]).status.success());
}
