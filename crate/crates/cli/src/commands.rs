//! The four subcommands: instance generation, bound certification,
//! solving, and benchmark sweeps.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use grades_core::{
    binomial, exact_rip_bounds_with_budget, gen_gaussian_matrix, gen_sparse_signal, grades_solve,
    make_instance, sampled_rip_bounds, AmplitudeDist, ProblemInstance, RipBounds, SolveResult,
    SolveStatus, SolverConfig, SplitMix64, DEFAULT_ENUM_BUDGET,
};

use crate::error::{CliError, Result};
use crate::formats::{
    read_json, status_str, write_json, write_trace, BoundsFile, GenMeta, InstanceFile, ResultFile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Amplitude {
    /// Nonzeros are +1 or -1.
    Pm1,
    /// Nonzeros are standard normal draws.
    Normal,
}

impl Amplitude {
    fn dist(self) -> AmplitudeDist {
        match self {
            Amplitude::Pm1 => AmplitudeDist::PlusMinusOne,
            Amplitude::Normal => AmplitudeDist::StandardNormal,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Amplitude::Pm1 => "pm1",
            Amplitude::Normal => "normal",
        }
    }
}

/// Independent sub-seeds for the matrix, the signal, and the bound
/// sampler, so the same user seed never feeds two consumers the same
/// stream.
fn sub_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::substream(seed, index).next_u64()
}

// ---------------------------------------------------------------- gen --

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of measurements (matrix rows).
    #[arg(short, long)]
    pub m: usize,
    /// Signal dimension (matrix columns).
    #[arg(short, long)]
    pub n: usize,
    /// Sparsity of the planted signal.
    #[arg(short, long)]
    pub s: usize,
    /// Seed; identical seeds give byte-identical files.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Distribution of the planted nonzeros.
    #[arg(long, value_enum, default_value_t = Amplitude::Normal)]
    pub amplitude: Amplitude,
    /// Output instance file (JSON).
    #[arg(short, long)]
    pub out: PathBuf,
}

pub fn cmd_gen(args: &GenArgs) -> Result<()> {
    let phi = gen_gaussian_matrix(args.m, args.n, sub_seed(args.seed, 0))?;
    let truth = gen_sparse_signal(args.n, args.s, sub_seed(args.seed, 1), args.amplitude.dist())?;
    let instance = make_instance(phi, truth, args.s)?;
    let meta = GenMeta {
        generator: "gaussian(0, 1/m), splitmix64 + box-muller".into(),
        m: args.m,
        n: args.n,
        s: args.s,
        seed: args.seed,
        amplitude: args.amplitude.label().into(),
    };
    write_json(&args.out, &InstanceFile::from_instance(&instance, Some(meta)))?;
    eprintln!(
        "wrote {} ({}x{} instance, s={}, seed={})",
        args.out.display(),
        args.m,
        args.n,
        args.s,
        args.seed
    );
    Ok(())
}

// ---------------------------------------------------------------- rip --

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RipMode {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct RipArgs {
    /// Instance file to certify.
    #[arg(short, long)]
    pub instance: PathBuf,
    /// Sparsity level of the bounds; defaults to twice the instance's
    /// sparsity (the level the solver guarantee needs).
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long, value_enum, default_value_t = RipMode::Exact)]
    pub mode: RipMode,
    /// Sampled mode: number of random supports.
    #[arg(long, default_value_t = 2000)]
    pub trials: u64,
    /// Sampled mode: sampling seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact mode: maximum number of supports to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub budget: u64,
    /// Epsilon the file's predicted iteration count refers to.
    #[arg(long, default_value_t = 1e-10)]
    pub reference_eps: f64,
    /// Output bounds file (JSON).
    #[arg(short, long)]
    pub out: PathBuf,
}

fn resolve_level(requested: Option<usize>, instance: &ProblemInstance) -> Result<usize> {
    match (requested, instance.sparsity()) {
        (Some(level), _) => Ok(level),
        (None, Some(s)) => Ok(2 * s),
        (None, None) => Err(CliError::Usage(
            "instance records no sparsity; pass --level explicitly".into(),
        )),
    }
}

pub fn cmd_rip(args: &RipArgs) -> Result<()> {
    let instance = read_json::<InstanceFile>(&args.instance)?.to_instance()?;
    let level = resolve_level(args.level, &instance)?;
    let bounds = match args.mode {
        RipMode::Exact => exact_rip_bounds_with_budget(instance.phi(), level, args.budget)?,
        RipMode::Sampled => sampled_rip_bounds(instance.phi(), level, args.trials, args.seed)?,
    };
    let file = BoundsFile::from_bounds(&bounds, instance.y_norm_sq(), args.reference_eps);
    write_json(&args.out, &file)?;
    println!(
        "level {}  alpha {:.6}  beta {:.6}  delta {:.6}  condition_ok {}",
        level,
        bounds.alpha(),
        bounds.beta(),
        bounds.delta(),
        bounds.condition_ok()
    );
    match file.predicted_iterations {
        Some(it) => println!("predicted iterations to eps {}: {}", args.reference_eps, it),
        None => println!("no iteration guarantee: beta >= 2 * alpha"),
    }
    Ok(())
}

// -------------------------------------------------------------- solve --

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance file.
    #[arg(short, long)]
    pub instance: PathBuf,
    /// Bounds file from `rip` at level 2s; enables the certified step
    /// choice gamma = beta and the guarantee check.
    #[arg(short, long)]
    pub bounds: Option<PathBuf>,
    /// Manual step parameter; required when no bounds file is given.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Target objective value.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Iteration cap; defaults to 10x the predicted bound when certified
    /// bounds apply, else 1000.
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Output result file (JSON).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Objective trace output (CSV: iteration,objective).
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
    /// Exit with code 3 if the run reports ConditionViolated.
    #[arg(long)]
    pub strict: bool,
}

struct SolveOutcome {
    result: SolveResult,
    gamma: f64,
    mode: &'static str,
    predicted: Option<u64>,
    recovery_error: Option<f64>,
}

fn run_solve(
    instance: &ProblemInstance,
    bounds: Option<RipBounds>,
    gamma_override: Option<f64>,
    eps: f64,
    max_iters: Option<usize>,
) -> Result<SolveOutcome> {
    let s = instance.sparsity().ok_or_else(|| {
        CliError::Usage("instance records no sparsity; regenerate it with `grades gen`".into())
    })?;

    let (gamma, mode) = match (&bounds, gamma_override) {
        (Some(b), None) => (b.beta(), if b.is_exact() { "certified" } else { "heuristic" }),
        (Some(_), Some(g)) => (g, "manual"),
        (None, Some(g)) => (g, "manual"),
        (None, None) => {
            return Err(CliError::Usage(
                "no step parameter: pass --bounds (run `grades rip` first) or --gamma".into(),
            ))
        }
    };

    if let Some(b) = &bounds {
        if b.sparsity() != 2 * s {
            return Err(CliError::Usage(format!(
                "bounds are at level {}, but the solver needs level {} (= 2s)",
                b.sparsity(),
                2 * s
            )));
        }
    }

    let predicted = bounds
        .as_ref()
        .and_then(|b| b.iteration_bound(instance.y_norm_sq(), eps).ok());

    let mut config = match &bounds {
        Some(b) => SolverConfig::from_bounds(s, eps, instance.y_norm_sq(), b.clone())?,
        None => SolverConfig::heuristic(s, gamma, eps)?,
    };
    config.gamma = gamma;
    if let Some(cap) = max_iters {
        config.max_iters = cap;
    }

    let result = grades_solve(instance, &config)?;

    let recovery_error = instance.truth().map(|t| {
        result
            .x
            .as_slice()
            .iter()
            .zip(t.as_slice())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    });

    Ok(SolveOutcome { result, gamma, mode, predicted, recovery_error })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let instance = read_json::<InstanceFile>(&args.instance)?.to_instance()?;
    let bounds = match &args.bounds {
        Some(path) => Some(read_json::<BoundsFile>(path)?.to_bounds()?),
        None => None,
    };
    let outcome = run_solve(&instance, bounds, args.gamma, args.eps, args.max_iters)?;
    let r = &outcome.result;

    if let Some(path) = &args.trace_out {
        write_trace(path, &r.trace)?;
    }
    if let Some(path) = &args.out {
        let file = ResultFile {
            schema_version: crate::formats::SCHEMA_VERSION,
            kind: "result".into(),
            x: r.x.as_slice().to_vec(),
            status: status_str(r.status).into(),
            iterations: r.iterations,
            final_objective: r.final_objective(),
            gamma: outcome.gamma,
            eps: args.eps,
            mode: outcome.mode.into(),
            predicted_iterations: outcome.predicted,
            recovery_error: outcome.recovery_error,
        };
        write_json(path, &file)?;
    }

    println!("status           {}", status_str(r.status));
    println!("mode             {}", outcome.mode);
    println!("gamma            {}", outcome.gamma);
    println!("iterations       {}", r.iterations);
    if let Some(p) = outcome.predicted {
        println!("predicted bound  {p}");
    }
    println!("final objective  {:e}", r.final_objective());
    if let Some(err) = outcome.recovery_error {
        println!("recovery error   {err:e}");
    }

    if args.strict && r.status == SolveStatus::ConditionViolated {
        return Err(CliError::StrictCondition);
    }
    Ok(())
}

// -------------------------------------------------------------- bench --

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    /// Exact when the enumeration fits the budget, sampled otherwise.
    Auto,
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Number of measurements (matrix rows).
    #[arg(short, long)]
    pub m: usize,
    /// Signal dimension (matrix columns).
    #[arg(short, long)]
    pub n: usize,
    /// Sparsity of the planted signals.
    #[arg(short, long)]
    pub s: usize,
    /// One instance per seed in `base_seed .. base_seed + num_seeds`.
    #[arg(long)]
    pub num_seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub base_seed: u64,
    /// Target objective value per solve.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = BenchMode::Auto)]
    pub mode: BenchMode,
    /// Sampled bounds: number of random supports.
    #[arg(long, default_value_t = 2000)]
    pub trials: u64,
    /// Exact bounds: enumeration budget.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub budget: u64,
    /// Distribution of the planted nonzeros.
    #[arg(long, value_enum, default_value_t = Amplitude::Normal)]
    pub amplitude: Amplitude,
    /// Output table (CSV).
    #[arg(short, long)]
    pub out: PathBuf,
    /// Write 0 in the wall_time_ms column so output files are
    /// byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
    /// Exit with code 3 if any row reports condition_violated.
    #[arg(long)]
    pub strict: bool,
}

struct BenchRow {
    seed: u64,
    alpha: f64,
    beta: f64,
    condition_ok: bool,
    predicted: Option<u64>,
    iterations: usize,
    final_objective: f64,
    recovery_error: f64,
    wall_time_ms: u128,
    certified: bool,
    status: SolveStatus,
}

fn bench_one(args: &BenchArgs, seed: u64) -> Result<BenchRow> {
    let start = Instant::now();

    let phi = gen_gaussian_matrix(args.m, args.n, sub_seed(seed, 0))?;
    let truth = gen_sparse_signal(args.n, args.s, sub_seed(seed, 1), args.amplitude.dist())?;
    let instance = make_instance(phi, truth, args.s)?;

    let level = 2 * args.s;
    let use_exact = match args.mode {
        BenchMode::Exact => true,
        BenchMode::Sampled => false,
        BenchMode::Auto => binomial(args.n, level) <= args.budget as u128,
    };
    let bounds = if use_exact {
        exact_rip_bounds_with_budget(instance.phi(), level, args.budget)?
    } else {
        sampled_rip_bounds(instance.phi(), level, args.trials, sub_seed(seed, 2))?
    };

    let outcome = run_solve(&instance, Some(bounds.clone()), None, args.eps, None)?;
    let wall_time_ms = if args.no_timing { 0 } else { start.elapsed().as_millis() };

    let certified = bounds.is_exact() && bounds.condition_ok();
    let row = BenchRow {
        seed,
        alpha: bounds.alpha(),
        beta: bounds.beta(),
        condition_ok: bounds.condition_ok(),
        predicted: outcome.predicted,
        iterations: outcome.result.iterations,
        final_objective: outcome.result.final_objective(),
        recovery_error: outcome.recovery_error.expect("bench instances carry truth"),
        wall_time_ms,
        certified,
        status: outcome.result.status,
    };

    // the theorem invariant, enforced per row: a certified run finishing
    // over its bound is a library defect, not a data point
    if certified {
        let predicted = row.predicted.expect("certified rows have a bound");
        if row.iterations as u64 > predicted {
            return Err(CliError::Usage(format!(
                "defect: certified seed {seed} took {} iterations, bound was {predicted}",
                row.iterations
            )));
        }
    }
    Ok(row)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let seeds: Vec<u64> = (0..args.num_seeds).map(|i| args.base_seed + i).collect();
    let mut rows = seeds
        .par_iter()
        .map(|&seed| bench_one(args, seed))
        .collect::<Result<Vec<BenchRow>>>()?;
    rows.sort_by_key(|r| r.seed);

    let mut csv = String::from(
        "seed,alpha,beta,condition_ok,predicted_bound,iterations,final_objective,recovery_error,wall_time_ms\n",
    );
    for r in &rows {
        let predicted = r.predicted.map(|p| p.to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.seed,
            r.alpha,
            r.beta,
            r.condition_ok,
            predicted,
            r.iterations,
            r.final_objective,
            r.recovery_error,
            r.wall_time_ms
        ));
    }
    std::fs::write(&args.out, csv).map_err(CliError::io(&args.out))?;

    let recovered = rows.iter().filter(|r| r.recovery_error <= 1e-5).count();
    let certified = rows.iter().filter(|r| r.certified).count();
    println!(
        "{} seeds: {} certified, recovery rate {}/{} ({:.2})",
        rows.len(),
        certified,
        recovered,
        rows.len(),
        recovered as f64 / rows.len().max(1) as f64
    );

    if args.strict && rows.iter().any(|r| r.status == SolveStatus::ConditionViolated) {
        return Err(CliError::StrictCondition);
    }
    Ok(())
}
