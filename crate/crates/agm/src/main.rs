//! Command-line front end: conjecture checking, frame/ensemble generation,
//! solver experiments, and the acceptance report bundle.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 conjecture violation
//! discovered (a finding, recorded in the violation ledger).

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agm::combinatorics;
use agm::expectations::{ExpectationSpec, Form, MatrixTuple, Method, Scheme};
use agm::frames::Frame;
use agm::inequalities::{
    check_bhatia, check_bias_conjecture, check_strong_conjecture, check_variance_conjecture,
    ncsos_witness_check, psd_order_check, InequalityVerdict, VerdictStatus, ViolationRecord,
};
use agm::linalg::SymmetricMatrix;
use agm::randmat::{
    ensemble_moments, fourth_moment_entry, wishart_gap_bounds, zeta, EnsembleSpec,
    EntryDistribution, MomentPattern,
};
use agm::solvers::{
    default_igm_step, gaussian_rows, haar_rows, run_igm, run_kaczmarz, write_summary_csv,
    write_trace_csv, LeastSquaresInstance, SamplerConfig, SamplerScheme, SolverRun, StepRule,
};
use agm::{rng, AgmError};

#[derive(Parser)]
#[command(name = "agm", version, about = "Noncommutative AM-GM inequality laboratory")]
struct Cli {
    /// Master seed for all randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads: a number, or "auto".
    #[arg(long, global = true, default_value = "auto")]
    threads: String,

    /// Output file or directory (command-dependent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality checkers on a matrix tuple.
    Check(CheckArgs),
    /// Construct a harmonic frame and optionally emit its tuple file.
    Frames(FramesArgs),
    /// Randomized Kaczmarz experiment.
    Kaczmarz(SolverArgs),
    /// Incremental gradient (LMS) experiment.
    Igm(SolverArgs),
    /// Evaluate the λ(n) series and the brute-force cross-check.
    Lambda(LambdaArgs),
    /// Wishart-type ensemble formulas and Monte Carlo comparisons.
    Wishart(WishartArgs),
    /// The epoch-comparison experiment (all panels).
    Figure1(Figure1Args),
    /// Run the full acceptance suite and write its artifacts.
    ReportBundle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IneqChoice {
    Bias,
    Variance,
    Strong,
    WorstCase,
    Bhatia,
    Ncsos,
    PsdOrder,
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Matrix tuple JSON file.
    #[arg(long, conflicts_with_all = ["frames_2d", "random_psd"])]
    file: Option<PathBuf>,

    /// Use the harmonic frame tuple with this n.
    #[arg(long)]
    frames_2d: Option<usize>,

    /// Sweep random PSD tuples; format "n=4,d=3".
    #[arg(long)]
    random_psd: Option<String>,

    /// Number of random tuples for --random-psd.
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,

    /// Product length.
    #[arg(long, default_value_t = 2)]
    k: usize,

    /// Which inequality to check.
    #[arg(long, value_enum, default_value_t = IneqChoice::All)]
    ineq: IneqChoice,

    /// Use Monte Carlo with this many samples instead of exact enumeration.
    #[arg(long)]
    samples: Option<u64>,

    /// Append genuine violations to this JSON-lines ledger.
    #[arg(long)]
    ledger: Option<PathBuf>,
}

#[derive(Args)]
struct FramesArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Write the rank-one projector tuple to this file.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RowSource {
    Harmonic,
    GeneralFrame,
    Haar,
    Gaussian,
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeChoice {
    WithReplacement,
    WithoutReplacement,
    RowNormWeighted,
    DeterministicCycle,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = RowSource::Harmonic)]
    rows: RowSource,
    /// Tuple/row file when --rows file.
    #[arg(long)]
    rows_file: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    n: usize,
    #[arg(long, default_value_t = 40)]
    d: usize,
    /// Noise standard deviation.
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[arg(long, value_enum, default_value_t = SchemeChoice::WithoutReplacement)]
    scheme: SchemeChoice,
    /// Row-norm weighting exponent (1 or 2).
    #[arg(long, default_value_t = 2)]
    weight_power: u32,
    /// Constant step size (IGM only; default 0.5/max row norm squared).
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 1)]
    epochs: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct LambdaArgs {
    #[arg(long)]
    n: usize,
    /// Also run the n! brute-force oracle (n <= 7).
    #[arg(long)]
    bruteforce: bool,
}

#[derive(Args)]
struct WishartArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value = "gaussian")]
    dist: String,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
}

#[derive(Args)]
struct Figure1Args {
    /// Use the full-size 100x105 and 100x200 shapes.
    #[arg(long)]
    full_size: bool,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: String,
    args: Vec<String>,
    seed: u64,
    version: &'static str,
    timestamp_unix: u64,
}

impl RunManifest {
    fn new(seed: u64) -> Self {
        RunManifest {
            subcommand: std::env::args().nth(1).unwrap_or_default(),
            args: std::env::args().skip(1).collect(),
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    /// Write `<output>.manifest.json` next to an emitted artifact.
    fn write_beside(&self, artifact: &Path) -> agm::Result<()> {
        let mut name = artifact.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        let path = artifact.with_file_name(name);
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads != "auto" {
        match cli.threads.parse::<usize>() {
            Ok(t) if t >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => {
                eprintln!("error: --threads must be a positive integer or \"auto\"");
                return ExitCode::from(1);
            }
        }
    }
    let result = match &cli.command {
        Command::Check(args) => cmd_check(&cli, args),
        Command::Frames(args) => cmd_frames(&cli, args),
        Command::Kaczmarz(args) => cmd_solver(&cli, args, false),
        Command::Igm(args) => cmd_solver(&cli, args, true),
        Command::Lambda(args) => cmd_lambda(&cli, args),
        Command::Wishart(args) => cmd_wishart(&cli, args),
        Command::Figure1(args) => cmd_figure1(&cli, args),
        Command::ReportBundle => cmd_report_bundle(&cli),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

fn parse_random_psd_spec(spec: &str) -> agm::Result<(usize, usize)> {
    let (mut n, mut d) = (None, None);
    for part in spec.split(',') {
        match part.trim().split_once('=') {
            Some(("n", v)) => n = v.trim().parse().ok(),
            Some(("d", v)) => d = v.trim().parse().ok(),
            _ => {}
        }
    }
    match (n, d) {
        (Some(n), Some(d)) if n >= 1 && d >= 1 => Ok((n, d)),
        _ => Err(AgmError::InvalidInput(format!(
            "--random-psd expects \"n=<int>,d=<int>\" (got {:?})",
            spec
        ))),
    }
}

fn append_violations(ledger: Option<&PathBuf>, violations: &[ViolationRecord]) -> agm::Result<()> {
    let Some(path) = ledger else { return Ok(()) };
    if violations.is_empty() {
        return Ok(());
    }
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    for v in violations {
        writeln!(file, "{}", serde_json::to_string(v)?)?;
    }
    Ok(())
}

fn checks_for_tuple(
    t: &MatrixTuple,
    k: usize,
    ineq: IneqChoice,
    method: Method,
) -> agm::Result<Vec<(String, serde_json::Value, Option<InequalityVerdict>)>> {
    let mut out = Vec::new();
    let mut push_verdict = |name: &str, v: InequalityVerdict| {
        out.push((name.to_string(), serde_json::to_value(&v).unwrap(), Some(v)));
    };
    if matches!(ineq, IneqChoice::Bias | IneqChoice::All) {
        push_verdict("bias", check_bias_conjecture(t, k, method)?);
    }
    if matches!(ineq, IneqChoice::Variance | IneqChoice::All) {
        push_verdict("variance", check_variance_conjecture(t, k, method)?);
    }
    if matches!(ineq, IneqChoice::Strong | IneqChoice::All) {
        push_verdict("strong", check_strong_conjecture(t, k, method)?);
    }
    if matches!(ineq, IneqChoice::WorstCase | IneqChoice::All) {
        push_verdict("worst-case", agm::inequalities::check_worst_case_bound(t, k, None)?);
    }
    if t.len() == 2 && matches!(ineq, IneqChoice::Bhatia | IneqChoice::All) {
        push_verdict("bhatia", check_bhatia(t.get(0), t.get(1))?);
    }
    if t.len() == 2 && matches!(ineq, IneqChoice::Ncsos | IneqChoice::All) {
        let ok = ncsos_witness_check(t.get(0), t.get(1))?;
        out.push((
            "ncsos".into(),
            serde_json::json!({ "holds": ok }),
            None,
        ));
    }
    if matches!(ineq, IneqChoice::PsdOrder | IneqChoice::All) {
        // Compare E_wo[k-fold product] against (M_A)^k in the PSD order.
        let wo = agm::expectations::expect_product(
            t,
            &ExpectationSpec::exact(k, Form::Plain, Scheme::WithoutReplacement),
        )?;
        let ma_k = t.arithmetic_mean().to_general().pow(k as u32);
        let (ordered, witness) = psd_order_check(
            &SymmetricMatrix::from_general(&wo.mean_matrix)?,
            &SymmetricMatrix::from_general(&ma_k)?,
        )?;
        out.push((
            "psd-order".into(),
            serde_json::json!({ "ordered": ordered, "witness_min_eig": witness, "k": k }),
            None,
        ));
    }
    Ok(out)
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> agm::Result<ExitCode> {
    let method = match args.samples {
        Some(s) => Method::MonteCarlo {
            samples: s,
            seed: rng::derive_seed(cli.seed, &[1]),
        },
        None => Method::Exact,
    };
    let mut violations: Vec<ViolationRecord> = Vec::new();
    let mut reports = Vec::new();

    if let Some(spec) = &args.random_psd {
        let (n, d) = parse_random_psd_spec(spec)?;
        let k = args.k.min(n);
        for i in 0..args.sweeps as u64 {
            let tuple_seed = rng::derive_seed(cli.seed, &[2, i]);
            let t = agm::randmat::sample_tuple(&EnsembleSpec {
                d,
                r: d,
                n,
                dist: EntryDistribution::gaussian(1.0),
                seed: tuple_seed,
            });
            for (name, value, verdict) in checks_for_tuple(&t, k, args.ineq, method)? {
                if let Some(v) = verdict {
                    if v.status == VerdictStatus::Violated {
                        violations.push(ViolationRecord::from_verdict(&name, &t, k, tuple_seed, &v));
                    }
                }
                if cli.json && args.sweeps <= 10 {
                    reports.push(serde_json::json!({ "tuple": i, "check": name, "result": value }));
                }
            }
        }
        let summary = serde_json::json!({
            "sweeps": args.sweeps,
            "n": n,
            "d": d,
            "k": k,
            "violations": violations.len(),
        });
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        let t = if let Some(n) = args.frames_2d {
            Frame::harmonic_2d(n)?.to_tuple()
        } else if let Some(path) = &args.file {
            MatrixTuple::from_file(path)?
        } else {
            return Err(AgmError::InvalidInput(
                "provide --file, --frames-2d, or --random-psd".into(),
            ));
        };
        let k = args.k;
        let results = checks_for_tuple(&t, k, args.ineq, method)?;
        for (name, value, verdict) in &results {
            if let Some(v) = verdict {
                if v.status == VerdictStatus::Violated {
                    violations.push(ViolationRecord::from_verdict(name, &t, k, cli.seed, v));
                }
            }
            if cli.json {
                reports.push(serde_json::json!({ "check": name, "result": value }));
            } else {
                println!("{}: {}", name, value);
            }
        }
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&reports)?);
        }
    }

    append_violations(args.ledger.as_ref(), &violations)?;
    if !violations.is_empty() {
        eprintln!("{} conjecture violation(s) recorded", violations.len());
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_frames(cli: &Cli, args: &FramesArgs) -> agm::Result<ExitCode> {
    let frame = if args.d == 2 {
        Frame::harmonic_2d(args.n)?
    } else {
        Frame::general(args.d, args.n)?
    };
    let emit = args.emit.clone().or_else(|| cli.out.clone());
    if let Some(path) = &emit {
        frame.to_tuple().to_file(path)?;
        RunManifest::new(cli.seed).write_beside(path)?;
    }
    let info = serde_json::json!({
        "d": frame.dim(),
        "n": frame.len(),
        "adjacent_inner_product": frame.inner_product(0, 1),
        "emitted": emit,
    });
    println!("{}", serde_json::to_string_pretty(&info)?);
    Ok(ExitCode::SUCCESS)
}

fn solver_rows(cli: &Cli, args: &SolverArgs) -> agm::Result<agm::linalg::GeneralMatrix> {
    Ok(match args.rows {
        RowSource::Harmonic => {
            if args.d == 2 {
                Frame::harmonic_2d(args.n)?.to_row_matrix()
            } else {
                Frame::general(args.d, args.n)?.to_row_matrix()
            }
        }
        RowSource::GeneralFrame => Frame::general(args.d, args.n)?.to_row_matrix(),
        RowSource::Haar => haar_rows(args.n, args.d, rng::derive_seed(cli.seed, &[3])),
        RowSource::Gaussian => gaussian_rows(args.n, args.d, rng::derive_seed(cli.seed, &[4])),
        RowSource::File => {
            let path = args.rows_file.as_ref().ok_or_else(|| {
                AgmError::InvalidInput("--rows file requires --rows-file".into())
            })?;
            let raw = std::fs::read_to_string(path)?;
            let rows: Vec<Vec<f64>> = serde_json::from_str(&raw)?;
            let n = rows.len();
            let d = rows.first().map(Vec::len).unwrap_or(0);
            agm::linalg::GeneralMatrix::from_rows(n, d, rows.into_iter().flatten().collect())?
        }
    })
}

fn scheme_config(choice: SchemeChoice, weight_power: u32, seed: u64) -> SamplerConfig {
    let scheme = match choice {
        SchemeChoice::WithReplacement => SamplerScheme::WithReplacementUniform,
        SchemeChoice::WithoutReplacement => SamplerScheme::WithoutReplacementPermutation,
        SchemeChoice::RowNormWeighted => SamplerScheme::RowNormWeighted { power: weight_power },
        SchemeChoice::DeterministicCycle => SamplerScheme::DeterministicCycle,
    };
    SamplerConfig { scheme, seed }
}

fn cmd_solver(cli: &Cli, args: &SolverArgs, igm: bool) -> agm::Result<ExitCode> {
    let rows = solver_rows(cli, args)?;
    let d = rows.cols();
    let mut xs = rng::stream(cli.seed, &[5]);
    let x_star: Vec<f64> = (0..d).map(|_| xs.gen_range(-1.0..1.0)).collect();
    let instance =
        LeastSquaresInstance::new(rows, x_star, args.rho, rng::derive_seed(cli.seed, &[6]))?;
    let steps = args.epochs * instance.n();
    let sampler = scheme_config(args.scheme, args.weight_power, rng::derive_seed(cli.seed, &[7]));
    let run = if igm {
        let gamma = args.gamma.unwrap_or_else(|| default_igm_step(&instance));
        run_igm(&instance, &sampler, StepRule::Constant(gamma), steps, args.trials, None)
    } else {
        run_kaczmarz(&instance, &sampler, steps, args.trials, None)
    };
    emit_runs(cli, &[&run])?;
    let summary = serde_json::json!({
        "scheme": run.scheme,
        "trials": args.trials,
        "steps": steps,
        "median_final_error": run.median_final_error(),
        "skipped_zero_rows": run.skipped_zero_rows,
        "diverged_trials": run.diverged.iter().filter(|&&x| x).count(),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(ExitCode::SUCCESS)
}

fn emit_runs(cli: &Cli, runs: &[&SolverRun]) -> agm::Result<()> {
    let Some(out) = &cli.out else { return Ok(()) };
    let summary_path = summary_path_for(out);
    write_trace_csv(out, runs)?;
    write_summary_csv(&summary_path, runs)?;
    let manifest = RunManifest::new(cli.seed);
    manifest.write_beside(out)?;
    manifest.write_beside(&summary_path)?;
    Ok(())
}

fn summary_path_for(trace: &Path) -> PathBuf {
    let stem = trace.file_stem().and_then(|s| s.to_str()).unwrap_or("trace");
    trace.with_file_name(format!("{}_summary.csv", stem))
}

fn cmd_lambda(cli: &Cli, args: &LambdaArgs) -> agm::Result<ExitCode> {
    let value = combinatorics::lambda_value(args.n, args.bruteforce)?;
    let scaled = value
        .alpha_bruteforce
        .map(|a| a.abs() * 2.0_f64.powi(args.n as i32));
    let report = serde_json::json!({
        "n": value.n,
        "series_value": value.series_value,
        "alpha_bruteforce": value.alpha_bruteforce,
        "abs_alpha_times_2_pow_n": scaled,
        "magnitudes_agree": scaled.map(|s| (s - value.series_value.abs()).abs() <= 1e-9),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(out) = &cli.out {
        std::fs::write(out, serde_json::to_string_pretty(&report)?)?;
        RunManifest::new(cli.seed).write_beside(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_wishart(cli: &Cli, args: &WishartArgs) -> agm::Result<ExitCode> {
    let dist = EntryDistribution::from_name(&args.dist, args.sigma)?;
    let spec = EnsembleSpec {
        d: args.d,
        r: args.r,
        n: 1,
        dist,
        seed: rng::derive_seed(cli.seed, &[8]),
    };
    spec.validate()?;
    let bounds = wishart_gap_bounds(args.k, args.r, args.d, args.sigma)?;
    let moments = ensemble_moments(&spec, args.samples);
    let zeta_value = zeta(&spec);
    let mean_a_diag: f64 =
        (0..args.d).map(|i| moments.mean_a.get(i, i)).sum::<f64>() / args.d as f64;
    let mean_a2_diag: f64 =
        (0..args.d).map(|i| moments.mean_a2.get(i, i)).sum::<f64>() / args.d as f64;
    let report = serde_json::json!({
        "spec": { "k": args.k, "r": args.r, "d": args.d, "sigma": args.sigma, "dist": dist },
        "zeta": zeta_value,
        "fourth_moment_entries": {
            "same-pair-diagonal": fourth_moment_entry(&spec, MomentPattern::SamePairDiagonal),
            "same-pair-offdiagonal": fourth_moment_entry(&spec, MomentPattern::SamePairOffDiagonal),
            "mismatched": fourth_moment_entry(&spec, MomentPattern::Mismatched),
        },
        "bounds": bounds,
        "log_intermediate_rho_form":
            agm::randmat::log_intermediate_rho_form(args.k, args.r, args.d),
        "monte_carlo": {
            "samples": args.samples,
            "mean_diag_A": mean_a_diag,
            "expected_diag_A": args.r as f64 * dist.sigma2(),
            "mean_diag_A2": mean_a2_diag,
            "expected_diag_A2": zeta_value,
            "stderr_A": moments.stderr_a,
            "stderr_A2": moments.stderr_a2,
        },
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(out) = &cli.out {
        std::fs::write(out, serde_json::to_string_pretty(&report)?)?;
        RunManifest::new(cli.seed).write_beside(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure1(cli: &Cli, args: &Figure1Args) -> agm::Result<ExitCode> {
    let (d, shapes) = if args.full_size {
        (100usize, [105usize, 200])
    } else {
        (40, [42, 80])
    };
    let out_dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figure1"));
    std::fs::create_dir_all(&out_dir)?;
    let mut panel_summaries = Vec::new();
    let mut all_ok = true;

    let mut run_panel = |label: String,
                         rows: agm::linalg::GeneralMatrix,
                         rho: f64,
                         igm: bool|
     -> agm::Result<()> {
        let mut xs = rng::stream(cli.seed, &[20]);
        let x_star: Vec<f64> = (0..rows.cols()).map(|_| xs.gen_range(-1.0..1.0)).collect();
        let instance =
            LeastSquaresInstance::new(rows, x_star, rho, rng::derive_seed(cli.seed, &[21]))?;
        let steps = instance.n();
        let sampler_seed = rng::derive_seed(cli.seed, &[22]);
        let wo = SamplerConfig {
            scheme: SamplerScheme::WithoutReplacementPermutation,
            seed: sampler_seed,
        };
        let wr = SamplerConfig {
            scheme: SamplerScheme::WithReplacementUniform,
            seed: sampler_seed,
        };
        let (run_wo, run_wr) = if igm {
            let gamma = default_igm_step(&instance);
            (
                run_igm(&instance, &wo, StepRule::Constant(gamma), steps, args.trials, None),
                run_igm(&instance, &wr, StepRule::Constant(gamma), steps, args.trials, None),
            )
        } else {
            (
                run_kaczmarz(&instance, &wo, steps, args.trials, None),
                run_kaczmarz(&instance, &wr, steps, args.trials, None),
            )
        };
        let trace = out_dir.join(format!("{}.csv", label));
        write_trace_csv(&trace, &[&run_wo, &run_wr])?;
        write_summary_csv(&summary_path_for(&trace), &[&run_wo, &run_wr])?;
        let manifest = RunManifest::new(cli.seed);
        manifest.write_beside(&trace)?;
        manifest.write_beside(&summary_path_for(&trace))?;
        let (m_wo, m_wr) = (run_wo.median_final_error(), run_wr.median_final_error());
        all_ok &= m_wo <= m_wr;
        panel_summaries.push(serde_json::json!({
            "panel": label,
            "median_wo": m_wo,
            "median_wr": m_wr,
            "wo_leq_wr": m_wo <= m_wr,
        }));
        Ok(())
    };

    for n in shapes {
        run_panel(
            format!("kaczmarz_harmonic_{}x{}", n, d),
            Frame::general(d, n)?.to_row_matrix(),
            0.0,
            false,
        )?;
        run_panel(
            format!("kaczmarz_haar_{}x{}", n, d),
            haar_rows(n, d, rng::derive_seed(cli.seed, &[23, n as u64])),
            0.0,
            false,
        )?;
    }
    run_panel(
        format!("igm_harmonic_{}x{}_rho0.01", shapes[0], d),
        Frame::general(d, shapes[0])?.to_row_matrix(),
        0.01,
        true,
    )?;

    let report = serde_json::json!({ "panels": panel_summaries, "all_wo_leq_wr": all_ok });
    println!("{}", serde_json::to_string_pretty(&report)?);
    std::fs::write(out_dir.join("figure1.json"), serde_json::to_string_pretty(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_report_bundle(cli: &Cli) -> agm::Result<ExitCode> {
    let out_dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("report-bundle"));
    std::fs::create_dir_all(&out_dir)?;
    let report = agm::acceptance::run_all(cli.seed);
    for c in &report.criteria {
        println!(
            "criterion {:2} [{}] {} — {} ({} ms)",
            c.id,
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.details,
            c.elapsed_ms
        );
    }
    let report_path = out_dir.join("acceptance.json");
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    RunManifest::new(cli.seed).write_beside(&report_path)?;
    if !report.violations.is_empty() {
        let ledger = out_dir.join("violations.jsonl");
        append_violations(Some(&ledger), &report.violations)?;
        RunManifest::new(cli.seed).write_beside(&ledger)?;
        eprintln!(
            "{} conjecture violation(s) recorded in {}",
            report.violations.len(),
            ledger.display()
        );
        return Ok(ExitCode::from(2));
    }
    if !report.all_passed() {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
