//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 verification failure.
//! Data goes to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use setpart::baselines::{greedy_partition, karmarkar_karp};
use setpart::io::{
    generate, parse_instance, parse_partition, write_instance, Distribution, GenSpec, ReportDocument,
    SignMode,
};
use setpart::optimality::{is_locally_2opt, Verdict};
use setpart::oracle::{optimal_diff_enum, optimal_diff_mitm, ENUM_LIMIT, MITM_LIMIT};
use setpart::partition::complement;
use setpart::{solve, Engine, InitPolicy, Instance, SolverConfig, TieBreak};

#[derive(Parser)]
#[command(
    name = "setpart",
    version,
    about = "Locally 2-optimal two-way number partitioning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the local search on an instance file ('-' for stdin).
    Solve(SolveArgs),
    /// Check whether a partition admits an improving move of one or two elements.
    Check {
        input: String,
        /// Side-1 indices, one per line, counting from 1.
        partition: String,
    },
    /// Exact minimum difference for small instances.
    Oracle {
        input: String,
        #[arg(long, value_enum, default_value_t = OracleMethod::Auto)]
        method: OracleMethod,
    },
    /// Compare the solver with greedy, Karmarkar-Karp and the exact oracles.
    Compare(CompareArgs),
    /// Write a generated instance to stdout.
    Gen(GenArgs),
    /// Runtime and counter scaling of the solver over generated instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    RoundRobin,
    FirstHalf,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    NoFlip,
    Smallest,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Reference,
    Scan,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMethod {
    Auto,
    Enum,
    Mitm,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = InitArg::RoundRobin)]
    init: InitArg,
    #[arg(long, value_enum, default_value_t = TieArg::NoFlip)]
    tie: TieArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Scan)]
    engine: EngineArg,
}

impl SolverArgs {
    /// `seed` drives `--init random`.
    fn config(&self, seed: u64, trace: bool) -> SolverConfig {
        SolverConfig {
            init_policy: match self.init {
                InitArg::RoundRobin => InitPolicy::RoundRobinDescending,
                InitArg::FirstHalf => InitPolicy::FirstHalf,
                InitArg::Random => InitPolicy::SeededRandom(seed),
            },
            tie_break: match self.tie {
                TieArg::NoFlip => TieBreak::PreferNoSignFlip,
                TieArg::Smallest => TieBreak::PreferSmallest,
            },
            engine: match self.engine {
                EngineArg::Reference => Engine::Reference,
                EngineArg::Scan => Engine::Scan,
            },
            collect_trace: trace,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    input: String,
    #[command(flatten)]
    solver: SolverArgs,
    /// Seed for `--init random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the optimality checker on the result; exit 2 if it fails.
    #[arg(long)]
    verify: bool,
    /// Record the difference after every swap.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Args, Clone)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// uniform:LO:HI, pow2:BITS or decimal:BEFORE:AFTER
    #[arg(long, default_value = "uniform:1:1000000")]
    dist: String,
    /// positive or mixed:FRACTION
    #[arg(long, default_value = "positive")]
    sign: String,
    #[arg(long, default_value_t = 0.0)]
    zero_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn spec(&self, n: usize, seed: u64) -> Result<GenSpec, Failure> {
        let spec = GenSpec {
            n,
            distribution: self.dist.parse::<Distribution>()?,
            sign_mode: self.sign.parse::<SignMode>()?,
            zero_rate: self.zero_rate,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args)]
struct CompareArgs {
    /// Instance files; when absent, instances are generated from the flags below.
    inputs: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "uniform:1:1000000")]
    dist: String,
    #[arg(long, default_value = "positive")]
    sign: String,
    #[arg(long, default_value_t = 0.0)]
    zero_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of generated instances (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Largest N for the exhaustive oracle column.
    #[arg(long, default_value_t = ENUM_LIMIT)]
    oracle_limit: usize,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated instance sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 2000])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform:1:1000000")]
    dist: String,
    #[arg(long, default_value = "positive")]
    sign: String,
    #[arg(long, default_value_t = 0.0)]
    zero_rate: f64,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<setpart::Error> for Failure {
    fn from(e: setpart::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load_instance(path: &str) -> Result<Instance, Failure> {
    let text = read_source(path)?;
    let inst = parse_instance(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let id = if path == "-" {
        "stdin".to_string()
    } else {
        Path::new(path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.to_string())
    };
    Ok(inst.with_id(id))
}

fn describe_witness(instance: &Instance, verdict: &Verdict) -> String {
    let w = verdict
        .witness
        .as_ref()
        .expect("improvable verdicts carry a witness");
    let idx: Vec<String> = w.moved.iter().map(|i| (i + 1).to_string()).collect();
    let noun = if idx.len() == 1 { "index" } else { "indices" };
    format!(
        "move {noun} {} (diff {} -> {})",
        idx.join(", "),
        instance.render(&verdict.current_diff),
        instance.render(&w.new_diff)
    )
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.input)?;
    let config = args.solver.config(args.seed, args.trace);
    let report = solve(&inst, &config);
    match args.format {
        Format::Report => println!(
            "{}",
            ReportDocument::from_solver(&inst, &report, &config).to_json()
        ),
        Format::Csv => {
            println!("id,n,final_diff,traverses,swaps,elapsed_ms");
            println!(
                "{},{},{},{},{},{:.3}",
                inst.id.as_deref().unwrap_or(""),
                inst.len(),
                inst.render(&report.final_diff),
                report.traverses,
                report.swaps,
                report.elapsed.as_secs_f64() * 1e3
            );
        }
    }
    if args.verify {
        let verdict = is_locally_2opt(&inst, &report.side1_indices, &report.side2_indices)?;
        if !verdict.is_locally_2opt {
            return Err(Failure::Verification(format!(
                "solver output is not locally 2-optimal: {}",
                describe_witness(&inst, &verdict)
            )));
        }
        eprintln!("verified: locally 2-optimal");
    }
    Ok(())
}

fn cmd_check(input: &str, partition: &str) -> Result<(), Failure> {
    let inst = load_instance(input)?;
    let side1 =
        parse_partition(&read_source(partition)?).map_err(|e| Failure::Input(format!("{partition}: {e}")))?;
    let (side1, side2) = complement(inst.len(), &side1)?;
    let verdict = is_locally_2opt(&inst, &side1, &side2)?;
    if verdict.is_locally_2opt {
        println!("locally 2-optimal (diff {})", inst.render(&verdict.current_diff));
        Ok(())
    } else {
        println!("not locally 2-optimal: {}", describe_witness(&inst, &verdict));
        Err(Failure::Verification(String::new()))
    }
}

fn cmd_oracle(input: &str, method: OracleMethod) -> Result<(), Failure> {
    let inst = load_instance(input)?;
    let t = Instant::now();
    let (name, result) = match method {
        OracleMethod::Enum => ("oracle_enum", optimal_diff_enum(&inst)?),
        OracleMethod::Mitm => ("oracle_mitm", optimal_diff_mitm(&inst)?),
        OracleMethod::Auto if inst.len() <= ENUM_LIMIT => ("oracle_enum", optimal_diff_enum(&inst)?),
        OracleMethod::Auto => ("oracle_mitm", optimal_diff_mitm(&inst)?),
    };
    println!(
        "{}",
        ReportDocument::from_oracle(&inst, name, &result, ms(t)).to_json()
    );
    Ok(())
}

const COMPARE_HEADER: &str = "id,n,solver_diff,greedy_diff,kk_diff,oracle_enum_diff,oracle_mitm_diff,\
solver_ms,greedy_ms,kk_ms,oracle_enum_ms,oracle_mitm_ms";

fn compare_row(
    inst: &Instance,
    config: &SolverConfig,
    oracle_limit: usize,
    docs: &mut Vec<ReportDocument>,
) -> String {
    let t = Instant::now();
    let solver = solve(inst, config);
    let solver_ms = ms(t);
    let t = Instant::now();
    let greedy = greedy_partition(inst);
    let greedy_ms = ms(t);
    let t = Instant::now();
    let kk = karmarkar_karp(inst);
    let kk_ms = ms(t);

    let (enum_diff, enum_ms) = if inst.len() <= oracle_limit {
        let t = Instant::now();
        let r = optimal_diff_enum(inst).expect("size checked against the limit");
        let elapsed = ms(t);
        docs.push(ReportDocument::from_oracle(inst, "oracle_enum", &r, elapsed));
        (inst.render(&r.optimal_diff), format!("{elapsed:.3}"))
    } else {
        (String::new(), String::new())
    };
    let (mitm_diff, mitm_ms) = if inst.len() <= MITM_LIMIT {
        let t = Instant::now();
        let r = optimal_diff_mitm(inst).expect("size checked against the limit");
        let elapsed = ms(t);
        docs.push(ReportDocument::from_oracle(inst, "oracle_mitm", &r, elapsed));
        (inst.render(&r.optimal_diff), format!("{elapsed:.3}"))
    } else {
        (String::new(), String::new())
    };
    docs.push(ReportDocument::from_solver(inst, &solver, config));
    docs.push(ReportDocument::from_baseline(inst, &greedy, greedy_ms));
    docs.push(ReportDocument::from_baseline(inst, &kk, kk_ms));

    format!(
        "{},{},{},{},{},{},{},{:.3},{:.3},{:.3},{},{}",
        inst.id.as_deref().unwrap_or(""),
        inst.len(),
        inst.render(&solver.final_diff),
        inst.render(&greedy.final_diff),
        inst.render(&kk.final_diff),
        enum_diff,
        mitm_diff,
        solver_ms,
        greedy_ms,
        kk_ms,
        enum_ms,
        mitm_ms
    )
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    if args.oracle_limit > ENUM_LIMIT {
        return Err(Failure::Input(format!(
            "--oracle-limit may not exceed {ENUM_LIMIT}"
        )));
    }
    let instances: Vec<Instance> = if !args.inputs.is_empty() {
        args.inputs
            .iter()
            .map(|p| load_instance(p))
            .collect::<Result<_, _>>()?
    } else {
        let n = args
            .n
            .ok_or_else(|| Failure::Input("compare needs instance files or --n".into()))?;
        let gen = GenArgs {
            n,
            dist: args.dist.clone(),
            sign: args.sign.clone(),
            zero_rate: args.zero_rate,
            seed: args.seed,
        };
        (0..args.count as u64)
            .map(|k| Ok(generate(&gen.spec(n, args.seed.wrapping_add(k))?)?))
            .collect::<Result<_, Failure>>()?
    };
    let config = args.solver.config(args.seed, false);
    let mut docs = Vec::new();
    let mut out = String::new();
    if args.format == Format::Csv {
        out.push_str(COMPARE_HEADER);
        out.push('\n');
    }
    for inst in &instances {
        let row = compare_row(inst, &config, args.oracle_limit, &mut docs);
        if args.format == Format::Csv {
            out.push_str(&row);
            out.push('\n');
        }
    }
    if args.format == Format::Report {
        out = serde_json::to_string_pretty(&docs).expect("documents serialize");
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let inst = generate(&args.spec(args.n, args.seed)?)?;
    print!("{}", write_instance(&inst));
    Ok(())
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        (sorted[m - 1] + sorted[m]) / 2.0
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.reps == 0 {
        return Err(Failure::Input("--reps must be at least 1".into()));
    }
    if args.sizes.is_empty() {
        return Err(Failure::Input("--sizes must list at least one size".into()));
    }
    if args.format != Format::Csv {
        return Err(Failure::Input("bench only writes csv".into()));
    }
    let gen = GenArgs {
        n: 0,
        dist: args.dist.clone(),
        sign: args.sign.clone(),
        zero_rate: args.zero_rate,
        seed: args.seed,
    };
    let config = args.solver.config(args.seed, false);
    let mut out = String::from(
        "n,reps,median_ms,min_ms,max_ms,max_traverses,total_traverses,total_swaps,sum_final_diff,traverse_bound_ok\n",
    );
    let mut bound_ok = true;
    for (k, &n) in args.sizes.iter().enumerate() {
        let mut times = Vec::with_capacity(args.reps);
        let mut max_traverses = 0;
        let mut total_traverses = 0;
        let mut total_swaps = 0;
        let mut diff_sum = setpart::Value::zero();
        let mut scale = 0;
        for rep in 0..args.reps as u64 {
            let seed = args
                .seed
                .wrapping_add((k as u64).wrapping_mul(1_000_003))
                .wrapping_add(rep);
            let inst = generate(&gen.spec(n, seed)?)?;
            scale = inst.scale_exp;
            let report = solve(&inst, &config);
            times.push(report.elapsed.as_secs_f64() * 1e3);
            max_traverses = max_traverses.max(report.traverses);
            total_traverses += report.traverses;
            total_swaps += report.swaps;
            diff_sum += &report.final_diff;
        }
        times.sort_by(f64::total_cmp);
        let ok = max_traverses <= n as u64;
        bound_ok &= ok;
        let _ = writeln!(
            out,
            "{n},{},{:.3},{:.3},{:.3},{max_traverses},{total_traverses},{total_swaps},{},{ok}",
            args.reps,
            median(&times),
            times[0],
            times[times.len() - 1],
            diff_sum.to_decimal_string(scale),
        );
    }
    print!("{out}");
    if bound_ok {
        Ok(())
    } else {
        Err(Failure::Verification("traverse count exceeded N".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Check { input, partition } => cmd_check(&input, &partition),
        Command::Oracle { input, method } => cmd_oracle(&input, method),
        Command::Compare(a) => cmd_compare(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(2)
        }
    }
}
