use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minangle_lp::bench::{render_report, run_benchmark, BenchConfig, ReportFormat, TABLE_SIZES};
use minangle_lp::instances::{
    oracle_solve, parse_instance, random_instance, serialize_instance, GenConfig, OracleResult,
};
use minangle_lp::scalar::format_rational;
use minangle_lp::solver::{attain_dual_feasibility, solve_dictionary};
use minangle_lp::{
    Dictionary, Limits, LpInstance, Mode, Rational, RuleId, Scalar, SolveOutcome, Status, StepRecord, Var,
};

#[derive(Parser)]
#[command(
    name = "minangle",
    version,
    about = "Minimum-angle dual feasibility LP solver and pivot-rule benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Minangle,
    Dantzig,
    Bland,
    Brule,
}

impl From<RuleArg> for RuleId {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Minangle => RuleId::MinAngle,
            RuleArg::Dantzig => RuleId::DantzigLex,
            RuleArg::Bland => RuleId::Bland,
            RuleArg::Brule => RuleId::BRule,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Float,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Markdown,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "minangle")]
        rule: RuleArg,
        #[arg(long, value_enum, default_value = "float")]
        mode: ModeArg,
        #[arg(long, default_value_t = minangle_lp::DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Print every iteration's dictionaries, sets and cosines.
        #[arg(long)]
        trace: bool,
        /// Stop once the dictionary is dual feasible.
        #[arg(long)]
        dual_only: bool,
    },
    /// Write random instances.
    Gen {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = -50, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 50, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare iteration counts of the rules on random instances.
    Bench {
        /// Comma-separated `MxN` sizes; defaults to the full sixteen-size table.
        #[arg(long, value_delimiter = ',', value_parser = parse_size)]
        sizes: Vec<(usize, usize)>,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',')]
        rules: Vec<RuleArg>,
        #[arg(long, value_enum, default_value = "float")]
        mode: ModeArg,
        #[arg(long, default_value_t = minangle_lp::DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance file by basis enumeration.
    Oracle { input: PathBuf },
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("size `{s}` is not of the form MxN"))?;
    let dim = |v: &str| match v.trim().parse::<usize>() {
        Ok(d) if d > 0 => Ok(d),
        _ => Err(format!("size `{s}` needs positive dimensions")),
    };
    Ok((dim(m)?, dim(n)?))
}

fn read_instance(path: &Path) -> Result<LpInstance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn join_labels(labels: &[Var]) -> String {
    labels.iter().map(Var::to_string).collect::<Vec<_>>().join(", ")
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

fn caption_title(caption: &str) -> &'static str {
    match caption {
        "after dual simplex pivot" => "Dual simplex step",
        _ => "Step",
    }
}

fn print_record<S: Scalar>(record: &StepRecord<S>) {
    if record.rule != RuleId::MinAngle || record.main_direction.is_none() {
        let caption = record.snapshots.first().map_or("pivot", |(c, _)| c.as_str());
        for &(leave, enter) in &record.pivots {
            println!(
                "{} {}: pivot ({leave}, {enter})",
                caption_title(caption),
                record.iteration
            );
        }
        for (_, d) in &record.snapshots {
            print!("{}", indent(&d.to_string()));
        }
        return;
    }
    println!("Iteration {}", record.iteration);
    let main = record.main_direction.expect("checked above");
    println!("  L = {{{}}}, l = {main}", join_labels(&record.improving));
    let mut snapshots = record.snapshots.iter();
    if let Some((_, initial)) = snapshots.next() {
        print!("{}", indent(&initial.to_string()));
    }
    if let Some(sie) = &record.sie {
        if let Some((_, extended)) = snapshots.next() {
            let row = extended.rows().last().expect("driving row present");
            let coefficients: Vec<String> = row[1..].iter().map(Scalar::render).collect();
            println!(
                "  SIE row {}: ({} | {})",
                sie.driving,
                row[0].render(),
                coefficients.join(" ")
            );
            print!("{}", indent(&extended.to_string()));
        }
        println!("  pivot ({}, {})", sie.driving, sie.main_direction);
        if let Some((_, after)) = snapshots.next() {
            print!("{}", indent(&after.to_string()));
        }
    }
    let edge = record.edge.unwrap_or(main);
    println!("  K = {{{}}}", join_labels(&record.resisting));
    if let Some(table) = &record.cosines {
        let max = table.entries.iter().map(|(_, c)| *c).fold(f64::NEG_INFINITY, f64::max);
        for (k, c) in &table.entries {
            let mark = if *c == max { "  <- max" } else { "" };
            println!("    cos[theta({k},{edge})] = {c:.3}{mark}");
        }
    }
    if let Some(&(leave, enter)) = record
        .pivots
        .last()
        .filter(|_| record.pivots.len() > usize::from(record.sie.is_some()))
    {
        println!("  pivot ({leave}, {enter})");
        if let Some((_, after)) = snapshots.next() {
            print!("{}", indent(&after.to_string()));
        }
    } else {
        println!("  no resisting constraint along {edge}: dual inconsistent");
    }
    if let Some(removed) = record.removed {
        println!("  delete row {removed}");
        if let Some((_, after)) = snapshots.next() {
            print!("{}", indent(&after.to_string()));
        }
    }
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Optimal | Status::DualFeasible => ExitCode::SUCCESS,
        Status::PrimalInfeasible | Status::DualInconsistent => ExitCode::from(2),
        Status::LimitExceeded => ExitCode::from(3),
    }
}

fn print_outcome<S: Scalar>(inst: &LpInstance, out: &SolveOutcome<S>) {
    println!("status: {}", out.status);
    if matches!(out.status, Status::Optimal | Status::DualFeasible) {
        println!("objective: {}", out.objective_value().render());
        let x: Vec<String> = out
            .final_dictionary
            .basic_solution(inst)
            .iter()
            .map(Scalar::render)
            .collect();
        println!("x: {}", x.join(" "));
    }
    if let Some(w) = out.witness {
        println!("witness: {w}");
    }
    if let Some(rule) = out.fallback {
        println!("fallback: {rule}");
    }
    println!("iterations: {}", out.iterations);
    println!("pivots: {}", out.pivots);
    println!("dual simplex pivots: {}", out.dual_simplex_pivots);
}

fn run_solve<S: Scalar>(
    inst: &LpInstance,
    rule: RuleId,
    eps: f64,
    limits: &Limits,
    dual_only: bool,
) -> Result<ExitCode, String> {
    let d: Dictionary<S> = Dictionary::from_instance_with_eps(inst, eps);
    let out = if dual_only {
        attain_dual_feasibility(&d, rule, limits)
    } else {
        solve_dictionary(&d, rule, limits)
    }
    .map_err(|e| e.to_string())?;
    if limits.trace {
        println!("Initial dictionary");
        print!("{}", indent(&d.to_string()));
        for record in &out.trace {
            print_record(record);
        }
        println!("Final dictionary");
        print!("{}", indent(&out.final_dictionary.to_string()));
    }
    print_outcome(inst, &out);
    Ok(exit_for(out.status))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Solve {
            input,
            rule,
            mode,
            eps,
            max_iters,
            trace,
            dual_only,
        } => {
            let inst = read_instance(&input)?;
            let limits = Limits {
                max_iterations: max_iters,
                trace,
            };
            match Mode::from(mode) {
                Mode::Float => run_solve::<f64>(&inst, rule.into(), eps, &limits, dual_only),
                Mode::Exact => run_solve::<Rational>(&inst, rule.into(), eps, &limits, dual_only),
            }
        }
        Command::Gen {
            rows,
            cols,
            count,
            seed,
            lo,
            hi,
            out,
        } => {
            let cfg = GenConfig {
                rows,
                cols,
                lo,
                hi,
                seed,
                count,
            };
            cfg.validate().map_err(|e| e.to_string())?;
            fs::create_dir_all(&out).map_err(|e| format!("{}: {e}", out.display()))?;
            for index in 0..count as u64 {
                let inst = random_instance(&cfg, index).map_err(|e| e.to_string())?;
                let path = out.join(format!("lp_{rows}x{cols}_s{seed}_{index:05}.lp"));
                fs::write(&path, serialize_instance(&inst)).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            eprintln!("wrote {count} instances to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            sizes,
            count,
            seed,
            rules,
            mode,
            eps,
            max_iters,
            format,
            output,
        } => {
            let cfg = BenchConfig {
                sizes: if sizes.is_empty() { TABLE_SIZES.to_vec() } else { sizes },
                count,
                seed,
                rules: if rules.is_empty() {
                    RuleId::ALL.to_vec()
                } else {
                    rules.into_iter().map(RuleId::from).collect()
                },
                mode: mode.into(),
                eps,
                max_iterations: max_iters,
                ..BenchConfig::default()
            };
            let report = run_benchmark(&cfg).map_err(|e| e.to_string())?;
            let format = match format {
                FormatArg::Markdown => ReportFormat::Markdown,
                FormatArg::Csv => ReportFormat::Csv,
            };
            let text = render_report(&report, format);
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { input } => {
            let inst = read_instance(&input)?;
            match oracle_solve(&inst).map_err(|e| e.to_string())? {
                OracleResult::Optimal { value, point } => {
                    println!("status: Optimal");
                    println!("objective: {}", format_rational(&value));
                    let x: Vec<String> = point.iter().map(format_rational).collect();
                    println!("x: {}", x.join(" "));
                    Ok(ExitCode::SUCCESS)
                }
                OracleResult::Infeasible => {
                    println!("status: Infeasible");
                    Ok(ExitCode::from(2))
                }
                OracleResult::Unbounded => {
                    println!("status: Unbounded");
                    Ok(ExitCode::from(2))
                }
            }
        }
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
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
