//! Iteration-count comparison of the dual-feasibility rules on random LPs.
//!
//! Every rule sees the same instance sequence for a given `(seed, size)`.
//! Instances run in parallel, but results are reduced in index order so the
//! report text depends only on the configuration.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instances::{random_instance, GenConfig};
use crate::scalar::{Mode, Rational, Scalar, DEFAULT_EPS};
use crate::solver::{attain_dual_feasibility, Limits, RuleId, Status};
use crate::tableau::{Dictionary, LpInstance};

/// The sixteen `m×n` sizes of the reference comparison table.
pub const TABLE_SIZES: [(usize, usize); 16] = [
    (3, 3),
    (3, 5),
    (3, 7),
    (5, 5),
    (5, 10),
    (7, 5),
    (7, 10),
    (10, 5),
    (10, 10),
    (10, 20),
    (15, 15),
    (15, 20),
    (20, 20),
    (20, 30),
    (30, 30),
    (40, 40),
];

pub const RULE_ADAPTATION_NOTE: &str =
    "Dantzig (fixed target row, lexicographic ratio test), Bland and B-rule run as primal-feasibility rules on the negative transpose dictionary";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// `(m, n)`: constraints × variables.
    pub sizes: Vec<(usize, usize)>,
    pub count: usize,
    pub seed: u64,
    pub rules: Vec<RuleId>,
    pub mode: Mode,
    pub eps: f64,
    /// Per-rule iteration cap; `None` uses each rule's default.
    pub max_iterations: Option<usize>,
    pub lo: i64,
    pub hi: i64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: TABLE_SIZES.to_vec(),
            count: 500,
            seed: 0,
            rules: RuleId::ALL.to_vec(),
            mode: Mode::Float,
            eps: DEFAULT_EPS,
            max_iterations: None,
            lo: -50,
            hi: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleStats {
    pub size: (usize, usize),
    pub rule: RuleId,
    /// Iteration counts of the runs that reached dual feasibility, in instance order.
    pub samples: Vec<usize>,
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub cap_hits: usize,
    pub dual_inconsistent: usize,
    pub total_pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary {
    pub size: (usize, usize),
    pub instances: usize,
    pub initially_dual_feasible: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub seed: u64,
    pub count: usize,
    pub mode: Mode,
    pub eps: f64,
    pub rules: Vec<RuleId>,
    pub sizes: Vec<SizeSummary>,
    /// One entry per `(size, rule)`, sizes outermost.
    pub stats: Vec<RuleStats>,
}

impl BenchReport {
    pub fn get(&self, size: (usize, usize), rule: RuleId) -> Option<&RuleStats> {
        self.stats.iter().find(|s| s.size == size && s.rule == rule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Run {
    status: Status,
    iterations: usize,
    pivots: usize,
}

fn run_one<S: Scalar>(inst: &LpInstance, rule: RuleId, cfg: &BenchConfig) -> Result<Run> {
    let d: Dictionary<S> = Dictionary::from_instance_with_eps(inst, cfg.eps);
    let limits = Limits {
        max_iterations: cfg.max_iterations,
        trace: false,
    };
    let out = attain_dual_feasibility(&d, rule, &limits)?;
    Ok(Run {
        status: out.status,
        iterations: out.iterations,
        pivots: out.pivots,
    })
}

/// Arithmetic mean and sample standard deviation (`n − 1` denominator; 0 for one sample).
pub fn summarize(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::Empty);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() == 1 {
        return Ok((mean, 0.0));
    }
    let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.count == 0 {
        return Err(Error::InvalidInstance("benchmark count must be at least 1".into()));
    }
    if cfg.sizes.is_empty() {
        return Err(Error::InvalidInstance("benchmark needs at least one size".into()));
    }
    let mut report = BenchReport {
        seed: cfg.seed,
        count: cfg.count,
        mode: cfg.mode,
        eps: cfg.eps,
        rules: cfg.rules.clone(),
        sizes: Vec::new(),
        stats: Vec::new(),
    };
    for &(m, n) in &cfg.sizes {
        let gen = GenConfig {
            rows: m,
            cols: n,
            lo: cfg.lo,
            hi: cfg.hi,
            seed: cfg.seed,
            count: cfg.count,
        };
        gen.validate()?;
        let per_instance: Vec<(bool, Vec<Run>)> = (0..cfg.count as u64)
            .into_par_iter()
            .map(|index| -> Result<(bool, Vec<Run>)> {
                let inst = random_instance(&gen, index)?;
                let dual_feasible = inst.objective().iter().all(|c| *c <= Rational::from_integer(0.into()));
                let runs = cfg
                    .rules
                    .iter()
                    .map(|&rule| match cfg.mode {
                        Mode::Float => run_one::<f64>(&inst, rule, cfg),
                        Mode::Exact => run_one::<Rational>(&inst, rule, cfg),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((dual_feasible, runs))
            })
            .collect::<Result<Vec<_>>>()?;

        report.sizes.push(SizeSummary {
            size: (m, n),
            instances: cfg.count,
            initially_dual_feasible: per_instance.iter().filter(|(f, _)| *f).count(),
        });
        for (r, &rule) in cfg.rules.iter().enumerate() {
            let runs: Vec<Run> = per_instance.iter().map(|(_, runs)| runs[r]).collect();
            let samples: Vec<usize> = runs
                .iter()
                .filter(|run| run.status == Status::DualFeasible)
                .map(|run| run.iterations)
                .collect();
            let as_f64: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
            let (mean, stddev) = match summarize(&as_f64) {
                Ok((mean, sd)) => (Some(mean), Some(sd)),
                Err(_) => (None, None),
            };
            report.stats.push(RuleStats {
                size: (m, n),
                rule,
                mean,
                stddev,
                min: samples.iter().copied().min(),
                max: samples.iter().copied().max(),
                cap_hits: runs.iter().filter(|run| run.status == Status::LimitExceeded).count(),
                dual_inconsistent: runs.iter().filter(|run| run.status == Status::DualInconsistent).count(),
                total_pivots: runs.iter().map(|run| run.pivots).sum(),
                samples,
            });
        }
    }
    Ok(report)
}

fn size_label((m, n): (usize, usize)) -> String {
    format!("{m}x{n}")
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Markdown => render_markdown(report),
    }
}

fn render_csv(report: &BenchReport) -> String {
    let mut out = String::from("size,rule,count,mean,stddev,min,max,cap_hits,dual_inconsistent\n");
    for s in &report.stats {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            size_label(s.size),
            s.rule.name(),
            s.samples.len(),
            opt(s.mean.map(|v| format!("{v:.4}"))),
            opt(s.stddev.map(|v| format!("{v:.4}"))),
            opt(s.min),
            opt(s.max),
            s.cap_hits,
            s.dual_inconsistent
        );
    }
    out
}

fn render_markdown(report: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str("# Iterations to reach dual feasibility\n\n");
    let _ = writeln!(out, "- tool: {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "- seed: {}", report.seed);
    let _ = writeln!(out, "- instances per size: {}", report.count);
    let _ = writeln!(out, "- arithmetic: {} (eps {:e})", report.mode, report.eps);
    out.push_str("- size: m x n = constraints x variables\n");
    out.push_str(
        "- cell: mean (sample standard deviation, n-1) of iterations over runs that reached dual feasibility\n",
    );
    let _ = writeln!(out, "- comparators: {RULE_ADAPTATION_NOTE}");
    out.push('\n');

    out.push_str("| size |");
    for rule in &report.rules {
        let _ = write!(out, " {} |", rule.title());
    }
    out.push_str("\n|---|");
    for _ in &report.rules {
        out.push_str("---|");
    }
    out.push('\n');
    if report.rules.is_empty() {
        return out;
    }
    for size in &report.sizes {
        let _ = write!(out, "| {} |", size_label(size.size));
        for &rule in &report.rules {
            let cell = match report.get(size.size, rule) {
                Some(RuleStats {
                    mean: Some(mean),
                    stddev: Some(sd),
                    ..
                }) => format!("{mean:.2} ({sd:.2})"),
                _ => "-".to_string(),
            };
            let _ = write!(out, " {cell} |");
        }
        out.push('\n');
    }

    out.push_str("\nExcluded runs (cap hits / dual inconsistent):\n\n| size | start dual feasible |");
    for rule in &report.rules {
        let _ = write!(out, " {} |", rule.title());
    }
    out.push_str("\n|---|---|");
    for _ in &report.rules {
        out.push_str("---|");
    }
    out.push('\n');
    for size in &report.sizes {
        let _ = write!(
            out,
            "| {} | {}/{} |",
            size_label(size.size),
            size.initially_dual_feasible,
            size.instances
        );
        for &rule in &report.rules {
            if let Some(s) = report.get(size.size, rule) {
                let _ = write!(out, " {} / {} |", s.cap_hits, s.dual_inconsistent);
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summarize_small_samples() {
        assert_eq!(summarize(&[2.0, 2.0, 2.0]).unwrap(), (2.0, 0.0));
        assert_eq!(summarize(&[1.0, 2.0, 3.0]).unwrap(), (2.0, 1.0));
        assert_eq!(summarize(&[5.0]).unwrap(), (5.0, 0.0));
        assert_eq!(summarize(&[]), Err(Error::Empty));
    }

    #[test]
    fn summarize_fixed_fixture() {
        // 500 counts cycling through 0..=4; mean 2, variance 2·500/499.
        let samples: Vec<f64> = (0..500).map(|i| (i % 5) as f64).collect();
        let (mean, sd) = summarize(&samples).unwrap();
        assert!((mean - 2.0).abs() < 1e-12);
        assert!((sd - (1000.0f64 / 499.0).sqrt()).abs() < 1e-9);
    }

    fn tiny(rules: Vec<RuleId>) -> BenchConfig {
        BenchConfig {
            sizes: vec![(3, 3)],
            count: 1,
            seed: 7,
            rules,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn single_run_report() {
        let report = run_benchmark(&tiny(vec![RuleId::MinAngle])).unwrap();
        let stats = report.get((3, 3), RuleId::MinAngle).unwrap();
        let inst = random_instance(&GenConfig::new(3, 3, 7), 0).unwrap();
        let direct = attain_dual_feasibility(
            &Dictionary::<f64>::from_instance(&inst),
            RuleId::MinAngle,
            &Limits::default(),
        )
        .unwrap();
        if direct.status == Status::DualFeasible {
            assert_eq!(stats.samples, vec![direct.iterations]);
            assert_eq!(stats.mean, Some(direct.iterations as f64));
            assert_eq!(stats.stddev, Some(0.0));
        } else {
            assert!(stats.samples.is_empty());
        }
        let csv = render_report(&report, ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("size,rule,count,mean,stddev,min,max,cap_hits,dual_inconsistent\n3x3,minangle,"));
    }

    #[test]
    fn empty_rules_give_header_only() {
        let report = run_benchmark(&tiny(vec![])).unwrap();
        assert_eq!(render_report(&report, ReportFormat::Csv).lines().count(), 1);
        let md = render_report(&report, ReportFormat::Markdown);
        assert!(md.trim_end().ends_with("|---|"));
    }

    #[test]
    fn markdown_has_one_row_per_size() {
        let cfg = BenchConfig {
            sizes: TABLE_SIZES.to_vec(),
            count: 1,
            seed: 1,
            ..BenchConfig::default()
        };
        let report = run_benchmark(&cfg).unwrap();
        let md = render_report(&report, ReportFormat::Markdown);
        let table: Vec<&str> = md
            .lines()
            .skip_while(|l| !l.starts_with("| size | B-rule"))
            .take_while(|l| l.starts_with('|'))
            .collect();
        assert_eq!(table.len(), 2 + 16);
        assert!(table.iter().skip(2).all(|row| row.matches('|').count() == 6));
    }

    #[test]
    fn paired_and_deterministic() {
        let cfg = BenchConfig {
            sizes: vec![(4, 4)],
            count: 20,
            seed: 3,
            ..BenchConfig::default()
        };
        let a = run_benchmark(&cfg).unwrap();
        let b = run_benchmark(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            render_report(&a, ReportFormat::Markdown),
            render_report(&b, ReportFormat::Markdown)
        );
        // every rule sees the same instances, so dual-inconsistency counts agree
        let counts: Vec<usize> = a
            .stats
            .iter()
            .map(|s| s.dual_inconsistent + s.cap_hits + s.samples.len())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
    }

    #[test]
    fn rejects_empty_config() {
        assert!(run_benchmark(&BenchConfig {
            count: 0,
            ..tiny(vec![RuleId::Bland])
        })
        .is_err());
        assert!(run_benchmark(&BenchConfig {
            sizes: vec![],
            ..tiny(vec![RuleId::Bland])
        })
        .is_err());
    }
}
