//! The `oakit` commands. Each returns a [`CommandOutcome`] holding the
//! exit class and the full report text; nothing is printed here.
//!
//! Reports start with `#REPORT v1`, followed by one `key value...` line
//! per fact. Search reports prefix their metadata with `# ` so that the
//! whole output is itself a valid array file.

use std::fmt::Write;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use oakit_core::bounds::*;
use oakit_core::certificates::{run_audit, variance_audit, AuditMethod};
use oakit_core::search::DEFAULT_CEILING;
use oakit_core::{
    BoundResult, BoundsError, CertificateError, DesignError, SearchError, SearchProblem, SearchResult, SearchStatus,
};

use crate::format::{self, FormatError};
use crate::parallel;

pub const REPORT_HEADER: &str = "#REPORT v1";

/// Environment variable overriding the search row ceiling.
pub const CEILING_VAR: &str = "OAKIT_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    Success,
    Failed,
    Usage,
    Budget,
}

impl ExitClass {
    pub fn code(self) -> u8 {
        match self {
            ExitClass::Success => 0,
            ExitClass::Failed => 1,
            ExitClass::Usage => 2,
            ExitClass::Budget => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub class: ExitClass,
    pub text: String,
}

impl CommandOutcome {
    pub fn code(&self) -> u8 {
        self.class.code()
    }

    /// Lines of the form `key value...`, with `key` as given.
    pub fn field(&self, key: &str) -> Option<&str> {
        self.text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        CommandOutcome { class: ExitClass::Usage, text: format!("error: {msg}\n") }
    }
}

#[derive(Debug, Parser)]
#[command(name = "oakit", version, about = "Orthogonal array verification, bounds, proof audits and search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the strength and row census of an array file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        strength: usize,
    },
    /// Check that a block file is a t-design and compare its block count
    /// with the lower bounds.
    VerifyDesign {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        strength: usize,
    },
    /// Evaluate existence bounds for the given parameters.
    Bounds(BoundsArgs),
    /// Run one proof audit on an array file.
    Audit {
        file: PathBuf,
        #[arg(long)]
        method: AuditMethod,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Exhaustively search for a strength-2 array.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub lambda: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    /// Block design parameters `v,k,lambda,b,t,s,m`.
    #[arg(long, value_delimiter = ',')]
    pub design: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub lambda: usize,
    /// Require a row repeated at least this many times.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Find the largest feasible repeated-row multiplicity.
    #[arg(long, conflicts_with = "m")]
    pub maximize: bool,
    /// Node budget for each search.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let class = if e.use_stderr() { ExitClass::Usage } else { ExitClass::Success };
            CommandOutcome { class, text: e.render().to_string() }
        }
    }
}

pub fn execute(command: Command) -> CommandOutcome {
    match command {
        Command::Verify { file, strength } => with_file(&file, |text| cmd_verify(text, strength)),
        Command::VerifyDesign { file, strength } => with_file(&file, |text| cmd_verify_design(text, strength)),
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Audit { file, method, m } => with_file(&file, |text| cmd_audit(text, method, m)),
        Command::Search(args) => match ceiling_from_env() {
            Ok(ceiling) => cmd_search(&args, ceiling),
            Err(msg) => CommandOutcome::usage(msg),
        },
    }
}

/// Reads `path` (`-` for stdin) and hands the text to `f`.
fn with_file(path: &Path, f: impl FnOnce(&str) -> CommandOutcome) -> CommandOutcome {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    match read {
        Ok(()) => f(&text),
        Err(e) => CommandOutcome::usage(format!("{}: {e}", path.display())),
    }
}

pub fn ceiling_from_env() -> Result<usize, String> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{CEILING_VAR} must be a positive integer (got `{v}`)")),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn bound_line(out: &mut String, b: &BoundResult) {
    let kind = match b.kind {
        BoundKind::Minimum => "MIN",
        BoundKind::Maximum => "MAX",
    };
    let observed = b.observed.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
    let _ = writeln!(out, "BOUND {} {kind} {} {} {observed} {}", b.name, b.value, b.integer_form, b.status());
}

fn header(command: &str) -> String {
    format!("{REPORT_HEADER}\ncommand {command}\n")
}

fn format_error(e: FormatError) -> CommandOutcome {
    match e {
        FormatError::Design(d) => design_failure(String::new(), &d),
        other => CommandOutcome::usage(other),
    }
}

/// Verification failures are exit 1; shape problems are format errors.
fn design_failure(mut out: String, e: &DesignError) -> CommandOutcome {
    let class = match e {
        DesignError::NotAnOA { columns, tuple, count, expected } => {
            let _ = writeln!(out, "result NOT-AN-OA");
            let _ = writeln!(out, "columns {}", join(columns));
            let _ = writeln!(out, "tuple {}", join(tuple));
            let _ = writeln!(out, "count {count} expected {expected}");
            ExitClass::Failed
        }
        DesignError::NotADesign { subset, count, expected } => {
            let _ = writeln!(out, "result NOT-A-DESIGN");
            let _ = writeln!(out, "points {}", join(subset));
            let _ = writeln!(out, "count {count} expected {expected}");
            ExitClass::Failed
        }
        DesignError::NonintegralIndex { .. } => {
            let _ = writeln!(out, "result NOT-AN-OA");
            ExitClass::Failed
        }
        _ => ExitClass::Usage,
    };
    let _ = writeln!(out, "error {e}");
    CommandOutcome { class, text: out }
}

pub fn cmd_verify(text: &str, t: usize) -> CommandOutcome {
    let a = match format::parse_oa(text) {
        Ok(a) => a,
        Err(e) => return format_error(e),
    };
    let (n, k, rows) = (a.n(), a.k(), a.num_rows());
    let mut out = header("verify");
    let _ = writeln!(out, "n {n}\nk {k}\nrows {rows}\nstrength {t}");
    let lambda = match a.strength_lambda(t) {
        Ok(l) => l,
        Err(e) => return design_failure(out, &e),
    };
    let census = a.row_multiplicities();
    let mut by_multiplicity = std::collections::BTreeMap::new();
    for &c in census.counts.values() {
        *by_multiplicity.entry(c).or_insert(0usize) += 1;
    }
    let census_text: Vec<String> = by_multiplicity.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    let m = census.max_multiplicity;
    let _ = writeln!(out, "lambda {lambda}");
    let _ = writeln!(out, "census {}", census_text.join(" "));
    let _ = writeln!(out, "max-multiplicity {m}");
    // Strength t implies strength 2 with index N / n^2.
    let lambda2 = rows / (n * n);
    let mut class = ExitClass::Success;
    if let Ok(b) = rr_min_lambda(k as u64, n as u64, m as u64) {
        let b = b.with_observed(lambda2 as u64);
        if b.satisfied() == Some(false) {
            class = ExitClass::Failed;
        }
        bound_line(&mut out, &b);
    }
    let _ = writeln!(out, "result {}", if class == ExitClass::Success { "OA" } else { "BOUND-VIOLATED" });
    CommandOutcome { class, text: out }
}

pub fn cmd_verify_design(text: &str, t: usize) -> CommandOutcome {
    let d = match format::parse_bibd(text) {
        Ok(d) => d,
        Err(e) => return format_error(e),
    };
    let mut out = header("verify-design");
    let (v, k, b) = (d.v(), d.block_size(), d.num_blocks());
    let _ = writeln!(out, "v {v}\nk {k}\nblocks {b}\nstrength {t}");
    let lambda = match d.verify_bibd(t) {
        Ok(l) => l,
        Err(e) => return design_failure(out, &e),
    };
    let m = d.max_block_multiplicity();
    let _ = writeln!(out, "lambda {lambda}\nmax-block-multiplicity {m}");
    let params = DesignParameters::new(v as u64, k as u64, lambda as u64, t as u64, b as u64, m as u64, None);
    let mut class = ExitClass::Success;
    if let Ok(p) = params {
        for bound in bibd_bounds(&p) {
            if bound.satisfied() == Some(false) {
                class = ExitClass::Failed;
            }
            bound_line(&mut out, &bound);
        }
    }
    let _ = writeln!(out, "result {}", if class == ExitClass::Success { "DESIGN" } else { "BOUND-VIOLATED" });
    CommandOutcome { class, text: out }
}

pub fn cmd_bounds(args: &BoundsArgs) -> CommandOutcome {
    match &args.design {
        Some(d) => {
            if args.t.is_some() || args.k.is_some() || args.n.is_some() || args.lambda.is_some() || args.m.is_some() {
                return CommandOutcome::usage("--design cannot be combined with array parameters");
            }
            design_bounds(d)
        }
        None => match (args.t, args.k, args.n) {
            (Some(t), Some(k), Some(n)) => array_bounds(t, k, n, args.lambda, args.m),
            _ => CommandOutcome::usage("need --t, --k and --n, or --design"),
        },
    }
}

fn design_bounds(d: &[u64]) -> CommandOutcome {
    let &[v, k, lambda, b, t, s, m] = d else {
        return CommandOutcome::usage("--design takes v,k,lambda,b,t,s,m");
    };
    let p = match DesignParameters::new(v, k, lambda, t, b, m, Some(s)) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(e),
    };
    let mut out = header("bounds");
    let _ = writeln!(out, "design v={v} k={k} lambda={lambda} b={b} t={t} s={s} m={m}");
    let mut class = ExitClass::Success;
    for bound in bibd_bounds(&p) {
        if bound.satisfied() == Some(false) {
            class = ExitClass::Failed;
        }
        bound_line(&mut out, &bound);
    }
    CommandOutcome { class, text: out }
}

fn array_bounds(t: u64, k: u64, n: u64, lambda: Option<u64>, m: Option<u64>) -> CommandOutcome {
    let mm = m.unwrap_or(1);
    let checked = match lambda {
        Some(l) => OAParameters::new(t, k, n, l, mm).map(|_| ()),
        None if t < 2 || t > k || n < 2 || mm < 1 => {
            Err(BoundsError::InvalidParameter(format!("need 2 <= t <= k, n >= 2, m >= 1 (t={t}, k={k}, n={n}, m={mm})")))
        }
        None => Ok(()),
    };
    if let Err(e) = checked {
        return CommandOutcome::usage(e);
    }
    let mut out = header("bounds");
    let _ = write!(out, "array t={t} k={k} n={n}");
    if let Some(l) = lambda {
        let _ = write!(out, " lambda={l}");
    }
    let _ = writeln!(out, " m={mm}");
    let rows = lambda.map(|l| l * n.pow(t as u32));
    let mut results: Vec<BoundResult> = Vec::new();
    let observe = |b: BoundResult, obs: Option<u64>| match obs {
        Some(o) => b.with_observed(o),
        None => b,
    };
    if t == 2 {
        let pb = pb_min_lambda(k, n).expect("validated");
        results.push(observe(pb, lambda));
        let rr = rr_min_lambda(k, n, mm).expect("validated");
        results.push(observe(rr, lambda));
        if let Some(l) = lambda {
            results.push(observe(max_multiplicity(k, n, l).expect("validated"), m));
            results.push(rr_max_columns(n, l, mm).expect("validated").with_observed(k));
            if let Ok((cl, w, mu)) = oa_to_cwc_params(k, n, l, mm) {
                if let Ok(j) = johnson_r(cl, w, mu) {
                    results.push(j.with_observed(k));
                }
            }
        }
    }
    results.push(observe(rao_min_rows(t, k, n).expect("validated"), rows));
    results.push(observe(mqw_min_rows(t, k, n, mm).expect("validated"), rows));
    let mut class = ExitClass::Success;
    for b in &results {
        if b.satisfied() == Some(false) {
            class = ExitClass::Failed;
        }
        bound_line(&mut out, b);
    }
    if let (2, Some(l)) = (t, lambda) {
        if let Ok(abar) = equality_abar(k, n, l, mm) {
            let _ = writeln!(out, "equality-abar {abar}");
        }
    }
    CommandOutcome { class, text: out }
}

pub fn cmd_audit(text: &str, method: AuditMethod, m: usize) -> CommandOutcome {
    let a = match format::parse_oa(text) {
        Ok(a) => a,
        Err(e) => return format_error(e),
    };
    let mut out = header("audit");
    let _ = writeln!(out, "method {}\nm {m}", method.name());
    let result = if method == AuditMethod::Variance {
        variance_audit(&a, m).map(|v| {
            let _ = writeln!(out, "abar {}\nssd {}\nequality-case {}", v.abar, v.ssd, v.equality_case);
            v.report
        })
    } else {
        run_audit(method, &a, m)
    };
    match result {
        Ok(report) => {
            let _ = write!(out, "{report}");
            let class = if report.all_pass() { ExitClass::Success } else { ExitClass::Failed };
            let _ = match report.first_failure() {
                None => writeln!(out, "result PASS"),
                Some(c) => writeln!(out, "result FAIL {}", c.id),
            };
            CommandOutcome { class, text: out }
        }
        Err(e) => {
            let id = match (&e, e.report().and_then(|r| r.first_failure())) {
                (_, Some(c)) => c.id.clone(),
                (CertificateError::Design(_), None) => "precondition".to_string(),
                _ => "unknown".to_string(),
            };
            if let Some(r) = e.report() {
                let _ = write!(out, "{r}");
            }
            let _ = writeln!(out, "result FAIL {id}\nerror {e}");
            CommandOutcome { class: ExitClass::Failed, text: out }
        }
    }
}

fn status_word(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::Found => "found",
        SearchStatus::ExhaustedNoSolution => "exhausted-no-solution",
        SearchStatus::BudgetExceeded => "budget-exceeded",
    }
}

fn search_error(e: SearchError) -> CommandOutcome {
    match e {
        SearchError::BudgetExceeded => CommandOutcome {
            class: ExitClass::Budget,
            text: format!("{REPORT_HEADER}\n# command search\n# status budget-exceeded\n"),
        },
        other => CommandOutcome::usage(other),
    }
}

pub fn cmd_search(args: &SearchArgs, ceiling: usize) -> CommandOutcome {
    let problem = SearchProblem::new(args.n, args.k, args.lambda).budget(args.budget).ceiling(ceiling);
    let mut out = format!("{REPORT_HEADER}\n# command search\n");
    let _ = writeln!(out, "# problem n={} k={} lambda={} rows={}", args.n, args.k, args.lambda, problem.rows());
    if args.maximize {
        let r = match parallel::max_multiplicity(&problem, args.workers) {
            Ok(r) => r,
            Err(e) => return search_error(e),
        };
        let _ = writeln!(out, "# bound-floor {}\n# max-multiplicity {}\n# nodes {}", r.bound_floor, r.max, r.nodes_explored);
        return match r.witness {
            Some(w) => {
                out.push_str(&format::write_oa(&w));
                CommandOutcome { class: ExitClass::Success, text: out }
            }
            None => CommandOutcome { class: ExitClass::Failed, text: out },
        };
    }
    let problem = problem.forced(args.m);
    let result: SearchResult = match parallel::search(&problem, args.workers) {
        Ok(r) => r,
        Err(e) => return search_error(e),
    };
    let _ = writeln!(out, "# forced-multiplicity {}", args.m);
    let _ = writeln!(out, "# status {}\n# nodes {}", status_word(result.status), result.nodes_explored);
    let class = match result.status {
        SearchStatus::Found => ExitClass::Success,
        SearchStatus::ExhaustedNoSolution => ExitClass::Failed,
        SearchStatus::BudgetExceeded => ExitClass::Budget,
    };
    if let Some(w) = &result.witness {
        let _ = writeln!(out, "# multiplicity {}", result.achieved_multiplicity);
        out.push_str(&format::write_oa(w));
    }
    CommandOutcome { class, text: out }
}
