//! Command implementations behind the `heapworst` binary.
//!
//! [`run`] executes one command and returns the process exit code. Success
//! is `0`. A failed verification or an I/O error gives `1`, and a usage
//! error gives `2`. Output goes to the writer passed in or, for commands
//! that produce files, to `--out` when given.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formulas;
use crate::game::{build, play, strategy_par, strategy_win, PullSchedule};
use crate::heap::{heapsort_phases, removeall_in_place, Heap};
use crate::hereditary::enumerate_hereditary;
use crate::inverse::gen_makeheap_worst;
use crate::oracle::{self, Phase};

/// One row of a verification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Heap size.
    #[serde(rename = "N")]
    pub n: usize,
    /// MakeHeap comparisons measured on the generated array.
    pub makeheap_measured: u64,
    /// `makeheap_max(N)`.
    pub makeheap_formula: i64,
    /// RemoveAll comparisons measured on the heap MakeHeap produced.
    pub removeall_measured: u64,
    /// `removeall_max(N)`.
    pub removeall_formula: i64,
    /// Sum of the two measured phases.
    pub total_measured: u64,
    /// `heapsort_max(N)`.
    pub total_formula: i64,
    /// All three measured counts equal their formulas.
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Generates the worst-case array for `n ≥ 2`, sorts it while counting, and
/// compares both phases with the closed forms.
pub fn sweep_row(n: usize) -> crate::Result<SweepRow> {
    let array = worst_case_array(n)?;
    let (_, phases) = heapsort_phases(&array)?;
    let makeheap_formula = formulas::makeheap_max(n);
    let removeall_formula = formulas::removeall_max(n);
    let total_formula = formulas::heapsort_max(n);
    let eq = |measured: u64, formula: i64| i64::try_from(measured).ok() == Some(formula);
    Ok(SweepRow {
        n,
        makeheap_measured: phases.makeheap,
        makeheap_formula,
        removeall_measured: phases.removeall,
        removeall_formula,
        total_measured: phases.total(),
        total_formula,
        matches: eq(phases.makeheap, makeheap_formula)
            && eq(phases.removeall, removeall_formula)
            && eq(phases.total(), total_formula),
    })
}

/// [`sweep_row`] for every `N` in `from..=to`, computed in parallel and
/// returned in ascending `N`.
pub fn sweep(from: usize, to: usize) -> crate::Result<Vec<SweepRow>> {
    (from..=to).into_par_iter().map(sweep_row).collect()
}

/// The heap built by `win(N)`: a worst-case heap for RemoveAll.
pub fn worst_case_heap(n: usize) -> crate::Result<Heap> {
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    build(&strategy_win(n).pulls)
}

/// An input array on which both Heapsort phases reach their maxima.
pub fn worst_case_array(n: usize) -> crate::Result<Vec<usize>> {
    Ok(gen_makeheap_worst(&worst_case_heap(n)?))
}

/// Top-level arguments.
#[derive(Debug, Parser)]
#[command(
    name = "heapworst",
    version,
    about = "Worst-case Heapsort inputs and exact comparison counts"
)]
pub struct Cli {
    /// Command to run.
    #[command(subcommand)]
    pub command: Command,
    /// Write the primary output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for values and reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Number of worker threads for parallel work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated values on one line, or `key: value` lines for reports.
    Text,
    /// JSON.
    Json,
}

/// What `gen` writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// The worst-case heap for RemoveAll.
    Heap,
    /// The worst-case Heapsort input array.
    Array,
}

/// Strategies available to `trace`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceStrategy {
    /// Level-by-level pulls of 1 and 2.
    Par,
    /// The optimal strategy for the requested size.
    Win,
}

/// Brute-force checks available to `oracle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleTarget {
    /// Maximum over all permutations, both for MakeHeap and for Heapsort.
    Perm,
    /// Maximum RemoveAll count over all heaps.
    Heap,
    /// The set of worst-case heaps for RemoveAll.
    Worstset,
    /// No worst-case heap on `2^k − 4` nodes admits a lossless pull down.
    Singularity,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a worst-case heap or Heapsort input of size N.
    Gen {
        /// Heap or array.
        #[arg(value_enum)]
        kind: GenKind,
        /// Size, at least 2.
        n: usize,
    },
    /// Compare measured worst-case counts with the closed forms for a range of sizes (CSV).
    Verify {
        /// First size, at least 2.
        from: usize,
        /// Last size, at least `from`.
        to: usize,
    },
    /// Print every heap of a game level by level, then the pulls and move indices.
    Trace {
        /// Final size, at least 2.
        n: usize,
        /// Strategy to play.
        #[arg(value_enum)]
        strategy: TraceStrategy,
    },
    /// Run an exhaustive check at a small size.
    Oracle {
        /// Size.
        n: usize,
        /// Which check.
        #[arg(value_enum)]
        target: OracleTarget,
    },
    /// Enumerate hereditary worst-case heaps (JSON).
    Census,
}

/// Failure of a command, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
    Mismatch(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command given by `args` (program name first) and returns the
/// exit code. Messages for the user go to `stdout` and `stderr`.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, stdout)),
            Err(e) => Err(Failure::Io(io::Error::other(e))),
        },
        None => dispatch(&cli, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut (dyn Write + Send)) -> Outcome {
    match cli.command {
        Command::Gen { kind, n } => cmd_gen(kind, n, cli, stdout),
        Command::Verify { from, to } => cmd_verify(from, to, cli, stdout),
        Command::Trace { n, strategy } => cmd_trace(n, strategy, cli, stdout),
        Command::Oracle { n, target } => cmd_oracle(n, target, cli, stdout),
        Command::Census => cmd_census(cli, stdout),
    }
}

/// Runs `body` against the `--out` file when given, else against `stdout`.
fn with_output(
    out: Option<&Path>,
    stdout: &mut (dyn Write + Send),
    body: impl FnOnce(&mut dyn Write) -> Outcome,
) -> Outcome {
    match out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            body(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

/// JSON payload written by `gen`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Values {
    /// Number of values.
    pub n: usize,
    /// The values in index order `1..=n`.
    pub values: Vec<usize>,
}

/// Renders values in the text format: comma-separated on one line.
pub fn values_to_text(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    parts.join(",")
}

/// Parses the text format written by `gen`.
pub fn values_from_text(text: &str) -> std::result::Result<Vec<usize>, std::num::ParseIntError> {
    text.trim().split(',').map(|s| s.trim().parse()).collect()
}

fn require_size(n: usize) -> Outcome {
    if n < 2 {
        return Err(Failure::Usage(format!("size must be at least 2, got {n}")));
    }
    Ok(())
}

fn cmd_gen(kind: GenKind, n: usize, cli: &Cli, stdout: &mut (dyn Write + Send)) -> Outcome {
    require_size(n)?;
    let values = match kind {
        GenKind::Heap => worst_case_heap(n)?.into_vec(),
        GenKind::Array => worst_case_array(n)?,
    };
    with_output(cli.out.as_deref(), stdout, |w| {
        match cli.format {
            Format::Text => writeln!(w, "{}", values_to_text(&values))?,
            Format::Json => {
                serde_json::to_writer(&mut *w, &Values { n, values })?;
                writeln!(w)?;
            }
        }
        Ok(())
    })
}

fn cmd_verify(from: usize, to: usize, cli: &Cli, stdout: &mut (dyn Write + Send)) -> Outcome {
    if from < 2 || from > to {
        return Err(Failure::Usage(format!(
            "range must satisfy 2 <= from <= to, got {from}..{to}"
        )));
    }
    let rows = sweep(from, to)?;
    with_output(cli.out.as_deref(), stdout, |w| {
        let mut csv = csv::Writer::from_writer(w);
        for row in &rows {
            csv.serialize(row)?;
        }
        csv.flush()?;
        Ok(())
    })?;
    match rows.iter().find(|r| !r.matches) {
        Some(row) => Err(Failure::Mismatch(format!("mismatch at N = {}", row.n))),
        None => Ok(()),
    }
}

/// Renders a heap one tree level per line as `Level k: v v ...`.
pub fn render_levels(values: &[usize]) -> Vec<String> {
    let mut lines = Vec::new();
    let mut start = 1;
    let mut level = 0;
    while start <= values.len() {
        let end = (2 * start - 1).min(values.len());
        let row: Vec<String> = values[start - 1..end]
            .iter()
            .map(usize::to_string)
            .collect();
        lines.push(format!("Level {level}: {}", row.join(" ")));
        start *= 2;
        level += 1;
    }
    lines
}

fn list(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("<{}>", parts.join(", "))
}

fn cmd_trace(
    n: usize,
    strategy: TraceStrategy,
    cli: &Cli,
    stdout: &mut (dyn Write + Send),
) -> Outcome {
    require_size(n)?;
    let schedule: PullSchedule = match strategy {
        TraceStrategy::Par => strategy_par(n),
        TraceStrategy::Win => strategy_win(n),
    };
    let log = play(&Heap::singleton(), &schedule.pulls)?;
    with_output(cli.out.as_deref(), stdout, |w| {
        let mut game = Heap::singleton();
        for line in render_levels(game.as_slice()) {
            writeln!(w, "{line}")?;
        }
        for record in &log.records {
            game = crate::inverse::unremovemax(&game, record.move_index)?;
            writeln!(w)?;
            writeln!(
                w,
                "H[{}] -> H[{}]",
                record.move_index,
                record.size_before + 1
            )?;
            writeln!(w)?;
            for line in render_levels(game.as_slice()) {
                writeln!(w, "{line}")?;
            }
        }
        writeln!(w)?;
        writeln!(
            w,
            "pulls of {} ({}): {}",
            schedule.strategy,
            log.records.len(),
            list(&log.pulls())
        )?;
        writeln!(
            w,
            "moves of {} ({}): {}",
            schedule.strategy,
            log.records.len(),
            list(&log.move_indices())
        )?;
        Ok(())
    })
}

/// Summary printed by `oracle worstset`.
#[derive(Debug, Serialize)]
struct WorstSetReport {
    n: usize,
    heaps: usize,
    formula_value: i64,
    agrees: bool,
}

fn cmd_oracle(
    n: usize,
    target: OracleTarget,
    cli: &Cli,
    stdout: &mut (dyn Write + Send),
) -> Outcome {
    let (rendered, agrees) = match target {
        OracleTarget::Perm => {
            let reports = [
                oracle::perm_worst(n, Phase::MakeHeap)?,
                oracle::perm_worst(n, Phase::Heapsort)?,
            ];
            let agrees = reports.iter().all(|r| r.agrees);
            (render(cli.format, &reports)?, agrees)
        }
        OracleTarget::Heap => {
            let report = oracle::heap_worst_removeall(n)?;
            let agrees = report.agrees;
            (render(cli.format, &report)?, agrees)
        }
        OracleTarget::Worstset => {
            let heaps = oracle::enumerate_worstcase_heaps(n)?;
            let formula_value = if n >= 2 {
                formulas::removeall_max(n)
            } else {
                0
            };
            let agrees = !heaps.is_empty()
                && heaps.iter().all(|h| {
                    let mut work = h.as_slice().to_vec();
                    i64::try_from(removeall_in_place(&mut work)).ok() == Some(formula_value)
                });
            let report = WorstSetReport {
                n,
                heaps: heaps.len(),
                formula_value,
                agrees,
            };
            (render(cli.format, &report)?, agrees)
        }
        OracleTarget::Singularity => {
            let report = oracle::singularity_check(n)?;
            let holds = report.holds;
            (render(cli.format, &report)?, holds)
        }
    };
    with_output(cli.out.as_deref(), stdout, |w| {
        w.write_all(rendered.as_bytes())?;
        Ok(())
    })?;
    if agrees {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("oracle disagrees at N = {n}")))
    }
}

/// Renders a report as pretty JSON or as `key: value` lines.
fn render<T: Serialize>(format: Format, report: &T) -> std::result::Result<String, Failure> {
    let value = serde_json::to_value(report)?;
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value)?),
        Format::Text => {
            let mut text = String::new();
            text_lines(&value, &mut text);
            text
        }
    })
}

fn text_lines(value: &serde_json::Value, text: &mut String) {
    match value {
        serde_json::Value::Array(items) => {
            for (idx, item) in items.iter().enumerate() {
                if idx > 0 {
                    text.push('\n');
                }
                text_lines(item, text);
            }
        }
        serde_json::Value::Object(fields) => {
            for (key, field) in fields {
                let shown = match field {
                    serde_json::Value::Array(xs) => xs
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    other => other.to_string(),
                };
                text.push_str(&format!("{key}: {shown}\n"));
            }
        }
        other => text.push_str(&format!("{other}\n")),
    }
}

fn cmd_census(cli: &Cli, stdout: &mut (dyn Write + Send)) -> Outcome {
    let census = enumerate_hereditary();
    with_output(cli.out.as_deref(), stdout, |w| {
        match cli.format {
            Format::Json => {
                serde_json::to_writer(&mut *w, &census)?;
                writeln!(w)?;
            }
            Format::Text => {
                writeln!(w, "total: {}", census.count)?;
                writeln!(w, "max_size: {}", census.max_size)?;
                for (size, count) in &census.per_size_counts {
                    writeln!(w, "size {size}: {count}")?;
                }
            }
        }
        Ok(())
    })
}
