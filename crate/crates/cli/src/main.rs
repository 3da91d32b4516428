use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rgd_core::oracle::{cross_verify, VERIFY_GENUS_LIMIT};
use rgd_core::{count_all, count_genus, CountMode, ExploreConfig, Explorer, GapSet, Node};

/// Overrides the genus limit of `verify`.
const ORACLE_LIMIT_VAR: &str = "RGD_ORACLE_LIMIT";

/// Count and list numerical semigroups by genus.
///
/// The trivial semigroup (genus 0, n_0 = 1) is outside the tree and is not
/// counted; every command needs a genus of at least 1, and counting needs 2.
#[derive(Parser)]
#[command(name = "rgd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n_gamma, or n_1..n_gamma with --all.
    Count {
        gamma: usize,
        /// Report every genus up to gamma.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print every semigroup of genus exactly gamma, in exploration order.
    List {
        gamma: usize,
        #[arg(long, value_enum, default_value_t = ListFormat::Gaps)]
        format: ListFormat,
        /// Largest genus accepted.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Compare the explorer against the brute-force oracle.
    Verify { gamma: usize },
    /// Time count_gamma and report the median over several runs.
    Bench {
        gamma: usize,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    /// Gap set, e.g. {1,2,4}.
    Gaps,
    /// Bit chain with the conductor marker.
    Chain,
    /// Minimal generators, comma separated.
    Generators,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// One line of `count` or `bench` output.
struct OutputRecord {
    genus: usize,
    count: u64,
    elapsed: Option<Duration>,
    threads: usize,
}

impl OutputRecord {
    fn header(timed: bool) -> &'static str {
        if timed {
            "genus,count,elapsed,threads"
        } else {
            "genus,count"
        }
    }

    fn write(&self, out: &mut impl Write, format: Format) -> io::Result<()> {
        let sep = match format {
            Format::Text => " ",
            Format::Csv => ",",
        };
        write!(out, "{}{sep}{}", self.genus, self.count)?;
        if let Some(t) = self.elapsed {
            write!(out, "{sep}{:.6}{sep}{}", t.as_secs_f64(), self.threads)?;
        }
        writeln!(out)
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
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            drop(out);
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(2),
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Count { gamma, all, output } => count(gamma, all, &output, out),
        Command::List {
            gamma,
            format,
            limit,
        } => list(gamma, format, limit, out),
        Command::Verify { gamma } => verify(gamma, out),
        Command::Bench {
            gamma,
            repeat,
            output,
        } => bench(gamma, repeat, &output, out),
    }
}

fn count(gamma: usize, all: bool, output: &Output, out: &mut impl Write) -> Result<(), Failure> {
    let config = ExploreConfig::new(gamma).threads(output.threads);
    let records: Vec<OutputRecord> = if all {
        count_all(&config.mode(CountMode::AllGenera))?
            .iter()
            .map(|(genus, count)| OutputRecord {
                genus,
                count,
                elapsed: None,
                threads: output.threads,
            })
            .collect()
    } else {
        let count = count_genus(&config)?;
        vec![OutputRecord {
            genus: gamma,
            count,
            elapsed: None,
            threads: output.threads,
        }]
    };
    if records.iter().any(|r| r.count == 0) {
        return Err(Failure::Usage("exploration produced an empty level".into()));
    }
    if let Format::Csv = output.format {
        writeln!(out, "{}", OutputRecord::header(false))?;
    }
    for r in &records {
        r.write(out, output.format)?;
    }
    Ok(())
}

fn list(
    gamma: usize,
    format: ListFormat,
    limit: usize,
    out: &mut impl Write,
) -> Result<(), Failure> {
    if gamma == 0 {
        return Err(Failure::Usage("genus must be at least 1".into()));
    }
    if gamma > limit {
        return Err(Failure::Usage(format!(
            "genus {gamma} exceeds the listing limit {limit}"
        )));
    }
    let mut status = Ok(());
    let mut emit = |n: Node<'_>| {
        if n.g != gamma || status.is_err() {
            return;
        }
        let line = match format {
            ListFormat::Gaps => GapSet::new(n.gaps())
                .map(|g| g.to_string())
                .unwrap_or_default(),
            ListFormat::Chain => n.to_state().render_chain(true),
            ListFormat::Generators => join(&n.to_state().minimal_generators()),
        };
        status = writeln!(out, "{line}");
    };
    Explorer::new(gamma.max(2))?.explore(&mut emit);
    Ok(status?)
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn verify(gamma: usize, out: &mut impl Write) -> Result<(), Failure> {
    let limit = match std::env::var(ORACLE_LIMIT_VAR) {
        Ok(v) => v.parse().map_err(|_| {
            Failure::Usage(format!("{ORACLE_LIMIT_VAR} must be an integer, got {v:?}"))
        })?,
        Err(_) => VERIFY_GENUS_LIMIT,
    };
    if gamma < 2 {
        return Err(Failure::Usage("verification needs genus at least 2".into()));
    }
    if gamma > limit {
        return Err(Failure::Usage(format!(
            "genus {gamma} exceeds the oracle limit {limit} (set {ORACLE_LIMIT_VAR} to raise it)"
        )));
    }
    let report = cross_verify(gamma)?;
    writeln!(out, "{report}")?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn bench(
    gamma: usize,
    repeat: usize,
    output: &Output,
    out: &mut impl Write,
) -> Result<(), Failure> {
    if gamma < 4 {
        return Err(Failure::Usage("bench needs genus at least 4".into()));
    }
    if repeat == 0 {
        return Err(Failure::Usage("--repeat must be at least 1".into()));
    }
    let config = ExploreConfig::new(gamma).threads(output.threads);
    let mut times = Vec::with_capacity(repeat);
    let mut count = 0;
    for _ in 0..repeat {
        let start = Instant::now();
        count = count_genus(&config)?;
        times.push(start.elapsed());
    }
    times.sort();
    let record = OutputRecord {
        genus: gamma,
        count,
        elapsed: Some(times[times.len() / 2]),
        threads: output.threads,
    };
    if let Format::Csv = output.format {
        writeln!(out, "{}", OutputRecord::header(true))?;
    }
    record.write(out, output.format)?;
    Ok(())
}
