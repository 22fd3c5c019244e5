//! `confsched`: rank conference series by harvesting urgency, replay a
//! past year against pseudo-relevance judgments, inspect series
//! profiles, batch-test title extraction, and generate synthetic
//! corpora.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 on internal invariant
//! violations.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use confsched_core::calendar::CalendarDate;
use confsched_core::error::{IngestError, StatsError};
use confsched_core::evaluation::{Gain, evaluate_year};
use confsched_core::formats::{write_qrels, write_report, write_run};
use confsched_core::ingest::{self, IngestPaths, default_rating_class_map};
use confsched_core::scoring::{Factor, rank_table, score_table};
use confsched_core::synth::{self, SynthConfig};
use confsched_core::title::{self, Gazetteer};

#[derive(Parser)]
#[command(
    name = "confsched",
    version,
    about = "Rank conference series by harvesting urgency"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write ranked priority lists for a reference month
    Rank(RankArgs),
    /// Replay one year month by month and score every ranking
    Evaluate(EvaluateArgs),
    /// Dump per-series profiles and factor weights
    Profile(ProfileArgs),
    /// Batch-run date and venue extraction over titles
    ParseTitles(ParseTitlesArgs),
    /// Generate a deterministic synthetic corpus
    Generate(GenerateArgs),
}

/// Corpus input files shared by the corpus-consuming subcommands.
#[derive(Args)]
struct InputArgs {
    /// Events file (JSONL), required
    #[arg(long)]
    events: PathBuf,
    /// Publication records for author counts (JSONL)
    #[arg(long)]
    papers: Option<PathBuf>,
    /// Rating rows `conf_key,list_id,class` (CSV)
    #[arg(long)]
    ratings: Option<PathBuf>,
    /// Per-event yearly citation counts (JSONL)
    #[arg(long)]
    citations: Option<PathBuf>,
    /// Venue gazetteer (TSV)
    #[arg(long)]
    gazetteer: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Reference month, YYYY-MM
    #[arg(long, value_parser = parse_date)]
    now: CalendarDate,
    /// Factor name or `all`
    #[arg(long, default_value = "all")]
    factor: String,
    /// Output directory for run files
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Evaluation year to replay
    #[arg(long)]
    year: i32,
    /// Factor name or `all`
    #[arg(long, default_value = "all")]
    factor: String,
    /// Cutoff depths, strictly increasing
    #[arg(long, value_delimiter = ',', default_value = "10,20,50,100,200")]
    cutoffs: Vec<usize>,
    /// Output directory for qrels, run files, and the report
    #[arg(long)]
    out: PathBuf,
    /// Score with linear instead of exponential gain
    #[arg(long)]
    linear_gain: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Reference month, YYYY-MM
    #[arg(long, value_parser = parse_date)]
    now: CalendarDate,
    /// Restrict the dump to one series
    #[arg(long)]
    conf: Option<String>,
}

#[derive(Args)]
struct ParseTitlesArgs {
    /// Venue gazetteer (TSV); without it only dates are extracted
    #[arg(long)]
    gazetteer: Option<PathBuf>,
    /// Titles, one per line; stdin when absent
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Output directory for the generated files
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of conference series
    #[arg(long, default_value_t = 20)]
    conferences: usize,
    /// Event year range, START-END inclusive
    #[arg(long, default_value = "2000-2016")]
    years: String,
    /// Share of series running every second year
    #[arg(long, default_value_t = 0.2)]
    biennial: f64,
    /// Share of series that stop well before the range end
    #[arg(long, default_value_t = 0.15)]
    discontinued: f64,
    /// Share of series with rating-list appearances
    #[arg(long, default_value_t = 0.5)]
    rated: f64,
    /// Share of series with citation counts
    #[arg(long, default_value_t = 0.7)]
    cited: f64,
    /// Share of series rotating venues across countries
    #[arg(long, default_value_t = 0.5)]
    international: f64,
}

fn parse_date(s: &str) -> Result<CalendarDate, String> {
    s.parse().map_err(|e| format!("{e}"))
}

enum CliError {
    Input(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version land here
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Rank(args) => cmd_rank(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Profile(args) => cmd_profile(args),
        Command::ParseTitles(args) => cmd_parse_titles(args),
        Command::Generate(args) => cmd_generate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Input(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e @ CliError::Internal(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_corpus(input: &InputArgs) -> Result<confsched_core::Corpus, CliError> {
    let paths = IngestPaths {
        events: input.events.clone(),
        papers: input.papers.clone(),
        ratings: input.ratings.clone(),
        citations: input.citations.clone(),
        gazetteer: input.gazetteer.clone(),
    };
    let outcome = ingest::load_corpus(&paths, &default_rating_class_map())?;
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(outcome.corpus)
}

fn parse_factors(spec: &str) -> Result<Vec<Factor>, CliError> {
    if spec == "all" {
        return Ok(Factor::ALL.to_vec());
    }
    spec.split(',')
        .map(|name| name.trim().parse::<Factor>().map_err(CliError::Input))
        .collect()
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), CliError> {
    let mut out = BufWriter::new(File::create(path)?);
    write(&mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_rank(args: RankArgs) -> Result<(), CliError> {
    let factors = parse_factors(&args.factor)?;
    let corpus = load_corpus(&args.input)?;
    std::fs::create_dir_all(&args.out)?;
    let table = score_table(&corpus, args.now);
    for factor in factors {
        let run = rank_table(&table, args.now, factor);
        let path = args.out.join(format!("{}.{factor}.run", args.now));
        write_file(&path, |out| write_run(out, &run))?;
        println!("{} entries -> {}", run.entries.len(), path.display());
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let factors = parse_factors(&args.factor)?;
    if !args.cutoffs.windows(2).all(|w| w[0] < w[1]) || args.cutoffs.is_empty() {
        return Err(CliError::Input(format!(
            "cutoffs must be non-empty and strictly increasing, got {:?}",
            args.cutoffs
        )));
    }
    let gain = if args.linear_gain {
        Gain::Linear
    } else {
        Gain::Exponential
    };
    let corpus = load_corpus(&args.input)?;
    let result = evaluate_year(&corpus, args.year, &factors, &args.cutoffs, gain)?;
    std::fs::create_dir_all(&args.out)?;

    let qrels_path = args.out.join(format!("{}.qrels", args.year));
    write_file(&qrels_path, |out| {
        result
            .months
            .iter()
            .try_for_each(|m| write_qrels(out, &m.qrels))
    })?;
    println!("qrels -> {}", qrels_path.display());

    for (fi, factor) in factors.iter().enumerate() {
        let run_path = args.out.join(format!("{}.{factor}.run", args.year));
        write_file(&run_path, |out| {
            result
                .months
                .iter()
                .try_for_each(|m| write_run(out, &m.runs[fi]))
        })?;
        println!("runs  -> {}", run_path.display());
    }

    let report_path = args.out.join(format!("{}.report.csv", args.year));
    write_file(&report_path, |out| write_report(out, &result))?;
    println!("report -> {}", report_path.display());

    for report in &result.reports {
        for (&k, &avg) in &report.yearly_average {
            println!(
                "{} ndcg@{k}: {avg:.4} (p vs baseline {:.4})",
                report.factor, report.p_value_vs_baseline[&k]
            );
        }
    }
    Ok(())
}

fn cmd_profile(args: ProfileArgs) -> Result<(), CliError> {
    let corpus = load_corpus(&args.input)?;
    let table = score_table(&corpus, args.now);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "conf_key\tdelta_year\tmode_month\tdelta_month\tlast_entry\tdelta\tw_delay\tw_rating\tw_internationality\tw_discontinued\tw_citation\tw_prominence"
    )?;
    let mut shown = 0usize;
    for scores in &table {
        if let Some(only) = &args.conf
            && scores.conf_key.0 != *only
        {
            continue;
        }
        let p = &scores.profile;
        let w = &scores.weights;
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:.3}",
            scores.conf_key,
            p.delta_year,
            p.mode_month,
            p.delta_month,
            p.last_entry_date,
            w.delta,
            w.delay,
            w.rating,
            w.internationality,
            w.discontinued,
            w.citation,
            w.prominence,
        )?;
        shown += 1;
    }
    if let Some(only) = &args.conf
        && shown == 0
    {
        return Err(CliError::Input(format!(
            "conference {only:?} is not rankable at {} or does not exist",
            args.now
        )));
    }
    Ok(())
}

fn cmd_parse_titles(args: ParseTitlesArgs) -> Result<(), CliError> {
    let gazetteer = match &args.gazetteer {
        Some(path) => Some(Gazetteer::from_path(path)?),
        None => None,
    };
    let mut text = String::new();
    match &args.input {
        Some(path) => {
            File::open(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                .read_to_string(&mut text)?;
        }
        None => {
            io::stdin().lock().read_to_string(&mut text)?;
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for line in text.lines() {
        let title = line.trim();
        if title.is_empty() {
            continue;
        }
        let date = title::parse_event_date(title)
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-".to_string());
        let country = gazetteer
            .as_ref()
            .and_then(|g| g.parse_country(title))
            .unwrap_or_else(|| "-".to_string());
        writeln!(out, "{date}\t{country}\t{title}")?;
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let (start, end) = args
        .years
        .split_once('-')
        .ok_or_else(|| CliError::Input(format!("years must be START-END, got {:?}", args.years)))?;
    let start_year: i32 = start
        .parse()
        .map_err(|_| CliError::Input(format!("bad start year {start:?}")))?;
    let end_year: i32 = end
        .parse()
        .map_err(|_| CliError::Input(format!("bad end year {end:?}")))?;
    if start_year > end_year {
        return Err(CliError::Input(format!(
            "empty year range {start_year}-{end_year}"
        )));
    }
    for (name, value) in [
        ("biennial", args.biennial),
        ("discontinued", args.discontinued),
        ("rated", args.rated),
        ("cited", args.cited),
        ("international", args.international),
    ] {
        if !(0.0..=1.0).contains(&value) {
            return Err(CliError::Input(format!(
                "--{name} must lie in [0, 1], got {value}"
            )));
        }
    }
    if args.conferences == 0 {
        return Err(CliError::Input(
            "--conferences must be at least 1".to_string(),
        ));
    }
    let config = SynthConfig {
        n_conferences: args.conferences,
        start_year,
        end_year,
        biennial_fraction: args.biennial,
        discontinued_fraction: args.discontinued,
        rated_fraction: args.rated,
        cited_fraction: args.cited,
        international_fraction: args.international,
    };
    let corpus = synth::generate(args.seed, &config);
    let files = corpus.write_to_dir(&args.out)?;
    for path in [files.events, files.papers, files.ratings, files.citations] {
        println!("wrote {}", path.display());
    }
    Ok(())
}
