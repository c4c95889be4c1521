//! Command implementations for the `rledict` binary.
//!
//! Exit codes: 0 success, 1 matcher/oracle mismatch from `check`, 2 parse or
//! input errors, 3 expansion-limit refusals.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use rle_dict::matcher::{build_dictionary, Occurrence, OccurrenceSink};
use rle_dict::oracle::{self, naive_search, GenConfig};
use rle_dict::rle::{PatternId, PatternSet, RleString};

use format::{format_raw_line, format_rle_line, parse_raw_line, parse_rle_line};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input or a malformed line; exit 2.
    Parse(String),
    /// Decoding or oracle expansion beyond the configured limit; exit 3.
    Limit(String),
    /// `check` found a difference between matcher and oracle; exit 1.
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch => 1,
            CliError::Parse(_) => 2,
            CliError::Limit(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Limit(m) => m.clone(),
            CliError::Mismatch => "matcher and oracle disagree".to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "rledict", version, about = "Dictionary matching on run-length encoded strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// The compressed matcher index.
    Index,
    /// The brute-force reference (decompresses the instance).
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run-length encode literal lines into SYM:LEN tokens.
    Encode { file: PathBuf },
    /// Decode SYM:LEN lines back into literal text.
    Decode {
        file: PathBuf,
        /// Refuse lines that decode to more than this many characters.
        #[arg(long, default_value_t = oracle::EXPANSION_LIMIT)]
        limit: u64,
    },
    /// Report all occurrences of the patterns in the text.
    Match {
        /// Pattern file, one pattern per line.
        #[arg(long)]
        patterns: PathBuf,
        /// Text file holding a single line.
        #[arg(long)]
        text: PathBuf,
        /// Treat input lines as literal strings instead of SYM:LEN tokens.
        #[arg(long)]
        raw: bool,
        /// Sort output by (start, id) instead of discovery order.
        #[arg(long)]
        sort: bool,
        /// Emit ID<TAB>START<TAB>COUNT records for single-run progressions.
        #[arg(long)]
        ranges: bool,
        /// Print search counters to standard error.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value_t = Mode::Index)]
        mode: Mode,
        /// Expansion limit for the oracle mode.
        #[arg(long, default_value_t = oracle::EXPANSION_LIMIT)]
        limit: u64,
    },
    /// Generate a reproducible random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        alphabet: u32,
        #[arg(long, default_value_t = 10)]
        max_patterns: usize,
        #[arg(long, default_value_t = 6)]
        max_pattern_runs: usize,
        #[arg(long, default_value_t = 40)]
        max_text_runs: usize,
        #[arg(long, default_value_t = 6)]
        max_pattern_run_len: u64,
        #[arg(long, default_value_t = 8)]
        max_text_run_len: u64,
        #[arg(long)]
        patterns_out: PathBuf,
        #[arg(long)]
        text_out: PathBuf,
    },
    /// Run matcher and oracle on the same instance and compare.
    Check {
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long)]
        text: PathBuf,
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = oracle::EXPANSION_LIMIT)]
        limit: u64,
        /// Test hook: corrupt the matcher output to exercise the mismatch path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    let data = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(data.lines().map(str::to_string).collect())
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

fn parse_line(text: &str, raw: bool, file: &str, line: usize) -> Result<RleString, CliError> {
    if raw {
        Ok(parse_raw_line(text))
    } else {
        parse_rle_line(text, file, line).map_err(|e| CliError::Parse(e.to_string()))
    }
}

fn load_patterns(path: &Path, raw: bool) -> Result<PatternSet, CliError> {
    let file = label(path);
    let mut sources = Vec::new();
    for (idx, text) in read_lines(path)?.iter().enumerate() {
        let s = parse_line(text, raw, &file, idx + 1)?;
        if s.is_empty() {
            return Err(CliError::Parse(format!("{file}:{}: empty pattern", idx + 1)));
        }
        sources.push(s);
    }
    PatternSet::new(sources).map_err(|e| CliError::Parse(format!("{file}: {e}")))
}

fn load_text(path: &Path, raw: bool) -> Result<RleString, CliError> {
    let file = label(path);
    let lines = read_lines(path)?;
    for (idx, extra) in lines.iter().enumerate().skip(1) {
        if !extra.trim().is_empty() {
            return Err(CliError::Parse(format!(
                "{file}:{}: text file must contain a single line",
                idx + 1
            )));
        }
    }
    match lines.first() {
        Some(text) => parse_line(text, raw, &file, 1),
        None => Ok(RleString::empty()),
    }
}

pub fn cmd_encode(file: &Path) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    for text in read_lines(file)? {
        let line = format_rle_line(&parse_raw_line(&text));
        writeln!(out, "{line}").map_err(|e| CliError::Parse(e.to_string()))?;
    }
    Ok(())
}

pub fn cmd_decode(file: &Path, limit: u64) -> Result<(), CliError> {
    let name = label(file);
    let mut out = std::io::stdout().lock();
    for (idx, text) in read_lines(file)?.iter().enumerate() {
        let s = parse_rle_line(text, &name, idx + 1)
            .map_err(|e| CliError::Parse(e.to_string()))?;
        let symbols = s
            .decode(limit)
            .map_err(|e| CliError::Limit(format!("{name}:{}: {e}", idx + 1)))?;
        let line = format_raw_line(&symbols).ok_or_else(|| {
            CliError::Parse(format!("{name}:{}: code point is not a character", idx + 1))
        })?;
        writeln!(out, "{line}").map_err(|e| CliError::Parse(e.to_string()))?;
    }
    Ok(())
}

/// Streams records to a writer as they are discovered.
struct WriteSink<W: Write> {
    out: W,
    ranges: bool,
    failed: Option<std::io::Error>,
}

impl<W: Write> WriteSink<W> {
    fn emit(&mut self, line: std::fmt::Arguments<'_>) {
        if self.failed.is_none() {
            if let Err(e) = self.out.write_fmt(line) {
                self.failed = Some(e);
            }
        }
    }
}

impl<W: Write> OccurrenceSink for WriteSink<W> {
    fn point(&mut self, id: PatternId, start: u64) {
        self.emit(format_args!("{id}\t{start}\n"));
    }

    fn range(&mut self, id: PatternId, start: u64, count: u64) {
        if self.ranges {
            self.emit(format_args!("{id}\t{start}\t{count}\n"));
        } else {
            for i in 0..count {
                self.point(id, start + i);
            }
        }
    }
}

/// Collects records for sorted output.
#[derive(Default)]
struct CollectSink {
    ranges: bool,
    records: Vec<(u64, PatternId, Option<u64>)>,
}

impl OccurrenceSink for CollectSink {
    fn point(&mut self, id: PatternId, start: u64) {
        self.records.push((start, id, None));
    }

    fn range(&mut self, id: PatternId, start: u64, count: u64) {
        if self.ranges {
            self.records.push((start, id, Some(count)));
        } else {
            for i in 0..count {
                self.point(id, start + i);
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_match(
    patterns: &Path,
    text: &Path,
    raw: bool,
    sort: bool,
    ranges: bool,
    stats: bool,
    mode: Mode,
    limit: u64,
) -> Result<(), CliError> {
    let set = load_patterns(patterns, raw)?;
    let s = load_text(text, raw)?;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());

    let search_stats = match mode {
        Mode::Index => {
            let dict = build_dictionary(&set);
            if sort {
                let mut sink = CollectSink { ranges, ..CollectSink::default() };
                let st = dict.search(&s, &mut sink);
                sink.records.sort_unstable();
                for (start, id, count) in sink.records {
                    match count {
                        None => writeln!(out, "{id}\t{start}"),
                        Some(c) => writeln!(out, "{id}\t{start}\t{c}"),
                    }
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                }
                Some(st)
            } else {
                let mut sink = WriteSink { out: &mut out, ranges, failed: None };
                let st = dict.search(&s, &mut sink);
                if let Some(e) = sink.failed {
                    return Err(CliError::Parse(e.to_string()));
                }
                Some(st)
            }
        }
        Mode::Oracle => {
            let mut occ = naive_search(&set, &s, limit)
                .map_err(|e| CliError::Limit(e.to_string()))?;
            if sort {
                occ.sort_unstable_by_key(|o| (o.start, o.id));
            }
            for o in occ {
                writeln!(out, "{}\t{}", o.id, o.start)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
            }
            None
        }
    };
    out.flush().map_err(|e| CliError::Parse(e.to_string()))?;

    if stats {
        if let Some(st) = search_stats {
            eprintln!("runs_processed={}", st.runs_processed);
            eprintln!("edge_descents={}", st.edge_descents);
            eprintln!("failure_follows={}", st.failure_follows);
            eprintln!("predecessor_probes={}", st.predecessor_probes);
            eprintln!("report_queries={}", st.report_queries);
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_gen(cfg: &GenConfig, patterns_out: &Path, text_out: &Path) -> Result<(), CliError> {
    let (patterns, text) = oracle::generate(cfg);
    let mut lines: Vec<String> = patterns
        .patterns()
        .iter()
        .map(|m| format_rle_line(&m.full()))
        .collect();
    lines.push(String::new());
    fs::write(patterns_out, lines.join("\n"))
        .map_err(|e| CliError::Parse(format!("{}: {e}", patterns_out.display())))?;
    fs::write(text_out, format_rle_line(&text) + "\n")
        .map_err(|e| CliError::Parse(format!("{}: {e}", text_out.display())))?;
    Ok(())
}

pub fn cmd_check(
    patterns: &Path,
    text: &Path,
    raw: bool,
    limit: u64,
    inject_fault: bool,
) -> Result<(), CliError> {
    let set = load_patterns(patterns, raw)?;
    let s = load_text(text, raw)?;

    let dict = build_dictionary(&set);
    let mut sink = rle_dict::matcher::VecSink::default();
    dict.search(&s, &mut sink);
    let mut index_occ = sink.occurrences;
    index_occ.sort_unstable();
    if inject_fault && !index_occ.is_empty() {
        index_occ.remove(0);
    }

    let mut oracle_occ =
        naive_search(&set, &s, limit).map_err(|e| CliError::Limit(e.to_string()))?;
    oracle_occ.sort_unstable();

    if index_occ == oracle_occ {
        println!("ok: {} occurrences", oracle_occ.len());
        return Ok(());
    }

    let diff = |have: &[Occurrence], other: &[Occurrence], tag: &str| {
        let mut shown = 0;
        for o in have {
            // Multiset difference via counting would be overkill here; the
            // lists are sorted, so linear probing suffices for a report.
            let in_other = other.binary_search(o).is_ok();
            if !in_other {
                if shown < 20 {
                    println!("{tag}\t{}\t{}", o.id, o.start);
                }
                shown += 1;
            }
        }
        if shown > 20 {
            println!("{tag}\t... {} more", shown - 20);
        }
    };
    diff(&index_occ, &oracle_occ, "index-only");
    diff(&oracle_occ, &index_occ, "oracle-only");
    Err(CliError::Mismatch)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode { file } => cmd_encode(&file),
        Command::Decode { file, limit } => cmd_decode(&file, limit),
        Command::Match {
            patterns,
            text,
            raw,
            sort,
            ranges,
            stats,
            mode,
            limit,
        } => cmd_match(&patterns, &text, raw, sort, ranges, stats, mode, limit),
        Command::Gen {
            seed,
            alphabet,
            max_patterns,
            max_pattern_runs,
            max_text_runs,
            max_pattern_run_len,
            max_text_run_len,
            patterns_out,
            text_out,
        } => {
            let cfg = GenConfig {
                seed,
                alphabet,
                max_patterns,
                max_pattern_runs,
                max_text_runs,
                max_pattern_run_len,
                max_text_run_len,
            };
            cmd_gen(&cfg, &patterns_out, &text_out)
        }
        Command::Check {
            patterns,
            text,
            raw,
            limit,
            inject_fault,
        } => cmd_check(&patterns, &text, raw, limit, inject_fault),
    }
}
