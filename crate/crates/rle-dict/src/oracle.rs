//! Brute-force reference implementations and random instance generation.
//!
//! These are the ground truth for differential tests: definition-level scans
//! with no shared index structures. They decompress with their own loop and
//! never touch the tries, tables, or links built elsewhere in this crate. If
//! the matcher and an oracle disagree, the oracle is right.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matcher::Occurrence;
use crate::rle::{PatternId, PatternSet, RleString, Run, Symbol};

/// Oracles refuse to decompress more than this many characters by default.
pub const EXPANSION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance expands to {len} characters, oracle limit is {limit}")]
    ExpansionLimit { len: u64, limit: u64 },
}

/// Bounds for random instance generation. The same seed always yields the
/// same instance.
#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub seed: u64,
    pub alphabet: Symbol,
    pub max_patterns: usize,
    pub max_pattern_runs: usize,
    pub max_text_runs: usize,
    pub max_pattern_run_len: u64,
    pub max_text_run_len: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            alphabet: 3,
            max_patterns: 10,
            max_pattern_runs: 6,
            max_text_runs: 40,
            max_pattern_run_len: 6,
            max_text_run_len: 8,
        }
    }
}

fn expand(s: &RleString, limit: u64) -> Result<Vec<Symbol>, OracleError> {
    if s.total_len() > limit {
        return Err(OracleError::ExpansionLimit {
            len: s.total_len(),
            limit,
        });
    }
    let mut out = Vec::with_capacity(s.total_len() as usize);
    for run in s.runs() {
        for _ in 0..run.len {
            out.push(run.ch);
        }
    }
    Ok(out)
}

/// Report every `(pattern id, start)` by direct character comparison.
pub fn naive_search(
    patterns: &PatternSet,
    text: &RleString,
    limit: u64,
) -> Result<Vec<Occurrence>, OracleError> {
    let text_chars = expand(text, limit)?;
    let mut out = Vec::new();
    for meta in patterns.patterns() {
        let pat_chars = expand(&meta.full(), limit)?;
        if pat_chars.len() > text_chars.len() {
            continue;
        }
        for start in 0..=(text_chars.len() - pat_chars.len()) {
            if text_chars[start..start + pat_chars.len()] == pat_chars[..] {
                out.push(Occurrence {
                    id: meta.id,
                    start: start as u64,
                });
            }
        }
    }
    Ok(out)
}

/// Truncate-match oracle: all multi-run `j` with `P'_j` a suffix of `P'_i`,
/// matching last-run character, and last-run length at most `w`.
///
/// Single-run patterns are excluded on both ends, mirroring the split in the
/// matcher: their occurrences are arithmetic progressions handled by a
/// dedicated table, never by the truncate index.
pub fn naive_truncate(
    patterns: &PatternSet,
    i: PatternId,
    ch: Symbol,
    w: u64,
) -> Vec<PatternId> {
    let target = match patterns.get(i) {
        Some(meta) if !meta.is_single_run() => &meta.truncated,
        _ => return Vec::new(),
    };
    let target_chars = expand(target, u64::MAX).expect("no limit");
    let mut out = Vec::new();
    for meta in patterns.patterns() {
        if meta.is_single_run() || meta.last_char != ch || meta.last_len > w {
            continue;
        }
        let cand = expand(&meta.truncated, u64::MAX).expect("no limit");
        if cand.len() <= target_chars.len()
            && target_chars[target_chars.len() - cand.len()..] == cand[..]
        {
            out.push(meta.id);
        }
    }
    out
}

/// Colored-ancestor-threshold oracle: walk from `v` to the root collecting
/// every node that carries color `c` with weight at most `w`.
pub fn naive_catr(
    parents: &[Option<usize>],
    colors: &[Vec<u32>],
    weights: &HashMap<(usize, u32), u64>,
    v: usize,
    c: u32,
    w: u64,
) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = Some(v);
    while let Some(u) = cur {
        if colors[u].contains(&c) && weights[&(u, c)] <= w {
            out.push(u);
        }
        cur = parents[u];
    }
    out
}

fn gen_rle(rng: &mut ChaCha8Rng, runs: usize, alphabet: Symbol, max_len: u64) -> RleString {
    let raw_runs: Vec<Run> = (0..runs)
        .map(|_| Run::new(rng.gen_range(0..alphabet), rng.gen_range(1..=max_len)))
        .collect();
    // Adjacent equal characters merge, so small alphabets produce fewer,
    // longer runs than requested. That is intended coverage.
    RleString::from_runs(raw_runs).expect("lengths are positive")
}

/// Generate a reproducible random instance within the configured bounds.
pub fn generate(cfg: &GenConfig) -> (PatternSet, RleString) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let k = rng.gen_range(1..=cfg.max_patterns);
    let mut sources = Vec::with_capacity(k);
    for _ in 0..k {
        let runs = rng.gen_range(1..=cfg.max_pattern_runs);
        sources.push(gen_rle(&mut rng, runs, cfg.alphabet, cfg.max_pattern_run_len));
    }
    let patterns = PatternSet::new(sources).expect("generated patterns are non-empty");
    let text_runs = rng.gen_range(0..=cfg.max_text_runs);
    let text = gen_rle(&mut rng, text_runs, cfg.alphabet, cfg.max_text_run_len);
    (patterns, text)
}
