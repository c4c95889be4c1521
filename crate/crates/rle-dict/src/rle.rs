//! Run-length representation: runs, canonical RLE strings, pattern metadata,
//! and the alphabet rank reduction.
//!
//! Everything downstream works on [`RleString`] values in *canonical* form:
//! adjacent runs carry distinct characters and every run length is at least 1.
//! Symbols are 32-bit integer code points so reduced or synthetic alphabets
//! are representable; run lengths and decompressed positions are 64-bit.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Integer code point. Text read as UTF-8 maps each scalar value to its code.
pub type Symbol = u32;

/// 1-based pattern index, stable across all structures.
pub type PatternId = u32;

/// Errors from run-length plumbing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RleError {
    /// A run with length zero was supplied where a canonical run is required.
    #[error("run length must be at least 1")]
    NonPositiveRunLength,
    /// A pattern decoded to the empty string.
    #[error("pattern {0} is empty")]
    EmptyPattern(usize),
    /// Decoding would materialize more characters than the caller allows.
    #[error("decoded length {len} exceeds expansion limit {limit}")]
    ExpansionLimit { len: u64, limit: u64 },
}

/// A single run: `len` repetitions of `ch`.
///
/// The derived order is lexicographic by `(ch, len)`, which is the pair-token
/// order used when sorting RLE strings run by run. Note that pair order is
/// *not* the order of the decompressed strings; the trie transformation in
/// [`crate::trie`] is what bridges the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Run {
    pub ch: Symbol,
    pub len: u64,
}

impl Run {
    pub fn new(ch: Symbol, len: u64) -> Self {
        Run { ch, len }
    }
}

/// A string in canonical run-length encoded form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RleString {
    runs: Vec<Run>,
    total_len: u64,
}

impl RleString {
    /// The empty string.
    pub fn empty() -> Self {
        RleString::default()
    }

    /// Run-length encode a raw character sequence.
    pub fn encode(raw: &[Symbol]) -> Self {
        let mut runs: Vec<Run> = Vec::new();
        for &ch in raw {
            match runs.last_mut() {
                Some(run) if run.ch == ch => run.len += 1,
                _ => runs.push(Run::new(ch, 1)),
            }
        }
        RleString {
            runs,
            total_len: raw.len() as u64,
        }
    }

    /// Build a canonical RLE string from arbitrary runs, merging adjacent
    /// runs that share a character. Rejects zero-length runs.
    pub fn from_runs<I>(runs: I) -> Result<Self, RleError>
    where
        I: IntoIterator<Item = Run>,
    {
        let mut out: Vec<Run> = Vec::new();
        let mut total: u64 = 0;
        for run in runs {
            if run.len == 0 {
                return Err(RleError::NonPositiveRunLength);
            }
            total += run.len;
            match out.last_mut() {
                Some(last) if last.ch == run.ch => last.len += run.len,
                _ => out.push(run),
            }
        }
        Ok(RleString {
            runs: out,
            total_len: total,
        })
    }

    /// Decode back to a character sequence. Refuses to expand beyond `limit`
    /// characters so tooling paths cannot be blown up by a huge run.
    pub fn decode(&self, limit: u64) -> Result<Vec<Symbol>, RleError> {
        if self.total_len > limit {
            return Err(RleError::ExpansionLimit {
                len: self.total_len,
                limit,
            });
        }
        let mut out = Vec::with_capacity(self.total_len as usize);
        for run in &self.runs {
            for _ in 0..run.len {
                out.push(run.ch);
            }
        }
        Ok(out)
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn total_len(&self) -> u64 {
        self.total_len
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The reversal. Reversing a canonical string reverses its run sequence.
    pub fn reversed(&self) -> RleString {
        RleString {
            runs: self.runs.iter().rev().copied().collect(),
            total_len: self.total_len,
        }
    }
}

/// Per-pattern metadata: the decomposition `P = P'·αᵂ` into the truncated
/// string and the last run, plus lengths used when reporting occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMeta {
    pub id: PatternId,
    pub full_len: u64,
    pub last_char: Symbol,
    pub last_len: u64,
    pub run_count: usize,
    pub truncated: RleString,
}

impl PatternMeta {
    fn from_rle(id: PatternId, s: &RleString) -> Result<Self, RleError> {
        let last = match s.runs().last() {
            Some(run) => *run,
            None => return Err(RleError::EmptyPattern(id as usize)),
        };
        let truncated =
            RleString::from_runs(s.runs()[..s.run_count() - 1].iter().copied())
                .expect("canonical prefix stays canonical");
        Ok(PatternMeta {
            id,
            full_len: s.total_len(),
            last_char: last.ch,
            last_len: last.len,
            run_count: s.run_count(),
            truncated,
        })
    }

    /// Reassemble the full pattern from the truncated string and last run.
    pub fn full(&self) -> RleString {
        let mut runs = self.truncated.runs().to_vec();
        runs.push(Run::new(self.last_char, self.last_len));
        RleString::from_runs(runs).expect("truncated ++ last run is canonical")
    }

    /// A pattern has a single run exactly when its truncated string is empty.
    pub fn is_single_run(&self) -> bool {
        self.run_count == 1
    }
}

/// The dictionary: every pattern with its metadata, ids 1..=k.
#[derive(Debug, Clone)]
pub struct PatternSet {
    patterns: Vec<PatternMeta>,
    total_runs: usize,
    alphabet_bound: Symbol,
}

impl PatternSet {
    /// Build from canonical pattern strings. Ids are assigned in input order,
    /// starting at 1. Every pattern must be non-empty.
    pub fn new(sources: Vec<RleString>) -> Result<Self, RleError> {
        let mut patterns = Vec::with_capacity(sources.len());
        let mut total_runs = 0usize;
        let mut alphabet_bound: Symbol = 0;
        for (idx, s) in sources.iter().enumerate() {
            let meta = PatternMeta::from_rle((idx + 1) as PatternId, s)?;
            total_runs += meta.run_count;
            for run in s.runs() {
                alphabet_bound = alphabet_bound.max(run.ch + 1);
            }
            patterns.push(meta);
        }
        Ok(PatternSet {
            patterns,
            total_runs,
            alphabet_bound,
        })
    }

    pub fn patterns(&self) -> &[PatternMeta] {
        &self.patterns
    }

    /// Metadata for a 1-based pattern id.
    pub fn get(&self, id: PatternId) -> Option<&PatternMeta> {
        if id == 0 {
            return None;
        }
        self.patterns.get(id as usize - 1)
    }

    pub fn k(&self) -> usize {
        self.patterns.len()
    }

    pub fn total_runs(&self) -> usize {
        self.total_runs
    }

    /// Exclusive upper bound on symbol codes appearing in the patterns.
    pub fn alphabet_bound(&self) -> Symbol {
        self.alphabet_bound
    }
}

/// Mapping from original symbols to rank-reduced symbols.
pub type AlphabetMap = BTreeMap<Symbol, Symbol>;

/// Symbol that every text-only character is collapsed to.
pub const REDUCED_TEXT_ONLY: Symbol = 0;
/// Symbol that every pattern-only character is collapsed to.
pub const REDUCED_PATTERN_ONLY: Symbol = 1;

/// Rank-reduce the alphabet of a matching instance.
///
/// Characters occurring only in the text map to [`REDUCED_TEXT_ONLY`],
/// characters occurring only in patterns map to [`REDUCED_PATTERN_ONLY`], and
/// characters occurring in both map to `2 + rank` in the sorted order of the
/// shared characters. Cross-equality between text and pattern positions is
/// preserved exactly, so the occurrence set is unchanged, while the reduced
/// alphabet has at most `min(n̄, m̄) + 2` symbols.
///
/// Collapsing distinct characters can merge adjacent runs, so both outputs
/// are re-canonicalized and the pattern metadata is rebuilt (ids are kept).
pub fn rank_reduce(patterns: &PatternSet, text: &RleString) -> (PatternSet, RleString, AlphabetMap) {
    let mut pattern_chars: BTreeSet<Symbol> = BTreeSet::new();
    for meta in patterns.patterns() {
        for run in meta.full().runs() {
            pattern_chars.insert(run.ch);
        }
    }
    let text_chars: BTreeSet<Symbol> = text.runs().iter().map(|r| r.ch).collect();

    let mut map: AlphabetMap = BTreeMap::new();
    let mut next_shared = 2 as Symbol;
    for &ch in pattern_chars.intersection(&text_chars) {
        map.insert(ch, next_shared);
        next_shared += 1;
    }
    for &ch in text_chars.difference(&pattern_chars) {
        map.insert(ch, REDUCED_TEXT_ONLY);
    }
    for &ch in pattern_chars.difference(&text_chars) {
        map.insert(ch, REDUCED_PATTERN_ONLY);
    }

    let remap = |s: &RleString| -> RleString {
        RleString::from_runs(
            s.runs()
                .iter()
                .map(|r| Run::new(map[&r.ch], r.len)),
        )
        .expect("lengths unchanged")
    };

    let reduced_patterns: Vec<RleString> =
        patterns.patterns().iter().map(|m| remap(&m.full())).collect();
    let reduced_set =
        PatternSet::new(reduced_patterns).expect("non-empty patterns stay non-empty");
    let reduced_text = remap(text);
    (reduced_set, reduced_text, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rle(runs: &[(Symbol, u64)]) -> RleString {
        RleString::from_runs(runs.iter().map(|&(c, l)| Run::new(c, l))).unwrap()
    }

    fn chars(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| c as Symbol).collect()
    }

    #[test]
    fn encode_splits_runs() {
        let enc = RleString::encode(&chars("aaaabbbaaaccbaa"));
        let expect = [
            ('a', 4),
            ('b', 3),
            ('a', 3),
            ('c', 2),
            ('b', 1),
            ('a', 2),
        ];
        let expect: Vec<Run> = expect
            .iter()
            .map(|&(c, l)| Run::new(c as Symbol, l))
            .collect();
        assert_eq!(enc.runs(), expect.as_slice());
        assert_eq!(enc.total_len(), 15);
    }

    #[test]
    fn encode_empty_and_single_run() {
        assert_eq!(RleString::encode(&[]), RleString::empty());
        assert_eq!(RleString::encode(&[7, 7, 7, 7]).runs(), &[Run::new(7, 4)]);
    }

    #[test]
    fn decode_inverts_encode() {
        let raw = chars("aaaabbbaaaccbaa");
        let enc = RleString::encode(&raw);
        assert_eq!(enc.decode(1 << 20).unwrap(), raw);
        assert_eq!(RleString::empty().decode(0).unwrap(), Vec::<Symbol>::new());
        assert_eq!(rle(&[(1, 2), (0, 1)]).decode(3).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn decode_respects_expansion_limit() {
        let s = rle(&[(0, 100)]);
        assert_eq!(
            s.decode(99),
            Err(RleError::ExpansionLimit { len: 100, limit: 99 })
        );
        assert!(s.decode(100).is_ok());
    }

    #[test]
    fn from_runs_merges_adjacent_equal_chars() {
        let s = RleString::from_runs([Run::new(0, 2), Run::new(0, 3), Run::new(1, 1)]).unwrap();
        assert_eq!(s.runs(), &[Run::new(0, 5), Run::new(1, 1)]);
        assert_eq!(s.total_len(), 6);
    }

    #[test]
    fn from_runs_rejects_zero_length() {
        let got = RleString::from_runs([Run::new(0, 2), Run::new(1, 0)]);
        assert_eq!(got, Err(RleError::NonPositiveRunLength));
    }

    #[test]
    fn from_runs_keeps_canonical_input_unchanged() {
        let runs = [Run::new(0, 1), Run::new(1, 1), Run::new(0, 1)];
        let s = RleString::from_runs(runs).unwrap();
        assert_eq!(s.runs(), runs.as_slice());
    }

    #[test]
    fn pattern_meta_decomposition() {
        let set = PatternSet::new(vec![rle(&[(0, 3), (1, 2)]), rle(&[(2, 4)])]).unwrap();
        let p1 = set.get(1).unwrap();
        assert_eq!(p1.truncated, rle(&[(0, 3)]));
        assert_eq!((p1.last_char, p1.last_len, p1.full_len), (1, 2, 5));
        assert_eq!(p1.full(), rle(&[(0, 3), (1, 2)]));
        let p2 = set.get(2).unwrap();
        assert!(p2.is_single_run());
        assert!(p2.truncated.is_empty());
        assert_eq!(set.total_runs(), 3);
    }

    #[test]
    fn pattern_set_rejects_empty_pattern() {
        let got = PatternSet::new(vec![rle(&[(0, 1)]), RleString::empty()]);
        assert_eq!(got.unwrap_err(), RleError::EmptyPattern(2));
    }

    #[test]
    fn rank_reduce_three_way_split() {
        // patterns {c²x¹}, text y³c²z¹: y,z are text-only, x pattern-only,
        // c shared with rank 0.
        let c = 'c' as Symbol;
        let x = 'x' as Symbol;
        let y = 'y' as Symbol;
        let z = 'z' as Symbol;
        let patterns = PatternSet::new(vec![rle(&[(c, 2), (x, 1)])]).unwrap();
        let text = rle(&[(y, 3), (c, 2), (z, 1)]);
        let (rp, rt, map) = rank_reduce(&patterns, &text);
        assert_eq!(map[&y], REDUCED_TEXT_ONLY);
        assert_eq!(map[&z], REDUCED_TEXT_ONLY);
        assert_eq!(map[&x], REDUCED_PATTERN_ONLY);
        assert_eq!(map[&c], 2);
        assert_eq!(rp.get(1).unwrap().full(), rle(&[(2, 2), (1, 1)]));
        assert_eq!(rt, rle(&[(0, 3), (2, 2), (0, 1)]));
    }

    #[test]
    fn rank_reduce_single_shared_symbol() {
        let patterns = PatternSet::new(vec![rle(&[(5, 1)])]).unwrap();
        let text = rle(&[(5, 1)]);
        let (_, _, map) = rank_reduce(&patterns, &text);
        assert_eq!(map[&5], 2);
    }

    #[test]
    fn rank_reduce_preserves_cross_equality() {
        // pattern {a¹}, text {b¹}: nothing shared, and no position pair is
        // equal before or after.
        let patterns = PatternSet::new(vec![rle(&[(0, 1)])]).unwrap();
        let text = rle(&[(1, 1)]);
        let (rp, rt, _) = rank_reduce(&patterns, &text);
        let before_p = patterns.get(1).unwrap().full().decode(10).unwrap();
        let before_t = text.decode(10).unwrap();
        let after_p = rp.get(1).unwrap().full().decode(10).unwrap();
        let after_t = rt.decode(10).unwrap();
        for (i, &tc) in before_t.iter().enumerate() {
            for (z, &pc) in before_p.iter().enumerate() {
                assert_eq!(tc == pc, after_t[i] == after_p[z]);
            }
        }
    }

    #[test]
    fn rank_reduce_merges_collapsed_runs() {
        // Adjacent text-only runs collapse into a single run of α₁.
        let patterns = PatternSet::new(vec![rle(&[(9, 1)])]).unwrap();
        let text = rle(&[(3, 2), (4, 1), (9, 1)]);
        let (_, rt, _) = rank_reduce(&patterns, &text);
        assert_eq!(rt, rle(&[(REDUCED_TEXT_ONLY, 3), (2, 1)]));
    }
}
