//! Dictionary matching on run-length encoded strings, without decompression.
//!
//! Given a set of patterns and a text, both in run-length encoded (RLE) form,
//! this crate reports every occurrence of every pattern in the decompressed
//! text while spending time proportional to the number of *runs*, not
//! characters. The matcher is an Aho-Corasick-style automaton built over run
//! tokens: nodes that differ only in the length of their first run are grouped
//! and navigated together through predecessor tables, failure links jump a
//! whole run at a time, and occurrences that end inside a text run are
//! recovered through a truncate-match index layered on colored ancestor
//! threshold reporting.
//!
//! Module map:
//! - [`rle`]: runs, canonical RLE strings, pattern metadata, rank reduction.
//! - [`order`]: static predecessor sets.
//! - [`trie`]: RLE string sorting, compact tries, the run-letter trie.
//! - [`tree`]: static tree queries (level ancestor, path minima, first
//!   colored ancestor).
//! - [`catr`]: colored ancestor threshold reporting.
//! - [`trunc`]: truncate match reporting.
//! - [`matcher`]: the dictionary matcher itself.
//! - [`oracle`]: brute-force references and instance generation for
//!   differential testing.

pub mod catr;
pub mod matcher;
pub mod oracle;
pub mod order;
pub mod rle;
pub mod tree;
pub mod trie;
pub mod trunc;

pub use matcher::{Occurrence, OccurrenceSink, RleDictionary, SearchStats};
pub use rle::{PatternId, PatternSet, RleString, Run, Symbol};
