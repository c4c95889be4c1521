//! Truncate match reporting: given an indexed pattern `i`, a character `α`,
//! and a length `w`, report every pattern `j` whose truncated string is a
//! suffix of `P'_i`, whose last run carries `α`, and whose last-run length is
//! at most `w`.
//!
//! The index is the compact trie of the *reversed* truncated strings, so
//! "suffix of `P'_i`" becomes "ancestor of `P'_i`'s locus". Each node carries
//! the last-run characters of its patterns as colors with the minimum
//! last-run length as weight; a colored-ancestor-threshold query finds the
//! nodes with at least one answer, and a prefix scan of the per-color weight
//! lists emits the pattern ids.
//!
//! Only patterns with at least two runs are indexed. Single-run patterns are
//! matched by a dedicated table in the matcher; indexing them here as well
//! would report their occurrences twice.

use std::collections::HashMap;

use thiserror::Error;

use crate::catr::{build_catr, catr_query_with_stats, CatrIndex, CatrStats};
use crate::rle::{PatternId, PatternSet, RleString, Symbol};
use crate::tree::{ColorAssignment, StaticTree};
use crate::trie::{build_transformed_trie, CompactTrie};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruncError {
    #[error("pattern id {0} is not indexed")]
    UnknownPatternId(PatternId),
}

/// Query counters: `scan_steps` counts weight-list entries examined,
/// including the peek that stops each scan; `nodes_reported` counts trie
/// nodes the threshold query returned.
#[derive(Debug, Clone, Copy, Default)]
pub struct TruncStats {
    pub scan_steps: u64,
    pub nodes_reported: u64,
    pub catr: CatrStats,
}

/// The truncate match reporting index.
#[derive(Debug)]
pub struct TruncateIndex {
    trie: CompactTrie,
    catr: CatrIndex,
    /// Per node, per last-run character: `(last-run length, id)` ascending.
    lists: Vec<HashMap<Symbol, Vec<(u64, PatternId)>>>,
    /// Locus of each indexed pattern's reversed truncated string.
    locus: HashMap<PatternId, usize>,
}

/// Index every multi-run pattern of the set.
pub fn build_truncate_index(patterns: &PatternSet) -> TruncateIndex {
    let multi: Vec<&crate::rle::PatternMeta> = patterns
        .patterns()
        .iter()
        .filter(|m| !m.is_single_run())
        .collect();
    let reversed: Vec<RleString> = multi.iter().map(|m| m.truncated.reversed()).collect();

    let (trie, perm) = if reversed.is_empty() {
        (build_transformed_trie(&[]).0, Vec::new())
    } else {
        build_transformed_trie(&reversed)
    };

    let mut lists: Vec<HashMap<Symbol, Vec<(u64, PatternId)>>> =
        vec![HashMap::new(); trie.node_count()];
    let mut locus: HashMap<PatternId, usize> = HashMap::new();
    let mut colors: Vec<Vec<Symbol>> = vec![Vec::new(); trie.node_count()];
    let mut weights: HashMap<(usize, Symbol), u64> = HashMap::new();

    for v in 0..trie.node_count() {
        for &sorted_pos in &trie.node(v).ids {
            let meta = multi[perm[sorted_pos]];
            locus.insert(meta.id, v);
            lists[v]
                .entry(meta.last_char)
                .or_default()
                .push((meta.last_len, meta.id));
            colors[v].push(meta.last_char);
            let w = weights.entry((v, meta.last_char)).or_insert(meta.last_len);
            *w = (*w).min(meta.last_len);
        }
        for list in lists[v].values_mut() {
            list.sort_unstable();
        }
    }

    let parents: Vec<Option<usize>> = (0..trie.node_count())
        .map(|v| trie.node(v).parent)
        .collect();
    let tree = StaticTree::from_parents(&parents);
    let assignment = ColorAssignment::new(colors);
    let catr = build_catr(&tree, &assignment, &weights)
        .expect("weights cover every (node, color) pair by construction");

    TruncateIndex {
        trie,
        catr,
        lists,
        locus,
    }
}

impl TruncateIndex {
    /// Answer a `(i, α, w)` query with counters. Ids come out grouped by
    /// reported trie node, ascending last-run length within a node.
    pub fn query_with_stats(
        &self,
        i: PatternId,
        ch: Symbol,
        w: u64,
    ) -> Result<(Vec<PatternId>, TruncStats), TruncError> {
        let &node = self.locus.get(&i).ok_or(TruncError::UnknownPatternId(i))?;
        let (reported, catr_stats) = catr_query_with_stats(&self.catr, node, ch, w);
        let mut stats = TruncStats {
            scan_steps: 0,
            nodes_reported: reported.len() as u64,
            catr: catr_stats,
        };
        let mut out = Vec::new();
        for u in reported {
            let list = &self.lists[u][&ch];
            for &(len, id) in list {
                stats.scan_steps += 1;
                if len > w {
                    break;
                }
                out.push(id);
            }
        }
        Ok((out, stats))
    }

    pub fn query(&self, i: PatternId, ch: Symbol, w: u64) -> Result<Vec<PatternId>, TruncError> {
        self.query_with_stats(i, ch, w).map(|(ids, _)| ids)
    }

    /// Locus node of an indexed pattern's reversed truncated string.
    pub fn locus(&self, i: PatternId) -> Option<usize> {
        self.locus.get(&i).copied()
    }

    pub fn trie(&self) -> &CompactTrie {
        &self.trie
    }

    /// The `(length, id)` list of one node and character, ascending.
    pub fn weight_list(&self, node: usize, ch: Symbol) -> &[(u64, PatternId)] {
        self.lists[node]
            .get(&ch)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}
