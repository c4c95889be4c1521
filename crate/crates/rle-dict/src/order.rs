//! Static predecessor sets over 64-bit integer keys.
//!
//! Root transitions, group tables, and the colored-ancestor machinery all
//! query "largest stored key ≤ x". The structure here is a sorted array with
//! binary search; anything faster with the same contract can be swapped in
//! behind this interface without callers noticing.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate key {0}")]
    DuplicateKey(u64),
}

/// An immutable set of `(key, payload)` pairs supporting predecessor and
/// membership queries. Keys are distinct.
#[derive(Debug, Clone)]
pub struct PredecessorSet<P> {
    entries: Vec<(u64, P)>,
}

impl<P> PredecessorSet<P> {
    /// Build from key/payload pairs in any order.
    pub fn build<I>(pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (u64, P)>,
    {
        let mut entries: Vec<(u64, P)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(k, _)| k);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(OrderError::DuplicateKey(w[0].0));
            }
        }
        Ok(PredecessorSet { entries })
    }

    /// Largest key ≤ `x` with its payload, if any.
    pub fn predecessor(&self, x: u64) -> Option<(u64, &P)> {
        let idx = self.entries.partition_point(|&(k, _)| k <= x);
        if idx == 0 {
            None
        } else {
            let (k, ref p) = self.entries[idx - 1];
            Some((k, p))
        }
    }

    /// Payload stored under exactly `x`, if any.
    pub fn member(&self, x: u64) -> Option<&P> {
        self.entries
            .binary_search_by_key(&x, |&(k, _)| k)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &P)> {
        self.entries.iter().map(|&(k, ref p)| (k, p))
    }
}
