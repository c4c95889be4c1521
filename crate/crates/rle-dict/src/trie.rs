//! Sorting run-length encoded strings and building tries from them.
//!
//! Three structures live here:
//!
//! - A generic compact trie built from strings in sorted order by rightmost
//!   path insertion, one locus per input string.
//! - The pair-trie transformation: RLE strings are first sorted as sequences
//!   of `(char, len)` tokens, which is cheap but is *not* the order of the
//!   decompressed strings; splitting nodes where sibling edges share a first
//!   character turns the pair-token trie into the compact trie of the
//!   decompressed strings, with sibling edges in true character order.
//! - The run-letter trie used by the matcher, where every edge consumes
//!   exactly one run token.

use std::collections::HashMap;

use thiserror::Error;

use crate::rle::{PatternId, PatternSet, RleString, Run};

/// Run tokens compared by `(char, len)`. This is the comparison used for the
/// initial token-level sort; character order of the decompressions is
/// recovered by [`transform_pair_trie`].
pub type PairToken = Run;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrieError {
    /// Input strings (or the supplied lcp values) are not in sorted order.
    #[error("input strings are not sorted at position {0}")]
    UnsortedInput(usize),
}

/// Length in characters of the longest common prefix of two canonical RLE
/// strings, computed run by run.
pub fn lcp_rle(a: &RleString, b: &RleString) -> u64 {
    let mut lcp = 0u64;
    for (ra, rb) in a.runs().iter().zip(b.runs()) {
        if ra.ch != rb.ch {
            break;
        }
        if ra.len != rb.len {
            // The shorter run is followed by a different character on its
            // own side, so the common prefix ends inside this run.
            lcp += ra.len.min(rb.len);
            break;
        }
        lcp += ra.len;
    }
    lcp
}

fn token_lcp(a: &RleString, b: &RleString) -> usize {
    a.runs()
        .iter()
        .zip(b.runs())
        .take_while(|(x, y)| x == y)
        .count()
}

/// A node of a compact trie over run tokens.
#[derive(Debug, Clone)]
pub struct CompactNode {
    pub parent: Option<usize>,
    /// Children ordered by edge label (token order after construction,
    /// character order after transformation).
    pub children: Vec<usize>,
    label: (usize, usize),
    /// Number of run tokens on the root path.
    pub token_depth: usize,
    /// Number of decompressed characters on the root path.
    pub char_depth: u64,
    /// Input string indices whose locus is exactly this node.
    pub ids: Vec<usize>,
}

/// Compact trie over run tokens; node 0 is the root. Edge labels are slices
/// of a shared token arena.
#[derive(Debug, Clone)]
pub struct CompactTrie {
    tokens: Vec<Run>,
    nodes: Vec<CompactNode>,
}

impl CompactTrie {
    pub const ROOT: usize = 0;

    fn new() -> Self {
        CompactTrie {
            tokens: Vec::new(),
            nodes: vec![CompactNode {
                parent: None,
                children: Vec::new(),
                label: (0, 0),
                token_depth: 0,
                char_depth: 0,
                ids: Vec::new(),
            }],
        }
    }

    pub fn node(&self, id: usize) -> &CompactNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edge label between `id` and its parent (empty for the root).
    pub fn label(&self, id: usize) -> &[Run] {
        let (s, e) = self.nodes[id].label;
        &self.tokens[s..e]
    }

    /// Input string indices in the order their loci are met by an in-order
    /// traversal (node before children, children left to right).
    pub fn loci_in_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![Self::ROOT];
        while let Some(v) = stack.pop() {
            out.extend_from_slice(&self.nodes[v].ids);
            for &c in self.nodes[v].children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// The string spelled by the root-to-`id` path.
    pub fn path_string(&self, id: usize) -> RleString {
        let mut path = Vec::new();
        let mut cur = Some(id);
        while let Some(v) = cur {
            path.push(v);
            cur = self.nodes[v].parent;
        }
        let mut runs: Vec<Run> = Vec::new();
        for &v in path.iter().rev() {
            runs.extend_from_slice(self.label(v));
        }
        RleString::from_runs(runs).expect("labels have positive lengths")
    }
}

/// Build the compact trie of strings given in sorted order, where `lcps[i]`
/// is the number of leading tokens shared by `strings[i]` and
/// `strings[i + 1]`. Returns the trie and the number of token visits spent
/// on stack maintenance, which is linear in the total token count.
pub fn build_compact_from_sorted(
    strings: &[RleString],
    lcps: &[usize],
) -> Result<(CompactTrie, usize), TrieError> {
    assert_eq!(
        lcps.len(),
        strings.len().saturating_sub(1),
        "one lcp per consecutive pair"
    );
    let mut trie = CompactTrie::new();
    let mut visits = 0usize;
    // Rightmost path of the trie built so far.
    let mut stack: Vec<usize> = vec![CompactTrie::ROOT];

    for (i, s) in strings.iter().enumerate() {
        let len = s.run_count();
        let lcp = if i == 0 { 0 } else { lcps[i - 1] };
        if i > 0 {
            let prev = &strings[i - 1];
            if lcp > prev.run_count() || lcp > len {
                return Err(TrieError::UnsortedInput(i));
            }
            if lcp == len && len < prev.run_count() {
                // A proper prefix after its extension contradicts sortedness.
                return Err(TrieError::UnsortedInput(i));
            }
            if lcp < len && lcp < prev.run_count() && prev.runs()[lcp] >= s.runs()[lcp] {
                return Err(TrieError::UnsortedInput(i));
            }
        }

        let mut below: Option<usize> = None;
        while trie.nodes[*stack.last().unwrap()].token_depth > lcp {
            below = stack.pop();
            visits += 1;
        }
        let top = *stack.last().unwrap();
        let attach = if trie.nodes[top].token_depth == lcp {
            top
        } else {
            // The attach point falls inside the edge to the last popped
            // node; split it at token depth lcp.
            let child = below.expect("an edge crosses the attach depth");
            let (ls, le) = trie.nodes[child].label;
            let cut = ls + (lcp - trie.nodes[top].token_depth);
            let upper_chars: u64 = trie.tokens[ls..cut].iter().map(|r| r.len).sum();
            let mid = trie.nodes.len();
            trie.nodes.push(CompactNode {
                parent: Some(top),
                children: vec![child],
                label: (ls, cut),
                token_depth: lcp,
                char_depth: trie.nodes[top].char_depth + upper_chars,
                ids: Vec::new(),
            });
            trie.nodes[child].label = (cut, le);
            trie.nodes[child].parent = Some(mid);
            let last = trie.nodes[top].children.len() - 1;
            trie.nodes[top].children[last] = mid;
            stack.push(mid);
            visits += 1;
            mid
        };

        if len == lcp {
            // Duplicate of the previous string; share its locus.
            trie.nodes[attach].ids.push(i);
        } else {
            let start = trie.tokens.len();
            trie.tokens.extend_from_slice(&s.runs()[lcp..]);
            let tail_chars: u64 = trie.tokens[start..].iter().map(|r| r.len).sum();
            let leaf = trie.nodes.len();
            trie.nodes.push(CompactNode {
                parent: Some(attach),
                children: Vec::new(),
                label: (start, trie.tokens.len()),
                token_depth: len,
                char_depth: trie.nodes[attach].char_depth + tail_chars,
                ids: vec![i],
            });
            trie.nodes[attach].children.push(leaf);
            stack.push(leaf);
            visits += 1;
        }
    }
    Ok((trie, visits))
}

// Working representation during the pair-trie transformation; labels are
// owned so first tokens can be rewritten and edges spliced.
struct WorkNode {
    parent: usize,
    children: Vec<usize>,
    label: Vec<Run>,
    ids: Vec<usize>,
    alive: bool,
}

/// Turn the compact trie of pair-token sequences into the compact trie of
/// the decompressed strings.
///
/// At every node, adjacent children whose edge labels start with the same
/// character are merged: the longer first run is re-rooted below the shorter
/// one, either through a fresh node carrying the shared run (when the shorter
/// edge continues past its first token) or directly (when it does not), with
/// the residual run `(β, y_long − y_short)` as the new first token. Unary
/// non-locus nodes are then spliced out. Sibling edges of the result start
/// with distinct characters and appear in character order, so an in-order
/// locus traversal yields the decompressed strings in sorted order.
pub fn transform_pair_trie(pair: &CompactTrie) -> CompactTrie {
    const NONE: usize = usize::MAX;
    let mut work: Vec<WorkNode> = (0..pair.node_count())
        .map(|v| WorkNode {
            parent: pair.node(v).parent.unwrap_or(NONE),
            children: pair.node(v).children.clone(),
            label: pair.label(v).to_vec(),
            ids: pair.node(v).ids.clone(),
            alive: true,
        })
        .collect();

    // Top-down merge pass.
    let mut stack = vec![CompactTrie::ROOT];
    while let Some(v) = stack.pop() {
        let mut ch = std::mem::take(&mut work[v].children);
        let mut idx = ch.len();
        while idx > 1 {
            idx -= 1;
            let l = ch[idx - 1];
            let r = ch[idx];
            let lf = work[l].label[0];
            let rf = work[r].label[0];
            if lf.ch != rf.ch {
                continue;
            }
            debug_assert!(lf.len < rf.len, "sibling tokens are distinct and sorted");
            work[r].label[0] = Run::new(rf.ch, rf.len - lf.len);
            if work[l].label.len() > 1 {
                // Shared run becomes a fresh node; both children keep their
                // remainders.
                let rest = work[l].label.split_off(1);
                let mid = work.len();
                work.push(WorkNode {
                    parent: v,
                    children: Vec::new(),
                    label: vec![lf],
                    ids: Vec::new(),
                    alive: true,
                });
                work[l].label = rest;
                work[l].parent = mid;
                work[r].parent = mid;
                let (lc, rc) = (work[l].label[0].ch, work[r].label[0].ch);
                debug_assert_ne!(lc, rc);
                work[mid].children = if rc < lc { vec![r, l] } else { vec![l, r] };
                ch[idx - 1] = mid;
            } else {
                // The shorter edge is exactly the shared run; hang the longer
                // one below it, keeping that child list in character order.
                work[r].parent = l;
                let rc = work[r].label[0].ch;
                let pos = work[l]
                    .children
                    .iter()
                    .position(|&c| work[c].label[0].ch > rc)
                    .unwrap_or(work[l].children.len());
                work[l].children.insert(pos, r);
            }
            ch.remove(idx);
        }
        work[v].children = ch;
        for &c in &work[v].children {
            stack.push(c);
        }
    }

    // Splice out unary non-locus nodes, bottom-up.
    let mut post = Vec::with_capacity(work.len());
    let mut stack = vec![CompactTrie::ROOT];
    while let Some(v) = stack.pop() {
        post.push(v);
        for &c in &work[v].children {
            stack.push(c);
        }
    }
    for &v in post.iter().rev() {
        if v == CompactTrie::ROOT || work[v].children.len() != 1 || !work[v].ids.is_empty() {
            continue;
        }
        let c = work[v].children[0];
        let mut label = std::mem::take(&mut work[v].label);
        label.append(&mut work[c].label);
        work[c].label = label;
        let p = work[v].parent;
        work[c].parent = p;
        let slot = work[p]
            .children
            .iter()
            .position(|&x| x == v)
            .expect("child listed under parent");
        work[p].children[slot] = c;
        work[v].alive = false;
    }

    // Materialize into a fresh arena-backed trie, preserving child order.
    let mut out = CompactTrie::new();
    let mut remap: HashMap<usize, usize> = HashMap::new();
    remap.insert(CompactTrie::ROOT, CompactTrie::ROOT);
    out.nodes[CompactTrie::ROOT].ids = work[CompactTrie::ROOT].ids.clone();
    let mut queue = std::collections::VecDeque::from([CompactTrie::ROOT]);
    while let Some(v) = queue.pop_front() {
        for &c in &work[v].children {
            debug_assert!(work[c].alive);
            let nv = remap[&v];
            let start = out.tokens.len();
            out.tokens.extend_from_slice(&work[c].label);
            let chars: u64 = work[c].label.iter().map(|r| r.len).sum();
            let nc = out.nodes.len();
            out.nodes.push(CompactNode {
                parent: Some(nv),
                children: Vec::new(),
                label: (start, out.tokens.len()),
                token_depth: out.nodes[nv].token_depth + work[c].label.len(),
                char_depth: out.nodes[nv].char_depth + chars,
                ids: work[c].ids.clone(),
            });
            out.nodes[nv].children.push(nc);
            remap.insert(c, nc);
            queue.push_back(c);
        }
    }
    out
}

/// Sort pair-token sequences (stable), build the pair trie, transform it,
/// and hand back the transformed trie plus the pair-order permutation
/// (`sorted position -> original index`). Locus ids inside the trie refer to
/// sorted positions.
pub(crate) fn build_transformed_trie(strings: &[RleString]) -> (CompactTrie, Vec<usize>) {
    debug_assert!(strings.iter().all(|s| !s.is_empty()));
    let mut perm: Vec<usize> = (0..strings.len()).collect();
    perm.sort_by(|&a, &b| strings[a].runs().cmp(strings[b].runs()));
    let sorted: Vec<RleString> = perm.iter().map(|&i| strings[i].clone()).collect();
    let lcps: Vec<usize> = sorted
        .windows(2)
        .map(|w| token_lcp(&w[0], &w[1]))
        .collect();
    let (pair_trie, _) =
        build_compact_from_sorted(&sorted, &lcps).expect("sorted input is accepted");
    (transform_pair_trie(&pair_trie), perm)
}

/// Order the given canonical, non-empty RLE strings by the lexicographic
/// order of their decompressions, without decompressing. Returns the
/// permutation (original indices in sorted order); duplicates keep their
/// input order.
pub fn sort_rle(strings: &[RleString]) -> Vec<usize> {
    let (trie, perm) = build_transformed_trie(strings);
    trie.loci_in_order().into_iter().map(|p| perm[p]).collect()
}

/// A node of the run-letter trie: one run token per edge.
#[derive(Debug, Clone)]
pub struct RleNode {
    pub parent: Option<usize>,
    /// Token on the edge from the parent; `None` at the root.
    pub token: Option<Run>,
    pub children: HashMap<Run, usize>,
    pub char_depth: u64,
    pub run_depth: usize,
    /// Length of the first run of the node's string; 0 at the root.
    pub first_run_len: u64,
    /// Patterns whose token path ends exactly here.
    pub pattern_ids: Vec<PatternId>,
}

/// Trie of the patterns where each run is a single edge token; node 0 is the
/// root.
#[derive(Debug, Clone)]
pub struct RleTrie {
    nodes: Vec<RleNode>,
}

impl RleTrie {
    pub const ROOT: usize = 0;

    pub fn node(&self, id: usize) -> &RleNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn child(&self, id: usize, token: Run) -> Option<usize> {
        self.nodes[id].children.get(&token).copied()
    }

    /// The string spelled by the root-to-`id` token path. Canonical for
    /// every node because pattern strings are canonical.
    pub fn node_string(&self, id: usize) -> RleString {
        let mut toks = Vec::new();
        let mut cur = id;
        while let Some(tok) = self.nodes[cur].token {
            toks.push(tok);
            cur = self.nodes[cur].parent.expect("non-root has a parent");
        }
        toks.reverse();
        RleString::from_runs(toks).expect("pattern runs are canonical")
    }
}

/// Insert the selected patterns (all of them, or only those with at least
/// two runs) into a run-letter trie.
pub fn build_rle_trie(patterns: &PatternSet, multi_run_only: bool) -> RleTrie {
    let mut trie = RleTrie {
        nodes: vec![RleNode {
            parent: None,
            token: None,
            children: HashMap::new(),
            char_depth: 0,
            run_depth: 0,
            first_run_len: 0,
            pattern_ids: Vec::new(),
        }],
    };
    for meta in patterns.patterns() {
        if multi_run_only && meta.is_single_run() {
            continue;
        }
        let mut cur = RleTrie::ROOT;
        for &tok in meta.full().runs() {
            cur = match trie.nodes[cur].children.get(&tok) {
                Some(&next) => next,
                None => {
                    let next = trie.nodes.len();
                    let first_run_len = if cur == RleTrie::ROOT {
                        tok.len
                    } else {
                        trie.nodes[cur].first_run_len
                    };
                    let node = RleNode {
                        parent: Some(cur),
                        token: Some(tok),
                        children: HashMap::new(),
                        char_depth: trie.nodes[cur].char_depth + tok.len,
                        run_depth: trie.nodes[cur].run_depth + 1,
                        first_run_len,
                        pattern_ids: Vec::new(),
                    };
                    trie.nodes.push(node);
                    trie.nodes[cur].children.insert(tok, next);
                    next
                }
            };
        }
        trie.nodes[cur].pattern_ids.push(meta.id);
    }
    trie
}
