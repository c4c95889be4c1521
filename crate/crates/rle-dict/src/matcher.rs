//! The compressed dictionary matcher: an Aho-Corasick-style automaton over
//! run tokens that processes one text run at a time.
//!
//! Nodes of the run-letter trie whose strings differ only in the length of
//! their first run form a *group*; a group stores, per edge token, a
//! predecessor set over the members' first-run lengths, so one query finds
//! the deepest member whose string stays a suffix of the text after
//! descending. Failure links point from a node spelling `β^x·X` to the node
//! spelling the longest trie suffix of `X`, dropping at least one run per
//! hop, which is what bounds navigation by the number of text runs rather
//! than characters.
//!
//! Occurrences ending inside the next text run `α^y` are recovered in two
//! ways before navigating: a truncate-match query seeded with the report
//! anchor of the current node (the longest truncated-pattern suffix of the
//! matched text), and a scan of the per-character table of single-run
//! patterns, whose occurrences form arithmetic progressions emitted as range
//! records.

use std::collections::{BTreeMap, HashMap};

use crate::order::PredecessorSet;
use crate::rle::{PatternId, PatternSet, RleString, Run, Symbol};
use crate::trie::{build_rle_trie, RleTrie};
use crate::trunc::{build_truncate_index, TruncateIndex};

/// One reported match: 0-indexed start position in the decompressed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub id: PatternId,
    pub start: u64,
}

/// Receiver for reported occurrences.
///
/// Single-run patterns match at every offset of a long-enough text run, so
/// they are delivered as `(id, start, count)` ranges with stride 1. The
/// default implementation enumerates the range; sinks that must stay
/// output-sensitive on huge runs should override [`OccurrenceSink::range`].
pub trait OccurrenceSink {
    fn point(&mut self, id: PatternId, start: u64);

    fn range(&mut self, id: PatternId, start: u64, count: u64) {
        for i in 0..count {
            self.point(id, start + i);
        }
    }
}

/// Collects every occurrence as points, expanding ranges.
#[derive(Debug, Default)]
pub struct VecSink {
    pub occurrences: Vec<Occurrence>,
}

impl OccurrenceSink for VecSink {
    fn point(&mut self, id: PatternId, start: u64) {
        self.occurrences.push(Occurrence { id, start });
    }
}

/// A `(id, start, count)` range of occurrences with stride 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeRecord {
    pub id: PatternId,
    pub start: u64,
    pub count: u64,
}

/// Keeps ranges as ranges; points stay points.
#[derive(Debug, Default)]
pub struct RangeSink {
    pub points: Vec<Occurrence>,
    pub ranges: Vec<RangeRecord>,
}

impl OccurrenceSink for RangeSink {
    fn point(&mut self, id: PatternId, start: u64) {
        self.points.push(Occurrence { id, start });
    }

    fn range(&mut self, id: PatternId, start: u64, count: u64) {
        self.ranges.push(RangeRecord { id, start, count });
    }
}

/// Counters accumulated while searching; the failure/descent counters are
/// each bounded by the number of processed runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub runs_processed: u64,
    pub edge_descents: u64,
    pub failure_follows: u64,
    pub predecessor_probes: u64,
    pub report_queries: u64,
}

/// Position of an in-progress search: the current trie node is always the
/// longest trie suffix of the processed text.
#[derive(Debug, Clone)]
pub struct SearchCursor {
    node: usize,
    processed_len: u64,
    processed_runs: u64,
    last_char: Option<Symbol>,
    stats: SearchStats,
}

impl SearchCursor {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn processed_len(&self) -> u64 {
        self.processed_len
    }

    pub fn processed_runs(&self) -> u64 {
        self.processed_runs
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }
}

#[derive(Debug)]
struct Group {
    members: Vec<usize>,
    /// Edge token -> predecessor set over member first-run lengths, payload
    /// the child reached through that token.
    table: HashMap<Run, PredecessorSet<usize>>,
}

/// The built matcher index.
#[derive(Debug)]
pub struct RleDictionary {
    trie: RleTrie,
    groups: Vec<Group>,
    group_of: Vec<usize>,
    /// `F_v`: node spelling the longest trie suffix of `str(v)` minus its
    /// first run. Shared by all members of a group.
    failure: Vec<usize>,
    /// `i_v`: a pattern whose truncated string is the longest
    /// truncated-pattern suffix of `str(v)`.
    anchor: Vec<Option<PatternId>>,
    /// Per character, predecessor set over the root's edge run lengths.
    root_table: HashMap<Symbol, PredecessorSet<usize>>,
    /// Per character, single-run patterns as `(run length, id)` ascending.
    single_run: HashMap<Symbol, Vec<(u64, PatternId)>>,
    trunc: TruncateIndex,
    pattern_len: Vec<u64>,
    pattern_last_len: Vec<u64>,
}

/// Build the matcher for a pattern set.
pub fn build_dictionary(patterns: &PatternSet) -> RleDictionary {
    let trie = build_rle_trie(patterns, true);
    let n = trie.node_count();

    let mut single_run: HashMap<Symbol, Vec<(u64, PatternId)>> = HashMap::new();
    for meta in patterns.patterns() {
        if meta.is_single_run() {
            single_run
                .entry(meta.last_char)
                .or_default()
                .push((meta.last_len, meta.id));
        }
    }
    for list in single_run.values_mut() {
        list.sort_unstable();
    }

    let mut root_children: BTreeMap<Symbol, Vec<(u64, usize)>> = BTreeMap::new();
    for (&tok, &child) in &trie.node(RleTrie::ROOT).children {
        root_children.entry(tok.ch).or_default().push((tok.len, child));
    }
    let root_table: HashMap<Symbol, PredecessorSet<usize>> = root_children
        .iter()
        .map(|(&ch, entries)| {
            (
                ch,
                PredecessorSet::build(entries.iter().copied())
                    .expect("edge tokens of one node are distinct"),
            )
        })
        .collect();

    // Groups by breadth-first refinement: the root is alone, children of the
    // root group by edge character, and thereafter the nodes reached from
    // one group through the same exact token form a group.
    let mut group_of = vec![usize::MAX; n];
    let mut groups: Vec<Group> = Vec::new();
    group_of[RleTrie::ROOT] = 0;
    groups.push(Group {
        members: vec![RleTrie::ROOT],
        table: HashMap::new(),
    });
    for entries in root_children.values() {
        let gid = groups.len();
        let members: Vec<usize> = entries.iter().map(|&(_, child)| child).collect();
        for &m in &members {
            group_of[m] = gid;
        }
        groups.push(Group {
            members,
            table: HashMap::new(),
        });
    }
    let mut next = 1usize;
    while next < groups.len() {
        let gid = next;
        next += 1;
        let mut outgoing: BTreeMap<Run, Vec<(u64, usize)>> = BTreeMap::new();
        for &v in &groups[gid].members {
            let z = trie.node(v).first_run_len;
            for (&tok, &child) in &trie.node(v).children {
                outgoing.entry(tok).or_default().push((z, child));
            }
        }
        let mut table = HashMap::new();
        for (tok, entries) in outgoing {
            let child_gid = groups.len();
            let members: Vec<usize> = entries.iter().map(|&(_, child)| child).collect();
            for &m in &members {
                group_of[m] = child_gid;
            }
            groups.push(Group {
                members,
                table: HashMap::new(),
            });
            table.insert(
                tok,
                PredecessorSet::build(entries)
                    .expect("first-run lengths are distinct within a group"),
            );
        }
        groups[gid].table = table;
    }
    debug_assert!(group_of.iter().all(|&g| g != usize::MAX));

    // Failure links, groups in creation order (nondecreasing run depth).
    // The walk below mirrors search navigation: from the parent's failure,
    // look for the deepest node whose string is a suffix of the current one
    // and has the exact edge token, falling back to the root's
    // predecessor-by-length entry.
    let mut failure = vec![RleTrie::ROOT; n];
    for gid in 1..groups.len() {
        for idx in 0..groups[gid].members.len() {
            let u = groups[gid].members[idx];
            let parent = trie.node(u).parent.expect("non-root node");
            if parent == RleTrie::ROOT {
                failure[u] = RleTrie::ROOT;
                continue;
            }
            let tok = trie.node(u).token.expect("non-root node");
            let mut w = failure[parent];
            failure[u] = loop {
                if w == RleTrie::ROOT {
                    break match root_table.get(&tok.ch) {
                        Some(ps) => ps
                            .predecessor(tok.len)
                            .map_or(RleTrie::ROOT, |(_, &child)| child),
                        None => RleTrie::ROOT,
                    };
                }
                if let Some(ps) = groups[group_of[w]].table.get(&tok) {
                    if let Some((_, &child)) = ps.predecessor(trie.node(w).first_run_len) {
                        break child;
                    }
                }
                w = failure[w];
            };
        }
    }
    debug_assert!((0..n).all(|v| {
        v == RleTrie::ROOT || trie.node(failure[v]).run_depth < trie.node(v).run_depth
    }));

    // Report anchors in group order, within a group by ascending first-run
    // length: a node whose child ends a pattern is its own anchor (its
    // string *is* that pattern's truncated string); otherwise the anchor is
    // inherited from the next-shorter member (the simulated within-group
    // failure link) or from the group's failure link.
    let mut anchor: Vec<Option<PatternId>> = vec![None; n];
    for group in &groups {
        let mut members = group.members.clone();
        members.sort_by_key(|&v| trie.node(v).first_run_len);
        let mut prev: Option<usize> = None;
        for &v in &members {
            let seed = trie
                .node(v)
                .children
                .values()
                .flat_map(|&c| trie.node(c).pattern_ids.iter().copied())
                .min();
            anchor[v] = match seed {
                Some(id) => Some(id),
                None => match prev {
                    Some(p) => anchor[p],
                    None => anchor[failure[v]],
                },
            };
            prev = Some(v);
        }
    }

    RleDictionary {
        trie,
        groups,
        group_of,
        failure,
        anchor,
        root_table,
        single_run,
        trunc: build_truncate_index(patterns),
        pattern_len: patterns.patterns().iter().map(|m| m.full_len).collect(),
        pattern_last_len: patterns.patterns().iter().map(|m| m.last_len).collect(),
    }
}

impl RleDictionary {
    /// A cursor positioned at the root with nothing processed.
    pub fn cursor(&self) -> SearchCursor {
        SearchCursor {
            node: RleTrie::ROOT,
            processed_len: 0,
            processed_runs: 0,
            last_char: None,
            stats: SearchStats::default(),
        }
    }

    /// Process one text run: report everything ending inside it, then move
    /// the cursor to the longest trie suffix of the extended text. The run
    /// must be canonical with respect to the previously processed run.
    pub fn search_run(&self, cur: &mut SearchCursor, run: Run, sink: &mut impl OccurrenceSink) {
        debug_assert!(run.len >= 1);
        debug_assert_ne!(cur.last_char, Some(run.ch), "text runs must be canonical");

        // Step 1: occurrences ending inside this run. Multi-run patterns via
        // one truncate-match query, single-run patterns via the sorted table.
        if let Some(i) = self.anchor[cur.node] {
            cur.stats.report_queries += 1;
            let ids = self
                .trunc
                .query(i, run.ch, run.len)
                .expect("anchors are indexed patterns");
            for id in ids {
                let idx = (id - 1) as usize;
                debug_assert!(
                    cur.processed_len + self.pattern_last_len[idx] >= self.pattern_len[idx]
                );
                let start = cur.processed_len + self.pattern_last_len[idx] - self.pattern_len[idx];
                sink.point(id, start);
            }
        }
        if let Some(list) = self.single_run.get(&run.ch) {
            for &(len, id) in list {
                if len > run.len {
                    break;
                }
                sink.range(id, cur.processed_len, run.len - len + 1);
            }
        }

        // Step 2: follow failure links until some suffix extends by this
        // run, then descend; at the root, enter by the longest edge that
        // fits inside the run.
        loop {
            if cur.node == RleTrie::ROOT {
                if let Some(ps) = self.root_table.get(&run.ch) {
                    cur.stats.predecessor_probes += 1;
                    if let Some((_, &child)) = ps.predecessor(run.len) {
                        cur.node = child;
                        cur.stats.edge_descents += 1;
                    }
                }
                break;
            }
            if let Some(ps) = self.groups[self.group_of[cur.node]].table.get(&run) {
                cur.stats.predecessor_probes += 1;
                if let Some((_, &child)) =
                    ps.predecessor(self.trie.node(cur.node).first_run_len)
                {
                    cur.node = child;
                    cur.stats.edge_descents += 1;
                    break;
                }
            }
            cur.node = self.failure[cur.node];
            cur.stats.failure_follows += 1;
        }

        cur.processed_len += run.len;
        cur.processed_runs += 1;
        cur.stats.runs_processed += 1;
        cur.last_char = Some(run.ch);
    }

    /// Search a whole canonical text, streaming occurrences into `sink`.
    pub fn search(&self, text: &RleString, sink: &mut impl OccurrenceSink) -> SearchStats {
        let mut cur = self.cursor();
        for &run in text.runs() {
            self.search_run(&mut cur, run, sink);
        }
        cur.stats
    }

    /// The underlying run-letter trie (for diagnostics and invariant checks).
    pub fn trie(&self) -> &RleTrie {
        &self.trie
    }

    pub fn failure_link(&self, node: usize) -> usize {
        self.failure[node]
    }

    pub fn report_anchor(&self, node: usize) -> Option<PatternId> {
        self.anchor[node]
    }

    pub fn group_id(&self, node: usize) -> usize {
        self.group_of[node]
    }

    pub fn group_members(&self, gid: usize) -> &[usize] {
        &self.groups[gid].members
    }

    pub fn truncate_index(&self) -> &TruncateIndex {
        &self.trunc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{generate, naive_search, GenConfig, EXPANSION_LIMIT};
    use crate::rle::RleError;

    fn rle(runs: &[(Symbol, u64)]) -> RleString {
        RleString::from_runs(runs.iter().map(|&(c, l)| Run::new(c, l))).unwrap()
    }

    fn fig_patterns() -> PatternSet {
        PatternSet::new(vec![
            rle(&[(0, 5), (1, 1)]),
            rle(&[(0, 5), (1, 3), (0, 2)]),
            rle(&[(0, 5), (1, 3), (0, 1)]),
            rle(&[(0, 3), (1, 3), (0, 1)]),
            rle(&[(1, 2), (0, 1)]),
            rle(&[(1, 2)]),
        ])
        .unwrap()
    }

    /// Node reached by a token path from the root.
    fn node_at(dict: &RleDictionary, path: &[(Symbol, u64)]) -> usize {
        let mut cur = RleTrie::ROOT;
        for &(c, l) in path {
            cur = dict.trie().child(cur, Run::new(c, l)).unwrap();
        }
        cur
    }

    fn collect(dict: &RleDictionary, text: &RleString) -> (Vec<Occurrence>, SearchStats) {
        let mut sink = VecSink::default();
        let stats = dict.search(text, &mut sink);
        let mut occ = sink.occurrences;
        occ.sort_unstable();
        (occ, stats)
    }

    fn occ(pairs: &[(PatternId, u64)]) -> Vec<Occurrence> {
        let mut v: Vec<Occurrence> = pairs
            .iter()
            .map(|&(id, start)| Occurrence { id, start })
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn figure_groups() {
        let dict = build_dictionary(&fig_patterns());
        let expect: Vec<Vec<&[(Symbol, u64)]>> = vec![
            vec![&[(0, 3)], &[(0, 5)]],
            vec![&[(0, 3), (1, 3)], &[(0, 5), (1, 3)]],
            vec![&[(0, 3), (1, 3), (0, 1)], &[(0, 5), (1, 3), (0, 1)]],
            vec![&[(0, 5), (1, 3), (0, 2)]],
            vec![&[(1, 2)]],
            vec![&[(1, 2), (0, 1)]],
            vec![&[(0, 5), (1, 1)]],
        ];
        for group in expect {
            let nodes: Vec<usize> = group.iter().map(|p| node_at(&dict, p)).collect();
            let gid = dict.group_id(nodes[0]);
            let mut members = dict.group_members(gid).to_vec();
            members.sort_unstable();
            let mut nodes_sorted = nodes.clone();
            nodes_sorted.sort_unstable();
            assert_eq!(members, nodes_sorted);
        }
        assert_eq!(dict.group_members(dict.group_id(RleTrie::ROOT)), &[RleTrie::ROOT]);
    }

    #[test]
    fn figure_failure_links() {
        let dict = build_dictionary(&fig_patterns());
        let b2 = node_at(&dict, &[(1, 2)]);
        let b2a1 = node_at(&dict, &[(1, 2), (0, 1)]);
        // The group {a³b³, a⁵b³} fails to b²; its a¹-children fail to b²a¹.
        assert_eq!(dict.failure_link(node_at(&dict, &[(0, 3), (1, 3)])), b2);
        assert_eq!(dict.failure_link(node_at(&dict, &[(0, 5), (1, 3)])), b2);
        assert_eq!(
            dict.failure_link(node_at(&dict, &[(0, 3), (1, 3), (0, 1)])),
            b2a1
        );
        assert_eq!(
            dict.failure_link(node_at(&dict, &[(0, 5), (1, 3), (0, 1)])),
            b2a1
        );
        for path in [&[(0, 3)][..], &[(0, 5)], &[(1, 2)], &[(0, 5), (1, 1)]] {
            assert_eq!(dict.failure_link(node_at(&dict, path)), RleTrie::ROOT);
        }
        assert_eq!(
            dict.failure_link(node_at(&dict, &[(0, 5), (1, 3), (0, 2)])),
            RleTrie::ROOT
        );
    }

    #[test]
    fn figure_report_anchors() {
        let dict = build_dictionary(&fig_patterns());
        assert_eq!(dict.report_anchor(node_at(&dict, &[(0, 3), (1, 3)])), Some(4));
        // a⁵b³ equals both P2' and P3'; the smaller id wins the tie.
        assert_eq!(dict.report_anchor(node_at(&dict, &[(0, 5), (1, 3)])), Some(2));
        assert_eq!(dict.report_anchor(node_at(&dict, &[(0, 3)])), None);
        assert_eq!(dict.report_anchor(node_at(&dict, &[(0, 5)])), Some(1));
        assert_eq!(dict.report_anchor(node_at(&dict, &[(1, 2)])), Some(5));
        assert_eq!(dict.report_anchor(node_at(&dict, &[(1, 2), (0, 1)])), None);
        assert_eq!(dict.report_anchor(RleTrie::ROOT), None);
    }

    #[test]
    fn search_run_steps() {
        let dict = build_dictionary(&fig_patterns());
        // From the root, a⁴ descends to a³ through the root table.
        let mut cur = dict.cursor();
        let mut sink = VecSink::default();
        dict.search_run(&mut cur, Run::new(0, 4), &mut sink);
        assert!(sink.occurrences.is_empty());
        assert_eq!(cur.node(), node_at(&dict, &[(0, 3)]));

        // At a³b³ with processed text a⁴b³, run a¹ reports 4@1 and 5@5 and
        // descends to a³b³a¹.
        let mut cur = dict.cursor();
        let mut sink = VecSink::default();
        dict.search_run(&mut cur, Run::new(0, 4), &mut sink);
        dict.search_run(&mut cur, Run::new(1, 3), &mut sink);
        assert_eq!(cur.node(), node_at(&dict, &[(0, 3), (1, 3)]));
        let mut sink = VecSink::default();
        dict.search_run(&mut cur, Run::new(0, 1), &mut sink);
        sink.occurrences.sort_unstable();
        assert_eq!(sink.occurrences, occ(&[(4, 1), (5, 5)]));
        assert_eq!(cur.node(), node_at(&dict, &[(0, 3), (1, 3), (0, 1)]));

        // At a⁵b³a² a following b¹ reports nothing and falls to the root.
        let mut cur = dict.cursor();
        let mut sink = VecSink::default();
        for run in [Run::new(0, 5), Run::new(1, 3), Run::new(0, 2)] {
            dict.search_run(&mut cur, run, &mut sink);
        }
        assert_eq!(cur.node(), node_at(&dict, &[(0, 5), (1, 3), (0, 2)]));
        let mut sink = VecSink::default();
        dict.search_run(&mut cur, Run::new(1, 1), &mut sink);
        assert!(sink.occurrences.is_empty());
        assert_eq!(cur.node(), RleTrie::ROOT);
    }

    #[test]
    fn search_reference_cases() {
        let dict = build_dictionary(&fig_patterns());
        let (got, _) = collect(&dict, &rle(&[(0, 3), (1, 3), (0, 2)]));
        assert_eq!(got, occ(&[(4, 0), (6, 3), (6, 4), (5, 4)]));
        let (got, _) = collect(&dict, &rle(&[(0, 6), (1, 1)]));
        assert_eq!(got, occ(&[(1, 1)]));
        let (got, _) = collect(&dict, &RleString::empty());
        assert!(got.is_empty());
        let (got, _) = collect(&dict, &rle(&[(1, 5)]));
        assert_eq!(got, occ(&[(6, 0), (6, 1), (6, 2), (6, 3)]));
    }

    #[test]
    fn range_sink_keeps_progressions() {
        let dict = build_dictionary(&fig_patterns());
        let mut sink = RangeSink::default();
        dict.search(&rle(&[(1, 5)]), &mut sink);
        assert_eq!(
            sink.ranges,
            vec![RangeRecord { id: 6, start: 0, count: 4 }]
        );
        assert!(sink.points.is_empty());
    }

    #[test]
    fn matches_naive_oracle_on_random_instances() {
        for seed in 0..1_000u64 {
            let cfg = GenConfig { seed, ..GenConfig::default() };
            let (patterns, text) = generate(&cfg);
            let dict = build_dictionary(&patterns);
            let (mut got, stats) = collect(&dict, &text);
            let mut expect = naive_search(&patterns, &text, EXPANSION_LIMIT).unwrap();
            expect.sort_unstable();
            got.sort_unstable();
            assert_eq!(got, expect, "seed {seed}");
            let runs = text.run_count() as u64;
            assert!(stats.failure_follows <= runs, "seed {seed}");
            assert!(stats.edge_descents <= runs, "seed {seed}");
            assert_eq!(stats.runs_processed, runs);
        }
    }

    #[test]
    fn occurrence_starts_are_valid_matches() {
        for seed in 0..200u64 {
            let cfg = GenConfig { seed, ..GenConfig::default() };
            let (patterns, text) = generate(&cfg);
            let dict = build_dictionary(&patterns);
            let (got, _) = collect(&dict, &text);
            let chars = text.decode(EXPANSION_LIMIT).unwrap();
            for o in got {
                let p = patterns.get(o.id).unwrap().full();
                let pc = p.decode(EXPANSION_LIMIT).unwrap();
                let s = o.start as usize;
                assert!(s + pc.len() <= chars.len());
                assert_eq!(&chars[s..s + pc.len()], pc.as_slice());
            }
        }
    }

    #[test]
    fn cursor_tracks_longest_trie_suffix() {
        for seed in 0..300u64 {
            let cfg = GenConfig {
                seed,
                max_text_runs: 20,
                ..GenConfig::default()
            };
            let (patterns, text) = generate(&cfg);
            let dict = build_dictionary(&patterns);
            let node_strings: Vec<Vec<Symbol>> = (0..dict.trie().node_count())
                .map(|v| dict.trie().node_string(v).decode(EXPANSION_LIMIT).unwrap())
                .collect();
            let mut cur = dict.cursor();
            let mut sink = VecSink::default();
            let mut processed: Vec<Symbol> = Vec::new();
            for &run in text.runs() {
                dict.search_run(&mut cur, run, &mut sink);
                for _ in 0..run.len {
                    processed.push(run.ch);
                }
                let best = node_strings
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.len() <= processed.len() && processed.ends_with(s))
                    .max_by_key(|(_, s)| s.len())
                    .map(|(v, _)| v)
                    .unwrap();
                assert_eq!(cur.node(), best, "seed {seed}");
            }
        }
    }

    #[test]
    fn cost_ignores_run_lengths() {
        // Occurrence-free multi-run patterns against (a^L b)^r texts: the
        // navigation path is identical whatever L is.
        let patterns = PatternSet::new(vec![
            rle(&[(0, 3), (1, 3)]),
            rle(&[(1, 2), (0, 1), (1, 1)]),
        ])
        .unwrap();
        let dict = build_dictionary(&patterns);
        let mut sums = Vec::new();
        for exp in [2u32, 4, 6] {
            let len = 10u64.pow(exp);
            let mut runs = Vec::new();
            for _ in 0..64 {
                runs.push(Run::new(0, len));
                runs.push(Run::new(1, 1));
            }
            let text = RleString::from_runs(runs).unwrap();
            let (got, stats) = collect(&dict, &text);
            assert!(got.is_empty());
            sums.push(stats.edge_descents + stats.failure_follows + stats.predecessor_probes);
        }
        assert_eq!(sums[0], sums[1]);
        assert_eq!(sums[1], sums[2]);
    }

    #[test]
    fn duplicate_patterns_all_report() {
        let p = rle(&[(0, 2), (1, 1)]);
        let patterns = PatternSet::new(vec![p.clone(), p]).unwrap();
        let dict = build_dictionary(&patterns);
        let (got, _) = collect(&dict, &rle(&[(0, 2), (1, 1)]));
        assert_eq!(got, occ(&[(1, 0), (2, 0)]));
    }

    #[test]
    fn empty_pattern_is_rejected_upstream() {
        let got = PatternSet::new(vec![RleString::empty()]);
        assert_eq!(got.unwrap_err(), RleError::EmptyPattern(1));
    }
}
