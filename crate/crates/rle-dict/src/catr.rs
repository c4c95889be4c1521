//! Colored ancestor threshold reporting: given a node, a color, and a weight
//! threshold, report every ancestor carrying that color with weight at most
//! the threshold.
//!
//! Per color, the colored nodes form an induced forest that preserves the
//! ancestor relation of the base tree; a virtual root stitches the
//! components together so one level-ancestor and one path-minima index cover
//! the whole forest. A query locates the deepest colored ancestor, then
//! repeatedly splits the root-to-node path in the induced tree around
//! minimum-weight nodes, emitting each node under the threshold and
//! recursing on both sides, so the work beyond the initial lookup is
//! proportional to the number of answers.

use std::collections::HashMap;

use thiserror::Error;

use crate::tree::{ColorAssignment, ColorId, FirstColoredAncestor, LevelAncestor, PathMin, StaticTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatrError {
    #[error("no weight for node {node} and color {color}")]
    WeightMissing { node: usize, color: ColorId },
}

#[derive(Debug, Clone)]
struct InducedTree {
    /// Induced id -> base node; entry 0 is the virtual root.
    base_of: Vec<usize>,
    tree: StaticTree,
    la: LevelAncestor,
    pm: PathMin,
    weights: Vec<u64>,
}

/// Query counters, used to check the reporting-sensitive work bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CatrStats {
    pub path_min_calls: u64,
}

/// The colored ancestor threshold reporting index.
#[derive(Debug, Clone)]
pub struct CatrIndex {
    fca: FirstColoredAncestor,
    per_color: HashMap<ColorId, InducedTree>,
    /// Base node -> color -> induced node id.
    color_node: Vec<HashMap<ColorId, usize>>,
}

/// Build the index. `weights` must define a weight for exactly every
/// `(node, color in C_node)` pair.
pub fn build_catr(
    tree: &StaticTree,
    colors: &ColorAssignment,
    weights: &HashMap<(usize, ColorId), u64>,
) -> Result<CatrIndex, CatrError> {
    assert_eq!(colors.node_count(), tree.node_count());
    // One DFS with a per-color stack of open induced nodes links every
    // colored node to its nearest colored proper ancestor.
    struct PerColor {
        nodes: Vec<usize>,            // base nodes in preorder
        parent: Vec<Option<usize>>,   // induced parent (pre-virtual-root)
        weight: Vec<u64>,
    }
    let mut building: HashMap<ColorId, PerColor> = HashMap::new();
    let mut color_node: Vec<HashMap<ColorId, usize>> =
        vec![HashMap::new(); tree.node_count()];
    let mut open: HashMap<ColorId, Vec<usize>> = HashMap::new();
    let mut stack: Vec<(usize, bool)> = vec![(tree.root(), false)];
    while let Some((v, closing)) = stack.pop() {
        if closing {
            for &c in colors.of(v) {
                open.get_mut(&c).unwrap().pop();
            }
            continue;
        }
        for &c in colors.of(v) {
            let w = *weights
                .get(&(v, c))
                .ok_or(CatrError::WeightMissing { node: v, color: c })?;
            let pc = building.entry(c).or_insert_with(|| PerColor {
                nodes: Vec::new(),
                parent: Vec::new(),
                weight: Vec::new(),
            });
            let stack_c = open.entry(c).or_default();
            let id = pc.nodes.len();
            pc.nodes.push(v);
            pc.parent.push(stack_c.last().copied());
            pc.weight.push(w);
            stack_c.push(id);
            color_node[v].insert(c, id);
        }
        stack.push((v, true));
        for &ch in tree.children(v).iter().rev() {
            stack.push((ch, false));
        }
    }

    let per_color = building
        .into_iter()
        .map(|(c, pc)| {
            // Shift by one to make room for the virtual root at index 0.
            let n = pc.nodes.len();
            let mut parents: Vec<Option<usize>> = Vec::with_capacity(n + 1);
            parents.push(None);
            for i in 0..n {
                parents.push(Some(pc.parent[i].map_or(0, |p| p + 1)));
            }
            let mut base_of = Vec::with_capacity(n + 1);
            base_of.push(usize::MAX);
            base_of.extend_from_slice(&pc.nodes);
            let mut w = Vec::with_capacity(n + 1);
            w.push(u64::MAX);
            w.extend_from_slice(&pc.weight);
            let forest = StaticTree::from_parents(&parents);
            let la = LevelAncestor::build(&forest);
            let pm = PathMin::build(&forest, &w);
            (
                c,
                InducedTree {
                    base_of,
                    tree: forest,
                    la,
                    pm,
                    weights: w,
                },
            )
        })
        .collect();

    Ok(CatrIndex {
        fca: FirstColoredAncestor::build(tree, colors),
        per_color,
        color_node,
    })
}

impl CatrIndex {
    /// Induced tree of one color as `(base node, base node of induced
    /// parent)` pairs, in preorder of the base tree.
    pub fn induced_tree(&self, c: ColorId) -> Vec<(usize, Option<usize>)> {
        let Some(it) = self.per_color.get(&c) else {
            return Vec::new();
        };
        (1..it.base_of.len())
            .map(|i| {
                let p = it.tree.parent(i).expect("non-virtual nodes have parents");
                let parent_base = if p == 0 { None } else { Some(it.base_of[p]) };
                (it.base_of[i], parent_base)
            })
            .collect()
    }
}

/// All ancestors of `v` (inclusive) carrying color `c` with weight ≤ `w`,
/// in discovery order, with query counters.
pub fn catr_query_with_stats(
    ix: &CatrIndex,
    v: usize,
    c: ColorId,
    w: u64,
) -> (Vec<usize>, CatrStats) {
    let mut stats = CatrStats::default();
    let mut out = Vec::new();
    let Some(top) = ix.fca.query(v, c) else {
        return (out, stats);
    };
    let it = &ix.per_color[&c];
    let vc = ix.color_node[top][&c] + 1;
    // Component root: depth 1, right under the virtual root.
    let rc = it.la.query(vc, 1).expect("colored node is below the virtual root");
    let mut pending = vec![(rc, vc)];
    while let Some((a, b)) = pending.pop() {
        let x = it.pm.query(a, b).expect("a is an ancestor of b");
        stats.path_min_calls += 1;
        if it.weights[x] > w {
            continue;
        }
        out.push(it.base_of[x]);
        if x != a {
            pending.push((a, it.tree.parent(x).expect("x is below a")));
        }
        if x != b {
            let child = it
                .la
                .query(b, it.tree.depth(x) + 1)
                .expect("x is a proper ancestor of b");
            pending.push((child, b));
        }
    }
    (out, stats)
}

/// [`catr_query_with_stats`] without the counters.
pub fn catr_query(ix: &CatrIndex, v: usize, c: ColorId, w: u64) -> Vec<usize> {
    catr_query_with_stats(ix, v, c, w).0
}
