//! Static rooted-tree query primitives: Euler tours, level ancestors, path
//! minima on ancestor-descendant paths, and first colored ancestors.
//!
//! Level ancestor and path minima use binary lifting tables. The first
//! colored ancestor index stores, per color, a predecessor set over the Euler
//! entry/exit events of the colored nodes: the predecessor of a query node's
//! entry time is either the entry of the answer itself or the exit of a node
//! whose nearest colored proper ancestor is the answer.

use thiserror::Error;

use crate::order::PredecessorSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("depth {depth} is out of range for a node of depth {node_depth}")]
    DepthOutOfRange { depth: usize, node_depth: usize },
    #[error("node {u} is not an ancestor of node {v}")]
    NotAncestor { u: usize, v: usize },
}

/// Color identifier; the universe is whatever the caller assigns.
pub type ColorId = u32;

/// Per-node color sets.
#[derive(Debug, Clone, Default)]
pub struct ColorAssignment {
    colors: Vec<Vec<ColorId>>,
}

impl ColorAssignment {
    /// One (possibly empty) color set per node; duplicates are dropped.
    pub fn new(mut colors: Vec<Vec<ColorId>>) -> Self {
        for set in &mut colors {
            set.sort_unstable();
            set.dedup();
        }
        ColorAssignment { colors }
    }

    pub fn of(&self, node: usize) -> &[ColorId] {
        &self.colors[node]
    }

    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    pub fn has(&self, node: usize, c: ColorId) -> bool {
        self.colors[node].binary_search(&c).is_ok()
    }
}

/// An immutable rooted tree with parent/children arrays, depths, and an
/// Euler tour. Entry and exit times share one clock, so every node's
/// interval strictly nests inside its ancestors' intervals.
#[derive(Debug, Clone)]
pub struct StaticTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    tin: Vec<u64>,
    tout: Vec<u64>,
    root: usize,
}

impl StaticTree {
    /// Build from a parent array with exactly one root (`None`).
    pub fn from_parents(parents: &[Option<usize>]) -> Self {
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (v, &p) in parents.iter().enumerate() {
            match p {
                Some(p) => children[p].push(v),
                None => {
                    assert!(root.is_none(), "multiple roots");
                    root = Some(v);
                }
            }
        }
        let root = root.expect("tree has a root");
        let mut depth = vec![0usize; n];
        let mut tin = vec![0u64; n];
        let mut tout = vec![0u64; n];
        let mut clock = 0u64;
        let mut visited = 0usize;
        // Iterative Euler tour: (node, next child index).
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        tin[root] = clock;
        clock += 1;
        visited += 1;
        while let Some(&mut (v, ref mut ci)) = stack.last_mut() {
            if *ci < children[v].len() {
                let c = children[v][*ci];
                *ci += 1;
                depth[c] = depth[v] + 1;
                tin[c] = clock;
                clock += 1;
                visited += 1;
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                clock += 1;
                stack.pop();
            }
        }
        assert_eq!(visited, n, "parent array contains a cycle or forest");
        StaticTree {
            parent: parents.to_vec(),
            children,
            depth,
            tin,
            tout,
            root,
        }
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn euler_in(&self, v: usize) -> u64 {
        self.tin[v]
    }

    pub fn euler_out(&self, v: usize) -> u64 {
        self.tout[v]
    }

    /// `u` is an ancestor of `v`, inclusively.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.tin[u] <= self.tin[v] && self.tout[v] <= self.tout[u]
    }
}

fn lifting_parents(tree: &StaticTree) -> Vec<Vec<usize>> {
    let n = tree.node_count();
    let levels = (usize::BITS - n.leading_zeros()).max(1) as usize;
    let mut up = vec![vec![0usize; n]; levels];
    for v in 0..n {
        up[0][v] = tree.parent(v).unwrap_or(v);
    }
    for j in 1..levels {
        for v in 0..n {
            up[j][v] = up[j - 1][up[j - 1][v]];
        }
    }
    up
}

/// Level ancestor queries by binary lifting.
#[derive(Debug, Clone)]
pub struct LevelAncestor {
    up: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl LevelAncestor {
    pub fn build(tree: &StaticTree) -> Self {
        LevelAncestor {
            up: lifting_parents(tree),
            depth: (0..tree.node_count()).map(|v| tree.depth(v)).collect(),
        }
    }

    /// The ancestor of `v` at depth `d` (0 ≤ d ≤ depth(v)).
    pub fn query(&self, v: usize, d: usize) -> Result<usize, TreeError> {
        let node_depth = self.depth[v];
        if d > node_depth {
            return Err(TreeError::DepthOutOfRange {
                depth: d,
                node_depth,
            });
        }
        let mut v = v;
        let mut rise = node_depth - d;
        let mut j = 0;
        while rise > 0 {
            if rise & 1 == 1 {
                v = self.up[j][v];
            }
            rise >>= 1;
            j += 1;
        }
        Ok(v)
    }
}

/// Path-minimum queries on ancestor-descendant paths, by binary lifting.
/// Ties are broken towards the shallowest node so query results are
/// deterministic.
#[derive(Debug, Clone)]
pub struct PathMin {
    up: Vec<Vec<usize>>,
    // best[j][v]: the minimum-weight node among v and its 2^j - 1 nearest
    // proper ancestors, shallowest on ties.
    best: Vec<Vec<usize>>,
    weights: Vec<u64>,
    depth: Vec<usize>,
    tin: Vec<u64>,
    tout: Vec<u64>,
}

impl PathMin {
    pub fn build(tree: &StaticTree, weights: &[u64]) -> Self {
        assert_eq!(weights.len(), tree.node_count());
        let up = lifting_parents(tree);
        let n = tree.node_count();
        let levels = up.len();
        let mut best = vec![vec![0usize; n]; levels];
        for v in 0..n {
            best[0][v] = v;
        }
        for j in 1..levels {
            for v in 0..n {
                let lower = best[j - 1][v];
                let upper = best[j - 1][up[j - 1][v]];
                best[j][v] = if weights[upper] <= weights[lower] {
                    upper
                } else {
                    lower
                };
            }
        }
        PathMin {
            up,
            best,
            weights: weights.to_vec(),
            depth: (0..n).map(|v| tree.depth(v)).collect(),
            tin: (0..n).map(|v| tree.euler_in(v)).collect(),
            tout: (0..n).map(|v| tree.euler_out(v)).collect(),
        }
    }

    /// Minimum-weight node on the inclusive `u..v` path, `u` an ancestor of
    /// `v`; the shallowest such node on ties.
    pub fn query(&self, u: usize, v: usize) -> Result<usize, TreeError> {
        if !(self.tin[u] <= self.tin[v] && self.tout[v] <= self.tout[u]) {
            return Err(TreeError::NotAncestor { u, v });
        }
        let mut cur = v;
        let mut span = self.depth[v] - self.depth[u] + 1;
        let mut winner = v;
        let mut j = 0;
        while span > 0 {
            if span & 1 == 1 {
                let cand = self.best[j][cur];
                if self.weights[cand] <= self.weights[winner] {
                    // cand covers shallower nodes than anything seen so far.
                    winner = cand;
                }
                cur = self.up[j][cur];
            }
            span >>= 1;
            j += 1;
        }
        Ok(winner)
    }
}

#[derive(Debug, Clone, Copy)]
enum FcaEvent {
    /// Entering a colored node.
    Enter(usize),
    /// Leaving a colored node; the answer continues at its nearest colored
    /// proper ancestor, if any.
    Exit(Option<usize>),
}

/// First colored ancestor queries over an Euler tour.
#[derive(Debug, Clone)]
pub struct FirstColoredAncestor {
    // Sparse map color -> events; colors are caller-chosen ids.
    per_color: std::collections::HashMap<ColorId, PredecessorSet<FcaEvent>>,
    tin: Vec<u64>,
    tout: Vec<u64>,
}

impl FirstColoredAncestor {
    pub fn build(tree: &StaticTree, colors: &ColorAssignment) -> Self {
        assert_eq!(colors.node_count(), tree.node_count());
        let mut events: std::collections::HashMap<ColorId, Vec<(u64, FcaEvent)>> =
            std::collections::HashMap::new();
        // One DFS with a per-color stack of open colored nodes gives each
        // colored node its nearest colored proper ancestor.
        let mut open: std::collections::HashMap<ColorId, Vec<usize>> =
            std::collections::HashMap::new();
        let mut stack: Vec<(usize, bool)> = vec![(tree.root(), false)];
        while let Some((v, closing)) = stack.pop() {
            if closing {
                for &c in colors.of(v) {
                    open.get_mut(&c).unwrap().pop();
                }
                continue;
            }
            for &c in colors.of(v) {
                let stack_c = open.entry(c).or_default();
                let above = stack_c.last().copied();
                stack_c.push(v);
                let ev = events.entry(c).or_default();
                ev.push((tree.euler_in(v), FcaEvent::Enter(v)));
                ev.push((tree.euler_out(v), FcaEvent::Exit(above)));
            }
            stack.push((v, true));
            for &c in tree.children(v).iter().rev() {
                stack.push((c, false));
            }
        }
        let per_color = events
            .into_iter()
            .map(|(c, ev)| {
                (
                    c,
                    PredecessorSet::build(ev).expect("euler times are distinct"),
                )
            })
            .collect();
        FirstColoredAncestor {
            per_color,
            tin: (0..tree.node_count()).map(|v| tree.euler_in(v)).collect(),
            tout: (0..tree.node_count()).map(|v| tree.euler_out(v)).collect(),
        }
    }

    /// Nearest ancestor of `v` (inclusive) carrying color `c`.
    pub fn query(&self, v: usize, c: ColorId) -> Option<usize> {
        let set = self.per_color.get(&c)?;
        match set.predecessor(self.tin[v])? {
            (_, &FcaEvent::Enter(u)) => {
                debug_assert!(self.tout[u] > self.tin[v], "entry without exit before query");
                Some(u)
            }
            (_, &FcaEvent::Exit(above)) => above,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<Option<usize>> {
        (0..n)
            .map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v)) })
            .collect()
    }

    #[test]
    fn euler_intervals_characterize_descendants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12);
            let parents = random_tree(&mut rng, n);
            let tree = StaticTree::from_parents(&parents);
            for u in 0..n {
                for v in 0..n {
                    // Walk-up oracle for "u is an ancestor of v".
                    let mut cur = Some(v);
                    let mut anc = false;
                    while let Some(x) = cur {
                        if x == u {
                            anc = true;
                            break;
                        }
                        cur = parents[x];
                    }
                    assert_eq!(tree.is_ancestor(u, v), anc);
                    if u != v && anc {
                        assert!(tree.euler_in(u) < tree.euler_in(v));
                        assert!(tree.euler_out(v) < tree.euler_out(u));
                    }
                }
            }
        }
    }

    #[test]
    fn level_ancestor_examples() {
        // path r - u - v
        let tree = StaticTree::from_parents(&[None, Some(0), Some(1)]);
        let la = LevelAncestor::build(&tree);
        assert_eq!(la.query(2, 0), Ok(0));
        assert_eq!(la.query(2, 2), Ok(2));
        assert_eq!(
            la.query(1, 2),
            Err(TreeError::DepthOutOfRange { depth: 2, node_depth: 1 })
        );
    }

    #[test]
    fn path_min_examples() {
        // path r(5) - a(2) - b(7)
        let tree = StaticTree::from_parents(&[None, Some(0), Some(1)]);
        let pm = PathMin::build(&tree, &[5, 2, 7]);
        assert_eq!(pm.query(0, 2), Ok(1));
        assert_eq!(pm.query(2, 2), Ok(2));
        assert_eq!(pm.query(2, 0), Err(TreeError::NotAncestor { u: 2, v: 0 }));
        // Equal weights: shallowest wins.
        let pm = PathMin::build(&tree, &[4, 4, 4]);
        assert_eq!(pm.query(0, 2), Ok(0));
        assert_eq!(pm.query(1, 2), Ok(1));
    }

    #[test]
    fn first_colored_ancestor_examples() {
        let tree = StaticTree::from_parents(&[None, Some(0), Some(1)]);
        let colors = ColorAssignment::new(vec![vec![1], vec![], vec![1, 2]]);
        let fca = FirstColoredAncestor::build(&tree, &colors);
        assert_eq!(fca.query(2, 2), Some(2), "non-proper: the node itself");
        assert_eq!(fca.query(1, 2), None);
        assert_eq!(fca.query(1, 1), Some(0));
        assert_eq!(fca.query(2, 1), Some(2));
        assert_eq!(fca.query(0, 3), None);
    }

    #[test]
    fn queries_agree_with_walking_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7ee);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=64);
            let parents = random_tree(&mut rng, n);
            let tree = StaticTree::from_parents(&parents);
            let la = LevelAncestor::build(&tree);
            let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=16)).collect();
            let pm = PathMin::build(&tree, &weights);
            let mut sets: Vec<Vec<ColorId>> = Vec::with_capacity(n);
            for _ in 0..n {
                let mut set = Vec::new();
                for c in 0..4 {
                    if rng.gen_bool(0.3) {
                        set.push(c);
                    }
                }
                sets.push(set);
            }
            let colors = ColorAssignment::new(sets);
            let fca = FirstColoredAncestor::build(&tree, &colors);

            let v = rng.gen_range(0..n);
            // Level ancestor vs parent walk.
            let d = rng.gen_range(0..=tree.depth(v));
            let mut cur = v;
            while tree.depth(cur) > d {
                cur = tree.parent(cur).unwrap();
            }
            assert_eq!(la.query(v, d), Ok(cur));

            // Path minimum vs path scan (ancestor picked off v's own path).
            let ud = rng.gen_range(0..=tree.depth(v));
            let u = la.query(v, ud).unwrap();
            let mut path = vec![v];
            let mut cur = v;
            while cur != u {
                cur = tree.parent(cur).unwrap();
                path.push(cur);
            }
            let best = *path
                .iter()
                .rev() // shallowest first so min_by_key keeps it on ties
                .min_by_key(|&&x| weights[x])
                .unwrap();
            assert_eq!(pm.query(u, v), Ok(best));

            // First colored ancestor vs upward walk.
            let c = rng.gen_range(0..4);
            let mut cur = Some(v);
            let mut expect = None;
            while let Some(x) = cur {
                if colors.has(x, c) {
                    expect = Some(x);
                    break;
                }
                cur = tree.parent(x);
            }
            assert_eq!(fca.query(v, c), expect);
        }
    }
}
