//! Vertex-classed graphs feeding the reductions.
//!
//! A graph has `k` vertex classes with vertices numbered `1..=n_i` per class
//! and an ordered edge list per class pair; the position of an edge in its
//! pair's list (1-based `l`) is meaningful to the instance builders.  A graph
//! is *nice* when all classes have the same size and all pairs the same
//! number of edges.  Pattern graphs name which class pairs a selection must
//! realize as edges.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("need at least two classes, got {0}")]
    BadClassCount(usize),
    #[error("class sizes must be positive")]
    BadClassSize,
    #[error("edge ({a},{b}) for pair ({i},{j}) is out of range")]
    EdgeOutOfRange { i: u32, j: u32, a: u32, b: u32 },
    #[error("pair ({0},{1}) is not an ordered pair of distinct classes")]
    BadPair(u32, u32),
    #[error("edge ({a},{b}) for pair ({i},{j}) already present")]
    DuplicateEdge { i: u32, j: u32, a: u32, b: u32 },
    #[error("padding a {0}-class graph can create new cliques; need at least 3 classes")]
    NicenessUnsafe(u32),
    #[error("cannot place {requested} distinct edges in a {max}-slot pair")]
    TooManyEdges { requested: u32, max: u32 },
    #[error("pattern edge ({0},{1}) is not an ordered pair of distinct classes")]
    BadPatternEdge(u32, u32),
}

/// One vertex per class, identified by 1-based index within its class.
pub type Selection = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteGraph {
    sizes: Vec<u32>,
    /// Ordered edge list per class pair, indexed lexicographically.
    edges: Vec<Vec<(u32, u32)>>,
}

fn pair_position(k: usize, i: u32, j: u32) -> usize {
    // Position of (i, j), i < j, in the lexicographic pair order.
    let i = i as usize - 1;
    let j = j as usize - 1;
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

impl KPartiteGraph {
    pub fn new(sizes: Vec<u32>) -> Result<Self, GraphError> {
        if sizes.len() < 2 {
            return Err(GraphError::BadClassCount(sizes.len()));
        }
        if sizes.iter().any(|&n| n == 0) {
            return Err(GraphError::BadClassSize);
        }
        let k = sizes.len();
        Ok(KPartiteGraph {
            sizes,
            edges: vec![Vec::new(); k * (k - 1) / 2],
        })
    }

    pub fn classes(&self) -> u32 {
        self.sizes.len() as u32
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn class_size(&self, i: u32) -> u32 {
        self.sizes[i as usize - 1]
    }

    fn check_pair(&self, i: u32, j: u32) -> Result<(), GraphError> {
        if i < 1 || j <= i || j > self.classes() {
            return Err(GraphError::BadPair(i, j));
        }
        Ok(())
    }

    /// Appends an edge to the pair's ordered list.
    pub fn add_edge(&mut self, i: u32, j: u32, a: u32, b: u32) -> Result<(), GraphError> {
        self.check_pair(i, j)?;
        if a < 1 || a > self.class_size(i) || b < 1 || b > self.class_size(j) {
            return Err(GraphError::EdgeOutOfRange { i, j, a, b });
        }
        let pos = pair_position(self.sizes.len(), i, j);
        if self.edges[pos].contains(&(a, b)) {
            return Err(GraphError::DuplicateEdge { i, j, a, b });
        }
        self.edges[pos].push((a, b));
        Ok(())
    }

    /// The pair's edges in list order; `l` is the 1-based position here.
    pub fn pair_edges(&self, i: u32, j: u32) -> &[(u32, u32)] {
        &self.edges[pair_position(self.sizes.len(), i, j)]
    }

    pub fn has_edge(&self, i: u32, j: u32, a: u32, b: u32) -> bool {
        self.pair_edges(i, j).contains(&(a, b))
    }

    /// All class pairs in lexicographic order.
    pub fn class_pairs(&self) -> Vec<(u32, u32)> {
        let k = self.classes();
        let mut out = Vec::new();
        for i in 1..=k {
            for j in (i + 1)..=k {
                out.push((i, j));
            }
        }
        out
    }
}

/// Equal class sizes and equal, positive per-pair edge counts.
pub fn is_nice(g: &KPartiteGraph) -> bool {
    let n = g.sizes()[0];
    if !g.sizes().iter().all(|&s| s == n) {
        return false;
    }
    let pairs = g.class_pairs();
    let m = g.pair_edges(pairs[0].0, pairs[0].1).len();
    m >= 1 && pairs.iter().all(|&(i, j)| g.pair_edges(i, j).len() == m)
}

/// Pads a graph to a nice one without changing whether a multicolored clique
/// exists: every missing edge slot is filled by an edge between two fresh
/// degree-one vertices dedicated to that slot, then classes are topped up
/// with isolated vertices.  Fresh vertices cannot join any clique once there
/// are at least three classes, which is why fewer classes are refused.
pub fn make_nice(g: &KPartiteGraph) -> Result<KPartiteGraph, GraphError> {
    if g.classes() < 3 {
        return Err(GraphError::NicenessUnsafe(g.classes()));
    }
    let pairs = g.class_pairs();
    let target_m = pairs
        .iter()
        .map(|&(i, j)| g.pair_edges(i, j).len())
        .max()
        .unwrap()
        .max(1);

    let mut sizes = g.sizes().to_vec();
    let mut padding: Vec<(u32, u32, u32, u32)> = Vec::new();
    for &(i, j) in &pairs {
        for _ in g.pair_edges(i, j).len()..target_m {
            sizes[i as usize - 1] += 1;
            sizes[j as usize - 1] += 1;
            padding.push((i, j, sizes[i as usize - 1], sizes[j as usize - 1]));
        }
    }
    let target_n = *sizes.iter().max().unwrap();

    let mut out = KPartiteGraph::new(vec![target_n; g.classes() as usize])?;
    for &(i, j) in &pairs {
        for &(a, b) in g.pair_edges(i, j) {
            out.add_edge(i, j, a, b)?;
        }
    }
    for (i, j, a, b) in padding {
        out.add_edge(i, j, a, b)?;
    }
    debug_assert!(is_nice(&out));
    Ok(out)
}

/// Pattern on the class set: which pairs a selection must realize as edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    classes: u32,
    edges: Vec<(u32, u32)>,
}

impl PatternGraph {
    pub fn new(classes: u32, mut edges: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        for &(i, j) in &edges {
            if i < 1 || j <= i || j > classes {
                return Err(GraphError::BadPatternEdge(i, j));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(PatternGraph { classes, edges })
    }

    /// Pattern demanding an edge on every class pair.
    pub fn complete(classes: u32) -> Self {
        let mut edges = Vec::new();
        for i in 1..=classes {
            for j in (i + 1)..=classes {
                edges.push((i, j));
            }
        }
        PatternGraph { classes, edges }
    }

    /// Pattern demanding edges along the class path `1-2-...-k`.
    pub fn path(classes: u32) -> Self {
        let edges = (1..classes).map(|i| (i, i + 1)).collect();
        PatternGraph { classes, edges }
    }

    pub fn classes(&self) -> u32 {
        self.classes
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// Whether the selection realizes every pattern edge in the graph.
pub fn selection_satisfies(g: &KPartiteGraph, h: &PatternGraph, sel: &[u32]) -> bool {
    h.edges().iter().all(|&(i, j)| {
        g.has_edge(i, j, sel[i as usize - 1], sel[j as usize - 1])
    })
}

/// Whether the selection is pairwise adjacent across all class pairs.
pub fn is_clique(g: &KPartiteGraph, sel: &[u32]) -> bool {
    selection_satisfies(g, &PatternGraph::complete(g.classes()), sel)
}

fn first_selection_satisfying(g: &KPartiteGraph, h: &PatternGraph) -> Option<Selection> {
    let space: u64 = g.sizes().iter().map(|&n| n as u64).product();
    assert!(
        space <= 10_000_000,
        "selection space {space} beyond brute-force scale"
    );
    let adj: Vec<HashSet<(u32, u32)>> = h
        .edges()
        .iter()
        .map(|&(i, j)| g.pair_edges(i, j).iter().copied().collect())
        .collect();
    let k = g.classes() as usize;
    let mut sel: Selection = vec![1; k];
    loop {
        let ok = h
            .edges()
            .iter()
            .zip(&adj)
            .all(|(&(i, j), set)| set.contains(&(sel[i as usize - 1], sel[j as usize - 1])));
        if ok {
            return Some(sel);
        }
        // Advance the selection odometer, least significant class last.
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if sel[pos] < g.sizes()[pos] {
                sel[pos] += 1;
                break;
            }
            sel[pos] = 1;
        }
    }
}

/// Lexicographically first multicolored clique selection, if any.
pub fn brute_mcc(g: &KPartiteGraph) -> Option<Selection> {
    first_selection_satisfying(g, &PatternGraph::complete(g.classes()))
}

/// Lexicographically first selection realizing the pattern, if any.
pub fn brute_psi(g: &KPartiteGraph, h: &PatternGraph) -> Option<Selection> {
    assert_eq!(g.classes(), h.classes(), "pattern classes must match graph");
    first_selection_satisfying(g, h)
}

/// The 3-class, 4-vertex, 4-edges-per-pair worked example used by the golden
/// tests.  Edge list order follows the figure's drawing order.
pub fn figure1() -> KPartiteGraph {
    let mut g = KPartiteGraph::new(vec![4, 4, 4]).unwrap();
    for (a, b) in [(1, 1), (1, 2), (3, 3), (4, 4)] {
        g.add_edge(1, 2, a, b).unwrap();
    }
    for (a, b) in [(1, 3), (1, 4), (2, 1), (3, 3)] {
        g.add_edge(1, 3, a, b).unwrap();
    }
    for (a, b) in [(1, 4), (1, 3), (2, 3), (3, 2)] {
        g.add_edge(2, 3, a, b).unwrap();
    }
    g
}

/// Seeded nice graph: each pair gets `m` distinct edges drawn uniformly from
/// the `n x n` slots, listed in draw order.  Same seed, same graph.
pub fn random_nice(k: u32, n: u32, m: u32, seed: u64) -> Result<KPartiteGraph, GraphError> {
    if m > n * n {
        return Err(GraphError::TooManyEdges {
            requested: m,
            max: n * n,
        });
    }
    let mut g = KPartiteGraph::new(vec![n; k as usize])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, j) in g.class_pairs() {
        // Partial Fisher-Yates over the n*n slot indices.
        let mut slots: Vec<u32> = (0..n * n).collect();
        for t in 0..m as usize {
            let pick = rng.gen_range(t..slots.len());
            slots.swap(t, pick);
            let (a, b) = (slots[t] / n + 1, slots[t] % n + 1);
            g.add_edge(i, j, a, b)?;
        }
    }
    Ok(g)
}
