//! Generalised Mycielski graphs and homomorphism search.
//!
//! `M_q(G)` is `G × P_q` with the top level collapsed to one apex, where
//! `P_q` is the path `0 - 1 - .. - q` with a loop at `0`. A homomorphism from
//! some `M_q(C_n)`, `n` odd, into `H` certifies that the hom-complex of `H`
//! has coindex at least 2.
//!
//! Vertex numbering of a cone over a graph on `n` vertices: `(i, j)` with
//! `j < q` is `j * n + i`; the apex is `q * n`. Level 0 therefore reuses the
//! base graph's vertex ids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{ClosedWalk, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MycielskiError {
    ZeroHeight,
    LoopedBase,
    /// `class_member(k, heights)` needs `heights.len() == k - 2`, `k >= 2`.
    BadClassParameters {
        k: usize,
        heights: usize,
    },
    NotAHomomorphism {
        edge: (Vertex, Vertex),
    },
    NotOddCycleCone,
}

impl fmt::Display for MycielskiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MycielskiError::ZeroHeight => write!(f, "cone height must be at least 1"),
            MycielskiError::LoopedBase => write!(f, "cone base must be loop-free"),
            MycielskiError::BadClassParameters { k, heights } => {
                write!(
                    f,
                    "class K_{k} needs {} heights, got {heights}",
                    k.saturating_sub(2)
                )
            }
            MycielskiError::NotAHomomorphism { edge } => {
                write!(f, "edge {:?} is not mapped to an edge", edge)
            }
            MycielskiError::NotOddCycleCone => write!(f, "source is not a cone over an odd cycle"),
        }
    }
}

impl core::error::Error for MycielskiError {}

/// Path `0 - 1 - .. - q` with a loop at `0`.
pub fn path_with_loop(q: usize) -> Result<Graph, MycielskiError> {
    if q == 0 {
        return Err(MycielskiError::ZeroHeight);
    }
    let edges = core::iter::once((0, 0)).chain((0..q).map(|i| (i, i + 1)));
    Ok(Graph::new(q + 1, edges, true).expect("valid looped path"))
}

/// `G × G'`: `(u, u')` is vertex `u * |V(G')| + u'`, adjacent to `(v, v')`
/// iff `[u, v] ∈ E(G)` and `[u', v'] ∈ E(G')`.
pub fn categorical_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.vertex_count();
    let id = |u: Vertex, x: Vertex| u * m + x;
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        for &(x, y) in h.edges() {
            edges.push((id(u, x), id(v, y)));
            edges.push((id(u, y), id(v, x)));
        }
    }
    Graph::new(
        g.vertex_count() * m,
        edges,
        g.loop_allowed() && h.loop_allowed(),
    )
    .expect("product edges are valid")
}

/// A cone `M_q(base)` with its level structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledGraph {
    pub graph: Graph,
    pub base: Graph,
    pub q: usize,
    pub level: Vec<usize>,
    pub apex: Vertex,
}

impl LeveledGraph {
    /// Vertex `(i, j)`; every `(i, q)` is the apex.
    pub fn vertex(&self, i: Vertex, j: usize) -> Vertex {
        if j >= self.q {
            self.apex
        } else {
            j * self.base.vertex_count() + i
        }
    }
}

/// `(g × P_q) / ∼_q`.
pub fn mycielskian(g: &Graph, q: usize) -> Result<LeveledGraph, MycielskiError> {
    if g.has_loops() {
        return Err(MycielskiError::LoopedBase);
    }
    let path = path_with_loop(q)?;
    let n = g.vertex_count();
    let product = categorical_product(g, &path);
    let apex = q * n;
    // Product vertex (u, j) is u * (q + 1) + j.
    let collapse = |p: Vertex| {
        let (u, j) = (p / (q + 1), p % (q + 1));
        if j == q {
            apex
        } else {
            j * n + u
        }
    };
    let edges = product
        .edges()
        .iter()
        .map(|&(x, y)| (collapse(x), collapse(y)));
    let graph = Graph::simple(apex + 1, edges).expect("cone of a loop-free graph is loop-free");
    let mut level: Vec<usize> = (0..apex).map(|v| v / n.max(1)).collect();
    level.push(q);
    Ok(LeveledGraph {
        graph,
        base: g.clone(),
        q,
        level,
        apex,
    })
}

/// Iterated cone over `K_2`: `heights[0]` is applied first. A member of the
/// class `K_k` for `k = heights.len() + 2`.
pub fn class_member(k: usize, heights: &[usize]) -> Result<Graph, MycielskiError> {
    if k < 2 || heights.len() != k - 2 {
        return Err(MycielskiError::BadClassParameters {
            k,
            heights: heights.len(),
        });
    }
    let mut g = Graph::complete(2);
    for &q in heights {
        g = mycielskian(&g, q)?.graph;
    }
    Ok(g)
}

/// A vertex map that sends edges to edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<Vertex>,
}

impl Homomorphism {
    pub fn new(source: Graph, target: Graph, map: Vec<Vertex>) -> Result<Self, MycielskiError> {
        let h = Homomorphism {
            source,
            target,
            map,
        };
        h.verify()?;
        Ok(h)
    }

    pub fn identity(g: &Graph) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.vertex_count()).collect(),
        }
    }

    pub fn verify(&self) -> Result<(), MycielskiError> {
        if self.map.len() != self.source.vertex_count()
            || self.map.iter().any(|&v| v >= self.target.vertex_count())
        {
            return Err(MycielskiError::NotAHomomorphism { edge: (0, 0) });
        }
        for &(u, v) in self.source.edges() {
            if !self.target.has_edge(self.map[u], self.map[v]) {
                return Err(MycielskiError::NotAHomomorphism { edge: (u, v) });
            }
        }
        Ok(())
    }
}

#[allow(clippy::large_enum_variant)] // returned once per search
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSearch {
    Found(Homomorphism),
    /// The whole search tree was explored.
    NoneFound,
    /// The node budget ran out first.
    Exhausted,
}

/// Backtracking homomorphism search `g -> h` with forward checking.
///
/// Variables in order of decreasing degree (ties by id), values in increasing
/// id. `budget` counts tentative assignments.
pub fn find_homomorphism(g: &Graph, h: &Graph, budget: u64) -> HomSearch {
    let n = g.vertex_count();
    let m = h.vertex_count();
    if g.has_loops() && !h.has_loops() {
        return HomSearch::NoneFound;
    }
    if n == 0 {
        return HomSearch::Found(Homomorphism {
            source: g.clone(),
            target: h.clone(),
            map: Vec::new(),
        });
    }
    if m == 0 {
        return HomSearch::NoneFound;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));

    let words = m.div_ceil(64);
    let mut nbr_mask = vec![vec![0u64; words]; m];
    for (x, mask) in nbr_mask.iter_mut().enumerate() {
        for &y in h.neighbors(x) {
            mask[y / 64] |= 1 << (y % 64);
        }
    }
    let mut full = vec![u64::MAX; words];
    if !m.is_multiple_of(64) {
        full[words - 1] = (1u64 << (m % 64)) - 1;
    }

    let mut search = HomSearcher {
        g,
        order,
        nbr_mask,
        domains: vec![vec![full; n]],
        map: vec![usize::MAX; n],
        budget,
        nodes: 0,
    };
    match search.run(0) {
        Some(true) => HomSearch::Found(Homomorphism {
            source: g.clone(),
            target: h.clone(),
            map: search.map,
        }),
        Some(false) => HomSearch::NoneFound,
        None => HomSearch::Exhausted,
    }
}

struct HomSearcher<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    nbr_mask: Vec<Vec<u64>>,
    /// Stack of domain snapshots, one per depth.
    domains: Vec<Vec<Vec<u64>>>,
    map: Vec<Vertex>,
    budget: u64,
    nodes: u64,
}

impl HomSearcher<'_> {
    /// `Some(true)` found, `Some(false)` refuted, `None` out of budget.
    fn run(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let v = self.order[depth];
        let dom = self.domains[depth][v].clone();
        for (k, &word) in dom.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let x = k * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.nodes >= self.budget {
                    return None;
                }
                self.nodes += 1;
                let mut next = self.domains[depth].clone();
                let mut wiped = false;
                for &w in self.g.neighbors(v) {
                    if self.map[w] != usize::MAX && w != v {
                        continue;
                    }
                    for (d, mask) in next[w].iter_mut().zip(&self.nbr_mask[x]) {
                        *d &= mask;
                    }
                    if next[w].iter().all(|&d| d == 0) {
                        wiped = true;
                        break;
                    }
                }
                if wiped {
                    continue;
                }
                let single: Vec<u64> = (0..next[v].len())
                    .map(|i| if i == x / 64 { 1 << (x % 64) } else { 0 })
                    .collect();
                next[v] = single;
                self.map[v] = x;
                self.domains.push(next);
                let r = self.run(depth + 1);
                self.domains.pop();
                match r {
                    Some(true) => return Some(true),
                    None => {
                        self.map[v] = usize::MAX;
                        return None;
                    }
                    Some(false) => {}
                }
                self.map[v] = usize::MAX;
            }
        }
        Some(false)
    }
}

/// Outcome of [`coind2_certificate_search`].
#[allow(clippy::large_enum_variant)] // returned once per search
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoindSearch {
    Found {
        q: usize,
        n: usize,
        cone: LeveledGraph,
        hom: Homomorphism,
    },
    /// Every cell was searched exhaustively.
    NoneFound,
    /// No hit, and at least one cell ran out of budget.
    Exhausted,
}

/// Searches `M_q(C_n) -> h` for `q = 1..=max_q` (outer) and odd
/// `n = 3..=max_n` (inner); `budget` applies per cell.
pub fn coind2_certificate_search(
    h: &Graph,
    max_q: usize,
    max_n: usize,
    budget: u64,
) -> CoindSearch {
    let mut exhausted = false;
    for q in 1..=max_q {
        for n in (3..=max_n).step_by(2) {
            let cone = mycielskian(&Graph::cycle(n), q).expect("cycle cone");
            match find_homomorphism(&cone.graph, h, budget) {
                HomSearch::Found(hom) => return CoindSearch::Found { q, n, cone, hom },
                HomSearch::Exhausted => exhausted = true,
                HomSearch::NoneFound => {}
            }
        }
    }
    if exhausted {
        CoindSearch::Exhausted
    } else {
        CoindSearch::NoneFound
    }
}

/// Length of the odd cycle a cone was built over, if it is one.
pub fn odd_cycle_base(cone: &LeveledGraph) -> Option<usize> {
    let n = cone.base.vertex_count();
    (n >= 3 && n % 2 == 1 && cone.base == Graph::cycle(n)).then_some(n)
}

/// The level-0 restriction `i ↦ hom(i, 0)` as a closed walk in the target.
pub fn base_cycle(cone: &LeveledGraph, hom: &Homomorphism) -> Result<ClosedWalk, MycielskiError> {
    let n = odd_cycle_base(cone).ok_or(MycielskiError::NotOddCycleCone)?;
    if hom.source != cone.graph {
        return Err(MycielskiError::NotOddCycleCone);
    }
    hom.verify()?;
    Ok(ClosedWalk::new(hom.map[..n].to_vec()))
}
