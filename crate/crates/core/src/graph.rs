//! Dense finite graphs with a canonical arc enumeration.
//!
//! Vertices are `0..n`. Every edge `[u, v]` gives the two arcs `(u, v)` and
//! `(v, u)`; arcs are numbered in `(tail, head)` lexicographic order, so the
//! arcs leaving `u` occupy a contiguous index range in the same order as the
//! sorted neighbour list of `u`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: Vertex, n: usize },
    LoopNotAllowed { vertex: Vertex },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(
                    f,
                    "vertex {vertex} out of range for a graph on {n} vertices"
                )
            }
            GraphError::LoopNotAllowed { vertex } => {
                write!(f, "loop at vertex {vertex} in a loop-free graph")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// An ordered edge together with its position in the canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
    pub index: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    loop_allowed: bool,
    /// Sorted, each pair normalised to `u <= v`.
    edges: Vec<(Vertex, Vertex)>,
    /// Sorted neighbour lists; a loop at `v` lists `v` once.
    adj: Vec<Vec<Vertex>>,
    /// `arc_start[u]..arc_start[u + 1]` are the arcs with tail `u`.
    arc_start: Vec<usize>,
    arc_rev: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("loop_allowed", &self.loop_allowed)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges.
    pub fn new<I>(n: usize, edges: I, loop_allowed: bool) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v && !loop_allowed {
                return Err(GraphError::LoopNotAllowed { vertex: u });
            }
            list.push(if u <= v { (u, v) } else { (v, u) });
        }
        list.sort_unstable();
        list.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let mut arc_start = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for nb in &adj {
            arc_start.push(acc);
            acc += nb.len();
        }
        arc_start.push(acc);

        let mut g = Graph {
            n,
            loop_allowed,
            edges: list,
            adj,
            arc_start,
            arc_rev: Vec::new(),
        };
        let mut rev = vec![0; acc];
        for u in 0..n {
            for (k, &v) in g.adj[u].iter().enumerate() {
                rev[g.arc_start[u] + k] = g.arc_index(v, u).expect("symmetric adjacency");
            }
        }
        g.arc_rev = rev;
        Ok(g)
    }

    /// Simple loop-free graph.
    pub fn simple<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::new(n, edges, false)
    }

    pub fn empty(n: usize) -> Self {
        Self::simple(n, []).expect("no edges")
    }

    /// The cycle `C_n` on `0..n` with edges `[i, i + 1 mod n]`; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::simple(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::simple(n, edges).expect("valid complete graph")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a + b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::simple(a + b, edges).expect("valid complete bipartite graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_allowed(&self) -> bool {
        self.loop_allowed
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Edges sorted lexicographically, each as `(min, max)`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_rev.len()
    }

    /// Canonical index of the arc `(tail, head)`, if it is an arc.
    pub fn arc_index(&self, tail: Vertex, head: Vertex) -> Option<usize> {
        if tail >= self.n {
            return None;
        }
        self.adj[tail]
            .binary_search(&head)
            .ok()
            .map(|k| self.arc_start[tail] + k)
    }

    pub fn arc(&self, index: usize) -> Arc {
        let tail = self.arc_start.partition_point(|&s| s <= index) - 1;
        let head = self.adj[tail][index - self.arc_start[tail]];
        Arc { tail, head, index }
    }

    pub fn rev(&self, index: usize) -> usize {
        self.arc_rev[index]
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u].iter().enumerate().map(move |(k, &v)| Arc {
                tail: u,
                head: v,
                index: self.arc_start[u] + k,
            })
        })
    }

    /// Partition into connected components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `vertices` (sorted, distinct); vertex `i` of the
    /// result is `vertices[i]` of `self`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Graph::new(vertices.len(), edges, self.loop_allowed).expect("induced edges are valid")
    }

    /// A proper 2-colouring or an odd closed walk, never both.
    pub fn bipartition(&self) -> Bipartition {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartition::OddWalk(odd_walk_through(&parent, s, u, v));
                    }
                }
            }
        }
        Bipartition::Bipartite(color)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite(_))
    }

    /// True iff every cyclically consecutive pair of `walk` is an edge. Walks
    /// of length 2 never validate (they would need a doubled edge), and a
    /// length-1 walk needs a loop.
    pub fn validate_closed_walk(&self, walk: &ClosedWalk) -> bool {
        let len = walk.len();
        if len == 0 || len == 2 {
            return false;
        }
        (0..len).all(|i| self.has_edge(walk.at(i), walk.at(i + 1)))
    }
}

/// Closed walk `root -> .. -> u -> v -> .. -> root` along BFS tree paths.
fn odd_walk_through(parent: &[usize], root: Vertex, u: Vertex, v: Vertex) -> ClosedWalk {
    let path_to = |mut x: Vertex| {
        let mut p = vec![x];
        while x != root {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        p
    };
    let mut seq = path_to(u);
    let mut back = path_to(v);
    back.reverse();
    // `back` ends at the root, which is already the first vertex of the walk.
    back.pop();
    seq.extend(back);
    ClosedWalk::new(seq)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Colour (0 or 1) per vertex.
    Bipartite(Vec<u8>),
    OddWalk(ClosedWalk),
}

/// Cyclic vertex sequence `v_0, .., v_{n-1}`; the step from `v_{n-1}` back to
/// `v_0` is implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    vertices: Vec<Vertex>,
}

impl ClosedWalk {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        ClosedWalk { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Vertex at position `i` taken modulo the length.
    pub fn at(&self, i: usize) -> Vertex {
        self.vertices[i % self.vertices.len()]
    }

    pub fn reversed(&self) -> ClosedWalk {
        let mut v = self.vertices.clone();
        v.reverse();
        ClosedWalk::new(v)
    }

    /// The walk started `k` positions later.
    pub fn rotated(&self, k: usize) -> ClosedWalk {
        let mut v = self.vertices.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        ClosedWalk::new(v)
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcs_are_canonical_and_reversible() {
        let g = Graph::complete(4);
        assert_eq!(g.arc_count(), 12);
        let arcs: Vec<_> = g.arcs().collect();
        for w in arcs.windows(2) {
            assert!((w[0].tail, w[0].head) < (w[1].tail, w[1].head));
        }
        for a in &arcs {
            assert_eq!(g.arc(a.index), *a);
            let r = g.arc(g.rev(a.index));
            assert_eq!((r.tail, r.head), (a.head, a.tail));
            assert_eq!(g.rev(g.rev(a.index)), a.index);
        }
    }

    #[test]
    fn duplicates_collapse_and_loops_are_checked() {
        let g = Graph::simple(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(
            Graph::simple(2, [(1, 1)]),
            Err(GraphError::LoopNotAllowed { vertex: 1 })
        );
        assert!(matches!(
            Graph::simple(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        let looped = Graph::new(2, [(0, 0), (0, 1)], true).unwrap();
        assert_eq!(looped.arc_count(), 3);
        let l = looped.arc_index(0, 0).unwrap();
        assert_eq!(looped.rev(l), l);
    }

    #[test]
    fn bipartition_witnesses() {
        match Graph::complete_bipartite(3, 3).bipartition() {
            Bipartition::Bipartite(c) => assert_eq!(c, vec![0, 0, 0, 1, 1, 1]),
            other => panic!("unexpected {other:?}"),
        }
        let c5 = Graph::cycle(5);
        match c5.bipartition() {
            Bipartition::OddWalk(w) => {
                assert_eq!(w.len(), 5);
                assert!(c5.validate_closed_walk(&w));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::simple(2, [(0, 1)]).unwrap().is_bipartite());
    }

    #[test]
    fn closed_walk_validation() {
        let k4 = Graph::complete(4);
        assert!(k4.validate_closed_walk(&ClosedWalk::new(vec![0, 1, 2])));
        assert!(!Graph::cycle(5).validate_closed_walk(&ClosedWalk::new(vec![0, 1, 2])));
        assert!(!k4.validate_closed_walk(&ClosedWalk::new(vec![0, 1])));
        assert!(!k4.validate_closed_walk(&ClosedWalk::new(vec![])));
    }

    #[test]
    fn components() {
        assert_eq!(Graph::complete(4).connected_components().len(), 1);
        let two = Graph::simple(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            two.connected_components(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert_eq!(Graph::empty(3).connected_components().len(), 3);
        let sub = two.induced_subgraph(&[3, 4, 5]);
        assert_eq!(sub, Graph::complete(3));
    }
}
