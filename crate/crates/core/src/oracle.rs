//! Brute-force ground truth, kept independent of the code it checks: its own
//! arc numbering, relator enumeration, elimination and walk evaluation.
//! Intended for graphs of at most a few dozen arcs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{ClosedWalk, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { limit: usize },
    LoopsPresent,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { limit } => write!(f, "input exceeds the oracle limit {limit}"),
            OracleError::LoopsPresent => write!(f, "graph has loops"),
        }
    }
}

impl core::error::Error for OracleError {}

/// Arcs in lexicographic `(tail, head)` order, at most 128.
pub const MAX_ORACLE_ARCS: usize = 128;
/// Largest arc count for [`exhaustive_detect_literal`].
pub const MAX_LITERAL_ARCS: usize = 24;
/// Largest edge count for [`exhaustive_detect`].
pub const MAX_EDGEWISE_EDGES: usize = 24;

struct ArcTable {
    n: usize,
    id: Vec<Option<usize>>,
    list: Vec<(Vertex, Vertex)>,
}

impl ArcTable {
    fn new(g: &Graph) -> Result<Self, OracleError> {
        if g.has_loops() {
            return Err(OracleError::LoopsPresent);
        }
        let n = g.vertex_count();
        let mut id = vec![None; n * n];
        let mut list = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if g.has_edge(u, v) {
                    id[u * n + v] = Some(list.len());
                    list.push((u, v));
                }
            }
        }
        if list.len() > MAX_ORACLE_ARCS {
            return Err(OracleError::TooLarge {
                limit: MAX_ORACLE_ARCS,
            });
        }
        Ok(ArcTable { n, id, list })
    }

    fn bit(&self, u: Vertex, v: Vertex) -> u128 {
        1u128 << self.id[u * self.n + v].expect("arc")
    }
}

/// Span of the 4-cycle relators, from every ordered quadruple.
struct RelatorSpan {
    /// `rows[k]` has highest set bit `k`, or is zero.
    rows: [u128; 128],
}

impl RelatorSpan {
    fn new(g: &Graph, arcs: &ArcTable) -> Self {
        let mut span = RelatorSpan { rows: [0; 128] };
        let n = g.vertex_count();
        for a in 0..n {
            for c in 0..n {
                if a == c {
                    continue;
                }
                for b in 0..n {
                    for d in 0..n {
                        if b == d
                            || !g.has_edge(a, b)
                            || !g.has_edge(c, b)
                            || !g.has_edge(c, d)
                            || !g.has_edge(a, d)
                        {
                            continue;
                        }
                        span.insert(
                            arcs.bit(a, b) ^ arcs.bit(c, b) ^ arcs.bit(c, d) ^ arcs.bit(a, d),
                        );
                    }
                }
            }
        }
        span
    }

    fn reduce(&self, mut v: u128) -> u128 {
        while v != 0 {
            let k = 127 - v.leading_zeros() as usize;
            if self.rows[k] == 0 {
                break;
            }
            v ^= self.rows[k];
        }
        v
    }

    fn insert(&mut self, v: u128) {
        let r = self.reduce(v);
        if r != 0 {
            self.rows[127 - r.leading_zeros() as usize] = r;
        }
    }

    fn contains(&self, v: u128) -> bool {
        let mut v = v;
        for k in (0..128).rev() {
            if v >> k & 1 == 1 {
                if self.rows[k] == 0 {
                    return false;
                }
                v ^= self.rows[k];
            }
        }
        true
    }
}

/// YES carries a satisfying assignment, one bit per arc in lexicographic
/// `(tail, head)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Yes { assignment: u128 },
    No,
}

impl OracleVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleVerdict::Yes { .. })
    }
}

fn satisfies(g: &Graph, arcs: &ArcTable, span: &RelatorSpan, x: u128) -> bool {
    if x.count_ones().is_multiple_of(2) {
        return false;
    }
    for u in 0..g.vertex_count() {
        let mut deg = 0u32;
        for v in 0..g.vertex_count() {
            if g.has_edge(u, v) {
                deg += (x & arcs.bit(u, v) != 0) as u32 + (x & arcs.bit(v, u) != 0) as u32;
            }
        }
        if deg % 2 == 1 {
            return false;
        }
    }
    let mut y = 0u128;
    for &(u, v) in &arcs.list {
        if (x & arcs.bit(u, v) != 0) != (x & arcs.bit(v, u) != 0) {
            y |= arcs.bit(u, v);
        }
    }
    span.contains(y)
}

/// Tries every assignment of the arc variables; at most
/// [`MAX_LITERAL_ARCS`] arcs.
pub fn exhaustive_detect_literal(g: &Graph) -> Result<OracleVerdict, OracleError> {
    let arcs = ArcTable::new(g)?;
    if arcs.list.len() > MAX_LITERAL_ARCS {
        return Err(OracleError::TooLarge {
            limit: MAX_LITERAL_ARCS,
        });
    }
    let span = RelatorSpan::new(g, &arcs);
    for x in 0u128..1 << arcs.list.len() {
        if satisfies(g, &arcs, &span, x) {
            return Ok(OracleVerdict::Yes { assignment: x });
        }
    }
    Ok(OracleVerdict::No)
}

/// Every constraint depends on `X` only through `X_{u,v} + X_{v,u}` per
/// edge, so it suffices to try the assignments with `X_{v,u} = 0` for
/// `u < v`: one bit per edge. At most [`MAX_EDGEWISE_EDGES`] edges.
pub fn exhaustive_detect(g: &Graph) -> Result<OracleVerdict, OracleError> {
    let arcs = ArcTable::new(g)?;
    let edges: Vec<(Vertex, Vertex)> = arcs.list.iter().copied().filter(|&(u, v)| u < v).collect();
    if edges.len() > MAX_EDGEWISE_EDGES {
        return Err(OracleError::TooLarge {
            limit: MAX_EDGEWISE_EDGES,
        });
    }
    let span = RelatorSpan::new(g, &arcs);
    for code in 0u64..1 << edges.len() {
        let mut x = 0u128;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if code >> i & 1 == 1 {
                x |= arcs.bit(u, v);
            }
        }
        if satisfies(g, &arcs, &span, x) {
            return Ok(OracleVerdict::Yes { assignment: x });
        }
    }
    Ok(OracleVerdict::No)
}

/// First closed walk of odd length `≤ max_len` whose signature lies in the
/// relator span, in order of length, then least start vertex, then
/// lexicographic continuation. Walks are listed from their least vertex.
pub fn exhaustive_walk_scan(g: &Graph, max_len: usize) -> Result<Option<ClosedWalk>, OracleError> {
    let arcs = ArcTable::new(g)?;
    if max_len > 31 {
        return Err(OracleError::TooLarge { limit: 31 });
    }
    let span = RelatorSpan::new(g, &arcs);
    let mut len = 3;
    while len <= max_len {
        for s in 0..g.vertex_count() {
            let mut walk = vec![s];
            if scan_from(g, &arcs, &span, len, &mut walk, 0) {
                return Ok(Some(ClosedWalk::new(walk)));
            }
        }
        len += 2;
    }
    Ok(None)
}

/// Each step `u -> v` flips both `(u,v)` and `(v,u)`.
fn scan_from(
    g: &Graph,
    arcs: &ArcTable,
    span: &RelatorSpan,
    len: usize,
    walk: &mut Vec<Vertex>,
    sig: u128,
) -> bool {
    let s = walk[0];
    let u = *walk.last().expect("nonempty");
    if walk.len() == len {
        if !g.has_edge(u, s) {
            return false;
        }
        return span.contains(sig ^ arcs.bit(u, s) ^ arcs.bit(s, u));
    }
    for v in s..g.vertex_count() {
        if !g.has_edge(u, v) {
            continue;
        }
        walk.push(v);
        if scan_from(
            g,
            arcs,
            span,
            len,
            walk,
            sig ^ arcs.bit(u, v) ^ arcs.bit(v, u),
        ) {
            return true;
        }
        walk.pop();
    }
    false
}

/// Least `k ≤ k_max` with a proper `k`-colouring; `None` if there is none
/// (always `None` with loops).
///
/// A greedy clique is coloured `0, 1, ..` up front, which loses no
/// generality; the rest is coloured by backtracking in order of decreasing
/// degree.
pub fn chromatic_number(g: &Graph, k_max: usize) -> Option<usize> {
    if g.has_loops() {
        return None;
    }
    let n = g.vertex_count();
    if n == 0 {
        return Some(0);
    }
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<Vertex> = Vec::new();
    for &v in &by_degree {
        if clique.iter().all(|&c| g.has_edge(c, v)) {
            clique.push(v);
        }
    }
    let rest: Vec<Vertex> = by_degree
        .into_iter()
        .filter(|v| !clique.contains(v))
        .collect();
    for k in clique.len()..=k_max {
        let mut colour = vec![usize::MAX; n];
        for (i, &c) in clique.iter().enumerate() {
            colour[c] = i;
        }
        if colour_rest(g, k, &rest, 0, &mut colour) {
            return Some(k);
        }
    }
    None
}

fn colour_rest(g: &Graph, k: usize, order: &[Vertex], i: usize, colour: &mut [usize]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    for c in 0..k {
        if g.neighbors(v).iter().all(|&w| colour[w] != c) {
            colour[v] = c;
            if colour_rest(g, k, order, i + 1, colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Graph isomorphism by backtracking with degree pruning.
pub fn is_graph_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso(a, b, 0, &mut map, &mut used)
}

fn iso(a: &Graph, b: &Graph, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if x == a.vertex_count() {
        return true;
    }
    for y in 0..b.vertex_count() {
        if used[y] || a.degree(x) != b.degree(y) || a.has_edge(x, x) != b.has_edge(y, y) {
            continue;
        }
        if (0..x).any(|z| a.has_edge(x, z) != b.has_edge(y, map[z])) {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if iso(a, b, x + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

/// One representative per isomorphism class of simple graphs on `n ≤ 7`
/// vertices: the labelled graph whose edge code is least among all
/// relabellings.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "enumeration is exponential in n^2");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut pair_id = vec![0usize; n * n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_id[u * n + v] = i;
        pair_id[v * n + u] = i;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for code in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                let mut c = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if code >> i & 1 == 1 {
                        c |= 1 << pair_id[p[u] * n + p[v]];
                    }
                }
                c
            })
            .min()
            .unwrap_or(code);
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|code| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::simple(n, edges).expect("simple graph")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mycielski::{class_member, mycielskian};

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(4), 6), Some(4));
        assert_eq!(chromatic_number(&Graph::cycle(5), 6), Some(3));
        assert_eq!(chromatic_number(&Graph::cycle(6), 6), Some(2));
        assert_eq!(chromatic_number(&Graph::empty(3), 6), Some(1));
        let grotzsch = class_member(4, &[2, 2]).unwrap();
        assert_eq!(chromatic_number(&grotzsch, 6), Some(4));
        assert_eq!(chromatic_number(&grotzsch, 3), None);
        for q in 1..=4 {
            assert_eq!(chromatic_number(&Graph::cycle(2 * q + 1), 6), Some(3));
        }
        let m3 = mycielskian(&Graph::cycle(5), 3).unwrap().graph;
        assert_eq!(chromatic_number(&m3, 6), Some(4));
    }

    #[test]
    fn detection_fixtures() {
        assert_eq!(exhaustive_detect(&Graph::cycle(5)), Ok(OracleVerdict::No));
        assert!(exhaustive_detect(&Graph::complete(4)).unwrap().is_yes());
        assert_eq!(
            exhaustive_detect(&Graph::complete_bipartite(3, 3)),
            Ok(OracleVerdict::No)
        );
        assert_eq!(
            exhaustive_detect_literal(&Graph::cycle(5)),
            Ok(OracleVerdict::No)
        );
        assert_eq!(
            exhaustive_detect_literal(&Graph::complete(6)),
            Err(OracleError::TooLarge { limit: 24 })
        );
    }

    #[test]
    fn literal_and_edgewise_agree() {
        for n in 3..=5 {
            for g in graphs_up_to_isomorphism(n) {
                if g.arc_count() > 16 {
                    continue;
                }
                assert_eq!(
                    exhaustive_detect(&g).unwrap().is_yes(),
                    exhaustive_detect_literal(&g).unwrap().is_yes(),
                    "{:?}",
                    g.edges()
                );
            }
        }
    }

    #[test]
    fn walk_scans() {
        let w = exhaustive_walk_scan(&Graph::complete(4), 9)
            .unwrap()
            .unwrap();
        assert!(w.is_odd() && Graph::complete(4).validate_closed_walk(&w));
        assert_eq!(exhaustive_walk_scan(&Graph::cycle(5), 15), Ok(None));
        assert_eq!(
            exhaustive_walk_scan(&Graph::complete_bipartite(2, 3), 11),
            Ok(None)
        );
    }

    #[test]
    fn isomorphism_classes() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
        assert!(is_graph_isomorphic(
            &Graph::cycle(5),
            &Graph::simple(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap()
        ));
        assert!(!is_graph_isomorphic(
            &Graph::cycle(6),
            &Graph::simple(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
        ));
    }
}
