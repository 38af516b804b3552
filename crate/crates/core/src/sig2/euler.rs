use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{ClosedWalk, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerError {
    /// Token vector length differs from the arc count.
    WrongLength {
        expected: usize,
        found: usize,
    },
    EmptySupport,
    EvenTokenCount {
        count: u64,
    },
    OddDegree {
        vertex: usize,
    },
    DisconnectedSupport,
}

impl fmt::Display for EulerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerError::WrongLength { expected, found } => {
                write!(f, "token vector has length {found}, expected {expected}")
            }
            EulerError::EmptySupport => write!(f, "no tokens"),
            EulerError::EvenTokenCount { count } => write!(f, "even token count {count}"),
            EulerError::OddDegree { vertex } => write!(f, "odd token degree at vertex {vertex}"),
            EulerError::DisconnectedSupport => write!(f, "token support is disconnected"),
        }
    }
}

impl core::error::Error for EulerError {}

/// Closed walk using every edge `[u, v]` exactly `tokens[(u,v)] + tokens[(v,u)]`
/// times, in either direction.
///
/// Requires a connected token support, even token degree at every vertex and
/// an odd total, so the walk has odd length. Hierholzer's algorithm with edges
/// taken in arc order, starting from the least vertex of the support.
pub fn extract_euler_walk(g: &Graph, tokens: &[u32]) -> Result<ClosedWalk, EulerError> {
    if tokens.len() != g.arc_count() {
        return Err(EulerError::WrongLength {
            expected: g.arc_count(),
            found: tokens.len(),
        });
    }
    let n = g.vertex_count();
    // Undirected multi-edges, one entry per copy.
    let mut ends: Vec<(usize, usize)> = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let a = g.arc_index(u, v).expect("edge arc");
        let r = g.rev(a);
        let mult = if a == r {
            tokens[a]
        } else {
            tokens[a] + tokens[r]
        };
        for _ in 0..mult {
            let id = ends.len();
            ends.push((u, v));
            incident[u].push(id);
            if u != v {
                incident[v].push(id);
            }
        }
    }
    let total = ends.len() as u64;
    if total == 0 {
        return Err(EulerError::EmptySupport);
    }
    if total.is_multiple_of(2) {
        return Err(EulerError::EvenTokenCount { count: total });
    }
    for (v, inc) in incident.iter().enumerate() {
        let loops = inc.iter().filter(|&&e| ends[e].0 == ends[e].1).count();
        if (inc.len() + loops) % 2 == 1 {
            return Err(EulerError::OddDegree { vertex: v });
        }
    }

    let start = (0..n)
        .find(|&v| !incident[v].is_empty())
        .expect("nonempty support");
    let mut used = vec![false; ends.len()];
    let mut cursor = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(ends.len() + 1);
    while let Some(&v) = stack.last() {
        let inc = &incident[v];
        while cursor[v] < inc.len() && used[inc[cursor[v]]] {
            cursor[v] += 1;
        }
        if cursor[v] == inc.len() {
            circuit.push(v);
            stack.pop();
        } else {
            let e = inc[cursor[v]];
            used[e] = true;
            let (x, y) = ends[e];
            stack.push(if x == v { y } else { x });
        }
    }
    if used.iter().any(|&u| !u) {
        return Err(EulerError::DisconnectedSupport);
    }
    circuit.reverse();
    circuit.pop();
    Ok(ClosedWalk::new(circuit))
}
