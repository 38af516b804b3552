use alloc::vec::Vec;

use super::Sig2Error;
use crate::gf2::{Gf2Basis, Gf2Vector, Insertion};
use crate::graph::{ClosedWalk, Graph, Vertex};

/// A 4-cycle relator `(a,b) + (c,b) + (c,d) + (a,d)`.
///
/// The quadruples `(a,b,c,d)`, `(c,b,a,d)`, `(a,d,c,b)` and `(c,d,a,b)` give
/// the same vector; the stored representative has `a < c` and `b < d`. Note
/// that `(b,a,d,c)` is a different relator on the same undirected 4-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relator {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
}

impl Relator {
    /// Canonical representative of the class of `(a,b,c,d)`.
    pub fn new(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Self {
        Relator {
            a: a.min(c),
            b: b.min(d),
            c: a.max(c),
            d: b.max(d),
        }
    }

    pub fn quad(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn arcs(&self) -> [(Vertex, Vertex); 4] {
        [
            (self.a, self.b),
            (self.c, self.b),
            (self.c, self.d),
            (self.a, self.d),
        ]
    }

    /// True iff `a != c`, `b != d` and the four edges exist.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.a != self.c && self.b != self.d && self.arcs().iter().all(|&(u, v)| g.has_edge(u, v))
    }

    pub fn vector(&self, g: &Graph) -> Gf2Vector {
        let idx = self
            .arcs()
            .map(|(u, v)| g.arc_index(u, v).expect("relator arcs are edges"));
        Gf2Vector::from_indices(g.arc_count(), idx)
    }
}

/// All relator classes of `g`, ordered by `(a, c, b, d)`.
pub fn enumerate_relators(g: &Graph) -> Vec<Relator> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut common = Vec::new();
    for a in 0..n {
        for c in a + 1..n {
            common.clear();
            let (na, nc) = (g.neighbors(a), g.neighbors(c));
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nc.len() {
                match na[i].cmp(&nc[j]) {
                    core::cmp::Ordering::Less => i += 1,
                    core::cmp::Ordering::Greater => j += 1,
                    core::cmp::Ordering::Equal => {
                        common.push(na[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
            for (k, &b) in common.iter().enumerate() {
                for &d in &common[k + 1..] {
                    if b != a && b != c && d != a && d != c {
                        out.push(Relator { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

/// Upper bound on the rank of the relator span: every functional
/// `(u,v) ↦ α(u) + β(v)` annihilates all relators, and these functionals
/// form a space of dimension `2n - 1` on a connected non-bipartite component
/// (`2n - 2` on a bipartite one).
pub fn rank_upper_bound(g: &Graph) -> usize {
    let mut annihilator = 0;
    for comp in g.connected_components() {
        let sub = g.induced_subgraph(&comp);
        annihilator += 2 * comp.len() - if sub.is_bipartite() { 2 } else { 1 };
    }
    g.arc_count().saturating_sub(annihilator)
}

/// `Z2^{A(H)}` modulo the span of the 4-cycle relators.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    host: Graph,
    relators: Vec<Relator>,
    basis: Gf2Basis,
    /// Relator index for each extending insertion id.
    basis_relators: Vec<usize>,
}

impl QuotientPresentation {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn arc_count(&self) -> usize {
        self.host.arc_count()
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn basis(&self) -> &Gf2Basis {
        &self.basis
    }

    /// Relators whose insertion extended the basis, in insertion order.
    pub fn basis_relators(&self) -> impl Iterator<Item = &Relator> + '_ {
        self.basis_relators.iter().map(|&i| &self.relators[i])
    }

    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        self.basis.reduce(v).expect("vector over the host arcs")
    }
}

fn build(g: &Graph, history: bool) -> QuotientPresentation {
    let relators = enumerate_relators(g);
    let width = g.arc_count();
    let mut basis = if history {
        Gf2Basis::with_history(width)
    } else {
        Gf2Basis::new(width)
    };
    let cap = rank_upper_bound(g);
    let mut basis_relators = Vec::new();
    for (i, r) in relators.iter().enumerate() {
        if basis.rank() >= cap {
            break;
        }
        if let Insertion::Extended { .. } = basis.insert(&r.vector(g)).expect("same width") {
            basis_relators.push(i);
        }
    }
    QuotientPresentation {
        host: g.clone(),
        relators,
        basis,
        basis_relators,
    }
}

/// Relation basis for `g`, relators inserted in enumeration order.
pub fn build_quotient(g: &Graph) -> QuotientPresentation {
    build(g, false)
}

/// Like [`build_quotient`], but able to express span members as sums of
/// relators ([`decompose_into_relators`]).
pub fn build_quotient_with_history(g: &Graph) -> QuotientPresentation {
    build(g, true)
}

fn check_odd_walk(g: &Graph, w: &ClosedWalk) -> Result<(), Sig2Error> {
    if !w.is_odd() {
        return Err(Sig2Error::EvenWalk { len: w.len() });
    }
    if !g.validate_closed_walk(w) {
        return Err(Sig2Error::InvalidWalk);
    }
    Ok(())
}

/// `Σ_i χ(f(2i), f(2i+1)) + χ(f(2i+2), f(2i+1))`, indices mod `n`, before
/// reduction.
pub fn sigma2_raw(g: &Graph, w: &ClosedWalk) -> Result<Gf2Vector, Sig2Error> {
    check_odd_walk(g, w)?;
    let arc = |u, v| g.arc_index(u, v).expect("validated walk");
    let mut v = Gf2Vector::zeros(g.arc_count());
    for i in 0..w.len() {
        v.flip(arc(w.at(2 * i), w.at(2 * i + 1)));
        v.flip(arc(w.at(2 * i + 2), w.at(2 * i + 1)));
    }
    Ok(v)
}

/// `Σ_j χ(f(j), f(j+1)) + χ(f(j+1), f(j))`; equal to [`sigma2_raw`] for odd
/// walks because `i ↦ 2i` permutes `Z_n`.
pub fn sigma2_stepwise(g: &Graph, w: &ClosedWalk) -> Result<Gf2Vector, Sig2Error> {
    check_odd_walk(g, w)?;
    let mut v = Gf2Vector::zeros(g.arc_count());
    for j in 0..w.len() {
        let a = g.arc_index(w.at(j), w.at(j + 1)).expect("validated walk");
        v.flip(a);
        v.flip(g.rev(a));
    }
    Ok(v)
}

/// The signature reduced modulo the relation basis; zero iff `σ₂ = 0`.
pub fn sigma2_of_walk(q: &QuotientPresentation, w: &ClosedWalk) -> Result<Gf2Vector, Sig2Error> {
    Ok(q.reduce(&sigma2_raw(&q.host, w)?))
}

/// Relators summing to `v`. Requires a quotient built with history.
pub fn decompose_into_relators(
    q: &QuotientPresentation,
    v: &Gf2Vector,
) -> Result<Vec<Relator>, Sig2Error> {
    let ids = q
        .basis
        .combination(v)
        .map_err(|_| Sig2Error::NotInSpan)?
        .ok_or(Sig2Error::NotInSpan)?;
    Ok(ids
        .into_iter()
        .map(|id| q.relators[q.basis_relators[id]])
        .collect())
}
