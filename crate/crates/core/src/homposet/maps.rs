use alloc::vec;
use alloc::vec::Vec;

use super::{
    induced_hat, q_poset, strict_order_indicator, validate_order_map, PosetError, Z2Poset,
};
use crate::gf2::Gf2Vector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSearch {
    Found(Vec<usize>),
    /// The whole search tree was explored.
    NoneFound,
    /// The node budget ran out first.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEnumeration {
    pub maps: Vec<Vec<usize>>,
    /// Every map was listed: neither `limit` nor the budget cut the search.
    pub complete: bool,
}

/// Order-preserving and `f(-x) = -f(x)`.
pub fn validate_z2_map(p: &Z2Poset, q: &Z2Poset, f: &[usize]) -> Result<(), PosetError> {
    validate_order_map(p.poset(), q.poset(), f)?;
    for x in 0..p.len() {
        if f[p.inv(x)] != q.inv(f[x]) {
            return Err(PosetError::NotEquivariant { x });
        }
    }
    Ok(())
}

/// Backtracking over involution orbits: each step fixes one orbit
/// representative and forces its antipode, then filters the domains of all
/// comparable elements. The orbit with the fewest consistent values goes
/// first (ties to the lowest index); values are tried in increasing order.
/// `budget` counts tentative assignments.
pub fn z2_map_search(p: &Z2Poset, q: &Z2Poset, budget: u64) -> MapSearch {
    let mut s = Searcher::new(p, q, budget, 1);
    match s.run() {
        Flow::Budget => MapSearch::Exhausted,
        _ => match s.found.pop() {
            Some(f) => MapSearch::Found(f),
            None => MapSearch::NoneFound,
        },
    }
}

/// Lists up to `limit` Z2-maps in search order.
pub fn enumerate_z2_maps(p: &Z2Poset, q: &Z2Poset, limit: usize, budget: u64) -> MapEnumeration {
    let mut s = Searcher::new(p, q, budget, limit);
    let flow = s.run();
    MapEnumeration {
        complete: matches!(flow, Flow::Continue),
        maps: s.found,
    }
}

/// For a Z2-map `f` from a crown to `Q_1`: whether `f̂(soi P) = soi Q_1`.
pub fn verify_odd_degree(p: &Z2Poset, f: &[usize]) -> Result<bool, PosetError> {
    let q1 = q_poset(1);
    validate_z2_map(p, &q1, f)?;
    let hat = induced_hat(p.poset(), q1.poset(), f)?;
    Ok(hat.apply(&strict_order_indicator(p.poset())) == strict_order_indicator(q1.poset()))
}

enum Flow {
    Continue,
    Limit,
    Budget,
}

struct Searcher<'a> {
    p: &'a Z2Poset,
    q: &'a Z2Poset,
    reps: Vec<usize>,
    map: Vec<usize>,
    budget: u64,
    nodes: u64,
    limit: usize,
    found: Vec<Vec<usize>>,
    /// `inv_q` applied to a set of target elements.
    inv_rows: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a Z2Poset, q: &'a Z2Poset, budget: u64, limit: usize) -> Self {
        Searcher {
            p,
            q,
            reps: (0..p.len()).filter(|&x| x < p.inv(x)).collect(),
            map: vec![usize::MAX; p.len()],
            budget,
            nodes: 0,
            limit,
            found: Vec::new(),
            inv_rows: q.involution().to_vec(),
        }
    }

    fn mirrored(&self, d: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_indices(d.width(), d.ones().map(|v| self.inv_rows[v]))
    }

    /// Values for orbit `x` consistent with both domains.
    fn candidates(&self, domains: &[Gf2Vector], x: usize) -> Gf2Vector {
        let mut c = domains[x].clone();
        c.and_assign(&self.mirrored(&domains[self.p.inv(x)]));
        c
    }

    fn run(&mut self) -> Flow {
        if self.limit == 0 {
            return Flow::Limit;
        }
        if self.q.is_empty() {
            return if self.p.is_empty() {
                self.found.push(Vec::new());
                Flow::Continue
            } else {
                Flow::Continue
            };
        }
        let domains = vec![Gf2Vector::all_ones(self.q.len()); self.p.len()];
        self.extend(domains)
    }

    fn extend(&mut self, domains: Vec<Gf2Vector>) -> Flow {
        let mut best: Option<(usize, Gf2Vector)> = None;
        for &x in &self.reps {
            if self.map[x] != usize::MAX {
                continue;
            }
            let c = self.candidates(&domains, x);
            let k = c.count_ones();
            if k == 0 {
                return Flow::Continue;
            }
            if best.as_ref().is_none_or(|(_, b)| k < b.count_ones()) {
                best = Some((x, c));
            }
        }
        let Some((x, cands)) = best else {
            self.found.push(self.map.clone());
            return if self.found.len() >= self.limit {
                Flow::Limit
            } else {
                Flow::Continue
            };
        };
        let ix = self.p.inv(x);
        for v in cands.ones().collect::<Vec<_>>() {
            if self.nodes >= self.budget {
                return Flow::Budget;
            }
            self.nodes += 1;
            let iv = self.q.inv(v);
            let mut next = domains.clone();
            if !self.assign(&mut next, x, v) || !self.assign(&mut next, ix, iv) {
                continue;
            }
            self.map[x] = v;
            self.map[ix] = iv;
            let flow = self.extend(next);
            self.map[x] = usize::MAX;
            self.map[ix] = usize::MAX;
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Fixes `x ↦ v` and prunes comparable elements; `false` on a wipe-out.
    fn assign(&self, domains: &mut [Gf2Vector], x: usize, v: usize) -> bool {
        if !domains[x].get(v) {
            return false;
        }
        domains[x] = Gf2Vector::unit(self.q.len(), v);
        let (pp, qp) = (self.p.poset(), self.q.poset());
        for y in pp.up(x).ones().filter(|&y| y != x) {
            domains[y].and_assign(qp.up(v));
            if domains[y].is_zero() {
                return false;
            }
        }
        for y in pp.down(x).ones().filter(|&y| y != x) {
            domains[y].and_assign(qp.down(v));
            if domains[y].is_zero() {
                return false;
            }
        }
        true
    }
}
