//! Finite Z2-posets: hom-complexes, cross-polytope face posets, crowns,
//! barycentric subdivision, comparability vectors, dismantling and Z2-map
//! search.
//!
//! A Z2-poset is a poset with a fixed-point free, order-preserving
//! involution. Elements are indexed `0..len`; every construction fixes its
//! element order so results are reproducible.

mod complex;
mod dismantle;
mod maps;
mod vectors;

pub use complex::{
    d_rho_plus, g_plus, hom_complex, rho_plus, v_poset, HomComplex, HomElement, SubPoset,
    DEFAULT_ELEMENT_CAP,
};
pub use dismantle::{dismantle, dismantle_with_order, is_dismantlable, Dismantling};
pub use maps::{
    enumerate_z2_maps, validate_z2_map, verify_odd_degree, z2_map_search, MapEnumeration, MapSearch,
};
pub use vectors::{
    induced_hat, strict_order_indicator, validate_order_map, Comparabilities, InducedHat,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::Gf2Vector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    NotReflexive {
        x: usize,
    },
    NotAntisymmetric {
        x: usize,
        y: usize,
    },
    NotTransitive {
        x: usize,
        y: usize,
        z: usize,
    },
    /// Involution table has the wrong length or leaves the element range.
    BadInvolution,
    NotInvolutive {
        x: usize,
    },
    FixedPoint {
        x: usize,
    },
    InvolutionNotMonotone {
        x: usize,
        y: usize,
    },
    /// A size guard was hit.
    TooLarge {
        cap: usize,
    },
    /// Map table has the wrong length or leaves the target.
    BadMap,
    NotOrderPreserving {
        x: usize,
        y: usize,
    },
    NotEquivariant {
        x: usize,
    },
    LoopsPresent,
    NotAFourCycle,
    InvalidWalk,
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::NotReflexive { x } => write!(f, "relation is not reflexive at {x}"),
            PosetError::NotAntisymmetric { x, y } => {
                write!(f, "relation is not antisymmetric on {x}, {y}")
            }
            PosetError::NotTransitive { x, y, z } => {
                write!(f, "relation is not transitive on {x} <= {y} <= {z}")
            }
            PosetError::BadInvolution => write!(f, "involution table is malformed"),
            PosetError::NotInvolutive { x } => write!(f, "involution is not of order two at {x}"),
            PosetError::FixedPoint { x } => write!(f, "involution fixes {x}"),
            PosetError::InvolutionNotMonotone { x, y } => {
                write!(f, "involution does not preserve {x} <= {y}")
            }
            PosetError::TooLarge { cap } => write!(f, "size guard exceeded (cap {cap})"),
            PosetError::BadMap => write!(f, "map table is malformed"),
            PosetError::NotOrderPreserving { x, y } => {
                write!(f, "map does not preserve {x} <= {y}")
            }
            PosetError::NotEquivariant { x } => {
                write!(f, "map does not commute with the involution at {x}")
            }
            PosetError::LoopsPresent => write!(f, "graph has loops"),
            PosetError::NotAFourCycle => write!(f, "quadruple is not a 4-cycle"),
            PosetError::InvalidWalk => write!(f, "walk is not an odd closed walk of the graph"),
        }
    }
}

impl core::error::Error for PosetError {}

/// A finite poset stored as up-set and down-set bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<Gf2Vector>,
    down: Vec<Gf2Vector>,
    labels: Vec<String>,
}

impl Poset {
    /// Builds and audits the relation `leq` on `0..labels.len()`.
    pub fn from_fn<F>(labels: Vec<String>, leq: F) -> Result<Self, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut up = vec![Gf2Vector::zeros(n); n];
        let mut down = vec![Gf2Vector::zeros(n); n];
        #[allow(clippy::needless_range_loop)] // fills rows of `up`, columns of `down`
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    up[x].set(y, true);
                    down[y].set(x, true);
                }
            }
        }
        let p = Poset { up, down, labels };
        p.audit()?;
        Ok(p)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(numbered(n), |x, y| x <= y).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(numbered(n), |x, y| x == y).expect("antichain")
    }

    fn audit(&self) -> Result<(), PosetError> {
        let n = self.len();
        for x in 0..n {
            if !self.up[x].get(x) {
                return Err(PosetError::NotReflexive { x });
            }
            for y in self.up[x].ones() {
                if y != x && self.up[y].get(x) {
                    return Err(PosetError::NotAntisymmetric { x, y });
                }
                if !self.up[y].is_subset_of(&self.up[x]) {
                    let z = self.up[y]
                        .ones()
                        .find(|&z| !self.up[x].get(z))
                        .expect("witness");
                    return Err(PosetError::NotTransitive { x, y, z });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].get(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x ≤ y}`.
    pub fn up(&self, x: usize) -> &Gf2Vector {
        &self.up[x]
    }

    /// `{y : y ≤ x}`.
    pub fn down(&self, x: usize) -> &Gf2Vector {
        &self.down[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down[x].count_ones() == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.up[x].count_ones() == 1)
            .collect()
    }

    /// Number of pairs `x ≤ y`, reflexive ones included.
    pub fn comparable_pair_count(&self) -> usize {
        self.up.iter().map(Gf2Vector::count_ones).sum()
    }

    /// Hasse diagram edges `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones().filter(|&y| y != x) {
                let between = self.up[x]
                    .ones()
                    .any(|z| z != x && z != y && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The subposet on `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels = elements.iter().map(|&x| self.labels[x].clone()).collect();
        Poset::from_fn(labels, |i, j| self.leq(elements[i], elements[j])).expect("subposet")
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Poset {
    poset: Poset,
    inv: Vec<usize>,
}

impl Z2Poset {
    pub fn new(poset: Poset, inv: Vec<usize>) -> Result<Self, PosetError> {
        let n = poset.len();
        if inv.len() != n || inv.iter().any(|&y| y >= n) {
            return Err(PosetError::BadInvolution);
        }
        for x in 0..n {
            if inv[x] == x {
                return Err(PosetError::FixedPoint { x });
            }
            if inv[inv[x]] != x {
                return Err(PosetError::NotInvolutive { x });
            }
            for y in poset.up(x).ones() {
                if !poset.leq(inv[x], inv[y]) {
                    return Err(PosetError::InvolutionNotMonotone { x, y });
                }
            }
        }
        Ok(Z2Poset { poset, inv })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn involution(&self) -> &[usize] {
        &self.inv
    }
}

/// `Q_n`, the face poset of the `n`-dimensional cross-polytope: `+i` is
/// element `2i`, `-i` is `2i + 1`; `±i < ±j` iff `i < j`.
pub fn q_poset(n: usize) -> Z2Poset {
    let labels = (0..=n)
        .flat_map(|i| [format!("+{i}"), format!("-{i}")])
        .collect();
    let poset = Poset::from_fn(labels, |x, y| x == y || x / 2 < y / 2).expect("Q_n");
    let inv = (0..2 * n + 2).map(|x| x ^ 1).collect();
    Z2Poset::new(poset, inv).expect("sign flip")
}

/// The circular fence `0 < 1 > 2 < 3 > .. > 0` on `4n` elements, with the
/// antipodal involution `p ↦ p + 2n`. Element `p` is labelled `+p` for
/// `p < 2n` and `-(p - 2n)` otherwise.
pub fn z2_crown(n: usize) -> Z2Poset {
    assert!(n >= 1, "crown needs n >= 1");
    let m = 4 * n;
    let labels = (0..m)
        .map(|p| {
            if p < 2 * n {
                format!("+{p}")
            } else {
                format!("-{}", p - 2 * n)
            }
        })
        .collect();
    let poset = Poset::from_fn(labels, |x, y| {
        x == y || (x % 2 == 0 && y % 2 == 1 && ((x + 1) % m == y || (y + 1) % m == x))
    })
    .expect("fence");
    let inv = (0..m).map(|p| (p + 2 * n) % m).collect();
    Z2Poset::new(poset, inv).expect("antipodal map")
}

/// Nonempty chains ordered by inclusion, sorted by length then by their
/// increasing element sequence; the involution acts elementwise.
pub fn barycentric_subdivision(p: &Z2Poset, cap: usize) -> Result<Z2Poset, PosetError> {
    let (poset, chains) = chain_poset(p.poset(), cap)?;
    let index: BTreeMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let inv = chains
        .iter()
        .map(|c| {
            let mut image: Vec<usize> = c.iter().map(|&x| p.inv(x)).collect();
            sort_chain(p.poset(), &mut image);
            index[image.as_slice()]
        })
        .collect();
    Z2Poset::new(poset, inv)
}

/// `S^m(p)`, each level subject to `cap`.
pub fn iterated_subdivision(p: &Z2Poset, m: usize, cap: usize) -> Result<Z2Poset, PosetError> {
    let mut cur = p.clone();
    for _ in 0..m {
        cur = barycentric_subdivision(&cur, cap)?;
    }
    Ok(cur)
}

/// Chain poset of a plain poset, with the chains themselves.
pub fn chain_poset(p: &Poset, cap: usize) -> Result<(Poset, Vec<Vec<usize>>), PosetError> {
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..p.len()).rev().map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        if chains.len() == cap {
            return Err(PosetError::TooLarge { cap });
        }
        let last = *c.last().expect("nonempty chain");
        for y in p
            .up(last)
            .ones()
            .filter(|&y| y != last)
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
        {
            let mut next = c.clone();
            next.push(y);
            stack.push(next);
        }
        chains.push(c);
    }
    chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let sets: Vec<Gf2Vector> = chains
        .iter()
        .map(|c| Gf2Vector::from_indices(p.len(), c.iter().copied()))
        .collect();
    let labels = chains
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&x| p.label(x)).collect();
            format!("{{{}}}", parts.join("<"))
        })
        .collect();
    let poset = Poset::from_fn(labels, |i, j| sets[i].is_subset_of(&sets[j]))?;
    Ok((poset, chains))
}

fn sort_chain(p: &Poset, chain: &mut [usize]) {
    // A chain is totally ordered, so up-set size decreases strictly along it.
    chain.sort_by_key(|&x| core::cmp::Reverse(p.up(x).count_ones()));
}

/// Whether some bijection preserves `≤` in both directions and commutes with
/// the involutions. Backtracking with up/down-degree pruning.
pub fn is_z2_isomorphic(a: &Z2Poset, b: &Z2Poset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let key = |p: &Poset, x: usize| (p.up(x).count_ones(), p.down(x).count_ones());
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    iso_extend(a, b, &key, 0, &mut map, &mut used)
}

fn iso_extend(
    a: &Z2Poset,
    b: &Z2Poset,
    key: &dyn Fn(&Poset, usize) -> (usize, usize),
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == a.len() {
        return true;
    }
    if map[x] != usize::MAX {
        return iso_extend(a, b, key, x + 1, map, used);
    }
    let ix = a.inv(x);
    for y in 0..b.len() {
        let iy = b.inv(y);
        if used[y] || used[iy] || key(a.poset(), x) != key(b.poset(), y) {
            continue;
        }
        let fits = |from: usize, to: usize, map: &[usize]| {
            (0..a.len()).filter(|&z| map[z] != usize::MAX).all(|z| {
                a.poset().leq(from, z) == b.poset().leq(to, map[z])
                    && a.poset().leq(z, from) == b.poset().leq(map[z], to)
            })
        };
        if !fits(x, y, map) {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if fits(ix, iy, map) {
            map[ix] = iy;
            used[iy] = true;
            if iso_extend(a, b, key, x + 1, map, used) {
                return true;
            }
            used[iy] = false;
            map[ix] = usize::MAX;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Z2-isomorphic to `z2_crown(len / 4)`.
pub fn is_crown(p: &Z2Poset) -> bool {
    p.len() >= 4 && p.len().is_multiple_of(4) && is_z2_isomorphic(p, &z2_crown(p.len() / 4))
}
