use alloc::vec::Vec;

use super::{Poset, PosetError};
use crate::gf2::Gf2Vector;

/// The comparable pairs `x ≤ y` of a poset, constant pairs included, in
/// increasing `(x, y)` order. Coordinates of comparability vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparabilities {
    pairs: Vec<(usize, usize)>,
}

impl Comparabilities {
    pub fn of(p: &Poset) -> Self {
        let pairs = (0..p.len())
            .flat_map(|x| p.up(x).ones().map(move |y| (x, y)))
            .collect();
        Comparabilities { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }

    /// 1 on strict pairs, 0 on constant ones.
    pub fn soi(&self) -> Gf2Vector {
        Gf2Vector::from_indices(
            self.len(),
            self.pairs
                .iter()
                .enumerate()
                .filter(|(_, (x, y))| x != y)
                .map(|(i, _)| i),
        )
    }
}

pub fn strict_order_indicator(p: &Poset) -> Gf2Vector {
    Comparabilities::of(p).soi()
}

pub fn validate_order_map(p: &Poset, q: &Poset, f: &[usize]) -> Result<(), PosetError> {
    if f.len() != p.len() || f.iter().any(|&y| y >= q.len()) {
        return Err(PosetError::BadMap);
    }
    for x in 0..p.len() {
        for y in p.up(x).ones() {
            if !q.leq(f[x], f[y]) {
                return Err(PosetError::NotOrderPreserving { x, y });
            }
        }
    }
    Ok(())
}

/// `f̂`: the generator `(x ≤ y)` goes to `(f(x) ≤ f(y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedHat {
    pub source: Comparabilities,
    pub target: Comparabilities,
    /// Target coordinate of each source generator.
    pub image: Vec<usize>,
}

impl InducedHat {
    pub fn apply(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.width(), self.source.len(), "comparability width mismatch");
        let mut out = Gf2Vector::zeros(self.target.len());
        for i in v.ones() {
            out.flip(self.image[i]);
        }
        out
    }

    /// Column `i` of the matrix is the unit vector at `image[i]`.
    pub fn matrix_columns(&self) -> Vec<Gf2Vector> {
        self.image
            .iter()
            .map(|&j| Gf2Vector::unit(self.target.len(), j))
            .collect()
    }
}

pub fn induced_hat(p: &Poset, q: &Poset, f: &[usize]) -> Result<InducedHat, PosetError> {
    validate_order_map(p, q, f)?;
    let source = Comparabilities::of(p);
    let target = Comparabilities::of(q);
    let image = source
        .pairs()
        .iter()
        .map(|&(x, y)| target.index(f[x], f[y]).expect("order-preserving image"))
        .collect();
    Ok(InducedHat {
        source,
        target,
        image,
    })
}
