//! Linear algebra over GF(2) on packed 64-bit words.
//!
//! [`Gf2Basis`] keeps its rows in reduced row-echelon form with the lowest
//! available column chosen as pivot, so reduced forms (and everything derived
//! from them) are deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WidthMismatch {
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for WidthMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vector width {} does not match {}",
            self.found, self.expected
        )
    }
}

impl core::error::Error for WidthMismatch {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    width: usize,
    words: Vec<u64>,
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector[{}]{{", self.width)?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Gf2Vector {
    pub fn zeros(width: usize) -> Self {
        Gf2Vector {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn all_ones(width: usize) -> Self {
        let mut v = Gf2Vector {
            width,
            words: vec![u64::MAX; width.div_ceil(64)],
        };
        if !width.is_multiple_of(64) {
            *v.words.last_mut().expect("nonzero width") = (1u64 << (width % 64)) - 1;
        }
        v
    }

    pub fn unit(width: usize, i: usize) -> Self {
        let mut v = Self::zeros(width);
        v.set(i, true);
        v
    }

    /// Sum of the unit vectors at `indices` (repeated indices cancel).
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut v = Self::zeros(width);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|b| *b.1).map(|b| b.0),
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width, "index {i} out of width {}", self.width);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width, "index {i} out of width {}", self.width);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.width, "index {i} out of width {}", self.width);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Coordinatewise XOR. Panics on width mismatch.
    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.width, other.width, "GF(2) width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Coordinatewise AND. Panics on width mismatch.
    pub fn and_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.width, other.width, "GF(2) width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Support inclusion. Panics on width mismatch.
    pub fn is_subset_of(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.width, other.width, "GF(2) width mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the coordinatewise product.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.width, other.width, "GF(2) width mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of the 1-entries in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Result of [`Gf2Basis::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent; `id` numbers the extending insertions
    /// `0, 1, 2, ..` in order.
    Extended { id: usize },
    /// Already in the span. With history enabled, `combination` lists the ids
    /// of extending insertions whose sum is the vector.
    InSpan { combination: Option<Vec<usize>> },
}

/// Reduced row-echelon basis of a subspace of GF(2)^width.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    width: usize,
    /// In increasing pivot order.
    rows: Vec<Gf2Vector>,
    pivots: Vec<usize>,
    /// Row index per column, `usize::MAX` if the column is not a pivot.
    pivot_row: Vec<usize>,
    /// Per row, the extending insertions summing to it.
    history: Option<Vec<Gf2Vector>>,
    extended: usize,
}

impl Gf2Basis {
    pub fn new(width: usize) -> Self {
        Gf2Basis {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![usize::MAX; width],
            history: None,
            extended: 0,
        }
    }

    /// A basis that remembers how each row arose from the inserted vectors.
    pub fn with_history(width: usize) -> Self {
        Gf2Basis {
            history: Some(Vec::new()),
            ..Self::new(width)
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn has_history(&self) -> bool {
        self.history.is_some()
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, column: usize) -> bool {
        self.pivot_row[column] != usize::MAX
    }

    fn check(&self, v: &Gf2Vector) -> Result<(), WidthMismatch> {
        if v.width != self.width {
            Err(WidthMismatch {
                expected: self.width,
                found: v.width,
            })
        } else {
            Ok(())
        }
    }

    /// Rows used to reduce `v`; they are exactly the pivots where `v` is 1,
    /// since every row vanishes on the other rows' pivot columns.
    fn reducing_rows<'a>(&'a self, v: &'a Gf2Vector) -> impl Iterator<Item = usize> + 'a {
        v.ones()
            .map(|c| self.pivot_row[c])
            .filter(|&r| r != usize::MAX)
    }

    /// The coset representative of `v + span` that vanishes on every pivot.
    pub fn reduce(&self, v: &Gf2Vector) -> Result<Gf2Vector, WidthMismatch> {
        self.check(v)?;
        let mut out = v.clone();
        for r in self.reducing_rows(v) {
            out.xor_assign(&self.rows[r]);
        }
        Ok(out)
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool, WidthMismatch> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Ids of extending insertions summing to `v`, or `None` if `v` is not in
    /// the span. Panics if the basis was built without history.
    pub fn combination(&self, v: &Gf2Vector) -> Result<Option<Vec<usize>>, WidthMismatch> {
        self.check(v)?;
        let history = self.history.as_ref().expect("basis built without history");
        let mut out = v.clone();
        let mut combo = Gf2Vector::zeros(self.width);
        for r in self.reducing_rows(v) {
            out.xor_assign(&self.rows[r]);
            combo.xor_assign(&history[r]);
        }
        Ok(out.is_zero().then(|| combo.ones().collect()))
    }

    pub fn insert(&mut self, v: &Gf2Vector) -> Result<Insertion, WidthMismatch> {
        self.check(v)?;
        let mut row = v.clone();
        let mut combo = self.history.as_ref().map(|_| Gf2Vector::zeros(self.width));
        for r in self.reducing_rows(v) {
            row.xor_assign(&self.rows[r]);
            if let (Some(c), Some(h)) = (combo.as_mut(), self.history.as_ref()) {
                c.xor_assign(&h[r]);
            }
        }
        let Some(pivot) = row.lowest_one() else {
            return Ok(Insertion::InSpan {
                combination: combo.map(|c| c.ones().collect()),
            });
        };
        let id = self.extended;
        self.extended += 1;
        if let Some(c) = combo.as_mut() {
            c.flip(id);
        }
        for (k, existing) in self.rows.iter_mut().enumerate() {
            if existing.get(pivot) {
                existing.xor_assign(&row);
                if let (Some(h), Some(c)) = (self.history.as_mut(), combo.as_ref()) {
                    h[k].xor_assign(c);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, row);
        self.pivots.insert(at, pivot);
        if let (Some(h), Some(c)) = (self.history.as_mut(), combo) {
            h.insert(at, c);
        }
        for (k, &p) in self.pivots.iter().enumerate().skip(at) {
            self.pivot_row[p] = k;
        }
        Ok(Insertion::Extended { id })
    }
}

/// Solution set of a linear system: `particular + span(nullspace)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Gf2Vector,
    pub nullspace: Vec<Gf2Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(AffineSolution),
    Infeasible,
}

/// Solves `row · x = rhs` for every `(row, rhs)`. All rows must share one
/// width, which is also the width used for an empty system only through
/// [`solve_with_width`].
pub fn solve(rows: &[(Gf2Vector, bool)]) -> Result<SolveOutcome, WidthMismatch> {
    let width = rows.first().map_or(0, |r| r.0.width());
    solve_with_width(width, rows)
}

pub fn solve_with_width(
    width: usize,
    rows: &[(Gf2Vector, bool)],
) -> Result<SolveOutcome, WidthMismatch> {
    // The right-hand side is column `width`, the last one, so it only becomes
    // a pivot for a contradictory row.
    let mut aug = Gf2Basis::new(width + 1);
    for (row, rhs) in rows {
        if row.width() != width {
            return Err(WidthMismatch {
                expected: width,
                found: row.width(),
            });
        }
        let mut a = Gf2Vector::zeros(width + 1);
        for i in row.ones() {
            a.set(i, true);
        }
        a.set(width, *rhs);
        aug.insert(&a)?;
    }
    if aug.is_pivot(width) {
        return Ok(SolveOutcome::Infeasible);
    }
    let mut particular = Gf2Vector::zeros(width);
    for (row, &p) in aug.rows().iter().zip(aug.pivots()) {
        if row.get(width) {
            particular.set(p, true);
        }
    }
    let mut nullspace = Vec::new();
    for free in (0..width).filter(|&c| !aug.is_pivot(c)) {
        let mut v = Gf2Vector::unit(width, free);
        for (row, &p) in aug.rows().iter().zip(aug.pivots()) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        nullspace.push(v);
    }
    Ok(SolveOutcome::Feasible(AffineSolution {
        particular,
        nullspace,
    }))
}
