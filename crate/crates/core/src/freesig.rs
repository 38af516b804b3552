//! Free-group signatures of odd closed walks and checkable proofs that a
//! signature is trivial modulo the 4-cycle relators.
//!
//! Triviality in this group is never decided here, only certified: a
//! [`RewriteCertificate`] is a sequence of elementary rewrites that takes the
//! start word to the empty word.

use alloc::vec::Vec;
use core::fmt;

use crate::gf2::Gf2Vector;
use crate::graph::{ClosedWalk, Graph, Vertex};
use crate::mycielski::{odd_cycle_base, Homomorphism, LeveledGraph};

/// The arc `(tail, head)` or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub tail: Vertex,
    pub head: Vertex,
    pub inverted: bool,
}

impl Letter {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Letter {
            tail,
            head,
            inverted: false,
        }
    }

    pub fn inv(tail: Vertex, head: Vertex) -> Self {
        Letter {
            tail,
            head,
            inverted: true,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            inverted: !self.inverted,
            ..self
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.tail == other.tail && self.head == other.head && self.inverted != other.inverted
    }

    pub fn is_valid_in(self, g: &Graph) -> bool {
        g.arc_index(self.tail, self.head).is_some()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.inverted { '-' } else { '+' };
        write!(f, "{},{}{}", self.tail, self.head, sign)
    }
}

pub type Word = Vec<Letter>;

/// `(a,b)(c,b)⁻¹(c,d)(a,d)⁻¹`, or its inverse `(a,d)(c,d)⁻¹(c,b)(a,b)⁻¹`.
pub fn relator_word(quad: [Vertex; 4], inverse: bool) -> [Letter; 4] {
    let [a, b, c, d] = quad;
    if inverse {
        [
            Letter::new(a, d),
            Letter::inv(c, d),
            Letter::new(c, b),
            Letter::inv(a, b),
        ]
    } else {
        [
            Letter::new(a, b),
            Letter::inv(c, b),
            Letter::new(c, d),
            Letter::inv(a, d),
        ]
    }
}

/// `a ≠ c`, `b ≠ d` and all four edges present.
pub fn is_valid_quad(g: &Graph, quad: [Vertex; 4]) -> bool {
    let [a, b, c, d] = quad;
    a != c && b != d && g.has_edge(a, b) && g.has_edge(c, b) && g.has_edge(c, d) && g.has_edge(a, d)
}

/// The unique word without adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        match out.last() {
            Some(&y) if y.is_inverse_of(x) => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

/// Free reduction followed by cancelling inverse letters at the two ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let r = free_reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo].is_inverse_of(r[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

/// `∏_{i<n} (f(2i), f(2i+1)) · (f(2i+2), f(2i+1))⁻¹` with indices mod `n`,
/// unreduced. `None` for an even or invalid walk.
pub fn sigma1_of_walk(g: &Graph, w: &ClosedWalk) -> Option<Word> {
    if !w.is_odd() || !g.validate_closed_walk(w) {
        return None;
    }
    let n = w.len();
    let mut word = Vec::with_capacity(2 * n);
    for i in 0..n {
        word.push(Letter::new(w.at(2 * i), w.at(2 * i + 1)));
        word.push(Letter::inv(w.at(2 * i + 2), w.at(2 * i + 1)));
    }
    Some(word)
}

/// Parity of the occurrences of each arc, inverted or not.
///
/// Panics if a letter is not an arc of `g`.
pub fn abelianize_mod2(g: &Graph, w: &[Letter]) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(g.arc_count());
    for x in w {
        v.flip(g.arc_index(x.tail, x.head).expect("letter is an arc"));
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStep {
    /// Insert `x x⁻¹` before position `pos`.
    FreeInsert { pos: usize, letter: Letter },
    /// Remove the inverse pair at `pos, pos + 1`.
    FreeDelete { pos: usize },
    RelatorInsert {
        pos: usize,
        quad: [Vertex; 4],
        inverse: bool,
    },
    RelatorDelete {
        pos: usize,
        quad: [Vertex; 4],
        inverse: bool,
    },
    /// Move the first letter to the end.
    CyclicShift,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |inv: bool| if inv { '-' } else { '+' };
        match *self {
            RewriteStep::FreeInsert { pos, letter } => write!(f, "FI {pos} {letter}"),
            RewriteStep::FreeDelete { pos } => write!(f, "FD {pos}"),
            RewriteStep::RelatorInsert { pos, quad, inverse } => {
                let [a, b, c, d] = quad;
                write!(f, "RI {pos} {a} {b} {c} {d} {}", sign(inverse))
            }
            RewriteStep::RelatorDelete { pos, quad, inverse } => {
                let [a, b, c, d] = quad;
                write!(f, "RD {pos} {a} {b} {c} {d} {}", sign(inverse))
            }
            RewriteStep::CyclicShift => write!(f, "CS"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteCertificate {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckError {
    /// A start letter is not an arc of the graph.
    InvalidStart { pos: usize },
    /// Step `step` (0-based) does not apply to the running word.
    StepFailed { step: usize },
    /// All steps applied, `len` letters remain.
    NonEmptyEnd { len: usize },
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::InvalidStart { pos } => write!(f, "start letter {pos} is not an arc"),
            CheckError::StepFailed { step } => write!(f, "step {step} does not apply"),
            CheckError::NonEmptyEnd { len } => {
                write!(f, "{len} letters remain after the last step")
            }
        }
    }
}

impl core::error::Error for CheckError {}

/// Applies one step in place; `false` leaves the word unchanged.
pub fn apply_step(g: &Graph, word: &mut Word, step: &RewriteStep) -> bool {
    match *step {
        RewriteStep::FreeInsert { pos, letter } => {
            if pos > word.len() || !letter.is_valid_in(g) {
                return false;
            }
            word.splice(pos..pos, [letter, letter.inverse()]);
        }
        RewriteStep::FreeDelete { pos } => {
            if pos + 1 >= word.len() || !word[pos].is_inverse_of(word[pos + 1]) {
                return false;
            }
            word.drain(pos..pos + 2);
        }
        RewriteStep::RelatorInsert { pos, quad, inverse } => {
            if pos > word.len() || !is_valid_quad(g, quad) {
                return false;
            }
            word.splice(pos..pos, relator_word(quad, inverse));
        }
        RewriteStep::RelatorDelete { pos, quad, inverse } => {
            if pos + 4 > word.len()
                || !is_valid_quad(g, quad)
                || word[pos..pos + 4] != relator_word(quad, inverse)
            {
                return false;
            }
            word.drain(pos..pos + 4);
        }
        RewriteStep::CyclicShift => {
            if word.is_empty() {
                return false;
            }
            word.rotate_left(1);
        }
    }
    true
}

/// Replays the certificate. Acceptance means the start word is trivial in
/// the free group on arcs modulo the 4-cycle relators: free and relator steps
/// keep the group element, a cyclic shift replaces it by a conjugate.
pub fn check_certificate_detailed(g: &Graph, c: &RewriteCertificate) -> Result<(), CheckError> {
    if let Some(pos) = c.start.iter().position(|x| !x.is_valid_in(g)) {
        return Err(CheckError::InvalidStart { pos });
    }
    let mut word = c.start.clone();
    for (step, s) in c.steps.iter().enumerate() {
        if !apply_step(g, &mut word, s) {
            return Err(CheckError::StepFailed { step });
        }
    }
    if word.is_empty() {
        Ok(())
    } else {
        Err(CheckError::NonEmptyEnd { len: word.len() })
    }
}

pub fn check_certificate(g: &Graph, c: &RewriteCertificate) -> bool {
    check_certificate_detailed(g, c).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    NotAHomomorphism,
    NotOddCycleCone,
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::NotAHomomorphism => write!(f, "map is not a homomorphism of the cone"),
            WitnessError::NotOddCycleCone => write!(f, "source is not a cone over an odd cycle"),
        }
    }
}

impl core::error::Error for WitnessError {}

/// Records steps while applying them.
struct Recorder<'a> {
    g: &'a Graph,
    word: Word,
    steps: Vec<RewriteStep>,
}

impl Recorder<'_> {
    fn push(&mut self, step: RewriteStep) {
        let ok = apply_step(self.g, &mut self.word, &step);
        debug_assert!(ok, "derived step {step} must apply");
        self.steps.push(step);
    }
}

/// Certificate that `σ₁` of the base cycle `i ↦ hom(i, 0)` is trivial.
///
/// View `σ₁` as a word along the doubled walk `k ↦ (k mod n, 0)`, `k < 2n`:
/// letter `k` joins positions `k` and `k + 1`, with its tail at the even one.
/// Phase `t = 1..=q` lifts every position of parity `t mod 2` to level `t`
/// (the apex when `t = q`). Lifting one position rewrites the two letters
/// around it with one relator and two free deletions, keeping the length at
/// `2n`; cyclic shifts keep each rewritten pair contiguous. Once one parity
/// class sits on the apex, the letters cancel pairwise.
pub fn derive_witness_from_mycielski(
    cone: &LeveledGraph,
    hom: &Homomorphism,
) -> Result<RewriteCertificate, WitnessError> {
    let n = odd_cycle_base(cone).ok_or(WitnessError::NotOddCycleCone)?;
    if hom.source != cone.graph {
        return Err(WitnessError::NotOddCycleCone);
    }
    hom.verify().map_err(|_| WitnessError::NotAHomomorphism)?;
    let h = &hom.target;
    let image = |k: usize, level: usize| hom.map[cone.vertex(k % n, level)];
    let base = ClosedWalk::new((0..n).map(|i| image(i, 0)).collect());
    let start = sigma1_of_walk(h, &base).expect("image of an odd cycle is an odd closed walk");

    let len = 2 * n;
    let mut rec = Recorder {
        g: h,
        word: start.clone(),
        steps: Vec::new(),
    };
    let mut level: Vec<usize> = alloc::vec![0; len];
    let mut rotation = 0usize;
    for t in 1..=cone.q {
        let parity = t % 2;
        // Letters k - 1 and k are contiguous unless k ≡ rotation.
        if rotation % 2 == parity {
            rec.push(RewriteStep::CyclicShift);
            rotation = (rotation + 1) % len;
        }
        for k in (parity..len).step_by(2) {
            let x = image(k, level[k]);
            let x2 = image(k, t);
            let y = image(k + len - 1, level[(k + len - 1) % len]);
            let z = image(k + 1, level[(k + 1) % len]);
            level[k] = t;
            if x == x2 {
                continue;
            }
            let p = (k + len - 1 - rotation) % len;
            let odd = k % 2 == 1;
            if y == z {
                let letter = if odd {
                    Letter::new(y, x2)
                } else {
                    Letter::inv(x2, y)
                };
                rec.push(RewriteStep::FreeDelete { pos: p });
                rec.push(RewriteStep::FreeInsert { pos: p, letter });
            } else if odd {
                // (y,x)(z,x)⁻¹ -> (y,x')(z,x')⁻¹
                rec.push(RewriteStep::RelatorInsert {
                    pos: p,
                    quad: [y, x, z, x2],
                    inverse: true,
                });
                rec.push(RewriteStep::FreeDelete { pos: p + 3 });
                rec.push(RewriteStep::FreeDelete { pos: p + 2 });
            } else {
                // (x,y)⁻¹(x,z) -> (x',y)⁻¹(x',z)
                rec.push(RewriteStep::RelatorInsert {
                    pos: p + 1,
                    quad: [x, y, x2, z],
                    inverse: false,
                });
                rec.push(RewriteStep::FreeDelete { pos: p });
                rec.push(RewriteStep::FreeDelete { pos: p + 2 });
            }
        }
    }
    collapse(&mut rec);
    debug_assert!(rec.word.is_empty());
    Ok(RewriteCertificate {
        start,
        steps: rec.steps,
    })
}

/// Greedy free deletions, with cyclic shifts when only the two ends cancel.
fn collapse(rec: &mut Recorder<'_>) {
    loop {
        let w = &rec.word;
        if let Some(pos) = (0..w.len().saturating_sub(1)).find(|&i| w[i].is_inverse_of(w[i + 1])) {
            rec.push(RewriteStep::FreeDelete { pos });
        } else if w.len() >= 2 && w[0].is_inverse_of(w[w.len() - 1]) {
            rec.push(RewriteStep::CyclicShift);
        } else {
            return;
        }
    }
}
