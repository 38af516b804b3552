//! Odd closed walks, their signatures in 4-cycle quotient groups, and the
//! combinatorial topology around the `χ(H) ≥ 4` obstruction.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure and
//! deterministic; file formats, hashing and the command line live in the
//! `oddsig` companion crate.
//!
//! * [`graph`]: dense simple graphs, arcs, closed walks.
//! * [`gf2`]: packed GF(2) vectors, reduced row-echelon bases, linear solving.
//! * [`sig2`]: the polynomial-time detector for odd closed walks with zero
//!   elementary-abelian signature, and its certificates.
//! * [`freesig`]: free-group words, rewriting certificates, and witnesses
//!   derived from generalised Mycielski homomorphisms.
//! * [`mycielski`]: categorical products, cones, homomorphism search.
//! * [`homposet`]: Z2-posets, hom-complexes, crowns, subdivisions,
//!   dismantling and Z2-map search.
//! * [`oracle`]: brute-force ground truth used to cross-check the above.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod freesig;
pub mod gf2;
pub mod graph;
pub mod homposet;
pub mod mycielski;
pub mod oracle;
pub mod sig2;

pub use gf2::{Gf2Basis, Gf2Vector};
pub use graph::{Arc, ClosedWalk, Graph, GraphError, Vertex};
