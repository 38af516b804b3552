//! Elementary-abelian (Z2) signatures of odd closed walks.
//!
//! The group here is `Z2^{A(H)} / R`, where `R` is spanned by the 4-cycle
//! relators `(a,b) + (c,b) + (c,d) + (a,d)`. A closed walk of odd length
//! whose signature lies in `R` certifies that the hom-complex of `H` has
//! index at least 2, hence `χ(H) ≥ 4`. [`detect`] decides whether such a walk
//! exists by solving one linear system over GF(2), and turns a solution into
//! an explicit walk.

mod detect;
mod euler;
mod quotient;
mod system;

pub use detect::{
    assignment_of_walk, detect, detect_component, detect_components, detect_with,
    repair_connectivity, token_components, verify_certificate, verify_certificate_in,
    ComponentReport, ComponentVerdict, DetectOptions, Detection, Sigma2Certificate,
};
pub use euler::{extract_euler_walk, EulerError};
pub use quotient::{
    build_quotient, build_quotient_with_history, decompose_into_relators, enumerate_relators,
    rank_upper_bound, sigma2_of_walk, sigma2_raw, sigma2_stepwise, QuotientPresentation, Relator,
};
pub use system::{build_detection_system, DetectionSystem};

use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sig2Error {
    EvenWalk { len: usize },
    InvalidWalk,
    NotInSpan,
    LoopsPresent,
    Euler(EulerError),
}

impl fmt::Display for Sig2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sig2Error::EvenWalk { len } => write!(f, "closed walk has even length {len}"),
            Sig2Error::InvalidWalk => write!(f, "closed walk is not a walk in the graph"),
            Sig2Error::NotInSpan => write!(f, "vector is not in the relator span"),
            Sig2Error::LoopsPresent => write!(f, "graph has loops"),
            Sig2Error::Euler(e) => write!(f, "euler tour: {e}"),
        }
    }
}

impl core::error::Error for Sig2Error {}

impl From<EulerError> for Sig2Error {
    fn from(e: EulerError) -> Self {
        Sig2Error::Euler(e)
    }
}
