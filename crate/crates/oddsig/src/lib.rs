//! Files, certificates and the command line around `oddsig-core`.
//!
//! * [`formats`]: DIMACS and edge-list graphs.
//! * [`cert`]: JSON and text certificates, graph hashing, verification.
//! * [`dot`]: Graphviz output for graphs and Hasse diagrams.
//! * [`cli`]: the `oddsig` binary, callable in-process.

pub mod cert;
pub mod cli;
pub mod dot;
pub mod formats;

pub use oddsig_core as core;
