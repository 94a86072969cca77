//! Pass/fail reports over the matrix library and the Fock oracle, and the
//! suites that bundle them.

pub mod chain;
pub mod core;
pub mod oracle;
mod suite;

pub use chain::{verify_chain, ChainReport};
pub use oracle::{verify_vacuum_majorizes_entropy, vacuum_majorization_scan, MajorizationScan, OneMode};
pub use suite::{run_suite, Suite, SuiteOptions};
