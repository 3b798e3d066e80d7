//! Workbench for machine-checking the effective ingredients of a modular
//! transcendence argument: exact q-expansions, the Siegel-lemma auxiliary
//! construction, certified analytic bounds, height machinery, prime-level
//! modular polynomials, prime-sum certifications, and the final
//! inequality-chain engine.
//!
//! Everything analytic is an enclosure; everything arithmetic is exact.

pub mod auxfn;
pub mod chain;
pub mod error;
pub mod heights;
pub mod modforms;
pub mod modpoly;
pub mod numerics;
pub mod primes;
pub mod qseries;
pub mod report;
pub mod siegel;

pub use error::{Error, Result};
