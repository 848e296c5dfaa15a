//! Generalized inverses in finite rings.
//!
//! * [`ring`]: residue rings, matrix rings and direct products with canonical
//!   element indexing.
//! * [`ideal`]: principal ideals, annihilators and set arithmetic.
//! * [`inverse`]: (b,c)-inverses and their relatives, each computed by an
//!   exhaustive definition scan and, where one exists, a closed formula.
//! * [`harness`]: exhaustive property sweeps for the characterization
//!   theorems and a counterexample miner for the implications that fail.

pub mod config;
pub mod harness;
pub mod ideal;
pub mod inverse;
pub mod report;
pub mod ring;

pub use ideal::Subset;
pub use inverse::{DrazinResult, EngineError, InverseKind, InverseResult, Method, Status};
pub use ring::{build_ring, Element, RingError, RingHandle, RingOptions, RingSpec};
