//! Multimedia fingerprinting codes that stay traceable under averaging
//! attacks with adversarial noise.
//!
//! A code is a binary `n x M` matrix whose columns are user fingerprints. A
//! coalition of at most `t` users averages its copies, possibly adds noise,
//! and the dealer tries to recover the coalition from the resulting syndrome.
//!
//! The crate is organised bottom-up:
//!
//! * [`code`], [`coalition`], [`signature`], [`rational`], [`entropy`]: exact
//!   domain types and the averaged-signature arithmetic everything else uses.
//! * [`construct`]: seeded random codes and binary BCH parity-check codes.
//! * [`verify`]: exhaustive checks of the Hamming / Euclidean light complete
//!   traceability properties and of 2t-column rational independence.
//! * [`attack`]: the embedding / averaging / noise / syndrome pipeline.
//! * [`trace`]: exhaustive coalition decoders.
//! * [`estimate`]: bad-row probabilities, rate bounds, and randomized search.
//! * [`cli`]: the `fptrace` command-line front end.

pub mod attack;
pub mod cli;
pub mod coalition;
pub mod code;
pub mod construct;
pub mod entropy;
pub mod error;
pub mod estimate;
pub mod linalg;
pub mod rational;
pub mod rng;
pub mod signature;
pub mod trace;
pub mod verify;

pub use coalition::Coalition;
pub use code::BinaryCode;
pub use error::{Error, Result};
pub use rational::Rational;
pub use signature::{average_signature, delta_stats, DeltaStats, Signature};
