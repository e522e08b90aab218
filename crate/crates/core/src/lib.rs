//! Commutator graphs of Pauli-string generator sets.
//!
//! The crate builds the graph whose vertices are all `4^n` Pauli strings and
//! whose edges link strings related by the adjoint action of a generator, and
//! derives exact chaos diagnostics (frame potentials, averaged OTOCs, spread,
//! graph complexity) and component-restricted Heisenberg and Krylov dynamics
//! from it.

pub mod cli;
pub mod config;
pub mod dense;
pub mod dla;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod matchgate;
pub mod metrics;
pub mod pauli;
pub mod random;
pub mod rational;
pub mod sampler;

pub use dla::{GeneratorSet, Model};
pub use error::{Error, Result};
pub use graph::{CommutatorGraph, Component};
pub use pauli::{PauliString, Phase};
