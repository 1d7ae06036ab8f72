//! Exact construction and verification of Kochen-Specker proofs built from
//! Pauli observables: observable diagrams, their projector systems, and the
//! parity proofs those systems contain.

pub mod catalog;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod gf2;
pub mod pauli;
pub mod projector;
pub mod search;
pub mod system;

pub use catalog::{Catalog, IdSet};
pub use diagram::{Diagram, DiagramSymbol};
pub use error::{Error, Result};
pub use pauli::{Observable, PhasedPauli, Sign};
pub use projector::Projector;
pub use system::{ParityCensus, ParityOptions, ProjectorSystem};
