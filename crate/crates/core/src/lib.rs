//! Constructive extraction of path and cycle families with prescribed length
//! patterns in graphs of large minimum degree, with exhaustive oracles and
//! self-contained certificates for checking every result.

pub mod certificate;
pub mod cores;
pub mod cycles;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod named;
pub mod oracle;
pub mod par;
pub mod paths;
pub mod sweep;

pub use error::{Error, Result};
pub use families::{classify, CycleWitness, Family, FamilyClass, PathWitness};
pub use graph::{Graph, VertexSet};
