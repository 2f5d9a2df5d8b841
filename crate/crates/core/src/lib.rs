//! F-deletion: Turing kernels for vertex deletion to families without long
//! paths, plus the matching hardness reduction from CNF-SAT.

pub mod error;
pub mod family;
pub mod format;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod matching;
pub mod minors;
pub mod reduction;
pub mod structure;
pub mod vc;

pub use error::{Error, Result};
pub use family::Family;
pub use graph::{Graph, VertexSet};
pub use kernel::{solve, DeletionInstance, Engine, Outcome, SolveOptions};
pub use minors::{Containment, MinorModel};
