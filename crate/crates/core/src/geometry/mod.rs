//! Pseudohermitian structures and tensor calculus in their frames.

mod structure;
mod tensor;

pub use structure::{PHStructure, StructureDump};
pub use tensor::{multi_indices, FrameTensor, Slot};
