//! Tools for k-geodetic digraphs whose order exceeds the directed Moore bound
//! by one.
//!
//! * [`digraph`]: the digraph model, walk counting, geodecity and outlier
//!   extraction.
//! * [`automorphism`]: permutations, fix-set classification and cycle
//!   structure of the outlier function.
//! * [`arithmetic`]: exact integer and polynomial arithmetic.
//! * [`feasibility`]: divisibility scanners and the spectral case engine
//!   for degree-2 geodecity.
//! * [`search`]: exhaustive isomorph-free search with checkpointing.

pub mod arithmetic;
pub mod automorphism;
pub mod digraph;
pub mod feasibility;
pub mod par;
pub mod search;
