//! Exact computation of invariant almost contact metric geometry on Lie
//! algebras: structure verification, deformation to cosymplectic or
//! K-contact forms, basic cohomology and the 3-manifold decision procedures.

pub mod acms;
pub mod basic;
pub mod calculus;
pub mod catalog;
pub mod classify;
pub mod linalg;
pub mod report;
pub mod structure_file;
