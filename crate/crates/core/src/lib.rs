//! Quantum circuit optimizer over an exact-angle gate list, with a
//! dense-matrix translation validator.

pub mod ir;
pub mod mapping;
pub mod nonunitary;
pub mod qasm;
pub mod semantics;
pub mod unitary_opt;
pub mod validate;
