//! Gate-list intermediate representation.

mod angle;
mod circuit;
mod gate;
mod list;
mod parity;

pub use angle::Angle;
pub use circuit::{count_gate_list, count_gates, well_typed, Circuit, GateCounts};
pub use gate::{Gate, GateApp, Qubits};
pub use list::{
    does_not_reference, first_gate_on, invert, last_gate_on, last_single_qubit_gate,
    matching_prefix, next_gate, next_gate_until, next_single_qubit_gate, next_two_qubit_gate,
};
pub use parity::Affine;
