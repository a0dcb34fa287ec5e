//! Code representation: subsystem layouts with block/part structure, Pauli
//! strings for stabilizer generators, and code-space construction.

mod codespace;
mod layout;
mod pauli;

pub use codespace::{build_code_space, code_space_from_basis, CodeSpace, StabilizerCodeDef};
pub use layout::{merge_parts, MergedLayout, SubsystemLayout};
pub use pauli::{PauliString, Sign};
