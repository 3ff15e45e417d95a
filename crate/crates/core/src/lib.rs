//! Z_q-linear codes for even `q`: Simplex, MacDonald, repetition and
//! D-extension constructions, exact parameters and covering radii, and checks
//! of the closed-form parameter formulas and radius bounds for these families.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod code;
pub mod construct;
pub mod error;
pub mod matrix_file;
pub mod radius;

pub use arith::{classify_element, euler_phi, ElementClass, Modulus, Residue, ResidueVector};
pub use code::{symbol_counts, CodeSummary, GeneratorMatrix, LinearCode, SymbolCounts};
pub use error::{Error, Result};
pub use radius::{RadiusMethod, RadiusResult};
