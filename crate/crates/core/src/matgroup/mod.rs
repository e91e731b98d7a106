//! Brute-force finite matrix groups over `Z/p^e`.
//!
//! Groups are enumerated element by element, so every structural claim made
//! elsewhere in the crate can be checked against an explicit list of
//! matrices.

mod field;
mod group;
mod io;
mod matrix;

pub use field::FieldRep;
pub use group::{
    commutator_subgroup, derived_length, derived_series, enumerate_gl, generate_closure,
    gl_generators, is_abelian, structure_report, sylow_subgroup, GroupStructureReport, MatrixGroup,
    DEFAULT_CAP,
};
pub use io::GeneratorSet;
pub use matrix::{mat_mul, Modulus, ResidueMatrix};
