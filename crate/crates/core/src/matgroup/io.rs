//! JSON generator sets.
//!
//! ```json
//! { "dimension": 2, "prime": 3, "exponent": 1,
//!   "generators": [ [[1, 1], [0, 1]], [[0, 1], [2, 0]] ] }
//! ```
//!
//! Entries must already be reduced into `[0, prime^exponent)`; unreduced
//! input is rejected rather than silently normalized, so that reading and
//! writing a set is lossless.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::group::MatrixGroup;
use super::matrix::{Modulus, ResidueMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSet {
    pub dimension: usize,
    pub prime: u64,
    pub exponent: u32,
    pub generators: Vec<Vec<Vec<u64>>>,
}

impl GeneratorSet {
    pub fn from_matrices(dim: usize, modulus: Modulus, gens: &[ResidueMatrix]) -> Self {
        Self {
            dimension: dim,
            prime: modulus.prime(),
            exponent: modulus.exponent(),
            generators: gens.iter().map(ResidueMatrix::rows).collect(),
        }
    }

    pub fn from_group(g: &MatrixGroup) -> Self {
        Self::from_matrices(g.dim(), g.modulus(), g.generators())
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.prime, self.exponent)
    }

    pub fn to_matrices(&self) -> Result<Vec<ResidueMatrix>> {
        let modulus = self.modulus()?;
        self.generators
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != self.dimension || rows.iter().any(|r| r.len() != self.dimension) {
                    return Err(Error::Malformed(format!(
                        "generator {k} is not {d}x{d}",
                        d = self.dimension
                    )));
                }
                if rows.iter().flatten().any(|&x| x >= modulus.value()) {
                    return Err(Error::Malformed(format!(
                        "generator {k} has an entry outside [0, {})",
                        modulus.value()
                    )));
                }
                let m = ResidueMatrix::from_rows(modulus, rows)?;
                if !m.is_invertible() {
                    return Err(Error::Malformed(format!("generator {k} is not invertible")));
                }
                Ok(m)
            })
            .collect()
    }

    pub fn to_group(&self, cap: usize) -> Result<MatrixGroup> {
        MatrixGroup::generated_by(self.dimension, self.modulus()?, self.to_matrices()?, cap)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let set: Self = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        set.to_matrices()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("generator sets always serialize")
    }
}
