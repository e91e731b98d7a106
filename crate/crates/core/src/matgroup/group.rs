use std::hash::BuildHasher;

use hashbrown::hash_table::{Entry, HashTable};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime, ell_adic_valuation, gl_order, is_prime, PrimePower};
use crate::error::{Error, Result};

use super::field::FieldRep;
use super::matrix::{Modulus, ResidueMatrix};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Insertion-ordered element store with an index table, so that each matrix
/// is held exactly once during closure.
struct ElementTable {
    elements: Vec<ResidueMatrix>,
    index: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl ElementTable {
    fn with_capacity(n: usize) -> Self {
        Self {
            elements: Vec::with_capacity(n),
            index: HashTable::with_capacity(n),
            hasher: FxBuildHasher,
        }
    }

    fn insert(&mut self, x: ResidueMatrix) -> bool {
        let Self {
            elements,
            index,
            hasher,
        } = self;
        let hash = hasher.hash_one(&x);
        let next = elements.len() as u32;
        let fresh = match index.entry(
            hash,
            |&i| elements[i as usize] == x,
            |&i| hasher.hash_one(&elements[i as usize]),
        ) {
            Entry::Occupied(_) => false,
            Entry::Vacant(slot) => {
                slot.insert(next);
                true
            }
        };
        if fresh {
            elements.push(x);
        }
        fresh
    }

    fn len(&self) -> usize {
        self.elements.len()
    }
}

/// A finite group of invertible matrices over `Z/p^e`, fully enumerated.
///
/// `elements` is kept sorted by the reduced entry sequence; this is the
/// canonical order used wherever a deterministic choice is needed.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    modulus: Modulus,
    generators: Vec<ResidueMatrix>,
    elements: Vec<ResidueMatrix>,
}

impl MatrixGroup {
    pub fn trivial(dim: usize, modulus: Modulus) -> Self {
        Self {
            dim,
            modulus,
            generators: Vec::new(),
            elements: vec![ResidueMatrix::identity(dim, modulus)],
        }
    }

    /// The group generated by `generators`, which may be empty.
    pub fn generated_by(
        dim: usize,
        modulus: Modulus,
        generators: Vec<ResidueMatrix>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim || g.modulus() != modulus {
                return Err(Error::Shape(format!(
                    "generator {g:?} is not {dim}x{dim} over {modulus}"
                )));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        let seed = vec![ResidueMatrix::identity(dim, modulus)];
        Self::close(dim, modulus, generators, seed, cap)
    }

    /// Breadth-first closure of `seed` under right multiplication by the
    /// generators. `seed` must contain the identity.
    fn close(
        dim: usize,
        modulus: Modulus,
        generators: Vec<ResidueMatrix>,
        seed: Vec<ResidueMatrix>,
        cap: usize,
    ) -> Result<Self> {
        let mut table = ElementTable::with_capacity(seed.len() * 2);
        for x in seed {
            table.insert(x);
        }
        if table.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let mut cursor = 0;
        while cursor < table.len() {
            let x = table.elements[cursor].clone();
            cursor += 1;
            for g in &generators {
                let y = x.mul_unchecked(g);
                if table.insert(y) && table.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        let ElementTable { mut elements, .. } = table;
        elements.par_sort_unstable();
        Ok(Self {
            dim,
            modulus,
            generators,
            elements,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ResidueMatrix] {
        &self.generators
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[ResidueMatrix] {
        &self.elements
    }

    pub fn identity(&self) -> ResidueMatrix {
        ResidueMatrix::identity(self.dim, self.modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &ResidueMatrix) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.modulus == other.modulus
            && self.elements.iter().all(|x| other.contains(x))
    }

    /// `<self, x>`, reusing the elements already enumerated.
    pub fn extended_by(&self, x: ResidueMatrix, cap: usize) -> Result<Self> {
        if x.dim() != self.dim || x.modulus() != self.modulus {
            return Err(Error::Shape("extension element has the wrong shape".into()));
        }
        if self.contains(&x) {
            return Ok(self.clone());
        }
        let mut generators = self.generators.clone();
        generators.push(x);
        Self::close(
            self.dim,
            self.modulus,
            generators,
            self.elements.clone(),
            cap,
        )
    }

    /// `x G x^-1`.
    pub fn conjugate(&self, x: &ResidueMatrix) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(x))
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(self.dim, self.modulus, gens, self.order())
    }

    /// Whether conjugation by `x` maps the group into itself.
    pub fn is_normalized_by(&self, x: &ResidueMatrix) -> Result<bool> {
        let x_inv = x.inverse()?;
        Ok(self
            .generators
            .iter()
            .all(|g| self.contains(&x.mul_unchecked(g).mul_unchecked(&x_inv))))
    }
}

/// The group generated by a nonempty list of invertible matrices of one shape.
pub fn generate_closure(generators: &[ResidueMatrix], cap: usize) -> Result<MatrixGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Malformed("at least one generator is required".into()))?;
    MatrixGroup::generated_by(first.dim(), first.modulus(), generators.to_vec(), cap)
}

/// Generators of `GL_n(F_q)` inside `GL_{nf}(F_p)`: `diag(alpha, 1, ..., 1)`
/// and the adjacent transvections `I + beta E_{i,i+1}`, `I + beta E_{i+1,i}`
/// for `beta` running over an `F_p`-basis of `F_q`.
pub fn gl_generators(n: usize, field: &FieldRep) -> Result<Vec<ResidueMatrix>> {
    let block = |i: usize, j: usize, value: &ResidueMatrix| -> Vec<ResidueMatrix> {
        (0..n * n)
            .map(|k| {
                let (r, c) = (k / n, k % n);
                if (r, c) == (i, j) {
                    value.clone()
                } else if r == c {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect()
    };
    let mut gens = vec![field.embed(n, &block(0, 0, field.generator()))?];
    for i in 0..n.saturating_sub(1) {
        for beta in field.basis() {
            gens.push(field.embed(n, &block(i, i + 1, &beta))?);
            gens.push(field.embed(n, &block(i + 1, i, &beta))?);
        }
    }
    Ok(gens)
}

/// `GL_n(F_q)` enumerated by closure. For `f > 1` the result lives in
/// `GL_{nf}(F_p)` through the regular representation of `F_q`.
pub fn enumerate_gl(n: u32, q: &PrimePower, cap: usize) -> Result<MatrixGroup> {
    if n == 0 {
        return Err(crate::error::domain("dimension must be positive"));
    }
    let expected = gl_order(n, q);
    if expected.to_usize().is_none_or(|o| o > cap) {
        return Err(Error::CapExceeded { cap });
    }
    let field = FieldRep::new(q)?;
    let gens = gl_generators(n as usize, &field)?;
    MatrixGroup::generated_by(n as usize * field.degree(), field.modulus(), gens, cap)
}

/// An `ell`-Sylow subgroup, chosen deterministically: scan the `ell`-elements
/// in canonical order and adjoin any one that normalizes the current
/// `ell`-subgroup without lying in it, until the order is `ell^v`.
///
/// Such an element always exists while the subgroup is not yet Sylow, so a
/// stall is reported as an internal error.
pub fn sylow_subgroup(g: &MatrixGroup, ell: u64) -> Result<MatrixGroup> {
    check_prime("ell", ell)?;
    let v = ell_adic_valuation(g.order() as u64, ell)?;
    let target = ell.pow(v);
    let mut h = MatrixGroup::trivial(g.dim, g.modulus);
    if v == 0 {
        return Ok(h);
    }
    let candidates: Vec<&ResidueMatrix> = g
        .elements
        .par_iter()
        .filter(|x| !x.is_identity() && x.pow(target).is_identity())
        .collect();

    while (h.order() as u64) < target {
        let mut grew = false;
        for x in &candidates {
            if h.order() as u64 == target {
                break;
            }
            if h.contains(x) || !h.is_normalized_by(x)? {
                continue;
            }
            h = h.extended_by((*x).clone(), g.order())?;
            if target % h.order() as u64 != 0 {
                return Err(Error::Internal(format!(
                    "adjoining a normalizing {ell}-element produced order {}",
                    h.order()
                )));
            }
            grew = true;
        }
        if !grew {
            return Err(Error::Internal(format!(
                "{ell}-subgroup of order {} cannot be extended toward {target}",
                h.order()
            )));
        }
    }
    Ok(h)
}

/// `[G, G]`, computed as the normal closure of the commutators of the
/// generators.
pub fn commutator_subgroup(g: &MatrixGroup, cap: usize) -> Result<MatrixGroup> {
    let gens = &g.generators;
    let mut commutators: Vec<ResidueMatrix> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b)?;
            if !c.is_identity() && !commutators.contains(&c) {
                commutators.push(c);
            }
        }
    }
    let mut h = MatrixGroup::generated_by(g.dim, g.modulus, commutators, cap)?;
    loop {
        let mut grew = false;
        for x in gens {
            let x_inv = x.inverse()?;
            let mut k = 0;
            while k < h.generators.len() {
                let c = x.mul_unchecked(&h.generators[k]).mul_unchecked(&x_inv);
                if !h.contains(&c) {
                    h = h.extended_by(c, cap)?;
                    grew = true;
                }
                k += 1;
            }
        }
        if !grew {
            return Ok(h);
        }
    }
}

/// `G, G', G'', ...` until the trivial group, or until the series stabilizes
/// at a nontrivial perfect group (included once).
pub fn derived_series(g: &MatrixGroup) -> Result<Vec<MatrixGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("series is nonempty");
        if last.is_trivial() {
            return Ok(series);
        }
        let next = commutator_subgroup(last, last.order())?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Number of steps to the trivial group; `None` for a non-solvable series.
pub fn derived_length(series: &[MatrixGroup]) -> Option<u32> {
    match series.last() {
        Some(last) if last.is_trivial() => Some(series.len() as u32 - 1),
        _ => None,
    }
}

/// Structural summary of a finite matrix group relative to a prime `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructureReport {
    pub order: u64,
    pub is_abelian: bool,
    /// Nontrivial, abelian, and every non-identity element has order `ell`.
    pub is_elementary_abelian: bool,
    /// `None` when the derived series stabilizes at a nontrivial group.
    pub derived_length: Option<u32>,
    pub exponent: u64,
}

pub fn is_abelian(g: &MatrixGroup) -> bool {
    let gens = &g.generators;
    gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.mul_unchecked(b) == b.mul_unchecked(a))
    })
}

pub fn structure_report(g: &MatrixGroup, ell: u64) -> Result<GroupStructureReport> {
    let abelian = is_abelian(g);
    let exponent = g
        .elements
        .par_iter()
        .map(|x| x.order())
        .try_reduce(|| 1, |a, b| Ok(a.lcm(&b)))?;
    let series = derived_series(g)?;
    Ok(GroupStructureReport {
        order: g.order() as u64,
        is_abelian: abelian,
        is_elementary_abelian: abelian && is_prime(ell) && !g.is_trivial() && exponent == ell,
        derived_length: derived_length(&series),
        exponent,
    })
}
