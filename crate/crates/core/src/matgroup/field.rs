//! `F_q` realized as `f x f` matrices over `F_p` (the regular representation).
//!
//! A fixed primitive polynomial is stored per `(p, f)` so that every
//! enumeration is reproducible bit for bit. For `(p, f)` outside the table
//! the lexicographically first primitive polynomial is used.

use crate::arith::{is_prime, PrimePower};
use crate::error::{domain, Error, Result};

use super::matrix::{Modulus, ResidueMatrix};

/// Conway polynomials, coefficients low degree first, monic term omitted.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
];

/// The field `F_q` as a ring of `f x f` matrices over `F_p`.
#[derive(Clone, Debug)]
pub struct FieldRep {
    q: PrimePower,
    /// Monic primitive polynomial, low degree first, length `f + 1`.
    poly: Vec<u64>,
    /// Multiplication by a root of `poly`; generates `F_q^*`.
    generator: ResidueMatrix,
}

impl FieldRep {
    pub fn new(q: &PrimePower) -> Result<Self> {
        let p = q.p();
        let f = q.f();
        let modulus = Modulus::new(p, 1)?;
        let field_order = q
            .q_u64()
            .filter(|&v| v <= 1 << 32)
            .ok_or_else(|| domain(format!("field F_{q} is too large to realize as matrices")))?;

        if f == 1 {
            let root = (1..p.max(2))
                .find(|&g| is_primitive_root(g, p))
                .unwrap_or(1);
            let generator = ResidueMatrix::new(1, modulus, [root])?;
            let poly = vec![(p - root) % p, 1];
            return Ok(Self {
                q: q.clone(),
                poly,
                generator,
            });
        }

        let lower: Vec<u64> = match CONWAY.iter().find(|(cp, cf, _)| *cp == p && *cf == f) {
            Some((_, _, coeffs)) => coeffs.to_vec(),
            None => first_primitive(p, f, field_order, modulus)?,
        };
        let generator = companion(&lower, modulus)?;
        if !has_order(&generator, field_order - 1) {
            return Err(Error::Internal(format!(
                "stored polynomial for F_{q} is not primitive"
            )));
        }
        let mut poly = lower;
        poly.push(1);
        Ok(Self {
            q: q.clone(),
            poly,
            generator,
        })
    }

    pub fn size(&self) -> &PrimePower {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.q.f() as usize
    }

    pub fn modulus(&self) -> Modulus {
        self.generator.modulus()
    }

    pub fn polynomial(&self) -> &[u64] {
        &self.poly
    }

    /// A primitive element `alpha` of `F_q`.
    pub fn generator(&self) -> &ResidueMatrix {
        &self.generator
    }

    pub fn one(&self) -> ResidueMatrix {
        ResidueMatrix::identity(self.degree(), self.modulus())
    }

    pub fn zero(&self) -> ResidueMatrix {
        ResidueMatrix::zero(self.degree(), self.modulus())
    }

    /// `1, alpha, ..., alpha^(f-1)`: an `F_p`-basis of `F_q`.
    pub fn basis(&self) -> Vec<ResidueMatrix> {
        (0..self.degree() as u64)
            .map(|k| self.generator.pow(k))
            .collect()
    }

    /// `sum_k coeffs[k] alpha^k`.
    pub fn element(&self, coeffs: &[u64]) -> Result<ResidueMatrix> {
        if coeffs.len() != self.degree() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        let p = self.q.p();
        let f = self.degree();
        let mut acc = vec![0u64; f * f];
        for (c, b) in coeffs.iter().zip(self.basis()) {
            for (slot, &x) in acc.iter_mut().zip(b.entries()) {
                *slot = (*slot + c % p * x as u64) % p;
            }
        }
        ResidueMatrix::new(f, self.modulus(), acc)
    }

    /// All `q` field elements, in coordinate order.
    pub fn elements(&self) -> Vec<ResidueMatrix> {
        let p = self.q.p();
        let f = self.degree();
        let count = self.q.q_u64().expect("checked at construction");
        (0..count)
            .map(|code| {
                let coeffs: Vec<u64> = (0..f as u32).map(|k| code / p.pow(k) % p).collect();
                self.element(&coeffs).expect("coordinate count matches")
            })
            .collect()
    }

    /// Assembles an `n x n` matrix of field elements into the `nf x nf`
    /// block matrix over `F_p`.
    pub fn embed(&self, n: usize, blocks: &[ResidueMatrix]) -> Result<ResidueMatrix> {
        if blocks.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} blocks, got {}",
                n * n,
                blocks.len()
            )));
        }
        let f = self.degree();
        let big = n * f;
        let mut entries = vec![0u64; big * big];
        for (idx, block) in blocks.iter().enumerate() {
            if block.dim() != f || block.modulus() != self.modulus() {
                return Err(Error::Shape("block is not an element of this field".into()));
            }
            let (bi, bj) = (idx / n, idx % n);
            for r in 0..f {
                for c in 0..f {
                    entries[(bi * f + r) * big + bj * f + c] = block.get(r, c);
                }
            }
        }
        ResidueMatrix::new(big, self.modulus(), entries)
    }
}

fn is_primitive_root(g: u64, p: u64) -> bool {
    if p == 2 {
        return g % 2 == 1;
    }
    crate::arith::multiplicative_order(g, p).is_ok_and(|t| t == p - 1)
}

/// Companion matrix of `x^f + sum c_k x^k`: multiplication by `x` on the
/// basis `1, x, ..., x^(f-1)` (acting on column vectors).
fn companion(lower: &[u64], modulus: Modulus) -> Result<ResidueMatrix> {
    let f = lower.len();
    let p = modulus.prime();
    let mut entries = vec![0u64; f * f];
    for j in 0..f - 1 {
        entries[(j + 1) * f + j] = 1;
    }
    for (i, &c) in lower.iter().enumerate() {
        entries[i * f + f - 1] = (p - c % p) % p;
    }
    ResidueMatrix::new(f, modulus, entries)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `x` has multiplicative order exactly `order`.
fn has_order(x: &ResidueMatrix, order: u64) -> bool {
    x.pow(order).is_identity()
        && prime_factors(order)
            .into_iter()
            .all(|r| !x.pow(order / r).is_identity())
}

fn first_primitive(p: u64, f: u32, field_order: u64, modulus: Modulus) -> Result<Vec<u64>> {
    debug_assert!(is_prime(p));
    let count = field_order;
    for code in 0..count {
        let lower: Vec<u64> = (0..f).map(|k| code / p.pow(k) % p).collect();
        if lower[0] == 0 {
            continue;
        }
        let c = companion(&lower, modulus)?;
        if has_order(&c, field_order - 1) {
            return Ok(lower);
        }
    }
    Err(Error::Internal(format!(
        "no primitive polynomial found for {p}^{f}"
    )))
}

/// `true` when `poly` (low degree first, monic) has no root in `F_p` and no
/// nontrivial factorization; brute force over all monic divisors.
#[cfg(test)]
fn irreducible_by_trial_division(poly: &[u64], p: u64) -> bool {
    use crate::arith::mod_pow;

    fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let db = b.len() - 1;
        while a.len() > db && !a.is_empty() {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - db;
            let inv = mod_pow(b[db], p - 2, p);
            let factor = lead * inv % p;
            for (k, &bk) in b.iter().enumerate() {
                a[shift + k] = (a[shift + k] + p * p - factor * bk % p) % p;
            }
            a.pop();
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor: Vec<u64> = (0..d as u32).map(|k| code / p.pow(k) % p).collect();
            divisor.push(1);
            if rem(poly.to_vec(), &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}
