use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::arith::{is_prime, mod_pow};
use crate::error::{domain, Error, Result};

/// The modulus `p^e` of a residue ring `Z/p^e`.
///
/// `p^e` must fit in 16 bits; entries are stored as `u16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Modulus {
    prime: u16,
    exponent: u8,
    value: u16,
}

impl Modulus {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(domain(format!("modulus base {prime} is not prime")));
        }
        if exponent == 0 {
            return Err(domain("modulus exponent must be positive"));
        }
        let value = (prime as u128)
            .checked_pow(exponent)
            .filter(|v| *v <= u16::MAX as u128)
            .ok_or_else(|| domain(format!("{prime}^{exponent} does not fit in 16 bits")))?;
        Ok(Self {
            prime: prime as u16,
            exponent: exponent as u8,
            value: value as u16,
        })
    }

    pub fn prime(self) -> u64 {
        self.prime as u64
    }

    pub fn exponent(self) -> u32 {
        self.exponent as u32
    }

    /// `p^e`.
    pub fn value(self) -> u64 {
        self.value as u64
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "Z/{}", self.prime)
        } else {
            write!(f, "Z/{}^{}", self.prime, self.exponent)
        }
    }
}

type Entries = SmallVec<[u16; 16]>;

/// A square matrix over `Z/p^e`, row-major, every entry reduced.
///
/// Equality, hashing and ordering all go through the reduced entry sequence,
/// which is what group enumeration uses as a set key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMatrix {
    dim: u8,
    modulus: Modulus,
    entries: Entries,
}

impl ResidueMatrix {
    /// Builds a matrix from row-major entries, reducing each modulo `p^e`.
    pub fn new(
        dim: usize,
        modulus: Modulus,
        entries: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if dim == 0 || dim > u8::MAX as usize {
            return Err(domain(format!("unsupported matrix dimension {dim}")));
        }
        let m = modulus.value();
        let entries: Entries = entries.into_iter().map(|x| (x % m) as u16).collect();
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            dim: dim as u8,
            modulus,
            entries,
        })
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape("rows must form a square matrix".into()));
        }
        Self::new(dim, modulus, rows.iter().flatten().copied())
    }

    pub fn identity(dim: usize, modulus: Modulus) -> Self {
        Self::new(
            dim,
            modulus,
            (0..dim * dim).map(|k| u64::from(k % (dim + 1) == 0)),
        )
        .expect("identity has a valid shape")
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        Self::new(dim, modulus, std::iter::repeat_n(0, dim * dim)).expect("valid shape")
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim() + col] as u64
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries
            .chunks(self.dim())
            .map(|r| r.iter().map(|&x| x as u64).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &x)| x == u16::from(k % (n + 1) == 0))
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dim == other.dim && self.modulus == other.modulus
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{n}x{n} over {m} vs {k}x{k} over {o}",
                n = self.dim,
                m = self.modulus,
                k = other.dim,
                o = other.modulus
            )))
        }
    }

    /// Product `self * rhs`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim();
        let m = self.modulus.value();
        let mut out: Entries = SmallVec::with_capacity(n * n);
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = 0u64;
                for (k, &a) in row.iter().enumerate() {
                    acc += a as u64 * rhs.entries[k * n + j] as u64;
                }
                out.push((acc % m) as u16);
            }
        }
        Self {
            dim: self.dim,
            modulus: self.modulus,
            entries: out,
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity(self.dim(), self.modulus);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Rank of the reduction modulo `p`.
    fn rank_mod_p(&self) -> usize {
        let p = self.modulus.prime();
        let n = self.dim();
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64 % p).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            for c in 0..n {
                a.swap(rank * n + c, pivot * n + c);
            }
            let inv = mod_pow(a[rank * n + col], p - 2, p);
            for r in 0..n {
                if r != rank && a[r * n + col] != 0 {
                    let factor = a[r * n + col] * inv % p;
                    for c in 0..n {
                        a[r * n + c] = (a[r * n + c] + p * p - factor * a[rank * n + c]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// A matrix over `Z/p^e` is a unit iff its reduction mod `p` is.
    pub fn is_invertible(&self) -> bool {
        self.rank_mod_p() == self.dim()
    }

    /// Inverse mod `p` by Gauss-Jordan, then lifted to `p^e` by Newton steps
    /// `X <- X (2I - A X)`, each of which doubles the p-adic precision.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.modulus.prime();
        let n = self.dim();
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64 % p).collect();
        let mut inv: Vec<u64> = (0..n * n).map(|k| u64::from(k % (n + 1) == 0)).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(Error::NotInvertible)?;
            for c in 0..n {
                a.swap(col * n + c, pivot * n + c);
                inv.swap(col * n + c, pivot * n + c);
            }
            let scale = mod_pow(a[col * n + col], p - 2, p);
            for c in 0..n {
                a[col * n + c] = a[col * n + c] * scale % p;
                inv[col * n + c] = inv[col * n + c] * scale % p;
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r != col && factor != 0 {
                    for c in 0..n {
                        a[r * n + c] = (a[r * n + c] + p * p - factor * a[col * n + c]) % p;
                        inv[r * n + c] = (inv[r * n + c] + p * p - factor * inv[col * n + c]) % p;
                    }
                }
            }
        }
        let mut x = Self::new(n, self.modulus, inv)?;
        let m = self.modulus.value();
        let mut precision = 1;
        while precision < self.modulus.exponent() {
            let ax = self.mul_unchecked(&x);
            let correction = Self::new(
                n,
                self.modulus,
                ax.entries.iter().enumerate().map(|(k, &v)| {
                    let two_i = if k % (n + 1) == 0 { 2 } else { 0 };
                    (two_i + m - v as u64) % m
                }),
            )?;
            x = x.mul_unchecked(&correction);
            precision *= 2;
        }
        if !self.mul_unchecked(&x).is_identity() {
            return Err(Error::Internal("lifted inverse failed to verify".into()));
        }
        Ok(x)
    }

    /// Order of the matrix in the unit group.
    pub fn order(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut x = self.clone();
        let mut t = 1;
        while !x.is_identity() {
            x = x.mul_unchecked(self);
            t += 1;
        }
        Ok(t)
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        Ok(ab.mul_unchecked(&ba.inverse()?))
    }

    /// `x self x^-1`.
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        self.check_shape(x)?;
        Ok(x.mul_unchecked(self).mul_unchecked(&x.inverse()?))
    }
}

/// Entrywise-reduced product of two matrices of the same shape.
pub fn mat_mul(a: &ResidueMatrix, b: &ResidueMatrix) -> Result<ResidueMatrix> {
    a.try_mul(b)
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.rows(), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, e: u32, rows: &[&[u64]]) -> ResidueMatrix {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        ResidueMatrix::from_rows(Modulus::new(p, e).unwrap(), &rows).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = m(2, 2, &[&[1, 2], &[0, 1]]);
        assert!(a.try_mul(&a).unwrap().is_identity());
        let swap = m(2, 1, &[&[0, 1], &[1, 0]]);
        assert!(mat_mul(&swap, &swap).unwrap().is_identity());
        let x = m(5, 1, &[&[3, 4], &[1, 2]]);
        let id = ResidueMatrix::identity(2, x.modulus());
        assert_eq!(id.try_mul(&x).unwrap(), x);
        assert_eq!(x.try_mul(&id).unwrap(), x);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = m(2, 1, &[&[1, 0], &[0, 1]]);
        let b = m(3, 1, &[&[1, 0], &[0, 1]]);
        let c = ResidueMatrix::identity(3, Modulus::new(2, 1).unwrap());
        assert!(matches!(a.try_mul(&b), Err(Error::Shape(_))));
        assert!(matches!(a.try_mul(&c), Err(Error::Shape(_))));
    }

    #[test]
    fn entries_are_reduced() {
        let a = m(3, 1, &[&[4, 5], &[0, 7]]);
        assert_eq!(a.entries(), &[1, 2, 0, 1]);
    }

    #[test]
    fn invertibility_examples() {
        let md = Modulus::new(2, 2).unwrap();
        assert!(ResidueMatrix::identity(2, md).is_invertible());
        assert!(!ResidueMatrix::zero(2, md).is_invertible());
        assert!(!m(2, 2, &[&[2, 0], &[0, 1]]).is_invertible());
        assert!(m(2, 2, &[&[3, 0], &[0, 1]]).is_invertible());
        assert_eq!(
            m(2, 2, &[&[2, 0], &[0, 1]]).inverse(),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn inverse_examples() {
        let id = ResidueMatrix::identity(3, Modulus::new(7, 1).unwrap());
        assert_eq!(id.inverse().unwrap(), id);
        let swap = m(3, 1, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), swap);
        let t = m(5, 1, &[&[1, 1], &[0, 1]]);
        let t_inv = t.inverse().unwrap();
        assert_eq!(t_inv, m(5, 1, &[&[1, 4], &[0, 1]]));
        assert!(t.try_mul(&t_inv).unwrap().is_identity());
    }

    #[test]
    fn inverse_lifts_to_prime_powers() {
        // exhaustive over 2x2 matrices mod 8 and mod 9
        for (p, e) in [(2u64, 3u32), (3, 2)] {
            let md = Modulus::new(p, e).unwrap();
            let q = md.value();
            for code in 0..q.pow(4) {
                let entries = [code % q, code / q % q, code / q / q % q, code / q / q / q];
                let a = ResidueMatrix::new(2, md, entries).unwrap();
                match a.inverse() {
                    Ok(inv) => {
                        assert!(a.is_invertible());
                        assert!(a.try_mul(&inv).unwrap().is_identity());
                        assert!(inv.try_mul(&a).unwrap().is_identity());
                    }
                    Err(err) => {
                        assert_eq!(err, Error::NotInvertible);
                        assert!(!a.is_invertible());
                    }
                }
            }
        }
    }

    #[test]
    fn order_and_commutator() {
        let t = m(5, 1, &[&[1, 1], &[0, 1]]);
        assert_eq!(t.order().unwrap(), 5);
        assert_eq!(t.pow(5), ResidueMatrix::identity(2, t.modulus()));
        let u = m(5, 1, &[&[1, 0], &[1, 1]]);
        let c = t.commutator(&u).unwrap();
        let expected = t
            .try_mul(&u)
            .unwrap()
            .try_mul(&t.inverse().unwrap())
            .unwrap()
            .try_mul(&u.inverse().unwrap())
            .unwrap();
        assert_eq!(c, expected);
        assert!(t.commutator(&t).unwrap().is_identity());
    }

    #[test]
    fn modulus_limits() {
        assert!(Modulus::new(4, 1).is_err());
        assert!(Modulus::new(2, 0).is_err());
        assert!(Modulus::new(2, 17).is_err());
        assert_eq!(Modulus::new(3, 3).unwrap().value(), 27);
    }
}
