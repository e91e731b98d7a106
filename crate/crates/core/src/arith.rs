//! Exact integer number theory.
//!
//! Everything here is deterministic and exact: primality by trial division,
//! multiplicative orders by iteration, and the order of `GL_n(F_q)` in
//! arbitrary precision.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};

/// Deterministic primality test by trial division up to `sqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// `base^exp mod modulus`, with `modulus >= 1`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least `t >= 1` with `a^t = 1 (mod n)`.
///
/// Fails with a domain error when `n < 2` or `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(domain(format!("modulus must be at least 2, got {n}")));
    }
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(domain(format!("{a} is not a unit modulo {n}")));
    }
    let (a, n) = (a as u128, n as u128);
    let mut x = a;
    let mut t = 1u64;
    while x != 1 {
        x = x * a % n;
        t += 1;
    }
    Ok(t)
}

/// Exponent of the exact power of `ell` dividing `x`.
pub fn ell_adic_valuation(x: u64, ell: u64) -> Result<u32> {
    check_prime("ell", ell)?;
    if x == 0 {
        return Err(domain("valuation of zero is undefined"));
    }
    let mut x = x;
    let mut v = 0;
    while x.is_multiple_of(ell) {
        x /= ell;
        v += 1;
    }
    Ok(v)
}

/// Arbitrary-precision variant of [`ell_adic_valuation`].
pub fn ell_adic_valuation_big(x: &BigUint, ell: u64) -> Result<u32> {
    check_prime("ell", ell)?;
    if x.is_zero() {
        return Err(domain("valuation of zero is undefined"));
    }
    let ell_big = BigUint::from(ell);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = num_integer::Integer::div_rem(&x, &ell_big);
        if !rem.is_zero() {
            return Ok(v);
        }
        x = quot;
        v += 1;
    }
}

pub(crate) fn check_prime(name: &str, value: u64) -> Result<()> {
    if is_prime(value) {
        Ok(())
    } else {
        Err(domain(format!("{name} = {value} is not prime")))
    }
}

/// A field size `q = p^f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimePower {
    p: u64,
    f: u32,
    q: BigUint,
}

impl PrimePower {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        check_prime("p", p)?;
        if f == 0 {
            return Err(domain("field degree f must be positive"));
        }
        Ok(Self {
            p,
            f,
            q: BigUint::from(p).pow(f),
        })
    }

    /// Shorthand for a prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `q` as a machine integer, when it fits.
    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.f)
        }
    }
}

impl Serialize for PrimePower {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            p: u64,
            f: u32,
            q: &'a str,
        }
        Repr {
            p: self.p,
            f: self.f,
            q: &self.q.to_string(),
        }
        .serialize(serializer)
    }
}

/// `|GL_n(F_q)| = prod_{j=0}^{n-1} (q^n - q^j)`, exactly.
pub fn gl_order(n: u32, q: &PrimePower) -> BigUint {
    let qn = q.q().pow(n);
    let mut qj = BigUint::one();
    let mut order = BigUint::one();
    for _ in 0..n {
        order *= &qn - &qj;
        qj *= q.q();
    }
    order
}

/// Least `m >= 1` with `p^(f m) = 1 (mod ell)`: the order of `q` modulo `ell`.
pub fn m_ell(p: u64, f: u32, ell: u64) -> Result<u64> {
    check_prime("p", p)?;
    check_prime("ell", ell)?;
    if p == ell {
        return Err(domain(format!("ell must differ from p (both are {p})")));
    }
    if f == 0 {
        return Err(domain("field degree f must be positive"));
    }
    multiplicative_order(mod_pow(p, f as u64, ell), ell)
}

/// Least `nu >= 0` with `ell^nu > m / m_ell`, decided as `ell^nu * m_ell > m`.
///
/// # Panics
///
/// Panics if `m_ell == 0` or `ell < 2`.
pub fn min_nu(m: u64, m_ell: u64, ell: u64) -> u32 {
    assert!(m_ell >= 1, "m_ell must be positive");
    assert!(ell >= 2, "ell must be at least 2");
    let (m, m_ell, ell) = (m as u128, m_ell as u128, ell as u128);
    let mut power: u128 = 1;
    let mut nu = 0;
    while power * m_ell <= m {
        power *= ell;
        nu += 1;
    }
    nu
}
