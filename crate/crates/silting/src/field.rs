//! Exact scalar arithmetic.
//!
//! Every computation in this crate runs over an exact field: either a prime
//! field F_p (default p = 32003) or the rationals. No floating point anywhere.
//! The field is chosen once per algebra instance and recorded in every derived
//! object through its [`FieldDesc`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default prime modulus. Large enough that characteristic coincidences do
/// not occur at desk scale, small enough for u64 arithmetic.
pub const DEFAULT_PRIME: u64 = 32003;

/// Serializable description of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldDesc {
    #[serde(rename = "prime")]
    Prime(u64),
    #[serde(rename = "rationals")]
    Rationals,
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Prime(p) => write!(f, "F_{p}"),
            FieldDesc::Rationals => write!(f, "Q"),
        }
    }
}

/// A field object owning the arithmetic of its element type.
///
/// Passing the field explicitly keeps elements plain data (a residue is a
/// bare `u64`) and lets the whole crate be monomorphized per field.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn desc(&self) -> FieldDesc;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Parse an integer string (optionally `a/b` over the rationals),
    /// interpreted in the field.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// All roots in the field of the polynomial with the given coefficients
    /// (ascending degree). Multiplicities are collapsed. Over the rationals
    /// this is a verified mod-prime lift and may miss roots with numerator or
    /// denominator beyond the reconstruction bound; every returned value is
    /// an exact root.
    fn poly_roots(&self, poly: &[Self::Elem]) -> Vec<Self::Elem>;

    /// True when the characteristic is zero or greater than `n`; the
    /// precondition for the trace-form radical computation.
    fn characteristic_exceeds(&self, n: usize) -> bool;
}

/// The prime field Z/p for an odd prime p (p = 2 and 3 are also accepted;
/// root finding falls back to exhaustive scan for small p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) {
            return Err(Error::invalid(format!(
                "prime modulus must satisfy 2 <= p < 2^31, got {p}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 11u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let n: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad integer literal '{s}'")))?;
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        let digits = r.to_u64_digits();
        Ok(*digits.1.first().unwrap_or(&0))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn poly_roots(&self, poly: &[u64]) -> Vec<u64> {
        crate::poly::roots_prime(self, poly)
    }

    fn characteristic_exceeds(&self, n: usize) -> bool {
        self.p > n as u64
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational literal '{s}'")))?;
        let d: BigInt = match den {
            Some(d) => d
                .parse()
                .map_err(|_| Error::invalid(format!("bad rational literal '{s}'")))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn poly_roots(&self, poly: &[BigRational]) -> Vec<BigRational> {
        crate::poly::roots_rational(poly)
    }

    fn characteristic_exceeds(&self, _n: usize) -> bool {
        true
    }
}

/// Signed magnitude helper used by the random samplers: small coefficients
/// keep rational arithmetic cheap without losing genericity.
pub fn small_elem<F: Field>(field: &F, n: i64) -> F::Elem {
    field.from_i64(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn prime_field_rejects_composite() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn parse_big_integers_mod_p() {
        let f = PrimeField::new(32003).unwrap();
        let v = f.parse("-1").unwrap();
        assert_eq!(v, 32002);
        let w = f.parse("320030000000000000000007").unwrap();
        assert_eq!(w % 32003, w);
    }

    #[test]
    fn rational_parse_render() {
        let q = Rationals;
        let a = q.parse("-3/6").unwrap();
        assert_eq!(q.render(&a), "-1/2");
        let b = q.parse("4").unwrap();
        assert_eq!(q.render(&b), "4");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = PrimeField::new(32003).unwrap();
        for a in [0u64, 1, 2, 17, 32002] {
            for b in [0u64, 5, 31991] {
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            }
        }
    }
}
