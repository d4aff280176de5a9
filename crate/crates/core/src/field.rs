//! Exact coefficient fields for homology: the rationals and prime fields.

use std::fmt;

use num::{BigRational, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("unknown field '{0}' (expected rat, gf2, or gf:<p>)")]
    UnknownField(String),
}

/// Which field homology is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// GF(p) for a prime p.
    Prime(u64),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    /// Parses the command-line form: `rat`, `gf2`, or `gf:<p>`.
    pub fn parse(text: &str) -> Result<FieldSpec, FieldError> {
        match text {
            "rat" | "rationals" | "q" => Ok(FieldSpec::Rationals),
            "gf2" => Ok(FieldSpec::Prime(2)),
            other => {
                if let Some(p) = other.strip_prefix("gf:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| FieldError::UnknownField(other.to_string()))?;
                    if !is_prime(p) {
                        return Err(FieldError::NonPrimeModulus(p));
                    }
                    Ok(FieldSpec::Prime(p))
                } else {
                    Err(FieldError::UnknownField(other.to_string()))
                }
            }
        }
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(FieldError::NonPrimeModulus(*p))
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
        }
    }
}

/// Arithmetic context for an exact field. Elements carry no modulus of their
/// own; all operations go through the context.
pub trait FieldOps {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn embed_i64(&self, value: i64) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn embed_i64(&self, value: i64) -> BigRational {
        BigRational::from_integer(value.into())
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
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

    fn inv(&self, a: &BigRational) -> BigRational {
        debug_assert!(!a.is_zero());
        let one: BigRational = One::one();
        one / a
    }
}

/// GF(p): integers modulo a prime, elements kept in canonical form `0..p`.
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow_mod(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn embed_i64(&self, value: i64) -> u64 {
        let p = self.p as i128;
        (((value as i128 % p) + p) % p) as u64
    }

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
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
        self.mul_mod(*a, *b)
    }

    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        // Fermat: a^(p-2) mod p
        self.pow_mod(*a, self.p - 2)
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul_mod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow_mod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base);
            }
            base = mul_mod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!(FieldSpec::parse("rat").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("gf2").unwrap(), FieldSpec::Prime(2));
        assert_eq!(FieldSpec::parse("gf:7").unwrap(), FieldSpec::Prime(7));
        assert!(matches!(FieldSpec::parse("gf:6"), Err(FieldError::NonPrimeModulus(6))));
        assert!(matches!(FieldSpec::parse("float"), Err(FieldError::UnknownField(_))));
    }

    #[test]
    fn primality_matches_trial_division_on_small_numbers() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn prime_field_arithmetic_round_trips() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13u64 {
            let inv = f.inv(&a);
            assert_eq!(f.mul(&a, &inv), 1, "a = {a}");
        }
        assert_eq!(f.embed_i64(-1), 12);
        assert_eq!(f.sub(&3, &7), 9);
    }

    #[test]
    fn rational_ops_are_exact() {
        let f = Rationals;
        let third = f.div(&f.embed_i64(1), &f.embed_i64(3));
        let sum = f.add(&f.add(&third, &third), &third);
        assert_eq!(sum, f.embed_i64(1));
    }
}
