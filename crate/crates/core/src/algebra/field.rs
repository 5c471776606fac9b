//! Exact coefficient fields: arbitrary-precision rationals and odd prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::AlgebraError;

/// The coefficient field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rationals with arbitrary-precision integers.
    Rational,
    /// The prime field with the given odd prime modulus.
    Prime(u64),
}

impl Field {
    /// Validates the modulus for a prime field. Rejects 2, composites, and p >= 2^63.
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) || p >= (1 << 63) {
            return Err(AlgebraError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::zero()),
            Field::Prime(p) => FieldElem::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::one()),
            Field::Prime(p) => FieldElem::Fp { val: 1, p: *p },
        }
    }

    /// The field element for a signed integer.
    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                FieldElem::Fp { val: r, p: *p }
            }
        }
    }

    /// n/d as a field element. Fails when d reduces to zero.
    pub fn fraction(&self, n: i64, d: i64) -> Result<FieldElem, AlgebraError> {
        let den = self.from_i64(d);
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.from_i64(n).mul(&den.inv()?))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of one of the supported exact fields.
///
/// Rationals are kept in lowest terms with positive denominator (enforced by
/// `BigRational`); prime-field elements store the canonical residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rational,
            FieldElem::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Fp { val, .. } => *val == 1,
        }
    }

    fn check(&self, other: &FieldElem) {
        debug_assert!(
            self.field() == other.field(),
            "mixed fields: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.check(other);
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Fp { val: a, p }, FieldElem::Fp { val: b, .. }) => {
                let s = a + b;
                FieldElem::Fp { val: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Fp { val, p } => {
                FieldElem::Fp { val: if *val == 0 { 0 } else { p - val }, p: *p }
            }
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.check(other);
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Fp { val: a, p }, FieldElem::Fp { val: b, .. }) => FieldElem::Fp {
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("mixed fields"),
        }
    }

    pub fn inv(&self) -> Result<FieldElem, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rat(a) => FieldElem::Rat(a.recip()),
            FieldElem::Fp { val, p } => FieldElem::Fp { val: mod_inv(*val, *p), p: *p },
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduces a rational element modulo p. Fails when the denominator
    /// vanishes mod p (bad reduction).
    pub fn reduce_mod(&self, p: u64) -> Result<FieldElem, AlgebraError> {
        match self {
            FieldElem::Fp { p: q, .. } if *q == p => Ok(self.clone()),
            FieldElem::Fp { p: q, .. } => Err(AlgebraError::FieldMismatch {
                left: Field::Prime(*q),
                right: Field::Prime(p),
            }),
            FieldElem::Rat(r) => {
                let pb = BigInt::from(p);
                let den = bigint_mod(r.denom(), &pb);
                if den == 0 {
                    return Err(AlgebraError::BadReduction { prime: p });
                }
                let num = bigint_mod(r.numer(), &pb);
                Ok(FieldElem::Fp { val: num, p }.mul(&FieldElem::Fp { val: mod_inv(den, p), p }))
            }
        }
    }

    /// Exposes a rational value as an (numerator, denominator) pair of i64 when small.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    i64::try_from(r.numer()).ok()
                } else {
                    None
                }
            }
            FieldElem::Fp { val, .. } => i64::try_from(*val).ok(),
        }
    }
}

fn bigint_mod(n: &BigInt, p: &BigInt) -> u64 {
    let mut r = n % p;
    if r.is_negative() {
        r += p;
    }
    u64::try_from(&r).expect("residue fits u64")
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime and a != 0
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible: {a} mod {p}");
    if t < 0 {
        t += p as i128;
    }
    t as u64
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64 with the standard witness set
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let q = Field::Rational;
        let x = q.fraction(4, -6).unwrap();
        match &x {
            FieldElem::Rat(r) => {
                assert_eq!(r.numer().to_string(), "-2");
                assert_eq!(r.denom().to_string(), "3");
            }
            _ => panic!(),
        }
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2147483647).is_ok());
    }

    #[test]
    fn fp_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_i64(-3); // 2 mod 5
        assert_eq!(a, f5.from_i64(2));
        assert_eq!(a.mul(&f5.from_i64(3)), f5.from_i64(1));
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(f5.from_i64(4).pow(3), f5.from_i64(4));
    }

    #[test]
    fn reduction_mod_p() {
        let q = Field::Rational;
        let x = q.fraction(1, 3).unwrap();
        assert_eq!(x.reduce_mod(5).unwrap(), Field::prime(5).unwrap().from_i64(2));
        assert!(x.reduce_mod(3).is_err());
    }
}
