//! Coefficient rings.
//!
//! [`Ring`] is the minimum the matrix code needs; [`Scalar`] adds the ordered
//! Euclidean structure used for normal forms, lattices and group exponents.
//! Both are implemented for `i64`, `i128` and [`BigInt`]; [`Mod61`] is a
//! [`Ring`] only and serves as a certified shadow of very large integer
//! computations.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + From<i64>
    + Send
    + Sync
    + 'static
{
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.mul_ref(b);
    }
}

/// Exact, ordered integers.
pub trait Scalar: Ring + Eq + Ord + Hash + Display + Integer + Signed + ToPrimitive + FromStr {}

impl Ring for i64 {}
impl Ring for i128 {}

impl Ring for BigInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// Convert between scalar types through their decimal representation.
///
/// Returns `None` when the value does not fit the target type.
pub fn convert<S: Display, T: FromStr>(value: &S) -> Option<T> {
    value.to_string().parse().ok()
}

pub fn to_bigint<S: Scalar>(value: &S) -> BigInt {
    convert(value).expect("every scalar has a decimal BigInt representation")
}

pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Residue modulo the Mersenne prime 2^61 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mod61(u64);

impl Mod61 {
    pub fn new(value: u64) -> Self {
        Mod61(value % MERSENNE_61)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_bigint(value: &BigInt) -> Self {
        let p = BigInt::from(MERSENNE_61);
        let r = value.mod_floor(&p);
        Mod61(r.to_u64().expect("residue fits in u64"))
    }

    fn reduce(x: u128) -> u64 {
        let p = MERSENNE_61 as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let r = folded as u64;
        if r >= MERSENNE_61 {
            r - MERSENNE_61
        } else {
            r
        }
    }
}

impl Debug for Mod61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^61-1)", self.0)
    }
}

impl Display for Mod61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Mod61 {
    fn from(v: i64) -> Self {
        if v >= 0 {
            Mod61::new(v as u64)
        } else {
            -Mod61::new(v.unsigned_abs())
        }
    }
}

impl Add for Mod61 {
    type Output = Mod61;
    fn add(self, rhs: Mod61) -> Mod61 {
        let s = self.0 + rhs.0;
        Mod61(if s >= MERSENNE_61 { s - MERSENNE_61 } else { s })
    }
}

impl Sub for Mod61 {
    type Output = Mod61;
    fn sub(self, rhs: Mod61) -> Mod61 {
        self + (-rhs)
    }
}

impl Neg for Mod61 {
    type Output = Mod61;
    fn neg(self) -> Mod61 {
        if self.0 == 0 {
            self
        } else {
            Mod61(MERSENNE_61 - self.0)
        }
    }
}

impl Mul for Mod61 {
    type Output = Mod61;
    fn mul(self, rhs: Mod61) -> Mod61 {
        Mod61(Mod61::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl AddAssign for Mod61 {
    fn add_assign(&mut self, rhs: Mod61) {
        *self = *self + rhs;
    }
}

impl SubAssign for Mod61 {
    fn sub_assign(&mut self, rhs: Mod61) {
        *self = *self - rhs;
    }
}

impl Zero for Mod61 {
    fn zero() -> Self {
        Mod61(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Mod61 {
    fn one() -> Self {
        Mod61(1)
    }
}

impl Ring for Mod61 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod61_matches_bigint_arithmetic() {
        let a = BigInt::from(123_456_789_012_345_i64) * BigInt::from(987_654_321_i64);
        let b = BigInt::from(-55_555_555_555_i64);
        let p = BigInt::from(MERSENNE_61);
        let expect = (&a * &b + &a - &b).mod_floor(&p);
        let got = Mod61::from_bigint(&a) * Mod61::from_bigint(&b) + Mod61::from_bigint(&a) - Mod61::from_bigint(&b);
        assert_eq!(BigInt::from(got.value()), expect);
    }

    #[test]
    fn mod61_negatives() {
        assert_eq!(Mod61::from(-1) + Mod61::one(), Mod61::zero());
        assert_eq!(Mod61::from(-3) * Mod61::from(-3), Mod61::from(9));
        assert_eq!(Mod61::from_bigint(&BigInt::from(-7)), Mod61::from(-7));
    }

    #[test]
    fn convert_reports_overflow() {
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(convert::<BigInt, i64>(&big), None);
        assert_eq!(convert::<BigInt, i128>(&big), Some(i64::MAX as i128 * 4));
    }
}
