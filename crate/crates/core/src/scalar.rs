//! Scalar abstractions shared by the sparse vectors and the exact linear algebra.
//!
//! Coefficient vectors ([`BlockVector`](crate::blocks::BlockVector),
//! [`TabloidVector`](crate::specht::TabloidVector)) only need ring operations,
//! while elimination routines need division. Both are expressed with
//! `num-traits` bounds so the same code runs over `BigInt`, `i64`, `BigRational`
//! and the prime fields [`Fp`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Ring element usable as a sparse-vector coefficient.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + FromStr
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Exact field used by the elimination routines in [`crate::linalg`].
///
/// Implemented for `BigInt`, `i64` and `i128` rationals and for [`Fp`]. Integer
/// types deliberately do not implement it: their `Div` truncates.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_bigint(n: &BigInt) -> Self;
}

impl Field for Ratio<BigInt> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }
}

macro_rules! small_rational_field {
    ($($t:ty),*) => {$(
        impl Field for Ratio<$t> {
            fn from_bigint(n: &BigInt) -> Self {
                let v = <$t>::try_from(n).expect("integer does not fit the rational base type");
                Ratio::from_integer(v)
            }
        }
    )*};
}

small_rational_field!(i64, i128);

/// Element of the prime field `Z/PZ`. `P` must be prime; this is checked when
/// inverting.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: u64) -> Self {
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> FromStr for Fp<P> {
    type Err = std::num::ParseIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<u64>().map(Fp::new)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_bigint(n: &BigInt) -> Self {
        Fp(residue(n, P))
    }
}

/// Least nonnegative residue of `n` modulo `m`.
pub fn residue(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.try_into().expect("residue fits in u64")
}
