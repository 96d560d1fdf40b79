//! Exact binomial and p-adic arithmetic.
//!
//! Everything here is integer-exact. Binomials are arbitrary precision; the
//! digit-wise routines (`binom_mod_p`, `kummer_carries`) work on base-`p`
//! expansions and never form the full binomial.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime, validated on construction by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeP(u64);

impl PrimeP {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidPrime { p, reason: "p = 2 is not supported" });
        }
        if p < 3 {
            return Err(Error::InvalidPrime { p, reason: "p must be at least 3" });
        }
        if p % 2 == 0 {
            return Err(Error::InvalidPrime { p, reason: "even" });
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return Err(Error::InvalidPrime { p, reason: "composite" });
            }
            d += 2;
        }
        Ok(PrimeP(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^e`, or `None` if it does not fit in a `u128`.
    pub fn checked_pow(self, e: u32) -> Option<u128> {
        (self.0 as u128).checked_pow(e)
    }
}

impl TryFrom<u64> for PrimeP {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeP::new(p)
    }
}

impl From<PrimeP> for u64 {
    fn from(p: PrimeP) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// p-adic valuation: the largest `t` with `p^t | m`.
pub fn vp<T>(m: &T, p: PrimeP) -> Result<u32>
where
    T: Integer + Clone + FromPrimitive,
{
    if m.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = T::from_u64(p.get()).expect("prime fits the integer type");
    let mut m = m.clone();
    let mut t = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(t);
        }
        m = q;
        t += 1;
    }
}

/// `C(a, b)` exactly; zero when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Signed convenience wrapper around [`binom`]; also zero for negative `a`.
pub fn binom_int(a: i64, b: i64) -> BigInt {
    if a < 0 {
        return BigInt::zero();
    }
    BigInt::from(binom(a as u64, b))
}

/// Base-`p` digits, least significant first.
pub fn digits(mut n: u64, p: PrimeP) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p.get());
        n /= p.get();
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// `C(a, b) mod p` for `a, b < p`.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = mul_mod(num, a - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// `C(a, b) mod p` by Lucas' theorem on the base-`p` digits of `a` and `b`.
pub fn binom_mod_p(a: u64, b: u64, p: PrimeP) -> u64 {
    if b > a {
        return 0;
    }
    let (mut a, mut b) = (a, b);
    let q = p.get();
    let mut acc = 1 % q;
    while b > 0 {
        let (ad, bd) = (a % q, b % q);
        if bd > ad {
            return 0;
        }
        acc = mul_mod(acc, small_binom_mod(ad, bd, q), q);
        a /= q;
        b /= q;
    }
    acc
}

/// Number of carries when adding `x` and `y` in base `p`.
pub fn kummer_carries(x: u64, y: u64, p: PrimeP) -> u32 {
    let q = p.get();
    let (mut x, mut y) = (x, y);
    let mut carry = 0u64;
    let mut count = 0;
    while x > 0 || y > 0 || carry > 0 {
        let s = x % q + y % q + carry;
        carry = u64::from(s >= q);
        count += carry as u32;
        x /= q;
        y /= q;
    }
    count
}

/// Least `l >= 0` with `t < p^l`.
pub fn lp(t: u64, p: PrimeP) -> u32 {
    let mut l = 0;
    let mut pow: u128 = 1;
    while (t as u128) >= pow {
        pow *= p.get() as u128;
        l += 1;
    }
    l
}

/// Whether `p` divides every one of `C(a, b), C(a-1, b-1), ..., C(a-b+1, 1)`.
///
/// Evaluated directly with [`binom_mod_p`]; [`all_divisible_criterion`] is the
/// closed form it must agree with.
pub fn all_divisible(a: u64, b: u64, p: PrimeP) -> Result<bool> {
    check_chain_args(a, b)?;
    Ok((0..b).all(|k| binom_mod_p(a - k, b - k, p) == 0))
}

/// `a - b ≡ -1 (mod p^{lp(b)})`.
pub fn all_divisible_criterion(a: u64, b: u64, p: PrimeP) -> Result<bool> {
    check_chain_args(a, b)?;
    let modulus = p
        .checked_pow(lp(b, p))
        .expect("p^lp(b) <= p*b fits in u128");
    Ok(((a - b) as u128 + 1) % modulus == 0)
}

fn check_chain_args(a: u64, b: u64) -> Result<()> {
    if b < 1 || a < b {
        return Err(Error::InvalidInput(format!(
            "binomial chain needs a >= b >= 1, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &k in parts {
        total += k as u64;
        acc *= binom(total, k as i64);
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `|n|` as a `BigUint`.
pub fn magnitude(n: &BigInt) -> BigUint {
    n.abs().to_biguint().expect("absolute value is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(q: u64) -> PrimeP {
        PrimeP::new(q).unwrap()
    }

    /// Pascal-triangle oracle, independent of the multiplicative formula.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for a in 1..=rows {
            let prev = &t[a - 1];
            let mut row = vec![BigUint::one(); a + 1];
            for b in 1..a {
                row[b] = &prev[b - 1] + &prev[b];
            }
            t.push(row);
        }
        t
    }

    /// Trial-division factorization oracle for the valuation.
    fn valuation_by_factoring(mut m: u64, p: u64) -> u32 {
        let mut count = 0;
        let mut d = 2;
        while m > 1 {
            while m % d == 0 {
                if d == p {
                    count += 1;
                }
                m /= d;
            }
            d += 1;
        }
        count
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeP::new(3).is_ok());
        assert!(PrimeP::new(97).is_ok());
        assert!(matches!(PrimeP::new(2), Err(Error::InvalidPrime { .. })));
        assert!(matches!(PrimeP::new(9), Err(Error::InvalidPrime { .. })));
        assert!(matches!(PrimeP::new(1), Err(Error::InvalidPrime { .. })));
        assert!(matches!(PrimeP::new(0), Err(Error::InvalidPrime { .. })));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&18i64, p(3)).unwrap(), 2);
        assert_eq!(vp(&10i64, p(3)).unwrap(), 0);
        assert_eq!(vp(&6i64, p(3)).unwrap(), valuation_by_factoring(6, 3));
        assert_eq!(vp(&BigInt::from(-54), p(3)).unwrap(), 3);
        assert_eq!(vp(&0i64, p(3)), Err(Error::ZeroValuation));
    }

    #[test]
    fn valuation_matches_factoring() {
        for m in 1..2000u64 {
            for q in [3, 5, 7] {
                assert_eq!(vp(&m, p(q)).unwrap(), valuation_by_factoring(m, q), "m = {m}");
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom(5, 2), BigUint::from(10u32));
        let tri = pascal(8);
        assert_eq!(binom(8, 3), tri[8][3]);
        assert_eq!(binom(8, 3), BigUint::from(56u32));
        assert_eq!(binom(4, 7), BigUint::zero());
        assert_eq!(binom(4, -1), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal() {
        let tri = pascal(120);
        for a in 0..=120u64 {
            for b in 0..=a {
                assert_eq!(binom(a, b as i64), tri[a as usize][b as usize]);
            }
        }
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod_p(7, 2, p(3)), 0);
        assert_eq!(binom_mod_p(4, 3, p(3)), 1);
        for a in 0..50 {
            assert_eq!(binom_mod_p(a, 0, p(5)), 1);
        }
        assert_eq!(binom_mod_p(3, 5, p(3)), 0);
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_carries(2, 2, p(3)), 1);
        assert_eq!(kummer_carries(1, 1, p(3)), 0);
        assert_eq!(kummer_carries(8, 1, p(3)), 2);
        assert_eq!(kummer_carries(0, 0, p(3)), 0);
    }

    #[test]
    fn lp_examples() {
        assert_eq!(lp(0, p(3)), 0);
        assert_eq!(lp(3, p(3)), 2);
        assert_eq!(lp(2, p(3)), 1);
        assert_eq!(lp(8, p(3)), 2);
        assert_eq!(lp(9, p(3)), 3);
    }

    #[test]
    fn divisibility_chain_examples() {
        assert!(all_divisible(11, 3, p(3)).unwrap());
        assert!(!all_divisible(8, 3, p(3)).unwrap());
        for q in [3, 5, 7, 11] {
            assert!(all_divisible(q, 1, p(q)).unwrap());
            assert!(all_divisible_criterion(q, 1, p(q)).unwrap());
        }
        assert!(all_divisible(2, 3, p(3)).is_err());
        assert!(all_divisible(2, 0, p(3)).is_err());
    }

    #[test]
    fn divisibility_chain_matches_criterion() {
        for q in [3, 5, 7] {
            for a in 1..=120 {
                for b in 1..=a {
                    assert_eq!(
                        all_divisible(a, b, p(q)).unwrap(),
                        all_divisible_criterion(a, b, p(q)).unwrap(),
                        "a = {a}, b = {b}, p = {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[3, 2, 1]), BigUint::from(60u32));
        assert_eq!(multinomial(&[3, 3]), binom(6, 3));
        assert_eq!(multinomial(&[7]), BigUint::one());
        assert_eq!(multinomial(&[4, 5, 0, 1]), multinomial(&[5, 4, 1]));
        assert_eq!(factorial(6), BigUint::from(720u32));
    }

    proptest! {
        #[test]
        fn valuation_is_additive(m in 1i64..100_000, n in 1i64..100_000, q in prop::sample::select(vec![3u64, 5, 7, 11])) {
            let pr = p(q);
            prop_assert_eq!(vp(&(m * n), pr).unwrap(), vp(&m, pr).unwrap() + vp(&n, pr).unwrap());
        }

        #[test]
        fn valuation_of_sum_is_min_when_distinct(m in -50_000i64..50_000, n in -50_000i64..50_000, q in prop::sample::select(vec![3u64, 5, 7])) {
            prop_assume!(m != 0 && n != 0 && m + n != 0);
            let pr = p(q);
            let (a, b) = (vp(&m, pr).unwrap(), vp(&n, pr).unwrap());
            prop_assume!(a != b);
            prop_assert_eq!(vp(&(m + n), pr).unwrap(), a.min(b));
        }

        #[test]
        fn lucas_agrees_with_big_binomial(a in 0u64..400, b in 0u64..400, q in prop::sample::select(vec![3u64, 5, 7, 13])) {
            let direct = binom(a, b as i64) % BigUint::from(q);
            prop_assert_eq!(BigUint::from(binom_mod_p(a, b, p(q))), direct);
        }

        #[test]
        fn kummer_agrees_with_valuation(x in 0u64..300, y in 0u64..300, q in prop::sample::select(vec![3u64, 5, 7])) {
            prop_assume!(x + y > 0);
            let c = BigInt::from(binom(x + y, x as i64));
            prop_assert_eq!(kummer_carries(x, y, p(q)), vp(&c, p(q)).unwrap());
        }
    }
}
