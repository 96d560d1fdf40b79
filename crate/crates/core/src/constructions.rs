//! Explicit elements `u ∈ M^λ` whose `ψ`-images are multiples of fixed
//! vectors, for two-part shapes, plus the dimension bookkeeping for three-part
//! shapes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{binom_int, binom_mod_p, vp, PrimeP};
use crate::blocks::{Block, MAX_GROUND};
use crate::designs::{construct_design, DesignParams};
use crate::error::{Error, Result};
use crate::linalg::{ColumnEchelon, Matrix};
use crate::scalar::residue;
use crate::specht::{
    dim_m, dim_specht, hemmer_check, psi, tabloids, Composition, HemmerReport, Tabloid, TabloidVector,
};

/// Largest `M^λ` handed to the three-row search.
pub const SEARCH_GUARD: u64 = 5000;

/// `λ = (r p^n, p^n)` with `p ∤ r` and `p ∤ r + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case1Params {
    p: PrimeP,
    n: u32,
    r: u64,
}

impl Case1Params {
    pub fn new(p: PrimeP, n: u32, r: u64) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::InvalidParams(format!("need n >= 1 and r >= 1, got n = {n}, r = {r}")));
        }
        if r % p.get() == 0 || (r + 1) % p.get() == 0 {
            return Err(Error::InvalidParams(format!("{p} must divide neither r = {r} nor r + 1")));
        }
        let params = Case1Params { p, n, r };
        params.checked_b()?;
        Ok(params)
    }

    pub fn p(&self) -> PrimeP {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    fn checked_b(&self) -> Result<u64> {
        let b = self.p.checked_pow(self.n).filter(|&b| b * (self.r as u128 + 1) <= MAX_GROUND as u128);
        b.map(|b| b as u64).ok_or_else(|| {
            Error::InvalidParams(format!("(r + 1) p^n exceeds {MAX_GROUND} for p = {}, n = {}, r = {}", self.p, self.n, self.r))
        })
    }

    /// `p^n`.
    pub fn b(&self) -> u64 {
        self.checked_b().expect("validated")
    }

    pub fn shape(&self) -> Composition {
        let b = self.b() as usize;
        Composition::partition(vec![self.r as usize * b, b]).expect("validated")
    }
}

/// `λ = (a, p^n)` with `a >= p^n` and `a ≡ -1 mod p^{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case2Params {
    p: PrimeP,
    n: u32,
    a: u64,
}

impl Case2Params {
    pub fn new(p: PrimeP, n: u32, a: u64) -> Result<Self> {
        let modulus = p
            .checked_pow(n + 1)
            .ok_or_else(|| Error::InvalidParams(format!("{p}^{} overflows", n + 1)))?;
        let b = modulus / p.get() as u128;
        if (a as u128) < b {
            return Err(Error::InvalidParams(format!("a = {a} is smaller than {p}^{n}")));
        }
        if (a as u128 + 1) % modulus != 0 {
            return Err(Error::InvalidParams(format!("a = {a} is not -1 mod {modulus}")));
        }
        if a as u128 + b > MAX_GROUND as u128 {
            return Err(Error::InvalidParams(format!("a + p^n exceeds {MAX_GROUND}")));
        }
        Ok(Case2Params { p, n, a })
    }

    pub fn p(&self) -> PrimeP {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.p.checked_pow(self.n).expect("validated") as u64
    }

    pub fn shape(&self) -> Composition {
        Composition::partition(vec![self.a as usize, self.b() as usize]).expect("validated")
    }
}

/// `Σ_i (i+1) v_i` on `(r p^n, p^n)`, where `v_i` sums the tabloids with
/// exactly `i` of `1..p^n - 1` in row two.
///
/// No divisibility conditions are checked; [`case1_u`] is the validated entry
/// point.
pub fn case1_vector(p: PrimeP, n: u32, r: u64) -> Result<TabloidVector> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParams("need n >= 1 and r >= 1".into()));
    }
    let b = p
        .checked_pow(n)
        .filter(|&b| b * (r as u128 + 1) <= MAX_GROUND as u128)
        .ok_or_else(|| Error::InvalidParams(format!("(r + 1) p^n exceeds {MAX_GROUND}")))? as usize;
    let shape = Composition::partition(vec![r as usize * b, b])?;
    let marked = Block::range(1, b - 1);
    let terms = tabloids(&shape).into_iter().map(|t| {
        let i = t.lower_rows()[0].intersection(marked).len();
        (t, BigInt::from(i + 1))
    });
    TabloidVector::from_terms(shape, terms)
}

/// The first-family witness, with its congruences checked: `ψ_{1,0}(u)` is a
/// unit multiple of the empty tabloid mod `p`, and `ψ_{1,s}(u) ≡ 0` for
/// `1 <= s < p^n`.
pub fn case1_u(params: &Case1Params) -> Result<TabloidVector> {
    let u = case1_vector(params.p, params.n, params.r)?;
    let top = psi(&u, 1, 0)?.fixed_multiple_mod(params.p);
    if !matches!(top, Some(c) if c != 0) {
        return Err(Error::Internal(format!("ψ_(1,0)(u) is not a unit multiple mod {}", params.p)));
    }
    for s in 1..params.b() as usize {
        if !psi(&u, 1, s)?.residues(params.p).is_zero() {
            return Err(Error::Internal(format!("ψ_(1,{s})(u) is nonzero mod {}", params.p)));
        }
    }
    Ok(u)
}

/// `A_{s,t}`: the coefficient in `ψ_{1,s}(u)` of the tabloid with row two
/// `{1..t} ∪ {p^n, …, p^n + s - t - 1}`, by its closed sum.
pub fn a_coefficient(s: u64, t: u64, params: &Case1Params) -> Result<BigInt> {
    let b = params.b();
    if s == 0 || s >= b || t > s {
        return Err(Error::InvalidParams(format!("need 1 <= s < {b} and 0 <= t <= s, got s = {s}, t = {t}")));
    }
    let (b, r, s, t) = (b as i64, params.r as i64, s as i64, t as i64);
    Ok((t..b)
        .map(|m| BigInt::from(m + 1) * binom_int(b - 1 - t, m - t) * binom_int(r * b - s + t + 1, (r - 1) * b + m + 1))
        .sum())
}

/// Row two of the tabloid indexed by `A_{s,t}`.
pub fn a_coefficient_tabloid(s: u64, t: u64, params: &Case1Params) -> Result<Tabloid> {
    let b = params.b() as usize;
    let (s, t) = (s as usize, t as usize);
    if s == 0 || s >= b || t > s {
        return Err(Error::InvalidParams(format!("need 1 <= s < {b} and 0 <= t <= s")));
    }
    Ok(Tabloid::two_part(Block::range(1, t).union(Block::range(b, b + s - t - 1))))
}

/// The second-family witness: all tabloids whose row two avoids `1..p^n`.
/// Checks `ψ_{1,0}(u) = C(a, p^n) ∅` with `p ∤ C(a, p^n)` and
/// `ψ_{1,v}(u) ≡ 0 mod p` for `1 <= v < p^n`.
pub fn case2_u(params: &Case2Params) -> Result<TabloidVector> {
    let shape = params.shape();
    let (a, b) = (params.a as usize, params.b() as usize);
    let free = Block::range(b + 1, a + b);
    let u = TabloidVector::from_terms(shape, free.subsets(b).map(|x| (Tabloid::two_part(x), BigInt::one())))?;
    let top = psi(&u, 1, 0)?.fixed_multiple();
    let expected = binom_int(a as i64, b as i64);
    if top.as_ref() != Some(&expected) || residue(&expected, params.p.get()) == 0 {
        return Err(Error::Internal(format!("ψ_(1,0)(u) = {top:?}, expected a unit multiple {expected}")));
    }
    for v in 1..b {
        if !psi(&u, 1, v)?.residues(params.p).is_zero() {
            return Err(Error::Internal(format!("ψ_(1,{v})(u) is nonzero mod {}", params.p)));
        }
    }
    Ok(u)
}

/// Output of [`main_u`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainWitness {
    pub u: TabloidVector,
    /// `λ_0..λ_{b-1}` with `ψ_{1,v}(u) = λ_v f`.
    pub lambdas: Vec<BigInt>,
}

/// The scalars `λ_s = p^{-d} C(a+b-s, a)` for `s < b`, with `d` the least
/// valuation among them.
pub fn main_scalars(a: u64, b: u64, p: PrimeP) -> Result<Vec<BigInt>> {
    if b == 0 || b > a {
        return Err(Error::InvalidParams(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
    }
    let raw: Vec<BigInt> = (0..b).map(|s| binom_int((a + b - s) as i64, a as i64)).collect();
    let d = raw.iter().map(|x| vp(x, p)).collect::<Result<Vec<u32>>>()?.into_iter().min().unwrap_or(0);
    let scale = BigInt::from(p.get()).pow(d);
    Ok(raw.into_iter().map(|x| x / &scale).collect())
}

/// A witness for any two-part `(a, b)` with `b <= a`: an integral
/// `(a+b, b, λ_0..λ_{b-1})`-design read as an element of `M^{(a,b)}`.
pub fn main_u(a: u64, b: u64, p: PrimeP) -> Result<MainWitness> {
    let lambdas = main_scalars(a, b, p)?;
    if (a + b) as usize > MAX_GROUND {
        return Err(Error::GroundSize { v: (a + b) as usize, max: MAX_GROUND });
    }
    let params = DesignParams::new((a + b) as usize, b as usize, b as usize - 1, lambdas.clone())
        .map_err(|e| Error::Internal(format!("scalars violate the ratio condition: {e}")))?;
    let design = construct_design(&params)?;
    let u = TabloidVector::from_block_vector(&design, b as usize)?;
    for (v, lambda) in lambdas.iter().enumerate() {
        if psi(&u, 1, v)?.fixed_multiple().as_ref() != Some(lambda) {
            return Err(Error::Internal(format!("ψ_(1,{v})(u) is not {lambda} f")));
        }
    }
    if lambdas.iter().all(|l| residue(l, p.get()) == 0) {
        return Err(Error::Internal(format!("all scalars vanish mod {p}")));
    }
    Ok(MainWitness { u, lambdas })
}

/// For a two-part `u` whose images `ψ_{1,v}(u)` are multiples `λ_v f`, checks
/// `C(a+b, v) λ_v = C(b, v) Σ u` for every `v < b`: exactly, or modulo `p`
/// when given (the images then only need to be multiples after reduction).
pub fn coefficient_sum_relation(u: &TabloidVector, p: Option<PrimeP>) -> Result<bool> {
    let shape = u.shape();
    if shape.len() != 2 {
        return Err(Error::InvalidShape(format!("{shape} is not a two-part shape")));
    }
    let (n, b) = (shape.n() as i64, shape.part(2) as i64);
    let total: BigInt = u.iter().map(|(_, c)| c.clone()).sum();
    for v in 0..b {
        let image = psi(u, 1, v as usize)?;
        let lhs_scalar = match p {
            None => image.fixed_multiple(),
            Some(p) => image.fixed_multiple_mod(p).map(BigInt::from),
        };
        let Some(lambda) = lhs_scalar else { return Ok(false) };
        let diff = binom_int(n, v) * lambda - binom_int(b, v) * &total;
        let holds = match p {
            None => diff.is_zero(),
            Some(p) => residue(&diff, p.get()) == 0,
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Common value of the nonzero coefficients, zero for the zero vector.
pub fn uniform_coefficient(u: &TabloidVector) -> Option<BigInt> {
    let mut values = u.iter().map(|(_, c)| c);
    let first = values.next().cloned().unwrap_or_else(BigInt::zero);
    values.all(|c| *c == first).then_some(first)
}

/// Dimension comparison for a three-row shape `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimCheck {
    /// `dim S^λ + dim M^λ`.
    pub lhs: BigInt,
    /// Sum of the two design-space dimensions.
    pub rhs: BigInt,
    pub holds: bool,
}

pub fn three_part_dim_check(a: u64, b: u64, c: u64) -> Result<DimCheck> {
    if !(a >= b && b >= c && c >= 1) {
        return Err(Error::InvalidParams(format!("need a >= b >= c >= 1, got ({a},{b},{c})")));
    }
    let shape = Composition::partition(vec![a as usize, b as usize, c as usize])?;
    let lhs = BigInt::from(dim_specht(&shape)) + BigInt::from(dim_m(&shape));
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let d = a + b + c;
    let two_row = |x: i64, y: i64| binom_int(x + y, y) - binom_int(x + y, y - 1) + 1;
    let rhs = binom_int(d, c) * two_row(a, b) + binom_int(d, a) * two_row(b, c);
    let holds = lhs < rhs;
    Ok(DimCheck { lhs, rhs, holds })
}

/// Result of [`three_part_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Rank of the lattice of `u` whose every kernel-map image is an integer
    /// multiple of the fixed vector.
    pub solution_dim: usize,
    pub u: Option<TabloidVector>,
    pub report: Option<HemmerReport>,
}

/// Searches the lattice `{u : ψ_{i,v}(u) ∈ Z f for every kernel map}` for a
/// three-row shape. Returns the first basis vector with a positive Hemmer
/// verdict, else the first one satisfying condition (i), else none.
pub fn three_part_search(a: u64, b: u64, c: u64, p: PrimeP, guard: u64) -> Result<SearchOutcome> {
    if !(a >= b && b >= c && c >= 1) {
        return Err(Error::InvalidParams(format!("need a >= b >= c >= 1, got ({a},{b},{c})")));
    }
    let shape = Composition::partition(vec![a as usize, b as usize, c as usize])?;
    let count = dim_m(&shape);
    let limit = guard.min(SEARCH_GUARD);
    if count > BigUint::from(limit) {
        return Err(Error::GuardExceeded { what: "tabloids", count: count.to_string(), guard: limit });
    }
    let columns = tabloids(&shape);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in shape.kernel_maps() {
        // images[j] = ψ_{i,v} of the j-th tabloid
        let images: Vec<TabloidVector> = columns
            .iter()
            .map(|t| psi(&TabloidVector::from_terms(shape.clone(), [(t.clone(), BigInt::one())])?, i, v))
            .collect::<Result<_>>()?;
        let targets = tabloids(&shape.psi_target(i, v)?);
        for pair in targets.windows(2) {
            let row: Vec<BigInt> = images.iter().map(|img| img.get(&pair[0]) - img.get(&pair[1])).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = ColumnEchelon::new(&Matrix::from_rows(columns.len(), rows)).kernel();
    let solution_dim = kernel.len();
    let mut fallback = None;
    for vector in kernel {
        let vector = normalize_sign(vector);
        let u = TabloidVector::from_terms(shape.clone(), columns.iter().cloned().zip(vector))?;
        let report = hemmer_check(&u, p)?;
        if report.verdict {
            return Ok(SearchOutcome { solution_dim, u: Some(u), report: Some(report) });
        }
        if report.condition_i && fallback.is_none() {
            fallback = Some((u, report));
        }
    }
    let (u, report) = fallback.unzip();
    Ok(SearchOutcome { solution_dim, u, report })
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -x.clone();
        }
    }
    v
}

/// A constructed element together with its check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub family: Family,
    pub p: PrimeP,
    pub u: TabloidVector,
    /// Per kernel map, the common coefficient of the exact image when all its
    /// nonzero coefficients agree.
    pub scalars: Vec<Option<BigInt>>,
    pub report: HemmerReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Case1,
    Case2,
    Main,
    Search3,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Case1 => "case1",
            Family::Case2 => "case2",
            Family::Main => "main",
            Family::Search3 => "search3",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "case1" => Ok(Family::Case1),
            "case2" => Ok(Family::Case2),
            "main" => Ok(Family::Main),
            "search3" => Ok(Family::Search3),
            other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        }
    }
}

impl Witness {
    pub fn new(family: Family, u: TabloidVector, p: PrimeP) -> Result<Self> {
        let report = hemmer_check(&u, p)?;
        let scalars = u
            .shape()
            .kernel_maps()
            .into_iter()
            .map(|(i, v)| psi(&u, i, v).map(|img| uniform_coefficient(&img)))
            .collect::<Result<_>>()?;
        Ok(Witness { family, p, u, scalars, report })
    }
}

/// `μ` scalars of `ψ_{1,v}(f)` for `(a, b)`, used by the second family's
/// degenerate check `μ ≡ 0`.
pub fn two_part_fixed_scalars(a: u64, b: u64, p: PrimeP) -> Vec<u64> {
    (0..b).map(|v| binom_mod_p(a + b - v, b - v, p)).collect()
}

/// `gcd` of the coefficients, used to report primitive search vectors.
pub fn content(u: &TabloidVector) -> BigInt {
    u.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binom, kummer_carries};
    use crate::specht::{f_lambda, h0_nonzero, in_specht};

    fn p(n: u64) -> PrimeP {
        PrimeP::new(n).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn case1_grid() -> Vec<Case1Params> {
        let mut out = Vec::new();
        for prime in [3, 5] {
            for r in 1..=4 {
                if let Ok(c) = Case1Params::new(p(prime), 1, r) {
                    out.push(c);
                }
            }
        }
        out
    }

    #[test]
    fn case1_params_validation() {
        assert!(Case1Params::new(p(3), 1, 1).is_ok());
        assert!(Case1Params::new(p(3), 1, 3).is_err());
        assert!(Case1Params::new(p(3), 1, 2).is_err());
        assert!(Case1Params::new(p(3), 0, 1).is_err());
        assert!(Case1Params::new(p(3), 3, 1).is_err());
        let grid: Vec<(u64, u64)> = case1_grid().iter().map(|c| (c.p().get(), c.r())).collect();
        assert_eq!(grid, [(3, 1), (3, 4), (5, 1), (5, 2), (5, 3)]);
    }

    #[test]
    fn case1_small_by_enumeration() {
        let params = Case1Params::new(p(3), 1, 1).unwrap();
        let u = case1_u(&params).unwrap();
        assert_eq!(u.len(), 20);
        // weights of row-two sets by how many of {1, 2} they hold
        let mut total = 0;
        for x in 1..=6usize {
            for y in x + 1..=6 {
                for z in y + 1..=6 {
                    total += [x, y, z].iter().filter(|&&q| q <= 2).count() + 1;
                }
            }
        }
        let top = psi(&u, 1, 0).unwrap().fixed_multiple().unwrap();
        assert_eq!(top, int(total as i64));
        assert_eq!(top, int(40));
        assert_eq!(residue(&top, 3), 1);
        for s in 1..3 {
            assert!(psi(&u, 1, s).unwrap().residues(params.p()).is_zero());
        }
        assert!(coefficient_sum_relation(&u, Some(params.p())).unwrap());
    }

    #[test]
    fn case1_verdicts_on_grid() {
        for params in case1_grid() {
            let u = case1_u(&params).unwrap();
            let report = hemmer_check(&u, params.p()).unwrap();
            assert!(report.verdict, "{params:?}");
            assert!(coefficient_sum_relation(&u, Some(params.p())).unwrap());
        }
    }

    #[test]
    fn a_coefficient_examples() {
        let params = Case1Params::new(p(3), 1, 1).unwrap();
        assert_eq!(a_coefficient(1, 1, &params).unwrap(), int(24));
        assert_eq!(a_coefficient(1, 0, &params).unwrap(), int(18));
        assert_eq!(int(24) - int(18), BigInt::from(binom(4, 2)));
        assert!(a_coefficient(0, 0, &params).is_err());
        assert!(a_coefficient(3, 1, &params).is_err());
        assert!(a_coefficient(1, 2, &params).is_err());
    }

    #[test]
    fn a_coefficient_matches_images() {
        for params in case1_grid() {
            let u = case1_u(&params).unwrap();
            for s in 1..params.b() {
                let image = psi(&u, 1, s as usize).unwrap();
                for t in 0..=s {
                    let tabloid = a_coefficient_tabloid(s, t, &params).unwrap();
                    assert_eq!(image.get(&tabloid), a_coefficient(s, t, &params).unwrap(), "{params:?} s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn a_coefficient_claims() {
        for params in case1_grid() {
            let (b, r, prime) = (params.b(), params.r(), params.p());
            for s in 1..b {
                assert_eq!(residue(&a_coefficient(s, s - 1, &params).unwrap(), prime.get()), 0);
                for t in 1..=s {
                    let diff = a_coefficient(s, t, &params).unwrap() - a_coefficient(s, t - 1, &params).unwrap();
                    assert_eq!(diff, BigInt::from(binom((r + 1) * b - s - 1, (r * b - 1) as i64)));
                    assert_eq!(residue(&diff, prime.get()), 0);
                    assert!(kummer_carries(r * b - 1, b - s, prime) >= 1);
                }
            }
        }
    }

    #[test]
    fn case1_valuation_claim() {
        for prime in [3u64, 5, 7] {
            for n in 1..=3u32 {
                let b = prime.pow(n);
                for r in 1..=6u64 {
                    if r % prime == 0 || (r + 1) % prime == 0 {
                        continue;
                    }
                    for i in 1..b {
                        assert_eq!(vp(&((r + 1) * b - i), p(prime)).unwrap(), vp(&(b - i), p(prime)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn case1_boundary_image() {
        for params in case1_grid() {
            let (b, r) = (params.b(), params.r());
            let f = f_lambda(&params.shape()).unwrap();
            let image = psi(&f, 1, b as usize - 1).unwrap();
            assert_eq!(image.fixed_multiple(), Some(int((r * b + 1) as i64)));
        }
    }

    #[test]
    fn case2_example() {
        let params = Case2Params::new(p(3), 1, 8).unwrap();
        let u = case2_u(&params).unwrap();
        assert_eq!(BigUint::from(u.len()), binom(8, 3));
        let scalars: Vec<BigInt> = (0..3).map(|v| uniform_coefficient(&psi(&u, 1, v).unwrap()).unwrap()).collect();
        assert_eq!(scalars, [int(56), int(21), int(6)]);
        for v in 0..3usize {
            let image = psi(&u, 1, v).unwrap();
            // support is exactly the v-subsets of {4..11}
            assert_eq!(BigInt::from(image.len()), BigInt::from(binom(8, v as i64)));
            assert!(image.iter().all(|(t, _)| t.lower_rows()[0].is_subset(Block::range(4, 11))));
        }
        let report = hemmer_check(&u, params.p()).unwrap();
        let residues: Vec<Option<u64>> = report.maps.iter().map(|m| m.scalar).collect();
        assert_eq!(residues, [Some(2), Some(0), Some(0)]);
        assert!(report.maps.iter().all(|m| m.mu == 0));
        assert!(report.condition_i && report.condition_ii && report.verdict);
        assert!(coefficient_sum_relation(&u, Some(params.p())).unwrap());
        assert!(!coefficient_sum_relation(&u, None).unwrap());
        assert_eq!(two_part_fixed_scalars(8, 3, p(3)), [0, 0, 0]);
    }

    #[test]
    fn case2_smallest() {
        let params = Case2Params::new(p(3), 0, 2).unwrap();
        let u = case2_u(&params).unwrap();
        // point 1 stays in row one, so row two is {2} or {3}
        assert_eq!(u.len(), 2);
        assert!(u.get(&Tabloid::two_part(Block::singleton(3).unwrap())).is_one());
        assert_eq!(psi(&u, 1, 0).unwrap().fixed_multiple(), Some(int(2)));
        assert!(hemmer_check(&u, params.p()).unwrap().verdict);
        assert!(Case2Params::new(p(3), 1, 7).is_err());
        assert!(Case2Params::new(p(3), 2, 8).is_err());
        assert!(Case2Params::new(p(5), 0, 4).is_ok());
    }

    #[test]
    fn main_examples() {
        let w = main_u(3, 2, p(3)).unwrap();
        assert_eq!(w.lambdas, [int(10), int(4)]);
        assert!(coefficient_sum_relation(&w.u, None).unwrap());

        let w = main_u(2, 1, p(3)).unwrap();
        assert_eq!(w.lambdas.len(), 1);
        let shape = Composition::partition(vec![2, 1]).unwrap();
        assert!(h0_nonzero(&shape, p(3)));
        assert!(hemmer_check(&w.u, p(3)).unwrap().verdict);

        let w = main_u(8, 3, p(3)).unwrap();
        assert_eq!(w.lambdas, [int(55), int(15), int(3)]);
        assert_ne!(residue(&w.lambdas[0], 3), 0);
        assert!(w.lambdas[1..].iter().all(|l| residue(l, 3) == 0));

        assert!(main_u(2, 3, p(3)).is_err());
        assert!(main_u(2, 0, p(3)).is_err());
    }

    #[test]
    fn main_scalars_ratio() {
        for a in 1..=12u64 {
            for b in 1..=a {
                for prime in [3, 5, 7] {
                    let l = main_scalars(a, b, p(prime)).unwrap();
                    for s in 0..(b - 1) as usize {
                        assert_eq!(BigInt::from(a + b - s as u64) * &l[s + 1], BigInt::from(b - s as u64) * &l[s]);
                    }
                    assert!(l.iter().any(|x| residue(x, prime) != 0));
                }
            }
        }
    }

    #[test]
    fn dim_check_examples() {
        let check = three_part_dim_check(3, 2, 1).unwrap();
        assert_eq!((check.lhs.clone(), check.rhs.clone()), (int(76), int(96)));
        assert!(check.holds);
        assert!(three_part_dim_check(2, 1, 1).unwrap().holds);
        assert!(three_part_dim_check(1, 2, 1).is_err());
        assert!(three_part_dim_check(2, 1, 0).is_err());
    }

    #[test]
    fn search_small() {
        let first = three_part_search(2, 1, 1, p(3), SEARCH_GUARD).unwrap();
        let again = three_part_search(2, 1, 1, p(3), SEARCH_GUARD).unwrap();
        assert_eq!(first, again);
        let shape = Composition::partition(vec![2, 1, 1]).unwrap();
        // the lattice holds the Specht module and the fixed vector
        assert!(BigUint::from(first.solution_dim) > dim_specht(&shape));
        if let Some(u) = &first.u {
            assert!(!in_specht(u).unwrap());
            assert!(first.report.as_ref().unwrap().condition_i);
        }
        assert!(matches!(three_part_search(5, 4, 4, p(3), SEARCH_GUARD), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn families_parse() {
        for f in [Family::Case1, Family::Case2, Family::Main, Family::Search3] {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!("case3".parse::<Family>().is_err());
    }
}
