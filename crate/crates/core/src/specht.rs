//! Tabloids, the permutation modules `M^λ`, the homomorphisms `ψ_{i,v}` and
//! Specht-module membership via kernel intersection.
//!
//! A tabloid is stored by its rows `2..r`; row one is the complement. For a
//! two-part shape a tabloid is therefore just a [`Block`], and `ψ_{1,v}`
//! coincides with [`BlockVector::transform`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binom_mod_p, factorial, lp, multinomial, PrimeP};
use crate::blocks::{Block, BlockVector, GroundSet, MAX_POINT};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalar::{residue, Coefficient, Field};

/// Largest permutation module enumerated without an explicit guard.
pub const DEFAULT_TABLOID_GUARD: u64 = 1_000_000;

/// A composition `λ_1..λ_r` of `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let n: usize = parts.iter().sum();
        if n == 0 {
            return Err(Error::InvalidShape("composition must have positive size".into()));
        }
        if n > MAX_POINT {
            return Err(Error::InvalidShape(format!("size {n} exceeds {MAX_POINT}")));
        }
        Ok(Composition(parts))
    }

    /// Like [`Composition::new`], additionally requiring non-increasing parts.
    pub fn partition(parts: Vec<usize>) -> Result<Self> {
        let c = Self::new(parts)?;
        if !c.is_partition() {
            return Err(Error::InvalidShape(format!("{:?} is not a partition", c.0)));
        }
        Ok(c)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of rows `r`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ_i`, one-based.
    pub fn part(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Number of tabloids, `n! / (λ_1! … λ_r!)`.
    pub fn tabloid_count(&self) -> BigUint {
        multinomial(&self.0)
    }

    /// Shape of the target of `ψ_{i,v}`.
    pub fn psi_target(&self, i: usize, v: usize) -> Result<Composition> {
        self.check_map(i, v)?;
        let mut parts = self.0.clone();
        parts[i - 1] = self.part(i) + self.part(i + 1) - v;
        parts[i] = v;
        Ok(Composition(parts))
    }

    fn check_map(&self, i: usize, v: usize) -> Result<()> {
        if i == 0 || i >= self.len() {
            return Err(Error::IndexOutOfRange(format!("row index {i} for {} rows", self.len())));
        }
        if v > self.part(i + 1) {
            return Err(Error::IndexOutOfRange(format!("v = {v} exceeds row {} of length {}", i + 1, self.part(i + 1))));
        }
        Ok(())
    }

    /// The maps whose kernels intersect to the Specht module: `ψ_{i,v}` for
    /// `1 <= i < r` and `0 <= v < λ_{i+1}`.
    pub fn kernel_maps(&self) -> Vec<(usize, usize)> {
        (1..self.len()).flat_map(|i| (0..self.part(i + 1)).map(move |v| (i, v))).collect()
    }

    fn guard(&self, guard: u64) -> Result<()> {
        let count = self.tabloid_count();
        if count > BigUint::from(guard) {
            return Err(Error::GuardExceeded { what: "tabloids", count: count.to_string(), guard });
        }
        Ok(())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A row-equivalence class of tableaux, stored by rows `2..r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid(Vec<Block>);

impl Tabloid {
    /// Rows `2..r`; shape compatibility is checked when the tabloid is
    /// placed in a [`TabloidVector`].
    pub fn new(rows: Vec<Block>) -> Self {
        Tabloid(rows)
    }

    /// The two-part tabloid with the given second row.
    pub fn two_part(row_two: Block) -> Self {
        Tabloid(vec![row_two])
    }

    pub fn lower_rows(&self) -> &[Block] {
        &self.0
    }

    /// Row `i`, one-based; row one is the complement in `{1..n}`.
    pub fn row(&self, i: usize, n: usize) -> Block {
        if i == 1 {
            let lower = self.0.iter().fold(Block::EMPTY, |acc, r| acc.union(*r));
            Block::range(1, n).difference(lower)
        } else {
            self.0[i - 2]
        }
    }

    fn check(&self, shape: &Composition) -> Result<()> {
        if self.0.len() + 1 != shape.len() {
            return Err(Error::InvalidShape(format!(
                "tabloid with {} rows for shape {shape}",
                self.0.len() + 1
            )));
        }
        let all = Block::range(1, shape.n());
        let mut seen = Block::EMPTY;
        for (k, row) in self.0.iter().enumerate() {
            if row.len() != shape.part(k + 2) || !row.is_subset(all) || !row.is_disjoint(seen) {
                return Err(Error::InvalidShape(format!("tabloid {self} does not fit shape {shape}")));
            }
            seen = seen.union(*row);
        }
        Ok(())
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

/// An element of `M^λ` with coefficients in `T`.
#[derive(Clone, PartialEq, Eq)]
pub struct TabloidVector<T = BigInt> {
    shape: Composition,
    entries: BTreeMap<Tabloid, T>,
}

impl<T: Coefficient> fmt::Debug for TabloidVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(t, c)| (t.to_string(), c))).finish()
    }
}

impl<T: Coefficient> TabloidVector<T> {
    pub fn zero(shape: Composition) -> Self {
        TabloidVector { shape, entries: BTreeMap::new() }
    }

    /// Sums the given terms, validating every tabloid against `shape`.
    pub fn from_terms<I>(shape: Composition, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Tabloid, T)>,
    {
        let mut out = Self::zero(shape);
        for (t, c) in terms {
            t.check(&out.shape)?;
            out.add_term(t, c);
        }
        Ok(out)
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn get(&self, t: &Tabloid) -> T {
        self.entries.get(t).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tabloid, &T)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_term(&mut self, t: Tabloid, c: T) {
        if c.is_zero() {
            return;
        }
        match self.entries.remove(&t) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.entries.insert(t, s);
                }
            }
            None => {
                self.entries.insert(t, c);
            }
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::InvalidShape(format!("shapes {} and {} differ", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (t, c) in &other.entries {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero(self.shape.clone());
        for (t, c) in &self.entries {
            out.add_term(t.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn map_coeffs<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> TabloidVector<U> {
        let mut out = TabloidVector::zero(self.shape.clone());
        for (t, c) in &self.entries {
            out.add_term(t.clone(), f(c));
        }
        out
    }

    /// Reads a two-part vector as a weighting of the second-row blocks.
    pub fn to_block_vector(&self) -> Result<BlockVector<T>> {
        if self.shape.len() != 2 {
            return Err(Error::InvalidShape(format!("{} is not a two-part shape", self.shape)));
        }
        let ground = GroundSet::new(self.shape.n())?;
        BlockVector::from_terms(ground, self.entries.iter().map(|(t, c)| (t.0[0], c.clone())))
    }

    /// The two-part vector of shape `(v - l, l)` whose second rows are the
    /// blocks of `c`, all of which must have size `l`.
    pub fn from_block_vector(c: &BlockVector<T>, l: usize) -> Result<Self> {
        if !c.is_zero() && !c.has_block_size(l) {
            return Err(Error::InvalidShape(format!("blocks of size other than {l}")));
        }
        let v = c.ground().size();
        if l > v {
            return Err(Error::InvalidShape(format!("block size {l} exceeds {v}")));
        }
        let shape = Composition::new(vec![v - l, l])?;
        Self::from_terms(shape, c.iter().map(|(x, k)| (Tabloid::two_part(x), k.clone())))
    }
}

impl TabloidVector<BigInt> {
    /// Nonzero residues of the coefficients modulo `p`.
    pub fn residues(&self, p: PrimeP) -> TabloidVector<BigInt> {
        self.map_coeffs(|c| BigInt::from(residue(c, p.get())))
    }

    /// `Some(k)` when the vector equals `k f_λ` (zero counts, with `k = 0`).
    pub fn fixed_multiple(&self) -> Option<BigInt> {
        let first = match self.entries.values().next() {
            None => return Some(BigInt::zero()),
            Some(c) => c,
        };
        if BigUint::from(self.len()) != self.shape.tabloid_count() {
            return None;
        }
        self.entries.values().all(|c| c == first).then(|| first.clone())
    }

    /// Residue `k` mod `p` when the reduction of the vector is `k f_λ`.
    pub fn fixed_multiple_mod(&self, p: PrimeP) -> Option<u64> {
        self.residues(p).fixed_multiple().map(|k| residue(&k, p.get()))
    }
}

/// All tabloids of the given shape, in increasing order.
pub fn tabloids(shape: &Composition) -> Vec<Tabloid> {
    fn fill(shape: &Composition, k: usize, free: Block, rows: &mut Vec<Block>, out: &mut Vec<Tabloid>) {
        if k > shape.len() {
            out.push(Tabloid(rows.clone()));
            return;
        }
        for row in free.subsets(shape.part(k)) {
            rows.push(row);
            fill(shape, k + 1, free.difference(row), rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    fill(shape, 2, Block::range(1, shape.n()), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `f_λ`, the sum of all tabloids, refusing more than `guard` of them.
pub fn f_lambda_guarded(shape: &Composition, guard: u64) -> Result<TabloidVector> {
    shape.guard(guard)?;
    let entries = tabloids(shape).into_iter().map(|t| (t, BigInt::one())).collect();
    Ok(TabloidVector { shape: shape.clone(), entries })
}

pub fn f_lambda(shape: &Composition) -> Result<TabloidVector> {
    f_lambda_guarded(shape, DEFAULT_TABLOID_GUARD)
}

/// `ψ_{i,v}(u)`: each tabloid maps to the sum of the tabloids obtained by
/// keeping a `v`-subset of row `i+1` there and moving the rest of that row up
/// into row `i`.
pub fn psi<T: Coefficient>(u: &TabloidVector<T>, i: usize, v: usize) -> Result<TabloidVector<T>> {
    let target = u.shape.psi_target(i, v)?;
    let mut out = TabloidVector::zero(target);
    for (t, c) in &u.entries {
        for_each_image(t, i, v, |img| out.add_term(img, c.clone()));
    }
    Ok(out)
}

fn for_each_image(t: &Tabloid, i: usize, v: usize, mut emit: impl FnMut(Tabloid)) {
    let lower = t.0[i - 1];
    for kept in lower.subsets(v) {
        let mut rows = t.0.clone();
        rows[i - 1] = kept;
        if i >= 2 {
            rows[i - 2] = rows[i - 2].union(lower.difference(kept));
        }
        emit(Tabloid(rows));
    }
}

/// Whether every kernel map sends `u` to zero over the integers.
pub fn in_specht(u: &TabloidVector) -> Result<bool> {
    for (i, v) in u.shape.kernel_maps() {
        if !psi(u, i, v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every kernel map sends `u` to zero modulo `p`.
pub fn in_specht_mod(u: &TabloidVector, p: PrimeP) -> Result<bool> {
    for (i, v) in u.shape.kernel_maps() {
        if !psi(u, i, v)?.residues(p).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the Specht module of `λ` over `F_p` has a nonzero fixed vector:
/// `λ_i ≡ -1 mod p^{lp(λ_{i+1})}` wherever `λ_{i+1} > 0`.
pub fn h0_nonzero(shape: &Composition, p: PrimeP) -> bool {
    shape.parts().windows(2).filter(|w| w[1] > 0).all(|w| {
        let modulus = p.checked_pow(lp(w[1] as u64, p)).expect("modulus fits u128");
        (w[0] as u128 + 1) % modulus == 0
    })
}

/// `μ_{i,v}`: the scalar of `ψ_{i,v}(f_λ)` modulo `p`.
pub fn fixed_image_scalar(shape: &Composition, i: usize, v: usize, p: PrimeP) -> Result<u64> {
    shape.check_map(i, v)?;
    let (a, b) = (shape.part(i) as u64, shape.part(i + 1) as u64);
    Ok(binom_mod_p(a + b - v as u64, b - v as u64, p))
}

/// Image data of one kernel map in a [`HemmerReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapReport {
    pub i: usize,
    pub v: usize,
    /// Residue `λ_{i,v}` when the reduced image is a multiple of the fixed
    /// vector.
    pub scalar: Option<u64>,
    /// Exact integer scalar when the unreduced image is already a multiple.
    pub integer_scalar: Option<BigInt>,
    /// `μ_{i,v}`.
    pub mu: u64,
}

impl MapReport {
    pub fn is_multiple_of_f(&self) -> bool {
        self.scalar.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HemmerReport {
    pub shape: Composition,
    pub p: PrimeP,
    pub maps: Vec<MapReport>,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub verdict: bool,
}

/// Evaluates Hemmer's two conditions for `u` over `F_p`.
///
/// (i): every reduced image `ψ_{i,v}(u)` is a multiple `λ_{i,v} f_ν`, and some
/// `λ_{i,v}` is nonzero. (ii): no `a ∈ F_p^×` has `a μ_{i,v} = λ_{i,v}` for all
/// maps. A non-multiple image leaves no candidate `a`.
pub fn hemmer_check(u: &TabloidVector, p: PrimeP) -> Result<HemmerReport> {
    if !u.shape.is_partition() {
        return Err(Error::InvalidShape(format!("{} is not a partition", u.shape)));
    }
    let mut maps = Vec::new();
    for (i, v) in u.shape.kernel_maps() {
        let image = psi(u, i, v)?;
        maps.push(MapReport {
            i,
            v,
            scalar: image.fixed_multiple_mod(p),
            integer_scalar: image.fixed_multiple(),
            mu: fixed_image_scalar(&u.shape, i, v, p)?,
        });
    }
    let all_multiples = maps.iter().all(MapReport::is_multiple_of_f);
    let condition_i = all_multiples && maps.iter().any(|m| m.scalar.is_some_and(|s| s != 0));
    let pm = p.get() as u128;
    let unit_matches = (1..p.get()).any(|a| {
        maps.iter().all(|m| m.scalar.is_some_and(|s| (a as u128 * m.mu as u128) % pm == s as u128))
    });
    let condition_ii = !unit_matches;
    Ok(HemmerReport {
        shape: u.shape.clone(),
        p,
        maps,
        condition_i,
        condition_ii,
        verdict: condition_i && condition_ii,
    })
}

/// Dimension of the Specht module by the hook length formula.
pub fn dim_specht(shape: &Composition) -> BigUint {
    let parts: Vec<usize> = shape.parts().iter().copied().filter(|&x| x > 0).collect();
    let mut hooks = BigUint::one();
    for (row, &len) in parts.iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = parts[row + 1..].iter().take_while(|&&l| l > col).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(shape.n() as u64).div_floor(&hooks)
}

/// Rank of `M^λ`, the multinomial coefficient.
pub fn dim_m(shape: &Composition) -> BigUint {
    shape.tabloid_count()
}

/// Dimension over `F` of the common kernel of the kernel maps on `M^λ`.
///
/// The maps are stacked into one sparse 0/1 matrix, one row per target
/// tabloid, and reduced incrementally.
pub fn kernel_dimension<F: Field>(shape: &Composition, guard: u64) -> Result<usize> {
    shape.guard(guard)?;
    let columns = tabloids(shape);
    let mut echelon = SparseEchelon::<F>::new();
    for (i, v) in shape.kernel_maps() {
        let mut rows: HashMap<Tabloid, Vec<(usize, F)>> = HashMap::new();
        for (j, t) in columns.iter().enumerate() {
            for_each_image(t, i, v, |img| rows.entry(img).or_default().push((j, F::one())));
        }
        let mut rows: Vec<_> = rows.into_iter().collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, row) in rows {
            echelon.insert(row);
        }
    }
    Ok(columns.len() - echelon.rank())
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Composition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| Composition(p)).collect()
}
