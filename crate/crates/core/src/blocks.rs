//! Subsets of a ground set `{1..v}` and sparse integer vectors indexed by
//! them, with the transform, convolution and point-deletion maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, Matrix};
use crate::scalar::Coefficient;

/// Largest ground set a [`BlockVector`] may live on.
pub const MAX_GROUND: usize = 20;
/// Largest ground set for which [`inclusion_rank`] materializes the matrix.
pub const MAX_INCLUSION_GROUND: usize = 16;
/// Largest point a [`Block`] can hold.
pub const MAX_POINT: usize = 64;

/// The ground set `{1, ..., v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(v: usize) -> Result<Self> {
        if v == 0 || v > MAX_GROUND {
            return Err(Error::GroundSize { v, max: MAX_GROUND });
        }
        Ok(GroundSet(v))
    }

    pub fn size(self) -> usize {
        self.0
    }

    /// The block `{1..v}`.
    pub fn full(self) -> Block {
        Block::range(1, self.0)
    }

    /// All `k`-subsets in colexicographic order.
    pub fn subsets(self, k: usize) -> impl Iterator<Item = Block> {
        self.full().subsets(k)
    }

    pub fn check(self, x: Block) -> Result<()> {
        match x.max() {
            Some(m) if m > self.0 => Err(Error::PointOutOfRange { point: m, v: self.0 }),
            _ => Ok(()),
        }
    }
}

/// A finite set of points in `1..=64`, stored as a bitmask (bit `i - 1` for
/// point `i`).
///
/// The derived order on the mask is the colexicographic order on sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Block(u64);

impl Block {
    pub const EMPTY: Block = Block(0);

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Result<Self> {
        let mut mask = 0u64;
        for p in points {
            if p == 0 || p > MAX_POINT {
                return Err(Error::PointOutOfRange { point: p, v: MAX_POINT });
            }
            let bit = 1u64 << (p - 1);
            if mask & bit != 0 {
                return Err(Error::RepeatedPoint(p));
            }
            mask |= bit;
        }
        Ok(Block(mask))
    }

    /// `{lo, ..., hi}`; empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Block {
        if hi < lo || hi == 0 {
            return Block::EMPTY;
        }
        let lo = lo.max(1);
        let upper = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
        let lower = (1u64 << (lo - 1)) - 1;
        Block(upper & !lower)
    }

    pub fn singleton(p: usize) -> Result<Block> {
        Block::from_points([p])
    }

    pub fn from_mask(mask: u64) -> Block {
        Block(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        (1..=MAX_POINT).contains(&p) && self.0 & (1u64 << (p - 1)) != 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    pub fn intersection(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    pub fn difference(self, other: Block) -> Block {
        Block(self.0 & !other.0)
    }

    /// Boolean sum (symmetric difference).
    pub fn symmetric_difference(self, other: Block) -> Block {
        Block(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Block) -> bool {
        self.0 & other.0 == 0
    }

    pub fn insert(self, p: usize) -> Result<Block> {
        Ok(self.union(Block::singleton(p)?))
    }

    pub fn remove(self, p: usize) -> Block {
        if self.contains(p) {
            Block(self.0 & !(1u64 << (p - 1)))
        } else {
            self
        }
    }

    /// Points in increasing order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i + 1
            })
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.points().collect()
    }

    /// The `k` smallest points of `self`, if it has that many.
    pub fn smallest(self, k: usize) -> Option<Block> {
        (self.len() >= k).then(|| Block::from_points(self.points().take(k)).expect("subset"))
    }

    /// All `k`-subsets of `self` in colexicographic order.
    pub fn subsets(self, k: usize) -> Subsets {
        Subsets::new(self, k)
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// Overline notation without the bar: points separated by spaces, `∅` for
/// the empty block.
impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        for p in self.points() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Iterator over the `k`-subsets of a block (Gosper's hack on index masks).
pub struct Subsets {
    points: Vec<u64>,
    state: Option<u128>,
}

impl Subsets {
    fn new(of: Block, k: usize) -> Self {
        let points: Vec<u64> = of.points().map(|p| 1u64 << (p - 1)).collect();
        let state = (k <= points.len()).then(|| (1u128 << k) - 1);
        Subsets { points, state }
    }
}

impl Iterator for Subsets {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        let s = self.state?;
        let mut mask = 0u64;
        let mut bits = s;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            mask |= self.points[i];
            bits &= bits - 1;
        }
        self.state = if s == 0 {
            None
        } else {
            let c = s & s.wrapping_neg();
            let r = s + c;
            let next = (((r ^ s) >> 2) / c) | r;
            (next >> self.points.len() == 0).then_some(next)
        };
        Some(Block(mask))
    }
}

/// Sparse coefficient vector indexed by blocks of a ground set.
///
/// Entries are kept in a `BTreeMap`, so iteration is colexicographic, and
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockVector<T = BigInt> {
    ground: GroundSet,
    entries: BTreeMap<Block, T>,
}

impl<T: Coefficient> fmt::Debug for BlockVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockVector")
            .field("v", &self.ground.size())
            .field("entries", &self.entries)
            .finish()
    }
}

impl<T: Coefficient> BlockVector<T> {
    pub fn zero(ground: GroundSet) -> Self {
        BlockVector { ground, entries: BTreeMap::new() }
    }

    /// Sums the given terms, validating every block.
    pub fn from_terms<I>(ground: GroundSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Block, T)>,
    {
        let mut out = Self::zero(ground);
        for (x, c) in terms {
            ground.check(x)?;
            out.add_term(x, c);
        }
        Ok(out)
    }

    /// The indicator vector of `x`.
    pub fn delta(ground: GroundSet, x: Block) -> Result<Self> {
        Self::from_terms(ground, [(x, T::one())])
    }

    /// `δ_{q} - δ_{r}` for distinct points.
    pub fn dqr(ground: GroundSet, q: usize, r: usize) -> Result<Self> {
        if q == r {
            return Err(Error::RepeatedPoint(q));
        }
        let (bq, br) = (Block::singleton(q)?, Block::singleton(r)?);
        Self::from_terms(ground, [(bq, T::one()), (br, -T::one())])
    }

    /// `e_s`: coefficient one on every `s`-block.
    pub fn all_blocks(ground: GroundSet, s: usize) -> Result<Self> {
        if s > ground.size() {
            return Err(Error::LevelOutOfRange { s, v: ground.size() });
        }
        Ok(BlockVector { ground, entries: ground.subsets(s).map(|x| (x, T::one())).collect() })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn get(&self, x: Block) -> T {
        self.entries.get(&x).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Block, &T)> {
        self.entries.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn add_term(&mut self, x: Block, c: T) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&x) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.entries.remove(&x);
                } else {
                    *v = s;
                }
            }
            None => {
                self.entries.insert(x, c);
            }
        }
    }

    fn check_ground(&self, other: &Self) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch { left: self.ground.size(), right: other.ground.size() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ground(other)?;
        let mut out = self.clone();
        for (x, c) in other.iter() {
            out.add_term(x, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero(self.ground);
        for (x, c) in self.iter() {
            out.add_term(x, k.clone() * c.clone());
        }
        out
    }

    /// The set of blocks with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Block> {
        self.entries.keys().copied().collect()
    }

    /// Union of the support.
    pub fn foundation(&self) -> Block {
        self.entries.keys().fold(Block::EMPTY, |acc, x| acc.union(*x))
    }

    /// `Some(l)` if every stored block has size `l`; `None` for mixed sizes.
    /// The zero vector has every constant size, reported as `Some(0)`.
    pub fn constant_block_size(&self) -> Option<usize> {
        let mut sizes = self.entries.keys().map(|x| x.len());
        let first = sizes.next().unwrap_or(0);
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn has_block_size(&self, l: usize) -> bool {
        self.entries.keys().all(|x| x.len() == l)
    }

    /// Level-`s` part of the transform: `y ↦ Σ_{x ⊇ y} c(x)` over all
    /// `s`-blocks `y`, enumerated from the sparse support.
    pub fn transform(&self, s: usize) -> Result<Self> {
        if s > self.ground.size() {
            return Err(Error::LevelOutOfRange { s, v: self.ground.size() });
        }
        let mut out = Self::zero(self.ground);
        for (x, c) in self.iter() {
            for y in x.subsets(s) {
                out.add_term(y, c.clone());
            }
        }
        Ok(out)
    }

    /// `(c ⋆ d)(z) = Σ_{x + y = z} c(x) d(y)` with `+` the symmetric difference.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_ground(other)?;
        let mut out = Self::zero(self.ground);
        for (x, c) in self.iter() {
            for (y, d) in other.iter() {
                out.add_term(x.symmetric_difference(y), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// The point-deletion map onto `{1..v-1}`: `(φc)(x) = c(x ∪ {v})`.
    pub fn delete_point(&self) -> Result<Self> {
        let v = self.ground.size();
        if v == 1 {
            return Err(Error::DeletePointFromSingleton);
        }
        let ground = GroundSet::new(v - 1)?;
        let mut out = Self::zero(ground);
        for (x, c) in self.iter() {
            if x.contains(v) {
                out.add_term(x.remove(v), c.clone());
            }
        }
        Ok(out)
    }

    /// Whether the vector equals `lambda · e_s`.
    pub fn is_constant_on_level(&self, s: usize, lambda: &T) -> bool {
        if lambda.is_zero() {
            return self.is_zero();
        }
        let expected = crate::arith::binom(self.ground.size() as u64, s as i64);
        num_bigint::BigUint::from(self.entries.len()) == expected
            && self.iter().all(|(x, c)| x.len() == s && c == lambda)
    }

    pub fn map_coeffs<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> BlockVector<U> {
        let mut out = BlockVector::zero(self.ground);
        for (x, c) in self.iter() {
            out.add_term(x, f(c));
        }
        out
    }
}

/// The `C(v,t) × C(v,l)` inclusion matrix (rows: `t`-blocks, columns:
/// `l`-blocks, both colexicographic).
pub fn inclusion_matrix(v: usize, t: usize, l: usize) -> Result<Matrix<BigInt>> {
    let ground = GroundSet::new(v)?;
    if v > MAX_INCLUSION_GROUND {
        return Err(Error::GroundSize { v, max: MAX_INCLUSION_GROUND });
    }
    if t > v || l > v {
        return Err(Error::LevelOutOfRange { s: t.max(l), v });
    }
    let cols: Vec<Block> = ground.subsets(l).collect();
    let rows = ground
        .subsets(t)
        .map(|y| cols.iter().map(|x| BigInt::from(u8::from(y.is_subset(*x)))).collect())
        .collect();
    Ok(Matrix::from_rows(cols.len(), rows))
}

/// Exact rank of the inclusion matrix between `t`-blocks and `l`-blocks of
/// `{1..v}`.
pub fn inclusion_rank(v: usize, t: usize, l: usize) -> Result<usize> {
    Ok(bareiss_rank(inclusion_matrix(v, t, l)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom;
    use proptest::prelude::*;

    type BV = BlockVector<BigInt>;

    fn g(v: usize) -> GroundSet {
        GroundSet::new(v).unwrap()
    }

    fn b(points: &[usize]) -> Block {
        Block::from_points(points.iter().copied()).unwrap()
    }

    fn bv(v: usize, terms: &[(&[usize], i64)]) -> BV {
        BV::from_terms(g(v), terms.iter().map(|(p, c)| (b(p), BigInt::from(*c)))).unwrap()
    }

    pub(crate) fn fano() -> BV {
        let lines: [&[usize]; 7] =
            [&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]];
        BV::from_terms(g(7), lines.iter().map(|l| (b(l), BigInt::from(1)))).unwrap()
    }

    #[test]
    fn block_basics() {
        let x = b(&[3, 1, 5]);
        assert_eq!(x.to_vec(), vec![1, 3, 5]);
        assert_eq!(x.len(), 3);
        assert_eq!(x.max(), Some(5));
        assert_eq!(Block::range(2, 4), b(&[2, 3, 4]));
        assert_eq!(Block::range(3, 2), Block::EMPTY);
        assert_eq!(x.to_string(), "1 3 5");
        assert_eq!(Block::EMPTY.to_string(), "∅");
        assert!(matches!(Block::from_points([1, 1]), Err(Error::RepeatedPoint(1))));
        assert!(Block::from_points([0]).is_err());
    }

    #[test]
    fn subsets_are_colex_and_complete() {
        let all: Vec<Block> = g(5).subsets(2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], b(&[1, 2]));
        assert_eq!(all[1], b(&[1, 3]));
        assert_eq!(all[2], b(&[2, 3]));
        assert_eq!(g(4).subsets(0).collect::<Vec<_>>(), vec![Block::EMPTY]);
        assert_eq!(g(3).subsets(4).count(), 0);
        assert_eq!(Block::range(1, 64).subsets(64).count(), 1);
        assert_eq!(b(&[2, 7, 9]).subsets(2).collect::<Vec<_>>(), vec![b(&[2, 7]), b(&[2, 9]), b(&[7, 9])]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(BV::delta(g(4), b(&[1, 2])).unwrap(), bv(4, &[(&[1, 2], 1)]));
        assert_eq!(BV::delta(g(7), Block::EMPTY).unwrap().get(Block::EMPTY), BigInt::from(1));
        assert!(matches!(BV::delta(g(3), b(&[5])), Err(Error::PointOutOfRange { point: 5, v: 3 })));
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(21).is_err());
    }

    #[test]
    fn dqr_examples() {
        let d = BV::dqr(g(4), 1, 2).unwrap();
        assert_eq!(d, bv(4, &[(&[1], 1), (&[2], -1)]));
        assert!(d.transform(0).unwrap().is_zero());
        assert!(matches!(BV::dqr(g(4), 2, 2), Err(Error::RepeatedPoint(2))));
    }

    #[test]
    fn transform_examples() {
        let c = BV::delta(g(4), b(&[1, 2])).unwrap();
        assert_eq!(c.transform(1).unwrap(), bv(4, &[(&[1], 1), (&[2], 1)]));
        assert!(matches!(c.transform(5), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn fano_pairs_covered_once() {
        let pairs = fano().transform(2).unwrap();
        // brute force over all 21 pairs against the hand-entered lines
        let lines = fano().support();
        for y in g(7).subsets(2) {
            let count = lines.iter().filter(|x| y.is_subset(**x)).count();
            assert_eq!(count, 1);
            assert_eq!(pairs.get(y), BigInt::from(1));
        }
        assert_eq!(pairs.len(), 21);
    }

    #[test]
    fn convolution_examples() {
        let d12 = BV::dqr(g(4), 1, 2).unwrap();
        let d34 = BV::dqr(g(4), 3, 4).unwrap();
        let pod = d12.convolve(&d34).unwrap();
        assert_eq!(pod, bv(4, &[(&[1, 3], 1), (&[1, 4], -1), (&[2, 3], -1), (&[2, 4], 1)]));
        assert_eq!(pod.convolve(&BV::delta(g(4), Block::EMPTY).unwrap()).unwrap(), pod);
        assert!(pod.transform(1).unwrap().is_zero());
        assert!(pod.transform(0).unwrap().is_zero());
        assert_eq!(pod.foundation(), b(&[1, 2, 3, 4]));
        assert!(matches!(d12.convolve(&BV::dqr(g(5), 1, 2).unwrap()), Err(Error::GroundMismatch { .. })));
    }

    #[test]
    fn support_and_foundation() {
        let c = BV::delta(g(4), b(&[1, 2])).unwrap();
        assert_eq!(c.support(), [b(&[1, 2])].into_iter().collect());
        assert_eq!(c.foundation(), b(&[1, 2]));
        let z = BV::zero(g(4));
        assert!(z.support().is_empty());
        assert_eq!(z.foundation(), Block::EMPTY);
    }

    #[test]
    fn delete_point_examples() {
        let c = BV::delta(g(4), b(&[1, 4])).unwrap();
        assert_eq!(c.delete_point().unwrap(), BV::delta(g(3), b(&[1])).unwrap());
        let d = BV::delta(g(4), b(&[1, 2])).unwrap();
        assert_eq!(d.delete_point().unwrap(), BV::zero(g(3)));
        assert!(matches!(BV::zero(g(1)).delete_point(), Err(Error::DeletePointFromSingleton)));
    }

    #[test]
    fn inclusion_rank_examples() {
        assert_eq!(inclusion_rank(4, 1, 2).unwrap(), 4);
        assert_eq!(inclusion_rank(4, 1, 4).unwrap(), 1);
        assert_eq!(inclusion_rank(5, 0, 3).unwrap(), 1);
        assert!(inclusion_rank(17, 1, 2).is_err());
    }

    #[test]
    fn inclusion_rank_closed_form() {
        for v in 1..=8usize {
            for t in 0..=v {
                for l in t..=v {
                    let expected = if l <= v - t { binom(v as u64, t as i64) } else { binom(v as u64, l as i64) };
                    let r = inclusion_rank(v, t, l).unwrap();
                    assert_eq!(num_bigint::BigUint::from(r), expected, "v={v} t={t} l={l}");
                }
            }
        }
    }

    #[test]
    fn e_identity() {
        for v in 1..=8usize {
            for t in 0..v {
                let e_next = BV::all_blocks(g(v), t + 1).unwrap();
                let e_t = BV::all_blocks(g(v), t).unwrap();
                assert_eq!(e_next.transform(t).unwrap(), e_t.scale(&BigInt::from(v - t)));
            }
        }
    }

    fn random_constant_size() -> impl Strategy<Value = (usize, usize, Vec<(u64, i64)>)> {
        (2usize..=8).prop_flat_map(|v| {
            (Just(v), 0..=v).prop_flat_map(move |(v, l)| {
                let n = binom(v as u64, l as i64);
                let count: u64 = n.try_into().unwrap();
                (Just(v), Just(l), prop::collection::vec((0..count, -5i64..6), 0..12))
            })
        })
    }

    fn build(v: usize, l: usize, picks: &[(u64, i64)]) -> BV {
        let blocks: Vec<Block> = g(v).subsets(l).collect();
        BV::from_terms(g(v), picks.iter().map(|(i, c)| (blocks[*i as usize], BigInt::from(*c)))).unwrap()
    }

    proptest! {
        #[test]
        fn transform_composition((v, l, picks) in random_constant_size(), s_raw in 0usize..9, h_raw in 0usize..9) {
            let c = build(v, l, &picks);
            let h = h_raw % (l + 1);
            let s = s_raw % (h + 1);
            let lhs = c.transform(s).unwrap().scale(&BigInt::from(binom((l - s) as u64, (h - s) as i64)));
            let rhs = c.transform(h).unwrap().transform(s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn point_deletion_commutes_with_transform((v, l, picks) in random_constant_size(), s_raw in 0usize..8) {
            let c = build(v, l, &picks);
            let s = s_raw % v;
            let left = c.delete_point().unwrap().transform(s).unwrap();
            let right = c.transform(s + 1).unwrap().delete_point().unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn transform_matches_inclusion_matrix((v, l, picks) in random_constant_size(), s_raw in 0usize..9) {
            let c = build(v, l, &picks);
            let s = s_raw % (v + 1);
            let m = inclusion_matrix(v, s, l).unwrap();
            let cols: Vec<Block> = g(v).subsets(l).collect();
            let out = c.transform(s).unwrap();
            for (r, y) in g(v).subsets(s).enumerate() {
                let dense: BigInt = cols.iter().enumerate().map(|(k, x)| &m[(r, k)] * c.get(*x)).sum();
                prop_assert_eq!(out.get(y), dense);
            }
        }
    }
}
