//! Integral `(v, l, λ_0, …, λ_t)`-designs.
//!
//! [`construct_design`] follows the Graver–Jurkat induction on `t`: start from
//! `λ_0 δ_x`, and at each level correct the residual transform by an integer
//! combination of lifted pods. [`solve_design_oracle`] solves the same
//! problem as one stacked integer linear system and shares no code path with
//! the pod machinery.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::binom;
use crate::blocks::{Block, BlockVector, GroundSet, MAX_GROUND};
use crate::error::{Error, Result};
use crate::linalg::{solve, ColumnEchelon, Matrix, SparseEchelon};

/// Largest ground set accepted by [`solve_design_oracle`].
pub const MAX_ORACLE_GROUND: usize = 14;

/// Admissible design parameters: `(v - s) λ_{s+1} = (l - s) λ_s` for `s < t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignParams {
    v: usize,
    l: usize,
    t: usize,
    lambdas: Vec<BigInt>,
}

impl DesignParams {
    /// Validates explicit parameters `λ_0..λ_t`.
    pub fn new(v: usize, l: usize, t: usize, lambdas: Vec<BigInt>) -> Result<Self> {
        check_shape(v, l, t)?;
        if lambdas.len() != t + 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} lambdas for t = {t}, got {}",
                t + 1,
                lambdas.len()
            )));
        }
        for s in 0..t {
            let lhs = BigInt::from(v - s) * &lambdas[s + 1];
            let rhs = (BigInt::from(l as i64) - BigInt::from(s)) * &lambdas[s];
            if lhs != rhs {
                return Err(Error::InvalidParams(format!(
                    "ratio condition fails at s = {s}: ({v} - {s}) * {} != ({l} - {s}) * {}",
                    lambdas[s + 1],
                    lambdas[s]
                )));
            }
        }
        Ok(DesignParams { v, l, t, lambdas })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lambdas(&self) -> &[BigInt] {
        &self.lambdas
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.v).expect("validated on construction")
    }

    /// Whether the induction has nothing to do beyond a multiple of `e_l`.
    fn is_degenerate(&self) -> bool {
        self.t >= self.l || self.l + self.t >= self.v
    }
}

fn check_shape(v: usize, l: usize, t: usize) -> Result<()> {
    if v == 0 || v > MAX_GROUND {
        return Err(Error::GroundSize { v, max: MAX_GROUND });
    }
    if t > v || l > v {
        return Err(Error::InvalidParams(format!("need 0 <= t, l <= v, got v = {v}, l = {l}, t = {t}")));
    }
    Ok(())
}

/// Completes `λ_0` to the unique parameter list `λ_0..λ_t`, failing at the
/// first step whose division is not exact.
pub fn admissible(v: usize, l: usize, t: usize, lambda0: BigInt) -> Result<DesignParams> {
    check_shape(v, l, t)?;
    let mut lambdas = vec![lambda0];
    for s in 0..t {
        let numerator = (BigInt::from(l as i64) - BigInt::from(s)) * &lambdas[s];
        let denominator = BigInt::from(v - s);
        let (q, r) = numerator.div_rem(&denominator);
        if !r.is_zero() {
            return Err(Error::NonIntegralLambda {
                step: s + 1,
                numerator: numerator.to_string(),
                denominator: denominator.to_string(),
            });
        }
        lambdas.push(q);
    }
    DesignParams::new(v, l, t, lambdas)
}

/// A `t,l`-pod `d_{p_0 q_0} ⋆ … ⋆ d_{p_t q_t} ⋆ δ_x`.
///
/// A pod with no pairs is just `δ_x`, the `t = -1` case used by the basis
/// recursion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pod {
    p: Vec<usize>,
    q: Vec<usize>,
    x: Block,
}

impl Pod {
    pub fn new(p: Vec<usize>, q: Vec<usize>, x: Block) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidInput(format!(
                "pod needs as many p-points as q-points, got {} and {}",
                p.len(),
                q.len()
            )));
        }
        let mut seen = x;
        for &pt in p.iter().chain(&q) {
            if seen.contains(pt) {
                return Err(Error::RepeatedPoint(pt));
            }
            seen = seen.insert(pt)?;
        }
        Ok(Pod { p, q, x })
    }

    pub fn p_points(&self) -> &[usize] {
        &self.p
    }

    pub fn q_points(&self) -> &[usize] {
        &self.q
    }

    pub fn x(&self) -> Block {
        self.x
    }

    /// Number of `d_{pq}` factors, `t + 1`.
    pub fn pairs(&self) -> usize {
        self.p.len()
    }

    /// Block size `l` of the pod's vector.
    pub fn block_size(&self) -> usize {
        self.pairs() + self.x.len()
    }

    pub fn foundation(&self) -> Block {
        let pts = Block::from_points(self.p.iter().chain(&self.q).copied()).expect("validated");
        pts.union(self.x)
    }

    /// Adds the pair `(p, q)`; both points must be new.
    pub fn suspend(&self, p: usize, q: usize) -> Result<Pod> {
        let mut pp = self.p.clone();
        let mut qq = self.q.clone();
        pp.push(p);
        qq.push(q);
        Pod::new(pp, qq, self.x)
    }

    /// Replaces `δ_x` by `δ_{x ∪ extra}`; `extra` must avoid the foundation.
    pub fn extend(&self, extra: Block) -> Result<Pod> {
        if !self.foundation().is_disjoint(extra) {
            return Err(Error::InvalidInput("extension block meets the pod foundation".into()));
        }
        Pod::new(self.p.clone(), self.q.clone(), self.x.union(extra))
    }

    /// The pod's vector: `2^{t+1}` blocks, one point from each pair plus `x`,
    /// signed by the parity of `q`-choices.
    pub fn vector(&self, ground: GroundSet) -> Result<BlockVector> {
        ground.check(self.foundation())?;
        let k = self.pairs();
        let terms = (0u64..1 << k).map(|choice| {
            let mut block = self.x;
            for i in 0..k {
                let pt = if choice >> i & 1 == 1 { self.q[i] } else { self.p[i] };
                block = block.insert(pt).expect("validated point");
            }
            let sign = if choice.count_ones() % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            (block, sign)
        });
        BlockVector::from_terms(ground, terms)
    }
}

/// `pod.vector(ground)`.
pub fn pod_vector(ground: GroundSet, pod: &Pod) -> Result<BlockVector> {
    pod.vector(ground)
}

/// A module basis of the null designs `N_{t,l}(v)` made of `t,l`-pods, of
/// size `C(v,l) - C(v,t)`; empty unless `t < l < v - t`.
///
/// Built by point deletion: the basis for `v` is the basis for `v - 1` plus,
/// for each basis pod `P` of `N_{t-1,l-1}(v-1)`, the suspension `P ⋆ d_{v,q}`
/// with `q` the least point outside `found(P)`. Deleting the point `v` maps
/// the suspension back to `P`, so the result is a lattice basis, not only a
/// rational one. Linear independence is rechecked by exact rank.
pub fn null_basis(v: usize, t: usize, l: usize) -> Result<Vec<Pod>> {
    let ground = GroundSet::new(v)?;
    let pods = basis_rec(v, t as isize, l);
    let expected = BigInt::from(binom(v as u64, l as i64)) - BigInt::from(binom(v as u64, t as i64));
    let expected = if expected.is_positive() { expected.to_string().parse::<usize>().unwrap_or(0) } else { 0 };
    if pods.len() != expected {
        return Err(Error::Internal(format!(
            "pod basis for ({v},{t},{l}) has {} elements, expected {expected}",
            pods.len()
        )));
    }
    let rank = pod_rank(ground, &pods)?;
    if rank != pods.len() {
        return Err(Error::Internal(format!("pod basis for ({v},{t},{l}) has rank {rank}")));
    }
    Ok(pods)
}

fn basis_rec(v: usize, t: isize, l: usize) -> Vec<Pod> {
    if t < 0 {
        return Block::range(1, v)
            .subsets(l)
            .map(|x| Pod::new(vec![], vec![], x).expect("empty pod"))
            .collect();
    }
    let tu = t as usize;
    if !(tu < l && l + tu < v) {
        return Vec::new();
    }
    let mut out = basis_rec(v - 1, t, l);
    let rest = Block::range(1, v - 1);
    for pod in basis_rec(v - 1, t - 1, l - 1) {
        let free = rest.difference(pod.foundation());
        let q = free.points().next().expect("l < v - t leaves a free point");
        out.push(pod.suspend(v, q).expect("fresh points"));
    }
    out
}

/// Exact rank over the rationals of a set of pod vectors.
pub fn pod_rank(ground: GroundSet, pods: &[Pod]) -> Result<usize> {
    let mut index: HashMap<Block, usize> = HashMap::new();
    let mut echelon = SparseEchelon::<BigRational>::new();
    for pod in pods {
        let vec = pod.vector(ground)?;
        let mut row: Vec<(usize, BigRational)> = vec
            .iter()
            .map(|(x, c)| {
                let n = index.len();
                (*index.entry(x).or_insert(n), BigRational::from_integer(c.clone()))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        echelon.insert(row);
    }
    Ok(echelon.rank())
}

/// Whether `c` is an integral design with the given parameters: constant block
/// size `l` and `transform(c, s) = λ_s e_s` for every `s <= t`.
pub fn verify_design(c: &BlockVector, params: &DesignParams) -> bool {
    if c.ground() != params.ground() || !c.has_block_size(params.l) {
        return false;
    }
    (0..=params.t).all(|s| match c.transform(s) {
        Ok(hat) => hat.is_constant_on_level(s, &params.lambdas[s]),
        Err(_) => false,
    })
}

/// Constructs an integral design with the given parameters by the
/// Graver–Jurkat induction. The result is verified before it is returned.
pub fn construct_design(params: &DesignParams) -> Result<BlockVector> {
    let ground = params.ground();
    let (v, l, t) = (params.v, params.l, params.t);
    let c = if t > 0 && params.is_degenerate() {
        // G_{tl} is injective here, so the design is the unique multiple of e_l
        let count = BigInt::from(binom(v as u64, l as i64));
        let (alpha, r) = params.lambdas[0].div_rem(&count);
        if !r.is_zero() {
            return Err(Error::Infeasible(format!(
                "λ_0 = {} is not a multiple of C({v},{l}) = {count}",
                params.lambdas[0]
            )));
        }
        BlockVector::all_blocks(ground, l)?.scale(&alpha)
    } else {
        let mut c = BlockVector::delta(ground, Block::range(1, l))?.scale(&params.lambdas[0]);
        for level in 0..t {
            c = raise_level(c, params, level)?;
        }
        c
    };
    if !verify_design(&c, params) {
        return Err(Error::Internal(format!(
            "constructed vector is not a ({v},{l},{:?})-design",
            params.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(c)
}

/// Given a design for `λ_0..λ_level`, subtracts a null design in `N_{level,l}`
/// so that the level `level + 1` transform becomes `λ_{level+1} e_{level+1}`.
fn raise_level(c: BlockVector, params: &DesignParams, level: usize) -> Result<BlockVector> {
    let ground = params.ground();
    let next = level + 1;
    let target = BlockVector::all_blocks(ground, next)?.scale(&params.lambdas[next]);
    let residual = c.transform(next)?.sub(&target)?;
    if !residual.transform(level)?.is_zero() {
        return Err(Error::Internal(format!("residual at level {next} is not a null design")));
    }
    if residual.is_zero() {
        return Ok(c);
    }
    let basis = null_basis(params.v, level, next)?;
    let coeffs = express_in_basis(&residual, &basis, next)?;
    let free_points = ground.full();
    let mut correction = BlockVector::zero(ground);
    for (pod, a) in basis.iter().zip(coeffs) {
        if a.is_zero() {
            continue;
        }
        let pad = free_points
            .difference(pod.foundation())
            .smallest(params.l - next)
            .ok_or_else(|| Error::Internal("no room to lift a pod".into()))?;
        let lifted = pod.extend(pad)?.vector(ground)?;
        correction = correction.add(&lifted.scale(&a))?;
    }
    c.sub(&correction)
}

/// Integer coefficients of `target` in the given pod basis.
fn express_in_basis(target: &BlockVector, basis: &[Pod], level: usize) -> Result<Vec<BigInt>> {
    let ground = target.ground();
    let rows: HashMap<Block, usize> = ground.subsets(level).enumerate().map(|(i, y)| (y, i)).collect();
    let mut m = Matrix::filled(rows.len(), basis.len(), BigRational::zero());
    for (j, pod) in basis.iter().enumerate() {
        for (x, c) in pod.vector(ground)?.iter() {
            m[(rows[&x], j)] = BigRational::from_integer(c.clone());
        }
    }
    let mut rhs = vec![BigRational::zero(); rows.len()];
    for (x, c) in target.iter() {
        rhs[rows[&x]] = BigRational::from_integer(c.clone());
    }
    let sol = solve(&m, &rhs).ok_or_else(|| {
        Error::Infeasible(format!("residual at level {level} is outside the span of the pod basis"))
    })?;
    sol.into_iter()
        .map(|q| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::Infeasible(format!("non-integral pod coefficient {q} at level {level}")))
            }
        })
        .collect()
}

/// Solves `transform(c, s) = λ_s e_s` for `s = 0..=t` over the integers as a
/// single stacked system, for arbitrary (possibly inadmissible) `λ`.
pub fn solve_design_system(v: usize, l: usize, t: usize, lambdas: &[BigInt]) -> Result<BlockVector> {
    check_shape(v, l, t)?;
    if v > MAX_ORACLE_GROUND {
        return Err(Error::GroundSize { v, max: MAX_ORACLE_GROUND });
    }
    if lambdas.len() != t + 1 {
        return Err(Error::InvalidParams(format!("expected {} lambdas", t + 1)));
    }
    let ground = GroundSet::new(v)?;
    let cols: Vec<Block> = ground.subsets(l).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (s, lambda) in lambdas.iter().enumerate() {
        for y in ground.subsets(s) {
            rows.push(cols.iter().map(|x| BigInt::from(u8::from(y.is_subset(*x)))).collect());
            rhs.push(lambda.clone());
        }
    }
    let a = Matrix::from_rows(cols.len(), rows);
    let x = ColumnEchelon::new(&a)
        .solve(&rhs)
        .ok_or_else(|| Error::Infeasible(format!("no integral ({v},{l},{t}) design with λ = {lambdas:?}")))?;
    BlockVector::from_terms(ground, cols.into_iter().zip(x))
}

/// Independent oracle for [`construct_design`]: any integral solution of the
/// stacked system.
pub fn solve_design_oracle(params: &DesignParams) -> Result<BlockVector> {
    solve_design_system(params.v, params.l, params.t, &params.lambdas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::BlockVector;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn g(v: usize) -> GroundSet {
        GroundSet::new(v).unwrap()
    }

    fn b(points: &[usize]) -> Block {
        Block::from_points(points.iter().copied()).unwrap()
    }

    fn fano() -> BlockVector {
        let lines: [&[usize]; 7] =
            [&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]];
        BlockVector::from_terms(g(7), lines.iter().map(|l| (b(l), int(1)))).unwrap()
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible(7, 3, 2, int(7)).unwrap().lambdas(), &[int(7), int(3), int(1)]);
        assert_eq!(admissible(5, 2, 1, int(10)).unwrap().lambdas(), &[int(10), int(4)]);
        match admissible(4, 2, 1, int(1)) {
            Err(Error::NonIntegralLambda { step, .. }) => assert_eq!(step, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(DesignParams::new(7, 3, 2, vec![int(7), int(3), int(2)]).is_err());
        assert!(DesignParams::new(7, 3, 2, vec![int(7), int(3)]).is_err());
        assert!(admissible(3, 4, 1, int(1)).is_err());
    }

    #[test]
    fn pod_vector_examples() {
        let d = Pod::new(vec![1], vec![2], Block::EMPTY).unwrap().vector(g(4)).unwrap();
        assert_eq!(d, BlockVector::dqr(g(4), 1, 2).unwrap());
        let pod = Pod::new(vec![1, 3], vec![2, 4], Block::EMPTY).unwrap();
        let d = pod.vector(g(4)).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.get(b(&[1, 3])), int(1));
        assert_eq!(d.get(b(&[2, 4])), int(1));
        assert_eq!(d.get(b(&[1, 4])), int(-1));
        assert!(matches!(Pod::new(vec![1, 2], vec![2, 3], Block::EMPTY), Err(Error::RepeatedPoint(2))));
        assert!(Pod::new(vec![1], vec![2], b(&[1])).is_err());
    }

    #[test]
    fn pods_are_null_designs() {
        let ground = g(9);
        for pairs in 1..=3usize {
            for extra in 0..=2usize {
                let p: Vec<usize> = (0..pairs).map(|i| 2 * i + 1).collect();
                let q: Vec<usize> = (0..pairs).map(|i| 2 * i + 2).collect();
                let x = Block::range(2 * pairs + 1, 2 * pairs + extra);
                let pod = Pod::new(p, q, x).unwrap();
                let vec = pod.vector(ground).unwrap();
                assert_eq!(vec.len(), 1 << pairs);
                assert!(vec.has_block_size(pairs + extra));
                for s in 0..pairs {
                    assert!(vec.transform(s).unwrap().is_zero());
                }
                assert!(!vec.transform(pairs).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn null_basis_examples() {
        assert_eq!(null_basis(4, 1, 2).unwrap().len(), 2);
        assert_eq!(null_basis(7, 2, 3).unwrap().len(), 14);
        let small = null_basis(3, 0, 1).unwrap();
        assert_eq!(small.len(), 2);
        for pod in &small {
            assert_eq!(pod.pairs(), 1);
        }
        assert!(null_basis(4, 2, 2).unwrap().is_empty());
        assert!(null_basis(5, 2, 4).unwrap().is_empty());
    }

    #[test]
    fn pod_lift_identity() {
        for v in 3..=8usize {
            for t in 0..v {
                for pod in null_basis(v, t, t + 1).unwrap() {
                    let ground = g(v);
                    let base = pod.vector(ground).unwrap();
                    let room = ground.full().difference(pod.foundation());
                    for extra in 0..=room.len() {
                        let x = room.smallest(extra).unwrap();
                        let lifted = pod.extend(x).unwrap().vector(ground).unwrap();
                        assert_eq!(lifted.transform(t + 1).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn construct_examples() {
        let fano_params = admissible(7, 3, 2, int(7)).unwrap();
        let c = construct_design(&fano_params).unwrap();
        assert!(verify_design(&c, &fano_params));
        let pairs = c.transform(2).unwrap();
        assert!(g(7).subsets(2).all(|y| pairs.get(y) == int(1)));

        let p = admissible(5, 2, 1, int(10)).unwrap();
        let c = construct_design(&p).unwrap();
        assert_eq!(c.transform(1).unwrap(), BlockVector::all_blocks(g(5), 1).unwrap().scale(&int(4)));
        assert_eq!(c.transform(0).unwrap().get(Block::EMPTY), int(10));

        let p = admissible(4, 1, 0, int(3)).unwrap();
        assert_eq!(construct_design(&p).unwrap(), BlockVector::delta(g(4), b(&[1])).unwrap().scale(&int(3)));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_design(&fano(), &admissible(7, 3, 2, int(7)).unwrap()));
        let p = DesignParams::new(4, 2, 1, vec![int(1), int(1)]);
        // (4 - 0) * 1 != (2 - 0) * 1, so these parameters are rejected outright
        assert!(p.is_err());
        let loose = admissible(4, 2, 0, int(1)).unwrap();
        assert!(verify_design(&BlockVector::delta(g(4), b(&[1, 2])).unwrap(), &loose));
        let zero_params = DesignParams::new(6, 3, 2, vec![int(0); 3]).unwrap();
        assert!(verify_design(&BlockVector::zero(g(6)), &zero_params));
        let pairs = admissible(4, 2, 1, int(2)).unwrap();
        assert!(!verify_design(&BlockVector::delta(g(4), b(&[1, 2])).unwrap(), &pairs));
    }

    #[test]
    fn oracle_examples() {
        for (v, l, t, l0) in [(5, 2, 1, 10), (7, 3, 2, 7)] {
            let p = admissible(v, l, t, int(l0)).unwrap();
            let c = solve_design_oracle(&p).unwrap();
            assert!(verify_design(&c, &p));
        }
        assert!(matches!(solve_design_system(4, 2, 1, &[int(1), int(1)]), Err(Error::Infeasible(_))));
        assert!(matches!(solve_design_system(7, 3, 2, &[int(1), int(1), int(1)]), Err(Error::Infeasible(_))));
    }

    #[test]
    fn degenerate_regimes() {
        // t > l
        let p = admissible(5, 1, 3, int(5)).unwrap();
        assert_eq!(p.lambdas(), &[int(5), int(1), int(0), int(0)]);
        assert!(verify_design(&construct_design(&p).unwrap(), &p));
        // l > v - t
        let p = admissible(5, 3, 2, int(10)).unwrap();
        assert_eq!(construct_design(&p).unwrap(), BlockVector::all_blocks(g(5), 3).unwrap());
        // square inclusion matrix, l = v - t
        let p = admissible(6, 4, 2, int(15)).unwrap();
        assert!(verify_design(&construct_design(&p).unwrap(), &p));
    }
}
