//! The verification grid behind `specht selftest`. Every check is
//! deterministic and its detail line carries no timings, so two runs print
//! identical reports.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binom, binom_mod_p, kummer_carries, PrimeP};
use crate::constructions::{
    a_coefficient, case1_u, case1_vector, case2_u, main_u, three_part_dim_check, uniform_coefficient,
    Case1Params, Case2Params,
};
use crate::designs::{admissible, construct_design, null_basis, solve_design_oracle, verify_design, DesignParams};
use crate::blocks::{BlockVector, GroundSet};
use crate::error::Result;
use crate::scalar::residue;
use crate::specht::{dim_specht, f_lambda, h0_nonzero, hemmer_check, in_specht_mod, kernel_dimension, partitions, psi};

/// Outcome of one grid check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {:<22} {}", self.id, self.name, self.detail)
    }
}

fn check(id: u8, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => Check { id, name, passed, detail },
        Err(e) => Check { id, name, passed: false, detail: format!("error: {e}") },
    }
}

fn prime(p: u64) -> PrimeP {
    PrimeP::new(p).expect("odd prime")
}

/// Runs every check in order, with the seeded check at seed zero.
pub fn run() -> Vec<Check> {
    run_with_seed(0)
}

pub fn run_with_seed(seed: u64) -> Vec<Check> {
    vec![
        check(1, "lucas-kummer", lucas_kummer),
        check(2, "design-constructor", design_constructor),
        check(3, "null-basis", null_basis_dimensions),
        check(4, "first-family", first_family),
        check(5, "a-coefficients", a_coefficients),
        check(6, "second-family", second_family),
        check(7, "two-part-designs", two_part_designs),
        check(8, "kernel-intersection", kernel_intersection),
        check(9, "three-part-dims", three_part_dims),
        check(10, "seeded-designs", || seeded_designs(seed)),
    ]
}

fn lucas_kummer() -> Result<(bool, String)> {
    let mut pairs = 0u64;
    let mut bad = Vec::new();
    for p in [3, 5, 7] {
        let pp = prime(p);
        for a in 0..=200u64 {
            for b in 0..=a {
                let exact = binom(a, b as i64);
                let lucas_ok = binom_mod_p(a, b, pp) == (&exact % p).to_u64_digits().first().copied().unwrap_or(0);
                let mut val = 0;
                let mut m = exact;
                while m.is_multiple_of(&BigUint::from(p)) {
                    m /= p;
                    val += 1;
                }
                if !lucas_ok || kummer_carries(b, a - b, pp) != val {
                    bad.push((p, a, b));
                }
                pairs += 1;
            }
        }
    }
    Ok((bad.is_empty(), format!("{pairs} (a, b, p) triples, {} mismatches", bad.len())))
}

/// `(v, l, t, λ_0)` with the least admissible `λ_0`, for `2 <= v <= 9`,
/// `1 <= l < v`, `t <= min(3, l)`.
pub fn design_grid() -> Vec<DesignParams> {
    let mut out = Vec::new();
    for v in 2..=9 {
        for l in 1..v {
            for t in 0..=l.min(3) {
                let bound = binom(v as u64, t as i64);
                let mut k = BigInt::from(1);
                while BigInt::from(bound.clone()) >= k {
                    if let Ok(p) = admissible(v, l, t, k.clone()) {
                        out.push(p);
                        break;
                    }
                    k += 1;
                }
            }
        }
    }
    out
}

fn design_constructor() -> Result<(bool, String)> {
    let grid = design_grid();
    let mut failures = 0;
    for params in &grid {
        let c = construct_design(params)?;
        let oracle = solve_design_oracle(params)?;
        let diff = c.sub(&oracle)?;
        let null = (0..=params.t()).all(|s| diff.transform(s).map(|x| x.is_zero()).unwrap_or(false))
            && (diff.is_zero() || diff.has_block_size(params.l()));
        if !verify_design(&c, params) || !verify_design(&oracle, params) || !null {
            failures += 1;
        }
    }
    Ok((failures == 0 && grid.len() >= 50, format!("{} parameter sets, {failures} failures", grid.len())))
}

fn null_basis_dimensions() -> Result<(bool, String)> {
    let mut cases = 0;
    let mut failures = 0;
    for v in 1..=8usize {
        for t in 0..v {
            for l in t + 1..=v.saturating_sub(t) {
                let pods = null_basis(v, t, l)?;
                let expected = BigInt::from(binom(v as u64, l as i64)) - BigInt::from(binom(v as u64, t as i64));
                if BigInt::from(pods.len()) != expected {
                    failures += 1;
                }
                cases += 1;
            }
        }
    }
    Ok((failures == 0, format!("{cases} (v, t, l) triples, {failures} failures")))
}

fn first_family() -> Result<(bool, String)> {
    let p = prime(3);
    let mut notes = Vec::new();
    let mut passed = true;

    let params = Case1Params::new(p, 1, 1)?;
    let u = case1_u(&params)?;
    let top = psi(&u, 1, 0)?.fixed_multiple().unwrap_or_default();
    let exact = top == BigInt::from(4);
    let unit = residue(&top, 3) == 1;
    let lower = (1..3).all(|s| psi(&u, 1, s).map(|i| i.residues(p).is_zero()).unwrap_or(false));
    let verdict = hemmer_check(&u, p)?.verdict;
    passed &= exact && unit && lower && verdict;
    notes.push(format!(
        "r=1: psi_(1,0) scalar {top} (exactly 4: {exact}, = 1 mod 3: {unit}), higher images 0 mod 3: {lower}, verdict {verdict}"
    ));

    match Case1Params::new(p, 1, 3) {
        Ok(params) => {
            let u = case1_u(&params)?;
            let verdict = hemmer_check(&u, p)?.verdict;
            passed &= verdict;
            notes.push(format!("r=3: verdict {verdict}"));
        }
        Err(e) => {
            let u = case1_vector(p, 1, 3)?;
            let top = psi(&u, 1, 0)?.fixed_multiple().unwrap_or_default();
            let verdict = hemmer_check(&u, p)?.verdict;
            passed = false;
            notes.push(format!("r=3: rejected ({e}); unchecked construction gives psi_(1,0) scalar {top}, verdict {verdict}"));
        }
    }
    Ok((passed, notes.join("; ")))
}

fn a_coefficients() -> Result<(bool, String)> {
    let base = Case1Params::new(prime(3), 1, 1)?;
    let a10 = a_coefficient(1, 0, &base)?;
    let a11 = a_coefficient(1, 1, &base)?;
    let mut passed = a10 == BigInt::from(18) && a11 == BigInt::from(24) && &a11 - &a10 == BigInt::from(binom(4, 2));
    let mut grid = 0;
    for p in [3, 5] {
        for r in 1..=4 {
            let Ok(params) = Case1Params::new(prime(p), 1, r) else { continue };
            grid += 1;
            let b = params.b();
            for s in 1..b {
                passed &= residue(&a_coefficient(s, s - 1, &params)?, p) == 0;
                for t in 1..=s {
                    let diff = a_coefficient(s, t, &params)? - a_coefficient(s, t - 1, &params)?;
                    passed &= diff == BigInt::from(binom((r + 1) * b - s - 1, (r * b - 1) as i64));
                    passed &= residue(&diff, p) == 0 && kummer_carries(r * b - 1, b - s, prime(p)) >= 1;
                }
            }
        }
    }
    Ok((passed, format!("A_(1,0) = {a10}, A_(1,1) = {a11}; claims on {grid} (p, r) pairs")))
}

fn second_family() -> Result<(bool, String)> {
    let p = prime(3);
    let u = case2_u(&Case2Params::new(p, 1, 8)?)?;
    let scalars = (0..3)
        .map(|v| psi(&u, 1, v).map(|img| uniform_coefficient(&img).unwrap_or_default()))
        .collect::<Result<Vec<_>>>()?;
    let residues: Vec<u64> = scalars.iter().map(|s| residue(s, 3)).collect();
    let report = hemmer_check(&u, p)?;
    let expected: Vec<BigInt> = [56, 21, 6].into_iter().map(BigInt::from).collect();
    let passed = scalars == expected && residues == [2, 0, 0] && report.verdict && u.len() == 56;
    let shown: Vec<String> = scalars.iter().map(ToString::to_string).collect();
    Ok((passed, format!("scalars ({}), residues {residues:?}, verdict {}", shown.join(", "), report.verdict)))
}

fn two_part_designs() -> Result<(bool, String)> {
    let mut cases = 0;
    let mut failures = 0;
    for p in [3, 5] {
        let pp = prime(p);
        for a in 1..=9u64 {
            for b in 1..=a.min(10 - a) {
                cases += 1;
                let ok = main_u(a, b, pp).and_then(|w| {
                    let mut ok = w.lambdas.iter().any(|l| residue(l, p) != 0);
                    for (v, l) in w.lambdas.iter().enumerate() {
                        ok &= psi(&w.u, 1, v)?.fixed_multiple().as_ref() == Some(l);
                    }
                    Ok(ok)
                });
                if !matches!(ok, Ok(true)) {
                    failures += 1;
                }
            }
        }
    }
    let sample = main_u(3, 2, prime(3))?.lambdas;
    let exact = sample == [BigInt::from(10), BigInt::from(4)];
    let shown: Vec<String> = sample.iter().map(ToString::to_string).collect();
    Ok((failures == 0 && exact, format!("{cases} (a, b, p) cases, {failures} failures; (3,2) at p=3 gives ({})", shown.join(", "))))
}

fn kernel_intersection() -> Result<(bool, String)> {
    let mut shapes = 0;
    let mut failures = 0;
    for n in 1..=7 {
        for shape in partitions(n) {
            shapes += 1;
            let nullity = kernel_dimension::<BigRational>(&shape, 10_000)?;
            if BigUint::from(nullity) != dim_specht(&shape) {
                failures += 1;
            }
            let f = f_lambda(&shape)?;
            for p in [3, 5, 7] {
                if h0_nonzero(&shape, prime(p)) != in_specht_mod(&f, prime(p))? {
                    failures += 1;
                }
            }
        }
    }
    Ok((failures == 0, format!("{shapes} partitions of n <= 7, {failures} failures")))
}

fn three_part_dims() -> Result<(bool, String)> {
    let mut cases = 0;
    let mut failures = 0;
    for a in 1..=11u64 {
        for b in 1..=a.min(12 - a) {
            cases += 1;
            if !three_part_dim_check(a, b, 1)?.holds {
                failures += 1;
            }
        }
    }
    let sample = three_part_dim_check(3, 2, 1)?;
    let exact = sample.lhs == BigInt::from(76) && sample.rhs == BigInt::from(96);
    Ok((failures == 0 && exact, format!("{cases} shapes (a, b, 1), {failures} failures; (3,2,1): {} < {}", sample.lhs, sample.rhs)))
}

fn seeded_designs(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = design_grid();
    let mut failures = 0;
    const TRIALS: usize = 20;
    for _ in 0..TRIALS {
        let base = grid.choose(&mut rng).expect("nonempty grid");
        let scale = BigInt::from(rng.gen_range(1..=3));
        let params = admissible(base.v(), base.l(), base.t(), &base.lambdas()[0] * scale)?;
        if !verify_design(&construct_design(&params)?, &params) {
            failures += 1;
        }

        let v = rng.gen_range(3..=9usize);
        let t = rng.gen_range(0..=(v - 2) / 2);
        let l = rng.gen_range(t + 1..v - t);
        let ground = GroundSet::new(v)?;
        let mut c = BlockVector::zero(ground);
        for pod in null_basis(v, t, l)? {
            let k = BigInt::from(rng.gen_range(-3..=3));
            c = c.add(&pod.vector(ground)?.scale(&k))?;
        }
        let null = (0..=t).all(|s| c.transform(s).map(|x| x.is_zero()).unwrap_or(false));
        if !null || (!c.is_zero() && c.foundation().len() < t + l + 1) {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("seed {seed}: {TRIALS} designs and {TRIALS} null combinations, {failures} failures")))
}
