//! Identities behind the closed forms, checked against explicit enumeration.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Suite, Tally, VerifyConfig};
use crate::algebra::{Elem, Field};
use crate::combinatorics::{
    binomial, count_cycles_divisible, cycle_count_profile, factorial, falling_factorial,
    stirling_first_unsigned,
};
use crate::error::Result;
use crate::fq::sieve_weight;

/// Largest k enumerated over S_k.
const ORACLE_K: usize = 8;
const SIEVE_DRAWS: usize = 6;

fn pow(q: u64, i: usize) -> BigInt {
    BigInt::from(q).pow(i as u32)
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Σ_i (-1)^{k-i} c(k, i) q^i = (q)_k.
fn stirling_falling(tally: &mut Tally) -> Result<()> {
    for k in 0..=12usize {
        for q in 2..=16u64 {
            let lhs = (0..=k).fold(BigInt::zero(), |acc, i| {
                acc + stirling_first_unsigned(k, i) * pow(q, i) * sign(k - i)
            });
            tally.check(
                || format!("stirling-falling k {k} q {q}"),
                vec![("signed-stirling", Ok(lhs)), ("falling", falling_factorial(q as i64, k as i64))],
            )?;
            tally.cover("stirling-falling");
        }
    }
    Ok(())
}

/// Partial alternating sums of binomial rows, for every integer upper index.
fn alternating_binomials(tally: &mut Tally) -> Result<()> {
    for n in -5..=12i64 {
        for k in 0..=12i64 {
            let (mut plain, mut weighted) = (BigInt::zero(), BigInt::zero());
            for j in 0..=k {
                let term = binomial(n, j) * if j % 2 == 0 { 1 } else { -1 };
                weighted += &term * j;
                plain += term;
            }
            let s = if k % 2 == 0 { 1 } else { -1 };
            tally.check(
                || format!("alternating-binomial n {n} k {k}"),
                vec![("sum", Ok(plain)), ("closed", Ok(binomial(n - 1, k) * s))],
            )?;
            tally.check(
                || format!("weighted-alternating-binomial n {n} k {k}"),
                vec![("sum", Ok(weighted)), ("closed", Ok(binomial(n - 2, k - 1) * n * s))],
            )?;
            tally.cover("alternating-binomial");
        }
    }
    Ok(())
}

/// Permutations whose cycle lengths are all multiples of p.
fn divisible_cycles(tally: &mut Tally) -> Result<()> {
    for p in [2usize, 3] {
        for k in (p..=ORACLE_K).step_by(p) {
            let profile = cycle_count_profile(k, &|c: &[usize]| c.len().is_multiple_of(p))?;
            for (i, count) in profile.iter().enumerate() {
                tally.check(
                    || format!("divisible-cycles k {k} i {i} p {p}"),
                    vec![("oracle", Ok(count.clone())), ("recurrence", Ok(count_cycles_divisible(k, i, p)))],
                )?;
            }
            for q in [p, p * p, 2 * p] {
                let q = q as u64;
                let lhs = profile
                    .iter()
                    .enumerate()
                    .skip(1)
                    .fold(BigInt::zero(), |acc, (i, c)| acc + c * pow(q, i) * sign(i));
                let rhs = factorial(k as u64)
                    * binomial((q / p as u64) as i64, (k / p) as i64)
                    * sign(k / p);
                tally.check(
                    || format!("divisible-cycles-generating k {k} p {p} q {q}"),
                    vec![("oracle", Ok(lhs)), ("closed", Ok(rhs))],
                )?;
                tally.cover("divisible-cycles-generating");
            }
        }
    }
    Ok(())
}

/// Positions 0 and 1 share a cycle of length j; every other cycle has length
/// divisible by p.
fn joined_pair(tally: &mut Tally) -> Result<()> {
    for p in [2usize, 3] {
        for k in 2..=ORACLE_K {
            for j in (2..=k).filter(|j| (k - j) % p == 0) {
                let pred = |c: &[usize]| {
                    if c.contains(&0) {
                        c.contains(&1) && c.len() == j
                    } else {
                        !c.contains(&1) && c.len().is_multiple_of(p)
                    }
                };
                let profile = cycle_count_profile(k, &pred)?;
                let lead = falling_factorial(k as i64 - 2, j as i64 - 2)? * (j - 1);
                for (i, count) in profile.iter().enumerate().skip(1) {
                    let closed = &lead * count_cycles_divisible(k - j, i - 1, p);
                    tally.check(
                        || format!("joined-pair k {k} i {i} j {j} p {p}"),
                        vec![("oracle", Ok(count.clone())), ("closed", Ok(closed))],
                    )?;
                    tally.cover("joined-pair");
                }
            }
        }
    }
    Ok(())
}

/// Position 0 on a cycle of length j1 and position 1 on a different cycle of
/// length j2; every other cycle has length divisible by p.
fn split_pair(tally: &mut Tally) -> Result<()> {
    for p in [2usize, 3] {
        for k in 2..=ORACLE_K {
            for j1 in 1..k {
                for j2 in (1..=k - j1).filter(|j2| (k - j1 - j2) % p == 0) {
                    let pred = |c: &[usize]| {
                        if c.contains(&0) {
                            !c.contains(&1) && c.len() == j1
                        } else if c.contains(&1) {
                            c.len() == j2
                        } else {
                            c.len().is_multiple_of(p)
                        }
                    };
                    let profile = cycle_count_profile(k, &pred)?;
                    let lead = falling_factorial(k as i64 - 2, (j1 + j2) as i64 - 2)?;
                    for (i, count) in profile.iter().enumerate().skip(1) {
                        let closed = if i >= 2 {
                            &lead * count_cycles_divisible(k - j1 - j2, i - 2, p)
                        } else {
                            BigInt::zero()
                        };
                        tally.check(
                            || format!("split-pair k {k} i {i} j1 {j1} j2 {j2} p {p}"),
                            vec![("oracle", Ok(count.clone())), ("closed", Ok(closed))],
                        )?;
                        tally.cover("split-pair");
                    }
                }
            }
        }
    }
    Ok(())
}

/// The sieve DP's W against Σ_i (-1)^{k-i} p(a; k, i) q^i with p(a; k, i)
/// counted over S_k.
fn sieve_weights(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let mut rng = cfg.sampler(Suite::Lemmas);
    for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
        let field = Field::with_params(p, m, None)?;
        let q = field.order() as u64;
        for k in 1..=ORACLE_K {
            for _ in 0..SIEVE_DRAWS {
                let a: Vec<Elem> = rng.vec_below(k, q).into_iter().map(|x| field.elem(x)).collect::<Result<_>>()?;
                let zero_sum = |c: &[usize]| field.sum(c.iter().map(|&i| a[i])).is_zero();
                let profile = cycle_count_profile(k, &zero_sum)?;
                let oracle = profile
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, c)| acc + c * pow(q, i) * sign(k - i));
                let encodings: Vec<String> = a.iter().map(|x| x.encoding().to_string()).collect();
                tally.check(
                    || format!("sieve-weight field {} coeffs [{}]", field.spec(), encodings.join(",")),
                    vec![("oracle", Ok(oracle)), ("dp", sieve_weight(&a, &field, &cfg.budgets))],
                )?;
                tally.cover("sieve-weight");
            }
        }
    }
    Ok(())
}

pub(crate) fn lemmas(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    stirling_falling(tally)?;
    alternating_binomials(tally)?;
    divisible_cycles(tally)?;
    joined_pair(tally)?;
    split_pair(tally)?;
    sieve_weights(cfg, tally)?;
    Ok(())
}
