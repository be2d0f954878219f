//! Distinct-coordinate counting by a signed sum over cycle structures.
//!
//! Write the k positions as a set partition into blocks; a permutation with
//! those cycles contributes `(-1)^{|B|-1}` per block, and there are
//! `(|B|-1)!` cyclic orders per block. Contracting each block to one
//! variable leaves an unrestricted equation whose solution count is
//! `q^{l-1}` unless every block sum vanishes, in which case it is
//! `q^{l-1} (v(b) + 1)`. Only the all-zero-sum partitions depend on b, and
//! their signed total
//!
//! ```text
//! W = sum over partitions into zero-sum blocks of prod_B (-1)^{|B|-1} (|B|-1)! q
//! ```
//!
//! gives `N = (q)_k / q + v(b) W / q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{exact_div, nu, uniform_share, Budgets, CountResult, Instance, Method};
use crate::algebra::{Elem, Field};
use crate::combinatorics::for_each_rgs;
use crate::error::{Error, Result};

/// Hard ceiling on the table size regardless of budgets (2^24 entries).
const TABLE_K_LIMIT: usize = 24;

trait Accumulator: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_i128(v: i128) -> Self;
    /// `self += w * f`; false on overflow.
    fn mul_add(&mut self, w: &Self, f: &Self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Accumulator for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn from_i128(v: i128) -> Self {
        v
    }
    fn mul_add(&mut self, w: &Self, f: &Self) -> bool {
        match w.checked_mul(*f).and_then(|t| self.checked_add(t)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Accumulator for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn mul_add(&mut self, w: &Self, f: &Self) -> bool {
        if !f.is_zero() {
            *self += w * f;
        }
        true
    }
    fn into_big(self) -> BigInt {
        self
    }
}

fn zero_sum_masks(coeffs: &[Elem], field: &Field) -> Vec<bool> {
    let size = 1usize << coeffs.len();
    let mut sums = vec![Elem::ZERO; size];
    let mut zero = vec![false; size];
    zero[0] = true;
    for mask in 1..size {
        let bit = mask.trailing_zeros() as usize;
        sums[mask] = field.add(sums[mask & (mask - 1)], coeffs[bit]);
        zero[mask] = sums[mask].is_zero();
    }
    zero
}

fn run_dp<A: Accumulator>(k: usize, q: u32, zero: &[bool]) -> Option<Vec<A>> {
    // weight of one zero-sum block of size s: (-1)^{s-1} (s-1)! q
    let mut weights = vec![A::nil(); k + 1];
    let mut fact: i128 = 1;
    for (s, w) in weights.iter_mut().enumerate().skip(1) {
        if s > 1 {
            fact *= (s - 1) as i128;
        }
        let sign = if s % 2 == 1 { 1 } else { -1 };
        *w = A::from_i128(sign * fact * q as i128);
    }
    let size = 1usize << k;
    let mut table = vec![A::nil(); size];
    table[0] = A::unit();
    for mask in 1..size {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut acc = A::nil();
        let mut sub = rest;
        loop {
            let block = sub | low;
            if zero[block]
                && !acc.mul_add(&weights[block.count_ones() as usize], &table[mask ^ block])
            {
                return None;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        table[mask] = acc;
    }
    Some(table)
}

/// Signed zero-sum partition weight for every subset of positions:
/// `table[S]` is W for the sub-instance on the positions in mask `S`.
pub fn sieve_table(coeffs: &[Elem], field: &Field) -> Result<Vec<BigInt>> {
    let k = coeffs.len();
    if k > TABLE_K_LIMIT {
        return Err(Error::BudgetExceeded {
            engine: "sieve-dp",
            needed: format!("k = {k}"),
            budget: format!("k <= {TABLE_K_LIMIT}"),
        });
    }
    let zero = zero_sum_masks(coeffs, field);
    if let Some(t) = run_dp::<i128>(k, field.order(), &zero) {
        return Ok(t.into_iter().map(Accumulator::into_big).collect());
    }
    Ok(run_dp::<BigInt>(k, field.order(), &zero).expect("bigint accumulation cannot overflow"))
}

fn check_sieve_budget(k: usize, budgets: &Budgets) -> Result<()> {
    if k > budgets.sieve_k {
        return Err(Error::BudgetExceeded {
            engine: "sieve-dp",
            needed: format!("k = {k}"),
            budget: format!("k <= {}", budgets.sieve_k),
        });
    }
    Ok(())
}

/// W = sum_i (-1)^{k-i} p(a; k, i) q^i, where p(a; k, i) counts permutations
/// with i cycles whose coefficient sums all vanish.
pub fn sieve_weight(coeffs: &[Elem], field: &Field, budgets: &Budgets) -> Result<BigInt> {
    check_sieve_budget(coeffs.len(), budgets)?;
    let mut table = sieve_table(coeffs, field)?;
    Ok(table.pop().expect("table has 2^k >= 1 entries"))
}

/// `(q)_k / q + v(b) W / q`, both divisions checked.
pub(crate) fn count_from_weight(
    field: &Field,
    k: usize,
    target: Elem,
    weight: &BigInt,
) -> Result<BigInt> {
    let share = uniform_share(field.order(), k)?;
    let correction = exact_div(
        &(weight * nu(target, field)),
        &BigInt::from(field.order()),
        "v(b) W / q",
    )?;
    Ok(share + correction)
}

pub fn count_sieve(inst: &Instance<'_>, budgets: &Budgets) -> Result<CountResult> {
    inst.require_full("sieve")?;
    if inst.pigeonholed() {
        return Ok(CountResult::new(0, Method::SieveDp));
    }
    let weight = sieve_weight(&inst.coeffs, inst.field, budgets)?;
    let n = count_from_weight(inst.field, inst.k(), inst.target, &weight)?;
    Ok(CountResult::new(n, Method::SieveDp))
}

/// Second evaluation of the same signed sum, walking every set partition.
/// Kept free of the subset DP so the two can check each other.
pub fn count_partition_oracle(inst: &Instance<'_>, budgets: &Budgets) -> Result<CountResult> {
    inst.require_full("partition")?;
    if inst.pigeonholed() {
        return Ok(CountResult::new(0, Method::Partition));
    }
    let k = inst.k();
    if k > budgets.partition_k {
        return Err(Error::BudgetExceeded {
            engine: "partition",
            needed: format!("k = {k}"),
            budget: format!("k <= {}", budgets.partition_k),
        });
    }
    let field = inst.field;
    // signed[l][z]: summed sign * cyclic-order weight over partitions with l
    // blocks, z = 1 when every block sum is zero
    let mut signed = vec![[0i128; 2]; k + 1];
    let mut sums = vec![Elem::ZERO; k];
    let mut sizes = vec![0usize; k];
    let mut factorial = vec![1i128; k + 1];
    for s in 1..=k {
        factorial[s] = factorial[s - 1] * s as i128;
    }
    for_each_rgs(k, |rgs, blocks| {
        sums[..blocks].fill(Elem::ZERO);
        sizes[..blocks].fill(0);
        for (i, &b) in rgs.iter().enumerate() {
            let b = b as usize;
            sums[b] = field.add(sums[b], inst.coeffs[i]);
            sizes[b] += 1;
        }
        let mut weight = 1i128;
        for &s in &sizes[..blocks] {
            weight *= factorial[s - 1];
            if s % 2 == 0 {
                weight = -weight;
            }
        }
        let all_zero = sums[..blocks].iter().all(|x| x.is_zero());
        signed[blocks][all_zero as usize] += weight;
    })?;
    let q = BigInt::from(field.order());
    let zero_factor = BigInt::from(nu(inst.target, field) + 1);
    let mut total = BigInt::zero();
    let mut q_pow = BigInt::one(); // q^{l-1}
    for row in signed.iter().skip(1) {
        total += &q_pow * row[0] + &q_pow * &zero_factor * row[1];
        q_pow *= &q;
    }
    Ok(CountResult::new(total, Method::Partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;

    fn weight(q: &str, coeffs: &[u64]) -> BigInt {
        let field = Field::new(q.parse().unwrap());
        let c: Vec<Elem> = coeffs.iter().map(|&x| field.elem(x).unwrap()).collect();
        sieve_weight(&c, &field, &Budgets::default()).unwrap()
    }

    fn both(q: &str, coeffs: &[u64], b: u64) -> (BigInt, BigInt) {
        let field = Field::new(q.parse().unwrap());
        let inst = Instance::from_encodings(&field, coeffs, b, Domain::Full).unwrap();
        let budgets = Budgets::default();
        (
            count_sieve(&inst, &budgets).unwrap().count,
            count_partition_oracle(&inst, &budgets).unwrap().count,
        )
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight("5", &[1, 4]), BigInt::from(-5));
        assert_eq!(weight("3", &[1, 1, 1]), BigInt::from(6));
        assert_eq!(weight("7", &[1, 1, 1]), BigInt::zero());
        assert_eq!(weight("2^2", &[1, 1]), BigInt::from(-4));
    }

    #[test]
    fn count_examples() {
        assert_eq!(both("5", &[1, 4], 1), (BigInt::from(5), BigInt::from(5)));
        assert_eq!(both("3", &[1, 1, 1], 0), (BigInt::from(6), BigInt::from(6)));
        assert_eq!(both("2^2", &[1, 1], 0), (BigInt::zero(), BigInt::zero()));
        assert_eq!(both("7", &[2], 0), (BigInt::one(), BigInt::one()));
        assert_eq!(both("3", &[1, 1, 1], 1), (BigInt::zero(), BigInt::zero()));
    }

    #[test]
    fn big_fields_fall_back_to_bigint() {
        // all-zero coefficients: every partition is zero-sum, W = (q)_k
        let field = Field::with_params(2, 20, None).unwrap();
        let c = vec![Elem::ZERO; 12];
        let w = sieve_weight(&c, &field, &Budgets::default()).unwrap();
        let expected = crate::combinatorics::falling_factorial(1 << 20, 12).unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn budgets_are_enforced() {
        let field = Field::prime(3).unwrap();
        let inst = Instance::from_encodings(&field, &[1, 1], 0, Domain::Full).unwrap();
        let tight = Budgets {
            sieve_k: 1,
            partition_k: 1,
            ..Budgets::default()
        };
        assert!(count_sieve(&inst, &tight).unwrap_err().is_budget());
        assert!(count_partition_oracle(&inst, &tight).unwrap_err().is_budget());
    }
}
