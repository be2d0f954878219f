//! Distinct-coordinate solutions of a_1 x_1 + ... + a_k x_k ≡ b (mod n).
//!
//! Unlike F_q, a contracted equation's solution count depends on the gcd of
//! all block sums with n, so blocks do not factor over subsets and the
//! general engine walks set partitions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::RingSpec;
use crate::combinatorics::{factorial, falling_factorial, for_each_rgs};
use crate::error::{Error, Result};
use crate::fq::{Budgets, ClosedForm, CountResult, Method, MethodChoice};

/// Subset scans for the gcd precondition stop here.
const SUBSET_SCAN_K: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZInstance {
    pub ring: RingSpec,
    pub coeffs: Vec<u64>,
    pub target: u64,
}

impl ZInstance {
    pub fn new(ring: RingSpec, coeffs: Vec<u64>, target: u64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        for &x in coeffs.iter().chain(std::iter::once(&target)) {
            ring.elem(x)?;
        }
        Ok(ZInstance {
            ring,
            coeffs,
            target,
        })
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    fn n(&self) -> u64 {
        self.ring.modulus()
    }

    fn pigeonholed(&self) -> bool {
        self.k() as u64 > self.n()
    }
}

/// Unrestricted solutions: `d n^{k-1}` when `d = gcd(a_1, ..., a_k, n)`
/// divides b, else 0.
pub fn lehmer_count(coeffs: &[u64], b: u64, n: u64) -> BigInt {
    let d = coeffs.iter().fold(n, |g, &a| g.gcd(&(a % n)));
    if !b.is_multiple_of(d) {
        return BigInt::zero();
    }
    BigInt::from(d) * BigInt::from(n).pow(coeffs.len() as u32 - 1)
}

/// Set-partition sieve with Lehmer counts per contracted equation. Correct
/// for every coefficient tuple.
pub fn count_partition_sieve_zn(inst: &ZInstance, budgets: &Budgets) -> Result<BigInt> {
    if inst.pigeonholed() {
        return Ok(BigInt::zero());
    }
    let k = inst.k();
    if k > budgets.partition_k {
        return Err(Error::BudgetExceeded {
            engine: "partition",
            needed: format!("k = {k}"),
            budget: format!("k <= {}", budgets.partition_k),
        });
    }
    let n = inst.n();
    let mut factorial_table = vec![1i128; k + 1];
    for s in 1..=k {
        factorial_table[s] = factorial_table[s - 1] * s as i128;
    }
    // (block count, gcd of block sums with n) -> signed weight
    let mut grouped: BTreeMap<(usize, u64), i128> = BTreeMap::new();
    let mut sums = vec![0u64; k];
    let mut sizes = vec![0usize; k];
    for_each_rgs(k, |rgs, blocks| {
        sums[..blocks].fill(0);
        sizes[..blocks].fill(0);
        for (i, &b) in rgs.iter().enumerate() {
            let b = b as usize;
            sums[b] = inst.ring.add(sums[b], inst.coeffs[i]);
            sizes[b] += 1;
        }
        let mut weight = 1i128;
        for &s in &sizes[..blocks] {
            weight *= factorial_table[s - 1];
            if s % 2 == 0 {
                weight = -weight;
            }
        }
        let d = sums[..blocks].iter().fold(n, |g, &a| g.gcd(&a));
        *grouped.entry((blocks, d)).or_insert(0) += weight;
    })?;
    let mut total = BigInt::zero();
    for ((blocks, d), weight) in grouped {
        if weight != 0 && inst.target.is_multiple_of(d) {
            total += BigInt::from(weight) * d * BigInt::from(n).pow(blocks as u32 - 1);
        }
    }
    Ok(total)
}

/// Every nonempty proper subset sum is coprime to n.
pub fn bibak_precondition(coeffs: &[u64], n: u64) -> bool {
    let k = coeffs.len();
    if k > SUBSET_SCAN_K {
        return false;
    }
    let full = (1usize << k) - 1;
    let mut sums = vec![0u64; full + 1];
    for mask in 1..full {
        let bit = mask.trailing_zeros() as usize;
        sums[mask] = ((sums[mask & (mask - 1)] as u128 + coeffs[bit] as u128) % n as u128) as u64;
        if sums[mask].gcd(&n) != 1 {
            return false;
        }
    }
    true
}

/// Closed form under the coprime-subset-sum precondition; `None` when it
/// does not hold.
pub fn count_bibak(inst: &ZInstance) -> Result<Option<BigInt>> {
    if inst.pigeonholed() {
        return Ok(Some(BigInt::zero()));
    }
    let n = inst.n();
    if !bibak_precondition(&inst.coeffs, n) {
        return Ok(None);
    }
    let k = inst.k();
    let total = inst.coeffs.iter().fold(0u64, |s, &a| inst.ring.add(s, a));
    let g = total.gcd(&n);
    let falling = falling_factorial(n as i64, k as i64)?;
    let (share, rem) = falling.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            numerator: falling.to_string(),
            denominator: n.to_string(),
            context: "(n)_k / n",
        });
    }
    let cycles = factorial(k as u64 - 1);
    let n = if !inst.target.is_multiple_of(g) {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        share + cycles * sign
    } else {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        share + cycles * sign * (g - 1)
    };
    Ok(Some(n))
}

fn brute_search(inst: &ZInstance, chosen: &mut Vec<u64>, partial: u64) -> u64 {
    let depth = chosen.len();
    if depth == inst.k() {
        return (partial == inst.target) as u64;
    }
    let a = inst.coeffs[depth];
    let mut total = 0;
    for x in inst.ring.elements() {
        if chosen.contains(&x) {
            continue;
        }
        chosen.push(x);
        total += brute_search(inst, chosen, inst.ring.add(partial, inst.ring.mul(a, x)));
        chosen.pop();
    }
    total
}

/// Injective-tuple enumeration.
pub fn count_brute_zn(inst: &ZInstance, budgets: &Budgets) -> Result<BigInt> {
    if inst.pigeonholed() {
        return Ok(BigInt::zero());
    }
    let cost = falling_factorial(inst.n() as i64, inst.k() as i64)?;
    if cost > BigInt::from(budgets.brute_tuples) {
        return Err(Error::BudgetExceeded {
            engine: "brute",
            needed: format!("{cost} tuples"),
            budget: budgets.brute_tuples.to_string(),
        });
    }
    let mut chosen = Vec::with_capacity(inst.k());
    Ok(BigInt::from(brute_search(inst, &mut chosen, 0)))
}

/// Dispatch for Z/nZ. `Auto` uses the closed form when its precondition
/// holds and the partition sieve otherwise.
pub fn count_zn(inst: &ZInstance, method: MethodChoice, budgets: &Budgets) -> Result<CountResult> {
    let bibak = Method::ClosedForm(ClosedForm::Bibak);
    match method {
        MethodChoice::Auto => match count_bibak(inst)? {
            Some(n) => Ok(CountResult::new(n, bibak)),
            None => Ok(CountResult::new(
                count_partition_sieve_zn(inst, budgets)?,
                Method::Partition,
            )),
        },
        MethodChoice::Brute => Ok(CountResult::new(count_brute_zn(inst, budgets)?, Method::Brute)),
        MethodChoice::Sieve | MethodChoice::Partition => Ok(CountResult::new(
            count_partition_sieve_zn(inst, budgets)?,
            Method::Partition,
        )),
        MethodChoice::Closed => count_bibak(inst)?
            .map(|n| CountResult::new(n, bibak))
            .ok_or_else(|| Error::NotApplicable {
                method: "closed".into(),
                reason: "some nonempty proper subset sum shares a factor with n".into(),
            }),
        MethodChoice::Recurrence => Err(Error::NotApplicable {
            method: "recurrence".into(),
            reason: "the recurrence is defined over fields only".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn zi(n: u64, coeffs: &[u64], b: u64) -> ZInstance {
        ZInstance::new(RingSpec::new(n).unwrap(), coeffs.to_vec(), b).unwrap()
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_count(&[2, 4], 2, 6), BigInt::from(12));
        assert_eq!(lehmer_count(&[2, 4], 1, 6), BigInt::zero());
        for n in 1..8 {
            for b in 0..n {
                assert_eq!(lehmer_count(&[1], b, n), BigInt::one());
            }
        }
    }

    #[test]
    fn sieve_and_brute_examples() {
        let b = Budgets::default();
        for (inst, expected) in [
            (zi(4, &[1, 1], 1), 4),
            (zi(4, &[1, 1], 0), 2),
            (zi(6, &[2, 3], 0), 5),
        ] {
            assert_eq!(count_partition_sieve_zn(&inst, &b).unwrap(), BigInt::from(expected));
            assert_eq!(count_brute_zn(&inst, &b).unwrap(), BigInt::from(expected));
        }
        assert_eq!(count_brute_zn(&zi(2, &[1, 1, 1], 0), &b).unwrap(), BigInt::zero());
    }

    #[test]
    fn bibak_examples() {
        assert_eq!(count_bibak(&zi(4, &[1, 1], 1)).unwrap(), Some(BigInt::from(4)));
        assert_eq!(count_bibak(&zi(4, &[1, 1], 0)).unwrap(), Some(BigInt::from(2)));
        assert_eq!(count_bibak(&zi(3, &[1, 2], 0)).unwrap(), Some(BigInt::zero()));
        assert_eq!(count_bibak(&zi(6, &[2, 3], 0)).unwrap(), None);
    }

    #[test]
    fn dispatch() {
        let b = Budgets::default();
        let r = count_zn(&zi(4, &[1, 1], 0), MethodChoice::Auto, &b).unwrap();
        assert_eq!(r.method.to_string(), "closed-form:bibak");
        let r = count_zn(&zi(6, &[2, 3], 0), MethodChoice::Auto, &b).unwrap();
        assert_eq!((r.count, r.method), (BigInt::from(5), Method::Partition));
        assert!(count_zn(&zi(6, &[2, 3], 0), MethodChoice::Recurrence, &b).is_err());
    }
}
