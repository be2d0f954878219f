//! Exact combinatorial numbers plus the enumeration oracles over S_k and
//! set partitions.
//!
//! All counts are `BigInt`; nothing in here touches floating point.

mod partition;
mod perm;

pub use partition::{enumerate_set_partitions, for_each_rgs, SetPartition, SetPartitions, MAX_PARTITION_K};
pub use perm::{
    count_permutations_by_cycles, cycle_count_profile, CyclePredicate, MAX_PERMUTATION_K,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `(n)_k = n (n-1) ... (n-k+1)`; the empty product is 1.
pub fn falling_factorial(n: i64, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::Unsupported(format!(
            "falling factorial with negative length {k}"
        )));
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        let term = n - j;
        if term == 0 {
            return Ok(BigInt::zero());
        }
        acc *= term;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Binomial coefficient with the generalized upper index: for `n < 0`,
/// `C(n, k) = (-1)^k C(k - n - 1, k)`. Zero whenever `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let magnitude = binomial(k - n - 1, k);
        return if k % 2 == 0 { magnitude } else { -magnitude };
    }
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Unsigned Stirling numbers of the first kind, `c(k, i)` = permutations of
/// S_k with exactly `i` cycles.
pub fn stirling_first_unsigned(k: usize, i: usize) -> BigInt {
    if i > k {
        return BigInt::zero();
    }
    // Row-by-row: c(n, j) = c(n-1, j-1) + (n-1) c(n-1, j).
    let mut row = vec![BigInt::one()];
    for n in 1..=k {
        let mut next = vec![BigInt::zero(); n + 1];
        for j in 1..=n {
            let mut v = row[j - 1].clone();
            if j < row.len() {
                v += &row[j] * (n - 1);
            }
            next[j] = v;
        }
        row = next;
    }
    row[i].clone()
}

/// Permutations of an `m`-set with exactly `i` cycles, every cycle length a
/// multiple of `p`.
///
/// Counted by fixing the cycle through the smallest element: it has length
/// `L` with `p | L`, chosen in `C(m-1, L-1) (L-1)!` ways.
pub fn count_cycles_divisible(m: usize, i: usize, p: usize) -> BigInt {
    let mut table = vec![vec![BigInt::zero(); m + 1]; m + 1];
    table[0][0] = BigInt::one();
    for size in 1..=m {
        for cycles in 1..=size {
            let mut total = BigInt::zero();
            let mut len = p;
            while len <= size {
                let prev = &table[size - len][cycles - 1];
                if !prev.is_zero() {
                    total += binomial(size as i64 - 1, len as i64 - 1)
                        * factorial(len as u64 - 1)
                        * prev;
                }
                len += p;
            }
            table[size][cycles] = total;
        }
    }
    table.get(m).and_then(|row| row.get(i)).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 2).unwrap(), BigInt::from(20));
        assert_eq!(falling_factorial(7, 0).unwrap(), BigInt::one());
        assert_eq!(falling_factorial(3, 5).unwrap(), BigInt::zero());
        assert_eq!(falling_factorial(-2, 2).unwrap(), BigInt::from(6));
        assert!(falling_factorial(3, -1).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first_unsigned(3, 2), BigInt::from(3));
        for k in 0..8 {
            assert_eq!(stirling_first_unsigned(k, k), BigInt::one());
        }
        assert_eq!(stirling_first_unsigned(4, 1), BigInt::from(6));
        assert_eq!(stirling_first_unsigned(4, 0), BigInt::zero());
        assert_eq!(stirling_first_unsigned(0, 0), BigInt::one());
    }

    #[test]
    fn stirling_rows_sum_to_factorial() {
        for k in 0..10 {
            let total: BigInt = (0..=k).map(|i| stirling_first_unsigned(k, i)).sum();
            assert_eq!(total, factorial(k as u64));
        }
    }

    #[test]
    fn divisible_cycles_small_cases() {
        // S_4 with two 2-cycles: (12)(34), (13)(24), (14)(23)
        assert_eq!(count_cycles_divisible(4, 2, 2), BigInt::from(3));
        // S_4 single 4-cycle
        assert_eq!(count_cycles_divisible(4, 1, 2), BigInt::from(6));
        assert_eq!(count_cycles_divisible(0, 0, 3), BigInt::one());
        assert_eq!(count_cycles_divisible(5, 2, 2), BigInt::zero());
    }
}
