//! Brute-force enumeration of S_k by cycle structure.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest k the S_k oracle will enumerate.
pub const MAX_PERMUTATION_K: usize = 9;

/// A condition on one cycle, given its member indices (0-based).
pub trait CyclePredicate {
    fn accepts(&self, members: &[usize]) -> bool;
}

impl<F: Fn(&[usize]) -> bool> CyclePredicate for F {
    fn accepts(&self, members: &[usize]) -> bool {
        self(members)
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `profile[i]` = number of permutations of S_k with exactly `i` cycles, all
/// of which satisfy `pred`.
pub fn cycle_count_profile<P: CyclePredicate + ?Sized>(k: usize, pred: &P) -> Result<Vec<BigInt>> {
    if k > MAX_PERMUTATION_K {
        return Err(Error::BudgetExceeded {
            engine: "permutation oracle",
            needed: format!("k = {k}"),
            budget: format!("k <= {MAX_PERMUTATION_K}"),
        });
    }
    let mut counts = vec![0u64; k + 1];
    let mut perm: Vec<usize> = (0..k).collect();
    let mut seen = vec![false; k];
    let mut members = Vec::with_capacity(k);
    loop {
        seen.iter_mut().for_each(|s| *s = false);
        let mut cycles = 0;
        let mut ok = true;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            members.clear();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                members.push(cur);
                cur = perm[cur];
            }
            cycles += 1;
            if !pred.accepts(&members) {
                ok = false;
                break;
            }
        }
        if ok {
            counts[cycles] += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Number of τ in S_k with exactly `i` cycles, each satisfying `pred`.
pub fn count_permutations_by_cycles<P: CyclePredicate + ?Sized>(
    k: usize,
    i: usize,
    pred: &P,
) -> Result<BigInt> {
    let profile = cycle_count_profile(k, pred)?;
    Ok(profile.get(i).cloned().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{factorial, stirling_first_unsigned};

    #[test]
    fn even_cycles_in_s4() {
        let even = |c: &[usize]| c.len().is_multiple_of(2);
        assert_eq!(count_permutations_by_cycles(4, 2, &even).unwrap(), BigInt::from(3));
    }

    #[test]
    fn zero_sum_transposition() {
        // a = (1, 4) over F_5: only the 2-cycle has block sum 0.
        let a = [1u32, 4];
        let zero_sum = |c: &[usize]| c.iter().map(|&i| a[i]).sum::<u32>() % 5 == 0;
        assert_eq!(count_permutations_by_cycles(2, 1, &zero_sum).unwrap(), BigInt::from(1));
        assert_eq!(count_permutations_by_cycles(2, 2, &zero_sum).unwrap(), BigInt::from(0));
    }

    #[test]
    fn always_true_recovers_stirling_and_factorial() {
        let any = |_: &[usize]| true;
        for k in 0..=7 {
            let profile = cycle_count_profile(k, &any).unwrap();
            for (i, c) in profile.iter().enumerate() {
                assert_eq!(*c, stirling_first_unsigned(k, i));
            }
            assert_eq!(profile.iter().sum::<BigInt>(), factorial(k as u64));
        }
    }

    #[test]
    fn oracle_is_capped() {
        let any = |_: &[usize]| true;
        assert!(cycle_count_profile(10, &any).unwrap_err().is_budget());
    }
}
