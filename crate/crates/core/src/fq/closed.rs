//! Closed formulas for special coefficient shapes.

use num_bigint::BigInt;

use super::{exact_div, nu, uniform_share, ClosedForm, CountResult, Instance, Method};
use crate::algebra::{Elem, Field};
use crate::combinatorics::{binomial, factorial};
use crate::error::Result;

/// Largest k for which the proper-subset-sum scan is attempted.
const SUBSET_SCAN_K: usize = 20;

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All k coefficients equal to 1.
pub fn count_all_ones(field: &Field, k: usize, target: Elem) -> Result<BigInt> {
    let (q, p) = (field.order() as i64, field.p() as i64);
    let share = uniform_share(field.order(), k)?;
    let k = k as i64;
    if k % p != 0 {
        return Ok(share);
    }
    let numerator = BigInt::from(sign(k + k / p) * nu(target, field))
        * factorial(k as u64)
        * binomial(q / p, k / p);
    Ok(share + exact_div(&numerator, &BigInt::from(q), "all-ones correction / q")?)
}

/// Which branch of the `[a_1, a_2, 1, ..., 1]` formula applies (1, 2 or 3).
pub fn two_exceptional_case(field: &Field, a1: Elem, a2: Elem, k: usize) -> u8 {
    let total = field.add(field.add(a1, a2), field.from_int(k as i64 - 2));
    if !total.is_zero() {
        1
    } else if !field.in_prime_subfield(a1) {
        2
    } else {
        3
    }
}

/// `[a_1, a_2, 1, ..., 1]` with k >= 3, together with the branch used.
pub fn count_two_exceptional(field: &Field, a1: Elem, a2: Elem, k: usize, target: Elem) -> Result<(BigInt, u8)> {
    let share = uniform_share(field.order(), k)?;
    let case = two_exceptional_case(field, a1, a2, k);
    let (q, p) = (field.order() as i64, field.p() as i64);
    let qp = q / p;
    let k = k as i64;
    let v = nu(target, field);
    let tail = factorial(k as u64 - 2);
    let n = match case {
        1 => share,
        2 => {
            // unsimplified form; the (q - p) denominator version is singular at q = p
            let l = (k - 2) / p;
            let bracket = BigInt::from(k - 1) * binomial(qp - 1, l) - BigInt::from(q) * binomial(qp - 2, l - 1);
            share + BigInt::from(v * sign(k - 1 + l)) * tail * bracket
        }
        _ => {
            let (x1, x2) = (a1.encoding() as i64, a2.encoding() as i64);
            let in_a = x1 != 1 && x2 != 1 && (1 - x1).rem_euclid(p) + (1 - x2).rem_euclid(p) <= p;
            let l = (k - 1) / p;
            let middle = k - 1 - if in_a { q } else { 0 };
            share + BigInt::from(v * sign(k - 1 + l) * middle) * tail * binomial(qp - 1, l)
        }
    };
    Ok((n, case))
}

/// Σa = 0 with every nonempty proper subset sum nonzero.
pub fn subset_sums_nonzero(coeffs: &[Elem], field: &Field) -> bool {
    let k = coeffs.len();
    if k > SUBSET_SCAN_K {
        return false;
    }
    let full = (1usize << k) - 1;
    let mut sums = vec![Elem::ZERO; full + 1];
    for mask in 1..=full {
        let bit = mask.trailing_zeros() as usize;
        sums[mask] = field.add(sums[mask & (mask - 1)], coeffs[bit]);
        if mask != full && sums[mask].is_zero() {
            return false;
        }
    }
    sums[full].is_zero()
}

/// Most frequent nonzero coefficient (ties to the smallest encoding) and its
/// multiplicity.
fn dominant_value(coeffs: &[Elem]) -> Option<(Elem, usize)> {
    let mut sorted: Vec<Elem> = coeffs.iter().copied().filter(|a| !a.is_zero()).collect();
    sorted.sort_unstable();
    let mut best: Option<(Elem, usize)> = None;
    for run in sorted.chunk_by(|x, y| x == y) {
        if best.is_none_or(|(_, n)| run.len() > n) {
            best = Some((run[0], run.len()));
        }
    }
    best
}

/// Closed-form count when the coefficients have a recognized shape:
///
/// * all equal to some λ ≠ 0 (rescaled to all ones);
/// * at least k - 2 equal to some λ ≠ 0, k >= 3 (rescaled to `[a_1, a_2, 1, ..., 1]`);
/// * zero total with no vanishing nonempty proper subset sum.
///
/// `Ok(None)` means no formula applies.
pub fn count_closed_form(inst: &Instance<'_>) -> Result<Option<CountResult>> {
    inst.require_full("closed")?;
    let method = |c| Method::ClosedForm(c);
    if inst.pigeonholed() {
        return Ok(Some(CountResult::new(0, method(ClosedForm::Pigeonhole))));
    }
    let field = inst.field;
    let k = inst.k();
    if let Some((lambda, mult)) = dominant_value(&inst.coeffs) {
        let scale = field.inv(lambda)?;
        let target = field.mul(inst.target, scale);
        if mult == k {
            let n = count_all_ones(field, k, target)?;
            return Ok(Some(CountResult::new(n, method(ClosedForm::AllEqual))));
        }
        if k >= 3 && mult + 2 >= k {
            let mut ones_left = k - 2;
            let mut rest = Vec::with_capacity(2);
            for &a in &inst.coeffs {
                if a == lambda && ones_left > 0 {
                    ones_left -= 1;
                } else {
                    rest.push(field.mul(a, scale));
                }
            }
            let (n, case) = count_two_exceptional(field, rest[0], rest[1], k, target)?;
            return Ok(Some(CountResult::new(
                n,
                method(ClosedForm::TwoExceptional { case }),
            )));
        }
    }
    if subset_sums_nonzero(&inst.coeffs, field) {
        let k = k as i64;
        let n = uniform_share(field.order(), k as usize)?
            + BigInt::from(nu(inst.target, field) * sign(k - 1)) * factorial(k as u64 - 1);
        return Ok(Some(CountResult::new(n, method(ClosedForm::SubsetSumsNonzero))));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;

    fn closed(q: &str, coeffs: &[u64], b: u64) -> Option<CountResult> {
        let field = Field::new(q.parse().unwrap());
        let inst = Instance::from_encodings(&field, coeffs, b, Domain::Full).unwrap();
        count_closed_form(&inst).unwrap()
    }

    #[test]
    fn all_equal_examples() {
        let r = closed("5", &[1, 1, 1, 1, 1], 0).unwrap();
        assert_eq!(r.count, BigInt::from(120));
        assert_eq!(r.method, Method::ClosedForm(ClosedForm::AllEqual));
        assert_eq!(closed("2^2", &[1, 1], 0).unwrap().count, BigInt::from(0));
        // 3x + 3y = 3 over F_5 has the same count as x + y = 1
        assert_eq!(closed("5", &[3, 3], 3).unwrap().count, closed("5", &[1, 1], 1).unwrap().count);
    }

    #[test]
    fn two_exceptional_examples() {
        let r = closed("3", &[0, 2, 1], 1).unwrap();
        assert_eq!(r.count, BigInt::from(3));
        assert_eq!(r.method, Method::ClosedForm(ClosedForm::TwoExceptional { case: 3 }));
        let r = closed("2^2", &[2, 3, 1], 0).unwrap();
        assert_eq!(r.count, BigInt::from(12));
        assert_eq!(r.method, Method::ClosedForm(ClosedForm::TwoExceptional { case: 2 }));
    }

    #[test]
    fn subset_sums_nonzero_examples() {
        let r = closed("5", &[1, 4], 0).unwrap();
        assert_eq!(r.count, BigInt::from(0));
        assert_eq!(r.method, Method::ClosedForm(ClosedForm::SubsetSumsNonzero));
        assert_eq!(closed("7", &[0], 0).unwrap().count, BigInt::from(7));
    }

    #[test]
    fn not_applicable() {
        // two zero-sum pairs, no dominant value covering k - 2 positions
        assert!(closed("7", &[1, 6, 2, 5], 0).is_none());
        assert!(closed("5", &[1, 2, 3, 4, 0], 0).is_none());
    }

    #[test]
    fn pigeonhole() {
        let r = closed("3", &[1, 2, 0, 1], 0).unwrap();
        assert_eq!(r.count, BigInt::from(0));
        assert_eq!(r.method, Method::ClosedForm(ClosedForm::Pigeonhole));
    }

    #[test]
    fn dominant_value_ties_to_smallest() {
        let f = Field::prime(7).unwrap();
        let c: Vec<Elem> = [3u64, 5, 5, 3, 0, 0, 0].iter().map(|&x| f.elem(x).unwrap()).collect();
        assert_eq!(dominant_value(&c), Some((f.elem(3).unwrap(), 2)));
        assert_eq!(dominant_value(&[Elem::ZERO]), None);
    }
}
